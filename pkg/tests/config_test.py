import pytest

import relayperf as rp
from relayperf import config


def test_defaults():
    cfg = rp.load_config()
    assert cfg["hop1.m"] == 2.0
    assert cfg["relay.mode"] == "semi-blind"
    assert cfg.fixed_C is None
    assert cfg["sweep.points"] == (0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0)
    assert cfg["balance.ratios"] == ()
    assert cfg["abep.schemes"] == ("bdpsk", "bpsk")
    assert cfg.sim == rp.SimConfig()
    hop = cfg.hop(1)
    assert hop.mean_snr == pytest.approx(10.0)
    assert hop.beta == 3.0


def test_every_key_has_a_value():
    cfg = rp.load_config()
    assert set(cfg.values) == set(config._ARGUMENTS)
    assert cfg["relay.C"] is None
    assert cfg["sim.workers"] == 1
    assert cfg["pade.source"] == "oracle"
    assert rp.load_config(overrides=["sim.workers=3"]).sim.workers == 3


def test_file_and_overrides(tmp_path):
    path = tmp_path / "scenario.txt"
    path.write_text(
        "# dual-hop scenario\n"
        "hop1.m = 3.5\n"
        "hop2.mean_snr_db = 20   # stronger second hop\n"
        "\n"
        "relay.mode = fixed-C\n"
        "relay.C = 2.5\n"
        "sweep.points = 0, 10, 20\n"
        "sim.trials = 1e4\n"
        "sim.seed = 1\n"
    )
    cfg = rp.load_config(path, overrides=["hop1.m=1.5", "abep.schemes = ncbfsk"], seed=77)
    assert cfg["hop1.m"] == 1.5
    assert cfg.hop(2).mean_snr == pytest.approx(100.0)
    assert cfg.fixed_C == 2.5
    assert cfg["sweep.points"] == (0.0, 10.0, 20.0)
    assert cfg["abep.schemes"] == ("ncbfsk",)
    assert cfg.sim.trials == 10_000
    assert cfg.sim.seed == 77
    assert cfg.hop(1, mean_snr_db=0.0, beta=2.0).mean_snr == pytest.approx(1.0)


def test_parse_value():
    assert config.parse_value("pade.A", "8") == 8
    assert config.parse_value("pade.A", "8.0") == 8
    assert config.parse_value("series.m1", "1.5,2.5") == [1.5, 2.5]
    for key, text in [
        ("pade.A", "11"),
        ("pade.A", "2.5"),
        ("hop1.m", "0.5"),
        ("hop1.m", "nan"),
        ("hop1.beta", "abc"),
        ("relay.mode", "blind"),
        ("abep.schemes", "bdpsk,qam"),
        ("balance.ratios", "2,0"),
    ]:
        with pytest.raises(rp.ConfigError):
            config.parse_value(key, text)


@pytest.mark.parametrize(
    "text, line, key",
    [
        ("hop1.m = 2\nhop1.x = 3\n", 2, "hop1.x"),
        ("hop1.m = 2\nhop1.m = 3\n", 2, "hop1.m"),
        ("\n\nhop1.beta 3\n", 3, None),
        ("pade.A = 20\n", 1, "pade.A"),
    ],
)
def test_file_errors(tmp_path, text, line, key):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    with pytest.raises(rp.ConfigError) as info:
        rp.load_config(path)
    assert info.value.line == line
    assert info.value.key == key
    assert f"{path}:{line}" in str(info.value)


def test_semantic_errors(tmp_path):
    cases = [
        ["relay.mode=fixed-C"],
        ["sweep.points=10,5"],
        ["sweep.points=1,1"],
        ["sweep.points="],
        ["sweep.axis=m", "sweep.points=0.5,1"],
        ["sweep.axis=beta", "sweep.points=-1,1"],
        ["series.m1="],
        ["abep.schemes="],
        ["hop1.m"],
        ["unknown.key=1"],
    ]
    for overrides in cases:
        with pytest.raises(rp.ConfigError):
            rp.load_config(overrides=overrides)
    with pytest.raises(rp.ConfigError):
        rp.load_config(tmp_path / "missing.txt")
    with pytest.raises(rp.ConfigError):
        rp.load_config(seed=-5)
