import math

import numpy
import pytest
from scipy import stats

import relayperf as rp
from relayperf import simulate


@pytest.fixture(scope="module")
def system():
    hop = rp.make_hop(2, 3, 10)
    return rp.make_system(hop, hop, C=4.0)


def test_sim_config():
    cfg = rp.SimConfig(trials=10, shards=4)
    assert cfg.shard_trials() == [3, 3, 2, 2]
    assert sum(rp.SimConfig(trials=1001, shards=7).shard_trials()) == 1001
    for kwargs in ({"trials": 0}, {"shards": 0}, {"workers": 0}, {"trials": 2.5}):
        with pytest.raises(ValueError):
            rp.SimConfig(**kwargs)
    for seed in (-1, 2**64):
        with pytest.raises(ValueError):
            rp.SimConfig(seed=seed)


def test_gaussian_q():
    assert rp.gaussian_q(0.0) == pytest.approx(0.5, rel=1e-15)
    x = numpy.array([0.5, 1.0, 3.0, 8.0])
    assert rp.gaussian_q(x) == pytest.approx(stats.norm.sf(x), rel=1e-12)


def test_conditional_bep():
    assert simulate.conditional_bep(rp.BDPSK, 1.0) == pytest.approx(0.5 * math.exp(-1))
    assert simulate.conditional_bep(rp.NCBFSK, 2.0) == pytest.approx(0.5 * math.exp(-1))
    assert simulate.conditional_bep(rp.BPSK, 2.0) == pytest.approx(rp.gaussian_q(2.0))
    assert simulate.conditional_bep(rp.BFSK, 2.0) == pytest.approx(rp.gaussian_q(math.sqrt(2)))


def test_determinism(system):
    cfg = rp.SimConfig(trials=50_000, seed=123, shards=5)
    first = rp.mc_moments(system, cfg, 2)
    assert rp.mc_moments(system, cfg, 2) == first
    threaded = rp.SimConfig(trials=50_000, seed=123, shards=5, workers=3)
    assert rp.mc_moments(system, threaded, 2) == first
    other = rp.SimConfig(trials=50_000, seed=124, shards=5)
    assert rp.mc_moments(system, other, 2) != first


def test_mc_moments(system):
    cfg = rp.SimConfig(trials=400_000, seed=21)
    results = rp.mc_moments(system, cfg, 3)
    assert len(results) == 3
    for n, (mean, stderr) in enumerate(results, 1):
        assert stderr > 0
        assert abs(mean - rp.end_to_end_moment_oracle(system, n)) <= 4 * stderr
    with pytest.raises(ValueError):
        rp.mc_moments(system, cfg, 0)


def test_mc_outage(system):
    estimate, stderr = rp.mc_outage(system, rp.SimConfig(trials=200_000, seed=5), 2.0)
    assert stderr == pytest.approx(math.sqrt(estimate * (1 - estimate) / 200_000))
    assert abs(estimate - rp.outage_exact(system, 2.0)) <= 4 * stderr
    with pytest.raises(rp.DomainError):
        rp.mc_outage(system, rp.SimConfig(trials=10), 0.0)


def test_mc_abep_direct_link():
    hop1 = rp.make_hop(1, 2, 1)
    sys = rp.make_system(hop1, rp.make_hop(2, 3, 10), C=1e-9)
    estimate, stderr = rp.mc_abep(sys, rp.SimConfig(trials=400_000, seed=6), rp.BDPSK)
    assert abs(estimate - 0.25) <= 4 * stderr
    estimate, stderr = rp.mc_abep(sys, rp.SimConfig(trials=400_000, seed=7), rp.BPSK)
    assert stderr > 0
    assert abs(estimate - 0.5 * (1 - math.sqrt(0.5))) <= 4 * stderr
    assert estimate == pytest.approx(0.1464, abs=2e-3)


def test_mc_outage_limits(system):
    assert rp.mc_outage(system, rp.SimConfig(trials=10_000, seed=1), 1e12) == (1.0, 0.0)


def test_standard_error_scaling(system):
    half = rp.mc_moments(system, rp.SimConfig(trials=200_000, seed=11), 1)[0][1]
    full = rp.mc_moments(system, rp.SimConfig(trials=400_000, seed=11), 1)[0][1]
    assert full / half == pytest.approx(1 / math.sqrt(2), rel=0.2)


def test_shard_count_invariance(system):
    four = rp.mc_moments(system, rp.SimConfig(trials=200_000, seed=9, shards=4), 1)[0]
    eight = rp.mc_moments(system, rp.SimConfig(trials=200_000, seed=9, shards=8), 1)[0]
    assert four != eight
    assert abs(four[0] - eight[0]) <= 4 * math.hypot(four[1], eight[1])
