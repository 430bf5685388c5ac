import dataclasses
import math

import numpy
import pytest
from scipy import special

import relayperf as rp


def rayleigh_constant():
    return 1 / (math.e * special.exp1(1.0))


def test_combine_snr():
    assert rp.combine_snr(4, 4, 4) == pytest.approx(2)
    assert rp.combine_snr(3, 1e12, 2) == pytest.approx(3, rel=1e-9)
    assert rp.combine_snr(3, 0, 2) == 0
    values = rp.combine_snr(numpy.array([1.0, 2.0]), numpy.array([1.0, 3.0]), 1.0)
    assert values == pytest.approx([0.5, 1.5])
    with pytest.raises(rp.DomainError):
        rp.combine_snr(-1, 1, 1)
    with pytest.raises(rp.DomainError):
        rp.combine_snr(1, 1, 0)


def test_relay_system_validation():
    hop = rp.make_hop(2, 3, 10)
    with pytest.raises(rp.DomainError):
        rp.RelaySystem(hop, hop, 0.0)
    with pytest.raises(ValueError):
        rp.RelaySystem(hop, hop, 1.0, "blind")
    with pytest.raises(TypeError):
        rp.RelaySystem(hop, (2, 3, 10), 1.0)


def test_rayleigh_constant():
    hop = rp.make_hop(1, 2, 1)
    assert rp.semi_blind_C(hop) == pytest.approx(rayleigh_constant(), rel=1e-8)
    assert rp.semi_blind_C_oracle(hop) == pytest.approx(rayleigh_constant(), rel=1e-8)
    assert rp.semi_blind_C(hop) == pytest.approx(1.676875, rel=1e-6)


@pytest.mark.parametrize("m", [1.5, 2, 3.5])
@pytest.mark.parametrize("mean_snr", [1, 10])
def test_nakagami_reduction(m, mean_snr):
    hop = rp.nakagami_hop(m, mean_snr)
    expected = rp.nakagami_semi_blind_C(hop)
    assert rp.semi_blind_C(hop, check=False) == pytest.approx(expected, rel=1e-8)
    assert rp.semi_blind_C_oracle(hop) == pytest.approx(expected, rel=1e-8)


def test_nakagami_reduction_requires_beta_2():
    with pytest.raises(rp.DomainError):
        rp.nakagami_semi_blind_C(rp.make_hop(2, 3, 1))


@pytest.mark.parametrize("m", [0.8, 1, 2.5])
@pytest.mark.parametrize("beta", [4 / 3, 2, 3, 1, 2.5])
@pytest.mark.parametrize("mean_snr", [0.5, 10, 300])
def test_gain_closed_form(m, beta, mean_snr):
    hop = rp.make_hop(m, beta, mean_snr)
    closed = rp.semi_blind_C(hop, check=False)
    assert closed == pytest.approx(rp.semi_blind_C_oracle(hop), rel=1e-6)
    assert 1 / rp.semi_blind_gain_squared(hop) == pytest.approx(closed, rel=1e-14)


def test_gain_increases_with_m():
    values = [rp.semi_blind_C(rp.make_hop(m, 4 / 3, 10)) for m in (1.5, 2.5, 3.5)]
    assert values[0] < values[1] < values[2]


def test_gain_low_snr_limit():
    assert rp.semi_blind_C_oracle(rp.make_hop(2, 3, 1e-6)) == pytest.approx(1, abs=1e-5)


def test_gain_consistency_failure():
    hop = rp.make_hop(2, 3, 4)
    with pytest.raises(rp.ConsistencyError):
        rp.semi_blind_C(hop, prefactor_scale=1.01)
    with pytest.warns(RuntimeWarning):
        rp.semi_blind_C(hop, prefactor_scale=1 + 1e-5)


def test_make_system():
    hop1 = rp.make_hop(2, 3, 10)
    hop2 = rp.make_hop(1.5, 2, 5)
    sys = rp.make_system(hop1, hop2)
    assert sys.mode == "semi-blind"
    assert sys.C == pytest.approx(rp.semi_blind_C(hop1), rel=1e-8)
    fixed = rp.make_system(hop1, hop2, C=1.5)
    assert fixed.mode == "fixed-C"
    assert fixed.C == 1.5


SYSTEMS = [
    (2, 2, 3, 3, 10, 10),
    (2, 2, 2, 2, 10, 10),
    (1, 3.5, 4 / 3, 3, 1, 10),
    (3.5, 1, 2, 4 / 3, 10, 1),
    (1.5, 2.5, 3, 2, 1, 1),
]


@pytest.mark.parametrize("m1, m2, beta1, beta2, g1, g2", SYSTEMS)
def test_moment_closed_form(m1, m2, beta1, beta2, g1, g2):
    sys = rp.make_system(rp.make_hop(m1, beta1, g1), rp.make_hop(m2, beta2, g2), check=False)
    for n in (1, 2, 3):
        closed = rp.end_to_end_moment(sys, n, check=False)
        assert closed == pytest.approx(rp.end_to_end_moment_oracle(sys, n), rel=1e-6)


def test_moment_fixed_constant():
    sys = rp.make_system(rp.make_hop(2, 3, 1), rp.make_hop(2, 3, 1), C=1.5)
    assert rp.end_to_end_moment(sys, 1) == pytest.approx(
        rp.end_to_end_moment_oracle(sys, 1), rel=1e-6
    )


def test_moment_consistency_failure():
    sys = rp.make_system(rp.make_hop(2, 3, 10), rp.make_hop(2, 3, 10), check=False)
    with pytest.raises(rp.ConsistencyError):
        rp.end_to_end_moment(sys, 2, prefactor_scale=1.01)


def test_moment_order_validation():
    sys = rp.make_system(rp.make_hop(2, 3, 10), rp.make_hop(2, 3, 10), C=1.0)
    for n in (0, 1.5, -1):
        with pytest.raises(rp.DomainError):
            rp.end_to_end_moment(sys, n)
    with pytest.raises(rp.DomainError):
        rp.end_to_end_moment_oracle(sys, 0.5)
    with pytest.raises(ValueError):
        rp.end_to_end_moment_oracle(sys, 1, method="simpson")
    assert rp.end_to_end_moment_oracle(sys, 1.5) > 0


def test_moment_limits():
    hop1 = rp.make_hop(2, 3, 10)
    tiny = rp.make_system(hop1, rp.make_hop(2, 3, 10), C=1e-9)
    strong = rp.make_system(hop1, rp.make_hop(2, 3, 1e9), C=3.0)
    for n in (1, 2):
        expected = rp.single_hop_moment(hop1, n)
        assert rp.end_to_end_moment_oracle(tiny, n) == pytest.approx(expected, rel=1e-4)
        assert rp.end_to_end_moment_oracle(strong, n) == pytest.approx(expected, rel=1e-4)


def test_oracle_methods_agree():
    sys = rp.make_system(rp.make_hop(2, 3, 10), rp.nakagami_hop(2, 10), C=4.0)
    for n in (1, 2, 3):
        adaptive = rp.end_to_end_moment_oracle(sys, n)
        laguerre = rp.end_to_end_moment_oracle(sys, n, method="laguerre")
        assert laguerre == pytest.approx(adaptive, rel=1e-8)


def test_rationalized_exponent():
    hop1 = rp.make_hop(2, 3, 10)
    sys = rp.make_system(hop1, rp.make_hop(2, 3.05, 10), C=2.0)
    with pytest.warns(RuntimeWarning):
        value = rp.end_to_end_moment(sys, 1, check=False)
    rounded = dataclasses.replace(sys, hop2=rp.make_hop(2, 3, 10))
    assert value == pytest.approx(rp.end_to_end_moment_oracle(rounded, 1), rel=1e-6)


def test_stronger_second_hop_at_fixed_first_hop():
    hop1 = rp.make_hop(2, 3, 10)
    C = rp.semi_blind_C(hop1)
    stronger = rp.make_system(hop1, rp.make_hop(2, 3, 20), C=C)
    weaker = rp.make_system(hop1, rp.make_hop(2, 3, 5), C=C)
    assert rp.end_to_end_moment(stronger, 1) > rp.end_to_end_moment(weaker, 1)


@pytest.mark.parametrize("n", [1, 2])
def test_moment_increases_with_mean_snr(n):
    def moment(g1, g2):
        sys = rp.make_system(rp.make_hop(2, 3, g1), rp.make_hop(2, 3, g2), check=False)
        return rp.end_to_end_moment(sys, n)

    grid = (1.0, 3.0, 10.0, 30.0)
    for fixed in grid:
        for values in ([moment(g, fixed) for g in grid], [moment(fixed, g) for g in grid]):
            assert all(a < b for a, b in zip(values[:-1], values[1:]))


@pytest.mark.parametrize("m1, m2, beta1, beta2, g1, g2", SYSTEMS)
def test_moment_jensen(m1, m2, beta1, beta2, g1, g2):
    sys = rp.make_system(rp.make_hop(m1, beta1, g1), rp.make_hop(m2, beta2, g2), check=False)
    assert rp.end_to_end_moment_oracle(sys, 2) >= rp.end_to_end_moment_oracle(sys, 1) ** 2


def test_moment_monte_carlo():
    sys = rp.make_system(rp.make_hop(2, 3, 1), rp.make_hop(2, 3, 1), C=1.5)
    cfg = rp.SimConfig(trials=400_000, seed=11)
    (mean, stderr), = rp.mc_moments(sys, cfg, 1)
    assert abs(mean - rp.end_to_end_moment_oracle(sys, 1)) <= 4 * stderr


def test_moment_sequence():
    sys = rp.make_system(rp.make_hop(2, 3, 10), rp.make_hop(2, 3, 10), check=False)
    oracle = rp.moment_sequence(sys, 4)
    closed = rp.moment_sequence(sys, 4, source="closed-form")
    assert oracle.source == "oracle"
    assert closed.source == "closed-form"
    assert len(oracle) == 4
    assert closed.values == pytest.approx(oracle.values, rel=1e-6)
    simulated = rp.moment_sequence(
        sys, 2, source="monte-carlo", sim=rp.SimConfig(trials=200_000, seed=3)
    )
    assert simulated.source == "monte-carlo"
    assert simulated.values[0] == pytest.approx(oracle.values[0], rel=0.02)
    with pytest.raises(ValueError):
        rp.moment_sequence(sys, 2, source="guess")
    with pytest.raises(ValueError):
        rp.moment_sequence(sys, 0)
