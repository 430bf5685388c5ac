import math

import numpy
import pytest

import relayperf as rp
from relayperf import fading


def exponential_mgf(mean=1.0, A=0):
    moments = rp.MomentSequence(tuple(math.factorial(n) * mean**n for n in range(1, 2 * A + 2)))
    return rp.build_pade(moments, A)


@pytest.fixture(scope="module")
def figure_system():
    hop = rp.make_hop(2, 3, 10)
    return rp.make_system(hop, hop, check=False)


def test_schemes():
    assert rp.BPSK.psi == 1.0
    assert rp.BFSK.psi == 0.5
    assert rp.BDPSK.psi is None
    assert set(rp.SCHEMES) == {"bdpsk", "bpsk", "bfsk", "bfsk-min", "ncbfsk"}
    assert rp.ModulationScheme("coherent", 0.3).name == "coherent"
    with pytest.raises(ValueError):
        rp.ModulationScheme("qam")
    with pytest.raises(rp.DomainError):
        rp.ModulationScheme("coherent", 0.0)
    with pytest.raises(rp.DomainError):
        rp.ModulationScheme("coherent")


def test_exponential_abep():
    mgf = exponential_mgf()
    assert rp.abep_bdpsk(mgf) == pytest.approx(0.25, abs=1e-12)
    assert rp.abep_ncbfsk(mgf) == pytest.approx(1 / 3, abs=1e-12)
    assert rp.abep_coherent(mgf, rp.BPSK) == pytest.approx(0.5 * (1 - math.sqrt(0.5)), abs=1e-9)
    assert rp.abep_coherent(mgf, rp.BPSK) == pytest.approx(0.1464466, abs=1e-7)
    assert rp.abep(mgf, rp.BFSK) == pytest.approx(0.5 * (1 - math.sqrt(0.5 / 1.5)), abs=1e-9)
    assert rp.abep(mgf, rp.BDPSK) == rp.abep_bdpsk(mgf)
    with pytest.raises(ValueError):
        rp.abep_coherent(mgf, rp.BDPSK)


def test_reduced_exponential_pipeline():
    with pytest.warns(RuntimeWarning):
        mgf = exponential_mgf(A=7)
    assert rp.abep_bdpsk(mgf) == pytest.approx(0.25, abs=1e-6)
    assert rp.abep_coherent(mgf, rp.BPSK) == pytest.approx(0.1464466, abs=1e-6)
    assert rp.outage_pade(mgf, 1.0) == pytest.approx(0.6321206, abs=1e-6)


def test_low_snr_abep():
    assert rp.abep_bdpsk(exponential_mgf(mean=1e-8)) == pytest.approx(0.5, rel=1e-6)


def test_exponential_outage():
    mgf = exponential_mgf()
    assert rp.outage_pade(mgf, 1.0) == pytest.approx(1 - math.exp(-1), abs=1e-12)
    assert rp.outage_pade(mgf, 1e-9) <= 1e-6
    with pytest.raises(rp.DomainError):
        rp.outage_pade(mgf, 0.0)


def test_outage_methods(figure_system):
    exact = rp.outage_exact(figure_system, 1.0)
    assert 0 < exact < 1
    assert rp.outage_quadrature(figure_system, 1.0) == pytest.approx(exact, abs=1e-7)
    assert rp.outage_quadrature(figure_system, 1.0, 8) == pytest.approx(exact, abs=1e-7)
    mgf = rp.mgf_for_system(figure_system)
    assert rp.outage_pade(mgf, 1.0) == pytest.approx(exact, abs=1e-3)


@pytest.mark.parametrize("ratio", [2.0, 0.5])
@pytest.mark.parametrize("point", [0.0, 5.0, 10.0, 15.0, 20.0, 25.0])
def test_outage_methods_figure_grid(ratio, point):
    snr = rp.db_to_linear(point)
    sys = rp.make_system(rp.make_hop(2, 3, snr), rp.make_hop(2, 3, ratio * snr), check=False)
    exact = rp.outage_exact(sys, 1.0)
    quadrature = rp.outage_quadrature(sys, 1.0)
    assert abs(quadrature - exact) <= 1e-6
    if exact >= 1e-4:
        assert abs(rp.outage_pade(rp.mgf_for_system(sys), 1.0) - exact) <= 1e-3


def test_outage_is_cdf(figure_system):
    thresholds = numpy.logspace(-2, 1.5, 20)
    mgf = rp.mgf_for_system(figure_system)
    pade = numpy.array([rp.outage_pade(mgf, g) for g in thresholds])
    quadrature = numpy.array([rp.outage_quadrature(figure_system, g) for g in thresholds])
    for values, slack in ((pade, 1e-6), (quadrature, 1e-8)):
        assert numpy.all((values >= 0) & (values <= 1))
        assert numpy.all(numpy.diff(values) >= -slack)
    assert quadrature[-1] > quadrature[0]


def test_abep_psi_ordering(figure_system):
    for mgf in (exponential_mgf(), rp.mgf_for_system(figure_system)):
        values = [rp.abep(mgf, s) for s in (rp.BPSK, rp.BFSK_MIN_CORRELATION, rp.BFSK)]
        assert values[0] < values[1] < values[2]


def test_abep_decreasing_in_beta():
    values = []
    for beta in (1.0, 2.5, 3.5):
        sys = rp.make_system(rp.make_hop(2, beta, 10), rp.make_hop(2, beta, 20), check=False)
        mgf = rp.mgf_for_system(sys)
        values.append((rp.abep(mgf, rp.BDPSK), rp.abep(mgf, rp.BPSK)))
    for scheme in (0, 1):
        assert values[0][scheme] > values[1][scheme] > values[2][scheme]


def test_outage_monte_carlo(figure_system):
    estimate, stderr = rp.mc_outage(figure_system, rp.SimConfig(trials=400_000, seed=4), 1.0)
    assert abs(estimate - rp.outage_exact(figure_system, 1.0)) <= 4 * stderr


def test_outage_limits(figure_system):
    assert rp.outage_quadrature(figure_system, 1e-9) <= 1e-6
    assert rp.outage_exact(figure_system, 1e-9) <= 1e-6
    hop1 = figure_system.hop1
    direct = rp.make_system(hop1, figure_system.hop2, C=1e-9)
    expected = fading.cdf(hop1, 2.0)
    assert rp.outage_quadrature(direct, 2.0) == pytest.approx(expected, abs=1e-5)
    assert rp.outage_exact(direct, 2.0) == pytest.approx(expected, abs=1e-5)


def test_outage_decreasing(figure_system):
    values = [rp.outage_exact(figure_system, g) for g in (3.0, 1.0, 0.3, 0.1)]
    assert all(a > b for a, b in zip(values[:-1], values[1:]))


def test_outage_quadrature_validation(figure_system):
    for order in (1, 200, 2.5):
        with pytest.raises(rp.DomainError):
            rp.outage_quadrature(figure_system, 1.0, order)
    with pytest.raises(rp.DomainError):
        rp.outage_exact(figure_system, -1.0)


def test_unsplit_quadrature():
    hop = rp.make_hop(2, 3, 1)
    sys = rp.make_system(hop, hop, check=False)
    exact = rp.outage_exact(sys, 1.0)
    assert rp.outage_quadrature(sys, 1.0, split=False) == pytest.approx(exact, abs=1e-6)


def test_abep_monte_carlo():
    sys = rp.make_system(rp.make_hop(2, 3, 10), rp.make_hop(2, 3, 20), check=False)
    mgf = rp.mgf_for_system(sys)
    cfg = rp.SimConfig(trials=400_000, seed=8)
    for scheme in (rp.BDPSK, rp.BPSK):
        estimate, stderr = rp.mc_abep(sys, cfg, scheme)
        assert abs(rp.abep(mgf, scheme) - estimate) <= max(0.02 * estimate, 4 * stderr)


def test_abep_orderings():
    values = {}
    for mean_snr in (1.0, 10.0, 100.0):
        hop = rp.make_hop(2, 3, mean_snr)
        mgf = rp.mgf_for_system(rp.make_system(hop, hop, check=False))
        values[mean_snr] = (rp.abep(mgf, rp.BDPSK), rp.abep(mgf, rp.BPSK))
    for bdpsk, bpsk in values.values():
        assert bdpsk > bpsk
    assert values[1.0][0] > values[10.0][0] > values[100.0][0]
    assert values[1.0][1] > values[10.0][1] > values[100.0][1]
