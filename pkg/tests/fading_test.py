import math

import numpy
import pytest
from scipy import integrate, stats

import relayperf as rp
from relayperf import fading


def test_tau():
    assert rp.make_hop(1, 2, 1).tau == pytest.approx(1, rel=1e-14)
    assert rp.nakagami_hop(2, 1).tau == pytest.approx(0.5, rel=1e-14)
    assert rp.weibull_hop(4, 1).tau == pytest.approx(1.1283791670955126, rel=1e-12)
    assert rp.make_hop(2, 3, 5).scale == pytest.approx(5 * rp.make_hop(2, 3, 5).tau)


@pytest.mark.parametrize(
    "m, beta, mean_snr",
    [(0.5, 2, 1), (0.2, 2, 1), (2, 0, 1), (2, -1, 1), (2, 2, 0), (2, 2, math.inf)],
)
def test_invalid_hop(m, beta, mean_snr):
    with pytest.raises(rp.DomainError):
        rp.make_hop(m, beta, mean_snr)


def test_pdf():
    hop = rp.make_hop(1, 2, 1)
    assert fading.pdf(hop, 1.0) == pytest.approx(math.exp(-1), rel=1e-12)
    assert fading.pdf(hop, 0.0) == pytest.approx(1, rel=1e-12)
    assert fading.pdf(rp.make_hop(2, 3, 1), 0.0) == 0
    assert fading.pdf(rp.make_hop(0.6, 2, 1), 0.0) == numpy.inf
    values = fading.pdf(hop, numpy.array([0.5, 1.0, 2.0]))
    assert values == pytest.approx(numpy.exp([-0.5, -1.0, -2.0]), rel=1e-12)
    with pytest.raises(rp.DomainError):
        fading.pdf(hop, -1.0)


@pytest.mark.parametrize(
    "m, beta, mean_snr", [(1, 2, 1), (2, 3, 2), (3.5, 4 / 3, 10), (0.8, 2.5, 0.5)]
)
def test_pdf_normalization(m, beta, mean_snr):
    hop = rp.make_hop(m, beta, mean_snr)
    total, _ = integrate.quad(lambda g: fading.pdf(hop, g), 0, numpy.inf, limit=200)
    assert total == pytest.approx(1, abs=1e-8)


def test_pdf_derivative_of_cdf():
    hop = rp.make_hop(2, 3, 2)
    h = 1e-5
    derivative = (fading.cdf(hop, 1 + h) - fading.cdf(hop, 1 - h)) / (2 * h)
    assert abs(fading.pdf(hop, 1.0) - derivative) <= 1e-6


def test_cdf():
    assert fading.cdf(rp.make_hop(2, 3, 2), 0.0) == 0
    assert fading.cdf(rp.make_hop(1, 2, 1), 1.0) == pytest.approx(1 - math.exp(-1), rel=1e-12)
    hop = rp.make_hop(2, 3, 2)
    expected, _ = integrate.quad(lambda g: fading.pdf(hop, g), 0, 1.5, epsabs=1e-14)
    assert fading.cdf(hop, 1.5) == pytest.approx(expected, abs=1e-8)
    assert fading.cdf(hop, numpy.array([0.5, 1.5])).shape == (2,)


@pytest.mark.parametrize("m", [0.7, 2.0, 3.5])
def test_nakagami_reduction(m):
    hop = rp.nakagami_hop(m, 3.0)
    law = stats.gamma(a=m, scale=3.0 / m)
    gamma = numpy.array([0.1, 1.0, 3.0, 9.0])
    assert fading.pdf(hop, gamma) == pytest.approx(law.pdf(gamma), rel=1e-10)
    assert fading.cdf(hop, gamma) == pytest.approx(law.cdf(gamma), rel=1e-10)


@pytest.mark.parametrize("beta", [1.0, 4 / 3, 3.0])
def test_weibull_reduction(beta):
    hop = rp.weibull_hop(beta, 2.0)
    gamma = numpy.array([0.1, 1.0, 4.0])
    expected = 1 - numpy.exp(-((gamma / (2.0 * hop.tau)) ** (beta / 2)))
    assert fading.cdf(hop, gamma) == pytest.approx(expected, rel=1e-10)


def test_sample_mean():
    hop = rp.make_hop(1, 2, 1)
    samples = fading.sample(hop, numpy.random.default_rng(1), 1_000_000)
    tolerance = 3 * samples.std() / math.sqrt(samples.size)
    assert abs(samples.mean() - 1) <= tolerance


def test_sample_distribution():
    hop = rp.make_hop(2, 2, 1)
    samples = fading.sample(hop, numpy.random.default_rng(2), 100_000)
    result = stats.kstest(samples, lambda g: fading.cdf(hop, g))
    assert result.statistic <= 1.95 / math.sqrt(100_000)


def test_sample_determinism():
    hop = rp.make_hop(2, 3, 4)
    first = fading.sample(hop, numpy.random.default_rng(9), 1000)
    second = fading.sample(hop, numpy.random.default_rng(9), 1000)
    assert numpy.array_equal(first, second)
    with pytest.raises(TypeError):
        fading.sample(hop, numpy.random.RandomState(9), 10)
    with pytest.raises(ValueError):
        fading.sample(hop, numpy.random.default_rng(9), 0)


def test_single_hop_moment():
    assert rp.single_hop_moment(rp.make_hop(2, 3, 2), 0) == 1
    assert rp.single_hop_moment(rp.make_hop(1, 2, 1), 2) == pytest.approx(2, rel=1e-12)
    assert rp.single_hop_moment(rp.make_hop(2, 3, 2), 1) == pytest.approx(2, rel=1e-12)
    hop = rp.make_hop(2, 3, 2)
    expected, _ = integrate.quad(lambda g: g * fading.pdf(hop, g), 0, numpy.inf)
    assert rp.single_hop_moment(hop, 1) == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize("m", [0.6, 1, 1.5, 2, 3.5])
@pytest.mark.parametrize("beta", [1, 4 / 3, 2, 2.5, 3])
def test_mean_is_mean_snr(m, beta):
    hop = rp.make_hop(m, beta, 7.5)
    assert rp.single_hop_moment(hop, 1) == pytest.approx(7.5, rel=1e-10)


def test_moment_overflow():
    hop = rp.make_hop(2, 0.1, 10)
    with pytest.raises(OverflowError):
        rp.single_hop_moment(hop, 50)
    assert fading.log_single_hop_moment(hop, 50) > 709
    small = rp.make_hop(2, 3, 10)
    assert fading.log_single_hop_moment(small, 3) == pytest.approx(
        math.log(rp.single_hop_moment(small, 3)), rel=1e-12
    )
