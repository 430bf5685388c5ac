"""Single-hop Generalized-Gamma fading in the SNR domain."""

from .errors import DomainError
from .special_functions import regularized_gamma_pq as _regularized_gamma_pq
from .utils import require_nonnegative as _require_nonnegative
from .utils import require_positive as _require_positive

import numpy as _np

import dataclasses as _dc
import math as _math


@_dc.dataclass(frozen=True)
class GGHop:
    """Generalized-Gamma faded hop described by its SNR distribution.

    Args:
        m: Fading severity shape, larger than 1/2.
        beta: Fading severity exponent, positive.
        mean_snr: Average SNR γ̄ (linear scale), positive.

    The normalizer ``tau = Γ(m) / Γ(m + 2/β)`` is derived on construction so
    that the mean of the distribution equals ``mean_snr``.
    """

    m: float
    beta: float
    mean_snr: float
    tau: float = _dc.field(init=False)

    def __post_init__(self):
        m = float(self.m)
        if not m > 0.5 or not _math.isfinite(m):
            raise DomainError(f"'m' must be larger than 1/2, got {self.m!r}.")
        beta = _require_positive("beta", self.beta)
        mean_snr = _require_positive("mean_snr", self.mean_snr)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "mean_snr", mean_snr)
        object.__setattr__(
            self, "tau", _math.exp(_math.lgamma(m) - _math.lgamma(m + 2 / beta))
        )

    @property
    def scale(self) -> float:
        """Scale ``τ γ̄`` of the SNR variable."""
        return self.tau * self.mean_snr


def make_hop(m: float, beta: float, mean_snr: float) -> GGHop:
    """Create a Generalized-Gamma hop.

    Args:
        m: Fading severity shape, larger than 1/2.
        beta: Fading severity exponent, positive.
        mean_snr: Average SNR (linear), positive.

    Returns:
        Hop with the derived normalizer ``tau``.
    """
    return GGHop(m, beta, mean_snr)


def nakagami_hop(m: float, mean_snr: float) -> GGHop:
    """Nakagami-m hop (β = 2): Gamma-distributed SNR."""
    return GGHop(m, 2.0, mean_snr)


def weibull_hop(beta: float, mean_snr: float) -> GGHop:
    """Weibull hop (m = 1)."""
    return GGHop(1.0, beta, mean_snr)


def pdf(hop: GGHop, gamma):
    """Probability density of the hop SNR.

    Args:
        hop: Hop description.
        gamma: SNR value or array of values, non-negative.

    Returns:
        Density value(s).
    """
    gamma = _np.asarray(gamma, dtype=float)
    if _np.any(gamma < 0):
        raise DomainError("'gamma' cannot be negative.")
    exponent = 0.5 * hop.m * hop.beta
    with _np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        y = (gamma / hop.scale) ** (0.5 * hop.beta)
        log_value = (
            _np.log(0.5 * hop.beta)
            - _np.log(gamma)
            + hop.m * _np.log(y)
            - y
            - _math.lgamma(hop.m)
        )
        value = _np.exp(log_value)
    if exponent > 1:
        origin = 0.0
    elif exponent == 1:
        origin = 0.5 * hop.beta / (_math.gamma(hop.m) * hop.scale)
    else:
        origin = _np.inf
    value = _np.where(gamma == 0, origin, value)
    value = _np.where(_np.isinf(gamma), 0.0, value)
    return value[()]


def _cdf_scalar(m: float, y: float) -> float:
    return _regularized_gamma_pq(m, y)[0]


_cdf_vectorized = _np.vectorize(_cdf_scalar, otypes=[float])


def cdf(hop: GGHop, gamma):
    """Cumulative distribution of the hop SNR.

    Computed as the regularized lower incomplete gamma ratio
    ``P(m, (γ / τγ̄)^{β/2})``, which equals ``1 − Γ(m, ·) / Γ(m)``.

    Args:
        hop: Hop description.
        gamma: SNR value or array of values, non-negative.

    Returns:
        Probability value(s) in [0, 1].
    """
    gamma = _np.asarray(gamma, dtype=float)
    if _np.any(gamma < 0):
        raise DomainError("'gamma' cannot be negative.")
    y = (gamma / hop.scale) ** (0.5 * hop.beta)
    return _cdf_vectorized(hop.m, y)[()]


def sample(hop: GGHop, rng: _np.random.Generator, count: int) -> _np.ndarray:
    """Draw independent SNR samples.

    Samples are generated as ``τγ̄ X^{2/β}`` with ``X`` a unit-scale
    Gamma(m) variate.

    Args:
        hop: Hop description.
        rng: Random generator owned by the caller.
        count: Number of samples, positive.

    Returns:
        Array of samples.
    """
    if int(count) != count or count < 1:
        raise ValueError("'count' must be a positive integer.")
    if not isinstance(rng, _np.random.Generator):
        raise TypeError("'rng' must be a numpy.random.Generator.")
    x = rng.standard_gamma(hop.m, size=int(count))
    return hop.scale * x ** (2 / hop.beta)


def single_hop_moment(hop: GGHop, n: float) -> float:
    """Raw moment E⟨γⁿ⟩ = (τγ̄)ⁿ Γ(m + 2n/β) / Γ(m).

    Args:
        hop: Hop description.
        n: Moment order, non-negative (real).

    Returns:
        Moment value.
    """
    n = _require_nonnegative("n", n)
    if n == 0:
        return 1.0
    log_value = (
        n * _math.log(hop.scale) + _math.lgamma(hop.m + 2 * n / hop.beta) - _math.lgamma(hop.m)
    )
    if log_value > 709.0:
        raise OverflowError(f"Moment of order {n:g} overflows (log-magnitude {log_value:.6g}).")
    return _math.exp(log_value)


def log_single_hop_moment(hop: GGHop, n: float) -> float:
    """Natural logarithm of :func:`single_hop_moment` (never overflows)."""
    n = _require_nonnegative("n", n)
    return n * _math.log(hop.scale) + _math.lgamma(hop.m + 2 * n / hop.beta) - _math.lgamma(
        hop.m
    )
