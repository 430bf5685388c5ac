import fractions
import math
import typing
import warnings

import numpy
from scipy import integrate

from .errors import ConvergenceError, DomainError


def db_to_linear(value_db):
    """Convert a power ratio from dB to linear scale.

    Args:
        value_db: Value (or array of values) in dB.

    Returns:
        Linear power ratio ``10^(value_db / 10)``.
    """
    return numpy.power(10.0, numpy.asarray(value_db, dtype=float) / 10.0)[()]


def linear_to_db(value):
    """Convert a positive linear power ratio to dB.

    Args:
        value: Linear power ratio (or array of ratios), must be positive.

    Returns:
        Value in dB.
    """
    value = numpy.asarray(value, dtype=float)
    if numpy.any(value <= 0):
        raise DomainError("'value' must be positive to be expressed in dB.")
    return (10.0 * numpy.log10(value))[()]


def require_positive(name: str, value: float) -> float:
    value = float(value)
    if not value > 0 or not math.isfinite(value):
        raise DomainError(f"'{name}' must be positive and finite, got {value!r}.")
    return value


def require_nonnegative(name: str, value: float) -> float:
    value = float(value)
    if not value >= 0 or math.isnan(value):
        raise DomainError(f"'{name}' cannot be negative, got {value!r}.")
    return value


def rationalize_beta(beta: float, *, max_integer: int = 8) -> typing.Tuple[int, int]:
    """Find the minimum integers ``l`` and ``k`` with ``beta = 2 l / k``.

    When ``beta / 2`` is not a fraction with numerator and denominator up to
    ``max_integer``, the nearest such fraction is returned and the rounding
    is reported with a :class:`RuntimeWarning`.

    Args:
        beta: Generalized-Gamma exponent (positive).
        max_integer: Largest admissible value for ``l`` and ``k``.

    Returns:
        Tuple ``(l, k)`` in lowest terms.
    """
    beta = require_positive("beta", beta)
    if max_integer < 1:
        raise ValueError("'max_integer' must be at least 1.")

    best = None
    for k in range(1, max_integer + 1):
        for l in range(1, max_integer + 1):
            if math.gcd(l, k) != 1:
                continue
            error = abs(2 * l / k - beta)
            if best is None or error < best[0]:
                best = (error, l, k)

    error, l, k = best
    if error > 1e-12 * beta:
        exact = fractions.Fraction(beta / 2).limit_denominator(10**6)
        warnings.warn(
            f"Exponent beta = {beta:g} (β/2 ≈ {exact}) is not of the form 2l/k with l, k ≤ "
            f"{max_integer}; using beta = {2 * l}/{k} = {2 * l / k:.12g} (relative change "
            f"{error / beta:.3g}).",
            RuntimeWarning,
            2,
        )
    return l, k


def adaptive_quad(
    func: typing.Callable[[float], float],
    lower: float,
    upper: float,
    *,
    rtol: float = 1e-10,
    atol: float = 0.0,
    limit: int = 400,
    points: typing.Sequence[float] = None,
    what: str = "integral",
) -> float:
    """Adaptive quadrature that raises instead of warning on failure.

    Args:
        func: Scalar integrand.
        lower: Lower limit (may be ``-numpy.inf``).
        upper: Upper limit (may be ``numpy.inf``).
        rtol: Relative tolerance requested from QUADPACK.
        atol: Absolute tolerance requested from QUADPACK.
        limit: Maximal number of subintervals.
        points: Break points inside a finite interval.
        what: Description used in the error message.

    Returns:
        Value of the integral.
    """
    kwargs = {"epsabs": atol, "epsrel": rtol, "limit": limit, "full_output": 1}
    if points is not None and len(points) > 0:
        kwargs["points"] = list(points)
    result = integrate.quad(func, lower, upper, **kwargs)
    value, error = result[0], result[1]
    if len(result) > 3:
        tolerance = max(atol, rtol * abs(value))
        if not error <= 10 * tolerance:
            raise ConvergenceError(
                f"Quadrature of the {what} over [{lower:g}, {upper:g}] did not converge: "
                f"value {value:.17g}, error estimate {error:.3g} ({result[3]})"
            )
    if not math.isfinite(value):
        raise ConvergenceError(f"Quadrature of the {what} produced a non-finite value.")
    return value


def gamma_expectation(
    m: float,
    func: typing.Callable[[float], float],
    *,
    landmarks: typing.Sequence[float] = (),
    rtol: float = 1e-10,
    atol: float = 0.0,
    what: str = "expectation",
) -> float:
    """Expectation ``E⟨f(X)⟩`` for a unit-scale Gamma(m) variable ``X``.

    The integral is taken in the logarithmic variable ``t = ln x``, where the
    Gamma density becomes ``exp(m t − eᵗ) / Γ(m)``. This keeps integrands with
    fractional powers of ``x`` smooth at the origin.

    Args:
        m: Gamma shape, positive.
        func: Function of ``t = ln x`` returning ``f(eᵗ)``.
        landmarks: Values of ``t`` where ``func`` changes behavior; used as
          break points for the adaptive integration.
        rtol: Relative tolerance.
        atol: Absolute tolerance.
        what: Description used in error messages.

    Returns:
        Expectation value.
    """
    m = require_positive("m", m)
    log_norm = math.lgamma(m)

    def integrand(t):
        if t > 700.0:
            return 0.0
        log_w = m * t - math.exp(t) - log_norm
        if log_w < -745.0:
            return 0.0
        return math.exp(log_w) * func(t)

    points = {math.log(m)}
    points.update(t for t in landmarks if math.isfinite(t) and -700.0 < t < 7.0)
    edges = [-numpy.inf] + sorted(points) + [numpy.inf]
    return sum(
        adaptive_quad(integrand, lo, hi, rtol=rtol, atol=atol, what=what)
        for lo, hi in zip(edges[:-1], edges[1:])
    )
