"""Gamma-function family, Tricomi Ψ, Meijer-G and Gauss-Laguerre rules."""

from .errors import ConvergenceError, DomainError, PoleError, UnsupportedClassError
from .utils import adaptive_quad as _adaptive_quad

import numpy as _np
from scipy import linalg as _linalg
from scipy import optimize as _optimize
from scipy import special as _special

import dataclasses as _dc
import functools as _ft
import math as _math
import sys as _sys
import typing as _typ
import warnings as _warn


_EPS = _sys.float_info.epsilon
_TINY = _sys.float_info.min / _EPS
_MAX_ITERATIONS = 100000
_GAMMA_OVERFLOW = 171.6243769563027
_LOG_CUTOFF = _math.log(1e-18)
_MAX_LOG = _math.log(_sys.float_info.max)


def gamma_fn(x: float) -> float:
    """Gamma function Γ(x).

    Args:
        x: Real argument, not a non-positive integer.

    Returns:
        Γ(x).
    """
    x = float(x)
    if x <= 0 and x == _math.floor(x):
        raise PoleError(f"Gamma function has a pole at x = {x:g}.")
    if x > _GAMMA_OVERFLOW:
        raise OverflowError(f"Gamma function overflows for x = {x:g}.")
    return float(_special.gamma(x))


def regularized_gamma_pq(a: float, x: float) -> _typ.Tuple[float, float]:
    """Regularized lower and upper incomplete gamma ratios ``(P(a, x), Q(a, x))``.

    The series representation is used for ``x < a + 1`` and the continued
    fraction (modified Lentz) otherwise, so that the smaller of the two
    ratios is always obtained directly, without cancellation.

    Args:
        a: Shape, positive.
        x: Argument, non-negative.

    Returns:
        Tuple ``(P, Q)`` with ``P + Q = 1``.
    """
    a = float(a)
    x = float(x)
    if not a > 0:
        raise DomainError(f"'a' must be positive in the incomplete gamma function, got {a:g}.")
    if not x >= 0:
        raise DomainError(f"'x' cannot be negative in the incomplete gamma function, got {x:g}.")
    if x == 0:
        return 0.0, 1.0
    if _math.isinf(x):
        return 1.0, 0.0

    log_prefactor = -x + a * _math.log(x) - _math.lgamma(a)

    if x < a + 1:
        term = 1.0 / a
        total = term
        ap = a
        for _ in range(_MAX_ITERATIONS):
            ap += 1
            term *= x / ap
            total += term
            if abs(term) < abs(total) * _EPS:
                break
        else:
            raise ConvergenceError(f"Incomplete gamma series did not converge for a={a}, x={x}.")
        p = total * _math.exp(log_prefactor)
        return p, 1.0 - p

    b = x + 1 - a
    c = 1 / _TINY
    d = 1 / b
    h = d
    for i in range(1, _MAX_ITERATIONS):
        an = -i * (i - a)
        b += 2
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1 / d
        delta = d * c
        h *= delta
        if abs(delta - 1) < _EPS:
            break
    else:
        raise ConvergenceError(
            f"Incomplete gamma continued fraction did not converge for a={a}, x={x}."
        )
    q = _math.exp(log_prefactor) * h
    return 1.0 - q, q


def upper_incomplete_gamma(a: float, x: float) -> float:
    """Upper incomplete gamma function Γ(a, x) = ∫ₓ^∞ e^{−t} t^{a−1} dt.

    Args:
        a: Shape, positive.
        x: Lower integration limit, non-negative.

    Returns:
        Γ(a, x).
    """
    _, q = regularized_gamma_pq(a, x)
    if q == 0:
        return 0.0
    log_value = _math.log(q) + _math.lgamma(a)
    if log_value > _MAX_LOG:
        raise OverflowError(f"Upper incomplete gamma overflows for a = {a:g}, x = {x:g}.")
    return _math.exp(log_value)


def tricomi_psi(a: float, b: float, x: float) -> float:
    """Tricomi confluent hypergeometric function Ψ(a, b, x).

    Evaluated from the integral representation

        Ψ(a, b, x) = x^{−a} / Γ(a) ∫₀^∞ e^{−u} u^{a−1} (1 + u/x)^{b−a−1} du

    with the substitution ``v = u^a`` when ``a < 1`` to remove the endpoint
    singularity.

    Args:
        a: First parameter, positive.
        b: Second parameter.
        x: Argument, positive.

    Returns:
        Ψ(a, b, x).
    """
    a = float(a)
    b = float(b)
    x = float(x)
    if not a > 0:
        raise DomainError(f"'a' must be positive in the Tricomi function, got {a:g}.")
    if not x > 0:
        raise DomainError(f"'x' must be positive in the Tricomi function, got {x:g}.")

    power = b - a - 1
    if a < 1:

        def integrand(v):
            u = v ** (1 / a)
            return _math.exp(-u + power * _math.log1p(u / x))

        scale = 1 / _math.gamma(a + 1)
    else:

        def integrand(u):
            return _math.exp(_special.xlogy(a - 1, u) - u + power * _math.log1p(u / x))

        scale = 1 / _math.gamma(a)

    split = a if a >= 1 else 1.0
    pieces = [(0.0, split), (split, _np.inf)]
    total = sum(
        _adaptive_quad(integrand, lo, hi, rtol=1e-13, atol=0.0, what="Tricomi integrand")
        for lo, hi in pieces
    )
    return scale * x ** (-a) * total


@_dc.dataclass(frozen=True)
class MeijerGSpec:
    """Parameters of the Meijer-G function G^{m,n}_{p,q}[z | a; b].

    Args:
        a_top: The ``n`` upper parameters that appear as Γ(1 − a + s).
        a_rest: The ``p − n`` upper parameters that appear as 1/Γ(a − s).
        b_top: The ``m`` lower parameters that appear as Γ(b − s).
        b_rest: The ``q − m`` lower parameters that appear as 1/Γ(1 − b + s).
        argument: Positive real argument ``z``.
    """

    a_top: _typ.Tuple[float, ...] = ()
    a_rest: _typ.Tuple[float, ...] = ()
    b_top: _typ.Tuple[float, ...] = ()
    b_rest: _typ.Tuple[float, ...] = ()
    argument: float = 1.0

    def __post_init__(self):
        for name in ("a_top", "a_rest", "b_top", "b_rest"):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))
        argument = float(self.argument)
        if not argument > 0 or not _math.isfinite(argument):
            raise DomainError(f"Meijer-G 'argument' must be positive and finite, got {argument!r}.")
        object.__setattr__(self, "argument", argument)

    @property
    def orders(self) -> _typ.Tuple[int, int, int, int]:
        """Orders ``(m, n, p, q)``."""
        n = len(self.a_top)
        m = len(self.b_top)
        return m, n, n + len(self.a_rest), m + len(self.b_rest)


def delta_list(count: int, start: float) -> _typ.List[float]:
    """Parameter list Δ(count, start) = [start/count, (start+1)/count, …]."""
    if count < 1:
        raise ValueError("'count' must be a positive integer.")
    return [(start + j) / count for j in range(count)]


def _log_kernel(spec: MeijerGSpec, s):
    s = _np.asarray(s, dtype=complex)
    result = s * _math.log(spec.argument)
    for b in spec.b_top:
        result = result + _special.loggamma(b - s)
    for a in spec.a_top:
        result = result + _special.loggamma(1 - a + s)
    for b in spec.b_rest:
        result = result - _special.loggamma(1 - b + s)
    for a in spec.a_rest:
        result = result - _special.loggamma(a - s)
    return result


def _contour_strip(spec: MeijerGSpec) -> _typ.Tuple[float, float]:
    m, n, p, q = spec.orders
    if m + n - 0.5 * (p + q) <= 0:
        raise UnsupportedClassError(
            f"Meijer-G of orders (m, n, p, q) = {(m, n, p, q)} does not decay along a vertical "
            "contour (requires m + n > (p + q) / 2)."
        )
    lower = max(spec.a_top) - 1 if n > 0 else -_np.inf
    upper = min(spec.b_top) if m > 0 else _np.inf
    if not lower < upper:
        raise UnsupportedClassError(
            "Pole families of the Meijer-G integrand are not separated by a vertical line: "
            f"max(a) − 1 = {lower:g} ≥ min(b) = {upper:g}."
        )
    if _math.isinf(lower) or _math.isinf(upper):
        z = spec.argument
        span = 10 + 2 * max(z, 1 / z) ** (1 / max(abs(q - p), 1))
        if _math.isinf(lower):
            lower = upper - span
        else:
            upper = lower + span
    return lower, upper


def _meijer_g_contour(spec: MeijerGSpec) -> float:
    lower, upper = _contour_strip(spec)
    margin = 1e-9 * max(1.0, upper - lower)

    def real_log(c):
        return float(_np.real(_log_kernel(spec, c)))

    saddle = _optimize.minimize_scalar(
        real_log,
        bounds=(lower + margin, upper - margin),
        method="bounded",
        options={"xatol": 1e-10 * max(1.0, upper - lower)},
    )
    c = float(saddle.x)
    log_peak = real_log(c)

    cutoff = 0.5
    previous = log_peak
    while True:
        current = float(_np.real(_log_kernel(spec, c + 1j * cutoff)))
        log_peak = max(log_peak, current)
        if current - log_peak < _LOG_CUTOFF and current < previous:
            break
        previous = current
        cutoff *= 2
        if cutoff > 1e5:
            raise ConvergenceError(
                f"Meijer-G contour integrand did not decay: abscissa c = {c:.6g}, "
                f"cutoff reached y = {cutoff:g}, orders {spec.orders}."
            )

    def integrand(y):
        return float(_np.real(_np.exp(_log_kernel(spec, c + 1j * y) - log_peak)))

    try:
        integral = _adaptive_quad(
            integrand, 0.0, cutoff, rtol=1e-12, atol=1e-15, limit=1000, what="Meijer-G contour"
        )
    except ConvergenceError as err:
        raise ConvergenceError(
            f"Meijer-G contour integration failed with abscissa c = {c:.6g} and cutoff "
            f"y = {cutoff:g}: {err}"
        ) from err

    if integral == 0:
        return 0.0
    log_value = log_peak + _math.log(abs(integral) / _math.pi)
    if log_value > _MAX_LOG:
        raise OverflowError(f"Meijer-G value overflows (log-magnitude {log_value:.6g}).")
    return _math.copysign(_math.exp(log_value), integral)


def _has_simple_poles(values: _typ.Sequence[float]) -> bool:
    for i, x in enumerate(values):
        for y in values[i + 1 :]:
            d = x - y
            if abs(d - round(d)) < 1e-9:
                return False
    return True


def slater_series(spec: MeijerGSpec, *, max_terms: int = 4000) -> float:
    """Meijer-G value as a sum of residues at the poles of Γ(b_h − s).

    Applies when the ``b_top`` parameters have no integer differences (all
    poles simple) and ``q > p`` (or ``q = p`` with argument below one).

    Args:
        spec: Meijer-G parameters.
        max_terms: Maximum number of terms per pole family.

    Returns:
        G value.
    """
    m, n, p, q = spec.orders
    if m == 0 or not _has_simple_poles(spec.b_top):
        raise UnsupportedClassError("Series evaluation requires simple poles in the b parameters.")
    z = spec.argument
    if q < p or (q == p and z >= 1):
        raise UnsupportedClassError("Series evaluation requires q > p or q = p with z < 1.")

    total = 0.0
    largest = 0.0
    for h, bh in enumerate(spec.b_top):
        others = spec.b_top[:h] + spec.b_top[h + 1 :]
        with _np.errstate(all="ignore"):
            term = float(
                _np.prod([_special.gamma(bj - bh) for bj in others])
                * _np.prod([_special.gamma(1 - ai + bh) for ai in spec.a_top])
                / _np.prod([_special.gamma(1 - bj + bh) for bj in spec.b_rest])
                / _np.prod([_special.gamma(aj - bh) for aj in spec.a_rest])
            )
        if not _math.isfinite(term):
            raise UnsupportedClassError("Series leading coefficient is not finite.")
        term *= z**bh
        family = term
        quiet = 0
        for k in range(max_terms):
            ratio = -z / (k + 1)
            for bj in others:
                ratio /= bj - bh - k - 1
            for ai in spec.a_top:
                ratio *= 1 - ai + bh + k
            for bj in spec.b_rest:
                ratio /= 1 - bj + bh + k
            for aj in spec.a_rest:
                ratio *= aj - bh - k - 1
            term *= ratio
            family += term
            largest = max(largest, abs(term))
            if abs(term) <= _EPS * abs(family):
                quiet += 1
                if quiet >= 3:
                    break
            else:
                quiet = 0
        else:
            raise ConvergenceError(f"Meijer-G series for pole family b = {bh:g} did not converge.")
        largest = max(largest, abs(family))
        total += family

    if total == 0 or largest / abs(total) > 1e6:
        raise ConvergenceError("Meijer-G series suffers from catastrophic cancellation.")
    return total


def meijer_g(spec: MeijerGSpec, *, cross_check: bool = True) -> float:
    """Meijer-G function G^{m,n}_{p,q}[z | a; b] for positive real argument.

    The primary evaluation is the Mellin–Barnes integral along the vertical
    line through the real saddle point of the integrand, computed in
    log-gamma form. When every pole is simple and the argument is moderate,
    the residue series is evaluated as well and a disagreement above 1e−8
    relative is reported with a :class:`RuntimeWarning`.

    Args:
        spec: Meijer-G parameters.
        cross_check: Flag enabling the series cross-check.

    Returns:
        G value.
    """
    value = _meijer_g_contour(spec)
    if cross_check and spec.argument <= 4:
        try:
            series = slater_series(spec)
        except (UnsupportedClassError, ConvergenceError):
            series = None
        if series is not None and abs(series - value) > 1e-8 * abs(series):
            _warn.warn(
                f"Meijer-G contour value {value:.17g} and series value {series:.17g} differ by "
                f"{abs(series - value) / abs(series):.3g} (relative), orders {spec.orders}.",
                RuntimeWarning,
                2,
            )
    return value


@_dc.dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Laguerre rule for integrals of the form ∫₀^∞ e^{−x} f(x) dx.

    Args:
        nodes: Roots of the Laguerre polynomial L_N, increasing.
        weights: Corresponding weights. Weights below the smallest positive
          double underflow to zero; their logarithms are kept in
          ``log_weights``.
        order: Number of nodes N.
        log_weights: Natural logarithms of the weights.
    """

    nodes: _np.ndarray
    weights: _np.ndarray
    order: int
    log_weights: _typ.Optional[_np.ndarray] = None

    def integrate(self, func: _typ.Callable) -> float:
        """Apply the rule to a vectorized integrand ``func`` (without the weight e^{−x})."""
        return float(_np.dot(self.weights, func(self.nodes)))


def _laguerre_pair(n: int, x):
    """``(L_n(x), L_{n−1}(x))`` divided by ``exp(log_scale)``, with ``log_scale``."""
    previous = _np.ones_like(x)
    current = 1 - x
    log_scale = _np.zeros_like(x)
    for j in range(1, n):
        previous, current = current, ((2 * j + 1 - x) * current - j * previous) / (j + 1)
        size = _np.maximum(_np.abs(current), _np.abs(previous))
        large = size > 1e100
        if _np.any(large):
            divisor = _np.where(large, size, 1.0)
            current = current / divisor
            previous = previous / divisor
            log_scale = log_scale + _np.log(divisor)
    return current, previous, log_scale


@_ft.lru_cache(maxsize=64)
def gauss_laguerre(order: int) -> QuadratureRule:
    """Gauss-Laguerre nodes and weights.

    Nodes are the roots of L_N, polished by safeguarded Newton iteration
    starting from the eigenvalues of the Jacobi matrix; weights are
    W_i = x_i / ((N+1)² L_{N+1}(x_i)²), evaluated in log form.

    Args:
        order: Number of nodes, between 1 and 200.

    Returns:
        Quadrature rule (shared, read-only).
    """
    if int(order) != order or not 1 <= order <= 200:
        raise DomainError(f"'order' must be an integer between 1 and 200, got {order!r}.")
    n = int(order)

    if n == 1:
        guesses = _np.array([1.0])
    else:
        diagonal = 2.0 * _np.arange(n) + 1
        off_diagonal = _np.arange(1.0, n)
        guesses = _np.sort(_linalg.eigh_tridiagonal(diagonal, off_diagonal, eigvals_only=True))

    lo = _np.empty(n)
    hi = _np.empty(n)
    lo[0] = 0.0
    lo[1:] = 0.5 * (guesses[:-1] + guesses[1:])
    hi[:-1] = lo[1:]
    hi[-1] = max(4.0 * n + 2, 2 * guesses[-1])

    f_lo = _laguerre_pair(n, lo)[0]
    f_hi = _laguerre_pair(n, hi)[0]
    if _np.any(_np.sign(f_lo) == _np.sign(f_hi)):
        raise ConvergenceError(f"Failed to bracket the roots of the Laguerre polynomial L_{n}.")

    x = guesses.copy()
    sign_lo = _np.sign(f_lo)
    for _ in range(200):
        value, previous, _scale = _laguerre_pair(n, x)
        exact = value == 0
        derivative = n * (value - previous) / x
        step = _np.where(exact, 0.0, value / _np.where(exact, 1.0, derivative))
        below = _np.sign(value) == sign_lo
        lo = _np.where(below & ~exact, x, lo)
        hi = _np.where(below | exact, hi, x)
        candidate = x - step
        outside = (candidate <= lo) | (candidate >= hi) | ~_np.isfinite(candidate)
        candidate = _np.where(outside & ~exact, 0.5 * (lo + hi), candidate)
        converged = _np.all((_np.abs(candidate - x) <= 1e-14 * x) | exact)
        x = candidate
        if converged:
            break
    else:
        raise ConvergenceError(f"Newton iteration for the roots of L_{n} did not converge.")

    value, previous, log_scale = _laguerre_pair(n, x)
    next_value = ((2 * n + 1 - x) * value - n * previous) / (n + 1)
    log_weights = _np.log(x) - 2 * _math.log(n + 1) - 2 * (_np.log(_np.abs(next_value)) + log_scale)
    weights = _np.exp(log_weights)

    if _np.any(_np.diff(x) <= 0):
        raise ConvergenceError(f"Roots of L_{n} are not strictly increasing after refinement.")

    for array in (x, weights, log_weights):
        array.setflags(write=False)
    return QuadratureRule(nodes=x, weights=weights, order=n, log_weights=log_weights)
