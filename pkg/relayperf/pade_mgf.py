"""Sub-diagonal Padé approximants of the end-to-end MGF built from moments."""

from .errors import IllConditionedError, PoleError, StabilityError

import numpy as _np
from numpy.polynomial import polynomial as _poly
from scipy.linalg import lapack as _lapack

import dataclasses as _dc
import math as _math
import typing as _typ
import warnings as _warn


_SOURCES = ("closed-form", "oracle", "monte-carlo")
_MAX_A = 10
_RANK_TOLERANCE = 1e-13
_CONDITION_LIMIT = 1e12
_RESIDUAL_LIMIT = 1e-10
_TAYLOR_TOLERANCE = 1e-9
_CLUSTER_TOLERANCE = 1e-7
_POLE_DISTANCE = 1e-9


@_dc.dataclass(frozen=True)
class MomentSequence:
    """Moments ``E⟨γⁿ⟩`` for ``n = 1, 2, …`` with their provenance.

    Args:
        values: Moments in increasing order, starting at ``n = 1``.
        source: One of ``"closed-form"``, ``"oracle"`` or ``"monte-carlo"``.
    """

    values: _typ.Tuple[float, ...]
    source: str = "oracle"

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if len(values) == 0:
            raise ValueError("Moment sequence cannot be empty.")
        if not all(_math.isfinite(v) and v > 0 for v in values):
            raise ValueError("All moments must be finite and positive.")
        if len(values) >= 2 and values[1] < values[0] ** 2 * (1 - 1e-12):
            raise ValueError(
                f"Second moment {values[1]:.17g} is below the squared mean {values[0] ** 2:.17g}."
            )
        if self.source not in _SOURCES:
            raise ValueError(f"'source' must be one of {_SOURCES}, got {self.source!r}.")
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)

    def series(self, count: int) -> _np.ndarray:
        """Coefficients ``(−1)ⁿ μₙ / n!`` of ``E⟨e^{−sγ}⟩`` for ``n = 0 … count − 1``."""
        if count > len(self.values) + 1:
            raise ValueError(f"Only {len(self.values)} moments available, {count - 1} required.")
        coefficients = _np.empty(count)
        coefficients[0] = 1.0
        for n in range(1, count):
            coefficients[n] = (-1) ** n * _math.exp(
                _math.log(self.values[n - 1]) - _math.lgamma(n + 1)
            )
        return coefficients


@_dc.dataclass(frozen=True)
class PadeMGF:
    """Rational approximant ``M(s) = c(s) / b(s)`` of ``E⟨e^{−sγ}⟩``.

    Args:
        numerator: Coefficients ``c₀ … c_A`` (increasing powers of s).
        denominator: Coefficients ``b₀ = 1, b₁ … b_B``.
        poles: Roots of the denominator.
        residues: Residues of ``M`` at the poles.
        orders: Degrees ``(A, B)``.
        scale: Series scale; the polynomials are evaluated in the variable
          ``u = scale · s``.
    """

    numerator: _np.ndarray
    denominator: _np.ndarray
    poles: _np.ndarray
    residues: _np.ndarray
    orders: _typ.Tuple[int, int]
    scale: float = 1.0

    def scaled_coefficients(self) -> _typ.Tuple[_np.ndarray, _np.ndarray]:
        """Numerator and denominator coefficients in the variable ``u = scale · s``."""
        num_powers = self.scale ** -_np.arange(len(self.numerator))
        den_powers = self.scale ** -_np.arange(len(self.denominator))
        return self.numerator * num_powers, self.denominator * den_powers


def _toeplitz_block(g: _np.ndarray, A: int, B: int) -> _np.ndarray:
    """Rows k = A+1 … A+B of the coefficient equations, columns b₀ … b_B."""
    block = _np.zeros((B, B + 1))
    for r in range(B):
        for j in range(B + 1):
            index = A + 1 + r - j
            if index >= 0:
                block[r, j] = g[index]
    return block


def _solve_complete_pivoting(matrix: _np.ndarray, rhs: _np.ndarray) -> _np.ndarray:
    lu, ipiv, jpiv, info = _lapack.dgetc2(matrix)
    if info > 0:
        raise IllConditionedError(
            f"Padé system is singular (pivot {info} perturbed by complete-pivoting LU)."
        )
    solution, scale = _lapack.dgesc2(lu, rhs, ipiv, jpiv)
    return solution / scale


def _series_scale(moments: MomentSequence, K: int) -> float:
    """Scale ``ρ`` with ``μ_K / (K! ρ^K) = 1``, so the scaled series starts and ends at 1."""
    return _math.exp((_math.log(moments.values[K - 1]) - _math.lgamma(K + 1)) / K)


def _reduced_orders(g: _np.ndarray, A: int) -> _typ.Tuple[int, int]:
    B = A + 1
    while B > 0:
        singular = _np.linalg.svd(_toeplitz_block(g, A, B), compute_uv=False)
        if singular[0] == 0:
            raise IllConditionedError("Moment series vanishes beyond the mean.")
        rank = int(_np.sum(singular > _RANK_TOLERANCE * singular[0]))
        if rank >= B:
            break
        B = rank
        A = B - 1
    return A, B


def build_pade(moments: MomentSequence, A: int = 7) -> PadeMGF:
    """Sub-diagonal Padé approximant ``[A/A+1]`` of the MGF.

    The series ``Σ μₙ (−s)ⁿ / n!`` (``μ₀ = 1``) is first written in the
    variable ``u = ρ s``, with ``ρ`` chosen so that the first and the last
    coefficient used both have unit magnitude. When the coefficient matrix of
    the denominator equations is rank deficient to working precision (for
    example when the moments come from a rational MGF of lower degree), the
    orders are reduced to the largest well-determined ``[A'/A'+1]`` with a
    :class:`RuntimeWarning`. The denominator is obtained by complete-pivoting
    LU; the numerator follows from the first ``A + 1`` series coefficients.

    Args:
        moments: At least ``2A + 1`` moments.
        A: Numerator degree, between 0 and 10.

    Returns:
        Padé approximant with poles and residues.
    """
    if int(A) != A or not 0 <= A <= _MAX_A:
        raise ValueError(f"'A' must be an integer between 0 and {_MAX_A}, got {A!r}.")
    A = int(A)
    count = 2 * A + 2
    if len(moments) < count - 1:
        raise ValueError(f"Padé orders [{A}/{A + 1}] require {count - 1} moments.")

    scale = _series_scale(moments, count - 1)
    g = moments.series(count) * scale ** -_np.arange(count)

    reduced_A, B = _reduced_orders(g, A)
    if reduced_A != A:
        _warn.warn(
            f"Moment series is numerically rank deficient: Padé orders reduced from "
            f"[{A}/{A + 1}] to [{reduced_A}/{B}].",
            RuntimeWarning,
            2,
        )
        A = reduced_A

    block = _toeplitz_block(g, A, B)
    matrix = block[:, 1:]
    rhs = -block[:, 0]
    condition = _np.linalg.cond(matrix)
    if not condition <= _CONDITION_LIMIT:
        raise IllConditionedError(
            f"Padé system for orders [{A}/{B}] is ill conditioned (condition estimate "
            f"{condition:.3g} exceeds {_CONDITION_LIMIT:g})."
        )
    b = _np.empty(B + 1)
    b[0] = 1.0
    b[1:] = _solve_complete_pivoting(matrix, rhs)

    residual = _np.linalg.norm(matrix @ b[1:] - rhs)
    reference = _np.linalg.norm(matrix, 2) * _np.linalg.norm(b[1:]) + _np.linalg.norm(rhs)
    if residual > _RESIDUAL_LIMIT * reference:
        raise IllConditionedError(
            f"Padé system residual {residual / reference:.3g} exceeds {_RESIDUAL_LIMIT:g} "
            f"(condition estimate {condition:.3g})."
        )

    c = _np.array([_np.dot(b[: min(k, B) + 1], g[k::-1][: min(k, B) + 1]) for k in range(A + 1)])

    used = g[: A + B + 1]
    mismatch = _np.max(_np.abs(_rational_series(c, b, A + B) - used)) / _np.linalg.norm(used)
    if mismatch > _TAYLOR_TOLERANCE:
        raise IllConditionedError(
            f"Padé approximant [{A}/{B}] reproduces the moment series only to {mismatch:.3g} "
            f"(relative, condition estimate {condition:.3g})."
        )

    sigma, weights = _scaled_poles_residues(c, b)
    powers_c = scale ** _np.arange(A + 1)
    powers_b = scale ** _np.arange(B + 1)
    return PadeMGF(
        numerator=c * powers_c,
        denominator=b * powers_b,
        poles=sigma / scale,
        residues=weights / scale,
        orders=(A, B),
        scale=scale,
    )


def _scaled_poles_residues(
    c: _np.ndarray, b: _np.ndarray
) -> _typ.Tuple[_np.ndarray, _np.ndarray]:
    sigma = _poly.polyroots(b).astype(complex)
    if len(sigma) == 0:
        raise StabilityError("Denominator has no roots.")
    if _np.any(sigma.real >= 0):
        worst = sigma[_np.argmax(sigma.real)]
        raise StabilityError(
            f"Padé approximant has a pole in the right half-plane (scaled pole {worst:.6g})."
        )
    for i in range(len(sigma)):
        gaps = _np.abs(sigma[i + 1 :] - sigma[i])
        if _np.any(gaps < _CLUSTER_TOLERANCE * max(1.0, abs(sigma[i]))):
            raise StabilityError(f"Padé approximant has a repeated pole near {sigma[i]:.6g}.")
    residues = _poly.polyval(sigma, c) / _poly.polyval(sigma, _poly.polyder(b))
    order = _np.lexsort((sigma.imag, sigma.real))
    return sigma[order], residues[order]


def poles_residues(p: PadeMGF) -> _typ.Tuple[_np.ndarray, _np.ndarray]:
    """Poles and residues of the approximant.

    The partial-fraction form is ``M(s) = Σ λᵢ / (s − pᵢ)`` (plus a constant
    when ``A = B``).

    Args:
        p: Padé approximant.

    Returns:
        Tuple ``(poles, residues)`` of complex arrays.
    """
    c, b = p.scaled_coefficients()
    sigma, weights = _scaled_poles_residues(c, b)
    return sigma / p.scale, weights / p.scale


def mgf_eval(p: PadeMGF, s):
    """Evaluate ``M(s)`` with Horner's rule on both polynomials.

    Args:
        p: Padé approximant.
        s: Real argument or array of arguments.

    Returns:
        Approximant value(s).
    """
    s = _np.asarray(s, dtype=float)
    distance = _np.abs(s[..., None] - p.poles)
    if _np.any(distance <= _POLE_DISTANCE * _np.maximum(1.0, _np.abs(p.poles))):
        raise PoleError("MGF approximant evaluated within 1e-9 of a pole.")
    c, b = p.scaled_coefficients()
    u = p.scale * s
    return (_poly.polyval(u, c) / _poly.polyval(u, b))[()]


def _rational_series(c: _np.ndarray, b: _np.ndarray, order: int) -> _np.ndarray:
    result = _np.zeros(order + 1)
    for k in range(order + 1):
        value = c[k] if k < len(c) else 0.0
        for j in range(1, min(k, len(b) - 1) + 1):
            value -= b[j] * result[k - j]
        result[k] = value
    return result


def taylor_coefficients(p: PadeMGF, order: int) -> _np.ndarray:
    """Taylor coefficients of ``c(s) / b(s)`` up to ``s^order``."""
    c, b = p.scaled_coefficients()
    return _rational_series(c, b, order) * p.scale ** _np.arange(order + 1)
