"""Average bit error probability and outage probability."""

from .errors import ConsistencyError, ConvergenceError, DomainError
from .pade_mgf import PadeMGF, build_pade, mgf_eval
from .relay import RelaySystem, moment_sequence
from .special_functions import gauss_laguerre, regularized_gamma_pq
from .utils import adaptive_quad as _adaptive_quad
from .utils import gamma_expectation as _gamma_expectation
from .utils import require_positive as _require_positive

import numpy as _np

import dataclasses as _dc
import math as _math
import typing as _typ


_KINDS = ("bdpsk", "coherent", "ncbfsk")
_RANGE_SLACK = 1e-6
_IMAGINARY_LIMIT = 1e-9
_MAX_LAGUERRE_ORDER = 200


@_dc.dataclass(frozen=True)
class ModulationScheme:
    """Binary modulation scheme.

    Args:
        kind: ``"bdpsk"`` (differential PSK), ``"coherent"`` (coherent
          binary signaling with correlation parameter ``psi``) or
          ``"ncbfsk"`` (non-coherent orthogonal FSK).
        psi: Coherent correlation parameter in (0, 1]; ignored for the
          non-coherent kinds.
        name: Label used in reports.
    """

    kind: str
    psi: _typ.Optional[float] = None
    name: str = ""

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"'kind' must be one of {_KINDS}, got {self.kind!r}.")
        if self.kind == "coherent":
            if self.psi is None or not 0 < self.psi <= 1:
                raise DomainError(
                    f"'psi' must be in (0, 1] for coherent schemes, got {self.psi!r}."
                )
            object.__setattr__(self, "psi", float(self.psi))
        else:
            object.__setattr__(self, "psi", None)
        if not self.name:
            object.__setattr__(self, "name", self.kind)


BDPSK = ModulationScheme("bdpsk", name="bdpsk")
BPSK = ModulationScheme("coherent", 1.0, "bpsk")
BFSK = ModulationScheme("coherent", 0.5, "bfsk")
BFSK_MIN_CORRELATION = ModulationScheme("coherent", 0.715, "bfsk-min")
NCBFSK = ModulationScheme("ncbfsk", name="ncbfsk")

SCHEMES = {s.name: s for s in (BDPSK, BPSK, BFSK, BFSK_MIN_CORRELATION, NCBFSK)}


def abep_bdpsk(mgf: PadeMGF) -> float:
    """ABEP of binary differential PSK: ``0.5 M(1)``."""
    return 0.5 * float(mgf_eval(mgf, 1.0))


def abep_ncbfsk(mgf: PadeMGF) -> float:
    """ABEP of non-coherent orthogonal binary FSK: ``0.5 M(1/2)``."""
    return 0.5 * float(mgf_eval(mgf, 0.5))


def _legendre_rule(order: int) -> _typ.Tuple[_np.ndarray, _np.ndarray]:
    x, w = _np.polynomial.legendre.leggauss(order)
    return 0.25 * _np.pi * (x + 1), 0.25 * _np.pi * w


def abep_coherent(mgf: PadeMGF, scheme: ModulationScheme = BPSK) -> float:
    """ABEP of coherent binary signaling.

    Evaluates ``(1/π) ∫₀^{π/2} M(ψ / sin²θ) dθ`` with 64- and 128-point
    Gauss-Legendre rules; when they disagree by more than 1e−8 relative the
    integral is recomputed by adaptive quadrature.

    Args:
        mgf: MGF approximant.
        scheme: Coherent scheme.

    Returns:
        ABEP value.
    """
    if scheme.kind != "coherent":
        raise ValueError(f"Scheme {scheme.name!r} is not coherent.")
    psi = scheme.psi

    def integral(order):
        theta, weights = _legendre_rule(order)
        return float(_np.dot(weights, mgf_eval(mgf, psi / _np.sin(theta) ** 2))) / _np.pi

    coarse = integral(64)
    fine = integral(128)
    if abs(fine - coarse) <= 1e-8 * abs(fine):
        return fine

    def integrand(theta):
        if theta <= 0:
            return 0.0
        return float(mgf_eval(mgf, psi / _math.sin(theta) ** 2))

    return (
        _adaptive_quad(integrand, 0.0, 0.5 * _math.pi, rtol=1e-10, what="coherent ABEP") / _math.pi
    )


def abep(mgf: PadeMGF, scheme: ModulationScheme) -> float:
    """ABEP for any supported scheme."""
    if scheme.kind == "bdpsk":
        return abep_bdpsk(mgf)
    if scheme.kind == "ncbfsk":
        return abep_ncbfsk(mgf)
    return abep_coherent(mgf, scheme)


def outage_pade(mgf: PadeMGF, gamma_th: float) -> float:
    """Outage probability by residue inversion of ``M(s) / s``.

    ``P_out = 1 + Σ (λᵢ / pᵢ) exp(pᵢ γ_th)`` over the poles ``pᵢ`` and
    residues ``λᵢ`` of the approximant.

    Args:
        mgf: MGF approximant.
        gamma_th: SNR threshold (linear), positive.

    Returns:
        Outage probability in [0, 1].
    """
    gamma_th = _require_positive("gamma_th", gamma_th)
    A, B = mgf.orders
    if A >= B:
        raise ValueError("Residue inversion requires a strictly proper approximant (A < B).")
    total = 1.0 + complex(_np.sum(mgf.residues / mgf.poles * _np.exp(mgf.poles * gamma_th)))
    if abs(total.imag) > _IMAGINARY_LIMIT:
        raise ConsistencyError(
            f"Outage probability has a non-negligible imaginary part {total.imag:.3g}."
        )
    value = total.real
    if not -_RANGE_SLACK <= value <= 1 + _RANGE_SLACK:
        raise ConsistencyError(
            f"Outage probability {value:.17g} at threshold {gamma_th:g} is outside [0, 1]."
        )
    return min(1.0, max(0.0, value))


def _log_outage_argument(sys: RelaySystem, gamma_th: float, log_x):
    """Log of ``(γ_th (1 + C / g) / τ₁γ̄₁)^{β₁/2}`` with ``g = τ₂γ̄₂ x^{2/β₂}``."""
    hop1, hop2 = sys.hop1, sys.hop2
    log_ratio = _math.log(sys.C) - _math.log(hop2.scale)
    return (0.5 * hop1.beta) * (
        _math.log(gamma_th)
        - _math.log(hop1.scale)
        + _np.logaddexp(0.0, log_ratio - (2 / hop2.beta) * log_x)
    )


def _lower_ratio(m: float, log_y: float) -> float:
    if log_y > 700.0:
        return 1.0
    return regularized_gamma_pq(m, _math.exp(log_y))[0]


_lower_ratio_vectorized = _np.vectorize(_lower_ratio, otypes=[float])


def outage_exact(sys: RelaySystem, gamma_th: float) -> float:
    """Outage probability by adaptive integration over the second hop.

    Computes ``E⟨F₁(γ_th (C + γ₂) / γ₂)⟩`` over ``γ₂``, in the logarithm of
    the normalized second-hop variable, to 1e−10 relative.

    Args:
        sys: Relay system.
        gamma_th: SNR threshold (linear), positive.

    Returns:
        Outage probability in [0, 1].
    """
    gamma_th = _require_positive("gamma_th", gamma_th)
    hop1, hop2 = sys.hop1, sys.hop2
    m1 = hop1.m

    def func(t):
        return _lower_ratio(m1, float(_log_outage_argument(sys, gamma_th, t)))

    half = 0.5 * hop2.beta
    log_ratio = _math.log(sys.C) - _math.log(hop2.scale)
    landmarks = [half * log_ratio]
    if gamma_th < hop1.scale:
        landmarks.append(half * (log_ratio - _math.log(hop1.scale / gamma_th - 1)))
    value = _gamma_expectation(
        hop2.m, func, landmarks=landmarks, rtol=1e-10, atol=1e-15, what="outage probability"
    )
    return min(1.0, max(0.0, value))


def _laguerre_outage(sys: RelaySystem, gamma_th: float, order: int, split: bool) -> float:
    rule = gauss_laguerre(order)
    m1, m2 = sys.hop1.m, sys.hop2.m
    u = rule.nodes

    def lower_ratio(log_x):
        return _lower_ratio_vectorized(m1, _log_outage_argument(sys, gamma_th, log_x))

    if not split:
        log_x = _np.log(u)
        log_terms = rule.log_weights + (m2 - 1) * log_x - _math.lgamma(m2)
        return float(_np.sum(_np.exp(log_terms) * lower_ratio(log_x)))

    # w = w_s exp(−u/m₂) below the split point, w = w_s + u above it
    split_point = max(1.0, m2)
    log_split = _math.log(split_point)
    log_x = log_split - u / m2
    log_terms = rule.log_weights + m2 * log_split - _np.exp(log_x) - _math.lgamma(m2 + 1)
    lower = _np.sum(_np.exp(log_terms) * lower_ratio(log_x))

    log_x = _np.log(split_point + u)
    log_terms = rule.log_weights - split_point + (m2 - 1) * log_x - _math.lgamma(m2)
    upper = _np.sum(_np.exp(log_terms) * lower_ratio(log_x))
    return float(lower + upper)


def outage_quadrature(
    sys: RelaySystem,
    gamma_th: float,
    N: int = 32,
    *,
    split: bool = True,
    tolerance: float = 1e-8,
) -> float:
    """Outage probability by Gauss-Laguerre quadrature.

    With ``γ₂ = τ₂γ̄₂ w^{2/β₂}``, the outage probability is
    ``∫₀^∞ e^{−w} w^{m₂−1} P(m₁, y(w)) dw / Γ(m₂)`` where ``P`` is the
    regularized lower incomplete gamma ratio and
    ``y(w) = (γ_th (1 + C / (τ₂γ̄₂ w^{2/β₂})) / τ₁γ̄₁)^{β₁/2}``.

    ``P(m₁, y(w))`` falls from 1 to its limit across several decades of
    ``w``, and for a strong first hop that range lies far below the first
    Laguerre nodes. When ``split`` is set the integral is cut at
    ``w_s = max(1, m₂)``. Below ``w_s`` the substitution ``w = w_s e^{−u/m₂}``
    turns ``w^{m₂−1} dw`` into the Laguerre weight exactly and leaves a
    bounded integrand that is smooth in ``u``. Above ``w_s`` the rule is
    applied to ``w = w_s + u``. Without ``split`` the rule is applied to the
    integral as written.

    The order is doubled, starting at ``N`` and capped at 200, until two
    successive values differ by at most ``tolerance``.

    Args:
        sys: Relay system.
        gamma_th: SNR threshold (linear), positive.
        N: Initial Gauss-Laguerre order (between 2 and 199).
        split: Flag enabling the split logarithmic substitution.
        tolerance: Absolute tolerance between successive orders.

    Returns:
        Outage probability in [0, 1].
    """
    gamma_th = _require_positive("gamma_th", gamma_th)
    if int(N) != N or not 2 <= N < _MAX_LAGUERRE_ORDER:
        raise DomainError(f"'N' must be an integer between 2 and 199, got {N!r}.")
    order = int(N)
    previous = None
    while True:
        value = _laguerre_outage(sys, gamma_th, order, split)
        if previous is not None and abs(value - previous) <= tolerance:
            return min(1.0, max(0.0, value))
        if order >= _MAX_LAGUERRE_ORDER:
            raise ConvergenceError(
                f"Gauss-Laguerre outage did not converge up to order {order}: last delta "
                f"{abs(value - previous):.3g} exceeds {tolerance:g}."
            )
        previous = value
        order = min(2 * order, _MAX_LAGUERRE_ORDER)


def mgf_for_system(
    sys: RelaySystem, *, A: int = 7, source: str = "oracle", sim: _typ.Any = None
) -> PadeMGF:
    """Padé MGF approximant of the end-to-end SNR.

    Args:
        sys: Relay system.
        A: Numerator degree (denominator degree is ``A + 1``).
        source: Moment source passed to :func:`relayperf.moment_sequence`.
        sim: Simulation configuration for the ``"monte-carlo"`` source.

    Returns:
        MGF approximant.
    """
    return build_pade(moment_sequence(sys, 2 * A + 1, source=source, sim=sim), A)
