"""Dual-hop amplify-and-forward system with a fixed-gain relay."""

from .errors import ConsistencyError, ConvergenceError, DomainError
from .fading import GGHop, make_hop, single_hop_moment
from .pade_mgf import MomentSequence
from .special_functions import MeijerGSpec, delta_list, gauss_laguerre, meijer_g, tricomi_psi
from .utils import gamma_expectation as _gamma_expectation
from .utils import rationalize_beta as _rationalize_beta
from .utils import require_nonnegative as _require_nonnegative
from .utils import require_positive as _require_positive

import numpy as _np

import dataclasses as _dc
import math as _math
import typing as _typ
import warnings as _warn


_MODES = ("semi-blind", "fixed-C")
_WARN_GAP = 1e-6
_ERROR_GAP = 1e-4


@_dc.dataclass(frozen=True)
class RelaySystem:
    """Dual-hop system with end-to-end SNR ``γ₁γ₂ / (C + γ₂)``.

    Args:
        hop1: Source-relay hop.
        hop2: Relay-destination hop.
        C: Relay constant ``1 / (G² N₀₁)``, positive.
        mode: Either ``"semi-blind"`` (C derived from ``hop1``) or
          ``"fixed-C"``.
    """

    hop1: GGHop
    hop2: GGHop
    C: float
    mode: str = "fixed-C"

    def __post_init__(self):
        if not isinstance(self.hop1, GGHop) or not isinstance(self.hop2, GGHop):
            raise TypeError("'hop1' and 'hop2' must be GGHop instances.")
        object.__setattr__(self, "C", _require_positive("C", self.C))
        if self.mode not in _MODES:
            raise ValueError(f"'mode' must be one of {_MODES}, got {self.mode!r}.")


def make_system(
    hop1: GGHop, hop2: GGHop, *, C: _typ.Optional[float] = None, check: bool = True
) -> RelaySystem:
    """Create a dual-hop system.

    Args:
        hop1: Source-relay hop.
        hop2: Relay-destination hop.
        C: Fixed relay constant. If ``None``, the semi-blind constant
          derived from ``hop1`` is used.
        check: Flag enabling the closed-form vs quadrature check of the
          semi-blind constant.

    Returns:
        Relay system.
    """
    if C is None:
        return RelaySystem(hop1, hop2, semi_blind_C(hop1, check=check), "semi-blind")
    return RelaySystem(hop1, hop2, C, "fixed-C")


def combine_snr(gamma1, gamma2, C: float):
    """End-to-end SNR ``γ₁γ₂ / (C + γ₂)`` (vectorized).

    Args:
        gamma1: First-hop SNR value(s), non-negative.
        gamma2: Second-hop SNR value(s), non-negative.
        C: Relay constant, positive.

    Returns:
        End-to-end SNR value(s), never above ``gamma1``.
    """
    C = _require_positive("C", C)
    gamma1 = _np.asarray(gamma1, dtype=float)
    gamma2 = _np.asarray(gamma2, dtype=float)
    if _np.any(gamma1 < 0) or _np.any(gamma2 < 0):
        raise DomainError("SNR values cannot be negative.")
    with _np.errstate(divide="ignore"):
        result = gamma1 / (1.0 + C / gamma2)
    return result[()]


def _rationalized(hop: GGHop) -> _typ.Tuple[GGHop, int, int]:
    """Hop with β replaced by its 2l/k rationalization."""
    l, k = _rationalize_beta(hop.beta)
    beta = 2 * l / k
    if beta != hop.beta:
        hop = make_hop(hop.m, beta, hop.mean_snr)
    return hop, l, k


def _gauss_prefactor(l: int, k: int, m: float) -> float:
    """Log of ``k^{m−1/2} (2π)^{1−l+(1−k)/2}`` from the multiplication formula."""
    return (m - 0.5) * _math.log(k) + (1 - l + 0.5 * (1 - k)) * _math.log(2 * _math.pi)


def _compare(what: str, closed: float, oracle: float) -> None:
    gap = abs(closed - oracle) / abs(oracle)
    if gap > _ERROR_GAP:
        raise ConsistencyError(
            f"Closed-form {what} {closed:.17g} disagrees with the quadrature oracle {oracle:.17g} "
            f"(relative gap {gap:.3g})."
        )
    if gap > _WARN_GAP:
        _warn.warn(
            f"Closed-form {what} {closed:.17g} differs from the quadrature oracle {oracle:.17g} "
            f"by {gap:.3g} (relative).",
            RuntimeWarning,
            3,
        )


def semi_blind_gain_squared(hop1: GGHop, *, prefactor_scale: float = 1.0) -> float:
    """Closed-form average relay gain ``G² = E⟨1 / (1 + γ₁)⟩`` (with N₀₁ = 1).

    The expectation is written as a Mellin–Barnes integral and the gamma
    factors with arguments scaled by ``l`` and ``k`` are expanded with the
    Gauss multiplication formula, giving

        G² = l k^{m−1/2} (2π)^{1−l+(1−k)/2} / Γ(m)
             · G^{k+l,l}_{l,k+l}[(τγ̄)^{−l} / k^k | Δ(l, 1); Δ(l, 1), Δ(k, m)]

    where ``β = 2l/k`` in lowest terms.

    Args:
        hop1: Source-relay hop. Its exponent is rationalized to ``2l/k``.
        prefactor_scale: Multiplier applied to the Meijer-G prefactor. Values
          other than 1 are only useful to exercise the consistency checks.

    Returns:
        G² value.
    """
    hop, l, k = _rationalized(hop1)
    log_argument = -l * _math.log(hop.scale) - k * _math.log(k)
    spec = MeijerGSpec(
        a_top=delta_list(l, 1),
        b_top=delta_list(l, 1) + delta_list(k, hop.m),
        argument=_math.exp(log_argument),
    )
    log_prefactor = _math.log(l) + _gauss_prefactor(l, k, hop.m) - _math.lgamma(hop.m)
    return prefactor_scale * _math.exp(log_prefactor) * meijer_g(spec)


def semi_blind_C_oracle(hop1: GGHop) -> float:
    """Semi-blind relay constant ``C = 1 / E⟨1 / (1 + γ₁)⟩`` by adaptive quadrature.

    Works for any real exponent (no rationalization).

    Args:
        hop1: Source-relay hop.

    Returns:
        Relay constant.
    """
    log_scale = _math.log(hop1.scale)
    rate = 2 / hop1.beta

    def func(t):
        return _math.exp(-_np.logaddexp(0.0, log_scale + rate * t))

    expectation = _gamma_expectation(
        hop1.m, func, landmarks=(-log_scale / rate,), rtol=1e-12, what="semi-blind gain"
    )
    return 1.0 / expectation


def semi_blind_C(hop1: GGHop, *, check: bool = True, prefactor_scale: float = 1.0) -> float:
    """Semi-blind relay constant ``C = 1 / G²`` from the Meijer-G closed form.

    The closed form is validated against :func:`semi_blind_C_oracle` (for the
    rationalized hop): a relative gap above 1e−6 is reported with a
    :class:`RuntimeWarning` and above 1e−4 raises
    :class:`relayperf.ConsistencyError`.

    Args:
        hop1: Source-relay hop.
        check: Flag enabling the oracle comparison.
        prefactor_scale: Multiplier applied to the closed-form prefactor.

    Returns:
        Relay constant.
    """
    value = 1.0 / semi_blind_gain_squared(hop1, prefactor_scale=prefactor_scale)
    if check:
        hop, _, _ = _rationalized(hop1)
        _compare("relay constant", value, semi_blind_C_oracle(hop))
    return value


def nakagami_semi_blind_C(hop1: GGHop) -> float:
    """Semi-blind relay constant for a Nakagami-m hop (β = 2).

    Uses the confluent hypergeometric reduction
    ``G² = x Ψ(1, 2 − m, x)`` with ``x = m / γ̄``.

    Args:
        hop1: Source-relay hop with ``beta == 2``.

    Returns:
        Relay constant.
    """
    if hop1.beta != 2:
        raise DomainError(f"Nakagami reduction requires 'beta' = 2, got {hop1.beta:g}.")
    x = 1.0 / hop1.scale
    return 1.0 / (x * tricomi_psi(1.0, 2.0 - hop1.m, x))


def _second_hop_factor_closed(
    hop2: GGHop, C: float, n: int, l: int, k: int, prefactor_scale: float
) -> float:
    log_argument = l * (_math.log(C) - _math.log(hop2.scale)) - k * _math.log(k)
    spec = MeijerGSpec(
        a_top=delta_list(l, 1 - n),
        b_top=delta_list(l, 0) + delta_list(k, hop2.m),
        argument=_math.exp(log_argument),
    )
    log_prefactor = (
        n * _math.log(l)
        + _gauss_prefactor(l, k, hop2.m)
        - _math.lgamma(n)
        - _math.lgamma(hop2.m)
    )
    return prefactor_scale * _math.exp(log_prefactor) * meijer_g(spec)


def end_to_end_moment(
    sys: RelaySystem, n: int, *, check: bool = True, prefactor_scale: float = 1.0
) -> float:
    """Closed-form moment ``E⟨γ_endⁿ⟩`` of the end-to-end SNR.

    The first-hop factor is ``E⟨γ₁ⁿ⟩``. The second-hop factor
    ``E⟨(γ₂ / (C + γ₂))ⁿ⟩``, with ``β₂ = 2l/k``, is

        lⁿ k^{m₂−1/2} (2π)^{1−l+(1−k)/2} / (Γ(n) Γ(m₂))
        · G^{k+l,l}_{l,k+l}[(C / τ₂γ̄₂)^l / k^k | Δ(l, 1−n); Δ(l, 0), Δ(k, m₂)]

    Args:
        sys: Relay system. The second-hop exponent is rationalized.
        n: Moment order, positive integer.
        check: Flag enabling the comparison with
          :func:`end_to_end_moment_oracle` (for the rationalized system).
        prefactor_scale: Multiplier applied to the closed-form prefactor.

    Returns:
        Moment value.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"'n' must be a positive integer for the closed form, got {n!r}.")
    n = int(n)
    hop2, l, k = _rationalized(sys.hop2)
    value = single_hop_moment(sys.hop1, n) * _second_hop_factor_closed(
        hop2, sys.C, n, l, k, prefactor_scale
    )
    if check:
        rounded = sys if hop2 is sys.hop2 else _dc.replace(sys, hop2=hop2)
        _compare(f"moment of order {n}", value, end_to_end_moment_oracle(rounded, n))
    return value


def _second_hop_factor_quad(hop2: GGHop, C: float, n: float) -> float:
    log_ratio = _math.log(C) - _math.log(hop2.scale)
    rate = 2 / hop2.beta

    def func(t):
        return _math.exp(-n * _np.logaddexp(0.0, log_ratio - rate * t))

    return _gamma_expectation(
        hop2.m, func, landmarks=(log_ratio / rate,), rtol=1e-11, what="second-hop moment factor"
    )


def _second_hop_factor_laguerre(hop2: GGHop, C: float, n: float, max_order: int) -> float:
    log_ratio = _math.log(C) - _math.log(hop2.scale)
    rate = 2 / hop2.beta
    log_norm = _math.lgamma(hop2.m)
    previous = None
    order = 16
    while True:
        rule = gauss_laguerre(order)
        log_x = _np.log(rule.nodes)
        with _np.errstate(divide="ignore"):
            log_terms = (
                _np.log(rule.weights)
                + (hop2.m - 1) * log_x
                - n * _np.logaddexp(0.0, log_ratio - rate * log_x)
                - log_norm
            )
        value = float(_np.sum(_np.exp(log_terms)))
        if previous is not None and abs(value - previous) <= 1e-10 * abs(value):
            return value
        if order >= max_order:
            raise ConvergenceError(
                f"Gauss-Laguerre moment factor did not converge up to order {order}: "
                f"last values {previous!r} and {value!r}."
            )
        previous = value
        order = min(2 * order, max_order)


def end_to_end_moment_oracle(
    sys: RelaySystem, n: float, *, method: str = "adaptive", max_order: int = 200
) -> float:
    """Moment ``E⟨γ_endⁿ⟩`` by numerical integration over the second hop.

    The first-hop factor is the closed form ``E⟨γ₁ⁿ⟩``; the second-hop factor
    ``∫₀^∞ w^{m₂−1} e^{−w} (g / (C + g))ⁿ dw / Γ(m₂)`` with
    ``g = τ₂γ̄₂ w^{2/β₂}`` is integrated numerically. Any real exponent and
    real ``n ≥ 1`` are accepted.

    Args:
        sys: Relay system.
        n: Moment order, at least 1.
        method: ``"adaptive"`` integrates in ``ln w`` with adaptive
          quadrature; ``"laguerre"`` applies Gauss-Laguerre rules of doubling
          order until successive values agree to 1e−10 relative.
        max_order: Largest Gauss-Laguerre order for ``"laguerre"``.

    Returns:
        Moment value.
    """
    n = _require_nonnegative("n", n)
    if n < 1:
        raise DomainError(f"'n' must be at least 1, got {n:g}.")
    if method == "adaptive":
        factor = _second_hop_factor_quad(sys.hop2, sys.C, n)
    elif method == "laguerre":
        factor = _second_hop_factor_laguerre(sys.hop2, sys.C, n, max_order)
    else:
        raise ValueError("'method' must be one of 'adaptive' or 'laguerre'.")
    return single_hop_moment(sys.hop1, n) * factor


def moment_sequence(
    sys: RelaySystem,
    count: int,
    *,
    source: str = "oracle",
    sim: _typ.Any = None,
    check: bool = False,
) -> MomentSequence:
    """Moments ``E⟨γ_endⁿ⟩`` for ``n = 1, …, count``.

    Args:
        sys: Relay system.
        count: Number of moments.
        source: ``"oracle"``, ``"closed-form"`` or ``"monte-carlo"``.
        sim: :class:`relayperf.SimConfig` used by the ``"monte-carlo"``
          source.
        check: Flag enabling the oracle comparison of closed-form moments.

    Returns:
        Moment sequence tagged with its source.
    """
    if int(count) != count or count < 1:
        raise ValueError("'count' must be a positive integer.")
    orders = range(1, int(count) + 1)
    if source == "oracle":
        values = [end_to_end_moment_oracle(sys, n) for n in orders]
    elif source == "closed-form":
        values = [end_to_end_moment(sys, n, check=check) for n in orders]
    elif source == "monte-carlo":
        from .simulate import SimConfig, mc_moments

        if sim is None:
            sim = SimConfig()
        values = [mean for mean, _ in mc_moments(sys, sim, int(count))]
    else:
        raise ValueError(
            "'source' must be one of 'oracle', 'closed-form', or 'monte-carlo', "
            f"got {source!r}."
        )
    return MomentSequence(tuple(values), source)
