"""Monte Carlo estimates of the end-to-end metrics."""

from .fading import sample
from .metrics import ModulationScheme
from .relay import RelaySystem, combine_snr
from .utils import require_positive as _require_positive

import numpy as _np
from scipy import special as _special

import concurrent.futures as _futures
import dataclasses as _dc
import math as _math
import typing as _typ


_CHUNK = 250_000


@_dc.dataclass(frozen=True)
class SimConfig:
    """Monte Carlo configuration.

    Args:
        trials: Total number of paired hop draws.
        seed: Non-negative integer seed. Shard ``i`` draws from an
          independent stream derived from ``(seed, i)``.
        shards: Number of independent streams.
        workers: Number of threads used to run the shards. Results do not
          depend on this value.
    """

    trials: int = 100_000
    seed: int = 2024
    shards: int = 4
    workers: int = 1

    def __post_init__(self):
        for name in ("trials", "shards", "workers"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"'{name}' must be a positive integer, got {value!r}.")
            object.__setattr__(self, name, int(value))
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise ValueError(f"'seed' must be an unsigned 64-bit integer, got {self.seed!r}.")
        object.__setattr__(self, "seed", int(self.seed))

    def shard_trials(self) -> _typ.List[int]:
        """Number of trials assigned to each shard."""
        base, extra = divmod(self.trials, self.shards)
        return [base + (1 if i < extra else 0) for i in range(self.shards)]


def gaussian_q(x):
    """Gaussian tail probability ``Q(x) = erfc(x / √2) / 2``."""
    return (0.5 * _special.erfc(_np.asarray(x, dtype=float) / _math.sqrt(2.0)))[()]


class _Moments:
    """Running count, mean and centered sum of squares (vectorized over statistics)."""

    def __init__(self, size: int):
        self.count = 0
        self.mean = _np.zeros(size)
        self.m2 = _np.zeros(size)

    def add_batch(self, values: _np.ndarray) -> None:
        other = _Moments(values.shape[1])
        other.count = values.shape[0]
        other.mean = values.mean(axis=0)
        other.m2 = ((values - other.mean) ** 2).sum(axis=0)
        self.merge(other)

    def merge(self, other: "_Moments") -> None:
        if other.count == 0:
            return
        total = self.count + other.count
        delta = other.mean - self.mean
        self.mean = self.mean + delta * (other.count / total)
        self.m2 = self.m2 + other.m2 + delta**2 * (self.count * other.count / total)
        self.count = total

    def standard_error(self) -> _np.ndarray:
        if self.count < 2:
            return _np.full_like(self.mean, _np.nan)
        return _np.sqrt(self.m2 / (self.count - 1) / self.count)


def _run_shard(
    sys: RelaySystem,
    seed: int,
    index: int,
    trials: int,
    statistic: _typ.Callable[[_np.ndarray], _np.ndarray],
    size: int,
) -> _Moments:
    rng = _np.random.default_rng(_np.random.SeedSequence(entropy=seed, spawn_key=(index,)))
    moments = _Moments(size)
    remaining = trials
    while remaining > 0:
        count = min(remaining, _CHUNK)
        gamma_end = combine_snr(sample(sys.hop1, rng, count), sample(sys.hop2, rng, count), sys.C)
        moments.add_batch(statistic(_np.atleast_1d(gamma_end)))
        remaining -= count
    return moments


def _simulate(
    sys: RelaySystem,
    cfg: SimConfig,
    statistic: _typ.Callable[[_np.ndarray], _np.ndarray],
    size: int,
) -> _Moments:
    jobs = [(i, n) for i, n in enumerate(cfg.shard_trials()) if n > 0]
    if cfg.workers > 1:
        with _futures.ThreadPoolExecutor(max_workers=cfg.workers) as executor:
            results = list(
                executor.map(
                    lambda job: _run_shard(sys, cfg.seed, job[0], job[1], statistic, size), jobs
                )
            )
    else:
        results = [_run_shard(sys, cfg.seed, i, n, statistic, size) for i, n in jobs]
    total = _Moments(size)
    for shard in results:
        total.merge(shard)
    return total


def mc_moments(
    sys: RelaySystem, cfg: SimConfig, n_max: int
) -> _typ.List[_typ.Tuple[float, float]]:
    """Sample moments of the end-to-end SNR.

    Args:
        sys: Relay system.
        cfg: Simulation configuration.
        n_max: Highest moment order.

    Returns:
        List of ``(mean, standard error)`` for orders ``1 … n_max``.
    """
    if int(n_max) != n_max or n_max < 1:
        raise ValueError("'n_max' must be a positive integer.")
    powers = _np.arange(1, int(n_max) + 1)
    result = _simulate(sys, cfg, lambda g: g[:, None] ** powers, len(powers))
    return list(zip(result.mean.tolist(), result.standard_error().tolist()))


def mc_outage(sys: RelaySystem, cfg: SimConfig, gamma_th: float) -> _typ.Tuple[float, float]:
    """Fraction of trials with ``γ_end ≤ γ_th`` and its binomial standard error."""
    gamma_th = _require_positive("gamma_th", gamma_th)
    result = _simulate(sys, cfg, lambda g: (g <= gamma_th).astype(float)[:, None], 1)
    p = float(result.mean[0])
    return p, _math.sqrt(p * (1 - p) / result.count)


def conditional_bep(scheme: ModulationScheme, gamma):
    """Bit error probability at instantaneous SNR ``gamma``."""
    gamma = _np.asarray(gamma, dtype=float)
    if scheme.kind == "bdpsk":
        return 0.5 * _np.exp(-gamma)
    if scheme.kind == "ncbfsk":
        return 0.5 * _np.exp(-0.5 * gamma)
    return gaussian_q(_np.sqrt(2 * scheme.psi * gamma))


def mc_abep(
    sys: RelaySystem, cfg: SimConfig, scheme: ModulationScheme
) -> _typ.Tuple[float, float]:
    """Semi-analytic ABEP: average of the conditional BEP over sampled SNRs.

    Args:
        sys: Relay system.
        cfg: Simulation configuration.
        scheme: Modulation scheme.

    Returns:
        Tuple ``(estimate, standard error)``.
    """
    result = _simulate(sys, cfg, lambda g: _np.atleast_1d(conditional_bep(scheme, g))[:, None], 1)
    return float(result.mean[0]), float(result.standard_error()[0])
