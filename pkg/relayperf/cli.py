"""Command-line front end: scenario sweeps written as CSV and the validation suite."""

from . import __version__
from .config import ScenarioConfig, load_config
from .errors import ConfigError, NumericalError
from .fading import make_hop, nakagami_hop
from .metrics import (
    BDPSK,
    BPSK,
    SCHEMES,
    abep,
    abep_bdpsk,
    abep_coherent,
    mgf_for_system,
    outage_exact,
    outage_pade,
    outage_quadrature,
)
from .pade_mgf import MomentSequence, build_pade, taylor_coefficients
from .relay import (
    end_to_end_moment,
    end_to_end_moment_oracle,
    make_system,
    moment_sequence,
    nakagami_semi_blind_C,
    semi_blind_C,
    semi_blind_C_oracle,
)
from .simulate import SimConfig, mc_abep, mc_moments, mc_outage
from .special_functions import MeijerGSpec, gamma_fn, gauss_laguerre, meijer_g
from .utils import db_to_linear, linear_to_db

import numpy as np
from scipy import special

import argparse
import csv
import dataclasses
import itertools
import math
import sys
import typing
import warnings


EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

Progress = typing.Optional[typing.Callable[[str], None]]


@dataclasses.dataclass
class Table:
    """CSV table with an optional plot description.

    Args:
        header: Column names.
        rows: Row tuples; ``None`` cells are written empty.
        x: Column plotted on the horizontal axis.
        group: Column distinguishing the plotted curves.
        y: Columns plotted on the vertical axis.
        log_y: Flag selecting a logarithmic vertical axis.
    """

    header: typing.Tuple[str, ...]
    rows: typing.List[tuple] = dataclasses.field(default_factory=list)
    x: typing.Optional[str] = None
    group: typing.Optional[str] = None
    y: typing.Tuple[str, ...] = ()
    log_y: bool = False

    def column(self, name: str) -> list:
        index = self.header.index(name)
        return [row[index] for row in self.rows]


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def write_csv(table: Table, stream: typing.TextIO) -> None:
    """Write ``table`` with a header row, LF line endings and 17 significant digits."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([_format(value) for value in row])


def _report(progress: Progress, message: str) -> None:
    if progress is not None:
        progress(message)


def _require_axis(config: ScenarioConfig, command: str, allowed: typing.Sequence[str]) -> str:
    axis = config["sweep.axis"]
    if axis not in allowed:
        raise ConfigError(
            f"'{command}' supports the sweep axes {', '.join(allowed)}, got {axis!r}.",
            key="sweep.axis",
        )
    return axis


def _ratios(config: ScenarioConfig) -> typing.Tuple[typing.Optional[float], ...]:
    return config["balance.ratios"] or (None,)


def _second_hop(config: ScenarioConfig, mean_snr_db: float, ratio, **kwargs):
    """Second hop at ``ratio · γ̄₁``, or as configured when ``ratio`` is None."""
    if ratio is None:
        return config.hop(2, **kwargs)
    return config.hop(2, mean_snr_db=mean_snr_db + linear_to_db(ratio), **kwargs)


def cmd_gain_sweep(config: ScenarioConfig, *, progress: Progress = None) -> Table:
    """Semi-blind relay constant versus γ̄₁ for each first-hop shape in ``series.m1``.

    Args:
        config: Scenario configuration (``sweep.axis`` must be ``gamma1_db``).
        progress: Callable receiving one message per sweep point.

    Returns:
        Table ``(gamma1_db, m1, C_closed_form, C_oracle)``.
    """
    _require_axis(config, "gain-sweep", ("gamma1_db",))
    table = Table(
        ("gamma1_db", "m1", "C_closed_form", "C_oracle"),
        x="gamma1_db",
        group="m1",
        y=("C_closed_form",),
    )
    for m1 in config["series.m1"]:
        for point in config["sweep.points"]:
            _report(progress, f"gain-sweep: m1 = {m1:g}, gamma1 = {point:g} dB")
            hop1 = config.hop(1, mean_snr_db=point, m=m1)
            table.rows.append(
                (point, m1, semi_blind_C(hop1, check=False), semi_blind_C_oracle(hop1))
            )
    return table


def cmd_avg_snr(config: ScenarioConfig, *, progress: Progress = None) -> Table:
    """Average end-to-end SNR versus γ̄₁ for each balance ratio.

    Args:
        config: Scenario configuration (``sweep.axis`` must be ``gamma1_db``).
        progress: Callable receiving one message per sweep point.

    Returns:
        Table ``(gamma1_db, balance_ratio, mean_closed, mean_oracle, mean_mc, mc_stderr)``.
    """
    _require_axis(config, "avg-snr", ("gamma1_db",))
    table = Table(
        ("gamma1_db", "balance_ratio", "mean_closed", "mean_oracle", "mean_mc", "mc_stderr"),
        x="gamma1_db",
        group="balance_ratio",
        y=("mean_closed", "mean_mc"),
    )
    sim = config.sim
    for ratio in _ratios(config):
        for point in config["sweep.points"]:
            _report(progress, f"avg-snr: ratio = {ratio}, gamma1 = {point:g} dB")
            hop1 = config.hop(1, mean_snr_db=point)
            hop2 = _second_hop(config, point, ratio)
            sys_ = make_system(hop1, hop2, C=config.fixed_C, check=False)
            mean_mc, stderr = mc_moments(sys_, sim, 1)[0]
            table.rows.append(
                (
                    point,
                    hop2.mean_snr / hop1.mean_snr if ratio is None else ratio,
                    end_to_end_moment(sys_, 1, check=False),
                    end_to_end_moment_oracle(sys_, 1),
                    mean_mc,
                    stderr,
                )
            )
    return table


def cmd_abep(config: ScenarioConfig, *, progress: Progress = None) -> Table:
    """ABEP of each scheme in ``abep.schemes`` along the sweep.

    With the ``gamma1_db`` axis the points are first-hop average SNRs. With
    the ``m`` or ``beta`` axes the points set the fading shape (exponent) of
    both hops at the configured average SNRs, and the swept value is written
    in an extra trailing column named after the axis.

    Args:
        config: Scenario configuration with at most one balance ratio.
        progress: Callable receiving one message per sweep point.

    Returns:
        Table ``(gamma1_db, scheme, psi, abep_pade, abep_mc, mc_stderr[, axis])``.
    """
    axis = _require_axis(config, "abep", ("gamma1_db", "m", "beta"))
    ratios = config["balance.ratios"]
    if len(ratios) > 1:
        raise ConfigError("'abep' accepts at most one balance ratio.", key="balance.ratios")
    ratio = ratios[0] if ratios else None

    header = ("gamma1_db", "scheme", "psi", "abep_pade", "abep_mc", "mc_stderr")
    if axis != "gamma1_db":
        header += (axis,)
    table = Table(header, x=header[-1] if axis != "gamma1_db" else "gamma1_db", group="scheme")
    table.y, table.log_y = ("abep_pade", "abep_mc"), True

    sim = config.sim
    systems = []
    for point in config["sweep.points"]:
        _report(progress, f"abep: {axis} = {point:g}")
        if axis == "gamma1_db":
            gamma1_db = point
            shape = {}
        else:
            gamma1_db = config["hop1.mean_snr_db"]
            shape = {axis: point}
        hop1 = config.hop(1, mean_snr_db=gamma1_db, **shape)
        hop2 = _second_hop(config, gamma1_db, ratio, **shape)
        sys_ = make_system(hop1, hop2, C=config.fixed_C, check=False)
        mgf = mgf_for_system(sys_, A=config["pade.A"], source=config["pade.source"], sim=sim)
        systems.append((point, gamma1_db, sys_, mgf))

    for name in config["abep.schemes"]:
        scheme = SCHEMES[name]
        for point, gamma1_db, sys_, mgf in systems:
            estimate, stderr = mc_abep(sys_, sim, scheme)
            row = (gamma1_db, scheme.name, scheme.psi, abep(mgf, scheme), estimate, stderr)
            if axis != "gamma1_db":
                row += (point,)
            table.rows.append(row)
    return table


def cmd_outage(config: ScenarioConfig, *, progress: Progress = None) -> Table:
    """Outage probability versus γ̄₁/γ_th by every available method.

    With the ``gamma1_db`` axis the points are first-hop average SNRs and the
    threshold is ``outage.gamma_th_db``; with the ``gamma_th_db`` axis the
    points are the ratio γ̄₁/γ_th in dB at the configured γ̄₁.

    Args:
        config: Scenario configuration.
        progress: Callable receiving one message per sweep point.

    Returns:
        Table ``(gamma1_over_gammath_db, balance_ratio, op_pade, op_quadrature,
        op_exact, op_mc, mc_stderr)``.
    """
    axis = _require_axis(config, "outage", ("gamma1_db", "gamma_th_db"))
    table = Table(
        (
            "gamma1_over_gammath_db",
            "balance_ratio",
            "op_pade",
            "op_quadrature",
            "op_exact",
            "op_mc",
            "mc_stderr",
        ),
        x="gamma1_over_gammath_db",
        group="balance_ratio",
        y=("op_pade", "op_exact"),
        log_y=True,
    )
    sim = config.sim
    order = config["outage.order"]
    for ratio in _ratios(config):
        cache = {}
        for point in config["sweep.points"]:
            _report(progress, f"outage: ratio = {ratio}, {axis} point = {point:g}")
            if axis == "gamma1_db":
                gamma1_db = point
                gamma_th_db = config["outage.gamma_th_db"]
            else:
                gamma1_db = config["hop1.mean_snr_db"]
                gamma_th_db = gamma1_db - point
            if gamma1_db not in cache:
                hop1 = config.hop(1, mean_snr_db=gamma1_db)
                hop2 = _second_hop(config, gamma1_db, ratio)
                sys_ = make_system(hop1, hop2, C=config.fixed_C, check=False)
                mgf = mgf_for_system(
                    sys_, A=config["pade.A"], source=config["pade.source"], sim=sim
                )
                cache[gamma1_db] = (sys_, mgf)
            sys_, mgf = cache[gamma1_db]
            gamma_th = db_to_linear(gamma_th_db)
            estimate, stderr = mc_outage(sys_, sim, gamma_th)
            table.rows.append(
                (
                    gamma1_db - gamma_th_db,
                    sys_.hop2.mean_snr / sys_.hop1.mean_snr if ratio is None else ratio,
                    outage_pade(mgf, gamma_th),
                    outage_quadrature(sys_, gamma_th, order),
                    outage_exact(sys_, gamma_th),
                    estimate,
                    stderr,
                )
            )
    return table


@dataclasses.dataclass(frozen=True)
class CheckResult:
    """Outcome of one validation check.

    A check passes when its measured value is at most the tolerance; a check
    that raised is a failure and keeps the error message.
    """

    check: str
    measured: typing.Optional[float]
    tolerance: float
    error: typing.Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.measured is not None and self.measured <= self.tolerance

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        return "pass" if self.passed else "fail"


def _relative(value: float, reference: float) -> float:
    return abs(value - reference) / abs(reference)


def _hop_grid(full: bool):
    """First-hop parameter grid ``(m, β, γ̄)``."""
    if full:
        return list(itertools.product((1.0, 2.0, 3.5), (4 / 3, 2.0, 3.0), (1.0, 10.0)))
    return [(1.0, 4 / 3, 1.0), (2.0, 2.0, 10.0), (3.5, 3.0, 1.0), (2.0, 3.0, 10.0)]


def _system_grid(full: bool):
    """Semi-blind systems for the moment and Padé checks."""
    if full:
        shapes = itertools.product((1.0, 2.0, 3.5), repeat=2)
        exponents = list(itertools.product((4 / 3, 2.0, 3.0), repeat=2))
        snrs = list(itertools.product((1.0, 10.0), repeat=2))
        grid = [
            (m1, m2, b1, b2, g1, g2)
            for m1, m2 in shapes
            for b1, b2 in exponents
            for g1, g2 in snrs
        ]
    else:
        grid = [
            (1.0, 2.0, 4 / 3, 3.0, 1.0, 10.0),
            (2.0, 2.0, 2.0, 2.0, 10.0, 10.0),
            (3.5, 1.0, 3.0, 4 / 3, 10.0, 1.0),
            (2.0, 3.5, 3.0, 3.0, 1.0, 1.0),
        ]
    return [
        make_system(make_hop(m1, b1, g1), make_hop(m2, b2, g2), check=False)
        for m1, m2, b1, b2, g1, g2 in grid
    ]


def _figure_systems():
    """Outage configuration: β₁ = β₂ = 3, m₁ = m₂ = 2, γ_th = 1, both balance cases."""
    systems = []
    for ratio in (2.0, 0.5):
        for point in (0.0, 5.0, 10.0, 15.0, 20.0, 25.0):
            snr = db_to_linear(point)
            hop1 = make_hop(2.0, 3.0, snr)
            hop2 = make_hop(2.0, 3.0, ratio * snr)
            systems.append(make_system(hop1, hop2, check=False))
    return systems


def _check_meijer_exponential() -> float:
    worst = 0.0
    for x in (0.01, 0.1, 1.0, 10.0, 100.0):
        value = meijer_g(MeijerGSpec(b_top=(0.0,), argument=x), cross_check=False)
        worst = max(worst, _relative(value, math.exp(-x)))
    return worst


def _check_meijer_binomial() -> float:
    worst = 0.0
    for rho in (0.5, 1.0, 2.0, 5.0):
        for x in (0.01, 0.1, 1.0, 10.0, 100.0):
            spec = MeijerGSpec(a_top=(1 - rho,), b_top=(0.0,), argument=x)
            expected = gamma_fn(rho) * (1 + x) ** (-rho)
            worst = max(worst, _relative(meijer_g(spec, cross_check=False), expected))
    return worst


def _check_laguerre_two_point() -> float:
    rule = gauss_laguerre(2)
    root = math.sqrt(2.0)
    nodes = np.array([2 - root, 2 + root])
    weights = np.array([(2 + root) / 4, (2 - root) / 4])
    return float(max(np.max(np.abs(rule.nodes - nodes)), np.max(np.abs(rule.weights - weights))))


def _check_laguerre_exactness() -> float:
    worst = 0.0
    for order in (2, 5, 10, 30):
        rule = gauss_laguerre(order)
        for degree in range(2 * order):
            value = rule.integrate(lambda x: x**degree)
            worst = max(worst, _relative(value, math.factorial(degree)))
    return worst


def _check_rayleigh_constant(prefactor_scale: float) -> float:
    expected = 1 / (math.e * float(special.exp1(1.0)))
    value = semi_blind_C(nakagami_hop(1.0, 1.0), check=False, prefactor_scale=prefactor_scale)
    return _relative(value, expected)


def _check_nakagami_reduction(prefactor_scale: float) -> float:
    worst = 0.0
    for m in (1.5, 2.0, 3.5):
        for snr in (1.0, 10.0):
            hop = nakagami_hop(m, snr)
            value = semi_blind_C(hop, check=False, prefactor_scale=prefactor_scale)
            worst = max(worst, _relative(value, nakagami_semi_blind_C(hop)))
    return worst


def _check_moments(systems, prefactor_scale: float) -> float:
    worst = 0.0
    for sys_ in systems:
        for n in (1, 2, 3):
            closed = end_to_end_moment(sys_, n, check=False, prefactor_scale=prefactor_scale)
            worst = max(worst, _relative(closed, end_to_end_moment_oracle(sys_, n)))
    return worst


def _check_gain(full: bool, prefactor_scale: float) -> float:
    worst = 0.0
    for m, beta, snr in _hop_grid(full):
        hop = make_hop(m, beta, snr)
        closed = semi_blind_C(hop, check=False, prefactor_scale=prefactor_scale)
        worst = max(worst, _relative(closed, semi_blind_C_oracle(hop)))
    return worst


def _check_moment_simulation(systems, sim: SimConfig) -> float:
    worst = 0.0
    for sys_ in systems:
        for n, (mean, stderr) in enumerate(mc_moments(sys_, sim, 3), 1):
            worst = max(worst, abs(mean - end_to_end_moment_oracle(sys_, n)) / stderr)
    return worst


def _exponential_mgf():
    moments = MomentSequence(tuple(math.factorial(n) for n in range(1, 16)), "closed-form")
    return build_pade(moments, 7)


def _check_exponential_pipeline() -> float:
    mgf = _exponential_mgf()
    return max(
        abs(abep_bdpsk(mgf) - 0.25),
        abs(abep_coherent(mgf, BPSK) - 0.5 * (1 - math.sqrt(0.5))),
        abs(outage_pade(mgf, 1.0) - (1 - math.exp(-1.0))),
    )


def _check_outage_pade(systems, mgfs) -> float:
    worst = 0.0
    for sys_, mgf in zip(systems, mgfs):
        reference = outage_quadrature(sys_, 1.0)
        if reference >= 1e-4:
            worst = max(worst, abs(outage_pade(mgf, 1.0) - reference))
    return worst


def _check_outage_quadrature(systems) -> float:
    return max(abs(outage_quadrature(s, 1.0) - outage_exact(s, 1.0)) for s in systems)


def _check_outage_simulation(systems, sim: SimConfig) -> float:
    worst = 0.0
    for sys_ in systems:
        estimate, stderr = mc_outage(sys_, sim, 1.0)
        gap = abs(estimate - outage_exact(sys_, 1.0))
        if stderr > 0:
            worst = max(worst, gap / stderr)
        elif gap > 1e-6:
            worst = math.inf
    return worst


def _check_abep_simulation(systems, mgfs, sim: SimConfig) -> float:
    worst = 0.0
    for sys_, mgf in zip(systems, mgfs):
        for scheme in (BDPSK, BPSK):
            estimate, stderr = mc_abep(sys_, sim, scheme)
            if estimate < 1e-6:
                continue
            allowed = max(0.02 * estimate, 3 * stderr)
            worst = max(worst, abs(abep(mgf, scheme) - estimate) / allowed)
    return worst


def _check_gain_ordering() -> float:
    violations = 0
    for point in range(0, 35, 5):
        values = [
            semi_blind_C(make_hop(m1, 4 / 3, db_to_linear(point)), check=False)
            for m1 in (1.5, 2.5, 3.5)
        ]
        violations += sum(1 for a, b in zip(values[:-1], values[1:]) if not b > a)
    return violations


def _check_taylor_match(systems, orders) -> float:
    worst = 0.0
    for sys_ in systems:
        sequence = moment_sequence(sys_, 2 * max(orders) + 1)
        for A in orders:
            mgf = build_pade(sequence, A)
            count = sum(mgf.orders) + 1
            powers = mgf.scale ** -np.arange(count)
            expected = sequence.series(count) * powers
            found = taylor_coefficients(mgf, count - 1) * powers
            worst = max(worst, float(np.max(np.abs(found - expected)) / np.linalg.norm(expected)))
    return worst


def _check_poles(mgfs) -> float:
    return sum(int(np.sum(mgf.poles.real >= 0)) for mgf in mgfs)


def _check_order_stability(systems) -> float:
    worst = 0.0
    for sys_ in systems:
        low = mgf_for_system(sys_, A=7)
        high = mgf_for_system(sys_, A=8)
        for measure in (
            abep_bdpsk,
            lambda mgf: abep_coherent(mgf, BPSK),
            lambda mgf: outage_pade(mgf, 1.0),
        ):
            worst = max(worst, _relative(measure(high), measure(low)))
    return worst


def _run_check(
    name: str, tolerance: float, func: typing.Callable[[], float], progress: Progress
) -> CheckResult:
    _report(progress, f"validate: {name}")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            measured = float(func())
    except (ArithmeticError, ValueError, RuntimeError) as err:
        return CheckResult(name, None, tolerance, f"{type(err).__name__}: {err}")
    return CheckResult(name, measured, tolerance)


def run_checks(
    *,
    full: bool = False,
    prefactor_scale: float = 1.0,
    seed: int = 2024,
    progress: Progress = None,
) -> typing.List[CheckResult]:
    """Run the identity, oracle, Monte Carlo and self-consistency checks.

    Args:
        full: Flag selecting the full parameter grids and 10⁷ Monte Carlo
          trials instead of the reduced grids and 4·10⁵ trials.
        prefactor_scale: Multiplier applied to the closed-form Meijer-G
          prefactors; any value other than 1 must make the closed-form checks
          fail.
        seed: Monte Carlo seed.
        progress: Callable receiving one message per check.

    Returns:
        Check results in a fixed order.
    """
    sim = SimConfig(trials=10_000_000 if full else 400_000, seed=seed, shards=8)
    systems = _system_grid(full)
    figure = _figure_systems()
    lazy = {}

    def figure_mgfs():
        if "figure" not in lazy:
            lazy["figure"] = [mgf_for_system(s) for s in figure]
        return lazy["figure"]

    def grid_mgfs():
        if "grid" not in lazy:
            lazy["grid"] = [mgf_for_system(s) for s in systems]
        return lazy["grid"]

    sample = systems if full else systems[:2]
    picked = slice(None, None, 2) if full else slice(0, 6, 2)
    checks = [
        ("meijer-g exponential identity", 1e-9, _check_meijer_exponential),
        ("meijer-g binomial identity", 1e-9, _check_meijer_binomial),
        ("gauss-laguerre two-point rule", 1e-10, _check_laguerre_two_point),
        ("gauss-laguerre exactness", 1e-9, _check_laguerre_exactness),
        ("rayleigh relay constant", 1e-8, lambda: _check_rayleigh_constant(prefactor_scale)),
        (
            "nakagami relay constant reduction",
            1e-8,
            lambda: _check_nakagami_reduction(prefactor_scale),
        ),
        ("relay constant vs oracle", 1e-6, lambda: _check_gain(full, prefactor_scale)),
        ("moments closed form vs oracle", 1e-6, lambda: _check_moments(systems, prefactor_scale)),
        ("moments monte carlo z-score", 3.0, lambda: _check_moment_simulation(sample, sim)),
        ("exponential pipeline", 1e-6, _check_exponential_pipeline),
        ("outage pade vs quadrature", 1e-3, lambda: _check_outage_pade(figure, figure_mgfs())),
        ("outage quadrature vs exact", 1e-6, lambda: _check_outage_quadrature(figure)),
        ("outage monte carlo z-score", 3.0, lambda: _check_outage_simulation(figure, sim)),
        (
            "abep pade vs monte carlo",
            1.0,
            lambda: _check_abep_simulation(figure[picked], figure_mgfs()[picked], sim),
        ),
        ("relay constant ordering in m1", 0.0, _check_gain_ordering),
        (
            "pade taylor match",
            1e-9,
            lambda: _check_taylor_match(sample, (3, 5, 7, 8) if full else (3, 7)),
        ),
        ("pade poles in left half-plane", 0.0, lambda: _check_poles(grid_mgfs())),
        ("pade order stability", 5e-5, lambda: _check_order_stability(sample)),
    ]
    return [_run_check(name, tolerance, func, progress) for name, tolerance, func in checks]


def cmd_validate(
    *,
    full: bool = False,
    prefactor_scale: float = 1.0,
    seed: int = 2024,
    progress: Progress = None,
) -> typing.Tuple[Table, bool]:
    """Validation report.

    Returns:
        Table ``(check, measured, tolerance, status)`` and a flag that is set
        when every check passed.
    """
    results = run_checks(full=full, prefactor_scale=prefactor_scale, seed=seed, progress=progress)
    table = Table(("check", "measured", "tolerance", "status"))
    for result in results:
        table.rows.append((result.check, result.measured, result.tolerance, result.status))
        if result.error is not None:
            print(f"{result.check}: {result.error}", file=sys.stderr)
    return table, all(result.passed for result in results)


def render_plot(table: Table, path: str) -> bool:
    """Render ``table`` with matplotlib.

    Returns:
        ``False`` (with a warning) when matplotlib is not installed.
    """
    try:
        import matplotlib

        matplotlib.use("Agg")
        from matplotlib import pyplot
    except ImportError:
        warnings.warn("Plotting requires matplotlib; no plot was written.", RuntimeWarning, 2)
        return False

    figure, ax = pyplot.subplots(1, 1, figsize=(7, 5), tight_layout=True)
    x_values = table.column(table.x)
    groups = table.column(table.group) if table.group else [None] * len(table.rows)
    for name in table.y:
        y_values = table.column(name)
        for key in dict.fromkeys(groups):
            points = [(x, y) for x, y, g in zip(x_values, y_values, groups) if g == key]
            label = name if key is None else f"{name} ({table.group} = {_label(key)})"
            ax.plot([p[0] for p in points], [p[1] for p in points], ".-", label=label)
    ax.set(xlabel=table.x)
    if table.log_y:
        ax.set_yscale("log")
    ax.grid(True)
    ax.legend()
    figure.savefig(path)
    pyplot.close(figure)
    return True


def _label(value) -> str:
    return value if isinstance(value, str) else f"{value:g}"


_COMMANDS = {
    "gain-sweep": (cmd_gain_sweep, "Semi-blind relay constant versus the first-hop SNR."),
    "avg-snr": (cmd_avg_snr, "Average end-to-end SNR: closed form, oracle and Monte Carlo."),
    "abep": (cmd_abep, "Average bit error probability from the MGF approximant."),
    "outage": (cmd_outage, "Outage probability by residues, quadrature and Monte Carlo."),
}


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relayperf",
        description="Dual-hop amplify-and-forward relay performance over generalized-gamma fading",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  relayperf gain-sweep --set hop1.beta=1.3333333333333333 --out gain.csv
  relayperf avg-snr --config scenario.txt --set balance.ratios=2,0.5
  relayperf abep --config scenario.txt --set sweep.axis=m --set sweep.points=1,2,3
  relayperf outage --config scenario.txt --plot outage.png
  relayperf validate --full

Exit codes:
  0  success
  1  validation failure
  2  configuration error
  3  numerical failure
        """,
    )
    parser.add_argument("-V", "--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    output_group = common.add_argument_group("Output")
    output_group.add_argument("-o", "--out", help="CSV output file (default: standard output)")
    output_group.add_argument("--plot", help="Render the results to this image file")
    output_group.add_argument(
        "-v", "--verbose", action="store_true", help="Report progress on standard error"
    )
    common.add_argument("--seed", type=_seed, help="Monte Carlo seed (overrides sim.seed)")

    scenario = argparse.ArgumentParser(add_help=False)
    scenario_group = scenario.add_argument_group("Scenario")
    scenario_group.add_argument("-c", "--config", help="Scenario file with 'key = value' lines")
    scenario_group.add_argument(
        "--set",
        action="append",
        metavar="KEY=VALUE",
        help="Override a configuration value (repeatable)",
    )

    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in _COMMANDS.items():
        subparsers.add_parser(name, parents=[scenario, common], help=help_text)

    validate = subparsers.add_parser(
        "validate", parents=[common], help="Run the identity, oracle and consistency checks."
    )
    checks_group = validate.add_argument_group("Checks")
    checks_group.add_argument(
        "--full", action="store_true", help="Use the full grids and 10^7 Monte Carlo trials"
    )
    checks_group.add_argument(
        "--perturb-prefactor",
        type=float,
        default=0.0,
        metavar="FRACTION",
        help="Scale the closed-form prefactors by 1 + FRACTION",
    )
    return parser


def _emit(table: Table, args: argparse.Namespace) -> None:
    if args.out is None:
        write_csv(table, sys.stdout)
    else:
        with open(args.out, "w", newline="", encoding="utf-8") as stream:
            write_csv(table, stream)
    if args.plot is not None and table.x is not None:
        render_plot(table, args.plot)


def main(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
    parser = create_parser()
    args = parser.parse_args(argv)
    progress = (lambda message: print(message, file=sys.stderr)) if args.verbose else None

    try:
        if args.command == "validate":
            table, passed = cmd_validate(
                full=args.full,
                prefactor_scale=1.0 + args.perturb_prefactor,
                seed=2024 if args.seed is None else args.seed,
                progress=progress,
            )
            _emit(table, args)
            return EXIT_OK if passed else EXIT_VALIDATION

        config = load_config(args.config, overrides=args.set or (), seed=args.seed)
        command = _COMMANDS[args.command][0]
        _emit(command(config, progress=progress), args)
    except ConfigError as err:
        print(f"Configuration error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, OverflowError) as err:
        print(f"Numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as err:
        print(f"Error writing output: {err}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
