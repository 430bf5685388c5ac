"""Scenario configuration: flat ``section.key = value`` files with overrides."""

from ._schema_ import json as _schema
from .errors import ConfigError
from .fading import GGHop, make_hop
from .simulate import SimConfig
from .utils import db_to_linear as _db_to_linear

import dataclasses as _dc
import math as _math
import pathlib as _pathlib
import typing as _typ


_ARGUMENTS = {record["name"]: record for record in _schema["scenario"]["arguments"]}


def _parse_scalar(kind: str, text: str, record: dict) -> _typ.Any:
    text = text.strip()
    if kind == "number":
        try:
            value = float(text)
        except ValueError:
            raise ValueError(f"expected a number, got {text!r}.") from None
        if not _math.isfinite(value):
            raise ValueError(f"expected a finite number, got {text!r}.")
        return value
    if kind == "integer":
        try:
            return int(text)
        except ValueError:
            pass
        try:
            value = float(text)
        except ValueError:
            raise ValueError(f"expected an integer, got {text!r}.") from None
        if not _math.isfinite(value) or value != int(value):
            raise ValueError(f"expected an integer, got {text!r}.")
        return int(value)
    if kind == "select":
        options = record["options"]
        if text not in options:
            raise ValueError(f"expected one of {', '.join(options)}, got {text!r}.")
        return text
    raise ValueError(f"unsupported argument type {kind!r}.")


def _validate(value: _typ.Any, record: dict) -> None:
    arguments = record.get("validatesArgs", {})
    for rule in record.get("validates", []):
        limit = arguments[rule][0]
        if rule == "min" and value < limit:
            raise ValueError(f"value {value!r} is below the minimum {limit}.")
        if rule == "max" and value > limit:
            raise ValueError(f"value {value!r} is above the maximum {limit}.")
        if rule == "exclusiveMin" and not value > limit:
            raise ValueError(f"value {value!r} must be larger than {limit}.")


def parse_value(key: str, text: str) -> _typ.Any:
    """Convert and validate the text of a configuration value.

    Args:
        key: Dotted configuration key.
        text: Raw value text.

    Returns:
        Typed value.
    """
    record = _ARGUMENTS.get(key)
    if record is None:
        raise ConfigError("unknown configuration key.", key=key)
    try:
        if record["type"] == "list":
            items = [item for item in text.split(",") if item.strip()]
            value = [_parse_scalar(record["items"], item, record) for item in items]
            for item in value:
                _validate(item, record)
        else:
            value = _parse_scalar(record["type"], text, record)
            _validate(value, record)
    except ValueError as err:
        raise ConfigError(str(err), key=key) from None
    return value


@_dc.dataclass(frozen=True)
class ScenarioConfig:
    """Validated scenario configuration.

    Values are stored under their dotted keys; average SNRs remain in dB
    and are converted by :meth:`hop`.
    """

    values: _typ.Mapping[str, _typ.Any]

    def __getitem__(self, key: str) -> _typ.Any:
        return self.values[key]

    def hop(
        self,
        index: int,
        *,
        mean_snr_db: _typ.Optional[float] = None,
        m: _typ.Optional[float] = None,
        beta: _typ.Optional[float] = None,
    ) -> GGHop:
        """Hop ``index`` (1 or 2), with optional parameter replacements."""
        prefix = f"hop{index}."
        if mean_snr_db is None:
            mean_snr_db = self.values[prefix + "mean_snr_db"]
        return make_hop(
            self.values[prefix + "m"] if m is None else m,
            self.values[prefix + "beta"] if beta is None else beta,
            _db_to_linear(mean_snr_db),
        )

    @property
    def fixed_C(self) -> _typ.Optional[float]:
        """Relay constant in fixed-C mode, ``None`` in semi-blind mode."""
        return self.values["relay.C"] if self.values["relay.mode"] == "fixed-C" else None

    @property
    def sim(self) -> SimConfig:
        return SimConfig(
            trials=self.values["sim.trials"],
            seed=self.values["sim.seed"],
            shards=self.values["sim.shards"],
            workers=self.values["sim.workers"],
        )


def _split_line(text: str) -> _typ.Optional[_typ.Tuple[str, str]]:
    text = text.split("#", 1)[0].strip()
    if not text:
        return None
    if "=" not in text:
        raise ValueError("expected 'key = value'.")
    key, value = text.split("=", 1)
    return key.strip(), value.strip()


def load_config(
    path: _typ.Union[str, _pathlib.Path, None] = None,
    *,
    overrides: _typ.Sequence[str] = (),
    seed: _typ.Optional[int] = None,
) -> ScenarioConfig:
    """Read a scenario configuration.

    Args:
        path: Configuration file. If ``None``, only defaults and overrides
          are used.
        overrides: ``key=value`` strings applied after the file.
        seed: Monte Carlo seed replacing ``sim.seed``.

    Returns:
        Validated configuration.
    """
    # keys without defaults are optional and stay None until set
    values = {name: record.get("defaults") for name, record in _ARGUMENTS.items()}

    if path is not None:
        path = _pathlib.Path(path)
        try:
            lines = path.read_text(encoding="utf-8").splitlines()
        except OSError as err:
            raise ConfigError(f"cannot read configuration: {err.strerror}.", path=path) from None
        seen = set()
        for number, text in enumerate(lines, 1):
            try:
                entry = _split_line(text)
            except ValueError as err:
                raise ConfigError(str(err), path=path, line=number) from None
            if entry is None:
                continue
            key, raw = entry
            if key in seen:
                raise ConfigError("duplicate key.", path=path, line=number, key=key)
            seen.add(key)
            try:
                values[key] = parse_value(key, raw)
            except ConfigError as err:
                raise ConfigError(err.message, path=path, line=number, key=key) from None

    for text in overrides:
        if "=" not in text:
            raise ConfigError(f"expected 'key=value', got {text!r}.", path="--set")
        key, raw = (part.strip() for part in text.split("=", 1))
        try:
            values[key] = parse_value(key, raw)
        except ConfigError as err:
            raise ConfigError(err.message, path="--set", key=key) from None

    if seed is not None:
        try:
            values["sim.seed"] = parse_value("sim.seed", str(seed))
        except ConfigError as err:
            raise ConfigError(err.message, path="--seed", key="sim.seed") from None

    if values["relay.mode"] == "fixed-C" and values["relay.C"] is None:
        raise ConfigError("fixed-C mode requires 'relay.C'.", key="relay.mode")
    points = values["sweep.points"]
    if len(points) == 0:
        raise ConfigError("sweep needs at least one point.", key="sweep.points")
    if any(b <= a for a, b in zip(points[:-1], points[1:])):
        raise ConfigError("sweep points must be strictly increasing.", key="sweep.points")
    if values["sweep.axis"] == "m" and any(p <= 0.5 for p in points):
        raise ConfigError("fading shapes must be larger than 1/2.", key="sweep.points")
    if values["sweep.axis"] == "beta" and any(p <= 0 for p in points):
        raise ConfigError("fading exponents must be positive.", key="sweep.points")
    if len(values["series.m1"]) == 0:
        raise ConfigError("at least one fading shape is required.", key="series.m1")
    if len(values["abep.schemes"]) == 0:
        raise ConfigError("at least one scheme is required.", key="abep.schemes")

    for key in ("sweep.points", "balance.ratios", "series.m1", "abep.schemes"):
        values[key] = tuple(values[key])
    return ScenarioConfig(values)
