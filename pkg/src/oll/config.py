"""Job configuration: parsing, strict validation, canonical resolution.

Configurations are TOML or JSON (auto-detected by file extension).  Every
mapping is checked for unknown keys so typos fail loudly with the path to
the offending entry, and every module-level validator runs before a job
is accepted, in particular a stored distortion bound below the computed
one is rejected with the witness atom in the message.

The resolved form of a config (defaults materialized, test sets listed
explicitly) is what gets digested, so two configs that run the same job
share a digest.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from typing import Any, Mapping

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

from .dynamics import NOTIONS, TestFamily, default_test_family
from .errors import ConfigError, DomainError, OllError, ValidationError
from .measure import AtomicSpace, CompositionSystem, Transformation, validate_system
from .orlicz import OrliczFunction
from .rearrangement import SimpleFunction
from .weights import WeightFunction

DEFAULT_WINDOW = (-64, 64)
DEFAULT_HORIZON = 20
DEFAULT_EPSILON = 1e-4
DEFAULT_RATIO_R = 1e4


def _check_keys(d: Mapping[str, Any], allowed: set[str], path: str) -> None:
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)}", key_path=path)


def _require(d: Mapping[str, Any], key: str, path: str) -> Any:
    if key not in d:
        raise ConfigError(f"missing required key {key!r}", key_path=path)
    return d[key]


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", key_path=path)
    return float(value)


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}", key_path=path)
    return value


def _build_space(d: Mapping[str, Any], window: tuple[int, int]) -> AtomicSpace:
    _check_keys(d, {"window", "mass"}, "space")
    if "window" in d:
        raw = d["window"]
        if not (isinstance(raw, (list, tuple)) and len(raw) == 2):
            raise ConfigError("window must be a pair [lo, hi]", key_path="space.window")
        window = (_integer(raw[0], "space.window"), _integer(raw[1], "space.window"))
    mass = _require(d, "mass", "space")
    _check_keys(mass, {"family", "r", "table"}, "space.mass")
    family = _require(mass, "family", "space.mass")
    try:
        if family == "geometric":
            return AtomicSpace.geometric(_number(_require(mass, "r", "space.mass"), "space.mass.r"), window)
        if family == "bilateral_geometric":
            return AtomicSpace.bilateral_geometric(
                _number(_require(mass, "r", "space.mass"), "space.mass.r"), window
            )
        if family == "counting":
            return AtomicSpace.counting(window)
        if family == "table":
            table = _require(mass, "table", "space.mass")
            masses = {int(k): _number(v, f"space.mass.table.{k}") for k, v in table.items()}
            return AtomicSpace.from_table(masses, window)
    except ValidationError as e:
        raise ConfigError(str(e), key_path="space.mass") from e
    raise ConfigError(f"unknown mass family {family!r}", key_path="space.mass.family")


def _build_tau(d: Mapping[str, Any]) -> Transformation:
    _check_keys(d, {"family", "d", "perm"}, "tau")
    family = _require(d, "family", "tau")
    try:
        if family == "shift":
            return Transformation.shift(_integer(_require(d, "d", "tau"), "tau.d"))
        if family == "table":
            perm = _require(d, "perm", "tau")
            return Transformation.table_bijection(
                {int(k): _integer(v, f"tau.perm.{k}") for k, v in perm.items()}
            )
    except ValidationError as e:
        raise ConfigError(str(e), key_path="tau") from e
    raise ConfigError(f"unknown transformation family {family!r}", key_path="tau.family")


def _build_phi(d: Mapping[str, Any]) -> OrliczFunction:
    _check_keys(d, {"family", "p", "a", "c", "b"}, "phi")
    family = _require(d, "family", "phi")
    params = {k: _number(v, f"phi.{k}") for k, v in d.items() if k != "family"}
    try:
        return OrliczFunction(family, **params)
    except ValidationError as e:
        raise ConfigError(str(e), key_path="phi") from e


def _build_weight(d: Mapping[str, Any]) -> WeightFunction:
    _check_keys(d, {"family", "c", "alpha"}, "weight")
    family = _require(d, "family", "weight")
    params = {k: _number(v, f"weight.{k}") for k, v in d.items() if k != "family"}
    try:
        return WeightFunction(family, **params)
    except ValidationError as e:
        raise ConfigError(str(e), key_path="weight") from e


@dataclass(frozen=True)
class JobConfig:
    """A fully validated job: system, test family, notions, i/o options."""

    system: CompositionSystem
    fam: TestFamily
    notions: tuple[str, ...]
    seed: int
    g: SimpleFunction | None
    delta2: tuple[float, float, int]
    out_format: str
    out_path: str | None
    family_params: dict

    def resolved(self) -> dict:
        """Canonical plain-data description of everything this job runs."""
        space = self.system.space
        mass: dict[str, Any] = {"family": space.mass_family}
        if space.mass_family in ("geometric", "bilateral_geometric"):
            mass["r"] = space.r
        if space.mass_family == "table":
            mass["table"] = {str(k): m for k, m in space.table}
        tau: dict[str, Any] = {"family": self.system.tau.family}
        if self.system.tau.family == "shift":
            tau["d"] = self.system.tau.d
        else:
            tau["perm"] = {str(k): v for k, v in self.system.tau.forward}
        phi = {"family": self.system.phi.family}
        for field in ("p", "a", "c", "b"):
            v = getattr(self.system.phi, field)
            if v != 0.0:
                phi[field] = v
        weight: dict[str, Any] = {"family": self.system.weight.family, "c": self.system.weight.c}
        if self.system.weight.family == "power_decay":
            weight["alpha"] = self.system.weight.alpha
        return {
            "space": {"window": list(space.window), "mass": mass},
            "tau": tau,
            "phi": phi,
            "weight": weight,
            "distortion_M": self.system.distortion_M,
            "test_family": {
                "sets": [list(A.indices) for A in self.fam.sets],
                "horizon": self.fam.horizon_N,
                "epsilon": self.fam.epsilon,
                "ratio_R": self.fam.ratio_R,
            },
            "notions": list(self.notions),
            "seed": self.seed,
            "g": [[k, v] for k, v in self.g.points] if self.g is not None else None,
            "delta2": {
                "s0": self.delta2[0],
                "s_max": self.delta2[1],
                "n_samples": self.delta2[2],
            },
        }

    def with_overrides(
        self,
        notions: tuple[str, ...] | None = None,
        horizon: int | None = None,
        epsilon: float | None = None,
        ratio_R: float | None = None,
        window: tuple[int, int] | None = None,
        seed: int | None = None,
        out_format: str | None = None,
        out_path: str | None = None,
    ) -> "JobConfig":
        """Apply command-line overrides, rebuilding the derived pieces."""
        cfg = self
        if window is not None:
            space = replace(cfg.system.space, window=(int(window[0]), int(window[1])))
            system = CompositionSystem(
                space, cfg.system.tau, cfg.system.phi, cfg.system.weight, cfg.system.distortion_M
            )
            cfg = replace(cfg, system=system)
        fam_kwargs = dict(cfg.family_params)
        if horizon is not None:
            fam_kwargs["horizon_N"] = int(horizon)
        if epsilon is not None:
            fam_kwargs["epsilon"] = float(epsilon)
        if ratio_R is not None:
            fam_kwargs["ratio_R"] = float(ratio_R)
        if seed is not None:
            fam_kwargs["seed"] = int(seed)
            cfg = replace(cfg, seed=int(seed))
        if horizon is not None or epsilon is not None or ratio_R is not None or seed is not None:
            cfg = replace(cfg, fam=_materialize_family(fam_kwargs), family_params=fam_kwargs)
        if notions:
            for n in notions:
                if n not in NOTIONS:
                    raise ConfigError(f"unknown notion {n!r}; allowed: {NOTIONS}", key_path="notions")
            cfg = replace(cfg, notions=tuple(notions))
        if out_format is not None:
            if out_format not in ("json", "csv"):
                raise ConfigError(f"unknown format {out_format!r}", key_path="output.format")
            cfg = replace(cfg, out_format=out_format)
        if out_path is not None:
            cfg = replace(cfg, out_path=out_path)
        return cfg


def _materialize_family(params: Mapping[str, Any]) -> TestFamily:
    if "sets" in params:
        from .measure import AtomSet

        explicit = [AtomSet.of(s) for s in params["sets"]]
        return TestFamily(
            sets=tuple(explicit),
            horizon_N=params.get("horizon_N", DEFAULT_HORIZON),
            epsilon=params.get("epsilon", DEFAULT_EPSILON),
            ratio_R=params.get("ratio_R", DEFAULT_RATIO_R),
        )
    return default_test_family(
        set_lo=params.get("set_lo", -8),
        set_hi=params.get("set_hi", 8),
        block_lengths=tuple(params.get("block_lengths", (2, 4, 8))),
        horizon_N=params.get("horizon_N", DEFAULT_HORIZON),
        epsilon=params.get("epsilon", DEFAULT_EPSILON),
        ratio_R=params.get("ratio_R", DEFAULT_RATIO_R),
        random_unions=params.get("random_unions", 0),
        union_size=params.get("union_size", 4),
        seed=params.get("seed", 0),
    )


_TOP_KEYS = {
    "space",
    "tau",
    "phi",
    "weight",
    "distortion_M",
    "test_family",
    "notions",
    "horizon",
    "epsilon",
    "ratio_R",
    "seed",
    "g",
    "delta2",
    "output",
}

_FAMILY_KEYS = {
    "set_lo",
    "set_hi",
    "block_lengths",
    "random_unions",
    "union_size",
    "sets",
}


def parse_config(source: str | os.PathLike, fmt: str | None = None) -> JobConfig:
    """Parse and validate a job configuration from a file path or raw text.

    Files are auto-detected by extension (.toml / .json); raw text is
    tried as JSON first, then TOML.  Raises ConfigError with the path to
    the offending key on any schema or semantic violation.
    """
    text, fmt = _read_source(source, fmt)
    try:
        if fmt == "json":
            raw = json.loads(text)
        else:
            raw = tomllib.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
        raise ConfigError(f"could not parse {fmt} config: {e}") from e
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a mapping")
    return build_config(raw)


def _read_source(source: str | os.PathLike, fmt: str | None) -> tuple[str, str]:
    path = os.fspath(source) if isinstance(source, os.PathLike) else source
    if isinstance(path, str) and os.path.exists(path) and "\n" not in path:
        ext = os.path.splitext(path)[1].lower()
        if ext == ".json":
            fmt = "json"
        elif ext in (".toml", ".tml"):
            fmt = "toml"
        elif fmt is None:
            raise ConfigError(f"cannot detect config format from extension {ext!r}")
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read(), fmt
    text = str(source)
    if fmt is None:
        try:
            json.loads(text)
            fmt = "json"
        except json.JSONDecodeError:
            fmt = "toml"
    return text, fmt


def build_config(raw: Mapping[str, Any]) -> JobConfig:
    """Build a JobConfig from an already-parsed mapping."""
    _check_keys(raw, _TOP_KEYS, "<root>")

    window = DEFAULT_WINDOW
    space = _build_space(_require(raw, "space", "<root>"), window)
    tau = _build_tau(_require(raw, "tau", "<root>"))
    phi = _build_phi(_require(raw, "phi", "<root>"))
    weight = _build_weight(_require(raw, "weight", "<root>"))
    distortion_M = _number(_require(raw, "distortion_M", "<root>"), "distortion_M")

    try:
        system = CompositionSystem(space, tau, phi, weight, distortion_M)
    except (ValidationError, DomainError) as e:
        raise ConfigError(str(e)) from e

    report = validate_system(system)
    if not report.valid:
        raise ConfigError(
            "system validation failed: " + "; ".join(msg for msg, _ in report.failures)
        )

    family_params_raw: dict[str, Any] = {}
    if "test_family" in raw:
        tf = raw["test_family"]
        if not isinstance(tf, Mapping):
            raise ConfigError("test_family must be a mapping", key_path="test_family")
        _check_keys(tf, _FAMILY_KEYS, "test_family")
        family_params_raw.update(tf)
    if "horizon" in raw:
        family_params_raw["horizon_N"] = _integer(raw["horizon"], "horizon")
    if "epsilon" in raw:
        family_params_raw["epsilon"] = _number(raw["epsilon"], "epsilon")
    if "ratio_R" in raw:
        family_params_raw["ratio_R"] = _number(raw["ratio_R"], "ratio_R")
    seed = _integer(raw.get("seed", 0), "seed")
    family_params_raw.setdefault("seed", seed)
    try:
        fam = _materialize_family(family_params_raw)
    except (ValidationError, DomainError, OllError) as e:
        raise ConfigError(str(e), key_path="test_family") from e

    notions = tuple(raw.get("notions", report.admissible_notions))
    for n in notions:
        if n not in NOTIONS:
            raise ConfigError(f"unknown notion {n!r}; allowed: {NOTIONS}", key_path="notions")

    g = None
    if "g" in raw:
        pairs = raw["g"]
        if not isinstance(pairs, (list, tuple)):
            raise ConfigError("g must be an array of [index, value] pairs", key_path="g")
        try:
            g = SimpleFunction.of(
                (_integer(p[0], "g"), _number(p[1], "g")) for p in pairs
            )
        except (ValidationError, IndexError, TypeError) as e:
            raise ConfigError(f"invalid simple function: {e}", key_path="g") from e
        for k, _ in g.points:
            if not space.in_window(k):
                raise ConfigError(f"support index {k} outside window {space.window}", key_path="g")

    delta2 = (1.0, 4096.0, 49)
    if "delta2" in raw:
        d2 = raw["delta2"]
        _check_keys(d2, {"s0", "s_max", "n_samples"}, "delta2")
        delta2 = (
            _number(d2.get("s0", 1.0), "delta2.s0"),
            _number(d2.get("s_max", 4096.0), "delta2.s_max"),
            _integer(d2.get("n_samples", 49), "delta2.n_samples"),
        )

    out_format = "json"
    out_path = None
    if "output" in raw:
        out = raw["output"]
        _check_keys(out, {"format", "path"}, "output")
        out_format = out.get("format", "json")
        if out_format not in ("json", "csv"):
            raise ConfigError(f"unknown format {out_format!r}", key_path="output.format")
        out_path = out.get("path")

    return JobConfig(
        system=system,
        fam=fam,
        notions=notions,
        seed=seed,
        g=g,
        delta2=delta2,
        out_format=out_format,
        out_path=out_path,
        family_params=family_params_raw,
    )
