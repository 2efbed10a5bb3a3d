"""Job execution and deterministic report emission.

Reports are emitted as canonical JSON (sorted keys, floats rounded to
12 significant digits, infinities spelled "inf"), so re-running an
identical configuration yields byte-identical output except for the
``timing_s`` field.  The CSV mode dumps the per-set traces with the
fixed header ``set,n,c_n,ratio,norm``, where ``ratio`` is the criterion
quantity c_0/c_n and ``norm`` the independently bisected orbit norm of
the normalized test vector; the two columns agreeing is the point.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import time
from dataclasses import dataclass
from typing import Any

from ._version import VERSION
from .config import JobConfig
from .dynamics import (
    FAILS,
    HOLDS,
    Verdict,
    _char_norm_bisect,
    classify,
    criterion_sequence,
    oracle_classify,
)
from .errors import AdmissibilityError
from .extreal import ext_div
from .measure import OutOfWindow, preimage_set, validate_system

_TRACE_ROW_CAP = 5000


def _canon(obj: Any) -> Any:
    """Recursively normalize a report structure for canonical emission."""
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf"
        if obj == int(obj) and abs(obj) < 1e15:
            return obj
        return float(f"{obj:.12g}")
    raise TypeError(f"cannot canonicalize {type(obj).__name__}")


def canonical_json_bytes(obj: Any) -> bytes:
    return (
        json.dumps(_canon(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"
    ).encode("ascii")


def config_digest(cfg: JobConfig) -> str:
    return hashlib.sha256(canonical_json_bytes(cfg.resolved())).hexdigest()


def verdict_to_dict(v: Verdict) -> dict:
    out: dict[str, Any] = {"status": v.status, "notes": list(v.notes)}
    out["witness"] = (
        None
        if v.witness is None
        else {"set": list(v.witness.set.indices), "n": v.witness.n, "value": v.witness.value}
    )
    out["bipartition"] = (
        None
        if v.bipartition is None
        else {
            "forward_class": [list(A.indices) for A in v.bipartition[0]],
            "backward_class": [list(A.indices) for A in v.bipartition[1]],
        }
    )
    return out


@dataclass(frozen=True)
class RunReport:
    config_digest: str
    tool_version: str
    parameters: dict
    notions: dict
    traces: dict
    agreement_all: bool
    timing_s: float

    @property
    def all_decided(self) -> bool:
        for entry in self.notions.values():
            for side in ("criterion", "oracle"):
                status = entry[side].get("status")
                if status not in (HOLDS, FAILS):
                    return False
        return True

    def to_dict(self) -> dict:
        return {
            "config_digest": self.config_digest,
            "tool_version": self.tool_version,
            "parameters": self.parameters,
            "notions": self.notions,
            "traces": self.traces,
            "agreement": self.agreement_all,
            "timing_s": self.timing_s,
        }


def _set_label(indices: tuple[int, ...]) -> str:
    return ";".join(str(k) for k in indices)


def trace_rows(cfg: JobConfig) -> list[list]:
    """Rows (set, n, c_n, ratio, norm) for every test set of the job.

    ``ratio`` is c_0/c_n from the closed-form criterion route and
    ``norm`` is ||C^n g_A|| from the bisection route; n runs two-sided
    when the system admits it.
    """
    system = cfg.system
    fam = cfg.fam
    two_sided = validate_system(system).two_sided_admissible
    lo = -fam.horizon_N if two_sided else 0
    rows: list[list] = []
    for A in fam.sets:
        trace = criterion_sequence(system, A, (lo, fam.horizon_N))
        c0 = trace.value_at(0)
        base = _char_norm_bisect(system, A.indices)
        for n, c in trace.entries:
            pre = preimage_set(system, A, n)
            norm = (
                _char_norm_bisect(system, pre.indices) / base
                if not isinstance(pre, OutOfWindow)
                else None
            )
            rows.append([_set_label(A.indices), n, c, ext_div(c0, c), norm])
            if len(rows) >= _TRACE_ROW_CAP:
                return rows
    return rows


def run_job(cfg: JobConfig) -> RunReport:
    """Execute the requested notions, criterion and oracle side by side.

    Admissibility errors surface per notion without aborting the others.
    Deterministic given the configuration (and its seed).
    """
    t0 = time.perf_counter()
    notions_out: dict[str, Any] = {}
    agreement_all = True
    for notion in cfg.notions:
        entry: dict[str, Any] = {}
        statuses = []
        for side, runner in (("criterion", classify), ("oracle", oracle_classify)):
            try:
                verdict = runner(cfg.system, cfg.fam, notion)
                entry[side] = verdict_to_dict(verdict)
                statuses.append(verdict.status)
            except AdmissibilityError as e:
                entry[side] = {"status": "Error", "error": str(e)}
                statuses.append(None)
        entry["agreement"] = statuses[0] is not None and statuses[0] == statuses[1]
        agreement_all = agreement_all and entry["agreement"]
        notions_out[notion] = entry

    rows = trace_rows(cfg)
    report = RunReport(
        config_digest=config_digest(cfg),
        tool_version=VERSION,
        parameters={
            "horizon": cfg.fam.horizon_N,
            "epsilon": cfg.fam.epsilon,
            "ratio_R": cfg.fam.ratio_R,
            "n_sets": len(cfg.fam.sets),
            "notions": list(cfg.notions),
            "seed": cfg.seed,
            "window": list(cfg.system.space.window),
        },
        notions=notions_out,
        traces={"columns": ["set", "n", "c_n", "ratio", "norm"], "rows": rows},
        agreement_all=agreement_all,
        timing_s=time.perf_counter() - t0,
    )
    return report


def emit_report(report: RunReport, fmt: str = "json") -> bytes:
    """Serialize a run report as canonical JSON or a CSV trace dump."""
    if fmt == "json":
        return canonical_json_bytes(report.to_dict())
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["set", "n", "c_n", "ratio", "norm"])
        for label, n, c, ratio, norm in report.traces["rows"]:
            writer.writerow(
                [
                    label,
                    n,
                    _csv_num(c),
                    _csv_num(ratio),
                    _csv_num(norm) if norm is not None else "",
                ]
            )
        return buf.getvalue().encode("ascii")
    raise ValueError(f"unknown report format {fmt!r}")


def _csv_num(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return f"{x:.12g}"
