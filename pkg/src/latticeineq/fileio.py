"""File formats: sparse functions, sets, reports, traces and summaries.

Function files:  {"dim": n, "entries": [{"z": [int, ...], "v": "p/q"}, ...]}
Set files:       {"dim": n, "points": [[int, ...], ...]}

Values are exact: rational strings ("3/4"), decimal strings ("0.25", parsed
as scaled integers) or JSON integers.  JSON floats are rejected — a binary
float cannot round-trip the exact track.  Serialization is canonical
(entries sorted by point), so equal objects produce identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Union

from .certify import ExactCertificate, InequalityReport
from .core import LatticeSet, SparseFunction, as_fraction
from .errors import InvalidInputError
from .fuzzing import FuzzSummary
from .search import SearchTrace

REPORT_CSV_HEADER = "inequality,n,p,lhs,rhs,deficit,relation,extremal_class"


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def _parse_value(raw) -> Fraction:
    if isinstance(raw, float):
        raise InvalidInputError(
            f"float value {raw!r} in input file; write it as a string (\"p/q\" or decimal)"
        )
    return as_fraction(raw)


def _parse_point(raw, dim: int) -> tuple:
    if not isinstance(raw, list) or len(raw) != dim:
        raise InvalidInputError(f"point {raw!r} does not have dimension {dim}")
    for c in raw:
        if not isinstance(c, int) or isinstance(c, bool):
            raise InvalidInputError(f"point {raw!r} has a non-integer coordinate")
    return tuple(raw)


def _parse_dim(obj) -> int:
    dim = obj.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InvalidInputError(f"field 'dim' must be a positive integer, got {dim!r}")
    return dim


def function_to_dict(f: SparseFunction) -> dict:
    return {
        "dim": f.dim,
        "entries": [{"z": list(z), "v": str(v)} for z, v in f.items()],
    }


def function_from_dict(obj: dict) -> SparseFunction:
    dim = _parse_dim(obj)
    raw_entries = obj.get("entries")
    if not isinstance(raw_entries, list):
        raise InvalidInputError("field 'entries' must be a list")
    entries = []
    for item in raw_entries:
        if not isinstance(item, dict) or "z" not in item or "v" not in item:
            raise InvalidInputError(f"entry {item!r} must have fields 'z' and 'v'")
        entries.append((_parse_point(item["z"], dim), _parse_value(item["v"])))
    return SparseFunction(dim, entries)


def set_to_dict(A: LatticeSet) -> dict:
    return {"dim": A.dim, "points": [list(z) for z in A.sorted_points()]}


def set_from_dict(obj: dict) -> LatticeSet:
    dim = _parse_dim(obj)
    raw_points = obj.get("points")
    if not isinstance(raw_points, list):
        raise InvalidInputError("field 'points' must be a list")
    return LatticeSet(dim, (_parse_point(z, dim) for z in raw_points))


def load_input(path: str) -> Union[SparseFunction, LatticeSet]:
    """Read a function or set file, detected by its fields."""
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise InvalidInputError(f"{path}: top level must be an object")
    if "entries" in obj:
        return function_from_dict(obj)
    if "points" in obj:
        return set_from_dict(obj)
    raise InvalidInputError(f"{path}: expected field 'entries' (function) or 'points' (set)")


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def certificate_to_dict(cert: ExactCertificate) -> dict:
    return {
        "reduction": cert.reduction.value,
        "lhs_integer": str(cert.lhs_integer),
        "rhs_integer": str(cert.rhs_integer),
        "equal": cert.equal,
    }


def report_to_dict(report: InequalityReport) -> dict:
    out = {
        "inequality": report.inequality.value,
        "n": report.n,
        "p": None if report.p is None else str(report.p),
        "lhs": report.lhs,
        "rhs": report.rhs,
        "deficit": report.deficit,
        "relation": report.relation.value,
        "extremal_class": None if report.extremal_class is None else report.extremal_class.value,
    }
    if report.exact_certificate is not None:
        out["exact_certificate"] = certificate_to_dict(report.exact_certificate)
    if report.input_echo is not None:
        out["input_echo"] = report.input_echo
    return out


def report_csv_row(report: InequalityReport) -> str:
    return ",".join(
        [
            report.inequality.value,
            str(report.n),
            "" if report.p is None else str(report.p),
            format_float(report.lhs),
            format_float(report.rhs),
            format_float(report.deficit),
            report.relation.value,
            "" if report.extremal_class is None else report.extremal_class.value,
        ]
    )


# ---------------------------------------------------------------------------
# traces and summaries
# ---------------------------------------------------------------------------


def trace_to_dict(trace: SearchTrace) -> dict:
    best = trace.best_input
    if isinstance(best, SparseFunction):
        best_obj = function_to_dict(best)
    else:
        best_obj = set_to_dict(best)
    return {
        "seed": trace.seed,
        "objective": trace.objective.value,
        "iterations": trace.iterations,
        "best_value": trace.best_value,
        "best_input": best_obj,
        "history": [[k, v] for k, v in trace.history],
    }


def summary_to_dict(summary: FuzzSummary) -> dict:
    return {
        "seed": summary.seed,
        "n": summary.n,
        "count": summary.count,
        "window": summary.window,
        "q": summary.q,
        "denominator": summary.denominator,
        "tol": summary.tol,
        "violations": summary.violations,
        "line_bound": {
            "checks": summary.line_bound_checks,
            "failures": summary.line_bound_failures,
        },
        "chain": {
            "checks": summary.chain_checks,
            "failures": summary.chain_failures,
        },
        "per_inequality": {
            name: {
                "count": stats.count,
                "violations": stats.violations,
                "min_deficit": stats.min_deficit,
                "max_deficit": stats.max_deficit,
                "worst_index": stats.worst_index,
                "worst_input": stats.worst_input,
            }
            for name, stats in sorted(summary.per_inequality.items())
        },
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2)
