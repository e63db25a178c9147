"""Dispatch task specs to the library and render the results."""
from __future__ import annotations

import json
import os
import time
from fractions import Fraction
from pathlib import Path

from .cache import CACHE_ENV, GBCache, use_cache
from .charp import QuotientRing, bi_surjection_bound, koszul_complex, resolve_ideal
from .deadline import time_limit
from .errors import PreconditionError
from .invariants import (
    DEFAULT_N_MAX, DEFAULT_TOL, Check, bracket_colength, LengthSequence, LimitEstimate, cm_depth,
    corollary_check, ehk_sequence, extrapolate, inequality_suite, kunz_test,
    lemma_check, monomial_ehk_exact, regularity_report, ti_sequence,
)
from .taskfile import TaskSpec, format_taskfile

ResultDocument = dict


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "hkcalc"


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------

def rational(x) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator, "display": float(x)}


def _value(x):
    if isinstance(x, Fraction):
        return rational(x)
    return x


def sequence_doc(s: LengthSequence) -> dict:
    return {
        "kind": s.kind,
        "ideal": s.ideal,
        "d": s.d,
        "n": list(s.n_values),
        "q": [s.p ** n for n in s.n_values],
        "lengths": list(s.values),
        "normalized": [rational(a) for a in s.normalized],
    }


def estimate_doc(e: LimitEstimate) -> dict:
    return {
        "raw_last": rational(e.raw_last),
        "richardson": rational(e.richardson),
        "error_indicator": rational(e.error_indicator),
        "n_used": e.n_used,
    }


def check_doc(c: Check) -> dict:
    out = {"holds": bool(c.holds)}
    if c.lhs is not None:
        out["lhs"] = _value(c.lhs)
    if c.rhs is not None:
        out["rhs"] = _value(c.rhs)
    if c.tolerance is not None:
        out["tolerance"] = rational(c.tolerance)
    if c.note:
        out["note"] = c.note
    return out


# ---------------------------------------------------------------------------
# tasks
# ---------------------------------------------------------------------------

def _build(spec: TaskSpec):
    R = QuotientRing(spec.p, spec.variables, spec.relations)
    ideal = R.ideal(spec.ideal)
    return R, ideal


def _task_ehk(spec, R, ideal, doc):
    s = ehk_sequence(R, ideal, spec.n_max or DEFAULT_N_MAX)
    doc["sequences"]["ehk"] = sequence_doc(s)
    doc["estimates"]["e_hk"] = estimate_doc(extrapolate(s))


def _task_tor(spec, R, ideal, doc):
    i = spec.i if spec.i is not None else 1
    top = spec.n if spec.n is not None else (spec.n_max or DEFAULT_N_MAX)
    if i < 1:
        raise PreconditionError("tor task needs i >= 1")
    s = ti_sequence(R, ideal, i, max(top, 1))
    doc["sequences"][f"tor_{i}"] = sequence_doc(s)
    doc["estimates"][f"t_{i}"] = estimate_doc(extrapolate(s))
    doc["result"]["tor_length"] = {"i": i, "n": top, "length": s.values[-1]}


def _task_kunz(spec, R, ideal, doc):
    ok = kunz_test(R)
    doc["result"]["kunz_regular"] = ok
    m = R.maximal_ideal()
    doc["checks"]["kunz"] = {"holds": ok, "lhs": bracket_colength(R, m, R.p), "rhs": R.p ** R.dim}


def _task_check(spec, R, ideal, doc):
    n_max = spec.n_max or DEFAULT_N_MAX
    tol = spec.tol if spec.tol is not None else DEFAULT_TOL
    rep = regularity_report(R, n_max, tol)
    for k, s in rep.sequences.items():
        doc["sequences"][k] = sequence_doc(s)
    doc["estimates"].update(e_hk=estimate_doc(rep.e_hk), t_1=estimate_doc(rep.t1),
                            t_2=estimate_doc(rep.t2))
    for name, c in rep.criteria.items():
        doc["checks"][name] = check_doc(c)
    suite = inequality_suite(R, ideal, n_max=min(n_max, 2), q_list=spec.q_list or (R.p,), tol=tol,
                             estimate_n_max=n_max)
    for row in suite.rows:
        doc["checks"][f"finite tor_1 bound n={row.n} q={row.q}"] = {
            "holds": row.tor1_bound, "gap": row.tor1_gap}
        doc["checks"][f"finite tor_2 bound n={row.n} q={row.q}"] = {
            "holds": row.tor2_bound, "gap": row.tor2_gap}
    for c in suite.estimate_checks:
        doc["checks"][c.name] = check_doc(c)
    doc["ring"]["cm"] = suite.cohen_macaulay
    doc["result"]["verdict"] = rep.verdict
    doc["result"]["kunz_regular"] = rep.kunz_exact


def _task_lemma(spec, R, ideal, doc):
    rep = lemma_check(R, ideal.generators, spec.n_max or DEFAULT_N_MAX)
    doc["sequences"]["tor_1"] = sequence_doc(rep.tor1)
    doc["sequences"]["koszul_h1"] = sequence_doc(rep.koszul_h1)
    for n, ok in zip(rep.tor1.n_values, rep.bound_holds):
        doc["checks"][f"koszul bound n={n}"] = {
            "holds": ok, "lhs": rep.koszul_h1.values[n - 1], "rhs": rep.tor1.values[n - 1]}
    doc["checks"]["tor_1 trends to zero"] = {"holds": rep.tor_trend_to_zero}
    doc["checks"]["koszul H_1 trends to zero"] = {"holds": rep.koszul_trend_to_zero}


def _task_corollary(spec, R, ideal, doc):
    tol = spec.tol if spec.tol is not None else DEFAULT_TOL
    rep = corollary_check(R, spec.n_max or DEFAULT_N_MAX, tol)
    doc["ring"]["cm"] = not rep.skipped
    doc["result"]["depth"] = rep.depth
    if rep.skipped:
        doc["result"]["notice"] = rep.notice
        return
    doc["result"]["multiplicity"] = rep.multiplicity
    doc["estimates"]["e_hk"] = estimate_doc(rep.e_hk)
    doc["estimates"]["t_1"] = estimate_doc(rep.t1)
    doc["checks"]["corollary bound"] = check_doc(rep.bound)
    if rep.implied_t1_lower is not None:
        doc["result"]["implied_t1_lower_bound"] = rational(rep.implied_t1_lower)


def _task_monomial(spec, R, ideal, doc):
    if R.relations:
        raise PreconditionError("monomial-ehk works in a polynomial ring (no relations)")
    exps = []
    for g in ideal.generators:
        if len(g) != 1:
            raise PreconditionError(f"{g} is not a monomial")
        exps.append(g.leading_monomial)
    value = monomial_ehk_exact(exps)
    s = ehk_sequence(R, ideal, spec.n_max or 2)
    doc["sequences"]["ehk"] = sequence_doc(s)
    doc["result"]["e_hk_exact"] = rational(value)
    doc["checks"]["counted limit equals volume"] = {
        "holds": all(a == value for a in s.normalized)}


def _task_bibound(spec, R, ideal, doc):
    kind = spec.complex or "koszul"
    if kind == "koszul":
        C = koszul_complex(R, ideal.generators)
    else:
        C = resolve_ideal(R, ideal, max(R.dim, 1))
    if C.length > R.dim:
        raise PreconditionError(f"complex has length {C.length} > dim R = {R.dim}")
    rows = []
    top = spec.n if spec.n is not None else (spec.n_max or 2)
    for n in range(1, top + 1):
        h1, tor1 = bi_surjection_bound(C, n)
        rows.append({"n": n, "h1_twisted": h1, "tor1_h0": tor1})
        doc["checks"][f"surjection bound n={n}"] = {"holds": h1 >= tor1, "lhs": h1, "rhs": tor1}
    doc["result"]["bi_bound"] = rows
    doc["result"]["complex_ranks"] = list(C.ranks)


_TASKS = {
    "ehk": _task_ehk,
    "tor": _task_tor,
    "kunz": _task_kunz,
    "check": _task_check,
    "lemma": _task_lemma,
    "corollary": _task_corollary,
    "monomial-ehk": _task_monomial,
    "bi-bound": _task_bibound,
}


def run_task(spec: TaskSpec, timeout: float | None = None, cache: GBCache | None = None) -> ResultDocument:
    """Run one task and return its result document.

    Raises the underlying math/timeout error; the CLI turns those into error
    documents and exit codes.
    """
    start = time.perf_counter()
    with use_cache(cache), time_limit(timeout):
        R, ideal = _build(spec)
        doc = {
            "task": {"kind": spec.kind, "params": {k: _value(v) if not isinstance(v, tuple) else list(v)
                                                   for k, v in spec.params.items()},
                     "ideal": list(spec.ideal)},
            "ring": {"p": R.p, "dim": R.dim, "vars": list(R.variables), "graded": R.graded,
                     "relations": [str(r) for r in R.relations], "cm": None},
            "sequences": {},
            "estimates": {},
            "checks": {},
            "result": {},
        }
        _TASKS[spec.kind](spec, R, ideal, doc)
        if doc["ring"]["cm"] is None and spec.kind in ("check", "corollary"):
            doc["ring"]["cm"] = cm_depth(R)[1]
    doc["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return doc


def error_document(spec: TaskSpec | None, kind: str, message: str) -> ResultDocument:
    doc = {"error": {"type": kind, "message": message}}
    if spec is not None:
        doc["task"] = {"kind": spec.kind, "source": format_taskfile(spec)}
    return doc


# ---------------------------------------------------------------------------
# emitters
# ---------------------------------------------------------------------------

def emit(doc: ResultDocument, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2)
    if fmt == "table":
        return _table(doc)
    raise ValueError(f"unknown format {fmt!r}")


def _fmt(v) -> str:
    if isinstance(v, dict) and "num" in v and "den" in v:
        frac = str(v["num"]) if v["den"] == 1 else f"{v['num']}/{v['den']}"
        return f"{frac} (~{v['display']:.6g})"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _aligned(header: list[str], rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[k]) for r in [header] + rows) for k in range(len(header))]
    line = lambda r: "  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip()
    return [line(header), line(["-" * w for w in widths])] + [line(r) for r in rows]


def _table(doc: ResultDocument) -> str:
    out = []
    if "error" in doc:
        return f"error ({doc['error']['type']}): {doc['error']['message']}\n"
    ring = doc.get("ring", {})
    if ring:
        rel = ", ".join(ring.get("relations") or []) or "0"
        out.append(f"ring: F_{ring['p']}[{', '.join(ring['vars'])}]/({rel})  dim={ring['dim']}"
                   f"  cm={_fmt(ring['cm']) if ring.get('cm') is not None else '?'}")
    for name, s in doc.get("sequences", {}).items():
        out.append("")
        out.append(f"sequence {name} ({s['kind']}, ideal {s['ideal']})")
        rows = [[str(n), str(q), str(l), _fmt(a)]
                for n, q, l, a in zip(s["n"], s["q"], s["lengths"], s["normalized"])]
        out.extend(_aligned(["n", "q", "length", "a_n"], rows))
    if doc.get("estimates"):
        out.append("")
        rows = [[k, _fmt(e["richardson"]), _fmt(e["raw_last"]), _fmt(e["error_indicator"])]
                for k, e in doc["estimates"].items()]
        out.extend(_aligned(["estimate", "extrapolated", "last a_n", "error"], rows))
    if doc.get("checks"):
        out.append("")
        rows = []
        for k, c in doc["checks"].items():
            extra = []
            for key in ("lhs", "rhs", "tolerance", "gap"):
                if key in c:
                    extra.append(f"{key}={_fmt(c[key])}")
            rows.append([k, "PASS" if c["holds"] else "FAIL", " ".join(extra)])
        out.extend(_aligned(["check", "status", "detail"], rows))
    if doc.get("result"):
        out.append("")
        for k, v in doc["result"].items():
            if isinstance(v, list) and v and all(isinstance(r, dict) for r in v):
                out.append(f"{k}:")
                keys = list(v[0])
                out.extend(_aligned(keys, [[_fmt(r[c]) for c in keys] for r in v]))
            else:
                out.append(f"{k}: {_fmt(v)}")
    return "\n".join(out) + "\n"
