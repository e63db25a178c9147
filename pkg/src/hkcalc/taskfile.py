"""The line-oriented task file format.

::

    # A_1 singularity
    p: 3
    vars: x y z
    relations: x*y - z^2
    ideal: x, y, z          # optional; defaults to the maximal ideal
    task: check n_max=3 tol=0.05

Polynomials are stored in canonical printed form, so printing a parsed spec
and parsing it again gives the same spec.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, fields, replace
from fractions import Fraction

from .field import check_characteristic
from .polynomial import ParseError, PolyRing

TASK_KINDS = ("ehk", "tor", "kunz", "check", "lemma", "corollary", "monomial-ehk", "bi-bound")
_INT_KEYS = ("n_max", "i", "n", "stages")
_COMPLEX_KINDS = ("koszul", "resolution")


class TaskFileError(ParseError):
    pass


@dataclass(frozen=True)
class TaskSpec:
    p: int
    variables: tuple[str, ...]
    relations: tuple[str, ...] = ()
    ideal: tuple[str, ...] = ()
    kind: str = "check"
    n_max: int | None = None
    i: int | None = None
    n: int | None = None
    tol: Fraction | None = None
    q_list: tuple[int, ...] | None = None
    stages: int | None = None
    complex: str | None = None

    @property
    def params(self) -> dict:
        names = ("n_max", "i", "n", "tol", "q_list", "stages", "complex")
        return {k: getattr(self, k) for k in names if getattr(self, k) is not None}

    def ring(self) -> PolyRing:
        return PolyRing(self.p, self.variables)


def _split_polys(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


def _parse_param(key: str, value: str):
    if key in _INT_KEYS:
        if not re.fullmatch(r"\d+", value):
            raise TaskFileError(f"{key} must be a non-negative integer, got {value!r}")
        return int(value)
    if key == "tol":
        try:
            tol = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise TaskFileError(f"tol must be a number, got {value!r}") from None
        if tol < 0:
            raise TaskFileError("tol must be non-negative")
        return tol
    if key == "q_list":
        parts = value.split(",")
        if not all(re.fullmatch(r"\d+", x) for x in parts):
            raise TaskFileError(f"q_list must be comma-separated integers, got {value!r}")
        return tuple(int(x) for x in parts)
    if key == "complex":
        if value not in _COMPLEX_KINDS:
            raise TaskFileError(f"complex must be one of {', '.join(_COMPLEX_KINDS)}")
        return value
    raise TaskFileError(f"unknown task parameter {key!r}")


def parse_taskfile(text: str) -> TaskSpec:
    seen: dict[str, str] = {}
    relations: list[str] = []
    ideal: list[str] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise TaskFileError(f"line {lineno}: expected 'key: value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split(":", 1))
        if key == "relations":
            relations.extend(_split_polys(value))
        elif key == "ideal":
            ideal = (ideal or []) + _split_polys(value)
        elif key in ("p", "vars", "task"):
            if key in seen:
                raise TaskFileError(f"line {lineno}: duplicate {key!r}")
            seen[key] = value
        else:
            raise TaskFileError(f"line {lineno}: unknown directive {key!r}")
    for key in ("p", "vars", "task"):
        if key not in seen:
            raise TaskFileError(f"missing {key!r} line")
    if not re.fullmatch(r"\d+", seen["p"]):
        raise TaskFileError(f"p must be an integer, got {seen['p']!r}")
    try:
        p = check_characteristic(int(seen["p"]))
    except ValueError as exc:
        raise TaskFileError(str(exc)) from None
    variables = tuple(seen["vars"].replace(",", " ").split())
    try:
        ring = PolyRing(p, variables)
    except ValueError as exc:
        raise TaskFileError(str(exc)) from None

    words = seen["task"].split()
    if not words:
        raise TaskFileError("empty task line")
    kind = words[0]
    if kind not in TASK_KINDS:
        raise TaskFileError(f"unknown task kind {kind!r}; expected one of {', '.join(TASK_KINDS)}")
    params = {}
    for word in words[1:]:
        if "=" not in word:
            raise TaskFileError(f"task parameter {word!r} is not key=value")
        k, v = word.split("=", 1)
        if k in params:
            raise TaskFileError(f"duplicate task parameter {k!r}")
        params[k] = _parse_param(k, v)

    canon_rel = tuple(str(ring.parse(r)) for r in relations)
    if ideal is None:
        canon_ideal = variables
    else:
        canon_ideal = tuple(str(ring.parse(g)) for g in ideal)
    return TaskSpec(p, variables, canon_rel, canon_ideal, kind, **params)


def _format_value(v) -> str:
    if isinstance(v, tuple):
        return ",".join(str(x) for x in v)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def format_taskfile(spec: TaskSpec) -> str:
    lines = [f"p: {spec.p}", f"vars: {' '.join(spec.variables)}"]
    if spec.relations:
        lines.append(f"relations: {', '.join(spec.relations)}")
    lines.append(f"ideal: {', '.join(spec.ideal)}")
    task = [spec.kind] + [f"{k}={_format_value(v)}" for k, v in spec.params.items()]
    lines.append("task: " + " ".join(task))
    return "\n".join(lines) + "\n"


def with_overrides(spec: TaskSpec, **kw) -> TaskSpec:
    known = {f.name for f in fields(TaskSpec)}
    return replace(spec, **{k: v for k, v in kw.items() if k in known and v is not None})
