"""Matrix documents: the JSON exchange format used by the command line.

Every entry is a string so that no consumer has to cope with integers
beyond 2^53.  Rationals are written "p/q" and complex numbers "re+im i".
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .exact import Mat

KINDS = ("integer", "rational", "complex")

_SPLIT = re.compile(r"(?<=[^eE])[+-]")


class DocumentError(ValueError):
    pass


def _fmt_float(x: float) -> str:
    return repr(float(x))


def format_entry(x: Any, kind: str) -> str:
    if kind == "integer":
        return str(int(x))
    if kind == "rational":
        f = Fraction(x)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    c = complex(x)
    sign = "-" if c.imag < 0 or (c.imag == 0 and str(c.imag).startswith("-")) else "+"
    return f"{_fmt_float(c.real)}{sign}{_fmt_float(abs(c.imag))}i"


def parse_entry(s: str, kind: str):
    if kind == "integer":
        return int(s)
    if kind == "rational":
        return Fraction(s)
    t = s.strip()
    cuts = [m.start() for m in _SPLIT.finditer(t, 1)]
    if not t.endswith("i") or not cuts:
        raise DocumentError(f"bad complex entry {s!r}")
    cut = cuts[-1]
    try:
        return complex(float(t[:cut]), float(t[cut:-1]))
    except ValueError:
        raise DocumentError(f"bad complex entry {s!r}") from None


@dataclass(frozen=True)
class MatrixDocument:
    name: str
    k: int
    kind: str
    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DocumentError(f"unknown kind {self.kind!r}")

    @classmethod
    def from_matrix(cls, name: str, k: int, m) -> "MatrixDocument":
        if isinstance(m, Mat):
            kind = "integer" if m.is_integer() else "rational"
            rows = m.tolist()
        else:
            arr = np.asarray(m)
            kind = "complex"
            rows = arr.tolist()
        return cls(name, k, kind, tuple(tuple(format_entry(x, kind) for x in r) for r in rows))

    def values(self) -> list[list]:
        return [[parse_entry(x, self.kind) for x in r] for r in self.rows]

    def to_matrix(self):
        if self.kind == "complex":
            return np.array(self.values(), dtype=complex)
        return Mat(self.values())

    def to_json(self) -> dict:
        return {"name": self.name, "k": self.k, "kind": self.kind, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> "MatrixDocument":
        try:
            return cls(str(obj["name"]), int(obj["k"]), str(obj["kind"]), tuple(tuple(str(x) for x in r) for r in obj["rows"]))
        except KeyError as e:
            raise DocumentError(f"missing field {e}") from None

    def pretty(self) -> str:
        width = max((len(x) for r in self.rows for x in r), default=1)
        lines = [f"{self.name} (k={self.k}, {self.kind})"]
        for r in self.rows:
            lines.append("  [ " + " ".join(x.rjust(width) for x in r) + " ]")
        return "\n".join(lines)


def _doc_json(d: MatrixDocument) -> str:
    head = json.dumps({"name": d.name, "k": d.k, "kind": d.kind})[:-1]
    rows = ",\n    ".join(json.dumps(list(r)) for r in d.rows)
    return f'  {head}, "rows": [\n    {rows}]}}'


def dumps(docs: list[MatrixDocument], extra: dict | None = None) -> str:
    """JSON text with one matrix row per line; extra keys follow the documents."""
    parts = ['"documents": [\n' + ",\n".join(_doc_json(d) for d in docs) + "]"]
    for key, val in (extra or {}).items():
        parts.append(f"{json.dumps(key)}: {json.dumps(val)}")
    return "{" + ",\n".join(parts) + "}"


def loads(text: str) -> list[MatrixDocument]:
    obj = json.loads(text)
    return [MatrixDocument.from_json(d) for d in obj["documents"]]
