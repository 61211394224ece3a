"""Plain-text documents with exact rational payloads.

Every document starts with a header line naming its kind::

    matrix 3x3
    -2,-3,-4; 1,0,0; 0,1,0

    vector 4
    4,3,2,1

    band 3
    0,0,1/4,-3/16,1/64

    system 3
    u: 4,3,2,1
    v: 1,1,1,1

    spec
    3,0,3,-3 hankel

    report
    stmt1 = True

Matrix rows are separated by ``;`` or newlines, entries by ``,``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import DimensionError
from .exactmat import Matrix, PolyVec, format_rational, parse_rational

__all__ = [
    "Document",
    "parse_document",
    "parse_list",
    "parse_matrix_text",
    "format_vector",
    "format_matrix",
    "matrix_doc",
    "vector_doc",
    "band_doc",
    "report_doc",
    "read_text_arg",
    "read_payload",
]

KINDS = ("matrix", "vector", "band", "system", "spec", "report")


@dataclass(frozen=True)
class Document:
    kind: str
    header: str
    body: tuple[str, ...]

    def __str__(self) -> str:
        return "\n".join((self.header,) + self.body)

    def as_matrix(self) -> Matrix:
        if self.kind != "matrix":
            raise ValueError(f"expected a matrix document, got {self.kind}")
        m = parse_matrix_text("\n".join(self.body))
        dims = self.header.split()[1:]
        if dims and dims[0] != f"{m.nrows}x{m.ncols}":
            raise DimensionError(f"header says {dims[0]} but payload is {m.nrows}x{m.ncols}")
        return m

    def as_vector(self) -> tuple[Fraction, ...]:
        if self.kind not in ("vector", "band"):
            raise ValueError(f"expected a vector document, got {self.kind}")
        vals = parse_list(" ".join(self.body))
        dims = self.header.split()[1:]
        if self.kind == "vector" and dims and int(dims[0]) != len(vals):
            raise DimensionError(f"header says {dims[0]} entries but payload has {len(vals)}")
        return vals

    def as_system(self) -> tuple[PolyVec, PolyVec]:
        if self.kind != "system":
            raise ValueError(f"expected a system document, got {self.kind}")
        fields = {}
        for line in self.body:
            key, sep, val = line.partition(":")
            if not sep or key.strip() not in ("u", "v"):
                raise ValueError(f"system lines look like 'u: 1,2,3', got {line!r}")
            fields[key.strip()] = PolyVec(parse_list(val))
        if set(fields) != {"u", "v"}:
            raise ValueError("a system document needs both u and v")
        return fields["u"], fields["v"]

    def as_spec(self) -> tuple[int, int, int, int, bool]:
        if self.kind != "spec":
            raise ValueError(f"expected a spec document, got {self.kind}")
        toks = re.split(r"[,\s]+", " ".join(self.body).strip())
        hankel = bool(toks) and toks[-1].lower() == "hankel"
        nums = toks[:-1] if hankel else toks
        if len(nums) != 4:
            raise ValueError(f"a spec needs four integers k,l,s,t, got {nums}")
        try:
            k, l, s, t = (int(x) for x in nums)
        except ValueError:
            raise ValueError(f"spec entries must be integers, got {nums}") from None
        return k, l, s, t, hankel


def parse_list(text: str) -> tuple[Fraction, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(parse_rational(tok) for tok in re.split(r"[,\s]+", text) if tok)


def parse_matrix_text(text: str) -> Matrix:
    rows = [r for r in re.split(r"[;\n]", text) if r.strip()]
    if not rows:
        raise ValueError("empty matrix")
    return Matrix(parse_list(r) for r in rows)


def parse_document(text: str) -> Document:
    lines = [ln.rstrip() for ln in text.strip().splitlines()]
    if not lines:
        raise ValueError("empty document")
    kind = lines[0].split()[0].lower()
    if kind not in KINDS:
        raise ValueError(f"unknown document kind {kind!r}; expected one of {', '.join(KINDS)}")
    return Document(kind, lines[0], tuple(ln for ln in lines[1:] if ln.strip()))


def format_vector(vec: Sequence[Fraction]) -> str:
    return ",".join(format_rational(x) for x in vec)


def format_matrix(m: Matrix) -> str:
    return "; ".join(format_vector(r) for r in m)


def matrix_doc(m: Matrix) -> Document:
    return Document("matrix", f"matrix {m.nrows}x{m.ncols}", (format_matrix(m),))


def vector_doc(vec: Sequence[Fraction] | PolyVec) -> Document:
    vec = tuple(vec)
    return Document("vector", f"vector {len(vec)}", (format_vector(vec),))


def band_doc(band) -> Document:
    return Document("band", f"band {band.n}", (str(band),))


def report_doc(lines: Sequence[str]) -> Document:
    return Document("report", "report", tuple(lines))


def read_text_arg(value: str) -> str:
    """``@path`` reads a file; anything else is taken literally."""
    if value.startswith("@"):
        return Path(value[1:]).read_text(encoding="utf-8")
    return value


def read_payload(value: str, *, is_file: bool = False) -> str:
    """The payload of a flag value: a bare list, a document, or (``@``/file) a file holding either."""
    text = Path(value).read_text(encoding="utf-8") if is_file else read_text_arg(value)
    first = text.strip().split(None, 1)
    if first and first[0].lower() in KINDS:
        return "\n".join(parse_document(text).body)
    return text
