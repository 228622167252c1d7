"""Plain-text arrangement files.

    vars: 3
    # comment lines start with '#'
    1 0 0
    1 -1/2 0 | 2

Each hyperplane line holds ``vars`` rationals (``a``, ``-a`` or ``a/b``);
an optional ``| k`` column gives a multiplicity. Either every line carries
one or none does. Files are written with primitive integer forms, single
spaces and no comments.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from pathlib import Path
from typing import Sequence

from .arrangement import Arrangement, ArrangementError, Hyperplane

_TOKEN = re.compile(r"-?\d+(/\d+)?")


class ParseError(ArrangementError):
    def __init__(self, line: int, message: str, source: str = "<text>"):
        super().__init__(f"{source}:{line}: {message}")
        self.line = line


@dataclass(frozen=True)
class ArrangementFile:
    arrangement: Arrangement
    mult: tuple[int, ...] | None = None

    @property
    def multiplicity(self) -> tuple[int, ...]:
        return self.mult if self.mult is not None else (1,) * len(self.arrangement)


def _rational(tok: str, line: int, source: str) -> Fraction:
    if not _TOKEN.fullmatch(tok):
        raise ParseError(line, f"bad coefficient {tok!r}; use a, -a or a/b", source)
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise ParseError(line, f"zero denominator in {tok!r}", source) from None


def _rows(text: str, source: str):
    """Yield (line number, coefficients, multiplicity or None) after the header."""
    nvars = None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if nvars is None:
            m = re.fullmatch(r"vars:\s*(\d+)", line)
            if not m:
                raise ParseError(no, "expected 'vars: <n>' header", source)
            nvars = int(m.group(1))
            if nvars < 1:
                raise ParseError(no, "vars must be positive", source)
            yield no, nvars, None
            continue
        body, bar, tail = line.partition("|")
        toks = body.split()
        if len(toks) != nvars:
            raise ParseError(no, f"expected {nvars} coefficients, found {len(toks)}", source)
        coeffs = [_rational(t, no, source) for t in toks]
        mult = None
        if bar:
            t = tail.strip()
            if not re.fullmatch(r"\d+", t) or int(t) < 1:
                raise ParseError(no, f"multiplicity must be a positive integer, got {t!r}", source)
            mult = int(t)
        yield no, coeffs, mult
    if nvars is None:
        raise ParseError(1, "missing 'vars: <n>' header", source)


def parse(text: str, source: str = "<text>") -> ArrangementFile:
    rows = _rows(text, source)
    _, nvars, _ = next(rows)
    hs: list[Hyperplane] = []
    mults: list[int | None] = []
    seen: dict = {}
    for no, coeffs, mult in rows:
        if not any(coeffs):
            raise ParseError(no, "zero linear form", source)
        h = Hyperplane.from_form(coeffs)
        if h.form in seen:
            raise ParseError(no, f"hyperplane repeats line {seen[h.form]}", source)
        seen[h.form] = no
        if mults and (mult is None) != (mults[0] is None):
            raise ParseError(no, "multiplicity column must appear on every line or none", source)
        hs.append(h)
        mults.append(mult)
    A = Arrangement(nvars, tuple(hs))
    m = tuple(mults) if mults and mults[0] is not None else None
    return ArrangementFile(A, m)


def read(path: str | Path) -> ArrangementFile:
    p = Path(path)
    return parse(p.read_text(), str(p))


def write(A: Arrangement, mult: Sequence[int] | None = None) -> str:
    if mult is not None and len(mult) != len(A):
        raise ValueError("multiplicity length differs from the number of hyperplanes")
    lines = [f"vars: {A.nvars}"]
    for k, h in enumerate(A):
        row = " ".join(str(x) for x in h.integer_form())
        lines.append(row if mult is None else f"{row} | {mult[k]}")
    return "\n".join(lines) + "\n"


def normalize(text: str) -> str:
    """Canonical text of a file, computed line by line without building an arrangement."""
    out = []
    for _, coeffs, mult in _rows(text, "<text>"):
        if mult is None and isinstance(coeffs, int):
            out.append(f"vars: {coeffs}")
            continue
        den = lcm(*(c.denominator for c in coeffs))
        ints = [int(c * den) for c in coeffs]
        g = gcd(*ints)
        lead = next(x for x in ints if x)
        g = g if lead > 0 else -g
        row = " ".join(str(x // g) for x in ints)
        out.append(row if mult is None else f"{row} | {mult}")
    return "\n".join(out) + "\n"

