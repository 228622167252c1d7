"""Exact linear algebra over Q.

Small systems are eliminated in pure Python with ``Fraction``; anything
larger is handed to FLINT (``python-flint``), whose ``fmpq_mat.rref`` is exact.
Reduced row echelon form is unique, so both paths return identical results.

``rank_mod_p`` gives a lower bound for the rational rank; callers combine it
with an exactly known subspace to certify dimensions without a rational
elimination (see ``derivations.certified_dimension``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint

# Mersenne prime 2^61 - 1; fits the word-size modulus of nmod_mat.
PRIME = (1 << 61) - 1

_SMALL = 600  # entries; below this, pure Python wins over conversion overhead


def _rref_python(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        src = next((i for i in range(r, nrows) if m[i][c]), None)
        if src is None:
            continue
        m[r], m[src] = m[src], m[r]
        inv = 1 / m[r][c]
        prow = [x * inv for x in m[r]]
        m[r] = prow
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                row = m[i]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _to_fmpq_mat(rows: Sequence[Sequence], ncols: int) -> flint.fmpq_mat:
    flat = []
    for row in rows:
        for x in row:
            if type(x) is Fraction:
                flat.append(flint.fmpq(x.numerator, x.denominator) if x.denominator != 1 else x.numerator)
            else:
                flat.append(x)
    return flint.fmpq_mat(len(rows), ncols, flat)


def _frac(x) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def _rref_flint(rows: Sequence[Sequence], ncols: int, want_rows: bool = True):
    R, rank = _to_fmpq_mat(rows, ncols).rref()
    flat = R.entries()
    pivots: list[int] = []
    out_rows: list[list[Fraction]] = []
    for i in range(rank):
        base = i * ncols
        c = next(j for j in range(ncols) if flat[base + j])
        pivots.append(c)
        if want_rows:
            out_rows.append([_frac(x) if x else Fraction(0) for x in flat[base:base + ncols]])
    return out_rows, pivots, flat


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form: the nonzero rows and their pivot columns."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return [], []
    if len(rows) * ncols <= _SMALL:
        return _rref_python(rows, ncols)
    out, pivots, _ = _rref_flint(rows, ncols)
    return out, pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return 0
    if len(rows) * ncols <= _SMALL:
        return len(_rref_python(rows, ncols)[1])
    return _to_fmpq_mat(rows, ncols).rank()


def pivot_columns(rows: Sequence[Sequence], ncols: int) -> list[int]:
    if not rows or ncols == 0:
        return []
    if len(rows) * ncols <= _SMALL:
        return _rref_python(rows, ncols)[1]
    return _rref_flint(rows, ncols, want_rows=False)[1]


def nullspace(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Right kernel basis and the free columns it is normalised on.

    The vector for free column ``f`` has a 1 at ``f``, zeros at the other free
    columns and ``-R[i][f]`` at pivot column ``i``.
    """
    if not rows:
        basis = []
        for f in range(ncols):
            v = [Fraction(0)] * ncols
            v[f] = Fraction(1)
            basis.append(v)
        return basis, list(range(ncols))
    if len(rows) * ncols <= _SMALL:
        R, pivots = _rref_python(rows, ncols)
        get = lambda i, f: R[i][f]  # noqa: E731
    else:
        _, pivots, flat = _rref_flint(rows, ncols, want_rows=False)
        get = lambda i, f: flat[i * ncols + f]  # noqa: E731
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            if c > f:
                break
            x = get(i, f)
            if x:
                v[c] = -(x if type(x) is Fraction else _frac(x))
        basis.append(v)
    return basis, free


def _mod(x, p: int) -> int:
    if type(x) is Fraction:
        if x.denominator % p == 0:
            raise ZeroDivisionError("denominator vanishes modulo p")
        return x.numerator * pow(x.denominator, -1, p) % p
    return int(x) % p


def rank_mod_p(rows: Sequence[Sequence], ncols: int, p: int = PRIME) -> int:
    """Rank of the reduction modulo ``p``; never exceeds the rational rank."""
    if not rows or ncols == 0:
        return 0
    return flint.nmod_mat([[_mod(x, p) for x in row] for row in rows], p).rank()


def sparse_rank_mod_p(nrows: int, ncols: int, entries: Iterable[tuple[int, int, object]], p: int = PRIME) -> int:
    """Modular rank of a matrix given by its (row, col, value) nonzeros."""
    if not nrows or not ncols:
        return 0
    M = flint.nmod_mat(nrows, ncols, p)
    for i, j, v in entries:
        M[i, j] = _mod(v, p)
    return M.rank()


@dataclass(frozen=True)
class QMatrix:
    rows: tuple[tuple[Fraction, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> QMatrix:
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("rows must all have the same length")
        return cls(tuple(tuple(Fraction(x) for x in r) for r in rows), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def rank(self) -> int:
        return rank(self.rows, self.ncols)

    def kernel(self) -> list[list[Fraction]]:
        return nullspace(self.rows, self.ncols)[0]

    def rref(self) -> tuple[list[list[Fraction]], list[int]]:
        return rref(self.rows, self.ncols)


def kernel(M: QMatrix) -> list[list[Fraction]]:
    return M.kernel()


def matrix_rank(M: QMatrix) -> int:
    return M.rank()


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> list[Fraction] | None:
    """One solution of ``rows @ x = rhs`` (free variables set to 0), or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(R, pivots):
        x[c] = row[ncols]
    return x
