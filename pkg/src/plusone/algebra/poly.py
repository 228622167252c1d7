"""Sparse multivariate polynomials over the rationals.

Terms are stored as ``{exponent tuple: Fraction}`` with no zero coefficients.
Homogeneous pieces are moved in and out of dense coordinate vectors against
:func:`monomial_basis`, which is where all the linear algebra happens.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

VAR_NAMES = "xyzw"


def _coerce(c) -> Fraction:
    return c if type(c) is Fraction else Fraction(c)


class Poly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have {nvars} entries")
                if c:
                    clean[tuple(e)] = _coerce(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> Poly:
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> Poly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> Poly:
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exponent: Sequence[int], c=1) -> Poly:
        return cls(len(exponent), {tuple(exponent): c})

    @classmethod
    def linear(cls, coeffs: Sequence) -> Poly:
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = _coerce(c)
        return cls._raw(n, terms)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: Poly) -> None:
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(self.nvars, other)

    def __add__(self, other) -> Poly:
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Poly:
        return self._lift(other) - self

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            c = _coerce(other)
            if not c:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        out: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power")
        result = Poly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self, i: int) -> Poly:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly._raw(self.nvars, out)

    def leading_term(self) -> tuple[tuple, Fraction]:
        e = max(self.terms)
        return e, self.terms[e]

    def divmod(self, divisor: Poly) -> tuple[Poly, Poly]:
        """Lex-order long division by a single polynomial."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = divisor.leading_term()
        rem = dict(self.terms)
        quo: dict = {}
        out_rem: dict = {}
        while rem:
            e = max(rem)
            c = rem[e]
            if all(a >= b for a, b in zip(e, le)):
                qe = tuple(a - b for a, b in zip(e, le))
                qc = c / lc
                quo[qe] = quo.get(qe, 0) + qc
                for de, dc in divisor.terms.items():
                    t = tuple(a + b for a, b in zip(qe, de))
                    s = rem.get(t, 0) - qc * dc
                    if s:
                        rem[t] = s
                    else:
                        rem.pop(t, None)
            else:
                out_rem[e] = c
                del rem[e]
        return Poly(self.nvars, quo), Poly._raw(self.nvars, out_rem)

    def exact_div(self, divisor: Poly) -> Poly:
        q, r = self.divmod(divisor)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    # -- substitution -----------------------------------------------------

    def __call__(self, *point):
        if len(point) != self.nvars:
            raise ValueError("wrong number of coordinates")
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def substitute(self, images: Sequence[Poly]) -> Poly:
        """Replace x_i by ``images[i]`` (all in a common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            return self
        target = images[0].nvars
        powers: list[dict[int, Poly]] = [{0: Poly.constant(target, 1)} for _ in images]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = pw(i, k - 1) * images[i]
            return cache[k]

        out = Poly.zero(target)
        for e, c in self.terms.items():
            t = Poly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            out = out + t
        return out

    def homogeneous_part(self, d: int) -> Poly:
        return Poly._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    # -- display ----------------------------------------------------------

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = VAR_NAMES if self.nvars <= len(VAR_NAMES) else [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def poly_mul(a: Poly, b: Poly) -> Poly:
    if a.nvars != b.nvars:
        raise ValueError(f"variable count mismatch: {a.nvars} vs {b.nvars}")
    return a * b


@lru_cache(maxsize=None)
def monomial_basis(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All degree-``degree`` exponent vectors in descending lexicographic order.

    >>> monomial_basis(2, 2)
    ((2, 0), (1, 1), (0, 2))
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for a in range(degree, -1, -1):
        for rest in monomial_basis(nvars - 1, degree - a):
            out.append((a,) + rest)
    return tuple(out)


def dim_homogeneous(nvars: int, degree: int) -> int:
    """dim S_d; zero for negative degree."""
    if degree < 0:
        return 0
    if nvars == 0:
        return 1 if degree == 0 else 0
    return comb(degree + nvars - 1, nvars - 1)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(monomial_basis(nvars, degree))}


@lru_cache(maxsize=None)
def multiplication_table(nvars: int, degree: int, exponent: tuple[int, ...]) -> tuple[int, ...]:
    """Index in S_{degree+|exponent|} of x^exponent * m, for each m in S_degree."""
    target = monomial_index(nvars, degree + sum(exponent))
    return tuple(
        target[tuple(a + b for a, b in zip(m, exponent))] for m in monomial_basis(nvars, degree)
    )


class HomogSlice:
    """Coordinates on S_d against the fixed monomial basis."""

    __slots__ = ("nvars", "degree", "monomials", "_index")

    def __init__(self, nvars: int, degree: int):
        self.nvars = nvars
        self.degree = degree
        self.monomials = monomial_basis(nvars, degree) if degree >= 0 else ()
        self._index = monomial_index(nvars, degree) if degree >= 0 else {}

    def __len__(self) -> int:
        return len(self.monomials)

    def coordinates(self, p: Poly) -> list[Fraction]:
        vec = [Fraction(0)] * len(self.monomials)
        for e, c in p.terms.items():
            try:
                vec[self._index[e]] = c
            except KeyError:
                raise ValueError(f"{p} is not homogeneous of degree {self.degree}") from None
        return vec

    def poly(self, vec: Iterable) -> Poly:
        terms = {m: c for m, c in zip(self.monomials, vec) if c}
        return Poly(self.nvars, terms)


def poly_matrix_det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square polynomial matrix by memoised Laplace expansion."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if n == 0:
        raise ValueError("empty matrix")
    nvars = matrix[0][0].nvars
    memo: dict[tuple[int, ...], Poly] = {}

    # expand along rows top to bottom; key = remaining column set
    def minor(row: int, cols: tuple[int, ...]) -> Poly:
        if row == n:
            return Poly.constant(nvars, 1)
        if cols in memo:
            return memo[cols]
        total = Poly.zero(nvars)
        for k, c in enumerate(cols):
            entry = matrix[row][c]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols[:k] + cols[k + 1:])
            term = entry * sub
            total = total - term if k % 2 else total + term
        memo[cols] = total
        return total

    return minor(0, tuple(range(n)))
