"""Intersection lattice, Möbius function and characteristic polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .algebra import nullspace, rref
from .arrangement import Arrangement, ArrangementError, Hyperplane, add, delete, restrict


@dataclass(frozen=True)
class Flat:
    members: tuple[int, ...]
    codim: int
    subspace: tuple[tuple[Fraction, ...], ...]
    ambient: int

    @property
    def dim(self) -> int:
        return self.ambient - self.codim


def _span_test(forms: Sequence[Sequence[Fraction]], ncols: int):
    """Return a membership predicate for the row space of ``forms``."""
    rows, pivots = rref(forms, ncols)

    def contains(v: Sequence[Fraction]) -> bool:
        w = list(v)
        for row, c in zip(rows, pivots):
            if w[c]:
                f = w[c]
                w = [a - f * b for a, b in zip(w, row)]
        return not any(w)

    return contains, len(pivots)


class IntersectionLattice:
    """All flats of ``A`` graded by codimension, with Möbius values.

    Flats are keyed by their member sets, which determine them uniquely.
    """

    def __init__(self, A: Arrangement):
        self.arrangement = A
        n = A.nvars
        forms = A.forms
        top = Flat((), 0, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)), n)
        levels: list[list[Flat]] = [[top]]
        seen = {(): top}
        while True:
            nxt: dict[tuple[int, ...], Flat] = {}
            for X in levels[-1]:
                for i in range(len(A)):
                    if i in X.members:
                        continue
                    gens = [forms[j] for j in X.members] + [forms[i]]
                    contains, r = _span_test(gens, n)
                    if r != X.codim + 1:
                        continue
                    members = tuple(j for j in range(len(A)) if contains(forms[j]))
                    if members in nxt or members in seen:
                        continue
                    basis, _ = nullspace([forms[j] for j in members], n)
                    nxt[members] = Flat(members, r, tuple(tuple(v) for v in basis), n)
            if not nxt:
                break
            level = sorted(nxt.values(), key=lambda f: f.members)
            levels.append(level)
            seen.update(nxt)
        self.levels = levels
        self._by_members = seen
        self.mobius: dict[tuple[int, ...], int] = {(): 1}
        done: list[Flat] = [top]
        for level in levels[1:]:
            for X in level:
                ms = set(X.members)
                self.mobius[X.members] = -sum(
                    self.mobius[Y.members] for Y in done if set(Y.members) < ms
                )
            done.extend(level)

    @property
    def rank(self) -> int:
        return len(self.levels) - 1

    def flats(self, codim: int | None = None) -> list[Flat]:
        if codim is None:
            return [X for level in self.levels for X in level]
        return list(self.levels[codim]) if 0 <= codim < len(self.levels) else []

    def mu(self, X: Flat) -> int:
        return self.mobius[X.members]

    def flat(self, members: Sequence[int]) -> Flat:
        return self._by_members[tuple(sorted(members))]

    def flats_above(self, X: Flat) -> list[Flat]:
        """Flats Y with Y ⊇ X (including X), i.e. the lattice of A_X."""
        ms = set(X.members)
        return [Y for Y in self.flats() if set(Y.members) <= ms]

    def poincare_at(self, X: Flat) -> list[int]:
        """Coefficients of π(A_X; t)."""
        out = [0] * (X.codim + 1)
        for Y in self.flats_above(X):
            out[Y.codim] += self.mu(Y) * (-1) ** Y.codim
        return out


def _poly_str(coeffs: Sequence[int], var: str = "t") -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        a = abs(c)
        body = str(a) if not mono else (mono if a == 1 else f"{a}{mono}")
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def _trim(c: list[int]) -> list[int]:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def poly_divmod_int(num: Sequence[int], den: Sequence[int]) -> tuple[list[Fraction], list[Fraction]]:
    """Univariate division with coefficient lists indexed by power."""
    num = [Fraction(x) for x in num]
    den = _trim(list(den))
    if not any(den):
        raise ZeroDivisionError("division by zero polynomial")
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    r = list(num)
    for k in range(len(num) - len(den), -1, -1):
        c = r[k + len(den) - 1] / den[-1]
        q[k] = c
        for j, d in enumerate(den):
            r[k + j] -= c * d
    return q, r[: len(den) - 1] or [Fraction(0)]


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff the integer polynomial ``a`` divides ``b`` over Q."""
    _, r = poly_divmod_int(b, a)
    return not any(r)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def rational_roots(coeffs: Sequence[int]) -> list[Fraction]:
    """Rational roots with multiplicity, ascending."""
    c = [Fraction(x) for x in coeffs]
    roots: list[Fraction] = []
    while len(c) > 1 and c[0] == 0:
        roots.append(Fraction(0))
        c = c[1:]
    while len(c) > 1:
        den = lcm(*(x.denominator for x in c))
        ints = [int(x * den) for x in c]
        found = None
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for s in (p, -p):
                    r = Fraction(s, q)
                    if sum(a * r ** k for k, a in enumerate(c)) == 0:
                        found = r
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        # synthetic division by (t - found)
        n = len(c) - 1
        q = [Fraction(0)] * n
        acc = Fraction(0)
        for k in range(n, 0, -1):
            acc = acc * found + c[k]
            q[k - 1] = acc
        c = q
    return sorted(roots)


@dataclass(frozen=True)
class CharPoly:
    """χ(A;t) with coefficients indexed by power of t."""

    coeffs: tuple[int, ...]
    ell: int
    size: int

    def __call__(self, t) -> Fraction:
        return sum((Fraction(c) * Fraction(t) ** k for k, c in enumerate(self.coeffs)), Fraction(0))

    @property
    def poincare(self) -> tuple[int, ...]:
        """π(A;t) = (−t)^ℓ χ(A;−1/t); coefficient of t^i is b_i."""
        return tuple(self.betti(i) for i in range(self.ell + 1))

    @property
    def reduced(self) -> tuple[int, ...]:
        if self.size == 0:
            raise ArithmeticError("χ of the empty arrangement is not divisible by t − 1")
        q, r = poly_divmod_int(self.coeffs, (-1, 1))
        assert not any(r)
        return tuple(int(x) for x in q)

    def betti(self, i: int) -> int:
        if not 0 <= i <= self.ell:
            raise ValueError(f"Betti index {i} out of range")
        return (-1) ** i * self.coeffs[self.ell - i]

    def betti0(self, i: int) -> int:
        red = self.reduced
        n = self.ell - 1
        if not 0 <= i <= n:
            raise ValueError(f"Betti index {i} out of range")
        return (-1) ** i * red[n - i]

    def roots(self) -> list[Fraction]:
        return rational_roots(self.coeffs)

    def factors_as(self, exponents: Sequence[int]) -> bool:
        prod = [1]
        for d in exponents:
            nxt = [0] * (len(prod) + 1)
            for k, c in enumerate(prod):
                nxt[k + 1] += c
                nxt[k] -= d * c
            prod = nxt
        return tuple(prod) == self.coeffs

    def __str__(self) -> str:
        return _poly_str(self.coeffs)


def intersection_lattice(A: Arrangement) -> IntersectionLattice:
    return IntersectionLattice(A)


def char_poly(A: Arrangement, lattice: IntersectionLattice | None = None) -> CharPoly:
    L = lattice or IntersectionLattice(A)
    coeffs = [0] * (A.nvars + 1)
    for X in L.flats():
        coeffs[A.nvars - X.codim] += L.mu(X)
    return CharPoly(tuple(coeffs), A.nvars, len(A))


def betti(A: Arrangement, i: int) -> int:
    return char_poly(A).betti(i)


def betti0(A: Arrangement, i: int) -> int:
    return char_poly(A).betti0(i)


def deletion_restriction_check(A: Arrangement, i: int) -> bool:
    """χ(A) = χ(A ∖ H) − χ(A^H), padding χ(A^H) to degree ℓ."""
    full = char_poly(A).coeffs
    dele = char_poly(delete(A, i)).coeffs
    res = char_poly(restrict(A, i)[0]).coeffs
    padded = tuple(res) + (0,)
    return all(a == b - c for a, b, c in zip(full, dele, padded))


@dataclass(frozen=True)
class SizeBoundReport:
    applicable: bool
    n_L: int | None = None
    a: Fraction | None = None
    b: Fraction | None = None
    branch: str | None = None
    equality: bool = False
    reason: str = ""


def count_lines_on(A: Arrangement, L: Hyperplane) -> int:
    """Number of distinct lines H ∩ L for H ∈ A, H ≠ L."""
    B = A if L in A else add(A, L)
    return len(restrict(B, B.index(L))[0])


def restriction_size_bound_check(A: Arrangement, L) -> SizeBoundReport:
    if A.nvars != 3:
        raise ArrangementError("the restriction size bound is stated for ℓ = 3")
    if not isinstance(L, Hyperplane):
        L = Hyperplane.from_form(L)
    chi0 = char_poly(A).reduced
    roots = rational_roots(chi0)
    if len(roots) != 2:
        disc = chi0[1] ** 2 - 4 * chi0[0] * chi0[2]
        reason = "χ₀ has non-real roots" if disc < 0 else "χ₀ has irrational roots"
        return SizeBoundReport(False, reason=reason)
    a, b = roots
    n = count_lines_on(A, L)
    if n <= a + 1:
        branch, eq = "lower", n == a + 1
    elif n >= b + 1:
        branch, eq = "upper", n == b + 1
    else:
        raise AssertionError(f"n_L = {n} lies strictly between {a + 1} and {b + 1}")
    return SizeBoundReport(True, n, a, b, branch, eq)
