"""Central arrangements and multiarrangements over Q.

Hyperplanes are identified by their normalised form (first nonzero
coefficient 1). Arrangements keep the user's order so that indices are
stable identifiers across deletion, restriction and reports.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .algebra import Poly, nullspace, rref

Form = tuple[Fraction, ...]


class ArrangementError(ValueError):
    pass


def _normalize(form: Sequence) -> Form:
    vals = tuple(Fraction(x) for x in form)
    lead = next((x for x in vals if x), None)
    if lead is None:
        raise ArrangementError("zero linear form")
    return tuple(x / lead for x in vals)


@dataclass(frozen=True)
class Hyperplane:
    form: Form

    @classmethod
    def from_form(cls, form: Sequence) -> Hyperplane:
        return cls(_normalize(form))

    @property
    def nvars(self) -> int:
        return len(self.form)

    @property
    def pivot(self) -> int:
        return next(i for i, x in enumerate(self.form) if x)

    def integer_form(self) -> tuple[int, ...]:
        """Primitive integer multiple with positive leading coefficient."""
        den = lcm(*(x.denominator for x in self.form))
        ints = [int(x * den) for x in self.form]
        g = 0
        for x in ints:
            g = gcd(g, x)
        return tuple(x // g for x in ints)

    def poly(self) -> Poly:
        return Poly.linear(self.form)

    def __call__(self, point: Sequence) -> Fraction:
        return sum((a * Fraction(x) for a, x in zip(self.form, point)), Fraction(0))

    def __str__(self) -> str:
        return str(self.poly())


@dataclass(frozen=True)
class Arrangement:
    nvars: int
    hyperplanes: tuple[Hyperplane, ...]

    def __post_init__(self):
        seen = set()
        for h in self.hyperplanes:
            if h.nvars != self.nvars:
                raise ArrangementError(f"form {h.form} does not have {self.nvars} coefficients")
            if h.form in seen:
                raise ArrangementError(f"duplicate (proportional) hyperplane {h}")
            seen.add(h.form)

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    def __getitem__(self, i: int) -> Hyperplane:
        return self.hyperplanes[i]

    def __contains__(self, h) -> bool:
        if not isinstance(h, Hyperplane):
            h = Hyperplane.from_form(h)
        return h in self.hyperplanes

    def index(self, h) -> int:
        if not isinstance(h, Hyperplane):
            h = Hyperplane.from_form(h)
        try:
            return self.hyperplanes.index(h)
        except ValueError:
            raise ArrangementError(f"{h} is not in the arrangement") from None

    @property
    def forms(self) -> list[Form]:
        return [h.form for h in self.hyperplanes]

    def key(self) -> tuple[Form, ...]:
        """Order-independent identity of the underlying set."""
        return tuple(sorted(self.forms))

    def rank(self) -> int:
        return len(rref(self.forms, self.nvars)[1]) if self.hyperplanes else 0

    def __str__(self) -> str:
        return " * ".join(f"({h})" for h in self.hyperplanes) or "1"


def make_arrangement(nvars: int, forms: Iterable[Sequence]) -> Arrangement:
    hs = []
    for f in forms:
        if len(f) != nvars:
            raise ArrangementError(f"form {tuple(f)} does not have {nvars} coefficients")
        hs.append(Hyperplane.from_form(f))
    return Arrangement(nvars, tuple(hs))


def is_essential(A: Arrangement) -> bool:
    return A.rank() == A.nvars


def check_multiplicity(A: Arrangement, m: Sequence[int] | None) -> tuple[int, ...]:
    if m is None:
        return (1,) * len(A)
    m = tuple(int(x) for x in m)
    if len(m) != len(A):
        raise ArrangementError("multiplicity must give one value per hyperplane")
    if any(x < 1 for x in m):
        raise ArrangementError("multiplicities must be positive")
    return m


def defining_polynomial(A: Arrangement, m: Sequence[int] | None = None) -> Poly:
    m = check_multiplicity(A, m)
    q = Poly.constant(A.nvars, 1)
    for h, k in zip(A, m):
        q = q * h.poly() ** k
    return q


def delete(A: Arrangement, i: int) -> Arrangement:
    if not 0 <= i < len(A):
        raise IndexError(f"hyperplane index {i} out of range")
    return Arrangement(A.nvars, A.hyperplanes[:i] + A.hyperplanes[i + 1:])


def add(A: Arrangement, h) -> Arrangement:
    if not isinstance(h, Hyperplane):
        h = Hyperplane.from_form(h)
    if h in A.hyperplanes:
        raise ArrangementError(f"{h} is already in the arrangement")
    return Arrangement(A.nvars, A.hyperplanes + (h,))


def subarrangement(A: Arrangement, indices: Iterable[int]) -> Arrangement:
    return Arrangement(A.nvars, tuple(A.hyperplanes[i] for i in indices))


def _vanishes_on(h: Hyperplane, basis: Sequence[Sequence]) -> bool:
    return all(h(v) == 0 for v in basis)


def localize(A: Arrangement, X) -> Arrangement:
    """Hyperplanes containing the flat ``X``.

    ``X`` is a ``Flat`` or a list of vectors spanning the subspace.
    """
    basis = getattr(X, "subspace", X)
    basis = [tuple(Fraction(x) for x in v) for v in basis]
    members = [i for i, h in enumerate(A) if _vanishes_on(h, basis)]
    # X must be exactly the intersection of the hyperplanes containing it
    ann_rank = len(rref([A[i].form for i in members], A.nvars)[1]) if members else 0
    dimX = len(rref(basis, A.nvars)[1]) if basis else 0
    if ann_rank != A.nvars - dimX:
        raise ArrangementError("subspace is not a flat of the arrangement")
    return subarrangement(A, members)


def hyperplane_basis(h: Hyperplane) -> list[Form]:
    """Kernel basis of the 1 x l matrix of the form, in reduced echelon normal form."""
    basis, _ = nullspace([list(h.form)], h.nvars)
    return [tuple(v) for v in basis]


def embedding(h: Hyperplane) -> tuple[Form, ...]:
    """The l x (l-1) matrix whose columns are ``hyperplane_basis(h)``."""
    cols = hyperplane_basis(h)
    return tuple(tuple(col[i] for col in cols) for i in range(h.nvars))


def pull_back(form: Sequence, h: Hyperplane) -> Form:
    """Coefficients of ``form`` restricted to ``h`` in the embedding coordinates."""
    return tuple(sum((a * v for a, v in zip(form, col)), Fraction(0)) for col in hyperplane_basis(h))


@dataclass(frozen=True)
class ZieglerRestriction:
    restricted: Arrangement
    mult: tuple[int, ...]
    section: tuple[int, ...]
    embedding: tuple[Form, ...]
    index: int

    @property
    def total(self) -> int:
        return sum(self.mult)


def ziegler_restrict(A: Arrangement, i: int) -> ZieglerRestriction:
    if not 0 <= i < len(A):
        raise IndexError(f"hyperplane index {i} out of range")
    h = A[i]
    forms: list[Form] = []
    mult: list[int] = []
    section: list[int] = []
    where: dict[Form, int] = {}
    for j, L in enumerate(A):
        if j == i:
            continue
        f = _normalize(pull_back(L.form, h))
        if f in where:
            mult[where[f]] += 1
        else:
            where[f] = len(forms)
            forms.append(f)
            mult.append(1)
            section.append(j)
    restricted = Arrangement(A.nvars - 1, tuple(Hyperplane(f) for f in forms))
    return ZieglerRestriction(restricted, tuple(mult), tuple(section), embedding(h), i)


def restrict(A: Arrangement, i: int) -> tuple[Arrangement, tuple[Form, ...]]:
    z = ziegler_restrict(A, i)
    return z.restricted, z.embedding


def essentialize(A: Arrangement) -> Arrangement:
    """The same arrangement on V / (centre), in rank(A) coordinates.

    Coordinates of each form against the reduced echelon basis of the span
    of all forms are its entries at the pivot columns.
    """
    _, pivots = rref(A.forms, A.nvars) if len(A) else ([], [])
    return make_arrangement(len(pivots), [[h.form[c] for c in pivots] for h in A])


def linear_transform(A: Arrangement, T: Sequence[Sequence]) -> Arrangement:
    """Pull every form back along x -> T x (alpha becomes alpha . T)."""
    n = A.nvars
    return make_arrangement(
        n, [[sum((h.form[i] * Fraction(T[i][j]) for i in range(n)), Fraction(0)) for j in range(n)] for h in A]
    )
