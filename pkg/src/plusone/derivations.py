"""Graded pieces of D(A, m), minimal generators and first syzygies.

A derivation of degree d is stored as a vector of length l * dim S_d: block i
holds the coefficients of d/dx_i against ``monomial_basis(l, d)``.

The condition alpha^m | theta(alpha) is linearised by the substitution
x_p = (u - r) / a_p, where p is the pivot of alpha and r the other terms:
alpha becomes u and divisibility means every coefficient of u^k, k < m,
vanishes. Clearing a_p^d keeps the blocks integral.

Elements of D_d are identified with their values on the free columns of the
constraint echelon form; this projection is injective on D_d, so every
generator image, syzygy and membership question is solved in those
coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

from .algebra import (
    PRIME,
    Poly,
    monomial_basis,
    monomial_index,
    multiplication_table,
    nullspace,
    poly_matrix_det,
    rank,
    rref,
    sparse_rank_mod_p,
)
from .algebra.linalg import _mod
from .arrangement import (
    Arrangement,
    Hyperplane,
    ZieglerRestriction,
    check_multiplicity,
    defining_polynomial,
    ziegler_restrict,
)
from .algebra.poly import dim_homogeneous


class NotInModule(ValueError):
    pass


@dataclass(frozen=True)
class Derivation:
    coeffs: tuple[Poly, ...]

    @classmethod
    def from_vector(cls, nvars: int, degree: int, vec: Sequence) -> Derivation:
        mons = monomial_basis(nvars, degree)
        n = len(mons)
        return cls(tuple(
            Poly(nvars, {m: c for m, c in zip(mons, vec[i * n:(i + 1) * n]) if c}) for i in range(nvars)
        ))

    @classmethod
    def zero(cls, nvars: int) -> Derivation:
        return cls(tuple(Poly.zero(nvars) for _ in range(nvars)))

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    @property
    def degree(self) -> int:
        return max(c.degree() for c in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def vector(self, degree: int | None = None) -> list[Fraction]:
        d = self.degree if degree is None else degree
        idx = monomial_index(self.nvars, d)
        n = len(idx)
        out = [Fraction(0)] * (self.nvars * n)
        for i, c in enumerate(self.coeffs):
            for e, v in c.terms.items():
                try:
                    out[i * n + idx[e]] = v
                except KeyError:
                    raise ValueError("derivation is not homogeneous of the requested degree") from None
        return out

    def __call__(self, f: Poly) -> Poly:
        out = Poly.zero(self.nvars)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + c * f.derivative(i)
        return out

    def apply_form(self, form: Sequence) -> Poly:
        out = Poly.zero(self.nvars)
        for a, c in zip(form, self.coeffs):
            if a:
                out = out + c * a
        return out

    def __add__(self, other: Derivation) -> Derivation:
        return Derivation(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: Derivation) -> Derivation:
        return Derivation(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> Derivation:
        return Derivation(tuple(-a for a in self.coeffs))

    def __mul__(self, f) -> Derivation:
        return Derivation(tuple(c * f for c in self.coeffs))

    __rmul__ = __mul__

    def exact_div(self, f: Poly) -> Derivation:
        return Derivation(tuple(c.exact_div(f) for c in self.coeffs))

    def __str__(self) -> str:
        names = "xyzw" if self.nvars <= 4 else [f"x{i + 1}" for i in range(self.nvars)]
        parts = [f"({c})*d{names[i]}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) or "0"


def euler_derivation(nvars: int) -> Derivation:
    if nvars < 1:
        raise ValueError("need at least one variable")
    return Derivation(tuple(Poly.variable(nvars, i) for i in range(nvars)))


# -- constraint systems ---------------------------------------------------------


@lru_cache(maxsize=None)
def _power_dicts(coeffs: tuple[int, ...], top: int) -> tuple[dict, ...]:
    """(-r)^e as exponent->int dicts for e = 0..top, r = sum coeffs[j] y_j."""
    n = len(coeffs)
    out = [{(0,) * n: 1}]
    for _ in range(top):
        prev = out[-1]
        nxt: dict = {}
        for e, c in prev.items():
            for j, a in enumerate(coeffs):
                if a:
                    f = list(e)
                    f[j] += 1
                    f = tuple(f)
                    nxt[f] = nxt.get(f, 0) - a * c
        out.append({e: c for e, c in nxt.items() if c})
    return tuple(out)


@lru_cache(maxsize=None)
def constraint_block(form: tuple[int, ...], degree: int, mult: int) -> tuple[int, tuple[tuple[tuple[int, int], ...], ...]]:
    """Rows expressing alpha^mult | g for g in S_degree.

    Returns the row count and, for each monomial of S_degree, its sparse
    column ((row, value), ...).
    """
    n = len(form)
    p = next(i for i, a in enumerate(form) if a)
    ap = form[p]
    others = tuple(a for i, a in enumerate(form) if i != p)
    offsets = []
    total = 0
    for k in range(min(mult, degree + 1)):
        offsets.append(total)
        total += dim_homogeneous(n - 1, degree - k)
    powers = _power_dicts(others, degree)
    cols = []
    for mu in monomial_basis(n, degree):
        e = mu[p]
        rest = mu[:p] + mu[p + 1:]
        scale = ap ** (degree - e)
        col: dict[int, int] = {}
        for k in range(min(mult, e + 1)):
            idx = monomial_index(n - 1, degree - k)
            base = scale * comb(e, k)
            for pe, pc in powers[e - k].items():
                key = tuple(a + b for a, b in zip(pe, rest))
                r = offsets[k] + idx[key]
                col[r] = col.get(r, 0) + base * pc
        cols.append(tuple((r, v) for r, v in sorted(col.items()) if v))
    return total, tuple(cols)


def constraint_entries(A: Arrangement, m: tuple[int, ...], degree: int, dh: int | None) -> tuple[list[tuple[int, int, int]], int, int]:
    """Sparse (row, col, value) form of the system cutting out D_degree."""
    n = A.nvars
    N = dim_homogeneous(n, degree)
    entries: list[tuple[int, int, int]] = []
    row0 = 0
    for h, (H, k) in enumerate(zip(A, m)):
        a = H.integer_form()
        support = [(i, ai) for i, ai in enumerate(a) if ai]
        if h == dh:
            # theta(alpha_H) = 0 coefficientwise
            for mu in range(N):
                entries.extend((row0 + mu, i * N + mu, ai) for i, ai in support)
            row0 += N
            continue
        nr, cols = constraint_block(a, degree, k)
        for mu, col in enumerate(cols):
            for r, v in col:
                entries.extend((row0 + r, i * N + mu, ai * v) for i, ai in support)
        row0 += nr
    return entries, row0, n * N


def _constraint_rows(A: Arrangement, m: tuple[int, ...], degree: int, dh: int | None) -> tuple[list[list[int]], int]:
    entries, nrows, ncols = constraint_entries(A, m, degree, dh)
    rows = [[0] * ncols for _ in range(nrows)]
    for i, j, v in entries:
        rows[i][j] = v
    return rows, ncols


@dataclass(frozen=True)
class GradedSlice:
    """A basis of D(A, m)_d (or of D_H(A)_d) in echelon normal form."""

    nvars: int
    degree: int
    vectors: tuple[tuple[Fraction, ...], ...]
    free: tuple[int, ...]
    constraint: int | None = None

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def basis(self) -> list[Derivation]:
        return [Derivation.from_vector(self.nvars, self.degree, v) for v in self.vectors]

    def project(self, vec: Sequence) -> list:
        return [vec[f] for f in self.free]

    def lift(self, coords: Sequence) -> list[Fraction]:
        out = [Fraction(0)] * (self.nvars * dim_homogeneous(self.nvars, self.degree))
        for c, v in zip(coords, self.vectors):
            if c:
                for j, x in enumerate(v):
                    if x:
                        out[j] += c * x
        return out


@lru_cache(maxsize=4096)
def _slice(A: Arrangement, m: tuple[int, ...], degree: int, dh: int | None) -> GradedSlice:
    n = A.nvars
    if degree < 0:
        return GradedSlice(n, degree, (), (), dh)
    rows, ncols = _constraint_rows(A, m, degree, dh)
    basis, free = nullspace(rows, ncols)
    return GradedSlice(n, degree, tuple(tuple(v) for v in basis), tuple(free), dh)


def derivation_slice(A: Arrangement, m: Sequence[int] | None = None, d: int = 0, constraint: int | None = None) -> GradedSlice:
    """Basis of D(A, m)_d; with ``constraint=i`` the subspace where theta(alpha_i) = 0."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    if constraint is not None and not 0 <= constraint < len(A):
        raise IndexError(f"hyperplane index {constraint} out of range")
    return _slice(A, check_multiplicity(A, m), d, constraint)


def slice_dimension(A: Arrangement, m: Sequence[int] | None, d: int, exact: bool = True) -> int:
    """dim D(A, m)_d; ``exact=False`` returns the modular upper bound."""
    m = check_multiplicity(A, m)
    if d < 0:
        return 0
    if exact:
        return _slice(A, m, d, None).dim
    entries, nrows, ncols = constraint_entries(A, m, d, None)
    return ncols - sparse_rank_mod_p(nrows, ncols, entries)


def divisible_by_power(g: Poly, form: Sequence, mult: int) -> bool:
    """alpha^mult | g for homogeneous g, via the substitution rows."""
    if not g:
        return True
    d = g.degree()
    if not g.is_homogeneous():
        return all(divisible_by_power(g.homogeneous_part(k), form, mult) for k in range(d + 1))
    a = Hyperplane.from_form(form).integer_form()
    nr, cols = constraint_block(a, d, mult)
    acc = [0] * nr
    idx = monomial_index(g.nvars, d)
    for e, c in g.terms.items():
        for r, v in cols[idx[e]]:
            acc[r] += c * v
    return not any(acc)


def is_member(theta: Derivation, A: Arrangement, m: Sequence[int] | None = None) -> bool:
    m = check_multiplicity(A, m)
    if theta.nvars != A.nvars:
        raise ValueError("derivation and arrangement live in different rings")
    return all(divisible_by_power(theta.apply_form(H.form), H.form, k) for H, k in zip(A, m))


# -- restriction maps -------------------------------------------------------------


def _restriction_images(H: Hyperplane) -> tuple[int, list[Poly]]:
    n = H.nvars
    p = H.pivot
    ys = [j for j in range(n) if j != p]
    images = []
    for j in range(n):
        if j == p:
            images.append(Poly.linear([-H.form[k] for k in ys]))
        else:
            e = [0] * (n - 1)
            e[ys.index(j)] = 1
            images.append(Poly.monomial(e))
    return p, images


def restrict_derivation(theta: Derivation, H: Hyperplane) -> Derivation:
    """theta modulo alpha_H, written in the coordinates of H (no membership checks)."""
    p, images = _restriction_images(H)
    return Derivation(tuple(c.substitute(images) for j, c in enumerate(theta.coeffs) if j != p))


def restrict_poly(f: Poly, H: Hyperplane) -> Poly:
    _, images = _restriction_images(H)
    return f.substitute(images)


def euler_restriction(theta: Derivation, A: Arrangement, i: int) -> Derivation:
    """rho: D(A) -> D(A^H) for H = A[i]."""
    if not is_member(theta, A):
        raise NotInModule("derivation is not in D(A)")
    return restrict_derivation(theta, A[i])


def ziegler_map(theta: Derivation, A: Arrangement, zr: ZieglerRestriction | int) -> Derivation:
    """pi: D_H(A) -> D(A^H, m^H); the image is verified to lie in the target."""
    if isinstance(zr, int):
        zr = ziegler_restrict(A, zr)
    H = A[zr.index]
    if theta.apply_form(H.form):
        raise NotInModule("derivation does not annihilate alpha_H")
    if not is_member(theta, A):
        raise NotInModule("derivation is not in D(A)")
    out = restrict_derivation(theta, H)
    if not is_member(out, zr.restricted, zr.mult):
        raise AssertionError("Ziegler image left D(A^H, m^H)")
    return out


def section_polynomial(A: Arrangement, zr: ZieglerRestriction) -> Poly:
    """Q' = prod over X of alpha_{t(X)}^(m^H(X) - 1)."""
    q = Poly.constant(A.nvars, 1)
    for j, k in zip(zr.section, zr.mult):
        if k > 1:
            q = q * A[j].poly() ** (k - 1)
    return q


def theta_EH(A: Arrangement, i: int) -> Derivation:
    zr = ziegler_restrict(A, i)
    q = section_polynomial(A, zr)
    out = restrict_derivation(euler_derivation(A.nvars) * q, A[i])
    if not is_member(out, zr.restricted, zr.mult):
        raise AssertionError("restricted Euler element left D(A^H, m^H)")
    return out


# -- generators and syzygies ------------------------------------------------------


def _shift(vec: Sequence, nvars: int, degree: int, exponent: tuple[int, ...]) -> list:
    """Coordinates of x^exponent * theta, theta of the given degree."""
    table = multiplication_table(nvars, degree, exponent)
    n_src = len(table)
    n_dst = dim_homogeneous(nvars, degree + sum(exponent))
    out = [0] * (nvars * n_dst)
    for i in range(nvars):
        so, do = i * n_src, i * n_dst
        for mu, t in enumerate(table):
            x = vec[so + mu]
            if x:
                out[do + t] = x
    return out


def _image_rows(gens: Sequence[tuple[int, Sequence]], nvars: int, degree: int, sl: GradedSlice) -> tuple[list[list], list[tuple[int, tuple[int, ...]]]]:
    """Slice coordinates of x^nu * g_j for every generator of degree <= degree."""
    rows, labels = [], []
    for j, (dj, vec) in enumerate(gens):
        if dj > degree:
            continue
        for nu in monomial_basis(nvars, degree - dj):
            rows.append(sl.project(_shift(vec, nvars, dj, nu)))
            labels.append((j, nu))
    return rows, labels


@dataclass(frozen=True)
class GeneratorSet:
    arrangement: Arrangement
    mult: tuple[int, ...]
    vectors: tuple[tuple[Fraction, ...], ...]
    degrees: tuple[int, ...]
    euler_index: int | None
    verified_to: int
    dims: tuple[int, ...]
    constraint: int | None = None

    def __len__(self) -> int:
        return len(self.degrees)

    @property
    def generators(self) -> list[Derivation]:
        n = self.arrangement.nvars
        return [Derivation.from_vector(n, d, v) for d, v in zip(self.degrees, self.vectors)]

    def pairs(self) -> list[tuple[int, tuple[Fraction, ...]]]:
        return list(zip(self.degrees, self.vectors))


def _euler_vector(nvars: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in euler_derivation(nvars).vector(1))


def generator_steps(A: Arrangement, m: tuple[int, ...], bound: int, constraint: int | None = None) -> Iterator[tuple[int, GradedSlice, list[tuple[int, tuple]]]]:
    """Yield (d, slice, new generators at d) for d = 0..bound."""
    n = A.nvars
    seed = m == (1,) * len(A) and constraint is None
    gens: list[tuple[int, tuple]] = []
    for d in range(bound + 1):
        sl = _slice(A, m, d, constraint)
        if not sl.dim:
            yield d, sl, []
            continue
        rows, _ = _image_rows(gens, n, d, sl)
        new: list[tuple[int, tuple]] = []
        if seed and d == 1:
            e = _euler_vector(n)
            rows.append(sl.project(e))
            new.append((1, e))
        _, piv = rref(rows, sl.dim) if rows else ([], [])
        taken = set(piv)
        new.extend((d, sl.vectors[k]) for k in range(sl.dim) if k not in taken)
        gens.extend(new)
        yield d, sl, new


def minimal_generators(A: Arrangement, m: Sequence[int] | None = None, bound: int | None = None, constraint: int | None = None) -> GeneratorSet:
    """Graded-Nakayama generator search up to degree ``bound`` (default |m|)."""
    mt = check_multiplicity(A, m)
    B = sum(mt) if bound is None else bound
    if B < 1:
        raise ValueError("bound must be at least 1")
    degrees, vectors, dims = [], [], []
    for d, sl, new in generator_steps(A, mt, B, constraint):
        dims.append(sl.dim)
        for dj, v in new:
            degrees.append(dj)
            vectors.append(tuple(v))
    euler = None
    if mt == (1,) * len(A) and constraint is None and vectors:
        e = _euler_vector(A.nvars)
        euler = next((k for k, v in enumerate(vectors) if v == e), None)
    return GeneratorSet(A, mt, tuple(vectors), tuple(degrees), euler, B, tuple(dims), constraint)


@dataclass(frozen=True)
class SyzygySet:
    relations: tuple[tuple[Poly, ...], ...]
    degrees: tuple[int, ...]
    minimal: bool
    computed_to: int
    dims: tuple[int, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.relations)


def _relation_polys(vec: Sequence, labels: Sequence[tuple[int, tuple]], ngens: int, nvars: int) -> tuple[Poly, ...]:
    terms: list[dict] = [{} for _ in range(ngens)]
    for c, (j, nu) in zip(vec, labels):
        if c:
            terms[j][nu] = c
    return tuple(Poly(nvars, t) for t in terms)


def first_syzygies(G: GeneratorSet, bound: int | None = None) -> SyzygySet:
    """Minimal first syzygies of the generators, degree by degree up to ``bound``.

    At each degree e the relation space is the kernel of the map sending the
    label (j, nu) to x^nu * g_j; relations coming from S_1 times degree e-1
    relations are factored out, the rest are minimal.
    """
    A = G.arrangement
    n = A.nvars
    B = G.verified_to + 1 if bound is None else bound
    gens = G.pairs()
    ngens = len(gens)
    out_rel, out_deg, dims = [], [], []
    prev: list[list] = []
    prev_labels: list[tuple[int, tuple]] = []
    for e in range(B + 1):
        sl = _slice(A, G.mult, e, G.constraint)
        rows, labels = _image_rows([(dj, v) if dj < e else (e + 1, v) for dj, v in gens], n, e, sl)
        if not rows:
            dims.append(0)
            prev, prev_labels = [], []
            continue
        # relations are the left kernel of the image rows
        cols = [list(col) for col in zip(*rows)] if sl.dim else []
        kernel, kfree = nullspace(cols, len(rows))
        dims.append(len(kernel))
        if kernel:
            where = {lab: k for k, lab in enumerate(labels)}
            lifted = []
            for s in prev:
                for i in range(n):
                    step = tuple(int(t == i) for t in range(n))
                    v = [0] * len(labels)
                    for c, (j, nu) in zip(s, prev_labels):
                        if c:
                            v[where[(j, tuple(a + b for a, b in zip(nu, step)))]] = c
                    lifted.append([v[f] for f in kfree])
            _, piv = rref(lifted, len(kfree)) if lifted else ([], [])
            taken = set(piv)
            for k in range(len(kernel)):
                if k not in taken:
                    out_rel.append(_relation_polys(kernel[k], labels, ngens, n))
                    out_deg.append(e)
        prev, prev_labels = kernel, labels
    return SyzygySet(tuple(out_rel), tuple(out_deg), True, B, tuple(dims))


def check_relation(G: GeneratorSet, relation: Sequence[Poly]) -> bool:
    total = Derivation.zero(G.arrangement.nvars)
    for r, g in zip(relation, G.generators):
        if r:
            total = total + g * r
    return total.is_zero()


# -- Saito's criterion ----------------------------------------------------------


@dataclass(frozen=True)
class SaitoResult:
    holds: bool
    constant: Fraction
    determinant: Poly


def saito_check(A: Arrangement, m: Sequence[int] | None, candidates: Sequence[Derivation]) -> SaitoResult:
    mt = check_multiplicity(A, m)
    n = A.nvars
    if len(candidates) != n:
        raise ValueError(f"Saito's criterion needs exactly {n} derivations")
    for k, th in enumerate(candidates):
        if not is_member(th, A, mt):
            raise NotInModule(f"candidate {k} is not in D(A, m)")
    det = poly_matrix_det([list(th.coeffs) for th in candidates])
    Q = defining_polynomial(A, mt)
    if not det:
        return SaitoResult(False, Fraction(0), det)
    lead, qc = Q.leading_term()
    c = det.coefficient(lead) / qc
    return SaitoResult(bool(c) and det == Q * c, c, det)


# -- certified dimensions beyond the exact range --------------------------------


@dataclass(frozen=True)
class DimensionCertificate:
    degree: int
    dim: int
    image_rank: int
    method: str


def certified_dimension(G: GeneratorSet, degree: int, p: int = PRIME) -> DimensionCertificate:
    """dim D_degree together with the rank of the generators' image there.

    The modular rank of the generator image is a lower bound and
    (number of unknowns - modular constraint rank) an upper bound for the
    true dimension; when they meet both are exact. Otherwise the values are
    recomputed over Q.
    """
    A = G.arrangement
    n = A.nvars
    N = dim_homogeneous(n, degree)
    entries, nrows, ncols = constraint_entries(A, G.mult, degree, G.constraint)
    upper = ncols - sparse_rank_mod_p(nrows, ncols, entries, p)
    images = []
    nimg = 0
    for dj, v in G.pairs():
        if dj > degree:
            continue
        n_src = dim_homogeneous(n, dj)
        support = [(i, mu, _mod(x, p)) for i in range(n) for mu in range(n_src) if (x := v[i * n_src + mu])]
        for nu in monomial_basis(n, degree - dj):
            table = multiplication_table(n, dj, nu)
            images.extend((nimg, i * N + table[mu], x) for i, mu, x in support)
            nimg += 1
    lower = sparse_rank_mod_p(nimg, ncols, images, p)
    if lower == upper:
        return DimensionCertificate(degree, upper, lower, "modular sandwich")
    rows, _ = _constraint_rows(A, G.mult, degree, G.constraint)
    exact_dim = ncols - rank(rows, ncols)
    exact_images = []
    for dj, v in G.pairs():
        if dj <= degree:
            for nu in monomial_basis(n, degree - dj):
                exact_images.append(_shift(v, n, dj, nu))
    image_rank = rank(exact_images, ncols) if exact_images else 0
    return DimensionCertificate(degree, exact_dim, image_rank, "exact")
