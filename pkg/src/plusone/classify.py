"""Free / plus-one generated / neither verdicts with certificates."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .algebra import Poly, monomial_basis, rank
from .algebra.poly import dim_homogeneous
from .arrangement import (
    Arrangement,
    ArrangementError,
    check_multiplicity,
    essentialize,
    is_essential,
    subarrangement,
    ziegler_restrict,
)
from .combinatorics import char_poly, intersection_lattice
from .derivations import (
    Derivation,
    GeneratorSet,
    SyzygySet,
    certified_dimension,
    derivation_slice,
    first_syzygies,
    generator_steps,
    minimal_generators,
    saito_check,
)


class NonEssentialError(ArrangementError):
    pass


class Verdict(str, Enum):
    FREE = "Free"
    STRICT_POG = "StrictPOG"
    POG = "POG"
    NEITHER = "NeitherAtBound"

    @property
    def is_pog(self) -> bool:
        return self in (Verdict.POG, Verdict.STRICT_POG)


@dataclass(frozen=True)
class FreenessCertificate:
    exponents: tuple[int, ...]
    basis: tuple[Derivation, ...]
    saito_constant: Fraction


@dataclass(frozen=True)
class POGCertificate:
    poexp: tuple[int, ...]
    level: int
    generators: tuple[Derivation, ...]
    degrees: tuple[int, ...]
    relation: tuple[Poly, ...]
    level_index: int
    strict: bool
    level_coefficient: Poly
    verified_to: int

    @property
    def level_element(self) -> Derivation:
        return self.generators[self.level_index]


@dataclass(frozen=True)
class ClassificationReport:
    verdict: Verdict
    certificate: FreenessCertificate | POGCertificate | None
    generator_degrees: tuple[int, ...]
    syzygy_degrees: tuple[int, ...]
    verified_to: int
    hilbert_checked_to: int
    obstruction: str | None = None
    generators: GeneratorSet | None = field(default=None, repr=False, compare=False)
    syzygies: SyzygySet | None = field(default=None, repr=False, compare=False)

    @property
    def exponents(self) -> tuple[int, ...] | None:
        c = self.certificate
        if isinstance(c, FreenessCertificate):
            return c.exponents
        if isinstance(c, POGCertificate):
            return c.poexp
        return None

    @property
    def level(self) -> int | None:
        return self.certificate.level if isinstance(self.certificate, POGCertificate) else None

    @property
    def strict(self) -> bool | None:
        return self.certificate.strict if isinstance(self.certificate, POGCertificate) else None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "exponents": list(self.exponents) if self.exponents is not None else None,
            "level": self.level,
            "generator_degrees": list(self.generator_degrees),
            "syzygy_degrees": list(self.syzygy_degrees),
            "strict": self.strict,
            "verified_to": self.verified_to,
            "hilbert_checked_to": self.hilbert_checked_to,
            "obstruction": self.obstruction,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _require_essential(A: Arrangement) -> None:
    if not is_essential(A):
        raise NonEssentialError(f"arrangement has rank {A.rank()} < {A.nvars}; essentialize first")


def free_hilbert(exponents: Sequence[int], nvars: int, k: int) -> int:
    return sum(dim_homogeneous(nvars, k - d) for d in exponents)


def pog_hilbert(poexp: Sequence[int], level: int, nvars: int, k: int) -> int:
    return (
        free_hilbert(poexp, nvars, k)
        + dim_homogeneous(nvars, k - level)
        - dim_homogeneous(nvars, k - level - 1)
    )


def _free_certificate(A: Arrangement, m: tuple[int, ...], degrees, gens) -> FreenessCertificate | None:
    if len(degrees) != A.nvars or sum(degrees) != sum(m):
        return None
    res = saito_check(A, m, gens)
    if not res.holds:
        return None
    return FreenessCertificate(tuple(degrees), tuple(gens), res.constant)


def is_free(A: Arrangement, m: Sequence[int] | None = None, bound: int | None = None) -> FreenessCertificate | None:
    """Freeness certificate, stopping as soon as the generator count or degrees rule it out."""
    _require_essential(A)
    mt = check_multiplicity(A, m)
    total = sum(mt)
    B = total if bound is None else bound
    degrees: list[int] = []
    vectors: list = []
    for _, _, new in generator_steps(A, mt, B):
        for d, v in new:
            degrees.append(d)
            vectors.append(v)
        if len(degrees) > A.nvars or sum(degrees) > total:
            return None
        if len(degrees) == A.nvars and sum(degrees) == total:
            gens = [Derivation.from_vector(A.nvars, d, v) for d, v in zip(degrees, vectors)]
            return _free_certificate(A, mt, degrees, gens)
    return None


@lru_cache(maxsize=256)
def _classify(A: Arrangement, bound: int, hilbert_to: int) -> ClassificationReport:
    n = A.nvars
    size = len(A)
    G = minimal_generators(A, bound=bound)
    degrees = G.degrees
    gens = G.generators

    def neither(reason: str, S: SyzygySet | None = None, checked: int = bound) -> ClassificationReport:
        return ClassificationReport(
            Verdict.NEITHER, None, degrees, S.degrees if S else (), bound, checked, reason, G, S
        )

    cert = _free_certificate(A, G.mult, degrees, gens)
    if cert is not None:
        for k, dim in enumerate(G.dims):
            if dim != free_hilbert(degrees, n, k):
                raise AssertionError(f"free basis but dim D_{k} = {dim} disagrees with the Hilbert function")
        return ClassificationReport(Verdict.FREE, cert, degrees, (), bound, bound, None, G, None)

    S = first_syzygies(G, bound + 1)
    if len(degrees) != n + 1:
        reason = f"{len(degrees)} minimal generators up to degree {bound} (plus-one generation needs {n + 1})"
        excess = len(S) - max(len(degrees) - n, 0)
        if len(degrees) > n and excess > 0:
            reason += f"; {len(S)} minimal first syzygies exceed {len(degrees) - n}, so pd >= 2"
        return neither(reason, S)
    if len(S) != 1:
        return neither(f"{len(S)} minimal first syzygies up to degree {bound + 1} (plus-one generation needs 1)", S)
    e = S.degrees[0]
    level = e - 1
    if level not in degrees:
        return neither(f"no generator of degree {level} to pair with the syzygy of degree {e}", S)
    poexp = list(degrees)
    poexp.remove(level)
    poexp = tuple(poexp)

    chi = char_poly(A)
    tail = poexp[1:]
    if sum(tail) != size:
        return neither(f"poexp {poexp}: sum of d_2..d_l = {sum(tail)} != |A| = {size}", S)
    b2 = chi.betti(2)
    expected_b2 = sum(a * b for a, b in combinations(tail, 2)) + level
    if b2 != expected_b2:
        return neither(f"b2 = {b2} but poexp {poexp} with level {level} predicts {expected_b2}", S)

    for k in range(hilbert_to + 1):
        want = pog_hilbert(poexp, level, n, k)
        if k < len(G.dims):
            got, spanned = G.dims[k], G.dims[k]
        else:
            c = certified_dimension(G, k)
            got, spanned = c.dim, c.image_rank
        if got != want or spanned != got:
            return neither(
                f"degree {k}: dim D = {got}, generated part {spanned}, plus-one shape predicts {want}", S, k
            )

    relation = S.relations[0]
    at_level = [j for j, d in enumerate(degrees) if d == level]
    nonzero = [j for j in at_level if relation[j]]
    level_index = nonzero[0] if nonzero else at_level[0]
    strict = bool(nonzero)
    pcert = POGCertificate(
        poexp, level, tuple(gens), degrees, relation, level_index, strict, relation[level_index], bound
    )
    verdict = Verdict.STRICT_POG if strict else Verdict.POG
    return ClassificationReport(verdict, pcert, degrees, S.degrees, bound, hilbert_to, None, G, S)


def classify(A: Arrangement, bound: int | None = None, hilbert_to: int | None = None) -> ClassificationReport:
    """Classify an essential arrangement; defaults: generators to |A|, Hilbert check to 2|A|."""
    _require_essential(A)
    B = len(A) if bound is None else bound
    if B < 1:
        raise ValueError("bound must be at least 1")
    return _classify(A, B, 2 * len(A) if hilbert_to is None else hilbert_to)


def classify_any(A: Arrangement, bound: int | None = None) -> tuple[ClassificationReport, int]:
    """Classify after quotienting by the centre; returns the report and the rank deficit."""
    E = essentialize(A)
    return classify(E, bound), A.nvars - E.nvars


def padded_exponents(report: ClassificationReport, deficit: int) -> tuple[int, ...] | None:
    """Exponents in the original ambient space: one 0 per centre direction."""
    if report.exponents is None:
        return None
    return (0,) * deficit + tuple(report.exponents)


def terao_factorization_check(A: Arrangement, report: ClassificationReport | None = None) -> bool:
    report = report or classify(A)
    if report.verdict is not Verdict.FREE:
        raise ValueError("Terao factorization applies to free arrangements only")
    return char_poly(A).factors_as(report.exponents)


@dataclass(frozen=True)
class LocalFreeness:
    holds: bool
    witnesses: tuple[tuple[int, ...], ...]
    checked: int


def is_locally_free(A: Arrangement, upto_codim: int | None = None, along: int | None = None) -> LocalFreeness:
    """Freeness of A_X for flats X of codimension <= upto_codim (X ⊂ H when ``along`` is given).

    The centre itself is excluded. Each localization is essentialized first.
    """
    L = intersection_lattice(A)
    top = L.rank - 1 if upto_codim is None else min(upto_codim, L.rank - 1)
    witnesses = []
    checked = 0
    for k in range(1, top + 1):
        for X in L.flats(k):
            if along is not None and along not in X.members:
                continue
            checked += 1
            if is_free(essentialize(subarrangement(A, X.members))) is None:
                witnesses.append(X.members)
    return LocalFreeness(not witnesses, tuple(witnesses), checked)


@lru_cache(maxsize=None)
def _restriction_table(form: tuple[Fraction, ...], degree: int) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
    """Image of each monomial of S_degree in S(H)_degree, as sparse columns."""
    from .arrangement import Hyperplane
    from .derivations import restrict_poly

    H = Hyperplane(form)
    n = len(form)
    idx = {mu: i for i, mu in enumerate(monomial_basis(n - 1, degree))} if n > 1 else {(): 0}
    out = []
    for mu in monomial_basis(n, degree):
        img = restrict_poly(Poly.monomial(mu), H)
        out.append(tuple(sorted((idx[e], c) for e, c in img.terms.items())))
    return tuple(out)


def ziegler_image_rank(A: Arrangement, i: int, degree: int) -> tuple[int, int]:
    """(dim D(A^H, m^H)_k, dim pi(D_H(A)_k)) at k = degree."""
    zr = ziegler_restrict(A, i)
    n = A.nvars
    H = A[i]
    p = H.pivot
    target = derivation_slice(zr.restricted, zr.mult, degree)
    source = derivation_slice(A, None, degree, constraint=i)
    table = _restriction_table(H.form, degree)
    N = dim_homogeneous(n, degree)
    M = dim_homogeneous(n - 1, degree)
    rows = []
    for v in source.vectors:
        out = [Fraction(0)] * ((n - 1) * M)
        for slot, j in enumerate(j for j in range(n) if j != p):
            for mu in range(N):
                c = v[j * N + mu]
                if c:
                    for r, x in table[mu]:
                        out[slot * M + r] += c * x
        rows.append(target.project(out))
    return target.dim, rank(rows, target.dim) if rows and target.dim else 0


@dataclass(frozen=True)
class YoshinagaReport:
    ziegler_exponents: tuple[int, int]
    b20: int
    gap: int
    cokernel_dim: int | None
    cokernel_checked_to: int | None

    @property
    def predicts_free(self) -> bool:
        return self.gap == 0


def yoshinaga_criterion(A: Arrangement, i: int, coker_to: int | None = None, cokernel: bool = True) -> YoshinagaReport:
    """Compare b2^0(A) with the product of the Ziegler restriction's exponents (l = 3).

    With ``cokernel`` the Ziegler map's cokernel is also summed up to degree
    ``coker_to`` (default 2|A|); its total length should equal the gap.
    """
    if A.nvars != 3:
        raise ArrangementError("this criterion is stated for l = 3")
    zr = ziegler_restrict(A, i)
    cert = is_free(zr.restricted, zr.mult)
    if cert is None:
        raise AssertionError("a rank-2 multiarrangement must be free")
    d1, d2 = sorted(cert.exponents)
    b20 = char_poly(A).betti0(2)
    if not cokernel:
        return YoshinagaReport((d1, d2), b20, b20 - d1 * d2, None, None)
    top = 2 * len(A) if coker_to is None else coker_to
    coker = 0
    for k in range(top + 1):
        dim_t, dim_img = ziegler_image_rank(A, i, k)
        coker += dim_t - dim_img
    return YoshinagaReport((d1, d2), b20, b20 - d1 * d2, coker, top)
