"""Executable deletion/addition theorems and the constructive deletion.

Every checker evaluates hypotheses, computes the conclusion independently and
raises ``TheoremViolation`` when a satisfied hypothesis meets a failed
conclusion. Such a failure can only mean an engine bug.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .algebra import Poly, monomial_basis, nullspace, rank, solve
from .algebra.poly import dim_homogeneous
from .arrangement import (
    Arrangement,
    ArrangementError,
    Hyperplane,
    add,
    delete,
    essentialize,
    restrict,
    subarrangement,
    ziegler_restrict,
)
from .classify import (
    ClassificationReport,
    FreenessCertificate,
    POGCertificate,
    Verdict,
    classify,
    is_free,
)
from .combinatorics import _span_test, char_poly, divides, intersection_lattice
from .derivations import (
    Derivation,
    derivation_slice,
    euler_derivation,
    is_member,
    restrict_derivation,
    restrict_poly,
    saito_check,
    section_polynomial,
    theta_EH,
)


class TheoremViolation(AssertionError):
    pass


def _ensure(cond: bool, message: str) -> None:
    if not cond:
        raise TheoremViolation(message)


def free_exponents(A: Arrangement) -> tuple[int, ...] | None:
    """Exponents if A is free (zeros for centre directions), else None."""
    if len(A) == 0:
        return (0,) * A.nvars
    E = essentialize(A)
    cert = is_free(E)
    if cert is None:
        return None
    return tuple(sorted((0,) * (A.nvars - E.nvars) + cert.exponents))


def _without(exps: Sequence[int], d: int) -> list[int]:
    out = list(exps)
    out.remove(d)
    return out


# -- addition-deletion ----------------------------------------------------------


@dataclass(frozen=True)
class TripleReport:
    index: int
    sizes: tuple[int, int, int]
    chi: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    d: int
    exponents: tuple[tuple[int, ...] | None, tuple[int, ...] | None, tuple[int, ...] | None]
    deletion_verdict: str
    holds: tuple[bool, bool, bool]
    pattern: int | None
    conclusion: str

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "sizes": list(self.sizes),
            "chi": [list(c) for c in self.chi],
            "d": self.d,
            "exponents": [list(e) if e is not None else None for e in self.exponents],
            "deletion_verdict": self.deletion_verdict,
            "holds": list(self.holds),
            "pattern": self.pattern,
            "conclusion": self.conclusion,
        }


def addition_deletion_check(A: Arrangement, i: int) -> TripleReport:
    """Classify (A, A', A^H) and enforce 'two of three imply the third'."""
    Ap = delete(A, i)
    AH, _ = restrict(A, i)
    E, Ep, Eh = free_exponents(A), free_exponents(Ap), free_exponents(AH)
    chis = (char_poly(A).coeffs, char_poly(Ap).coeffs, char_poly(AH).coeffs)
    _ensure(
        all(a == b - c for a, b, c in zip(chis[0], chis[1], chis[2] + (0,))),
        "deletion-restriction identity fails",
    )

    def matches(d: int) -> tuple[bool, bool, bool]:
        h1 = E is not None and d in E
        h2 = Ep is not None and E is not None and d in E and sorted(_without(E, d) + [d - 1]) == list(Ep)
        h3 = Eh is not None and E is not None and d in E and sorted(_without(E, d)) == list(Eh)
        return h1, h2, h3

    pattern = None
    conclusion = "no two hold"
    if E is not None and Ep is not None:
        # moreover clause: both free forces all three
        d = next((d for d in set(E) if sorted(_without(E, d) + [d - 1]) == list(Ep)), None)
        _ensure(d is not None, f"A and A' free with unrelated exponents {E} / {Ep}")
        _ensure(Eh is not None and sorted(_without(E, d)) == list(Eh), f"A, A' free but A^H exponents {Eh}")
        pattern, conclusion = d, "all three hold"
    elif E is not None and Eh is not None and Counter(Eh) <= Counter(E):
        d = next(iter(Counter(E) - Counter(Eh)))
        _ensure(Ep is not None, f"(1),(3) hold with d_l = {d} but A' is not free")
        pattern, conclusion = d, "(1),(3) imply (2)"
    elif Ep is not None and Eh is not None and Counter(Eh) <= Counter(Ep):
        d = next(iter(Counter(Ep) - Counter(Eh))) + 1
        _ensure(E is not None and sorted(list(Eh) + [d]) == list(E), "(2),(3) hold but A is not free as predicted")
        pattern, conclusion = d, "(2),(3) imply (1)"
    holds = matches(pattern) if pattern is not None else (E is not None, Ep is not None, Eh is not None)
    if pattern is None and E is not None and Ep is None:
        conclusion = "(1) holds; (2) and (3) fail together"
    if Ap.rank() == Ap.nvars:
        dv = classify(Ap).verdict.value
    else:
        dv = Verdict.FREE.value if Ep is not None else "non-essential"
    return TripleReport(
        i, (len(A), len(Ap), len(AH)), chis, len(Ap) - len(AH), (E, Ep, Eh), dv, holds, pattern, conclusion
    )


# -- division -------------------------------------------------------------------


@dataclass(frozen=True)
class DivisionReport:
    restriction_free: bool
    divides: bool
    applies: bool
    arrangement_free: bool


def division_check(A: Arrangement, i: int) -> DivisionReport:
    AH, _ = restrict(A, i)
    rfree = free_exponents(AH) is not None
    div = divides(char_poly(AH).poincare, char_poly(A).poincare)
    afree = free_exponents(A) is not None
    if rfree and div:
        _ensure(afree, "A^H free and pi(A^H) | pi(A), yet A is not free")
    return DivisionReport(rfree, div, rfree and div, afree)


# -- MAT / BCH -------------------------------------------------------------------


@dataclass(frozen=True)
class AdditionPrediction:
    d: int
    restriction_size: int
    base_exponents: tuple[int, ...]
    rule: str | None
    predicted_free: tuple[int, ...] | None
    predicted_poexp: tuple[int, ...] | None
    predicted_level: int | None
    observed: ClassificationReport | None
    confirmed: bool | None


def _added(Ap: Arrangement, h) -> tuple[Arrangement, int]:
    if not isinstance(h, Hyperplane):
        h = Hyperplane.from_form(h)
    A = add(Ap, h)
    return A, len(A) - 1


def mat_bch_check(Ap: Arrangement, h) -> AdditionPrediction:
    exps = free_exponents(Ap)
    if exps is None:
        raise ValueError("the base arrangement must be free")
    A, i = _added(Ap, h)
    nH = len(restrict(A, i)[0])
    d = len(Ap) - nH
    dl1, dl = exps[-2], exps[-1]
    _ensure(not dl1 < d < dl, f"d = {d} strictly between d_(l-1) = {dl1} and d_l = {dl}")
    if d == dl:
        pred, rule = tuple(sorted(exps[:-1] + (dl + 1,))), "MAT"
    elif dl1 <= d < dl:
        pred, rule = tuple(sorted(exps[:-2] + (dl1 + 1, dl))), "BCH"
    else:
        return AdditionPrediction(d, nH, exps, None, None, None, None, None, None)
    got = free_exponents(A)
    _ensure(got == pred, f"{rule} predicts free {pred}, engine finds {got}")
    return AdditionPrediction(d, nH, exps, rule, pred, None, None, None, True)


def addition_classify(Ap: Arrangement, h) -> AdditionPrediction:
    """Predicted verdict for a free arrangement plus one hyperplane, checked against classify.

    For l = 3 the plane-arrangement rule applies without the hypothesis on d.
    """
    exps = free_exponents(Ap)
    if exps is None:
        raise ValueError("the base arrangement must be free")
    A, i = _added(Ap, h)
    n = A.nvars
    nH = len(restrict(A, i)[0])
    d = len(Ap) - nH
    if n == 3:
        rule = "plane addition"
    elif d >= exps[-3]:
        rule = "addition"
    else:
        return AdditionPrediction(d, nH, exps, None, None, None, None, None, None)
    poexp = tuple(sorted(exps[:-2] + (exps[-2] + 1, exps[-1] + 1)))
    level = exps[-2] + exps[-1] - len(A) + nH + 1
    if n == 3:
        _ensure(level == nH - 1, "level formulas disagree for l = 3")
    report = classify(A)
    if report.verdict is Verdict.FREE:
        got = report.exponents
        ok = any(sorted(_without(exps, e) + [e + 1]) == list(got) for e in set(exps))
        _ensure(ok, f"addition is free with {got}, not a one-step raise of {exps}")
    else:
        _ensure(
            report.verdict is Verdict.STRICT_POG and report.exponents == poexp and report.level == level,
            f"predicted StrictPOG {poexp} level {level}, engine finds {report.to_dict()}",
        )
    return AdditionPrediction(d, nH, exps, rule, None, poexp, level, report, True)


# -- constructive deletion ---------------------------------------------------------


def _lift(f: Poly, H: Hyperplane) -> Poly:
    """Polynomial on H (coordinates x_j, j != pivot) viewed in S."""
    p = H.pivot
    n = H.nvars
    terms = {}
    for e, c in f.terms.items():
        full = list(e[:p]) + [0] + list(e[p:])
        terms[tuple(full)] = c
    return Poly(n, terms)


@dataclass(frozen=True)
class ConstructedDeletion:
    free: FreenessCertificate | None
    pog: POGCertificate | None
    basis: tuple[Derivation, ...]
    coefficients: tuple[Poly, ...]
    section_poly: Poly
    phi: Derivation | None


def deletion_construct_pog(A: Arrangement, i: int) -> ConstructedDeletion:
    """Build D(A') from a basis of D(A): either a free basis or the plus-one data.

    theta_E^H is expanded in the Ziegler images of a basis of D_H(A); lifting
    the coefficients gives sum f_j theta_j - Q' theta_E divisible by alpha_H.
    """
    report = classify(A)
    if report.verdict is not Verdict.FREE:
        raise ValueError("the arrangement must be free")
    n = A.nvars
    H = A[i]
    aH = H.poly()
    theta_E = euler_derivation(n)
    basis = list(report.certificate.basis)
    degs = list(report.certificate.exponents)
    k0 = report.generators.euler_index
    _ensure(k0 is not None, "free basis lacks the Euler derivation")
    others = [(d, th) for k, (d, th) in enumerate(zip(degs, basis)) if k != k0]
    # move into D_H(A): theta - (theta(alpha_H)/alpha_H) theta_E
    projected = []
    for d, th in others:
        q = th.apply_form(H.form).exact_div(aH)
        projected.append((d, th - theta_E * q))
    zr = ziegler_restrict(A, i)
    images = [restrict_derivation(th, H) for _, th in projected]
    target = theta_EH(A, i)
    dt = len(A) - len(zr.restricted)
    m = n - 1
    N = dim_homogeneous(m, dt)
    cols, labels = [], []
    for j, ((d, _), img) in enumerate(zip(projected, images)):
        if d > dt:
            continue
        for nu in monomial_basis(m, dt - d):
            cols.append((img * Poly.monomial(nu)).vector(dt))
            labels.append((j, nu))
    rhs = target.vector(dt)
    sol = solve([list(r) for r in zip(*cols)] if cols else [[] for _ in range(m * N)], rhs, len(cols))
    _ensure(sol is not None, "theta_E^H is not in the span of the Ziegler images")
    fbar = [dict() for _ in projected]
    for c, (j, nu) in zip(sol, labels):
        if c:
            fbar[j][nu] = c
    fs = [_lift(Poly(m, t), H) for t in fbar]
    qprime = section_polynomial(A, zr)
    combo = Derivation.zero(n) - theta_E * qprime
    for f, (_, th) in zip(fs, projected):
        combo = combo + th * f
    witness = next((j for j, (d, _) in enumerate(projected) if d == dt and fs[j]), None)
    basis_out = (theta_E,) + tuple(th for _, th in projected)
    if witness is not None:
        psi = combo.exact_div(aH)
        new = list(basis_out)
        new[witness + 1] = psi
        Ap = delete(A, i)
        res = saito_check(Ap, None, new)
        _ensure(res.holds, "replacement basis fails Saito's criterion for A'")
        exps = tuple(sorted([1] + [d if j != witness else d - 1 for j, (d, _) in enumerate(projected)]))
        free = FreenessCertificate(exps, tuple(new), res.constant)
        return ConstructedDeletion(free, None, basis_out, tuple(fs), qprime, None)
    low = Derivation.zero(n) - theta_E * qprime
    for f, (d, th) in zip(fs, projected):
        if d < dt:
            low = low + th * f
    phi = low.exact_div(aH)
    Ap = delete(A, i)
    _ensure(is_member(phi, Ap), "constructed level element is not in D(A')")
    _ensure(not is_member(phi, A), "constructed level element already lies in D(A)")
    level = len(Ap) - len(zr.restricted)
    _ensure(phi.degree == level, f"level element has degree {phi.degree}, expected {level}")
    gens = basis_out + (phi,)
    relation = (qprime,) + tuple(-f for f in fs) + (aH,)
    total = Derivation.zero(n)
    for r, g in zip(relation, gens):
        total = total + g * r
    _ensure(total.is_zero(), "constructed relation does not vanish")
    poexp = tuple(sorted(degs))
    cert = POGCertificate(
        poexp, level, gens, (1,) + tuple(d for d, _ in projected) + (level,), relation,
        len(gens) - 1, True, aH, report.verified_to,
    )
    return ConstructedDeletion(None, cert, basis_out, tuple(fs), qprime, phi)


def span_check(A: Arrangement, i: int, phi: Derivation, bound: int) -> bool:
    """D(A') = D(A) + S phi in every degree up to ``bound``."""
    Ap = delete(A, i)
    n = A.nvars
    for k in range(bound + 1):
        target = derivation_slice(Ap, None, k)
        rows = [target.project(list(v)) for v in derivation_slice(A, None, k).vectors]
        if k >= phi.degree:
            for nu in monomial_basis(n, k - phi.degree):
                rows.append(target.project((phi * Poly.monomial(nu)).vector(k)))
        if (rank(rows, target.dim) if rows and target.dim else 0) != target.dim:
            return False
    return True


# -- relative criteria -------------------------------------------------------------


@dataclass(frozen=True)
class RelativeReport:
    d: int
    branch1: bool
    branch2: bool
    branch2_literal: bool
    large_level: bool
    large_level_holds: bool | None
    arrangement_free: bool
    deletion: ClassificationReport | None
    note: str = ""


def _level_choice(A: Arrangement, i: int, pog: POGCertificate) -> tuple[bool, Fraction | Poly | None]:
    """Make every generator but one level element lie in D(A); report whether it stays a level element.

    With phi(alpha_H) ≡ c B and theta_j(alpha_H) ≡ g_j B modulo alpha_H, the
    replacement theta_j - (g_j / c) phi lies in D(A) and moves r_j g_j / c
    onto phi's relation coefficient.
    """
    H = A[i]
    gens = pog.generators
    d = pog.level
    outside = [j for j, g in enumerate(gens) if pog.degrees[j] == d and not is_member(g, A)]
    if not outside:
        return False, None
    k = outside[0]
    phi_res = restrict_poly(gens[k].apply_form(H.form), H)
    coeff = pog.relation[k]
    for j, g in enumerate(gens):
        if j == k or is_member(g, A):
            continue
        r = restrict_poly(g.apply_form(H.form), H)
        q, rem = r.divmod(phi_res)
        if rem:
            return False, None
        c = _lift(q, H)
        if not is_member(g - gens[k] * c, A):
            return False, None
        coeff = coeff + pog.relation[j] * c
    return bool(coeff), coeff


def relative_criterion(A: Arrangement, i: int) -> RelativeReport:
    Ap = delete(A, i)
    AH, _ = restrict(A, i)
    d = len(Ap) - len(AH)
    chiA = char_poly(A)
    Eh = free_exponents(AH)
    b1 = Eh is not None and divides(char_poly(AH).coeffs, chiA.coeffs)
    E = free_exponents(A)
    afree = E is not None
    deletion = classify(Ap) if Ap.rank() == Ap.nvars else None
    b2 = b2_literal = False
    if deletion is not None and deletion.verdict is Verdict.STRICT_POG and deletion.level == d:
        cert = deletion.certificate
        b2, _ = _level_choice(A, i, cert)
        big = derivation_slice(Ap, None, d)
        small = derivation_slice(A, None, d)
        b2_literal = small.dim == big.dim or big.dim == 1
        if b2:
            _ensure(afree and E == cert.poexp, f"branch (2) holds but exp(A) = {E}, POexp(A') = {cert.poexp}")
    if b1:
        _ensure(afree, "branch (1) holds but A is not free")
        Ep = free_exponents(Ap)
        _ensure(
            Ep is not None and sorted((Counter(E) & Counter(Ep)).elements()) == list(Eh),
            "branch (1): exp(A) ∩ exp(A') differs from exp(A^H)",
        )
    _ensure(afree == (b1 or b2), f"A free = {afree} but branch (1) = {b1}, branch (2) = {b2}")

    roots = chiA.roots()
    large = len(roots) == A.nvars and all(r.denominator == 1 for r in roots) and all(d > r for r in roots)
    large_holds = None
    if large:
        exps = tuple(int(r) for r in roots)
        large_holds = (
            deletion is not None
            and deletion.verdict is Verdict.STRICT_POG
            and deletion.exponents == exps
        )
        _ensure(afree == large_holds, f"large-level criterion: A free = {afree}, A' strict POG {exps} = {large_holds}")
        if afree:
            _ensure(deletion.level == d, f"large-level criterion: level {deletion.level} != {d}")
    return RelativeReport(d, b1, b2, b2_literal, large, large_holds, afree, deletion)


@dataclass(frozen=True)
class PlaneCriterionReport:
    free: bool
    patterns: tuple[frozenset, ...]


def _plane_patterns(A: Arrangement, i: int) -> frozenset:
    """Unordered pairs {a, b} for which the deletion of A[i] has the (1, a, b) shape."""
    Ap = delete(A, i)
    d = len(Ap) - len(restrict(A, i)[0])
    Ep = free_exponents(Ap)
    out = set()
    if Ep is not None:
        if d in Ep:
            rest = _without(Ep, d)
            if 1 in rest:
                out.add(tuple(sorted((_without(rest, 1)[0], d + 1))))
    elif Ap.rank() == 3:
        r = classify(Ap)
        if r.verdict.is_pog and r.exponents[0] == 1 and r.level == d:
            out.add(tuple(r.exponents[1:]))
    return frozenset(out)


def plane_relative_check(A: Arrangement) -> PlaneCriterionReport:
    """For l = 3: A free (1,a,b) iff every deletion is free (1,a,b-1) with d = b-1 or POG (1,a,b)
    with level d, iff some deletion is; a and b are unordered."""
    if A.nvars != 3:
        raise ArrangementError("this criterion is stated for l = 3")
    E = free_exponents(A)
    pats = tuple(_plane_patterns(A, i) for i in range(len(A)))
    if E is not None:
        want = tuple(E[1:])
        _ensure(E[0] == 1 and all(want in p for p in pats), f"A free {E} but deletion patterns are {pats}")
        b2 = char_poly(A).betti(2)
        _ensure(b2 == E[1] * E[2] + E[1] + E[2], "b2 identity fails for a free plane arrangement")
    for p in pats:
        for ab in p:
            _ensure(E is not None and tuple(E[1:]) == ab, f"a deletion has the {ab} shape but exp(A) = {E}")
    return PlaneCriterionReport(E is not None, pats)


# -- filtrations and additions --------------------------------------------------------


@dataclass(frozen=True)
class FiltrationResult:
    ordering: tuple[int, ...] | None
    exponents: tuple[tuple[int, ...], ...]

    @property
    def exists(self) -> bool:
        return self.ordering is not None


def _chi_admits_freeness(A: Arrangement) -> bool:
    roots = char_poly(A).roots()
    return len(roots) == A.nvars and all(r.denominator == 1 and r >= 0 for r in roots)


def free_filtration(A: Arrangement) -> FiltrationResult:
    """Search for a chain of free subarrangements adding one hyperplane at a time.

    Subsets are memoized by their index set; the characteristic polynomial
    must split over the non-negative integers before freeness is tested.
    """
    memo: dict[frozenset, tuple[int, ...] | None] = {}
    exps_of: dict[frozenset, tuple[int, ...]] = {}

    def free(sub: frozenset) -> bool:
        if sub not in exps_of:
            B = subarrangement(A, sorted(sub))
            e = free_exponents(B) if not sub or _chi_admits_freeness(B) else None
            if e is None:
                exps_of[sub] = ()
                return False
            exps_of[sub] = e
        return exps_of[sub] != ()

    def search(sub: frozenset) -> tuple[int, ...] | None:
        if not sub:
            return ()
        if sub in memo:
            return memo[sub]
        memo[sub] = None
        for h in sorted(sub):
            rest = sub - {h}
            if free(rest):
                found = search(rest)
                if found is not None:
                    memo[sub] = found + (h,)
                    break
        return memo[sub]

    full = frozenset(range(len(A)))
    if not free(full):
        return FiltrationResult(None, ())
    order = search(full)
    if order is None:
        return FiltrationResult(None, ())
    exps = tuple(exps_of[frozenset(order[:k])] if k else (0,) * A.nvars for k in range(len(order) + 1))
    return FiltrationResult(order, exps)


def default_pool(A: Arrangement) -> list[Hyperplane]:
    """Hyperplanes spanned by two rank-2 flats, excluding members of A."""
    L = intersection_lattice(A)
    flats = L.flats(2)
    seen: dict = {}
    for X, Y in combinations(flats, 2):
        span = list(X.subspace) + list(Y.subspace)
        normal, _ = nullspace(span, A.nvars)
        if len(normal) != 1:
            continue
        h = Hyperplane.from_form(normal[0])
        if h not in A and h.form not in seen:
            seen[h.form] = h
    return [seen[k] for k in sorted(seen)]


@dataclass(frozen=True)
class FreeAdditionReport:
    hits: tuple[tuple[Hyperplane, tuple[int, ...]], ...]
    candidates: int
    skipped: tuple[Hyperplane, ...]
    unique_asserted: bool


def free_additions(A: Arrangement, pool: Iterable | None = None) -> FreeAdditionReport:
    cands = default_pool(A) if pool is None else [h if isinstance(h, Hyperplane) else Hyperplane.from_form(h) for h in pool]
    skipped = tuple(h for h in cands if h in A)
    fresh, seen = [], set()
    for h in cands:
        if h not in A and h.form not in seen:
            seen.add(h.form)
            fresh.append(h)
    hits = []
    for h in fresh:
        e = free_exponents(add(A, h))
        if e is not None:
            hits.append((h, e))
    unique = False
    if A.rank() == A.nvars:
        rep = classify(A)
        if rep.verdict is Verdict.STRICT_POG and all(rep.level > x for x in rep.exponents):
            unique = True
            _ensure(len(hits) <= 1, f"{len(hits)} free additions for a high-level plus-one arrangement")
            for h, e in hits:
                _ensure(e == rep.exponents, f"free addition has exponents {e}, POexp is {rep.exponents}")
                B = add(A, h)
                nL = len(restrict(B, len(B) - 1)[0])
                _ensure(len(A) - nL == rep.level, f"|A| - |B^L| = {len(A) - nL} differs from level {rep.level}")
    return FreeAdditionReport(tuple(hits), len(fresh), skipped, unique)


# -- combinatorial deletion and roots -----------------------------------------------


@dataclass(frozen=True)
class CombinatorialDeletion:
    predicts_free: bool
    failing_flats: tuple[tuple[int, ...], ...]
    deletion_free: bool


def combinatorial_deletion_check(A: Arrangement, i: int) -> CombinatorialDeletion:
    """-1/(|A_X| - |A_X^H|) must be a root of pi(A_X; t) at every flat X ⊂ H."""
    if free_exponents(A) is None:
        raise ValueError("the arrangement must be free")
    L = intersection_lattice(A)
    forms = A.forms
    failing = []
    for X in L.flats():
        if i not in X.members:
            continue
        lines = set()
        for j in X.members:
            if j != i:
                lines.add(_closure(forms, (i, j), A.nvars))
        s = Fraction(-1, len(X.members) - len(lines))
        pi = L.poincare_at(X)
        if sum(c * s ** k for k, c in enumerate(pi)) != 0:
            failing.append(X.members)
    predicts = not failing
    dfree = free_exponents(delete(A, i)) is not None
    _ensure(predicts == dfree, f"root condition gives {predicts} but A' free = {dfree}")
    return CombinatorialDeletion(predicts, tuple(failing), dfree)


def _closure(forms, pair, n) -> tuple[int, ...]:
    contains, _ = _span_test([forms[k] for k in pair], n)
    return tuple(k for k, f in enumerate(forms) if contains(f))


@dataclass(frozen=True)
class ScanEntry:
    index: int
    d: int
    conjecture_holds: bool
    is_root: bool
    local_codim: int | None
    roots_below: int


def conjecture_scan(A: Arrangement) -> list[ScanEntry]:
    """Per hyperplane: d = |A| - |A^H| is an exponent or exceeds them all; root count below d."""
    E = free_exponents(A)
    if E is None:
        raise ValueError("the arrangement must be free")
    chi = char_poly(A)
    roots = sorted(chi.roots())
    L = intersection_lattice(A)
    out = []
    for i in range(len(A)):
        d = len(A) - len(restrict(A, i)[0])
        holds = d in E or d > E[-1]
        is_root = chi(d) == 0
        below = sum(1 for r in roots if r < d)
        kmax = None
        if not is_root:
            kmax = 0
            for k in range(1, L.rank + 1):
                ok = all(
                    free_exponents(subarrangement(A, [j for j in X.members if j != i])) is not None
                    for X in L.flats(k) if i in X.members
                )
                if not ok:
                    break
                kmax = k
            _ensure(below >= kmax + 1, f"H{i}: locally free to codim {kmax} but only {below} roots below {d}")
        out.append(ScanEntry(i, d, holds, is_root, kmax, below))
    return out
