"""Brute-force reference computations sharing no code with the package.

Polynomials are dicts from exponent tuples to Fractions. Divisibility by
alpha^m uses long division in the pivot variable of alpha, whose leading
coefficient is a nonzero constant, so the remainder is unique.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement


def monomials(n: int, d: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return sorted(set(out))


def pmul(f: dict, g: dict) -> dict:
    out: dict = {}
    for a, x in f.items():
        for b, y in g.items():
            e = tuple(i + j for i, j in zip(a, b))
            out[e] = out.get(e, 0) + x * y
    return {e: c for e, c in out.items() if c}


def ppow(f: dict, k: int, n: int) -> dict:
    out = {(0,) * n: Fraction(1)}
    for _ in range(k):
        out = pmul(out, f)
    return out


def remainder(f: dict, alpha: list, m: int) -> dict:
    """f mod alpha^m, reducing the pivot-variable degree below m."""
    n = len(alpha)
    p = next(i for i, a in enumerate(alpha) if a)
    lin = {tuple(int(i == j) for j in range(n)): Fraction(a) for i, a in enumerate(alpha) if a}
    g = ppow(lin, m, n)
    lead = Fraction(alpha[p]) ** m
    r = dict(f)
    while True:
        top = [e for e in r if e[p] >= m]
        if not top:
            return r
        e = max(top, key=lambda t: t[p])
        c = r[e] / lead
        shift = tuple(x - (m if i == p else 0) for i, x in enumerate(e))
        for b, y in g.items():
            t = tuple(i + j for i, j in zip(shift, b))
            v = r.get(t, 0) - c * y
            if v:
                r[t] = v
            else:
                r.pop(t, None)


def elimination_rank(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows if any(r)]
    rk = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        pr = rows[rk]
        for i in range(len(rows)):
            if i != rk and rows[i][c]:
                f = rows[i][c] / pr[c]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        rk += 1
    return rk


def derivation_dim(forms: list[list], mult: list[int], d: int) -> int:
    """dim of {theta in (S_d)^n : alpha_H^m(H) | theta(alpha_H) for all H}."""
    n = len(forms[0])
    mons = monomials(n, d)
    # map each basis derivation x^mu d_i to the concatenated remainders
    keys: dict = {}
    images = []
    for i in range(n):
        for mu in mons:
            img = []
            for alpha, m in zip(forms, mult):
                if not alpha[i]:
                    img.append({})
                    continue
                img.append(remainder({mu: Fraction(alpha[i])}, alpha, m))
            images.append(img)
            for h, r in enumerate(img):
                for e in r:
                    keys.setdefault((h, e), len(keys))
    rows = []
    for img in images:
        row = [Fraction(0)] * len(keys)
        for h, r in enumerate(img):
            for e, c in r.items():
                row[keys[(h, e)]] = c
        rows.append(row)
    # the divisibility map is linear; the slice is its kernel
    return len(images) - elimination_rank(rows) if keys else len(images)
