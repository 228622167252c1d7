"""Command-line entry point.

Exit codes: 0 success or Free, 2 plus-one generated, 3 undecided at the
bound, 4 non-essential input, 1 bad input, 5 a theorem check failed,
64 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import theorems
from .arrangement import Arrangement, ArrangementError, Hyperplane, delete, ziegler_restrict
from .catalog import CATALOG, catalog
from .classify import NonEssentialError, Verdict, classify, is_free
from .combinatorics import char_poly
from .io import ArrangementFile, read, write

EXIT = {Verdict.FREE: 0, Verdict.STRICT_POG: 2, Verdict.POG: 2, Verdict.NEITHER: 3}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(64)


def _ints(h: Hyperplane) -> list[int]:
    return list(h.integer_form())


def load(source: str) -> ArrangementFile:
    """A file path, or ``catalog:NAME[:PARAM]``."""
    if source.startswith("catalog:"):
        name, _, param = source[len("catalog:"):].partition(":")
        params = (int(param),) if param else ()
        try:
            return ArrangementFile(catalog(name, *params))
        except KeyError as e:
            raise UsageError(e.args[0]) from None
    return read(source)


def resolve_index(A: Arrangement, spec: str | None) -> int:
    """An integer position or a comma/space separated form such as ``0,1,0``."""
    if spec is None:
        raise UsageError("--index is required")
    toks = spec.replace(",", " ").split()
    if len(toks) == 1:
        i = int(toks[0])
        if not 0 <= i < len(A):
            raise UsageError(f"index {i} out of range for {len(A)} hyperplanes")
        return i
    if len(toks) != A.nvars:
        raise UsageError(f"form {spec!r} needs {A.nvars} coefficients")
    try:
        return A.index([Fraction(t) for t in toks])
    except ArrangementError as e:
        raise UsageError(str(e)) from None


def _emit(args, payload: dict, human: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in human:
            print(line)


def _output(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)


def cmd_chi(args) -> int:
    A = load(args.source).arrangement
    chi = char_poly(A)
    pi = chi.poincare
    payload = {"chi": list(chi.coeffs), "chi_str": str(chi), "poincare": list(pi), "betti": list(pi)}
    lines = [f"chi(t) = {chi}", f"pi(t) coefficients = {list(pi)}"]
    if len(A):
        red = chi.reduced
        payload["chi0"] = list(red)
        payload["betti0"] = [chi.betti0(i) for i in range(A.nvars)]
        lines.append(f"chi0(t) coefficients = {list(red)}")
        lines.append(f"b0 = {payload['betti0']}")
    _emit(args, payload, lines)
    return 0


def cmd_classify(args) -> int:
    f = load(args.source)
    A = f.arrangement
    if f.mult is not None:
        cert = is_free(A, f.mult, args.bound)
        payload = {
            "verdict": "Free" if cert else "NotFreeAtBound",
            "exponents": list(cert.exponents) if cert else None,
            "multiplicity": list(f.mult),
            "bound": args.bound if args.bound is not None else sum(f.mult),
        }
        _emit(args, payload, [f"{k}: {v}" for k, v in sorted(payload.items())])
        return 0 if cert else 3
    report = classify(A, args.bound, args.hilbert)
    payload = report.to_dict()
    payload["bound"] = args.bound if args.bound is not None else len(A)
    lines = [f"verdict: {report.verdict.value}"]
    if report.exponents is not None:
        lines.append(f"{'exponents' if report.verdict is Verdict.FREE else 'poexp'}: {report.exponents}")
    if report.level is not None:
        lines.append(f"level: {report.level} (strict: {report.strict})")
    lines.append(f"generator degrees: {report.generator_degrees}")
    lines.append(f"syzygy degrees: {report.syzygy_degrees}")
    lines.append(f"generators verified to degree {report.verified_to}, Hilbert function to {report.hilbert_checked_to}")
    if report.obstruction:
        lines.append(f"obstruction: {report.obstruction}")
    _emit(args, payload, lines)
    return EXIT[report.verdict]


def cmd_triple(args) -> int:
    A = load(args.source).arrangement
    i = resolve_index(A, args.index)
    r = theorems.addition_deletion_check(A, i)
    payload = r.to_dict()
    payload["hyperplane"] = _ints(A[i])
    lines = [
        f"H = {A[i]} (index {i})",
        f"|A|, |A'|, |A^H| = {r.sizes}",
        f"exponents (A, A', A^H) = {r.exponents}",
        f"deletion verdict: {r.deletion_verdict}",
        f"conclusion: {r.conclusion}",
    ]
    _emit(args, payload, lines)
    return 0


def _derived(args, A: Arrangement, mult, extra: dict) -> int:
    text = write(A, mult)
    _output(args, text)
    if args.json:
        print(json.dumps({"file": text, **extra}, sort_keys=True))
    elif not args.output:
        sys.stdout.write(text)
    return 0


def cmd_delete(args) -> int:
    A = load(args.source).arrangement
    i = resolve_index(A, args.index)
    return _derived(args, delete(A, i), None, {"removed": _ints(A[i]), "index": i})


def cmd_restrict(args) -> int:
    A = load(args.source).arrangement
    i = resolve_index(A, args.index)
    z = ziegler_restrict(A, i)
    return _derived(args, z.restricted, None, {"hyperplane": _ints(A[i]), "index": i})


def cmd_ziegler(args) -> int:
    A = load(args.source).arrangement
    i = resolve_index(A, args.index)
    z = ziegler_restrict(A, i)
    extra = {"hyperplane": _ints(A[i]), "index": i, "multiplicity": list(z.mult), "section": list(z.section)}
    return _derived(args, z.restricted, z.mult, extra)


def cmd_filtration(args) -> int:
    A = load(args.source).arrangement
    r = theorems.free_filtration(A)
    if r.ordering is None:
        payload = {"exists": False, "ordering": None, "forms": None, "exponents": None}
        _emit(args, payload, ["no free filtration"])
        return 0
    payload = {
        "exists": True,
        "ordering": list(r.ordering),
        "forms": [_ints(A[k]) for k in r.ordering],
        "exponents": [list(e) for e in r.exponents],
    }
    lines = [f"{k + 1}: add {A[j]} -> exponents {e}" for k, (j, e) in enumerate(zip(r.ordering, r.exponents[1:]))]
    _emit(args, payload, lines)
    return 0


def cmd_free_additions(args) -> int:
    A = load(args.source).arrangement
    pool = None
    if args.pool:
        P = read(args.pool).arrangement
        if P.nvars != A.nvars:
            raise UsageError(f"pool has {P.nvars} variables, arrangement has {A.nvars}")
        pool = list(P)
    r = theorems.free_additions(A, pool)
    payload = {
        "hits": [{"form": _ints(h), "exponents": list(e)} for h, e in r.hits],
        "candidates": r.candidates,
        "skipped": [_ints(h) for h in r.skipped],
        "uniqueness_checked": r.unique_asserted,
    }
    lines = [f"{r.candidates} candidates, {len(r.hits)} free additions"]
    lines += [f"  {h}: exponents {e}" for h, e in r.hits]
    if r.skipped:
        lines.append(f"skipped {len(r.skipped)} candidates already in the arrangement")
    _emit(args, payload, lines)
    return 0


def cmd_scan(args) -> int:
    A = load(args.source).arrangement
    entries = theorems.conjecture_scan(A)
    payload = {
        "entries": [
            {
                "index": e.index,
                "form": _ints(A[e.index]),
                "d": e.d,
                "conjecture_holds": e.conjecture_holds,
                "is_root": e.is_root,
                "local_codim": e.local_codim,
                "roots_below": e.roots_below,
            }
            for e in entries
        ],
        "all_hold": all(e.conjecture_holds for e in entries),
    }
    lines = [
        f"{A[e.index]}: d = {e.d}, {'ok' if e.conjecture_holds else 'FAILS'}"
        + ("" if e.is_root else f", locally free to codim {e.local_codim}, {e.roots_below} roots below d")
        for e in entries
    ]
    _emit(args, payload, lines)
    return 0


def cmd_catalog(args) -> int:
    if not args.name:
        names = sorted(CATALOG)
        _emit(args, {"names": names}, names)
        return 0
    try:
        A = catalog(args.name, *args.params)
    except KeyError as e:
        raise UsageError(e.args[0]) from None
    return _derived(args, A, None, {"name": args.name, "params": list(args.params)})


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="plusone", description="Freeness and plus-one generation of hyperplane arrangements over Q.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, fn, index=False, output=False):
        s = sub.add_parser(name)
        s.add_argument("source", help="arrangement file or catalog:NAME[:PARAM]")
        s.add_argument("--json", action="store_true")
        if index:
            s.add_argument("--index", help="position, or a form such as 0,1,0")
        if output:
            s.add_argument("-o", "--output", help="write the derived file here")
        s.set_defaults(fn=fn)
        return s

    verb("chi", cmd_chi)
    c = verb("classify", cmd_classify)
    c.add_argument("--bound", type=int, help="generator degree bound (default |A|)")
    c.add_argument("--hilbert", type=int, help="Hilbert-function check range (default 2|A|)")
    verb("triple", cmd_triple, index=True)
    verb("delete", cmd_delete, index=True, output=True)
    verb("restrict", cmd_restrict, index=True, output=True)
    verb("ziegler", cmd_ziegler, index=True, output=True)
    verb("filtration", cmd_filtration)
    fa = verb("free-additions", cmd_free_additions)
    fa.add_argument("--pool", help="file of candidate hyperplanes in the arrangement format")
    verb("scan", cmd_scan)

    cat = sub.add_parser("catalog")
    cat.add_argument("name", nargs="?")
    cat.add_argument("params", nargs="*", type=int)
    cat.add_argument("--json", action="store_true")
    cat.add_argument("-o", "--output")
    cat.set_defaults(fn=cmd_catalog)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"plusone: {e}", file=sys.stderr)
        return 64
    except NonEssentialError as e:
        print(f"plusone: {e}", file=sys.stderr)
        return 4
    except theorems.TheoremViolation as e:
        print(f"plusone: theorem check failed: {e}", file=sys.stderr)
        return 5
    except (ArrangementError, ValueError, OSError) as e:
        print(f"plusone: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
