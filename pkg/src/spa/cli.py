"""``spa`` command line: one computation per invocation.

Exit codes: 0 success, 1 a mathematical "no" (violation, non-member, failed
check), 2 usage or input errors, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .algebra import AlgebraPresentation, default_budget
from .coeffs import QMode
from .dims import check_elimination_lemma, eliminate, gk_dimension, hilbert_truncated
from .errors import BudgetExceeded, SpaError
from .groebner import LEFT, TWO_SIDED, buchberger, normal_form, pbw_consistency
from .orderings import DegRevLex, Elimination, PaperOrdering, is_graded, parse_ordering, verify_ordering_axioms
from .parsing import parse_polynomial, read_polynomials
from .quantum import associated_graded, build_algebra

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _parse_q(text: str) -> QMode:
    text = text.strip()
    if text.startswith("q="):
        text = text[2:]
    return QMode.parse(text)


def _setup(args) -> AlgebraPresentation:
    A = build_algebra(args.algebra, _parse_q(args.q))
    A.rewrite_budget = args.budget
    if getattr(args, "ordering", None):
        A = A.with_ordering(parse_ordering(args.ordering, A))
    return A


def _ordering_name(A: AlgebraPresentation) -> str:
    spec = A.ordering
    if isinstance(spec, Elimination):
        return "elim:" + ",".join(str(A.generators[i]) for i in sorted(spec.eliminated))
    return spec.name


def _require_solvable(A: AlgebraPresentation):
    rep = A.check_solvable()
    if not rep.passed:
        pair, kind, detail = rep.violations[0]
        raise UsageError(f"ordering {_ordering_name(A)} does not make {A.name} solvable "
                         f"({kind} on {pair[0]}, {pair[1]}: {detail})")
    if isinstance(A.ordering, PaperOrdering):
        _warn("the paper word ordering is not a monomial ordering on this algebra; "
              "results are only as good as the step budget allows")


def _warn(msg):
    print(f"warning: {msg}", file=sys.stderr)


def _read_gens(args, A):
    if not getattr(args, "gens", None):
        return []
    if args.gens == "-":
        return read_polynomials(sys.stdin, A)
    with open(args.gens, encoding="utf-8") as fh:
        return read_polynomials(fh, A)


def _header(A, side=None) -> str:
    parts = [f"algebra: {A.name}", f"ordering: {_ordering_name(A)}"]
    if side:
        parts.append(f"side: {side}")
    parts.append(f"q: {A.qmode}")
    return "# " + "; ".join(parts)


def _emit(args, text_lines: Sequence[str], payload: dict):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _rule_lines(A: AlgebraPresentation) -> list[tuple[str, str]]:
    out = []
    for (i, j), r in sorted(A.rules.items()):
        lhs = f"{A.generators[j]}*{A.generators[i]}"
        head = A.unit(i)
        head = tuple(a + b for a, b in zip(head, A.unit(j)))
        terms = {head: r.lam}
        terms.update(r.tail)
        out.append((lhs, str(A.element(terms))))
    return out


# subcommands


def cmd_check_solvable(args) -> int:
    A = _setup(args)
    rep = A.check_solvable()
    lines = [f"solvable: {'yes' if rep.passed else 'no'}", f"pairs checked: {rep.pairs_checked}"]
    lines += [f"violation: {p[0]}, {p[1]}: {kind}: {detail}" for p, kind, detail in rep.violations]
    lines += [f"note: {n}" for n in rep.notes]
    _emit(args, lines, {"command": "check-solvable", "algebra": A.name, "ordering": rep.ordering,
                        "q": str(A.qmode), "solvable": rep.passed,
                        "pairs_checked": rep.pairs_checked,
                        "violations": [{"pair": list(p), "kind": k, "detail": d}
                                       for p, k, d in rep.violations],
                        "notes": list(rep.notes)})
    return EXIT_OK if rep.passed else EXIT_FALSE


def cmd_verify_ordering(args) -> int:
    A = _setup(args)
    rep = verify_ordering_axioms(A, A.ordering, args.samples, seed=args.seed)
    lines = [f"ordering: {rep.ordering}", f"axioms: {'pass' if rep.passed else 'fail'}"]
    lines += [f"checked {k}: {v}" for k, v in rep.checked.items()]
    lines += [f"violation: {v.condition}: {v.detail}" for v in rep.violations]
    lines += [f"warning: {w}" for w in rep.warnings]
    _emit(args, lines, {"command": "verify-ordering", "algebra": A.name, "ordering": rep.ordering,
                        "q": str(A.qmode), "passed": rep.passed, "checked": rep.checked,
                        "violations": [{"condition": v.condition, "detail": v.detail}
                                       for v in rep.violations],
                        "warnings": rep.warnings})
    return EXIT_OK if rep.passed else EXIT_FALSE


def _basis(args, A):
    _require_solvable(A)
    gens = _read_gens(args, A)
    return buchberger(A, gens, args.side, budget=args.budget)


def cmd_gb(args) -> int:
    A = _setup(args)
    G = _basis(args, A)
    elems = [str(g) for g in G.elements]
    _emit(args, [_header(A, args.side)] + elems,
          {"command": "gb", "algebra": A.name, "ordering": _ordering_name(A), "side": args.side,
           "q": str(A.qmode), "basis": elems})
    return EXIT_OK


def _poly(args, A):
    if args.poly is None:
        raise UsageError("--poly is required")
    return parse_polynomial(args.poly, A)


def cmd_nf(args) -> int:
    A = _setup(args)
    G = _basis(args, A)
    f = _poly(args, A)
    r = normal_form(A, f, G.elements, budget=args.budget)
    _emit(args, [str(r)], {"command": "nf", "algebra": A.name, "ordering": _ordering_name(A),
                           "side": args.side, "q": str(A.qmode), "input": str(f),
                           "normal_form": str(r)})
    return EXIT_OK


def cmd_member(args) -> int:
    A = _setup(args)
    G = _basis(args, A)
    f = _poly(args, A)
    r = normal_form(A, f, G.elements, budget=args.budget)
    member = not r
    _emit(args, [f"member: {'yes' if member else 'no'}"] + ([] if member else [f"normal form: {r}"]),
          {"command": "member", "algebra": A.name, "ordering": _ordering_name(A), "side": args.side,
           "q": str(A.qmode), "input": str(f), "member": member, "normal_form": str(r)})
    return EXIT_OK if member else EXIT_FALSE


def _graded_view(A):
    if not is_graded(A.ordering):
        _warn(f"dimension counts need a degree-compatible ordering; using degrevlex "
              f"instead of {_ordering_name(A)}")
        return A.with_ordering(DegRevLex())
    return A


def cmd_gkdim(args) -> int:
    A = _graded_view(_setup(args))
    G = _basis(args, A)
    d = gk_dimension(A, G)
    _emit(args, [str(d)], {"command": "gkdim", "algebra": A.name, "ordering": _ordering_name(A),
                           "side": args.side, "q": str(A.qmode), "gkdim": d})
    return EXIT_OK


def cmd_hilbert(args) -> int:
    A = _graded_view(_setup(args))
    G = _basis(args, A)
    h = hilbert_truncated(A, G, args.dmax)
    _emit(args, [" ".join(str(v) for v in h)],
          {"command": "hilbert", "algebra": A.name, "ordering": _ordering_name(A),
           "side": args.side, "q": str(A.qmode), "dmax": args.dmax, "counts": h})
    return EXIT_OK


def cmd_eliminate(args) -> int:
    A = _graded_view(_setup(args))
    _require_solvable(A)
    gens = _read_gens(args, A)
    if args.lemma:
        G = buchberger(A, gens, args.side, budget=args.budget)
        rep = check_elimination_lemma(A, G, budget=args.budget)
        for rec in rep.records:
            print(json.dumps(rec, sort_keys=True))
        print(json.dumps({"gkdim": rep.gkdim, "passed": rep.passed,
                          "failures": [{"keep": k, "reason": why} for k, why in rep.failures]},
                         sort_keys=True))
        return EXIT_OK if rep.passed else EXIT_FALSE
    if not args.keep:
        raise UsageError("--keep is required (or use --lemma)")
    names = [s for item in args.keep for s in _split_keep(item)]
    keep = sorted({A.generator_position(s) for s in names})
    res = eliminate(A, gens, keep, side=args.side, budget=args.budget, details=True)
    elems = [str(f) for f in res.elements]
    kept = ", ".join(str(A.generators[i]) for i in keep)
    lines = [f"# keep: {kept}; method: {res.method}"] + (elems or ["(empty: L meets the span trivially)"]
                                                         if res.determined else ["undetermined"])
    _emit(args, lines, {"command": "eliminate", "algebra": A.name, "side": args.side,
                        "q": str(A.qmode), "keep": [str(A.generators[i]) for i in keep],
                        "method": res.method, "determined": res.determined, "elements": elems})
    return EXIT_OK if res.determined else EXIT_BUDGET


def _split_keep(text):
    from .orderings import _split_generators
    return [s for s in _split_generators(text) if s]


def cmd_pbw_check(args) -> int:
    A = _setup(args)
    rep = pbw_consistency(A, budget=args.budget)
    lines = [f"pbw-consistent: {'yes' if rep.passed else 'no'}",
             f"triples checked: {rep.triples_checked}"]
    lines += [f"failure: {' '.join(t)}: difference {d}" for t, d in rep.failures]
    _emit(args, lines, {"command": "pbw-check", "algebra": A.name, "q": str(A.qmode),
                        "passed": rep.passed, "triples_checked": rep.triples_checked,
                        "failures": [{"triple": list(t), "difference": d} for t, d in rep.failures]})
    return EXIT_OK if rep.passed else EXIT_FALSE


def cmd_gr(args) -> int:
    A = _setup(args)
    B = associated_graded(A)
    rep = B.check_solvable()
    rules = _rule_lines(B)
    lines = [_header(B)] + [f"{lhs} = {rhs}" for lhs, rhs in rules]
    lines.append(f"solvable: {'yes' if rep.passed else 'no'}")
    _emit(args, lines, {"command": "gr", "algebra": B.name, "ordering": B.ordering.name,
                        "q": str(B.qmode), "relations": [{"lhs": l, "rhs": r} for l, r in rules],
                        "solvable": rep.passed})
    return EXIT_OK if rep.passed else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default="uq+ 2",
                        help='"uq+ N", "uq- N", "uq+ N (x) uq- N" or "gr(uq+ N)"')
    common.add_argument("--q", default="symbolic", help="symbolic, or a rational such as 2 or q=3/2")
    common.add_argument("--ordering", default=None,
                        help="paper, lexword, graded, degrevlex, elim:<generators>, tensor")
    common.add_argument("--budget", type=int, default=None, help="step budget (default $SPA_BUDGET)")
    common.add_argument("--format", choices=("text", "json"), default="text")

    ideal = argparse.ArgumentParser(add_help=False)
    ideal.add_argument("--gens", help="file with one polynomial per line ('-' for stdin)")
    ideal.add_argument("--side", choices=(LEFT, TWO_SIDED), default=LEFT)

    p = argparse.ArgumentParser(prog="spa", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("check-solvable", parents=[common]).set_defaults(func=cmd_check_solvable)
    s = sub.add_parser("verify-ordering", parents=[common])
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify_ordering)
    sub.add_parser("gb", parents=[common, ideal]).set_defaults(func=cmd_gb)
    for name, fn in (("nf", cmd_nf), ("member", cmd_member)):
        s = sub.add_parser(name, parents=[common, ideal])
        s.add_argument("--poly", help="polynomial to reduce")
        s.set_defaults(func=fn)
    sub.add_parser("gkdim", parents=[common, ideal]).set_defaults(func=cmd_gkdim)
    s = sub.add_parser("hilbert", parents=[common, ideal])
    s.add_argument("--dmax", type=int, default=6)
    s.set_defaults(func=cmd_hilbert)
    s = sub.add_parser("eliminate", parents=[common, ideal])
    s.add_argument("--keep", action="append", help="generators to keep, e.g. x[1,3] (repeatable)")
    s.add_argument("--lemma", action="store_true",
                   help="check the elimination lemma over all subsets; JSON lines output")
    s.set_defaults(func=cmd_eliminate)
    sub.add_parser("pbw-check", parents=[common]).set_defaults(func=cmd_pbw_check)
    sub.add_parser("gr", parents=[common]).set_defaults(func=cmd_gr)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget is None:
        args.budget = default_budget()
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: budget exhausted: {exc}", file=sys.stderr)
        partial = getattr(exc, "partial", None)
        if partial:
            print(f"partial result: {len(partial)} elements", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, SpaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
