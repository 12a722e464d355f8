"""Gelfand-Kirillov dimension, truncated Hilbert functions and elimination
for quotients A/L, all read off the leading-monomial staircase of a Groebner
basis under a degree-compatible ordering."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import AlgebraPresentation, Element
from .errors import BudgetExceeded
from .groebner import LEFT, GroebnerBasis, buchberger, normal_form
from .orderings import DegRevLex, Elimination, is_graded


def staircase(G) -> list[tuple]:
    """Minimal leading monomials of ``G`` (an antichain under division)."""
    lms = sorted({g.lm for g in G}, key=lambda m: (sum(m), m))
    out: list = []
    for m in lms:
        if not any(all(a <= b for a, b in zip(s, m)) for s in out):
            out.append(m)
    return out


def _support(m) -> frozenset:
    return frozenset(i for i, e in enumerate(m) if e)


def independent_subsets(G, n: int) -> list[frozenset]:
    """Variable subsets U with no staircase monomial supported inside U."""
    supports = [_support(s) for s in staircase(G)]
    out = []
    for r in range(n + 1):
        for U in itertools.combinations(range(n), r):
            U = frozenset(U)
            if not any(s <= U for s in supports):
                out.append(U)
    return out


def gk_dimension(A: AlgebraPresentation, G) -> int:
    """max |U| over independent subsets; ``n`` for L = 0 and 0 for L = A."""
    supports = [_support(s) for s in staircase(G)]
    n = A.ngens
    if frozenset() in supports:
        return 0
    for r in range(n, -1, -1):
        for U in itertools.combinations(range(n), r):
            U = frozenset(U)
            if not any(s <= U for s in supports):
                return r
    return 0


def monomials_of_degree(n: int, d: int) -> Iterable[tuple]:
    for combo in itertools.combinations_with_replacement(range(n), d):
        m = [0] * n
        for i in combo:
            m[i] += 1
        yield tuple(m)


def hilbert_truncated(A: AlgebraPresentation, G, dmax: int) -> list[int]:
    """Number of standard monomials of each degree 0..dmax outside LM(L)."""
    stairs = staircase(G)
    counts = []
    for d in range(dmax + 1):
        c = 0
        for m in monomials_of_degree(A.ngens, d):
            if not any(all(a <= b for a, b in zip(s, m)) for s in stairs):
                c += 1
        counts.append(c)
    return counts


def growth_degree(counts: Sequence[int], window: int = 3) -> int:
    """Least r such that the per-degree counts look like a polynomial of
    degree r - 1 over the last ``window`` values (r = 0 if they vanish).
    A diagnostic only."""
    h = list(counts)
    tail = h[-window:]
    if all(v == 0 for v in tail):
        return 0
    diff = h
    for r in range(1, len(h)):
        diff = [b - a for a, b in zip(diff, diff[1:])]
        if len(diff) < window:
            break
        if all(v == 0 for v in diff[-window:]):
            return r
    return len(h)


# Elimination


@dataclass
class EliminationResult:
    keep: frozenset
    elements: list
    method: str  # "elimination-gb", "staircase-certificate", "linear-search", "whole-basis"
    determined: bool = True
    note: str = ""


def elimination_ordering(A: AlgebraPresentation, keep: Iterable[int]) -> Elimination:
    keep = frozenset(keep)
    return Elimination(frozenset(range(A.ngens)) - keep, DegRevLex())


def eliminate(A: AlgebraPresentation, gens: Sequence[Element], keep: Iterable[int], *,
              side: str = LEFT, budget: int | None = None, search_degree: int = 6,
              details: bool = False):
    """Elements of L = ideal(gens) that only involve the generators in ``keep``.

    With the block ordering that eliminates the other generators, a
    Groebner basis meets V(T) exactly when L does, so the answer is the part
    of that basis supported in ``keep``. When the block ordering is not
    admissible for the algebra (some commutation tail would dominate), the
    answer is derived from the degree-compatible basis instead: an empty list
    when no staircase monomial lives in ``keep`` (then L meets V(T) trivially),
    otherwise the nonzero kernel of NF restricted to V(T) up to
    ``search_degree``.
    """
    keep = frozenset(keep)
    n = A.ngens
    if not keep or not keep <= frozenset(range(n)):
        raise ValueError("keep must be a nonempty subset of the generators")
    if keep == frozenset(range(n)):
        G = buchberger(A, gens, side, budget=budget)
        res = EliminationResult(keep, list(G.elements), "whole-basis")
        return res if details else res.elements
    spec = elimination_ordering(A, keep)
    B = A.with_ordering(spec)
    if B.check_solvable().passed:
        G = buchberger(B, [g.to(B) for g in gens], side, budget=budget)
        inside = [g.to(A) for g in G.elements if g.support <= keep]
        res = EliminationResult(keep, inside, "elimination-gb")
        return res if details else res.elements
    base = A if is_graded(A.ordering) else A.with_ordering(DegRevLex())
    G = buchberger(base, [g.to(base) for g in gens], side, budget=budget)
    if not any(_support(s) <= keep for s in staircase(G)):
        res = EliminationResult(keep, [], "staircase-certificate",
                                note=f"{spec.name} is not admissible here")
        return res if details else res.elements
    found = _kernel_search(base, G, keep, search_degree)
    res = EliminationResult(keep, [f.to(A) for f in found], "linear-search", bool(found),
                            note=f"{spec.name} is not admissible here")
    if not found and not details:
        raise BudgetExceeded(
            f"no element of L in the span of the kept generators up to degree {search_degree}",
            partial=[])
    return res if details else res.elements


def _kernel_search(A: AlgebraPresentation, G: GroebnerBasis, keep, max_degree: int) -> list:
    """Smallest-degree nonzero elements of L inside V(T), by linear algebra
    on normal forms of the monomials supported in ``keep``."""
    idx = sorted(keep)
    monos = []
    for d in range(max_degree + 1):
        for sub in monomials_of_degree(len(idx), d):
            m = [0] * A.ngens
            for k, e in zip(idx, sub):
                m[k] = e
            monos.append(tuple(m))
        nfs = [normal_form(A, A.monomial(m), G.elements) for m in monos]
        kernel = _nullspace(nfs, A)
        if kernel:
            out = []
            for vec in kernel:
                f = A.element({m: c for m, c in zip(monos, vec) if c})
                out.append(f.monic())
            return out
    return []


def _nullspace(vectors: Sequence[Element], A) -> list:
    """Kernel of the map e_k -> vectors[k] (exact Gaussian elimination)."""
    cols = sorted({t for v in vectors for t in v.terms}, key=A.key, reverse=True)
    k = len(vectors)
    # rows of the augmented matrix [M^T | I]
    rows = []
    for i, v in enumerate(vectors):
        rows.append([v.terms.get(t, A.qmode.zero) for t in cols]
                    + [A.qmode.one if j == i else A.qmode.zero for j in range(k)])
    width = len(cols)
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return [row[width:] for row in rows[r:]]


@dataclass
class EliminationLemmaReport:
    gkdim: int
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_elimination_lemma(A: AlgebraPresentation, G: GroebnerBasis, *, all_sizes: bool = True,
                            budget: int | None = None, max_subsets: int = 4096) -> EliminationLemmaReport:
    """With d = gk_dimension: every (d+1)-subset U must meet L nontrivially,
    and (when ``all_sizes``) every subset where L meets V(T) trivially must
    have at most d elements."""
    n = A.ngens
    d = gk_dimension(A, G)
    rep = EliminationLemmaReport(d)
    if G.is_unit_ideal():
        rep.checked["unit-ideal"] = True
        return rep
    sizes = range(1, n + 1) if all_sizes else [d + 1] if d + 1 <= n else []
    total = sum(_binom(n, r) for r in sizes)
    if total > max_subsets:
        raise BudgetExceeded(f"{total} subsets exceed the limit of {max_subsets}")
    gens = list(G.elements)
    for r in sizes:
        for U in itertools.combinations(range(n), r):
            res = eliminate(A, gens, U, side=G.side, budget=budget, details=True)
            names = [str(A.generators[i]) for i in U]
            rep.records.append({"keep": names, "size": r, "method": res.method,
                                "determined": res.determined,
                                "elements": [str(f) for f in res.elements]})
            rep.checked[r] = rep.checked.get(r, 0) + 1
            if r == d + 1 and not res.elements:
                rep.failures.append((names, "no nonzero element of L in V(T) for a (d+1)-subset"))
            if res.determined and not res.elements and r > d:
                rep.failures.append((names, f"L meets V(T) trivially but |U| = {r} > d = {d}"))
    return rep


def _binom(n, r):
    from math import comb
    return comb(n, r)
