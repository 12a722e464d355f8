"""U_q^+(A_N), U_q^-(A_N), their tensor product and the associated graded
algebra, built from the Jimbo relations.

For generator indices ``(i,j) <_lex (m,n)`` the relation rewriting ``x_mn x_ij``
depends only on how the four indices interleave (classes C1..C6)::

    C1  i = m < j < n      x_mn x_ij = q^-2 x_ij x_mn
    C2  i < m < n < j      x_mn x_ij = x_ij x_mn
    C3  i < m < j = n      x_mn x_ij = q^-2 x_ij x_mn
    C4  i < m < j < n      x_mn x_ij = x_ij x_mn - (q^2 - q^-2) x_in x_mj
    C5  i < j = m < n      x_mn x_ij = q^2 x_ij x_mn - q x_in
    C6  i < j < m < n      x_mn x_ij = x_ij x_mn
"""

from __future__ import annotations

import enum

from .algebra import AlgebraPresentation, CommutationRule, Generator
from .coeffs import SYMBOLIC, QMode
from .errors import ModeMismatch, UnorderedPair
from .orderings import DegRevLex, GenContext, Tensor

MIRRORED_MINUS_NOTE = (
    "U_q^-(A_N) uses the U_q^+(A_N) relation schema on generators y[i,j] "
    "(mirrored-schema assumption)")


class PairClass(enum.Enum):
    C1 = 1
    C2 = 2
    C3 = 3
    C4 = 4
    C5 = 5
    C6 = 6


def build_lambda(N: int) -> list[tuple[int, int]]:
    """All (i, j) with 1 <= i < j <= N+1 in lexicographic order."""
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    return [(i, j) for i in range(1, N + 2) for j in range(i + 1, N + 2)]


def classify_pair(p: tuple[int, int], r: tuple[int, int]) -> PairClass:
    if not tuple(p) < tuple(r):
        raise UnorderedPair(f"{p} is not below {r} in index order")
    (i, j), (m, n) = p, r
    if i == m:
        return PairClass.C1
    # now i < m
    if j == n:
        return PairClass.C3
    if n < j:
        return PairClass.C2
    # j < n
    if m < j:
        return PairClass.C4
    if m == j:
        return PairClass.C5
    return PairClass.C6


def _monomial(index: dict, *labels) -> tuple:
    m = [0] * len(index)
    for lab in labels:
        m[index[lab]] += 1
    return tuple(m)


def jimbo_rule(p, r, qmode: QMode = SYMBOLIC, index: dict | None = None) -> CommutationRule:
    """Rewriting rule for ``x_r x_p``; ``index`` maps labels to positions
    (defaults to the positions of the smallest Lambda_N containing both)."""
    cls = classify_pair(p, r)
    if index is None:
        N = max(p[1], r[1]) - 1
        index = {lab: k for k, lab in enumerate(build_lambda(N))}
    (i, j), (m, n) = p, r
    q = qmode.q
    one = qmode.one
    tail = {}
    if cls in (PairClass.C1, PairClass.C3):
        lam = q ** -2
    elif cls in (PairClass.C2, PairClass.C6):
        lam = one
    elif cls is PairClass.C4:
        lam = one
        tail = {_monomial(index, (i, n), (m, j)): -(q ** 2 - q ** -2)}
    else:
        lam = q ** 2
        tail = {_monomial(index, (i, n)): -q}
    tail = {mono: c for mono, c in tail.items() if c}
    return CommutationRule(index[r], index[p], lam, tail)


def _build(N: int, qmode: QMode, symbol: str, name: str, notes=()) -> AlgebraPresentation:
    labels = build_lambda(N)
    index = {lab: k for k, lab in enumerate(labels)}
    rules = {}
    for a, p in enumerate(labels):
        for b in range(a + 1, len(labels)):
            rules[(a, b)] = jimbo_rule(p, labels[b], qmode, index)
    gens = [Generator(symbol, lab) for lab in labels]
    return AlgebraPresentation(gens, rules, DegRevLex(), qmode, name=name, notes=notes)


def build_uq_plus(N: int, qmode: QMode = SYMBOLIC) -> AlgebraPresentation:
    return _build(N, qmode, "x", f"uq+ {N}")


def build_uq_minus(N: int, qmode: QMode = SYMBOLIC) -> AlgebraPresentation:
    return _build(N, qmode, "y", f"uq- {N}", notes=(MIRRORED_MINUS_NOTE,))


def tensor_product(A1: AlgebraPresentation, A2: AlgebraPresentation) -> AlgebraPresentation:
    """Left block of generators, then right block; cross pairs commute."""
    if A1.qmode != A2.qmode:
        raise ModeMismatch("tensor factors must share the q mode")
    names1 = {str(g) for g in A1.generators}
    if any(str(g) in names1 for g in A2.generators):
        raise ValueError("tensor factors need distinct generator names")
    n1, n2 = A1.ngens, A2.ngens
    one = A1.qmode.one

    def lift(m, offset):
        out = [0] * (n1 + n2)
        out[offset:offset + len(m)] = m
        return tuple(out)

    rules = {}
    for (a, b), r in A1.rules.items():
        rules[(a, b)] = CommutationRule(r.left, r.right, r.lam,
                                        {lift(m, 0): c for m, c in r.tail.items()})
    for (a, b), r in A2.rules.items():
        rules[(a + n1, b + n1)] = CommutationRule(r.left + n1, r.right + n1, r.lam,
                                                  {lift(m, n1): c for m, c in r.tail.items()})
    for a in range(n1):
        for b in range(n1, n1 + n2):
            rules[(a, b)] = CommutationRule(b, a, one, {})
    ranks = A1.context.ranks + tuple(n1 + r for r in A2.context.ranks)
    ctx = GenContext(ranks, (A1.context, A2.context))
    return AlgebraPresentation(A1.generators + A2.generators, rules,
                               Tensor(A1.ordering, A2.ordering), A1.qmode,
                               name=f"{A1.name} (x) {A2.name}", context=ctx,
                               notes=A1.notes + A2.notes)


def associated_graded(A: AlgebraPresentation) -> AlgebraPresentation:
    """Keep only the degree-2 part of every tail (degree weights 1)."""
    rules = {}
    for p, r in A.rules.items():
        tail = {m: c for m, c in r.tail.items() if sum(m) == 2}
        rules[p] = CommutationRule(r.left, r.right, r.lam, tail)
    name = A.name if A.name.startswith("gr(") else f"gr({A.name})"
    return AlgebraPresentation(A.generators, rules, A.ordering, A.qmode, name=name,
                               context=A.context, notes=A.notes,
                               rewrite_budget=A.rewrite_budget)


def build_algebra(text: str, qmode: QMode = SYMBOLIC) -> AlgebraPresentation:
    """Parse a specifier: ``uq+ N``, ``uq- N``, ``uq+ N (x) uq- N``, ``gr(uq+ N)``."""
    s = " ".join(text.strip().split())
    if "(x)" in s:
        left, right = (part.strip() for part in s.split("(x)", 1))
        return tensor_product(build_algebra(left, qmode), build_algebra(right, qmode))
    if s.startswith("gr(") and s.endswith(")"):
        return associated_graded(build_algebra(s[3:-1], qmode))
    parts = s.replace("uq+", "uq+ ").replace("uq-", "uq- ").split()
    if len(parts) == 2 and parts[0] in ("uq+", "uq-"):
        try:
            N = int(parts[1])
        except ValueError:
            raise ValueError(f"bad algebra specifier {text!r}") from None
        if N < 1:
            raise ValueError("N must be at least 1")
        return (build_uq_plus if parts[0] == "uq+" else build_uq_minus)(N, qmode)
    raise ValueError(f"bad algebra specifier {text!r}")
