"""Monomial orderings on standard monomials and a sampling checker for the
monomial-ordering axioms.

Standard monomials are exponent tuples indexed by generator position; the
positions follow the index order ``<_lex`` of the generators, so the word of a
monomial lists each generator ``exponent`` times, in position order.

Orderings are described by small frozen dataclasses (:class:`PaperOrdering`,
:class:`DegRevLex`, ...) and turned into sort keys by :func:`monomial_key`.
Every key needs a :class:`GenContext` carrying the generator ranks under the
generator ordering (and, for tensor products, the two factor contexts).

Only :class:`DegRevLex` and the block orderings built from it are genuine
monomial orderings on the quantum algebras; the word orderings are kept
because they are the ones written down for U_q^+(A_N) and
:func:`verify_ordering_axioms` reports where they break.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

Monomial = tuple


class Cmp(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @classmethod
    def of(cls, a, b) -> "Cmp":
        return cls.LESS if a < b else cls.GREATER if a > b else cls.EQUAL


def compare_generators(a: tuple[int, int], b: tuple[int, int]) -> Cmp:
    """Compare ``x_a`` and ``x_b`` under the generator ordering:
    ``x_lk < x_ij`` iff ``l < i``, or ``l = i`` and ``k > j``."""
    return Cmp.of((a[0], -a[1]), (b[0], -b[1]))


def generator_ranks(labels: Sequence[tuple[int, ...]]) -> tuple[int, ...]:
    """Rank of every label under :func:`compare_generators` (0 = smallest)."""
    order = sorted(range(len(labels)), key=lambda p: (labels[p][0], -labels[p][1]))
    ranks = [0] * len(labels)
    for r, p in enumerate(order):
        ranks[p] = r
    return tuple(ranks)


@dataclass(frozen=True)
class GenContext:
    ranks: tuple[int, ...]
    factors: tuple["GenContext", ...] = ()

    @property
    def n(self) -> int:
        return len(self.ranks)


# Ordering specifications


@dataclass(frozen=True)
class PaperOrdering:
    """Word ordering: a proper prefix is smaller, otherwise the first differing
    letter decides under the generator ordering."""

    name = "paper"


@dataclass(frozen=True)
class IndexLexWord:
    """Word ordering with letters compared by index order instead."""

    name = "lexword"


@dataclass(frozen=True)
class GradedPaper:
    """Total degree first, ties broken by :class:`PaperOrdering`."""

    name = "graded"


@dataclass(frozen=True)
class DegRevLex:
    """Total degree first, then reverse lexicographic with variables ranked by
    the generator ordering: the monomial with the larger exponent at the
    smallest-ranked differing variable is the smaller one."""

    name = "degrevlex"


@dataclass(frozen=True)
class Elimination:
    """Block ordering: compare the part in ``eliminated`` first, then the rest,
    both with ``inner``. Any monomial touching an eliminated generator is larger
    than every monomial free of them."""

    eliminated: frozenset
    inner: "OrderingSpec" = field(default_factory=DegRevLex)

    @property
    def name(self) -> str:
        return "elim:" + ",".join(str(i) for i in sorted(self.eliminated))


@dataclass(frozen=True)
class Tensor:
    """Ordering on u (x) v: compare u by ``left``, then v by ``right``."""

    left: "OrderingSpec"
    right: "OrderingSpec"

    name = "tensor"


OrderingSpec = Union[PaperOrdering, IndexLexWord, GradedPaper, DegRevLex, Elimination, Tensor]


def is_graded(spec: OrderingSpec) -> bool:
    """True when the ordering refines total degree."""
    return isinstance(spec, (GradedPaper, DegRevLex))


def monomial_key(spec: OrderingSpec, ctx: GenContext) -> Callable[[Monomial], tuple]:
    """Return a function mapping a monomial to a tuple whose natural order is
    ``spec``'s order."""
    ranks = ctx.ranks
    n = len(ranks)
    if isinstance(spec, PaperOrdering):
        return lambda m: tuple(itertools.chain.from_iterable((ranks[i],) * m[i] for i in range(n)))
    if isinstance(spec, IndexLexWord):
        return lambda m: tuple(itertools.chain.from_iterable((i,) * m[i] for i in range(n)))
    if isinstance(spec, GradedPaper):
        word = monomial_key(PaperOrdering(), ctx)
        return lambda m: (sum(m), word(m))
    if isinstance(spec, DegRevLex):
        by_rank = sorted(range(n), key=lambda i: ranks[i])
        return lambda m: (sum(m), tuple(-m[i] for i in by_rank))
    if isinstance(spec, Elimination):
        inner = monomial_key(spec.inner, ctx)
        elim = spec.eliminated
        mask_e = tuple(i in elim for i in range(n))

        def key(m):
            outer = tuple(e if k else 0 for e, k in zip(m, mask_e))
            rest = tuple(0 if k else e for e, k in zip(m, mask_e))
            return (inner(outer), inner(rest))

        return key
    if isinstance(spec, Tensor):
        if len(ctx.factors) != 2:
            raise ValueError("tensor ordering needs a two-factor tensor product presentation")
        lctx, rctx = ctx.factors
        split = lctx.n
        lkey = monomial_key(spec.left, lctx)
        rkey = monomial_key(spec.right, rctx)
        return lambda m: (lkey(m[:split]), rkey(m[split:]))
    raise TypeError(f"unknown ordering {spec!r}")


def compare_monomials(spec: OrderingSpec, u: Monomial, v: Monomial, ctx: GenContext) -> Cmp:
    key = monomial_key(spec, ctx)
    return Cmp.of(key(u), key(v))


def parse_ordering(text: str, algebra) -> OrderingSpec:
    """Read a CLI ordering name: paper, lexword, graded, degrevlex,
    ``elim:<generators>`` (the listed generators are eliminated) or tensor."""
    text = text.strip()
    simple = {"paper": PaperOrdering, "lexword": IndexLexWord, "graded": GradedPaper,
              "degrevlex": DegRevLex}
    if text in simple:
        return simple[text]()
    if text == "tensor":
        if not isinstance(algebra.ordering, Tensor):
            raise ValueError("the tensor ordering is only defined on a tensor product")
        return algebra.ordering
    if text.startswith("elim:"):
        names = [s for s in _split_generators(text[5:]) if s]
        elim = frozenset(algebra.generator_position(s) for s in names)
        if not elim or len(elim) >= algebra.ngens:
            raise ValueError("elimination set must be a nonempty proper subset of the generators")
        return Elimination(elim, DegRevLex())
    raise ValueError(f"unknown ordering {text!r}")


def _split_generators(text: str) -> list[str]:
    # split on commas that are not inside brackets: "x[1,2],x[1,3]"
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur).strip())
    return out


# Axiom checker


@dataclass
class Violation:
    condition: str
    monomials: tuple
    detail: str


@dataclass
class OrderingReport:
    ordering: str
    checked: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    max_reported: int = 25

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, condition, monos, detail):
        self.checked.setdefault("violations:" + condition, 0)
        self.checked["violations:" + condition] += 1
        if sum(1 for v in self.violations if v.condition == condition) < self.max_reported:
            self.violations.append(Violation(condition, monos, detail))


def _random_monomial(rng: random.Random, n: int, max_degree: int) -> Monomial:
    d = rng.randint(0, max_degree)
    m = [0] * n
    for _ in range(d):
        m[rng.randrange(n)] += 1
    return tuple(m)


def verify_ordering_axioms(algebra, spec: OrderingSpec, sample_budget: int, *, seed: int = 0,
                           max_degree: int = 3, chain_length: int = 8) -> OrderingReport:
    """Check the monomial-ordering axioms for ``spec`` on ``algebra``.

    Sampled: totality/antisymmetry/transitivity on triples; condition (2)
    (``beta < LM(alpha beta eta)`` whenever they differ and the product is not 1);
    condition (3) (``alpha < beta`` implies ``LM(gamma alpha eta) < LM(gamma beta eta)``);
    and a descent probe that looks for ``LM(u v^k)`` strictly decreasing in k.
    Exhaustive: the generator-triple monotonicity
    ``x_b < x_c  =>  LM(x_a x_b) < LM(x_a x_c)  and  LM(x_b x_a) < LM(x_c x_a)``.

    A pass is evidence, not a proof: the axioms quantify over infinitely many
    monomials.
    """
    ctx = algebra.context
    key = monomial_key(spec, ctx)
    n = algebra.ngens
    one = (0,) * n
    rep = OrderingReport(getattr(spec, "name", str(spec)))
    rng = random.Random(seed)
    fmt = getattr(algebra, "format_monomial", str)

    def lm(*monos):
        f = algebra.multiply_monomials(*monos)
        return max(f.terms, key=key)

    def unit(i):
        return tuple(int(k == i) for k in range(n))

    gens = [unit(i) for i in range(n)]
    triples = 0
    for a in gens:
        for b in gens:
            for c in gens:
                if b == c or key(b) > key(c):
                    continue
                triples += 1
                left_b, left_c = lm(a, b), lm(a, c)
                if not key(left_b) < key(left_c):
                    rep.add("generator-monotonicity", (a, b, c),
                            f"LM({fmt(a)}*{fmt(b)}) = {fmt(left_b)} is not below "
                            f"LM({fmt(a)}*{fmt(c)}) = {fmt(left_c)}")
                right_b, right_c = lm(b, a), lm(c, a)
                if not key(right_b) < key(right_c):
                    rep.add("generator-monotonicity", (a, b, c),
                            f"LM({fmt(b)}*{fmt(a)}) = {fmt(right_b)} is not below "
                            f"LM({fmt(c)}*{fmt(a)}) = {fmt(right_c)}")
    rep.checked["generator-triples"] = triples

    if sample_budget <= 0:
        rep.warnings.append("empty sample budget: sampled conditions not checked")
        return rep

    for _ in range(sample_budget):
        u, v, w = (_random_monomial(rng, n, max_degree) for _ in range(3))
        ku, kv, kw = key(u), key(v), key(w)
        if (u == v) != (ku == kv):
            rep.add("total-order", (u, v), "key equality disagrees with monomial equality")
        if ku < kv and kv < kw and not ku < kw:
            rep.add("transitivity", (u, v, w), "u < v < w but not u < w")
    rep.checked["order-triples"] = sample_budget

    for _ in range(sample_budget):
        a, b, e = (_random_monomial(rng, n, max_degree) for _ in range(3))
        g = lm(a, b, e)
        if g != one and b != g and not key(b) < key(g):
            rep.add("condition-2", (a, b, e), f"LM({fmt(a)} . {fmt(b)} . {fmt(e)}) = {fmt(g)} is not above {fmt(b)}")
    rep.checked["condition-2"] = sample_budget

    for _ in range(sample_budget):
        g, a, b, e = (_random_monomial(rng, n, max_degree) for _ in range(4))
        if key(a) > key(b):
            a, b = b, a
        if a == b:
            continue
        la, lb = lm(g, a, e), lm(g, b, e)
        if lb != one and not key(la) < key(lb):
            rep.add("condition-3", (g, a, b, e),
                    f"{fmt(a)} < {fmt(b)} but LM = {fmt(la)} is not below {fmt(lb)} "
                    f"(gamma = {fmt(g)}, eta = {fmt(e)})")
    rep.checked["condition-3"] = sample_budget

    probes = max(1, sample_budget // 100)
    for _ in range(probes):
        u = _random_monomial(rng, n, max_degree)
        v = _random_monomial(rng, n, max(1, max_degree - 1))
        if v == one:
            continue
        chain = [u]
        cur = u
        for _ in range(chain_length):
            nxt = lm(cur, v)
            if not key(nxt) < key(cur):
                break
            chain.append(nxt)
            cur = nxt
        else:
            rep.add("descending-chain", (u, v),
                    f"LM(u v^k) strictly decreases for k = 0..{chain_length}: "
                    + " > ".join(fmt(c) for c in chain[:3]) + " > ...")
    rep.checked["descent-probes"] = probes
    return rep
