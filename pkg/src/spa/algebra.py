"""Solvable polynomial algebras: presentations, elements in the PBW basis, and
the product.

A presentation lists generators ``a_1, ..., a_n`` (positions ``0..n-1`` in index
order) and one :class:`CommutationRule` per pair ``i < j``::

    a_j a_i = lam_ji * a_i a_j + tail_ji

Standard monomials are exponent tuples; an :class:`Element` is a dict from
standard monomials to nonzero coefficients. Products of standard monomials are
brought back to standard form by applying the rules to adjacent inversions,
with every intermediate product of a generator and a monomial memoized.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .coeffs import FieldElement, QMode
from .errors import ModeMismatch, NontermLimit, ZeroElement
from .orderings import DegRevLex, GenContext, OrderingSpec, generator_ranks, monomial_key

Monomial = tuple

DEFAULT_REWRITE_BUDGET = 2_000_000


def default_budget() -> int:
    """Step budget taken from ``SPA_BUDGET`` when set."""
    env = os.environ.get("SPA_BUDGET")
    return int(env) if env else DEFAULT_REWRITE_BUDGET


@dataclass(frozen=True)
class Generator:
    symbol: str
    label: tuple

    def __str__(self):
        return f"{self.symbol}[{','.join(str(i) for i in self.label)}]"


@dataclass(frozen=True, eq=False)
class CommutationRule:
    """``a_left a_right = lam * a_right a_left + tail`` with ``right < left``."""

    left: int
    right: int
    lam: FieldElement
    tail: Mapping[Monomial, FieldElement] = field(default_factory=dict)

    def same_as(self, other: "CommutationRule") -> bool:
        return (self.left, self.right, self.lam) == (other.left, other.right, other.lam) \
            and dict(self.tail) == dict(other.tail)


@dataclass
class SolvabilityReport:
    ordering: str
    pairs_checked: int = 0
    violations: list = field(default_factory=list)
    notes: tuple = ()

    @property
    def passed(self) -> bool:
        return not self.violations


class _ProductCache:
    """Memo tables shared by every ordering view of one presentation."""

    def __init__(self):
        self.gen_times: dict = {}
        self.mono_times: dict = {}
        self.active: set = set()


class AlgebraPresentation:
    def __init__(self, generators: Sequence[Generator], rules: Mapping[tuple, CommutationRule],
                 ordering: OrderingSpec, qmode: QMode, *, name: str = "",
                 context: GenContext | None = None, notes: Sequence[str] = (),
                 rewrite_budget: int | None = None, _cache: _ProductCache | None = None):
        self.generators = tuple(generators)
        self.ngens = len(self.generators)
        self.rules = dict(rules)
        self.ordering = ordering
        self.qmode = qmode
        self.name = name
        self.notes = tuple(notes)
        if context is None:
            labels = [g.label for g in self.generators]
            if all(len(lab) == 2 for lab in labels):
                context = GenContext(generator_ranks(labels))
            else:
                context = GenContext(tuple(range(self.ngens)))
        self.context = context
        self.rewrite_budget = rewrite_budget if rewrite_budget is not None else default_budget()
        self._cache = _cache or _ProductCache()
        self._names = {str(g): i for i, g in enumerate(self.generators)}
        self._keys: dict = {}
        self.one_monomial = (0,) * self.ngens
        self._one = qmode.one
        self._steps = 0

    # construction helpers

    def with_ordering(self, spec: OrderingSpec) -> "AlgebraPresentation":
        """Same algebra, different monomial ordering; product memo is shared."""
        return AlgebraPresentation(self.generators, self.rules, spec, self.qmode, name=self.name,
                                   context=self.context, notes=self.notes,
                                   rewrite_budget=self.rewrite_budget, _cache=self._cache)

    def with_rules(self, rules: Mapping[tuple, CommutationRule], name: str | None = None):
        return AlgebraPresentation(self.generators, rules, self.ordering, self.qmode,
                                   name=self.name if name is None else name, context=self.context,
                                   notes=self.notes, rewrite_budget=self.rewrite_budget)

    def same_ring(self, other: "AlgebraPresentation") -> bool:
        return self._cache is other._cache or (
            self.generators == other.generators and self.qmode == other.qmode
            and self.rules.keys() == other.rules.keys()
            and all(self.rules[p].same_as(other.rules[p]) for p in self.rules))

    def specialize(self, value) -> "AlgebraPresentation":
        mode = QMode(value)
        rules = {}
        for p, r in self.rules.items():
            rules[p] = CommutationRule(r.left, r.right, r.lam.specialize(mode.value),
                                       {m: c.specialize(mode.value) for m, c in r.tail.items()})
        return AlgebraPresentation(self.generators, rules, self.ordering, mode, name=self.name,
                                   context=self.context, notes=self.notes,
                                   rewrite_budget=self.rewrite_budget)

    # generators and elements

    def generator_position(self, name: str) -> int:
        key = name.replace(" ", "")
        if key not in self._names:
            from .errors import UnknownGenerator
            raise UnknownGenerator(f"unknown generator {name!r}")
        return self._names[key]

    def unit(self, i: int) -> Monomial:
        m = [0] * self.ngens
        m[i] = 1
        return tuple(m)

    def gen(self, which) -> "Element":
        i = which if isinstance(which, int) else self.generator_position(which)
        return Element(self, {self.unit(i): self._one})

    def gens(self) -> list["Element"]:
        return [self.gen(i) for i in range(self.ngens)]

    def element(self, terms: Mapping[Monomial, object]) -> "Element":
        clean = {}
        for m, c in terms.items():
            c = self.qmode.scalar(c)
            if c:
                clean[tuple(m)] = c
        return Element(self, clean)

    def monomial(self, m: Monomial, coeff=1) -> "Element":
        return self.element({tuple(m): coeff})

    def scalar(self, c) -> "Element":
        return self.monomial(self.one_monomial, c)

    @property
    def zero(self) -> "Element":
        return Element(self, {})

    @property
    def one(self) -> "Element":
        return Element(self, {self.one_monomial: self._one})

    # orderings

    @property
    def key(self):
        return self.key_for(self.ordering)

    def key_for(self, spec: OrderingSpec):
        k = self._keys.get(spec)
        if k is None:
            raw = monomial_key(spec, self.context)
            memo: dict = {}

            def k(m, _raw=raw, _memo=memo):
                r = _memo.get(m)
                if r is None:
                    r = _memo[m] = _raw(m)
                return r

            self._keys[spec] = k
        return k

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for i, e in enumerate(m):
            if e:
                parts.append(str(self.generators[i]) + (f"^{e}" if e > 1 else ""))
        return "*".join(parts) if parts else "1"

    # products

    def _budget_tick(self):
        self._steps += 1
        if self._steps > self.rewrite_budget:
            raise NontermLimit(f"rewriting exceeded {self.rewrite_budget} steps")

    def _gen_times(self, k: int, v: Monomial) -> dict:
        """x_k * v for a standard monomial v."""
        cache = self._cache.gen_times
        ck = (k, v)
        r = cache.get(ck)
        if r is not None:
            return r
        m = next((i for i, e in enumerate(v) if e), None)
        if m is None or k <= m:
            w = list(v)
            w[k] += 1
            r = {tuple(w): self._one}
            cache[ck] = r
            return r
        active = self._cache.active
        if ck in active:
            raise NontermLimit(f"rewriting cycle while computing x{k} * {v}")
        active.add(ck)
        try:
            self._budget_tick()
            rule = self.rules[(m, k)]
            v1 = list(v)
            v1[m] -= 1
            v1 = tuple(v1)
            acc: dict = {}
            lam = rule.lam
            for t, c in self._gen_times(k, v1).items():
                c = c * lam
                for t2, c2 in self._gen_times(m, t).items():
                    _acc(acc, t2, c * c2)
            for s, cs in rule.tail.items():
                for t, c in self._mono_times(s, v1).items():
                    _acc(acc, t, cs * c)
            r = {t: c for t, c in acc.items() if c}
        finally:
            active.discard(ck)
        cache[ck] = r
        return r

    def _mono_times(self, u: Monomial, v: Monomial) -> dict:
        """u * v for standard monomials u, v."""
        cache = self._cache.mono_times
        ck = (u, v)
        r = cache.get(ck)
        if r is not None:
            return r
        n = self.ngens
        last_u = next((i for i in range(n - 1, -1, -1) if u[i]), None)
        first_v = next((i for i in range(n) if v[i]), None)
        if last_u is None or first_v is None or last_u <= first_v:
            r = {tuple(a + b for a, b in zip(u, v)): self._one}
        else:
            a = next(i for i in range(n) if u[i])
            u1 = list(u)
            u1[a] -= 1
            acc: dict = {}
            for t, c in self._mono_times(tuple(u1), v).items():
                for t2, c2 in self._gen_times(a, t).items():
                    _acc(acc, t2, c * c2)
            r = {t: c for t, c in acc.items() if c}
        cache[ck] = r
        return r

    def mono_product(self, u: Monomial, v: Monomial) -> dict:
        """Term dict of u * v; raises NontermLimit past the rewrite budget."""
        self._steps = 0
        try:
            return self._mono_times(u, v)
        except RecursionError as exc:
            self._cache.active.clear()
            raise NontermLimit("rewriting recursion too deep") from exc

    def multiply_monomials(self, *monos: Monomial) -> "Element":
        """Product of standard monomials, expanded in the PBW basis."""
        terms = {self.one_monomial: self._one}
        for m in monos:
            acc: dict = {}
            for t, c in terms.items():
                for t2, c2 in self.mono_product(t, tuple(m)).items():
                    _acc(acc, t2, c * c2)
            terms = {t: c for t, c in acc.items() if c}
        return Element(self, terms)

    def multiply(self, f: "Element", g: "Element") -> "Element":
        self._check(f)
        self._check(g)
        acc: dict = {}
        for u, a in f.terms.items():
            for v, b in g.terms.items():
                ab = a * b
                for t, c in self.mono_product(u, v).items():
                    _acc(acc, t, ab * c)
        return Element(self, {t: c for t, c in acc.items() if c})

    def left_multiply_terms(self, m: Monomial, terms: Mapping[Monomial, FieldElement]) -> dict:
        """Term dict of ``m * f``."""
        acc: dict = {}
        for u, a in terms.items():
            for t, c in self.mono_product(m, u).items():
                _acc(acc, t, a * c)
        return {t: c for t, c in acc.items() if c}

    def _check(self, f: "Element"):
        if f.algebra is not self and not self.same_ring(f.algebra):
            raise ModeMismatch("element belongs to a different algebra")

    def leading_data(self, f: "Element"):
        if not f.terms:
            raise ZeroElement("leading data of zero")
        m = max(f.terms, key=self.key)
        return m, f.terms[m]

    def check_solvable(self, spec: OrderingSpec | None = None) -> SolvabilityReport:
        """Every pair has a rule with nonzero lam, and every nonzero tail has its
        leading monomial below ``a_i a_j`` under ``spec`` (default: own ordering)."""
        spec = spec or self.ordering
        key = self.key_for(spec)
        rep = SolvabilityReport(getattr(spec, "name", str(spec)), notes=self.notes)
        for i in range(self.ngens):
            for j in range(i + 1, self.ngens):
                rep.pairs_checked += 1
                pair = (str(self.generators[i]), str(self.generators[j]))
                rule = self.rules.get((i, j))
                if rule is None:
                    rep.violations.append((pair, "MissingRule", "no commutation rule"))
                    continue
                if not rule.lam:
                    rep.violations.append((pair, "ZeroLambda", "lambda is zero"))
                tail = {m: c for m, c in rule.tail.items() if c}
                if tail:
                    head = tuple(int(k in (i, j)) for k in range(self.ngens))
                    lead = max(tail, key=key)
                    if not key(lead) < key(head):
                        rep.violations.append(
                            (pair, "TailNotSmaller",
                             f"LM(tail) = {self.format_monomial(lead)} is not below "
                             f"{self.format_monomial(head)}"))
        return rep

    def __repr__(self):
        return f"AlgebraPresentation({self.name or self.ngens}, ordering={self.ordering.name}, q={self.qmode})"


def _acc(acc: dict, m, c):
    old = acc.get(m)
    acc[m] = c if old is None else old + c


class Element:
    """Finite sum of coefficient * standard monomial; treat as immutable."""

    __slots__ = ("algebra", "terms", "_lm")

    def __init__(self, algebra: AlgebraPresentation, terms: dict):
        self.algebra = algebra
        self.terms = terms
        self._lm = None

    # leading data under the owning algebra's ordering

    @property
    def lm(self) -> Monomial:
        if self._lm is None:
            if not self.terms:
                raise ZeroElement("leading monomial of zero")
            self._lm = max(self.terms, key=self.algebra.key)
        return self._lm

    @property
    def lc(self) -> FieldElement:
        return self.terms[self.lm]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    @property
    def support(self) -> frozenset:
        return frozenset(i for m in self.terms for i, e in enumerate(m) if e)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def to(self, algebra: AlgebraPresentation) -> "Element":
        """Reinterpret under another ordering view of the same algebra."""
        algebra._check(self)
        return Element(algebra, self.terms)

    def monic(self) -> "Element":
        inv = self.lc.inverse()
        return Element(self.algebra, {m: c * inv for m, c in self.terms.items()})

    def map_coefficients(self, fn, algebra: AlgebraPresentation) -> "Element":
        out = {}
        for m, c in self.terms.items():
            c = fn(c)
            if c:
                out[m] = c
        return Element(algebra, out)

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Element):
            self.algebra._check(other)
            return other
        if isinstance(other, (FieldElement, int, Fraction)):
            return self.algebra.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in o.terms.items():
            s = terms.get(m)
            s = c if s is None else s + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Element(self.algebra, terms)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int, Fraction)):
            c = self.algebra.qmode.scalar(other)
            if not c:
                return Element(self.algebra, {})
            return Element(self.algebra, {m: a * c for m, a in self.terms.items()})
        if isinstance(other, Element):
            return self.algebra.multiply(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (FieldElement, int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = self.algebra.one
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.terms == other.terms and self.algebra.same_ring(other.algebra)
        if isinstance(other, (FieldElement, int, Fraction)):
            return self == self.algebra.scalar(other)
        return NotImplemented

    __hash__ = None

    def sorted_terms(self, descending: bool = True) -> list:
        return sorted(self.terms.items(), key=lambda t: self.algebra.key(t[0]), reverse=descending)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({self})"


def format_element(f: Element) -> str:
    """Render in the polynomial grammar, leading term first."""
    if not f.terms:
        return "0"
    A = f.algebra
    out = []
    for m, c in f.sorted_terms():
        mono = A.format_monomial(m) if any(m) else ""
        neg = _negative(c)
        cs = str(-c if neg else c)
        simple = c.is_laurent and _single_term(cs)
        if not mono:
            body = cs if simple else f"({cs})" if out else cs
        elif simple and cs == "1":
            body = mono
        elif simple:
            body = f"{cs}*{mono}"
        else:
            body = f"({cs})*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _negative(c) -> bool:
    """Sign convention for printing: the top coefficient of the numerator."""
    if c.is_laurent or not hasattr(c, "numerator"):
        return str(c).startswith("-")
    num = c.numerator
    return num[max(num)] < 0


def _single_term(s: str) -> bool:
    return " + " not in s and " - " not in s


# Functional surface mirroring the operation names


def multiply_monomials(A: AlgebraPresentation, u: Monomial, v: Monomial) -> Element:
    return A.multiply_monomials(u, v)


def multiply(A: AlgebraPresentation, f: Element, g: Element) -> Element:
    return A.multiply(f, g)


def leading_data(A: AlgebraPresentation, f: Element):
    return A.leading_data(f)


def check_solvable(A: AlgebraPresentation, spec: OrderingSpec | None = None) -> SolvabilityReport:
    return A.check_solvable(spec)


def total_degree(m: Iterable[int]) -> int:
    return sum(m)


DEFAULT_ORDERING = DegRevLex()
