"""Left (and two-sided) Groebner bases in a solvable polynomial algebra.

Reduction is by left multiples: a term ``c*w`` of ``f`` is divisible by
``LM(g)`` when ``LM(g) <= w`` componentwise, and is cancelled with
``(w - LM(g)) * g``. The coefficient of ``w`` in that product is a product of
commutation scalars, so it is always nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import AlgebraPresentation, Element, default_budget
from .coeffs import _as_fraction, content
from .errors import BudgetExceeded, NontermLimit, PoleAtQ, ZeroElement

LEFT = "left"
TWO_SIDED = "two-sided"


def _divides(u, w) -> bool:
    return all(a <= b for a, b in zip(u, w))


def _lcm(u, w):
    return tuple(max(a, b) for a, b in zip(u, w))


def _sub(w, u):
    return tuple(a - b for a, b in zip(w, u))


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = default_budget() if limit is None else limit
        self.used = 0

    def tick(self, partial=None):
        self.used += 1
        if self.used > self.limit:
            raise BudgetExceeded(f"step budget of {self.limit} exhausted", partial=partial)


@dataclass
class GroebnerBasis:
    elements: list
    side: str
    ordering: object
    reduced: bool = False
    algebra: AlgebraPresentation | None = None
    # every field element that was inverted on the way; a specialization is
    # only trusted when none of these vanish (or have a pole) there
    divisors: set = field(default_factory=set, repr=False)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    @property
    def leading_monomials(self) -> list:
        return [g.lm for g in self.elements]

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() for g in self.elements)


class _Reducer:
    """Basis kept sorted by (LM, position) so the first divisor found is the
    one prescribed by the reducer-selection rule. Entries are addressed by a
    token so that a completion can replace them."""

    def __init__(self, A: AlgebraPresentation, divisors: set | None, fraction_free: bool = False):
        self.A = A
        # fraction-free: instead of dividing by the cancelled coefficient,
        # scale the remainder by a cofactor; ``scale`` is the accumulated
        # factor of the last call (remainder = scale * f modulo the basis)
        self.fraction_free = fraction_free
        self.scale = None
        self.key = A.key
        self.items: list = []  # (key(lm), token, lm, terms)
        self.products: dict = {}  # token -> {w: (w - lm) * g}
        self.divisors = divisors
        self._count = 0

    def add(self, g: Element) -> int:
        lm = max(g.terms, key=self.key)
        token = self._count
        self._count += 1
        self.items.append((self.key(lm), token, lm, g.terms))
        self.items.sort(key=lambda t: (t[0], t[1]))
        return token

    def replace(self, token: int, g: Element):
        """Same LM, new lower terms (a tail reduction)."""
        self.items = [t if t[1] != token else (t[0], token, t[2], g.terms) for t in self.items]
        self.products.pop(token, None)

    def find(self, w):
        for _, idx, lm, terms in self.items:
            if _divides(lm, w):
                return idx, lm, terms
        return None

    def multiple(self, idx, lm, terms, w):
        cache = self.products.setdefault(idx, {})
        prod = cache.get(w)
        if prod is None:
            prod = cache[w] = self.A.left_multiply_terms(_sub(w, lm), terms)
        return prod

    def reduce(self, terms: dict, budget: _Budget, *, full: bool = True, partial=None) -> dict:
        key = self.key
        p = dict(terms)
        r = {}
        scale = self.A.qmode.one
        while p:
            w = max(p, key=key)
            c = p[w]
            hit = self.find(w)
            if hit is None:
                r[w] = c
                del p[w]
                if not full:
                    r.update(p)
                    break
                continue
            budget.tick(partial)
            prod = self.multiple(*hit, w)
            cw = prod[w]
            if self.fraction_free:
                g = content((c, cw))
                a, factor = cw.exquo(g), c.exquo(g)
                if not a.is_one:
                    if self.divisors is not None:
                        self.divisors.add(a)
                    p = {t: a * x for t, x in p.items()}
                    r = {t: a * x for t, x in r.items()}
                    scale = scale * a
            else:
                if self.divisors is not None:
                    self.divisors.add(cw)
                factor = c / cw
            for t, ct in prod.items():
                s = p.get(t)
                s = -factor * ct if s is None else s - factor * ct
                if s:
                    p[t] = s
                else:
                    p.pop(t, None)
            p.pop(w, None)
        self.scale = scale
        return r


def normal_form(A: AlgebraPresentation, f: Element, G: Sequence[Element], *,
                budget: int | None = None) -> Element:
    """Fully reduced remainder of ``f`` modulo left multiples of ``G``.

    >>> from spa.quantum import build_uq_plus
    >>> A = build_uq_plus(2)
    >>> x12, x13, x23 = A.gens()
    >>> print(normal_form(A, x12 * x23, [x12]))
    q^-1*x[1,3]
    """
    red = _Reducer(A, None)
    for g in G:
        if g:
            red.add(g.to(A))
    return Element(A, red.reduce(f.to(A).terms, _Budget(budget)))


def s_polynomial(A: AlgebraPresentation, f: Element, g: Element, divisors: set | None = None,
                 fraction_free: bool = False) -> Element:
    """The S-polynomial of ``f`` and ``g``: the combination of left multiples
    of both that cancels the leading term at ``lcm(LM(f), LM(g))``. With
    ``fraction_free`` the result is scaled to avoid dividing coefficients."""
    if not f or not g:
        raise ZeroElement("S-polynomial of zero")
    key = A.key
    lf = max(f.terms, key=key)
    lg = max(g.terms, key=key)
    w = _lcm(lf, lg)
    pf = A.left_multiply_terms(_sub(w, lf), f.terms)
    pg = A.left_multiply_terms(_sub(w, lg), g.terms)
    cf, cg = pf[w], pg[w]
    if divisors is not None:
        divisors.update((cf, cg))
    if fraction_free:
        c = content((cf, cg))
        a, b = cg.exquo(c), cf.exquo(c)
        if divisors is not None:
            divisors.update((a, b))
    else:
        a, b = cf.inverse(), cg.inverse()
    out = {t: c * a for t, c in pf.items()}
    for t, c in pg.items():
        s = out.get(t)
        s = -(c * b) if s is None else s - c * b
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return Element(A, out)


def _monic(A, terms, divisors):
    key = A.key
    lc = terms[max(terms, key=key)]
    if divisors is not None:
        divisors.add(lc)
    inv = lc.inverse()
    return Element(A, {t: c * inv for t, c in terms.items()})


def _primitive(A, terms, divisors):
    """Divide out the content and normalise the leading rational coefficient."""
    c = content(terms.values())
    lead = terms[max(terms, key=A.key)].exquo(c)
    c = c * A.qmode.scalar(_as_fraction(lead.num.LC))
    if divisors is not None:
        divisors.add(c)
    return Element(A, {t: x.exquo(c) for t, x in terms.items()})


def buchberger(A: AlgebraPresentation, gens: Sequence[Element], side: str = LEFT, *,
               budget: int | None = None, reduce: bool = True) -> GroebnerBasis:
    """Groebner basis of the left ideal (``side="left"``) or of the two-sided
    ideal (``side="two-sided"``, a left basis closed under right
    multiplication by the generators) generated by ``gens``.

    Tails of the working basis are reduced as new elements arrive, and over
    Q(q) the working basis is kept fraction-free (made monic only at the
    end); both keep intermediate coefficients from growing without need. Pairs are processed by
    the normal strategy (smallest lcm first); only pairs of one element with
    itself are skipped.
    """
    if side not in (LEFT, TWO_SIDED):
        raise ValueError(f"unknown side {side!r}")
    steps = _Budget(budget)
    divisors: set = set()
    active: dict[int, Element] = {}
    key = A.key
    # over Q(q) the working basis is kept fraction-free (Laurent polynomial
    # coefficients without common factor) and made monic only at the end
    ff = A.qmode.symbolic
    red = _Reducer(A, divisors, fraction_free=ff)
    pairs: list = []
    todo: list = [f.to(A) for f in gens if f]

    def normalise(terms):
        return _primitive(A, terms, divisors) if ff else _monic(A, terms, divisors)
    right_checked: set = set()

    def insert(terms):
        g = normalise(terms)
        lm = g.lm
        token = red.add(g)
        for t, h in active.items():
            pairs.append((_lcm(lm, h.lm), t, token))
        active[token] = g
        for t, h in list(active.items()):
            if t == token or not any(_divides(lm, m) for m in h.terms if m != h.lm):
                continue
            tail = red.reduce({m: c for m, c in h.terms.items() if m != h.lm}, steps,
                              partial=list(active.values()))
            tail[h.lm] = h.terms[h.lm] * red.scale
            active[t] = normalise(tail) if ff else Element(A, tail)
            red.replace(t, active[t])
            right_checked.discard(t)

    try:
        while True:
            while todo or pairs:
                if todo:
                    f = todo.pop(0)
                else:
                    best = min(range(len(pairs)), key=lambda i: (key(pairs[i][0]), pairs[i][1:]))
                    _, i, j = pairs.pop(best)
                    steps.tick(list(active.values()))
                    f = s_polynomial(A, active[i], active[j], divisors, ff)
                    if not f:
                        continue
                r = red.reduce(f.terms, steps, partial=list(active.values()))
                if r:
                    insert(r)
            if side == LEFT:
                break
            for t in list(active):
                if t in right_checked:
                    continue
                right_checked.add(t)
                for v in range(A.ngens):
                    steps.tick(list(active.values()))
                    prod = A.multiply(active[t], A.gen(v))
                    if prod:
                        todo.append(prod)
                if todo:
                    break
            if not todo and not pairs:
                break
    except NontermLimit as exc:
        if exc.partial is None:
            exc.partial = list(active.values())
        raise
    basis = sorted(active.values(), key=lambda g: key(g.lm))
    G = GroebnerBasis(basis, side, A.ordering, False, A, divisors)
    return reduce_basis(A, G, budget=budget) if reduce else G


def reduce_basis(A: AlgebraPresentation, G, *, budget: int | None = None) -> GroebnerBasis:
    """Interreduce until stable: every element is replaced by its normal form
    modulo the others (dropped if that is zero), then made monic and the list
    sorted by LM. For a Groebner basis this is the reduced basis."""
    if isinstance(G, GroebnerBasis):
        elems, side, divisors = G.elements, G.side, set(G.divisors)
    else:
        elems, side, divisors = list(G), LEFT, set()
    key = A.key
    steps = _Budget(budget)
    work = [g.to(A) for g in elems if g]
    changed = True
    while changed:
        changed = False
        work.sort(key=lambda g: key(g.lm))
        for k in range(len(work)):
            g = work[k]
            red = _Reducer(A, divisors)
            for h in work[:k] + work[k + 1:]:
                if h:
                    red.add(h)
            r = red.reduce(g.terms, steps)
            if r != g.terms:
                work[k] = Element(A, r)
                changed = True
        work = [g for g in work if g]
    out = [_monic(A, g.terms, divisors) for g in work]
    out.sort(key=lambda g: key(g.lm))
    return GroebnerBasis(out, side, A.ordering, True, A, divisors)


def ideal_membership(A: AlgebraPresentation, f: Element, G) -> bool:
    elems = G.elements if isinstance(G, GroebnerBasis) else G
    return not normal_form(A, f, elems)


@dataclass
class SpecializationAudit:
    value: object
    vanishing: list = field(default_factory=list)
    poles: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.vanishing and not self.poles


def audit_specialization(G: GroebnerBasis, value) -> SpecializationAudit:
    """Which inverted coefficients vanish, or have a pole, at ``q = value``."""
    audit = SpecializationAudit(value)
    for c in G.divisors:
        try:
            v = c.evaluate(value)
        except PoleAtQ:
            audit.poles.append(c)
            continue
        if v == 0:
            audit.vanishing.append(c)
    for g in G.elements:
        for c in g.terms.values():
            try:
                c.evaluate(value)
            except PoleAtQ:
                audit.poles.append(c)
    audit.vanishing.sort(key=str)
    audit.poles.sort(key=str)
    return audit


def specialize_basis(G: GroebnerBasis, target: AlgebraPresentation) -> GroebnerBasis:
    """Specialize every element of a symbolic basis into ``target``; raises
    PoleAtQ when a coefficient is undefined there."""
    value = target.qmode.value
    elems = []
    for g in G.elements:
        h = g.map_coefficients(lambda c: c.specialize(value), target)
        if h:
            elems.append(h)
    return GroebnerBasis(elems, G.side, target.ordering, G.reduced, target)


# PBW consistency via word rewriting


@dataclass
class PBWReport:
    triples_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _word(m) -> tuple:
    return tuple(i for i, e in enumerate(m) for _ in range(e))


def _rewrite_once(A, word, k):
    """Apply the rule at the inversion word[k] > word[k+1]."""
    a, b = word[k], word[k + 1]
    rule = A.rules[(b, a)]
    out = {word[:k] + (b, a) + word[k + 2:]: rule.lam}
    for m, c in rule.tail.items():
        w = word[:k] + _word(m) + word[k + 2:]
        out[w] = out[w] + c if w in out else c
    return out


def rewrite_to_standard(A: AlgebraPresentation, terms: dict, budget: _Budget) -> dict:
    """Normalize a word combination by always rewriting the leftmost inversion."""
    todo = dict(terms)
    done: dict = {}
    while todo:
        word, c = todo.popitem()
        k = next((i for i in range(len(word) - 1) if word[i] > word[i + 1]), None)
        if k is None:
            s = done.get(word)
            s = c if s is None else s + c
            if s:
                done[word] = s
            else:
                done.pop(word, None)
            continue
        budget.tick()
        for w, c2 in _rewrite_once(A, word, k).items():
            s = todo.get(w)
            s = c * c2 if s is None else s + c * c2
            if s:
                todo[w] = s
            else:
                todo.pop(w, None)
    return done


def pbw_consistency(A: AlgebraPresentation, *, budget: int | None = None) -> PBWReport:
    """Resolve every overlap ``x_a x_b x_c`` (a > b > c in index order) by first
    rewriting ``x_a x_b`` and, separately, ``x_b x_c``; both must reach the
    same standard form."""
    rep = PBWReport()
    steps = _Budget(budget)
    n = A.ngens
    for a in range(n):
        for b in range(a):
            for c in range(b):
                rep.triples_checked += 1
                word = (a, b, c)
                left = rewrite_to_standard(A, _rewrite_once(A, word, 0), steps)
                right = rewrite_to_standard(A, _rewrite_once(A, word, 1), steps)
                if left != right:
                    diff = {w: left.get(w, 0) - right.get(w, 0) for w in set(left) | set(right)}
                    diff = {w: d for w, d in diff.items() if d}
                    rep.failures.append(((str(A.generators[a]), str(A.generators[b]),
                                          str(A.generators[c])), _word_str(A, diff)))
    return rep


def _word_str(A, terms) -> str:
    parts = []
    for w, c in sorted(terms.items()):
        mono = "*".join(str(A.generators[i]) for i in w) or "1"
        parts.append(f"({c})*{mono}")
    return " + ".join(parts) or "0"
