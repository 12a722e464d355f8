import random

import pytest

from conftest import random_element
from oracles import WordAlgebra, element_to_words, same_words
from spa.algebra import CommutationRule, check_solvable, leading_data, multiply, multiply_monomials
from spa.coeffs import SYMBOLIC
from spa.dims import monomials_of_degree
from spa.errors import NontermLimit, ZeroElement
from spa.parsing import parse_polynomial
from spa.quantum import build_uq_plus

q = SYMBOLIC.q


def P(text, A):
    return parse_polynomial(text, A)


def test_product_examples(uq2, uq3):
    x12, x13, x23 = uq2.gens()
    assert x23 * x12 == q**2 * P("x[1,2]*x[2,3]", uq2) - q * x13
    assert x13 * x12 == q**-2 * P("x[1,2]*x[1,3]", uq2)
    u = (1, 0, 2)
    assert multiply_monomials(uq2, u, (0, 0, 0)) == uq2.monomial(u)
    assert multiply_monomials(uq2, (0, 0, 0), u) == uq2.monomial(u)
    lhs = uq3.gen("x[2,4]") * uq3.gen("x[1,3]")
    rhs = P("x[1,3]*x[2,4]", uq3) - (q**2 - q**-2) * P("x[1,4]*x[2,3]", uq3)
    assert lhs == rhs


def test_bilinear_examples(uq2):
    x12, x13, x23 = uq2.gens()
    assert multiply(uq2, x12 + x13, uq2.zero) == 0
    assert (x12 + x13) * x23 == uq2.monomial((1, 0, 1)) + uq2.monomial((0, 1, 1))
    assert (x23 * x13) * x12 == x23 * (x13 * x12)


def test_products_match_word_oracle(uq2):
    W = WordAlgebra(2)
    rng = random.Random(5)
    for _ in range(25):
        f = random_element(uq2, rng, max_degree=3)
        g = random_element(uq2, rng, max_degree=3)
        expected = W.times(element_to_words(f), element_to_words(g))
        assert same_words(element_to_words(f * g), expected)


def test_products_match_word_oracle_n3(uq3):
    W = WordAlgebra(3)
    monos = [m for d in range(3) for m in monomials_of_degree(6, d)]
    rng = random.Random(2)
    for _ in range(30):
        u, v = rng.choice(monos), rng.choice(monos)
        f = uq3.multiply_monomials(u, v)
        word = lambda m: tuple(uq3.generators[i].label for i, e in enumerate(m) for _ in range(e))
        assert same_words(element_to_words(f), W.normal(word(u) + word(v)))


def test_leading_data(uq2):
    x12, x13, x23 = uq2.gens()
    f = q**2 * P("x[1,2]*x[2,3]", uq2) - q * x13
    assert leading_data(uq2, f) == ((1, 0, 1), q**2)
    assert leading_data(uq2, uq2.scalar(5)) == ((0, 0, 0), 5)
    assert leading_data(uq2, x13 + x12)[0] == (1, 0, 0)
    with pytest.raises(ZeroElement):
        leading_data(uq2, uq2.zero)


def test_associativity_random_triples():
    rng = random.Random(11)
    for N in (2, 3):
        A = build_uq_plus(N)
        monos = [m for d in range(5) for m in monomials_of_degree(A.ngens, d)]
        for _ in range(15 if N == 2 else 6):
            u, v, w = (rng.choice(monos) for _ in range(3))
            uv = A.multiply_monomials(u, v)
            vw = A.multiply_monomials(v, w)
            assert uv * A.monomial(w) == A.monomial(u) * vw


def test_monomial_products_are_unitriangular(uq3):
    rng = random.Random(3)
    monos = [m for d in range(4) for m in monomials_of_degree(6, d)]
    key = uq3.key
    for _ in range(40):
        u, v = rng.choice(monos), rng.choice(monos)
        top = tuple(a + b for a, b in zip(u, v))
        f = uq3.multiply_monomials(u, v)
        assert top in f.terms
        assert all(key(m) < key(top) for m in f.terms if m != top)
        # filtration: no term of higher total degree
        assert all(sum(m) <= sum(top) for m in f.terms)


def test_check_solvable_examples(uq3, uq2):
    assert check_solvable(uq3).passed
    rules = dict(uq2.rules)
    r = rules[(0, 2)]
    rules[(0, 2)] = CommutationRule(r.left, r.right, SYMBOLIC.zero, r.tail)
    rep = uq2.with_rules(rules).check_solvable()
    assert not rep.passed
    assert rep.violations[0][1] == "ZeroLambda"


def test_nonterminating_presentation_hits_the_budget(uq2):
    # x13 x12 -> ... + x13 x23 and x23 x13 -> ... + x12 x13 feed each other
    rules = dict(uq2.rules)
    for pair, tail in (((0, 1), (0, 1, 1)), ((1, 2), (1, 1, 0))):
        r = rules[pair]
        rules[pair] = CommutationRule(r.left, r.right, r.lam, {tail: SYMBOLIC.one})
    bad = uq2.with_rules(rules)
    bad.rewrite_budget = 500
    assert not bad.check_solvable().passed
    with pytest.raises(NontermLimit):
        bad.multiply_monomials((0, 1, 0), (1, 1, 0))


def test_element_printing_round_trips(uq3):
    rng = random.Random(8)
    for _ in range(20):
        f = random_element(uq3, rng, max_degree=3, max_terms=4)
        assert P(str(f), uq3) == f
