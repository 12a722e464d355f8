import itertools
import random

import pytest

from spa.dims import monomials_of_degree
from spa.orderings import (
    Cmp,
    DegRevLex,
    Elimination,
    GenContext,
    GradedPaper,
    IndexLexWord,
    PaperOrdering,
    Tensor,
    compare_generators,
    compare_monomials,
    generator_ranks,
    parse_ordering,
    verify_ordering_axioms,
)
from spa.quantum import build_lambda, build_uq_minus, build_uq_plus, tensor_product


def ctx(N):
    return GenContext(generator_ranks(build_lambda(N)))


def test_compare_generators():
    assert compare_generators((1, 3), (1, 2)) is Cmp.LESS
    assert compare_generators((1, 2), (2, 3)) is Cmp.LESS
    assert compare_generators((2, 3), (2, 3)) is Cmp.EQUAL
    assert compare_generators((2, 4), (1, 4)) is Cmp.GREATER


def test_paper_ordering_examples():
    c = ctx(2)
    one, x12, x13 = (0, 0, 0), (1, 0, 0), (0, 1, 0)
    assert compare_monomials(PaperOrdering(), one, x13, c) is Cmp.LESS
    assert compare_monomials(PaperOrdering(), x12, (1, 1, 0), c) is Cmp.LESS
    assert compare_monomials(PaperOrdering(), (0, 2, 0), x12, c) is Cmp.LESS
    assert compare_monomials(GradedPaper(), (0, 2, 0), x12, c) is Cmp.GREATER


def test_degrevlex_examples():
    c = ctx(2)
    # ranks: x13 < x12 < x23
    assert compare_monomials(DegRevLex(), (0, 1, 0), (1, 0, 0), c) is Cmp.LESS
    assert compare_monomials(DegRevLex(), (0, 0, 1), (2, 0, 0), c) is Cmp.LESS
    # equal degree: more of the smallest variable means smaller
    assert compare_monomials(DegRevLex(), (1, 1, 0), (2, 0, 0), c) is Cmp.LESS
    assert compare_monomials(DegRevLex(), (0, 1, 1), (1, 0, 1), c) is Cmp.LESS


@pytest.mark.parametrize("spec", [PaperOrdering(), IndexLexWord(), GradedPaper(), DegRevLex(),
                                  Elimination(frozenset({1}))])
def test_total_order_on_samples(spec):
    c = ctx(3)
    monos = [m for d in range(4) for m in monomials_of_degree(6, d)]
    rng = random.Random(0)
    sample = rng.sample(monos, 60)
    ordered = sorted(sample, key=lambda m: (compare_monomials(spec, m, m, c), m))
    for u, v in itertools.combinations(sample, 2):
        a, b = compare_monomials(spec, u, v, c), compare_monomials(spec, v, u, c)
        assert a == -b and a != Cmp.EQUAL
    for u, v, w in itertools.islice(itertools.permutations(sample, 3), 3000):
        if compare_monomials(spec, u, v, c) < 0 and compare_monomials(spec, v, w, c) < 0:
            assert compare_monomials(spec, u, w, c) < 0
    assert len(ordered) == len(sample)


def test_graded_refines_degree():
    c = ctx(3)
    rng = random.Random(1)
    monos = [m for d in range(5) for m in monomials_of_degree(6, d)]
    for _ in range(300):
        u, v = rng.choice(monos), rng.choice(monos)
        if sum(u) < sum(v):
            assert compare_monomials(GradedPaper(), u, v, c) is Cmp.LESS
            assert compare_monomials(DegRevLex(), u, v, c) is Cmp.LESS


def test_elimination_dominates():
    c = ctx(2)
    spec = Elimination(frozenset({1}))  # eliminate x13
    assert compare_monomials(spec, (0, 1, 0), (5, 0, 5), c) is Cmp.GREATER
    # inside the kept block the inner ordering decides: x12 < x23
    assert compare_monomials(spec, (1, 0, 0), (0, 0, 1), c) is Cmp.LESS


def test_parse_ordering():
    A = build_uq_plus(2)
    assert parse_ordering("paper", A) == PaperOrdering()
    assert parse_ordering("elim:x[1,3]", A) == Elimination(frozenset({1}))
    assert parse_ordering("elim:x[1,2],x[1,3]", A).eliminated == frozenset({0, 1})
    with pytest.raises(ValueError):
        parse_ordering("tensor", A)
    with pytest.raises(ValueError):
        parse_ordering("elim:x[1,2],x[1,3],x[2,3]", A)
    T = tensor_product(build_uq_plus(1), build_uq_minus(1))
    assert isinstance(parse_ordering("tensor", T), Tensor)


def test_degrevlex_axioms_hold():
    for N in (2, 3):
        rep = verify_ordering_axioms(build_uq_plus(N), DegRevLex(), 1500, seed=N)
        assert rep.passed, rep.violations[:3]


def test_paper_ordering_axioms_fail_with_counterexample():
    A = build_uq_plus(2)
    rep = verify_ordering_axioms(A, PaperOrdering(), 500)
    assert not rep.passed
    conditions = {v.condition for v in rep.violations}
    assert "generator-monotonicity" in conditions
    # x12 < x23 but LM(x13 x12) = x12 x13 is above LM(x13 x23) = x13 x23
    assert any("x[1,3]*x[1,2]" in v.detail for v in rep.violations)


def test_swapped_generator_ordering_violates_condition_2():
    # letters compared by index order instead: the C5 tail x13 sits above x12 x23
    A = build_uq_plus(2)
    rep = verify_ordering_axioms(A, IndexLexWord(), 400)
    assert "condition-2" in {v.condition for v in rep.violations}
    assert not A.check_solvable(IndexLexWord()).passed


def test_empty_budget_is_a_vacuous_pass():
    rep = verify_ordering_axioms(build_uq_plus(2), DegRevLex(), 0)
    assert rep.passed
    assert rep.warnings
