import random
from fractions import Fraction

import pytest

from conftest import random_ideal
from oracles import quotient_counts
from spa.dims import (
    check_elimination_lemma,
    eliminate,
    gk_dimension,
    growth_degree,
    hilbert_truncated,
    staircase,
)
from spa.groebner import TWO_SIDED, buchberger, ideal_membership
from spa.quantum import build_uq_minus, build_uq_plus, tensor_product


def test_gkdim_of_the_algebra():
    for N in range(1, 5):
        A = build_uq_plus(N)
        assert gk_dimension(A, buchberger(A, [])) == N * (N + 1) // 2
    T = tensor_product(build_uq_plus(1), build_uq_minus(2))
    assert gk_dimension(T, buchberger(T, [])) == 4


def test_gkdim_examples(uq2):
    x12, x13, x23 = uq2.gens()
    assert gk_dimension(uq2, buchberger(uq2, [x12, x13, x23])) == 0
    G = buchberger(uq2, [x12], TWO_SIDED)
    assert staircase(G) == [(0, 1, 0), (1, 0, 0)]
    assert gk_dimension(uq2, G) == 1
    # the left ideal A*x12 is smaller: only x12 is in the staircase
    assert gk_dimension(uq2, buchberger(uq2, [x12])) == 2
    assert gk_dimension(uq2, buchberger(uq2, [uq2.one])) == 0


def test_hilbert_examples(uq2):
    x12 = uq2.gen(0)
    assert hilbert_truncated(uq2, buchberger(uq2, []), 3) == [1, 3, 6, 10]
    assert hilbert_truncated(uq2, buchberger(uq2, [x12], TWO_SIDED), 3) == [1, 1, 1, 1]
    assert hilbert_truncated(uq2, buchberger(uq2, [x12]), 0) == [1]


def test_growth_degree():
    assert growth_degree([1, 3, 6, 10, 15, 21, 28]) == 3
    assert growth_degree([1, 1, 1, 1, 1]) == 1
    assert growth_degree([1, 2, 1, 0, 0, 0]) == 0


def test_growth_matches_gkdim_on_random_ideals(uq2_at2):
    rng = random.Random(21)
    for _ in range(10):
        G = buchberger(uq2_at2, random_ideal(uq2_at2, rng))
        assert growth_degree(hilbert_truncated(uq2_at2, G, 8)) == gk_dimension(uq2_at2, G)


def test_proper_ideals_drop_dimension(uq2_at2):
    rng = random.Random(22)
    for _ in range(10):
        G = buchberger(uq2_at2, random_ideal(uq2_at2, rng))
        if not G.is_unit_ideal():
            assert gk_dimension(uq2_at2, G) < 3


def test_eliminate_examples(uq2):
    x12, x13, x23 = uq2.gens()
    two = dict(side=TWO_SIDED)
    assert [str(f) for f in eliminate(uq2, [x12], [1], **two)] == ["x[1,3]"]
    assert eliminate(uq2, [x12], [2], **two) == []
    assert [str(f) for f in eliminate(uq2, [uq2.one], [2])] == ["1"]
    # U = {x12, x23}: the block ordering eliminating x13 is not admissible
    res = eliminate(uq2, [x12], [0, 2], details=True, **two)
    assert res.method == "linear-search"
    assert [str(f) for f in res.elements] == ["x[1,2]"]
    with pytest.raises(ValueError):
        eliminate(uq2, [x12], [])


def test_eliminated_elements_lie_in_the_ideal(uq2_at2):
    rng = random.Random(23)
    for _ in range(6):
        gens = random_ideal(uq2_at2, rng)
        G = buchberger(uq2_at2, gens)
        for keep in ([0], [1], [2], [0, 1], [1, 2], [0, 2]):
            for f in eliminate(uq2_at2, gens, keep):
                assert f.support <= set(keep)
                assert ideal_membership(uq2_at2, f, G)


def test_empty_elimination_agrees_with_oracle(uq2):
    # L = A*x12*A meets K[x23] trivially: the quotient keeps every power of x23
    counts, stable = quotient_counts(2, [{((1, 2),): Fraction(1)}], 5, side="two-sided")
    assert stable and counts == [1] * 6


def test_elimination_lemma(uq2, uq2_at2):
    G = buchberger(uq2, [uq2.gen(0)], TWO_SIDED)
    rep = check_elimination_lemma(uq2, G)
    assert rep.passed and rep.gkdim == 1
    assert rep.checked[2] == 3
    assert check_elimination_lemma(uq2, buchberger(uq2, [uq2.one])).passed
    rng = random.Random(24)
    for _ in range(3):
        G = buchberger(uq2_at2, random_ideal(uq2_at2, rng))
        assert check_elimination_lemma(uq2_at2, G).passed
