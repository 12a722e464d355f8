import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from spa.coeffs import QMode  # noqa: E402
from spa.dims import monomials_of_degree  # noqa: E402
from spa.quantum import build_uq_plus  # noqa: E402


def random_element(A, rng, max_degree=2, max_terms=3, coeffs=(-3, -2, -1, 1, 2, 3)):
    """Random nonzero element with small integer coefficients (times q^k when symbolic)."""
    monos = [m for d in range(max_degree + 1) for m in monomials_of_degree(A.ngens, d)]
    while True:
        terms = {}
        for m in rng.sample(monos, rng.randint(1, max_terms)):
            c = A.qmode.scalar(rng.choice(coeffs))
            if A.qmode.symbolic and rng.random() < 0.3:
                c = c * A.qmode.q ** rng.choice((-1, 1, 2))
            terms[m] = c
        f = A.element(terms)
        if f and any(sum(m) for m in f.terms):
            return f


def random_ideal(A, rng, max_gens=3, max_degree=2):
    return [random_element(A, rng, max_degree) for _ in range(rng.randint(1, max_gens))]


@pytest.fixture
def uq2():
    return build_uq_plus(2)


@pytest.fixture
def uq3():
    return build_uq_plus(3)


@pytest.fixture
def uq2_at2():
    return build_uq_plus(2, QMode.parse("2"))


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    # under --import-mode=importlib the module may be registered under a
    # dotted name, so look it up by suffix
    results = None
    for name, mod in list(sys.modules.items()):
        if name.split(".")[-1] == "test_acceptance" and getattr(mod, "RESULTS", None):
            results = mod.RESULTS
            break
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=lambda k: (int(str(k).rstrip("+")), str(k))):
        terminalreporter.write_line(results[key])
