import doctest

import pytest

import spa.coeffs
import spa.groebner
import spa.parsing


@pytest.mark.parametrize("module", [spa.coeffs, spa.groebner, spa.parsing])
def test_doctests(module):
    result = doctest.testmod(module)
    assert result.failed == 0
