"""ℚ(ζ_N) 上的稀疏消元与求逆"""
import pytest

from src.utils.cyclotomic import cyclotomic_field
from src.utils.errors import SingularMatrixError
from src.utils.linalg import EchelonBasis, add_scaled, inverse, rank

F3 = cyclotomic_field(3)
ONE, ZERO, W = F3.one, F3.zero, F3.root(1)


def test_add_scaled_cancels():
    target = {"a": ONE, "b": W}
    add_scaled(target, {"a": ONE}, -ONE)
    assert target == {"b": W}


def test_echelon_combination():
    basis = EchelonBasis(F3)
    v0 = {"x": ONE, "y": W}
    v1 = {"y": ONE}
    assert basis.insert(v0) == (True, {0: ONE})
    assert basis.insert(v1) == (True, {1: ONE})
    # x + (w + 2) y = v0 + 2 v1
    target = {"x": ONE, "y": W + 2}
    is_new, combo = basis.insert(target)
    assert not is_new
    assert combo == {0: ONE, 1: F3.rational(2)}
    assert basis.contains({"x": W, "y": W * W})
    assert not basis.contains({"z": ONE})
    assert len(basis) == 2


def test_rank():
    rows = [{0: ONE, 1: W}, {0: W, 1: W * W}, {2: ONE}]
    assert rank(rows, F3) == 2


def test_inverse():
    m = [[ONE, W], [ZERO, ONE]]
    inv = inverse(m, F3)
    assert inv == [[ONE, -W], [ZERO, ONE]]


def test_singular():
    with pytest.raises(SingularMatrixError):
        inverse([[ONE, W], [W, W * W]], F3)
