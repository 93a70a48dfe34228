"""Exact matrix kernel: inverses, congruence action, Smith normal form."""

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given

from conftest import integer_mats, pd_forms, rationals, unimodular2
from splitjac.errors import SingularMatrix, UnsupportedRank
from splitjac.matrices import (
    Mat,
    congruence_act,
    imat,
    inv2,
    is_positive_definite,
    parse_rat,
    qmat,
    rat_str,
    snf2,
)


def test_rat_str_roundtrip():
    assert rat_str(Fraction(3)) == "3"
    assert rat_str(Fraction(-5, 9)) == "-5/9"
    assert parse_rat("74/9") == Fraction(74, 9)
    assert parse_rat("-21") == -21


def test_mat_basic_ops():
    a = imat(1, 2, 3, 4)
    b = imat(0, 1, 1, 0)
    assert (a @ b).rows == ((2, 1), (4, 3))
    assert (a + b).rows == ((1, 3), (4, 4))
    assert (a - a).rows == ((0, 0), (0, 0))
    assert a.T.rows == ((1, 3), (2, 4))
    assert a.det() == -2
    assert a.trace() == 5
    assert not a.is_symmetric()
    assert qmat("1/2", 0, 0, 1).is_symmetric()


def test_mat_rejects_ragged():
    with pytest.raises(ValueError):
        Mat(((1, 2), (3,)))


def test_inv2_golden():
    a = qmat(2, 1, 1, 1)
    assert inv2(a) == qmat(1, -1, -1, 2)
    assert inv2(Mat(((Fraction(4),),))) == Mat(((Fraction(1, 4),),))


def test_inv2_singular():
    with pytest.raises(SingularMatrix):
        inv2(imat(1, 2, 2, 4))
    with pytest.raises(SingularMatrix):
        inv2(Mat(((0,),)))
    with pytest.raises(UnsupportedRank):
        inv2(Mat(((1, 2),)))


def test_congruence_golden():
    # reducing [[54,-21],[-21,74/9]] by [[1,0],[1,1]] twice then [[1,1],[0,1]]
    q = qmat(54, -21, -21, Fraction(74, 9))
    t1 = imat(1, 0, 1, 1)
    t2 = imat(1, 1, 0, 1)
    step = congruence_act(t2, congruence_act(t1, congruence_act(t1, q)))
    assert step == qmat(Fraction(26, 9), Fraction(-5, 3), Fraction(-5, 3), 2)


@given(pd_forms())
def test_positive_definite_invariant_under_congruence(q):
    assert is_positive_definite(q)
    assert q.det() > 0


@given(unimodular2(), pd_forms())
def test_congruence_preserves_det_up_to_square(x, q):
    assert congruence_act(x, q).det() == x.det() ** 2 * q.det()
    assert abs(x.det()) == 1


@given(unimodular2(), unimodular2(), pd_forms())
def test_congruence_composition_law(x, y, q):
    # acting by x then y equals acting by x @ y in one step
    assert congruence_act(y, congruence_act(x, q)) == congruence_act(x @ y, q)


@given(unimodular2())
def test_inv2_is_inverse(x):
    assert x @ inv2(x) == Mat.identity(2).map(Fraction)
    assert inv2(x) @ x == Mat.identity(2).map(Fraction)


def test_snf2_goldens():
    assert snf2(imat(1, -7, 0, 18)).invariant_factors == (1, 18)
    assert snf2(imat(2, 0, 0, 2)).invariant_factors == (2, 2)
    assert snf2(imat(2, 1, 0, 1)).invariant_factors == (1, 2)
    assert snf2(imat(0, 0, 0, 0)).invariant_factors == (0, 0)
    assert snf2(imat(6, 4, 4, 8)).invariant_factors == (2, 16)


def test_snf2_rejects_non_integer():
    with pytest.raises(ValueError):
        snf2(qmat("1/2", 0, 0, 1))


@given(integer_mats())
def test_snf2_properties(a):
    res = snf2(a)
    g1, g2 = res.invariant_factors
    assert res.u @ a @ res.v == res.d
    assert abs(res.u.det()) == 1
    assert abs(res.v.det()) == 1
    assert g1 >= 0 and g2 >= 0
    if g1 != 0:
        assert g2 % g1 == 0
    assert g1 * g2 == abs(a.det())
    entries_gcd = gcd(gcd(abs(a[0, 0]), abs(a[0, 1])), gcd(abs(a[1, 0]), abs(a[1, 1])))
    assert g1 == entries_gcd


@given(integer_mats(lo=-4, hi=4), unimodular2(), unimodular2())
def test_snf2_invariant_under_unimodular(a, x, y):
    # invariant factors do not change under left/right unimodular action
    assert snf2(x @ a @ y).invariant_factors == snf2(a).invariant_factors


@given(rationals(nonzero=True), rationals(), rationals(), rationals(nonzero=True))
def test_det_multiplicative(a, b, c, d):
    m = qmat(a, b, c, d)
    n = qmat(d, c, b, a)
    assert (m @ n).det() == m.det() * n.det()
