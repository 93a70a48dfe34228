"""Shared strategies for the property-based tests.

Everything is exact: strategies produce ``fractions.Fraction`` values and
integer matrices, never floats.
"""

from fractions import Fraction
from math import gcd

from hypothesis import HealthCheck, settings, strategies as st

from splitjac.matrices import Mat, congruence_act
from splitjac.splitting import SplittingData

settings.register_profile(
    "exact",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


@st.composite
def rationals(draw, min_num=-60, max_num=60, max_den=12, nonzero=False):
    num = draw(st.integers(min_value=min_num, max_value=max_num))
    den = draw(st.integers(min_value=1, max_value=max_den))
    if nonzero and num == 0:
        num = 1
    return Fraction(num, den)


@st.composite
def positive_rationals(draw, max_num=60, max_den=12):
    num = draw(st.integers(min_value=1, max_value=max_num))
    den = draw(st.integers(min_value=1, max_value=max_den))
    return Fraction(num, den)


@st.composite
def unimodular2(draw):
    """Random element of GL(2, Z) as a short word in elementary matrices."""
    t1 = Mat(((1, 0), (1, 1)))
    t2 = Mat(((1, 1), (0, 1)))
    flip = Mat(((1, 0), (0, -1)))
    swap = Mat(((0, 1), (1, 0)))
    letters = {"a": t1, "b": t2, "f": flip, "s": swap}
    word = draw(st.lists(st.sampled_from("abfs"), min_size=0, max_size=6))
    out = Mat.identity(2)
    for ch in word:
        out = out @ letters[ch]
    return out


@st.composite
def integer_mats(draw, rows=2, cols=2, lo=-9, hi=9):
    ent = st.integers(min_value=lo, max_value=hi)
    return Mat(tuple(tuple(draw(ent) for _ in range(cols)) for _ in range(rows)))


@st.composite
def reduced_forms(draw):
    """Positive definite form with nonpositive off-diagonal (a Selling form).

    Built from positive cone coordinates (l1, l2, l3), which parameterize
    exactly the definite forms in the closed nonpositive-off-diagonal cone.
    """
    l1 = draw(positive_rationals(max_num=40, max_den=8))
    l2 = draw(positive_rationals(max_num=40, max_den=8))
    l3 = draw(rationals(min_num=0, max_num=40, max_den=8))
    return Mat(((l1 + l3, -l3), (-l3, l2 + l3)))


@st.composite
def pd_forms(draw):
    """Arbitrary positive definite rational form: a reduced one, twisted."""
    q = draw(reduced_forms())
    x = draw(unimodular2())
    return congruence_act(x, q)


@st.composite
def splitting_data(draw, max_d=12, max_num=24, max_den=8):
    d = draw(st.integers(min_value=2, max_value=max_d))
    k = draw(st.integers(min_value=1, max_value=d - 1).filter(
        lambda k: gcd(k, d) == 1))
    lp = draw(positive_rationals(max_num=max_num, max_den=max_den))
    l = draw(positive_rationals(max_num=max_num, max_den=max_den))
    return SplittingData(d=d, k=k, lp=lp, l=l)
