from fractions import Fraction

from hypothesis import strategies as st

from exptensor.exactcore import MultiPoly
from exptensor.weyl import WeylOp

small_fracs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
nonzero_fracs = small_fracs.filter(lambda x: x != 0)


def polys(n, max_deg=3, laurent=False, var="t"):
    lo = -2 if laurent else 0
    exps = st.tuples(*[st.integers(lo, max_deg)] * n)
    return st.dictionaries(exps, small_fracs, max_size=4).map(
        lambda d: MultiPoly(n, d, laurent=laurent, var=var))


def weyl_ops(n, max_deg=2):
    key = st.tuples(st.tuples(*[st.integers(0, max_deg)] * n), st.tuples(*[st.integers(0, max_deg)] * n))
    return st.dictionaries(key, small_fracs, max_size=3).map(lambda d: WeylOp(n, d))
