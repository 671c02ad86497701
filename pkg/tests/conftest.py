from hypothesis import HealthCheck, settings, strategies as st

from charstack.exact_algebra import RatFun
from charstack.partitions import partitions

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def polynomials(draw, names=("q", "t"), max_terms=3, max_deg=2):
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(0, max_deg) for _ in names]), small_ints, max_size=max_terms))
    return RatFun.from_terms(names, terms)


@st.composite
def ratfuns(draw, names=("q", "t")):
    num = draw(polynomials(names))
    den = draw(polynomials(names).filter(lambda p: not p.is_zero()))
    return num / den


def partitions_up_to(n: int):
    return st.integers(0, n).flatmap(lambda k: st.sampled_from(partitions(k)))
