import pytest
from hypothesis import strategies as st

from seqeffect.algebra import Branch, Element
from seqeffect.poly import AlgebraConfig, TruncPoly


def repaired(coeffs):
    for k in coeffs:
        if k:
            return [-c for c in coeffs] if k < 0 else list(coeffs)
    return list(coeffs)


def polys(cfg, bound=3):
    return st.lists(
        st.integers(-bound, bound), min_size=cfg.width, max_size=cfg.width
    ).map(lambda c: TruncPoly(cfg, repaired(c)))


@st.composite
def elements(draw, cfg, bound=3, mbound=4):
    p = draw(polys(cfg, bound))
    q = draw(polys(cfg, bound))
    lo = 0 if (p.is_zero() and q.is_zero()) else -mbound
    m = draw(st.integers(lo, mbound))
    return Element(draw(st.sampled_from([Branch.F, Branch.G])), p, q, m)


@st.composite
def cfg_and(draw, make, count, ns=(2, 3, 4, 5), **kw):
    cfg = AlgebraConfig(draw(st.sampled_from(ns)))
    return (cfg, *(draw(make(cfg, **kw)) for _ in range(count)))


@pytest.fixture(params=[2, 3, 4, 5], ids=lambda n: f"n{n}")
def cfg(request):
    return AlgebraConfig(request.param)
