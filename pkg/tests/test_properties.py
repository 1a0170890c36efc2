from functools import lru_cache

from hypothesis import given, settings
from hypothesis import strategies as st

from charrank import catalog, engine
from charrank.engine import SWProfile

CASES = [(f, p) for f in catalog.FAMILIES for p in catalog.DEFAULT_PARAMS[f]] + [
    ("dold", (4, 4)),
    ("rp", (14,)),
    ("s1_x_cp", (6,)),
]


@lru_cache(maxsize=None)
def build(fam, params):
    return catalog.build(fam, *params)


@st.composite
def record_and_profiles(draw, count=2):
    fam, params = draw(st.sampled_from(CASES))
    rec = build(fam, params)
    alg = rec.alg
    profiles = []
    for _ in range(count):
        bits = [draw(st.integers(0, (1 << alg.betti[i]) - 1)) for i in range(1, alg.dim + 1)]
        profiles.append(SWProfile.from_bits(alg, [1] + bits))
    return rec, profiles


@given(record_and_profiles(count=3))
def test_whitney_sum_is_a_commutative_monoid(data):
    rec, (p, q, r) = data
    s = engine.whitney_sum
    assert s(p, q) == s(q, p)
    assert s(s(p, q), r) == s(p, s(q, r))
    assert s(p, SWProfile.trivial(rec.alg)) == p


@given(record_and_profiles(count=1))
def test_inverse_is_involutive(data):
    _, (p,) = data
    inv = engine.sw_inverse(p)
    assert engine.sw_inverse(inv) == p
    assert engine.whitney_sum(p, inv).is_trivial()


@given(record_and_profiles(count=1))
def test_charrank_bounds_and_coverage(data):
    rec, (p,) = data
    alg = rec.alg
    c = engine.charrank(p)
    rx = engine.first_nonzero_degree(alg)
    assert min(rx - 1, alg.dim) <= c <= alg.dim
    cov = engine.coverage(p)
    assert all(ok for _, _, _, ok in cov[: c + 1])
    if c < alg.dim:
        assert not cov[c + 1][3]


@given(record_and_profiles(count=1), st.integers(0, 20))
def test_restricted_spans_are_subspaces(data, k):
    _, (p,) = data
    full = engine.sw_spans(p)
    part = engine.sw_spans(p, max_index=k)
    for j, space in enumerate(part.spaces):
        assert all(full[j].contains(v) for v in space.rows)


@given(record_and_profiles(count=1))
def test_monomial_length_at_most_cup_length(data):
    rec, (p,) = data
    assert engine.max_sw_monomial_length(p) <= engine.cup_length(rec.alg)


@settings(max_examples=50)
@given(st.sampled_from([("product_spheres", (2, 6)), ("product_spheres", (3, 3)), ("s1_x_cp", (3,))]), st.data())
def test_pullback_respects_whitney_sum(case, data):
    rec = build(*case)
    for h in rec.document.maps.values():
        src = h.source
        draw = lambda: SWProfile.from_bits(
            src, [1] + [data.draw(st.integers(0, (1 << src.betti[i]) - 1)) for i in range(1, src.dim + 1)]
        )
        p, q = draw(), draw()
        lhs = engine.pullback(h, engine.whitney_sum(p, q))
        rhs = engine.whitney_sum(engine.pullback(h, p), engine.pullback(h, q))
        assert lhs == rhs


@given(record_and_profiles(count=1))
def test_kernel_agrees_with_reference(data):
    from charrank import kernel

    rec, (p,) = data
    packed = kernel.pack(rec.alg)
    for backend in kernel.BACKENDS:
        assert kernel.charrank_batch(packed, [p.bits], backend) == [engine.charrank(p)]
