import pytest

from charrank import catalog, dsl, engine, verify
from charrank.errors import ParameterError

ALL = [(f, p) for f in catalog.FAMILIES for p in catalog.DEFAULT_PARAMS[f]]


def test_build_dold_2_3():
    rec = catalog.build("dold", 2, 3)
    assert rec.name == "Dold P(2,3)" and rec.alg.dim == 8
    assert set(rec.bundles) == {"xi", "eta"}
    assert rec.expected["ucharrank"] == 8
    assert rec.expected["charrank(eta)"] == 8
    assert rec.expected["charrank(xi)"] == 1


def test_build_product_4_8():
    rec = catalog.build("product_spheres", 4, 8)
    assert rec.expected["ucharrank"] == 12
    xi = rec.bundles["xi"]
    alg = rec.alg
    x, y = alg.basis_element("x"), alg.basis_element("y")
    assert xi.class_(4) == x and xi.class_(8) == y and xi.class_(12) == x * y


def test_build_moore_5():
    assert catalog.build("moore", 5).expected["ucharrank"] == 4


@pytest.mark.parametrize(
    "fam,params",
    [("rp", (0,)), ("stunted", (5, 4)), ("stunted", (5, 0)), ("lens", (4, 2)), ("lens", (3, 1)),
     ("moore", (1,)), ("dold", (0, 1)), ("rp", (1, 2)), ("torus", (2,))],
)
def test_parameter_ranges(fam, params):
    with pytest.raises(ParameterError):
        catalog.build(fam, *params)


def test_tangent_profiles():
    src = catalog.tangent_profile("product_spheres", 2, 6)
    assert src.assignments == {}
    rec = catalog.build("product_spheres", 2, 6)
    assert engine.charrank(rec.tangent) == 1
    rp3 = catalog.build("rp", 3)
    assert rp3.tangent.is_trivial() and engine.charrank(rp3.tangent) == 0
    rp2 = catalog.build("rp", 2)
    assert rp2.tangent.bits == (1, 1, 1)
    assert engine.charrank(rp2.tangent) == 2
    assert catalog.tangent_profile("dold", 2, 3) is None
    with pytest.raises(ParameterError):
        catalog.tangent_profile("klein", 1)


def test_rp_tangent_matches_binomial_expansion():
    from math import comb

    for n in range(1, 12):
        t = catalog.build("rp", n).tangent
        assert t.bits[1:] == tuple(comb(n + 1, i) % 2 for i in range(1, n + 1))


@pytest.mark.parametrize("fam,params", ALL)
def test_record_invariants(fam, params):
    rec = catalog.build(fam, *params)
    for alg in rec.document.spaces.values():
        assert alg.validate() == []
    if fam in catalog.MANIFOLD_FAMILIES:
        assert engine.poincare_pairing_check(rec.alg)
    assert all(c.citation for c in rec.claims)
    assert "ucharrank" in rec.expected
    for r in verify.verify_record(rec):
        assert r.ok, r.line()


def test_bundle_expectations_cover_every_bundle():
    for fam, params in ALL:
        rec = catalog.build(fam, *params)
        for name in rec.bundles:
            assert f"charrank({name})" in rec.expected, (rec.name, name)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 3), (4, 4), (3, 1)])
def test_dold_betti_sum(m, n):
    assert sum(catalog.build("dold", m, n).alg.betti) == (m + 1) * (n + 1)


def test_stunted_constraints():
    # m + 1 = 4: bottom class allowed, next class spherical
    rec = catalog.build("stunted", 6, 3)
    assert [c.label() for c in rec.constraints] == ["spherical(4)", "spherical(5)"]
    rec = catalog.build("stunted", 7, 2)
    assert [c.label() for c in rec.constraints] == ["spherical(3)"]
    assert "RP^n" in rec.note


def test_emit_is_parseable_source():
    rec = catalog.build("moore", 2)
    text = catalog.emit(rec)
    assert 'space "M(Z2,2)"' in text
    assert "meta sq1 x2 = x3" in text
    assert dsl.load(text).space("M(Z2,2)").sq1 is not None


def test_verify_whole_catalog():
    results = verify.verify()
    assert results and all(r.ok for r in results)
    assert {r.space for r in results} == {catalog.build(f, *p).name for f, p in ALL}


def test_verify_reports_mismatch():
    rec = catalog.build("rp", 3)
    bad = catalog.Claim("ucharrank", 2, "deliberately wrong")
    res = verify.check_claim(rec, bad)
    assert not res.ok and res.computed == 3 and "FAIL" in res.line()
    err = verify.check_claim(rec, catalog.Claim("bundle_bound", 1, "x", bundle="gamma", param=9))
    assert not err.ok and err.error
