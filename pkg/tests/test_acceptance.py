"""Acceptance criteria 1-11, each an exact match.

Every test reports to the acceptance summary printed at the end of the run.
"""

import random
from contextlib import contextmanager

import pytest

import properties as P
from charrank import catalog, engine
from charrank.engine import SWProfile
from charrank.f2linalg import RowSpace, rank_of
from conftest import record
from oracles import echelon_contains, naive_echelon


@contextmanager
def criterion(number, description):
    ok = False
    try:
        yield
        ok = True
    finally:
        record(number, description, ok)


def charrank_set(alg, constraints=()):
    return {c for _, c in engine.charrank_universe(alg, constraints)}


@pytest.mark.parametrize("n", range(2, 9))
def test_c01_projective_space_dichotomy(n):
    with criterion(1, "RP^n, n=2..8: charrank in {0, n}, ucharrank n"):
        alg = catalog.build("rp", n).alg
        assert charrank_set(alg) <= {0, n}
        res = engine.ucharrank_formal(alg)
        assert res.value == n
        assert res.witness.bits == (1, 1) + (0,) * (n - 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_c02_circle_times_cp(n):
    with criterion(2, "S^1 x CP^n, n=1..3: charrank in {0, 1, 2n+1}, max 2n+1"):
        alg = catalog.build("s1_x_cp", n).alg
        assert charrank_set(alg) <= {0, 1, 2 * n + 1}
        assert engine.ucharrank_formal(alg).value == 2 * n + 1


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (2, 3)])
def test_c03_dold_manifolds(m, n):
    with criterion(3, "Dold P(m,n): charrank in {0, 1, 2n+m}; xi -> 1, eta -> 2n+m"):
        rec = catalog.build("dold", m, n)
        alg = rec.alg
        c, d = alg.basis_element("c"), alg.basis_element("d")
        assert charrank_set(alg) <= {0, 1, 2 * n + m}
        assert engine.ucharrank_formal(alg).value == 2 * n + m
        assert engine.charrank(SWProfile(alg, {1: c})) == 1
        assert engine.charrank(SWProfile(alg, {1: c, 2: d})) == 2 * n + m


HOPF = {1, 2, 4, 8}


def product_sphere_value(d, m):
    if d == m:
        return d - 1
    lo, hi = sorted((d, m))
    if lo not in HOPF:
        return lo - 1
    if hi not in HOPF:
        return hi - 1
    return d + m


@pytest.mark.parametrize("d,m,value", [(3, 5, 2), (2, 6, 5), (4, 8, 12), (1, 2, 3), (2, 2, 1), (3, 3, 2)])
def test_c04_product_of_spheres(d, m, value):
    with criterion(4, "S^d x S^m: ucharrank d-1 / m-1 / d+m (and d-1 when d = m)"):
        assert product_sphere_value(d, m) == value
        rec = catalog.build("product_spheres", d, m)
        assert engine.ucharrank_formal(rec.alg, rec.constraints).value == value


def test_c05_worked_examples():
    with criterion(5, "S^2 x S^6 and S^4 x S^8: tangent/xi charrank, both bounds, cup"):
        r26 = catalog.build("product_spheres", 2, 6)
        alg = r26.alg
        x = alg.basis_element("x")
        xi = SWProfile(alg, {2: x})
        assert engine.charrank(SWProfile.trivial(alg)) == 1
        assert engine.charrank(r26.tangent) == 1
        assert engine.charrank(xi) == 5
        assert engine.boundary_cup_bound(alg, 1, r26.tangent).floor == 4
        assert engine.bundle_cup_bound(xi, 5).floor == 2
        assert engine.cup_length(alg) == 2

        r48 = catalog.build("product_spheres", 4, 8)
        alg = r48.alg
        x, y = alg.basis_element("x"), alg.basis_element("y")
        xi = SWProfile(alg, {4: x, 8: y, 12: x * y})
        assert engine.charrank(r48.tangent) == 3
        assert engine.charrank(xi) == 12
        assert engine.boundary_cup_bound(alg, 3, r48.tangent).floor == 3
        assert engine.bundle_cup_bound(xi, 7).floor == 2
        assert engine.cup_length(alg) == 2


@pytest.mark.parametrize("n,value", [(2, 3), (3, 2), (4, 3), (5, 4), (8, 7)])
def test_c06_moore_spaces(n, value):
    with criterion(6, "M(Z2,n): ucharrank n-1, and 3 for n = 2"):
        rec = catalog.build("moore", n)
        res = engine.ucharrank_formal(rec.alg, rec.constraints)
        assert res.value == value
        if n == 2:
            assert res.witness.bits == (1, 0, 1, 1)


@pytest.mark.parametrize("n,m", [(5, 1), (6, 3), (7, 2), (9, 3), (10, 7)])
def test_c07_stunted_projective_spaces(n, m):
    with criterion(7, "RP^n/RP^m: ucharrank m+1 if m+1 in {2,4,8} else m"):
        rec = catalog.build("stunted", n, m)
        want = m + 1 if m + 1 in (2, 4, 8) else m
        assert engine.ucharrank_formal(rec.alg, rec.constraints).value == want


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_c08_complex_projective_space(n):
    with criterion(8, "CP^n, n=1..4: charrank(gamma) = 2n, charrank in {1, 2n}"):
        alg = catalog.build("cp", n).alg
        gamma = SWProfile(alg, {2: alg.basis_element("b")})
        assert engine.charrank(gamma) == 2 * n
        assert charrank_set(alg) <= {1, 2 * n}


@pytest.mark.parametrize("m,n", [(3, 2), (5, 3)])
def test_c09_lens_spaces(m, n):
    with criterion(9, "lens L(m,n) with trivial_only: ucharrank 2n-2"):
        rec = catalog.build("lens", m, n)
        assert engine.ucharrank_formal(rec.alg, (engine.Constraint.trivial_only(),)).value == 2 * n - 2


SUITES = [
    ("vanishing w_r and trivial profile", lambda recs: P.lower_degree_vanishing(recs)),
    ("trivial summand and inverse summand", lambda recs: P.sum_with_trivial_and_inverse(recs)),
    ("wide first degree", lambda recs: P.wide_first_degree()),
    ("power-of-two first degree", lambda recs: P.power2_first_degree(recs)),
    ("suspension bound by k_X", lambda recs: P.suspension_bound(recs)),
    ("surjective pullback", lambda recs: P.surjective_pullback(recs)),
    ("monomial length equals cup-length", lambda recs: P.full_rank_monomial_length(recs)),
    ("duality gap dichotomy", lambda recs: P.duality_gap(recs)),
    ("parity additivity on RP^3, RP^5", lambda recs: P.parity_additivity()),
    ("bounds dominate cup-length", lambda recs: P.bound_soundness(recs)),
]


@pytest.mark.parametrize("name,suite", SUITES, ids=[s[0] for s in SUITES])
def test_c10_property_suites(name, suite, records):
    with criterion(10, "property suites over all universes with <= 2^16 profiles: zero violations"):
        violations = suite(records)
        assert violations == [], violations[:5]


def test_c11_kernel_oracle():
    with criterion(11, "rank/contains agree with a naive eliminator on 1e5 random instances"):
        rng = random.Random(20240611)
        mismatches = 0
        for _ in range(100_000):
            w = rng.randint(1, 64)
            vecs = [rng.getrandbits(w) for _ in range(rng.randint(0, 16))]
            if vecs and rng.random() < 0.3:
                vecs.append(vecs[0] ^ vecs[-1])
            space = RowSpace(w, vecs)
            piv = naive_echelon(vecs, w)
            inside = 0
            for v in vecs:
                if rng.random() < 0.5:
                    inside ^= v
            probe = rng.getrandbits(w)
            if (
                space.rank != len(piv)
                or rank_of(vecs, w) != len(piv)
                or space.contains(probe) != echelon_contains(piv, probe)
                or not space.contains(inside)
                or not echelon_contains(piv, inside)
            ):
                mismatches += 1
        assert mismatches == 0
