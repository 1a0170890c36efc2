"""Structural properties checked exhaustively over small enumeration universes.

Each function returns a list of violation strings; empty means the property
holds everywhere it was checked.
"""

from __future__ import annotations

from itertools import product

from charrank import catalog, engine
from charrank.engine import Constraint, SWProfile

SMALL = 1 << 16


def universe_size(alg):
    size = 1
    for b in alg.betti[1:]:
        size <<= b
    return size


def small_records(records, cap=SMALL):
    return [r for r in records if universe_size(r.alg) <= cap]


def all_profiles(alg):
    return [SWProfile.from_bits(alg, b) for b in engine.profile_universe(alg, limit=SMALL)]


def lower_degree_vanishing(records):
    """A profile with ``w_{r_X} = 0`` has charrank ``r_X - 1``; so does ``w = 1``."""
    out = []
    for r in small_records(records):
        alg = r.alg
        rx = engine.first_nonzero_degree(alg)
        if rx > alg.dim:
            continue
        if engine.charrank(SWProfile.trivial(alg)) != rx - 1:
            out.append(f"{r.name}: trivial profile")
        for p in all_profiles(alg):
            if not p.bits[rx] and engine.charrank(p) != rx - 1:
                out.append(f"{r.name}: {p!r} has w_r = 0 but charrank {engine.charrank(p)}")
    return out


def sum_with_trivial_and_inverse(records):
    """Adding a trivial summand keeps charrank; adding the inverse drops it to ``r_X - 1``."""
    out = []
    for r in small_records(records):
        alg = r.alg
        rx = engine.first_nonzero_degree(alg)
        triv = SWProfile.trivial(alg)
        for p in all_profiles(alg):
            c = engine.charrank(p)
            if engine.charrank(engine.whitney_sum(p, triv)) != c:
                out.append(f"{r.name}: {p!r} + trivial")
            if engine.charrank(SWProfile.from_total(alg, p.total())) != c:
                out.append(f"{r.name}: {p!r} rebuilt from its total class")
            if rx <= alg.dim and engine.charrank(engine.whitney_sum(p, engine.sw_inverse(p))) != rx - 1:
                out.append(f"{r.name}: {p!r} + inverse")
    return out


def wide_first_degree():
    """If the first nonzero degree has two or more classes, every charrank is ``r_X - 1``."""
    out = []
    for d in (1, 2, 3, 4):
        rec = catalog.build("product_spheres", d, d)
        for p in all_profiles(rec.alg):
            if engine.charrank(p) != d - 1:
                out.append(f"{rec.name}: {p!r}")
    return out


def power2_first_degree(records):
    """With the power-of-two filter, ``r_X`` not a power of two caps ucharrank at ``r_X - 1``."""
    out = []
    hits = 0
    for r in small_records(records):
        alg = r.alg
        rx = engine.first_nonzero_degree(alg)
        if rx > alg.dim or rx & (rx - 1) == 0:
            continue
        hits += 1
        got = engine.ucharrank_formal(alg, (Constraint.power2(),)).value
        if got != rx - 1:
            out.append(f"{r.name}: ucharrank {got} with r_X = {rx}")
    if not hits:
        out.append("no catalog space has r_X outside the powers of two")
    return out


def suspension_bound(records):
    """On suspension-flagged algebras every charrank is at most ``k_X``."""
    out = []
    hits = 0
    for r in small_records(records):
        alg = r.alg
        if not alg.meta.suspension:
            continue
        hits += 1
        kx = engine.k_x(alg)
        for p in all_profiles(alg):
            if engine.charrank(p) > kx:
                out.append(f"{r.name}: {p!r} exceeds k_X = {kx}")
    if not hits:
        out.append("no suspension-flagged space")
    return out


def surjective_pullback(records):
    """Pulling back along a surjective map keeps charrank at least ``min(charrank, target dim)``."""
    out = []
    checked = 0
    for r in small_records(records):
        for name, h in r.document.maps.items():
            if not h.is_surjective():
                continue
            checked += 1
            for p in all_profiles(h.source):
                q = engine.pullback(h, p)
                need = min(engine.charrank(p), h.target.dim)
                if engine.charrank(q) < need:
                    out.append(f"{r.name}/{name}: {p!r} pulls back to charrank {engine.charrank(q)} < {need}")
    if not checked:
        out.append("no surjective catalog map")
    return out


MONOMIAL_LENGTH_SPACES = [("dold", 1, 1), ("dold", 2, 1), ("s1_x_cp", 2)] + [("rp", n) for n in range(1, 7)]


def full_rank_monomial_length(records=()):
    """When charrank equals the dimension, the longest nonzero SW monomial has cup-length many factors."""
    out = []
    seen = set()
    recs = [catalog.build(f, *p) for f, *p in MONOMIAL_LENGTH_SPACES]
    recs += [r for r in small_records(records) if r.family in catalog.MANIFOLD_FAMILIES]
    for r in recs:
        if r.name in seen:
            continue
        seen.add(r.name)
        alg = r.alg
        cup = engine.cup_length(alg)
        for p in all_profiles(alg):
            if engine.charrank(p) == alg.dim and engine.max_sw_monomial_length(p) != cup:
                out.append(f"{r.name}: {p!r} monomial length {engine.max_sw_monomial_length(p)} != cup {cup}")
    return out


def duality_gap(records):
    """On algebras with nondegenerate pairing and ``2 r_X <= d``: charrank is ``d`` or below ``d - r_X``."""
    out = []
    hits = 0
    for r in small_records(records):
        alg = r.alg
        rx, d = engine.first_nonzero_degree(alg), alg.dim
        if not engine.poincare_pairing_check(alg) or 2 * rx > d:
            continue
        hits += 1
        for bits, c in engine.charrank_universe(alg, limit=SMALL):
            if c != d and c >= d - rx:
                out.append(f"{r.name}: {SWProfile.from_bits(alg, bits)!r} has charrank {c}")
    if not hits:
        out.append("no algebra qualified")
    return out


def parity_additivity(ns=(3, 5)):
    """``charrank mod 2`` is additive under Whitney sum on odd projective spaces."""
    out = []
    for n in ns:
        alg = catalog.build("rp", n).alg
        profiles = all_profiles(alg)
        f = {p: engine.charrank_parity(p) for p in profiles}
        for p, q in product(profiles, repeat=2):
            s = engine.whitney_sum(p, q)
            if engine.charrank_parity(s) != (f[p] + f[q]) % 2:
                out.append(f"RP{n}: {p!r} + {q!r}")
    return out


def bound_soundness(records, cap=1 << 12):
    """Wherever their preconditions hold, both cup-length bounds are at least the cup-length."""
    out = []
    for r in small_records(records, cap):
        alg = r.alg
        if not alg.meta.poincare:
            continue
        cup = engine.cup_length(alg)
        for p in all_profiles(alg):
            for k in range(engine.charrank(p) + 1):
                try:
                    b = engine.bundle_cup_bound(p, k)
                except Exception:
                    continue
                if b.floor < cup:
                    out.append(f"{r.name}: {p!r} k={k} bound {b.floor} < cup {cup}")
        if alg.meta.null_cobordant and r.tangent is not None:
            for z in range(engine.charrank(r.tangent) + 1):
                try:
                    b = engine.boundary_cup_bound(alg, z, r.tangent)
                except Exception:
                    continue
                if b.floor < cup:
                    out.append(f"{r.name}: z={z} bound {b.floor} < cup {cup}")
    return out
