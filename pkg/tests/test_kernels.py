import os
import random
import subprocess
import sys
from itertools import product

import pytest

from charrank import catalog, engine, kernel
from charrank.algebra import GradedAlgebra
from charrank.engine import SWProfile
from oracles import naive_rank

BACKENDS = kernel.BACKENDS


def test_compiled_backend_is_built():
    # the editable install compiles the extension; the fallback is exercised below
    assert "python" in BACKENDS
    if os.environ.get("CHARRANK_PURE_PYTHON"):
        assert kernel.BACKEND == "python"


def test_pure_python_switch():
    env = dict(os.environ, CHARRANK_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from charrank import kernel; print(kernel.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("backend", BACKENDS)
def test_rank_u64_matches_naive(backend):
    rng = random.Random(99)
    for _ in range(2000):
        w = rng.randint(1, 64)
        vecs = [rng.getrandbits(w) for _ in range(rng.randint(0, 20))]
        assert kernel.rank_u64(vecs, backend) == naive_rank(vecs, w)


@pytest.mark.parametrize("backend", BACKENDS)
def test_kernels_match_span_reference_on_catalog(backend, records):
    for r in records:
        packed = kernel.pack(r.alg)
        universe = list(engine.profile_universe(r.alg, limit=1 << 16))
        got = kernel.charrank_batch(packed, universe, backend)
        want = [engine.charrank(SWProfile.from_bits(r.alg, b)) for b in universe]
        assert got == want, r.name


def _random_algebra(rng, dim):
    # exterior algebra on random generators, truncated: always associative
    gens = [rng.randint(1, dim) for _ in range(rng.randint(1, 5))]
    monos = [m for m in product((0, 1), repeat=len(gens)) if sum(g * e for g, e in zip(gens, m)) <= dim]
    basis = [[] for _ in range(dim + 1)]
    for m in monos:
        deg = sum(g * e for g, e in zip(gens, m))
        basis[deg].append("m" + "".join(str(e) for e in m))
    names = {m: "m" + "".join(str(e) for e in m) for m in monos}
    basis[0] = ["1"]
    names[tuple(0 for _ in gens)] = "1"
    deg_of = {m: sum(g * e for g, e in zip(gens, m)) for m in monos}
    pos = {m: basis[deg_of[m]].index(names[m]) for m in monos}
    prods = {}
    for u in monos:
        for v in monos:
            if any(a and b for a, b in zip(u, v)):
                continue
            w = tuple(a + b for a, b in zip(u, v))
            if w in pos:
                prods[names[u], names[v]] = {deg_of[w]: 1 << pos[w]}
    return GradedAlgebra(dim, basis, prods).checked()


@pytest.mark.parametrize("backend", BACKENDS)
def test_kernels_match_span_reference_on_random_algebras(backend):
    rng = random.Random(1234)
    for _ in range(40):
        alg = _random_algebra(rng, rng.randint(1, 7))
        packed = kernel.pack(alg)
        profiles = [
            tuple([1] + [rng.getrandbits(alg.betti[i]) for i in range(1, alg.dim + 1)]) for _ in range(50)
        ]
        got = kernel.charrank_batch(packed, profiles, backend)
        want = [engine.charrank(SWProfile.from_bits(alg, p)) for p in profiles]
        assert got == want


def test_wide_degrees_fall_back_to_python():
    # a degree with 70 classes cannot be packed into one word
    basis = [["1"], [f"u{i}" for i in range(70)]]
    alg = GradedAlgebra(1, basis).checked()
    packed = kernel.pack(alg)
    assert not packed.word_sized
    full = (1 << 70) - 1
    assert kernel.charrank_batch(packed, [(1, 0), (1, 1)]) == [0, 0]
    assert engine.charrank(SWProfile(alg, {1: full})) == 0
    assert kernel.charrank_batch(packed, [(1, 0)], "python") == [0]
