"""Characteristic rank, cup-length and the cup-length bounds built on them.

A Stiefel-Whitney profile is a formal assignment ``w_i`` in degree ``i`` for
``1 <= i <= dim`` with ``w_0 = 1``. Its characteristic rank is the largest
``k`` such that every class of degree ``<= k`` is a polynomial in the
``w_i``; degrees with no cohomology count as covered.
"""

from __future__ import annotations

import itertools
import weakref
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence, Union

from . import kernel
from .algebra import Element, GradedAlgebra, RingMap
from .errors import AlgebraError, CapacityError, HypothesisError
from .f2linalg import RowSpace, iter_bits

DEFAULT_LIMIT = 1 << 20
# degrees d in which some bundle over S^d has w_d != 0
HOPF_DEGREES = frozenset({1, 2, 4, 8})
_CHUNK = 4096


# -- profiles ------------------------------------------------------------------


class SWProfile:
    """Total Stiefel-Whitney class ``1 + w_1 + ... + w_dim`` of a (formal) bundle.

    ``w`` values may be elements or raw bit vectors of the right degree;
    missing indices are zero.
    """

    __slots__ = ("alg", "bits", "name")

    def __init__(self, alg: GradedAlgebra, w: Optional[Mapping[int, Union[Element, int]]] = None, name: str = ""):
        bits = [0] * (alg.dim + 1)
        bits[0] = 1
        for i, value in (w or {}).items():
            if not 1 <= i <= alg.dim:
                if any(value.bits) if isinstance(value, Element) else value:
                    raise AlgebraError(f"w{i} is outside degrees 1..{alg.dim}")
                continue
            if isinstance(value, Element):
                if value.alg is not alg:
                    raise AlgebraError(f"w{i} does not live in {alg.name or 'the algebra'}")
                if not value.is_homogeneous(i):
                    raise AlgebraError(f"w{i} = {value!r} is not homogeneous of degree {i}")
                bits[i] = value.bits[i]
            else:
                if value < 0 or value >> alg.betti[i]:
                    raise AlgebraError(f"w{i} bits {value:#x} do not fit degree {i}")
                bits[i] = value
        self.alg = alg
        self.bits: tuple[int, ...] = tuple(bits)
        self.name = name

    @classmethod
    def from_bits(cls, alg: GradedAlgebra, bits: Sequence[int], name: str = "") -> "SWProfile":
        return cls(alg, {i: b for i, b in enumerate(bits) if i >= 1}, name=name)

    @classmethod
    def from_total(cls, alg: GradedAlgebra, total: Element, name: str = "") -> "SWProfile":
        if total.bits[0] != 1:
            raise AlgebraError("a total Stiefel-Whitney class starts with 1")
        return cls(alg, {i: total.bits[i] for i in range(1, alg.dim + 1)}, name=name)

    @classmethod
    def trivial(cls, alg: GradedAlgebra, name: str = "") -> "SWProfile":
        return cls(alg, {}, name=name)

    @property
    def w(self) -> dict[int, Element]:
        return {i: self.alg.homogeneous(i, self.bits[i]) for i in range(1, self.alg.dim + 1)}

    def class_(self, i: int) -> Element:
        if i == 0:
            return self.alg.one()
        if 1 <= i <= self.alg.dim:
            return self.alg.homogeneous(i, self.bits[i])
        return self.alg.zero()

    def total(self) -> Element:
        return Element(self.alg, self.bits)

    def is_trivial(self) -> bool:
        return not any(self.bits[1:])

    def nonzero_indices(self) -> list[int]:
        return [i for i in range(1, len(self.bits)) if self.bits[i]]

    def __eq__(self, other) -> bool:
        return isinstance(other, SWProfile) and other.alg is self.alg and other.bits == self.bits

    def __hash__(self) -> int:
        return hash((id(self.alg), self.bits))

    def __repr__(self) -> str:
        terms = ["1"] + [
            self.alg.format_bits(i, b) if b.bit_count() == 1 else f"({self.alg.format_bits(i, b)})"
            for i, b in enumerate(self.bits)
            if i and b
        ]
        label = f"{self.name}: " if self.name else ""
        return f"SWProfile({label}w = {' + '.join(terms)})"


# -- space invariants ------------------------------------------------------------


@dataclass(frozen=True)
class SpaceAnalysis:
    r_X: int
    k_X: int
    dim: int
    poincare: bool
    betti: tuple[int, ...]


def first_nonzero_degree(alg: GradedAlgebra) -> int:
    """Smallest positive degree with nonzero cohomology, or ``dim + 1``."""
    for j in range(1, alg.dim + 1):
        if alg.betti[j]:
            return j
    return alg.dim + 1


def k_x(alg: GradedAlgebra) -> int:
    k = 0
    for j in range(alg.dim + 1):
        if alg.betti[j] > 1:
            return j - 1
        k = j
    return k


def analyze(alg: GradedAlgebra) -> SpaceAnalysis:
    return SpaceAnalysis(
        r_X=first_nonzero_degree(alg),
        k_X=k_x(alg),
        dim=alg.dim,
        poincare=poincare_pairing_check(alg),
        betti=alg.betti,
    )


def poincare_pairing_check(alg: GradedAlgebra) -> bool:
    """True iff the cup pairing into the top degree is nondegenerate."""
    d = alg.dim
    if alg.betti[d] != 1:
        return False
    for j in range(d + 1):
        b = alg.betti[j]
        if b != alg.betti[d - j]:
            return False
        span = RowSpace(b)
        for p in range(b):
            row = 0
            for q in range(b):
                if alg.mul_bits(j, 1 << p, d - j, 1 << q):
                    row |= 1 << q
            span.insert(row)
        if span.rank != b:
            return False
    return True


# -- spans of Stiefel-Whitney monomials --------------------------------------------


class DegreeSpans:
    """``spaces[j]`` is the span in ``H^j`` of the monomials in the ``w_i`` of degree ``j``."""

    def __init__(self, alg: GradedAlgebra, spaces: list[RowSpace]):
        self.alg = alg
        self.spaces = spaces

    @property
    def ranks(self) -> list[int]:
        return [s.rank for s in self.spaces]

    def covered(self, j: int) -> bool:
        return self.spaces[j].rank == self.alg.betti[j]

    def __getitem__(self, j: int) -> RowSpace:
        return self.spaces[j]


def sw_spans(p: SWProfile, max_index: Optional[int] = None) -> DegreeSpans:
    """Spans ``M_j = sum_i w_i * M_{j-i}``; only ``w_i`` with ``i <= max_index`` if given."""
    alg = p.alg
    top = alg.dim if max_index is None else min(max_index, alg.dim)
    spaces = [RowSpace(1, [1])]
    for j in range(1, alg.dim + 1):
        m = RowSpace(alg.betti[j])
        for i in range(1, min(j, top) + 1):
            wi = p.bits[i]
            if not wi:
                continue
            for u in spaces[j - i].rows:
                m.insert(alg.mul_bits(i, wi, j - i, u))
        spaces.append(m)
    return DegreeSpans(alg, spaces)


def charrank(p: SWProfile) -> int:
    spans = sw_spans(p)
    for j in range(p.alg.dim + 1):
        if not spans.covered(j):
            return j - 1
    return p.alg.dim


def coverage(p: SWProfile) -> list[tuple[int, int, int, bool]]:
    """``(degree, dim H^j, rank M_j, covered)`` for every degree."""
    spans = sw_spans(p)
    return [(j, p.alg.betti[j], spans[j].rank, spans.covered(j)) for j in range(p.alg.dim + 1)]


# -- longest nonzero products ------------------------------------------------------


def _longest_product(alg: GradedAlgebra, factors: list[tuple[int, int, str]]) -> tuple[int, list[str]]:
    """Longest nonzero product of factors ``(degree, bits, label)``, with one witness."""
    factors = [f for f in factors if f[1] and f[0] >= 1]
    if not factors:
        return 0, []
    level = []
    spans = [RowSpace(b) for b in alg.betti]
    for deg, bits, label in factors:
        if spans[deg].insert(bits):
            level.append((deg, bits, [label]))
    t = 1
    while True:
        spans = [RowSpace(b) for b in alg.betti]
        nxt = []
        for deg, bits, labels in level:
            for fdeg, fbits, flabel in factors:
                k = deg + fdeg
                if k > alg.dim:
                    continue
                v = alg.mul_bits(deg, bits, fdeg, fbits)
                if v and spans[k].insert(v):
                    nxt.append((k, v, labels + [flabel]))
        if not nxt:
            return t, level[0][2]
        level = nxt
        t += 1


def cup_length_witness(alg: GradedAlgebra) -> tuple[int, list[str]]:
    factors = [(j, 1 << p, alg.basis[j][p]) for j, _ in enumerate(alg.basis) if j for p in range(alg.betti[j])]
    return _longest_product(alg, factors)


def cup_length(alg: GradedAlgebra) -> int:
    return cup_length_witness(alg)[0]


def max_sw_monomial_witness(p: SWProfile) -> tuple[int, list[str]]:
    factors = [(i, b, f"w{i}") for i, b in enumerate(p.bits) if i and b]
    return _longest_product(p.alg, factors)


def max_sw_monomial_length(p: SWProfile) -> int:
    return max_sw_monomial_witness(p)[0]


# -- bounds ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Bound:
    exact: Fraction
    floor: int
    formula: str

    def __str__(self) -> str:
        return f"{self.floor} (exact {self.exact.numerator}/{self.exact.denominator})"


def _require_manifold(alg: GradedAlgebra) -> None:
    if not alg.meta.poincare:
        raise HypothesisError(f"{alg.name or 'space'} is not flagged as a closed manifold (meta poincare)", "poincare")
    if not poincare_pairing_check(alg):
        raise HypothesisError(f"{alg.name or 'space'} is flagged poincare but its pairing is degenerate", "poincare")


def _nonzero_monomial(p: SWProfile, max_index: int, degree: int) -> Optional[list[int]]:
    """Some index multiset ``i_1 <= ... <= i_r <= max_index`` of total ``degree`` with nonzero product."""
    alg = p.alg
    idx = [i for i in p.nonzero_indices() if i <= max_index]

    def rec(start: int, deg: int, bits: int, chosen: list[int]) -> Optional[list[int]]:
        if deg == degree:
            return chosen if bits else None
        for t in range(start, len(idx)):
            i = idx[t]
            if deg + i > degree:
                break
            v = alg.mul_bits(deg, bits, i, p.bits[i])
            if v:
                found = rec(t, deg + i, v, chosen + [i])
                if found:
                    return found
        return None

    return rec(0, 0, 1, [])


def bundle_cup_bound(p: SWProfile, k: int) -> Bound:
    """Cup-length bound ``1 + (d - k - 1) / r_X`` from a bundle whose low classes kill the top degree.

    Requires a closed-manifold algebra, ``k <= charrank(p)``, and every
    monomial in ``w_1..w_k`` of total degree ``d`` to vanish.
    """
    alg = p.alg
    _require_manifold(alg)
    d = alg.dim
    if k < 0:
        raise HypothesisError(f"k = {k} must be nonnegative", "k_range")
    c = charrank(p)
    if k > c:
        raise HypothesisError(f"k = {k} exceeds the characteristic rank {c}", "k_le_charrank")
    if sw_spans(p, max_index=k)[d].rank:
        mono = _nonzero_monomial(p, k, d) or []
        word = "*".join(f"w{i}" for i in mono)
        raise HypothesisError(
            f"restricted monomial {word} of degree {d} is nonzero (only w_i with i <= {k} allowed)",
            "top_monomials_vanish",
        )
    r = first_nonzero_degree(alg)
    exact = 1 + Fraction(d - k - 1, r)
    return Bound(exact, exact.numerator // exact.denominator, f"1 + ({d} - {k} - 1)/{r}")


def boundary_cup_bound(alg: GradedAlgebra, z: int, tangent: Optional[SWProfile] = None) -> Bound:
    """Cup-length bound ``1 + (d - z - 1) / r_X`` for a null-cobordant closed manifold.

    ``z`` must satisfy ``0 <= z < d - 1``. When the tangent profile is
    supplied, ``z`` must also not exceed its characteristic rank.
    """
    d = alg.dim
    if not 0 <= z < d - 1:
        raise HypothesisError(f"z out of range: z = {z}, need 0 <= z < d - 1 = {d - 1}", "z_range")
    _require_manifold(alg)
    if not alg.meta.null_cobordant:
        raise HypothesisError(f"{alg.name or 'space'} is not flagged null_cobordant", "null_cobordant")
    r = first_nonzero_degree(alg)
    if r >= d:
        raise HypothesisError(f"first nonzero reduced degree {r} is not below d = {d}", "r_below_d")
    if tangent is not None:
        if tangent.alg is not alg:
            raise AlgebraError("tangent profile lives on a different algebra")
        c = charrank(tangent)
        if z > c:
            raise HypothesisError(f"z = {z} exceeds the tangent characteristic rank {c}", "z_le_tangent_charrank")
    exact = 1 + Fraction(d - z - 1, r)
    return Bound(exact, exact.numerator // exact.denominator, f"1 + ({d} - {z} - 1)/{r}")


# -- operations on profiles --------------------------------------------------------------


def whitney_sum(p: SWProfile, q: SWProfile, name: str = "") -> SWProfile:
    if p.alg is not q.alg:
        raise AlgebraError("profiles live on different algebras")
    return SWProfile.from_total(p.alg, p.total() * q.total(), name=name)


def sw_inverse(p: SWProfile, name: str = "") -> SWProfile:
    """The profile ``v`` with ``v * w(p) = 1``."""
    alg = p.alg
    v = [1] + [0] * alg.dim
    for j in range(1, alg.dim + 1):
        acc = 0
        for i in range(1, j + 1):
            acc ^= alg.mul_bits(i, p.bits[i], j - i, v[j - i])
        v[j] = acc
    return SWProfile.from_bits(alg, v, name=name)


def pullback(h: RingMap, p: SWProfile, name: str = "") -> SWProfile:
    if p.alg is not h.source:
        raise AlgebraError("profile does not live on the source of the map")
    images = {i: h.apply(p.class_(i)) for i in range(1, p.alg.dim + 1)}
    tgt = h.target
    return SWProfile(tgt, {i: x for i, x in images.items() if i <= tgt.dim or x}, name=name or p.name)


# -- constraints and enumeration ---------------------------------------------------------


@dataclass(frozen=True)
class Constraint:
    """Realizability filter on formal profiles.

    ``power2``: the first nonzero ``w_i`` has ``i`` a power of two.
    ``spherical``: ``functional(w_degree) = 0`` unless ``degree`` is 1, 2, 4 or 8.
    ``trivial_only``: only ``w = 1``.
    ``wu_sq1``: ``Sq^1 w_2 = w_1 w_2 + w_3``.
    ``forced_zero``: the listed ``(degree, mask)`` coordinates of ``w`` vanish.
    """

    kind: str
    degree: int = 0
    functional: int = 0
    coords: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.kind not in ("power2", "spherical", "trivial_only", "wu_sq1", "forced_zero"):
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if self.kind == "spherical" and not self.functional:
            raise ValueError("a spherical constraint needs a nonzero functional")

    @classmethod
    def power2(cls) -> "Constraint":
        return cls("power2")

    @classmethod
    def spherical(cls, degree: int, functional: int) -> "Constraint":
        return cls("spherical", degree=degree, functional=functional)

    @classmethod
    def trivial_only(cls) -> "Constraint":
        return cls("trivial_only")

    @classmethod
    def wu_sq1(cls) -> "Constraint":
        return cls("wu_sq1")

    @classmethod
    def forced_zero(cls, coords: Iterable[tuple[int, int]]) -> "Constraint":
        return cls("forced_zero", coords=tuple(coords))

    def label(self) -> str:
        if self.kind == "spherical":
            return f"spherical({self.degree})"
        if self.kind == "forced_zero":
            return "forced_zero(" + ",".join(f"{d}:{m:#x}" for d, m in self.coords) + ")"
        return self.kind


def constraints_from_flags(alg: GradedAlgebra, flags: Iterable[str]) -> tuple[Constraint, ...]:
    """Turn flag names into constraints, reading spherical and forced-zero data from the metadata."""
    out: list[Constraint] = []
    for flag in flags:
        flag = flag.strip().replace("-", "_")
        if flag in ("", "none"):
            continue
        if flag == "spherical":
            for deg, nm in alg.meta.spherical:
                out.append(Constraint.spherical(deg, 1 << alg.index[nm][1]))
        elif flag == "forced_zero":
            coords = [(deg, 1 << alg.index[nm][1]) for deg, nm in alg.meta.forced_zero]
            if coords:
                out.append(Constraint.forced_zero(coords))
        elif flag in ("power2", "trivial_only", "wu_sq1"):
            out.append(Constraint(flag))
        else:
            raise ValueError(f"unknown constraint flag {flag!r}")
    return tuple(dict.fromkeys(out))


def catalog_constraints(alg: GradedAlgebra) -> tuple[Constraint, ...]:
    return constraints_from_flags(alg, alg.meta.constraints)


def _lex_values(width: int) -> list[int]:
    """All vectors of ``width`` bits, ordered lexicographically with coordinate 0 most significant."""
    if width == 0:
        return [0]
    return [int(format(k, f"0{width}b")[::-1], 2) for k in range(1 << width)]


def _sq1_degree2(alg: GradedAlgebra) -> list[int]:
    if alg.sq1 is None:
        raise HypothesisError("the wu_sq1 constraint needs sq1 metadata", "sq1_metadata")
    if alg.dim < 3:
        return [0] * alg.betti[2] if alg.dim >= 2 else []
    return [alg.sq1[nm].bits[3] if nm in alg.sq1 else 0 for nm in alg.basis[2]]


class _Universe:
    def __init__(self, alg: GradedAlgebra, constraints: Sequence[Constraint], limit: int):
        self.alg = alg
        kinds = {c.kind for c in constraints}
        self.trivial_only = "trivial_only" in kinds
        self.power2 = "power2" in kinds
        self.sq1 = _sq1_degree2(alg) if "wu_sq1" in kinds else None
        cands = []
        for j in range(1, alg.dim + 1):
            vals = _lex_values(alg.betti[j])
            for c in constraints:
                if c.kind == "spherical" and c.degree == j and j not in HOPF_DEGREES:
                    vals = [v for v in vals if not (v & c.functional).bit_count() & 1]
                elif c.kind == "forced_zero":
                    for deg, mask in c.coords:
                        if deg == j:
                            vals = [v for v in vals if not v & mask]
            cands.append(vals)
        self.candidates = cands
        size = 1
        for vals in cands:
            size *= len(vals)
        self.size = 1 if self.trivial_only else size
        if self.size > limit:
            raise CapacityError(
                f"{alg.name or 'space'}: {self.size} candidate profiles exceed the limit {limit}"
            )

    def _keep(self, w: tuple[int, ...]) -> bool:
        if self.power2:
            for i in range(1, len(w)):
                if w[i]:
                    if i & (i - 1):
                        return False
                    break
        if self.sq1 is not None and self.alg.dim >= 3:
            s = 0
            for p in iter_bits(w[2]):
                s ^= self.sq1[p]
            if s != self.alg.mul_bits(1, w[1], 2, w[2]) ^ w[3]:
                return False
        return True

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        if self.trivial_only:
            yield (1,) + (0,) * self.alg.dim
            return
        for combo in itertools.product(*self.candidates):
            w = (1,) + combo
            if self._keep(w):
                yield w


def profile_universe(
    alg: GradedAlgebra, constraints: Sequence[Constraint] = (), limit: int = DEFAULT_LIMIT
) -> Iterator[tuple[int, ...]]:
    """Bit tuples ``(1, w_1, ..., w_dim)`` of every profile surviving the constraints, in lex order."""
    return iter(_Universe(alg, constraints, limit))


def enumerate_profiles(
    alg: GradedAlgebra, constraints: Sequence[Constraint] = (), limit: int = DEFAULT_LIMIT
) -> Iterator[SWProfile]:
    for bits in profile_universe(alg, constraints, limit):
        yield SWProfile.from_bits(alg, bits)


def _chunks(it: Iterator, size: int) -> Iterator[list]:
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        yield chunk


def _chunk_charranks(packed: kernel.PackedAlgebra, chunk: list, backend: Optional[str]) -> list[int]:
    return kernel.charrank_batch(packed, chunk, backend=backend)


def charrank_universe(
    alg: GradedAlgebra,
    constraints: Sequence[Constraint] = (),
    limit: int = DEFAULT_LIMIT,
    backend: Optional[str] = None,
) -> Iterator[tuple[tuple[int, ...], int]]:
    """``(bits, charrank)`` for every profile of the constrained universe, in lex order."""
    packed = kernel.pack(alg)
    for chunk in _chunks(profile_universe(alg, constraints, limit), _CHUNK):
        yield from zip(chunk, kernel.charrank_batch(packed, chunk, backend=backend))


class UcharrankResult(NamedTuple):
    value: int
    witness: SWProfile
    count: int


def ucharrank_formal(
    alg: GradedAlgebra,
    constraints: Sequence[Constraint] = (),
    limit: int = DEFAULT_LIMIT,
    workers: int = 1,
    backend: Optional[str] = None,
) -> UcharrankResult:
    """Maximum characteristic rank over the constrained formal universe.

    The witness is the first maximizer in lex order. With ``workers > 1``
    chunks are evaluated in a process pool and merged in order, so the
    result does not depend on the worker count.
    """
    packed = kernel.pack(alg)
    chunks = _chunks(profile_universe(alg, constraints, limit), _CHUNK)
    best, witness, count = -1, None, 0

    def consume(chunk, ranks):
        nonlocal best, witness, count
        count += len(chunk)
        for bits, c in zip(chunk, ranks):
            if c > best:
                best, witness = c, bits

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pending = []
            for chunk in chunks:
                pending.append((chunk, pool.submit(_chunk_charranks, packed, chunk, backend)))
            for chunk, fut in pending:
                consume(chunk, fut.result())
    else:
        for chunk in chunks:
            consume(chunk, kernel.charrank_batch(packed, chunk, backend=backend))
    if witness is None:
        raise CapacityError("the constrained universe is empty")
    return UcharrankResult(best, SWProfile.from_bits(alg, witness, name="witness"), count)


# -- parity ----------------------------------------------------------------------------------

_parity_cache: "weakref.WeakKeyDictionary[GradedAlgebra, dict]" = weakref.WeakKeyDictionary()


def parity_hypothesis(
    alg: GradedAlgebra, constraints: Sequence[Constraint] = (), limit: int = DEFAULT_LIMIT
) -> list[str]:
    """Violations of: ``r_X = 1``, some profile has positive charrank, every charrank is 0 or odd."""
    key = tuple(constraints)
    cache = _parity_cache.setdefault(alg, {})
    if key in cache:
        return cache[key]
    out = []
    r = first_nonzero_degree(alg)
    if r != 1:
        out.append(f"r_X = {r}, need 1")
    else:
        top = 0
        for bits, c in charrank_universe(alg, constraints, limit):
            top = max(top, c)
            if c and c % 2 == 0:
                out.append(f"profile {SWProfile.from_bits(alg, bits)!r} has even charrank {c}")
                break
        if top < 1:
            out.append("every profile has charrank 0")
    cache[key] = out
    return out


def charrank_parity(p: SWProfile, constraints: Sequence[Constraint] = ()) -> int:
    """``charrank(p) mod 2``, defined when the space passes :func:`parity_hypothesis`."""
    violations = parity_hypothesis(p.alg, constraints)
    if violations:
        raise HypothesisError(f"parity is not additive here: {violations[0]}", "parity_hypothesis")
    return charrank(p) % 2


# -- Sq^1 -------------------------------------------------------------------------------------


def _sq1_apply(alg: GradedAlgebra, sq1: Mapping[str, Element], x: Element) -> Element:
    out = alg.zero()
    for j, bits in enumerate(x.bits):
        for p in iter_bits(bits):
            value = sq1.get(alg.basis[j][p])
            if value is not None:
                out = out + value
    return out


def sq1_validate(alg: GradedAlgebra, sq1: Optional[Mapping[str, Element]] = None) -> list[str]:
    """Check degree +1, ``Sq^1 Sq^1 = 0``, the derivation rule and ``Sq^1 x = x^2`` in degree 1."""
    sq1 = alg.sq1 if sq1 is None else sq1
    if sq1 is None:
        return ["no sq1 data"]
    out = []
    for nm, value in sq1.items():
        if nm not in alg.index:
            out.append(f"sq1 given on unknown class {nm!r}")
            continue
        if value.alg is not alg:
            out.append(f"sq1 {nm} lives in another algebra")
            continue
        deg = alg.index[nm][0]
        if not value.is_homogeneous(deg + 1):
            out.append(f"sq1 {nm} = {value!r} does not have degree {deg + 1}")
    if out:
        return out
    basis = alg.basis_elements()
    for u in basis:
        if _sq1_apply(alg, sq1, _sq1_apply(alg, sq1, u)):
            out.append(f"Sq1 Sq1 {u!r} != 0")
    for u in basis:
        su = _sq1_apply(alg, sq1, u)
        for v in basis:
            lhs = _sq1_apply(alg, sq1, u * v)
            rhs = su * v + u * _sq1_apply(alg, sq1, v)
            if lhs != rhs:
                out.append(f"derivation rule fails on {u!r} * {v!r}")
    for u in alg.basis_elements(1) if alg.dim >= 1 else []:
        if _sq1_apply(alg, sq1, u) != u * u:
            out.append(f"Sq1 {u!r} != {u!r}^2")
    return out


# -- lints -------------------------------------------------------------------------------------


def realizability_lints(p: SWProfile) -> list[str]:
    """Flags a profile that covers a spherical degree in {1, 2, 4, 8} while its ``w_k`` misses the class.

    A genuine bundle of characteristic rank ``>= k`` restricts nontrivially
    along the sphere, so such a profile cannot come from a bundle.
    """
    alg = p.alg
    c = charrank(p)
    out = []
    for deg, nm in alg.meta.spherical:
        if deg in HOPF_DEGREES and c >= deg:
            if not (p.bits[deg] >> alg.index[nm][1]) & 1:
                out.append(f"charrank {c} >= {deg} but w{deg} does not hit spherical class {nm}")
    if c > max((j for j in range(alg.dim + 1) if alg.betti[j]), default=0):
        out.append(f"charrank {c} covers vacuous degrees above the top nonzero cohomology")
    return out
