"""Finite graded-commutative F_2-algebras with explicit bases.

An algebra stores, for every pair of basis classes whose degrees sum to at
most the top degree, the product as a bit vector over the basis of the
target degree. Products landing above the top degree are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import AlgebraError, CapacityError
from .f2linalg import MAX_WIDTH, RowSpace, iter_bits

UNIT = "1"


@dataclass(frozen=True)
class SpaceMeta:
    """Topological metadata attached to an algebra; consumed, never proven."""

    poincare: bool = False
    null_cobordant: bool = False
    suspension: bool = False
    spherical: tuple[tuple[int, str], ...] = ()
    constraints: tuple[str, ...] = ()
    forced_zero: tuple[tuple[int, str], ...] = ()


class GradedAlgebra:
    """Graded-commutative F_2-algebra concentrated in degrees ``0..dim``.

    ``basis[j]`` lists the names of the basis classes of degree ``j``.
    ``products`` maps pairs of basis names to ``{degree: bits}``; pairs that
    are absent multiply to zero, except products with the unit, which
    default to the identity. Nothing is checked here beyond shape; call
    :meth:`validate` for the algebra axioms.
    """

    def __init__(
        self,
        dim: int,
        basis: Sequence[Sequence[str]],
        products: Optional[Mapping[tuple[str, str], Mapping[int, int]]] = None,
        *,
        name: str = "",
        meta: Optional[SpaceMeta] = None,
        sq1: Optional[Mapping[str, Mapping[int, int]]] = None,
    ):
        if dim < 0:
            raise AlgebraError(f"negative top degree {dim}")
        if len(basis) != dim + 1:
            raise AlgebraError(f"expected basis lists for degrees 0..{dim}, got {len(basis)}")
        self.dim = dim
        self.name = name
        # set by the presentation layer for gen/rel algebras
        self.mode = "table"
        self.generators: tuple[tuple[str, int], ...] = ()
        self.exponents: dict[str, tuple[int, ...]] = {}
        self.meta = meta or SpaceMeta()
        self.basis: tuple[tuple[str, ...], ...] = tuple(tuple(b) for b in basis)
        self.betti: tuple[int, ...] = tuple(len(b) for b in self.basis)
        if sum(self.betti) > MAX_WIDTH:
            raise CapacityError(f"basis of {sum(self.betti)} classes exceeds capacity {MAX_WIDTH}")
        self.index: dict[str, tuple[int, int]] = {}
        self._issues: list[str] = []
        for j, names in enumerate(self.basis):
            for p, nm in enumerate(names):
                if nm in self.index:
                    self._issues.append(f"duplicate basis name {nm!r}")
                self.index[nm] = (j, p)

        # _table[i][j][p][q] = bits in degree i + j of basis(i)[p] * basis(j)[q]
        self._table = [
            [
                [[0] * self.betti[j] for _ in range(self.betti[i])] if i + j <= dim else None
                for j in range(dim + 1)
            ]
            for i in range(dim + 1)
        ]
        given = set()
        for (u, v), value in (products or {}).items():
            if u not in self.index or v not in self.index:
                self._issues.append(f"product {u}*{v} names an unknown basis class")
                continue
            i, p = self.index[u]
            j, q = self.index[v]
            given.add((u, v))
            if i + j > dim:
                continue
            for k, bits in value.items():
                if not bits:
                    continue
                if k != i + j:
                    self._issues.append(
                        f"product {u}*{v} has a component in degree {k}, expected {i + j}"
                    )
                elif bits >> self.betti[k]:
                    self._issues.append(f"product {u}*{v} does not fit the degree-{k} basis")
                else:
                    self._table[i][j][p][q] = bits
        if self.betti[0] == 1:
            unit = self.basis[0][0]
            for nm, (j, q) in self.index.items():
                if (unit, nm) not in given:
                    self._table[0][j][0][q] = 1 << q
                if (nm, unit) not in given:
                    self._table[j][0][q][0] = 1 << q

        self.sq1: Optional[dict[str, Element]] = None
        if sq1 is not None:
            self.sq1 = {nm: self.element(value) for nm, value in sq1.items()}

    # -- construction helpers ------------------------------------------------

    def zero(self) -> "Element":
        return Element(self, (0,) * (self.dim + 1))

    def one(self) -> "Element":
        return self.homogeneous(0, 1)

    def homogeneous(self, degree: int, bits: int) -> "Element":
        if not 0 <= degree <= self.dim:
            if bits:
                raise AlgebraError(f"degree {degree} outside 0..{self.dim}")
            return self.zero()
        if bits >> self.betti[degree]:
            raise AlgebraError(f"bits {bits:#x} do not fit degree {degree}")
        comps = [0] * (self.dim + 1)
        comps[degree] = bits
        return Element(self, tuple(comps))

    def element(self, components: Mapping[int, int]) -> "Element":
        comps = [0] * (self.dim + 1)
        for k, bits in components.items():
            if not bits:
                continue
            if not 0 <= k <= self.dim:
                raise AlgebraError(f"degree {k} outside 0..{self.dim}")
            if bits >> self.betti[k]:
                raise AlgebraError(f"bits {bits:#x} do not fit degree {k}")
            comps[k] = bits
        return Element(self, tuple(comps))

    def basis_element(self, name: str) -> "Element":
        try:
            j, p = self.index[name]
        except KeyError:
            raise AlgebraError(f"{name!r} is not a basis class of {self.name or 'the algebra'}") from None
        return self.homogeneous(j, 1 << p)

    def basis_elements(self, degree: Optional[int] = None) -> list["Element"]:
        degrees = range(self.dim + 1) if degree is None else [degree]
        return [self.homogeneous(j, 1 << p) for j in degrees for p in range(self.betti[j])]

    def degree_of(self, name: str) -> int:
        return self.index[name][0]

    # -- arithmetic ------------------------------------------------------------

    def mul_bits(self, i: int, x: int, j: int, y: int) -> int:
        """Product of a degree-``i`` vector and a degree-``j`` vector, in degree ``i + j``."""
        if i + j > self.dim or not x or not y:
            return 0
        table = self._table[i][j]
        out = 0
        while x:
            low = x & -x
            row = table[low.bit_length() - 1]
            x ^= low
            z = y
            while z:
                lz = z & -z
                out ^= row[lz.bit_length() - 1]
                z ^= lz
        return out

    def product_bits(self, u: str, v: str) -> int:
        """Structure constant ``u * v`` as bits in degree ``deg u + deg v`` (0 if truncated)."""
        i, p = self.index[u]
        j, q = self.index[v]
        if i + j > self.dim:
            return 0
        return self._table[i][j][p][q]

    @property
    def total_dim(self) -> int:
        return sum(self.betti)

    def positive_basis(self) -> list[tuple[int, int]]:
        """``(degree, bits)`` for every basis class of positive degree."""
        return [(j, 1 << p) for j in range(1, self.dim + 1) for p in range(self.betti[j])]

    # -- checks ------------------------------------------------------------------

    def validate(self) -> list[str]:
        """Check unit, commutativity and associativity; return the violations."""
        out = list(self._issues)
        d = self.dim
        if self.betti[0] != 1:
            out.append(f"degree 0 must have exactly one basis class, found {self.betti[0]}")
            return out
        for j in range(d + 1):
            for q in range(self.betti[j]):
                name = self.basis[j][q]
                if self._table[0][j][0][q] != 1 << q:
                    out.append(f"unit: 1*{name} != {name}")
                if self._table[j][0][q][0] != 1 << q:
                    out.append(f"unit: {name}*1 != {name}")
        for i in range(1, d + 1):
            for j in range(i, d + 1 - i):
                for p in range(self.betti[i]):
                    for q in range(self.betti[j]):
                        if self._table[i][j][p][q] != self._table[j][i][q][p]:
                            out.append(
                                f"commutativity: {self.basis[i][p]}*{self.basis[j][q]}"
                                f" != {self.basis[j][q]}*{self.basis[i][p]}"
                            )
        for i in range(1, d + 1):
            for j in range(1, d + 1 - i):
                for k in range(1, d + 1 - i - j):
                    for p in range(self.betti[i]):
                        for q in range(self.betti[j]):
                            uv = self._table[i][j][p][q]
                            for r in range(self.betti[k]):
                                left = self.mul_bits(i + j, uv, k, 1 << r)
                                right = self.mul_bits(i, 1 << p, j + k, self._table[j][k][q][r])
                                if left != right:
                                    out.append(
                                        "associativity: "
                                        f"({self.basis[i][p]}*{self.basis[j][q]})*{self.basis[k][r]}"
                                        f" != {self.basis[i][p]}*({self.basis[j][q]}*{self.basis[k][r]})"
                                    )
        return out

    def checked(self) -> "GradedAlgebra":
        """Return ``self`` if :meth:`validate` is clean, else raise :class:`AlgebraError`."""
        violations = self.validate()
        if violations:
            raise AlgebraError(
                f"{self.name or 'algebra'} is not a graded-commutative algebra: {violations[0]}",
                violations,
            )
        return self

    def same_structure(self, other: "GradedAlgebra") -> bool:
        """True iff bases agree by name and position and all structure constants agree."""
        return (
            self.dim == other.dim
            and self.basis == other.basis
            and all(
                self._table[i][j] == other._table[i][j]
                for i in range(self.dim + 1)
                for j in range(self.dim + 1 - i)
            )
        )

    def products(self) -> dict[tuple[str, str], int]:
        """Nonzero products of positive-degree basis pairs, as bits in the target degree."""
        out = {}
        for i in range(1, self.dim + 1):
            for j in range(1, self.dim + 1 - i):
                for p in range(self.betti[i]):
                    for q in range(self.betti[j]):
                        bits = self._table[i][j][p][q]
                        if bits:
                            out[self.basis[i][p], self.basis[j][q]] = bits
        return out

    def format_bits(self, degree: int, bits: int) -> str:
        if not bits:
            return "0"
        return " + ".join(self.basis[degree][p] for p in iter_bits(bits))

    def __repr__(self) -> str:
        return f"GradedAlgebra({self.name!r}, dim={self.dim}, betti={list(self.betti)})"


class Element:
    """A (possibly inhomogeneous) class: one bit vector per degree ``0..dim``."""

    __slots__ = ("alg", "bits")

    def __init__(self, alg: GradedAlgebra, bits: tuple[int, ...]):
        self.alg = alg
        self.bits = bits

    def _same(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.alg is not self.alg:
            raise AlgebraError("elements live in different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.alg, tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    __sub__ = __add__

    def __mul__(self, other: "Element") -> "Element":
        self._same(other)
        alg = self.alg
        d = alg.dim
        out = [0] * (d + 1)
        for i, x in enumerate(self.bits):
            if not x:
                continue
            for j in range(d + 1 - i):
                y = other.bits[j]
                if y:
                    out[i + j] ^= alg.mul_bits(i, x, j, y)
        return Element(alg, tuple(out))

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise ValueError("negative power")
        result = self.alg.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and other.alg is self.alg and other.bits == self.bits

    def __hash__(self) -> int:
        return hash((id(self.alg), self.bits))

    def __bool__(self) -> bool:
        return any(self.bits)

    def component(self, degree: int) -> int:
        if 0 <= degree <= self.alg.dim:
            return self.bits[degree]
        return 0

    def degrees(self) -> list[int]:
        return [j for j, b in enumerate(self.bits) if b]

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degs = self.degrees()
        if degree is None:
            return len(degs) <= 1
        return all(j == degree for j in degs)

    def __repr__(self) -> str:
        terms = [
            self.alg.format_bits(j, b) for j, b in enumerate(self.bits) if b
        ]
        return " + ".join(terms) if terms else "0"


class RingMap:
    """Degree-preserving map of algebras given by the images of source basis classes.

    Missing images are zero, except the unit, which defaults to the unit.
    """

    def __init__(
        self,
        source: GradedAlgebra,
        target: GradedAlgebra,
        images: Mapping[str, Element],
        name: str = "",
    ):
        self.source = source
        self.target = target
        self.name = name
        self._issues: list[str] = []
        self.images: dict[str, Element] = {}
        for nm in source.index:
            img = images.get(nm)
            if img is None:
                img = target.one() if source.index[nm][0] == 0 else target.zero()
            elif img.alg is not target:
                raise AlgebraError(f"image of {nm!r} does not live in the target algebra")
            self.images[nm] = img
        for nm in images:
            if nm not in source.index:
                self._issues.append(f"{nm!r} is not a basis class of the source")
        # images per (degree, position), for linear extension
        self._img = [
            [self.images[nm].bits for nm in source.basis[j]] for j in range(source.dim + 1)
        ]

    def apply(self, a: Element) -> Element:
        if a.alg is not self.source:
            raise AlgebraError("element does not live in the source algebra")
        out = [0] * (self.target.dim + 1)
        for j, x in enumerate(a.bits):
            imgs = self._img[j]
            for p in iter_bits(x):
                for k, b in enumerate(imgs[p]):
                    out[k] ^= b
        return Element(self.target, tuple(out))

    __call__ = apply

    def validate(self) -> list[str]:
        out = list(self._issues)
        src, tgt = self.source, self.target
        for nm, img in self.images.items():
            j = src.index[nm][0]
            if not img.is_homogeneous(j):
                out.append(f"image of {nm} is not homogeneous of degree {j}")
        if src.betti[0] == 1 and self.images[src.basis[0][0]] != tgt.one():
            out.append("unit does not map to unit")
        for u in src.basis_elements():
            for v in src.basis_elements():
                if self.apply(u * v) != self.apply(u) * self.apply(v):
                    out.append(f"not multiplicative on {u!r} * {v!r}")
        return out

    def checked(self) -> "RingMap":
        violations = self.validate()
        if violations:
            raise AlgebraError(f"map {self.name or ''} is not a ring map: {violations[0]}", violations)
        return self

    def is_surjective(self) -> bool:
        for j in range(self.target.dim + 1):
            span = RowSpace(self.target.betti[j])
            if j <= self.source.dim:
                for bits in self._img[j]:
                    span.insert(bits[j] if j < len(bits) else 0)
            if span.rank != self.target.betti[j]:
                return False
        return True


def add(a: Element, b: Element) -> Element:
    return a + b


def mul(a: Element, b: Element) -> Element:
    return a * b


def apply_map(h: RingMap, a: Element) -> Element:
    return h.apply(a)


def validate(alg: GradedAlgebra) -> list[str]:
    return alg.validate()


def element_sum(alg: GradedAlgebra, elements: Iterable[Element]) -> Element:
    out = alg.zero()
    for e in elements:
        out = out + e
    return out
