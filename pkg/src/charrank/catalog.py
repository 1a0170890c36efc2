"""Generators for the standard test spaces, with named bundles and expected values.

Every record is produced as presentation-language source and parsed back,
so the catalog and the parser exercise each other. Expected values are data
with a short justification string; :mod:`charrank.verify` replays them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from . import dsl
from .engine import HOPF_DEGREES, SWProfile, catalog_constraints
from .errors import ParameterError

FAMILIES = ("sphere", "product_spheres", "rp", "cp", "s1_x_cp", "dold", "moore", "stunted", "lens")
MANIFOLD_FAMILIES = frozenset({"sphere", "product_spheres", "rp", "cp", "s1_x_cp", "dold", "lens"})

# parameter sets replayed by ``verify``
DEFAULT_PARAMS: dict[str, list[tuple[int, ...]]] = {
    "sphere": [(1,), (2,), (3,), (4,), (6,), (8,)],
    "product_spheres": [(3, 5), (2, 6), (4, 8), (1, 2), (2, 2), (3, 3)],
    "rp": [(n,) for n in range(2, 9)],
    "cp": [(n,) for n in range(1, 5)],
    "s1_x_cp": [(1,), (2,), (3,)],
    "dold": [(1, 1), (2, 1), (1, 2), (2, 3)],
    "moore": [(2,), (3,), (4,), (5,), (8,)],
    "stunted": [(5, 1), (6, 3), (7, 2), (9, 3), (10, 7)],
    "lens": [(3, 2), (5, 3)],
}

_ARITY = {
    "sphere": 1, "product_spheres": 2, "rp": 1, "cp": 1, "s1_x_cp": 1,
    "dold": 2, "moore": 1, "stunted": 2, "lens": 2,
}


@dataclass(frozen=True)
class Claim:
    """An expected value.

    ``kind`` is one of ``ucharrank``, ``charrank`` (of ``bundle``),
    ``charrank_values`` (every enumerated charrank lies in ``expected``),
    ``cup``, ``bundle_bound`` (``bundle`` with ``k = param``),
    ``boundary_bound`` (``z = param``) and ``betti_sum``.
    """

    kind: str
    expected: Union[int, tuple[int, ...]]
    citation: str
    bundle: str = ""
    param: Optional[int] = None

    @property
    def label(self) -> str:
        if self.kind == "charrank":
            return f"charrank({self.bundle})"
        if self.kind == "bundle_bound":
            return f"bundle_bound({self.bundle}, k={self.param})"
        if self.kind == "boundary_bound":
            return f"boundary_bound(z={self.param})"
        return self.kind


@dataclass
class SpaceRecord:
    family: str
    params: tuple[int, ...]
    name: str
    document: dsl.Document
    claims: list[Claim] = field(default_factory=list)
    maps: dict[str, bool] = field(default_factory=dict)  # map name -> surjective
    note: str = ""

    @property
    def alg(self):
        return self.document.space(self.name)

    @property
    def presentation(self) -> dsl.Presentation:
        return self.document.presentations[self.name]

    @property
    def bundles(self) -> dict[str, SWProfile]:
        return {b: p for (s, b), p in self.document.bundles.items() if s == self.name}

    @property
    def constraints(self):
        return catalog_constraints(self.alg)

    @property
    def tangent(self) -> Optional[SWProfile]:
        return self.bundles.get("tangent")

    @property
    def expected(self) -> dict[str, Union[int, tuple[int, ...]]]:
        return {c.label: c.expected for c in self.claims}

    def citation(self, label: str) -> str:
        for c in self.claims:
            if c.label == label:
                return c.citation
        return ""

    def source(self) -> str:
        return dsl.emit(self.document.items)


# -- source snippets --------------------------------------------------------------


def _sphere_src(d: int, name: str) -> str:
    flags = "spherical" if d not in HOPF_DEGREES else "none"
    return (
        f'space "{name}" {{\n  dim {d}\n  basis x:{d}\n'
        f"  meta poincare true\n  meta null_cobordant true\n  meta suspension true\n"
        f"  meta spherical {d}:x\n  meta constraint {flags}\n}}\n"
    )


def _bundle(space: str, name: str, ws: dict[int, str]) -> str:
    body = " ".join(f"w{i} = {e};" for i, e in sorted(ws.items()))
    return f'bundle {name} on "{space}" {{ {body} }}\n'


def _binomial_total(n: int) -> dict[int, str]:
    """``(1 + a)^(n+1)`` on RP^n, as ``{i: "a^i"}``."""
    out = {}
    for i in range(1, n + 1):
        # C(n+1, i) is odd iff i's bits are a subset of (n+1)'s
        if i & (n + 1) == i:
            out[i] = "a" if i == 1 else f"a^{i}"
    return out


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterError(msg)


# -- families ---------------------------------------------------------------------


def _sphere(d: int):
    _check(d >= 1, "sphere needs d >= 1")
    name = f"S{d}"
    src = _sphere_src(d, name)
    claims = [Claim("cup", 1, "a sphere has a single positive class, whose square vanishes")]
    if d in HOPF_DEGREES:
        src += _bundle(name, "nu", {d: "x"})
        claims.append(Claim("charrank", d, "a bundle with w_d != 0 covers the whole sphere", bundle="nu"))
        claims.append(Claim("ucharrank", d, "ucharrank(S^d) = d for d in {1,2,4,8}"))
    else:
        claims.append(Claim("ucharrank", d - 1, "ucharrank(S^d) = d - 1 outside {1,2,4,8}: w_d vanishes on S^d"))
    return name, src, claims, {}, ""


def _product_spheres(d: int, m: int):
    _check(d >= 1 and m >= 1, "product_spheres needs d, m >= 1")
    lo, hi = min(d, m), max(d, m)
    name = f"S{d}xS{m}"
    fac = f"S{d}"
    sph = [f"{d}:x", f"{m}:y"]
    flags = "spherical" if (d not in HOPF_DEGREES or m not in HOPF_DEGREES) else "none"
    src = (
        f'space "{name}" {{\n  dim {d + m}\n  basis x:{d} y:{m} xy:{d + m}\n'
        f"  prod x*y = xy\n  meta poincare true\n  meta null_cobordant true\n"
        f"  meta spherical {' '.join(sph)}\n  meta constraint {flags}\n}}\n"
    )
    src += _bundle(name, "tangent", {})
    src += _sphere_src(d, fac)
    if d in HOPF_DEGREES:
        src += _bundle(fac, "nu", {d: "x"})
    src += f'map proj1 from "{fac}" to "{name}" {{ x -> x; }}\n'
    src += f'map incl1 from "{name}" to "{fac}" {{ x -> x; y -> 0; }}\n'

    if d == m:
        uc, why = d - 1, "equal factor degrees give dim H^d = 2, forcing ucharrank d - 1"
    elif lo not in HOPF_DEGREES:
        uc, why = lo - 1, "ucharrank(S^d x S^m) = d - 1 when d < m and d is not 1, 2, 4, 8"
    elif hi not in HOPF_DEGREES:
        uc, why = hi - 1, "ucharrank(S^d x S^m) = m - 1 when d in {1,2,4,8} < m and m is not"
    else:
        uc, why = d + m, "ucharrank(S^d x S^m) = d + m when both degrees lie in {1,2,4,8}"
    claims = [
        Claim("ucharrank", uc, why),
        Claim("cup", 2, "x*y is the only nonzero product of positive classes"),
        Claim("charrank", lo - 1, "the tangent bundle is stably trivial, so charrank = r_X - 1", bundle="tangent"),
    ]
    if d != m:
        ws: dict[int, str] = {}
        if d in HOPF_DEGREES:
            ws[d] = "x"
        if m in HOPF_DEGREES:
            ws[m] = "y"
        if len(ws) == 2:
            ws[d + m] = "xy"
        if ws:
            src += _bundle(name, "xi", ws)
            claims.append(Claim("charrank", uc, "the pulled-back Hopf bundles realize the upper characteristic rank", bundle="xi"))
    if (d, m) == (2, 6):
        claims += [
            Claim("boundary_bound", 4, "null-cobordant bound with z = 1 on S^2 x S^6 evaluates to 4", param=1),
            Claim("bundle_bound", 2, "bound from the pulled-back Hopf bundle with k = 5 on S^2 x S^6 evaluates to 2", bundle="xi", param=5),
        ]
    if (d, m) == (4, 8):
        claims += [
            Claim("boundary_bound", 3, "null-cobordant bound with z = 3 on S^4 x S^8 evaluates to 3", param=3),
            Claim("bundle_bound", 2, "bound from the sum of Hopf bundles with k = 7 on S^4 x S^8 evaluates to 2", bundle="xi", param=7),
        ]
    return name, src, claims, {"proj1": False, "incl1": True}, ""


def _rp(n: int):
    _check(n >= 1, "rp needs n >= 1")
    name = f"RP{n}"
    nc = "  meta null_cobordant true\n" if n % 2 else ""
    src = f'space "{name}" {{\n  dim {n}\n  gen a:1\n  rel a^{n + 1}\n  meta poincare true\n{nc}}}\n'
    src += _bundle(name, "gamma", {1: "a"})
    src += _bundle(name, "tangent", _binomial_total(n))
    claims = [
        Claim("ucharrank", n, "ucharrank(RP^n) = n"),
        Claim("charrank_values", (0, n), "on RP^n every charrank is r_X - 1 = 0 or n"),
        Claim("charrank", n, "the canonical line bundle generates H*(RP^n)", bundle="gamma"),
        Claim("charrank", n if n % 2 == 0 else 0, "w(T RP^n) = (1+a)^(n+1); w_1 vanishes iff n is odd", bundle="tangent"),
        Claim("cup", n, "a^n is the top class"),
    ]
    return name, src, claims, {}, ""


def _cp(n: int):
    _check(n >= 1, "cp needs n >= 1")
    name = f"CP{n}"
    src = f'space "{name}" {{\n  dim {2 * n}\n  gen b:2\n  rel b^{n + 1}\n  meta poincare true\n}}\n'
    src += _bundle(name, "gamma", {2: "b"})
    claims = [
        Claim("ucharrank", 2 * n, "ucharrank(CP^n) = 2n"),
        Claim("charrank_values", (1, 2 * n), "on CP^n r_X = 2 and every charrank is 1 or 2n"),
        Claim("charrank", 2 * n, "the realification of the Hopf bundle has w_2 = b, so charrank = 2n", bundle="gamma"),
        Claim("cup", n, "b^n is the top class"),
    ]
    return name, src, claims, {}, ""


def _s1_x_cp(n: int):
    _check(n >= 1, "s1_x_cp needs n >= 1")
    name = f"S1xCP{n}"
    fac = f"CP{n}"
    src = (
        f'space "{name}" {{\n  dim {2 * n + 1}\n  gen a:1 b:2\n  rel a^2, b^{n + 1}\n'
        f"  meta poincare true\n  meta null_cobordant true\n}}\n"
    )
    src += _bundle(name, "gamma", {1: "a"})
    src += _bundle(name, "sum", {1: "a", 2: "b", 3: "a*b"})
    src += f'space "{fac}" {{\n  dim {2 * n}\n  gen b:2\n  rel b^{n + 1}\n  meta poincare true\n}}\n'
    src += _bundle(fac, "gamma", {2: "b"})
    src += f'map proj from "{fac}" to "{name}" {{ b -> b; }}\n'
    src += f'map incl from "{name}" to "{fac}" {{ a -> 0; b -> b; }}\n'
    claims = [
        Claim("ucharrank", 2 * n + 1, "ucharrank(S^1 x CP^n) = 2n + 1"),
        Claim("charrank_values", (0, 1, 2 * n + 1), "on S^1 x CP^n every charrank is 0, 1 or 2n + 1"),
        Claim("charrank", 1, "w = 1 + a covers degree 1 but a^2 = 0 misses b", bundle="gamma"),
        Claim("charrank", 2 * n + 1, "w = (1+a)(1+b) generates H*(S^1 x CP^n)", bundle="sum"),
        Claim("cup", n + 1, "a*b^n is the top class"),
    ]
    return name, src, claims, {"proj": False, "incl": True}, ""


def _dold(m: int, n: int):
    _check(m >= 1 and n >= 1, "dold needs m, n >= 1")
    name = f"Dold P({m},{n})"
    d = m + 2 * n
    src = (
        f'space "{name}" {{\n  dim {d}\n  gen c:1 d:2\n  rel c^{m + 1}, d^{n + 1}\n'
        f"  meta poincare true\n}}\n"
    )
    src += _bundle(name, "xi", {1: "c"})
    src += _bundle(name, "eta", {1: "c", 2: "d"})
    claims = [
        Claim("ucharrank", d, "ucharrank(P(m,n)) = 2n + m"),
        Claim("charrank_values", (0, 1, d), "on P(m,n) every charrank is 0, 1 or 2n + m"),
        Claim("charrank", 1, "w = 1 + c gives charrank 1 since c^2 != d", bundle="xi"),
        Claim("charrank", d, "w = 1 + c + d gives charrank 2n + m", bundle="eta"),
        Claim("betti_sum", (m + 1) * (n + 1), "H*(P(m,n)) has basis c^i d^j, i <= m, j <= n"),
        Claim("cup", m + n, "c^m d^n is the top class"),
    ]
    return name, src, claims, {}, ""


def _moore(n: int):
    _check(n >= 2, "moore needs n >= 2")
    name = f"M(Z2,{n})"
    if n == 2:
        flags = "wu_sq1"
    elif n in HOPF_DEGREES:
        flags = "trivial_only"
    else:
        flags = "spherical"
    src = (
        f'space "{name}" {{\n  dim {n + 1}\n  basis x{n}:{n} x{n + 1}:{n + 1}\n'
        f"  meta suspension true\n  meta spherical {n}:x{n}\n  meta constraint {flags}\n"
        f"  meta sq1 x{n} = x{n + 1}\n}}\n"
    )
    if n == 2:
        src += _bundle(name, "wu", {2: "x2", 3: "x3"})
        claims = [
            Claim("ucharrank", 3, "ucharrank(M(Z2,2)) = 3: Sq^1 w_2 = w_3 forces w_3 = x_3"),
            Claim("charrank", 3, "w_2 = x_2 and w_3 = Sq^1 x_2 = x_3 cover everything", bundle="wu"),
        ]
    else:
        claims = [Claim("ucharrank", n - 1, "ucharrank(M(Z2,n)) = n - 1 for n != 2")]
    return name, src, claims, {}, ""


def _stunted(n: int, m: int):
    _check(1 <= m <= n - 2, "stunted needs 1 <= m <= n - 2")
    name = f"RP{n}/RP{m}"
    basis = " ".join(f"e{j}:{j}" for j in range(m + 1, n + 1))
    prods = "".join(
        f"  prod e{i}*e{j} = e{i + j}\n"
        for i in range(m + 1, n + 1)
        for j in range(i, n + 1)
        if i + j <= n
    )
    sph = [f"{m + 1}:e{m + 1}"]
    if (m + 1) % 2 == 0:
        sph.append(f"{m + 2}:e{m + 2}")
    src = (
        f'space "{name}" {{\n  dim {n}\n  basis {basis}\n{prods}'
        f"  meta spherical {' '.join(sph)}\n  meta constraint spherical\n}}\n"
    )
    claims = []
    if m + 1 in HOPF_DEGREES:
        src += _bundle(name, "witness", {m + 1: f"e{m + 1}"})
        claims.append(Claim("ucharrank", m + 1, "ucharrank(RP^n/RP^m) = m + 1 when m + 1 is 2, 4 or 8"))
        claims.append(Claim("charrank", m + 1, "the bottom cell carries a bundle with w_{m+1} != 0", bundle="witness"))
    else:
        claims.append(Claim("ucharrank", m, "ucharrank(RP^n/RP^m) = m when m + 1 is not 2, 4 or 8"))
    note = (
        "H*(RP^n/RP^m) injects into H*(RP^n) as the span of a^j, j > m; "
        "e_i*e_j = e_{i+j}. The bottom class is spherical; when m + 1 is even "
        "the top two cells split off as a wedge, so e_{m+2} is spherical too."
    )
    return name, src, claims, {}, note


def _lens(m: int, n: int):
    _check(m >= 3 and m % 2 == 1 and n > 1, "lens needs m odd >= 3 and n > 1")
    name = f"L({m},{n})"
    d = 2 * n - 1
    src = (
        f'space "{name}" {{\n  dim {d}\n  basis top:{d}\n  meta poincare true\n'
        f"  meta constraint trivial_only\n}}\n"
    )
    claims = [Claim("ucharrank", 2 * n - 2, "ucharrank(L) = 2n - 2: odd order kills mod-2 cohomology below the top")]
    note = "mod-2 cohomology of an odd-order lens space is that of S^(2n-1): only the unit and the top class."
    return name, src, claims, {}, note


_BUILDERS = {
    "sphere": _sphere,
    "product_spheres": _product_spheres,
    "rp": _rp,
    "cp": _cp,
    "s1_x_cp": _s1_x_cp,
    "dold": _dold,
    "moore": _moore,
    "stunted": _stunted,
    "lens": _lens,
}


def build(family: str, *params: int) -> SpaceRecord:
    family = family.replace("-", "_")
    if family not in _BUILDERS:
        raise ParameterError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if len(params) != _ARITY[family]:
        raise ParameterError(f"{family} takes {_ARITY[family]} parameter(s), got {len(params)}")
    name, src, claims, maps, note = _BUILDERS[family](*params)
    doc = dsl.load(src)
    return SpaceRecord(family, tuple(params), name, doc, claims, maps, note)


def tangent_profile(family: str, *params: int) -> Optional[dsl.SWProfileSource]:
    """Tangent Stiefel-Whitney data where it is known; ``None`` for the other families."""
    family = family.replace("-", "_")
    if family not in _BUILDERS:
        raise ParameterError(f"unknown family {family!r}")
    if family not in ("product_spheres", "rp"):
        return None
    rec = build(family, *params)
    return rec.document.bundle_sources[rec.name, "tangent"]


def emit(record: SpaceRecord) -> str:
    return record.source()


def records(family: Optional[str] = None) -> list[SpaceRecord]:
    fams = FAMILIES if family is None else (family.replace("-", "_"),)
    out = []
    for fam in fams:
        if fam not in DEFAULT_PARAMS:
            raise ParameterError(f"unknown family {fam!r}")
        out.extend(build(fam, *p) for p in DEFAULT_PARAMS[fam])
    return out
