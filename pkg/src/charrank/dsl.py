"""Text presentations of spaces, bundles and ring maps.

A space is either a polynomial quotient by monomial relations (``gen`` and
``rel`` statements) or an explicit multiplication table (``basis`` and
``prod`` statements)::

    # real projective 5-space
    space "RP5" { dim 5  gen a:1  rel a^6  meta poincare true }
    bundle gamma on "RP5" { w1 = a; }

    space "M(Z2,2)" { dim 3  basis x2:2 x3:3
      meta suspension true  meta spherical 2:x2  meta sq1 x2 = x3 }

    map pr from "S2" to "S2xS6" { x -> x; }

Names of spaces, bundles, maps and table basis classes may be bare
identifiers or double-quoted strings. Polynomials use ``+``, ``*`` and
``^`` with the usual precedence; the constants ``0`` and ``1`` are allowed.
``;`` between statements is optional. ``#`` starts a line comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Union

from .algebra import UNIT, Element, GradedAlgebra, RingMap, SpaceMeta
from .errors import AlgebraError, CapacityError, ParseError
from .f2linalg import MAX_WIDTH

KEYWORDS = {
    "space", "bundle", "map", "on", "from", "to",
    "dim", "gen", "rel", "basis", "prod", "meta",
}
CONSTRAINT_FLAGS = ("power2", "spherical", "trivial_only", "wu_sq1", "forced_zero")

_ID = r"[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z0-9_]+)*"
_TOKEN_RE = re.compile(
    rf"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<int>\d+)
  | (?P<id>{_ID})
  | (?P<arrow>->)
  | (?P<punct>[{{}}:;=+*^(),])
    """,
    re.VERBOSE,
)
_ID_RE = re.compile(rf"^{_ID}$")


@dataclass(frozen=True)
class Token:
    kind: str  # "string" | "int" | "id" | "punct" | "eof"
    value: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        value = m.group()
        col = pos - line_start + 1
        if kind == "string":
            tokens.append(Token("string", re.sub(r"\\(.)", r"\1", value[1:-1]), line, col))
        elif kind == "arrow":
            tokens.append(Token("punct", "->", line, col))
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# -- expressions ---------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    name: str
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class Const:
    value: int  # 0 or 1


@dataclass(frozen=True)
class Add:
    terms: tuple


@dataclass(frozen=True)
class Mul:
    factors: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


Expr = Union[Atom, Const, Add, Mul, Pow]


def expr_atoms(e: Expr) -> Iterator[Atom]:
    if isinstance(e, Atom):
        yield e
    elif isinstance(e, Add):
        for t in e.terms:
            yield from expr_atoms(t)
    elif isinstance(e, Mul):
        for f in e.factors:
            yield from expr_atoms(f)
    elif isinstance(e, Pow):
        yield from expr_atoms(e.base)


def expr_degree(e: Expr, degree_of: Callable[[Atom], int]) -> Optional[int]:
    """Degree of a homogeneous expression; ``None`` for the constant 0.

    Raises :class:`ParseError` when a sum mixes degrees.
    """
    if isinstance(e, Atom):
        return degree_of(e)
    if isinstance(e, Const):
        return 0 if e.value else None
    if isinstance(e, Pow):
        d = expr_degree(e.base, degree_of)
        if e.exp == 0:
            return 0
        return None if d is None else d * e.exp
    if isinstance(e, Mul):
        total = 0
        for f in e.factors:
            d = expr_degree(f, degree_of)
            if d is None:
                return None
            total += d
        return total
    degs = {expr_degree(t, degree_of) for t in e.terms} - {None}
    if len(degs) > 1:
        first = next(expr_atoms(e), Atom("", 0, 0))
        raise ParseError(f"inhomogeneous expression mixes degrees {sorted(degs)}", first.line, first.col)
    return degs.pop() if degs else None


def evaluate(e: Expr, alg: GradedAlgebra, resolve: Callable[[Atom], Element]) -> Element:
    if isinstance(e, Atom):
        return resolve(e)
    if isinstance(e, Const):
        return alg.one() if e.value else alg.zero()
    if isinstance(e, Add):
        out = alg.zero()
        for t in e.terms:
            out = out + evaluate(t, alg, resolve)
        return out
    if isinstance(e, Mul):
        out = alg.one()
        for f in e.factors:
            out = out * evaluate(f, alg, resolve)
        return out
    return evaluate(e.base, alg, resolve) ** e.exp


def render_name(name: str, bare_ok: bool = False) -> str:
    if bare_ok or (_ID_RE.match(name) and name not in KEYWORDS):
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_expr(e: Expr) -> str:
    if isinstance(e, Atom):
        return render_name(e.name)
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Add):
        return " + ".join(render_expr(t) for t in e.terms)
    if isinstance(e, Mul):
        return "*".join(
            f"({render_expr(f)})" if isinstance(f, Add) else render_expr(f) for f in e.factors
        )
    base = render_expr(e.base)
    if not isinstance(e.base, Atom):
        base = f"({base})"
    return f"{base}^{e.exp}"


# -- source items --------------------------------------------------------------


@dataclass
class MetaSource:
    poincare: bool = False
    null_cobordant: bool = False
    suspension: bool = False
    spherical: list[tuple[int, str]] = field(default_factory=list)
    constraints: list[str] = field(default_factory=list)
    forced_zero: list[tuple[int, str]] = field(default_factory=list)
    sq1: list[tuple[str, Expr]] = field(default_factory=list)


@dataclass
class Presentation:
    """Parsed ``space`` block."""

    name: str
    dim: int
    mode: str = "poly"  # "poly" | "table"
    gens: list[tuple[str, int]] = field(default_factory=list)
    rels: list[Expr] = field(default_factory=list)
    basis: list[tuple[str, int]] = field(default_factory=list)
    prods: list[tuple[str, str, Expr]] = field(default_factory=list)
    meta: MetaSource = field(default_factory=MetaSource)
    line: int = 0
    col: int = 0


@dataclass
class SWProfileSource:
    """Parsed ``bundle`` block: ``assignments[i]`` is the expression for ``w_i``."""

    name: str
    space: str
    assignments: dict[int, Expr] = field(default_factory=dict)
    line: int = 0
    col: int = 0


@dataclass
class MapSource:
    """Parsed ``map`` block: images of source generators (or basis classes)."""

    name: str
    source: str
    target: str
    entries: list[tuple[str, Expr]] = field(default_factory=list)
    line: int = 0
    col: int = 0


Item = Union[Presentation, SWProfileSource, MapSource]


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def next(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def at(self, value: str, kind: Optional[str] = None) -> bool:
        t = self.tok
        return t.value == value and (kind is None or t.kind == kind) and t.kind != "string"

    def expect(self, value: str) -> Token:
        if not self.at(value):
            shown = self.tok.value or "end of input"
            raise self.error(f"expected {value!r}, found {shown!r}")
        return self.next()

    def expect_int(self) -> int:
        if self.tok.kind != "int":
            raise self.error(f"expected an integer, found {self.tok.value or 'end of input'!r}")
        return int(self.next().value)

    def expect_id(self) -> str:
        if self.tok.kind != "id":
            raise self.error(f"expected an identifier, found {self.tok.value or 'end of input'!r}")
        return self.next().value

    def is_name(self, tok: Optional[Token] = None) -> bool:
        tok = tok or self.tok
        return tok.kind == "string" or (tok.kind == "id" and tok.value not in KEYWORDS)

    def expect_name(self) -> str:
        if self.tok.kind not in ("string", "id"):
            raise self.error(f"expected a name, found {self.tok.value or 'end of input'!r}")
        return self.next().value

    def expect_bool(self) -> bool:
        t = self.tok
        if t.kind == "id" and t.value in ("true", "false"):
            self.next()
            return t.value == "true"
        raise self.error(f"expected true or false, found {t.value!r}")

    def skip_semis(self) -> None:
        while self.at(";", "punct"):
            self.next()

    # expressions

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.at("+", "punct"):
            self.next()
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def term(self) -> Expr:
        factors = [self.factor()]
        while self.at("*", "punct"):
            self.next()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def factor(self) -> Expr:
        base = self.primary()
        if self.at("^", "punct"):
            self.next()
            base = Pow(base, self.expect_int())
        return base

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            self.next()
            if t.value not in ("0", "1"):
                raise ParseError(f"coefficients live in F_2; got {t.value}", t.line, t.col)
            return Const(int(t.value))
        if t.kind == "string" or (t.kind == "id" and t.value not in KEYWORDS):
            self.next()
            return Atom(t.value, t.line, t.col)
        if self.at("(", "punct"):
            self.next()
            e = self.expr()
            self.expect(")")
            return e
        raise self.error(f"expected a polynomial, found {t.value or 'end of input'!r}")

    # items

    def document(self) -> list[Item]:
        items: list[Item] = []
        while True:
            self.skip_semis()
            t = self.tok
            if t.kind == "eof":
                return items
            if t.kind == "id" and t.value == "space":
                items.append(self.space())
            elif t.kind == "id" and t.value == "bundle":
                items.append(self.bundle())
            elif t.kind == "id" and t.value == "map":
                items.append(self.map())
            else:
                raise self.error(f"expected 'space', 'bundle' or 'map', found {t.value!r}")

    def space(self) -> Presentation:
        start = self.next()
        name = self.expect_name()
        self.expect("{")
        pres = Presentation(name=name, dim=-1, line=start.line, col=start.col)
        seen_gen = seen_basis = None
        while not self.at("}", "punct"):
            t = self.tok
            if t.kind == "eof":
                raise self.error(f"unterminated space block {name!r}", start)
            if self.at(";", "punct"):
                self.next()
                continue
            if t.kind != "id":
                raise self.error(f"unexpected {t.value!r} in space block")
            kw = self.next().value
            if kw == "dim":
                pres.dim = self.expect_int()
                if pres.dim < 1:
                    raise ParseError("dim must be at least 1", t.line, t.col)
            elif kw == "gen":
                seen_gen = seen_gen or t
                while True:
                    gt = self.tok
                    g = self.expect_id()
                    self.expect(":")
                    deg = self.expect_int()
                    if deg < 1:
                        raise ParseError(f"generator {g} must have degree >= 1", gt.line, gt.col)
                    if any(g == h for h, _ in pres.gens):
                        raise ParseError(f"duplicate generator {g}", gt.line, gt.col)
                    pres.gens.append((g, deg))
                    if not (self.tok.kind == "id" and self.tok.value not in KEYWORDS
                            and self.peek().value == ":"):
                        break
            elif kw == "rel":
                pres.rels.append(self.expr())
                while self.at(",", "punct"):
                    self.next()
                    pres.rels.append(self.expr())
            elif kw == "basis":
                seen_basis = seen_basis or t
                while True:
                    bt = self.tok
                    b = self.expect_name()
                    self.expect(":")
                    deg = self.expect_int()
                    if deg < 1:
                        raise ParseError(f"basis class {b} must have degree >= 1", bt.line, bt.col)
                    if b == UNIT or any(b == c for c, _ in pres.basis):
                        raise ParseError(f"duplicate basis class {b}", bt.line, bt.col)
                    pres.basis.append((b, deg))
                    if not (self.is_name() and self.peek().value == ":"):
                        break
            elif kw == "prod":
                while True:
                    u = self.expect_name()
                    self.expect("*")
                    v = self.expect_name()
                    self.expect("=")
                    pres.prods.append((u, v, self.expr()))
                    if not (self.is_name() and self.peek().value == "*"):
                        break
            elif kw == "meta":
                self.meta(pres.meta)
            else:
                raise ParseError(f"unknown statement {kw!r}", t.line, t.col)
        self.expect("}")
        if pres.dim < 0:
            raise ParseError(f"space {name!r} has no dim statement", start.line, start.col)
        if seen_gen and seen_basis:
            raise ParseError("a space is either gen/rel or basis/prod, not both", seen_basis.line, seen_basis.col)
        if seen_basis or pres.prods:
            pres.mode = "table"
        if pres.mode == "table" and pres.rels:
            raise ParseError("rel is only allowed with gen", start.line, start.col)
        return pres

    def meta(self, meta: MetaSource) -> None:
        t = self.tok
        key = self.expect_id()
        if key in ("poincare", "null_cobordant", "suspension"):
            setattr(meta, key, self.expect_bool())
        elif key == "spherical":
            meta.spherical.extend(self.degree_pairs())
        elif key == "constraint":
            first = True
            while self.tok.kind == "id" and self.tok.value.replace("-", "_") in CONSTRAINT_FLAGS + ("none",):
                flag = self.next().value.replace("-", "_")
                first = False
                if flag == "none":
                    continue
                if flag == "forced_zero":
                    meta.forced_zero.extend(self.degree_pairs())
                if flag not in meta.constraints:
                    meta.constraints.append(flag)
            if first:
                raise self.error(f"expected a constraint flag, one of {', '.join(CONSTRAINT_FLAGS)}")
        elif key == "sq1":
            while True:
                b = self.expect_name()
                self.expect("=")
                meta.sq1.append((b, self.expr()))
                if not (self.is_name() and self.peek().value == "="):
                    break
        else:
            raise ParseError(f"unknown meta key {key!r}", t.line, t.col)

    def degree_pairs(self) -> list[tuple[int, str]]:
        out = []
        while self.tok.kind == "int" and self.peek().value == ":":
            deg = self.expect_int()
            self.expect(":")
            out.append((deg, self.expect_name()))
        if not out:
            raise self.error("expected <degree>:<basis class>")
        return out

    def bundle(self) -> SWProfileSource:
        start = self.next()
        name = self.expect_name()
        if self.expect_id() != "on":
            raise self.error("expected 'on'", self.toks[self.i - 1])
        space = self.expect_name()
        self.expect("{")
        src = SWProfileSource(name=name, space=space, line=start.line, col=start.col)
        while not self.at("}", "punct"):
            self.skip_semis()
            if self.at("}", "punct"):
                break
            t = self.tok
            key = self.expect_id()
            m = re.fullmatch(r"w(\d+)", key)
            if not m:
                raise ParseError(f"expected w<i>, found {key!r}", t.line, t.col)
            i = int(m.group(1))
            if i < 1:
                raise ParseError("w0 is always 1 and cannot be assigned", t.line, t.col)
            if i in src.assignments:
                raise ParseError(f"w{i} assigned twice", t.line, t.col)
            self.expect("=")
            src.assignments[i] = self.expr()
            self.skip_semis()
        self.expect("}")
        return src

    def map(self) -> MapSource:
        start = self.next()
        name = self.expect_name()
        if self.expect_id() != "from":
            raise self.error("expected 'from'", self.toks[self.i - 1])
        source = self.expect_name()
        if self.expect_id() != "to":
            raise self.error("expected 'to'", self.toks[self.i - 1])
        target = self.expect_name()
        self.expect("{")
        src = MapSource(name=name, source=source, target=target, line=start.line, col=start.col)
        while not self.at("}", "punct"):
            self.skip_semis()
            if self.at("}", "punct"):
                break
            g = self.expect_name()
            self.expect("->")
            src.entries.append((g, self.expr()))
            self.skip_semis()
        self.expect("}")
        return src


def parse(text: str) -> list[Item]:
    """Parse source text into presentations, bundle sources and map sources.

    References between items (the space a bundle lives on, the two ends of
    a map) are checked here; generator names are checked when the items
    are realized.
    """
    items = _Parser(text).document()
    spaces = {}
    for it in items:
        if isinstance(it, Presentation):
            if it.name in spaces:
                raise ParseError(f"space {it.name!r} defined twice", it.line, it.col)
            spaces[it.name] = it
    for it in items:
        refs = []
        if isinstance(it, SWProfileSource):
            refs = [it.space]
        elif isinstance(it, MapSource):
            refs = [it.source, it.target]
        for r in refs:
            if r not in spaces:
                raise ParseError(f"unknown space {r!r}", it.line, it.col)
    return items


# -- realization -----------------------------------------------------------------


def _monomial_exponents(e: Expr, gens: dict[str, int], where: str) -> tuple[int, ...]:
    order = list(gens)
    exps = [0] * len(order)

    def walk(x: Expr, power: int) -> None:
        if isinstance(x, Atom):
            if x.name not in gens:
                raise ParseError(f"unknown generator {x.name!r} in {where}", x.line, x.col)
            exps[order.index(x.name)] += power
        elif isinstance(x, Pow):
            walk(x.base, power * x.exp)
        elif isinstance(x, Mul):
            for f in x.factors:
                walk(f, power)
        elif isinstance(x, Const) and x.value == 1:
            pass
        else:
            first = next(expr_atoms(x), Atom("", 0, 0))
            raise ParseError(f"{where} must be a single monomial in the generators", first.line, first.col)

    walk(e, 1)
    return tuple(exps)


def monomial_name(gens: list[tuple[str, int]], exps: tuple[int, ...]) -> str:
    parts = [g if e == 1 else f"{g}^{e}" for (g, _), e in zip(gens, exps) if e]
    return "*".join(parts) if parts else UNIT


def _poly_basis(pres: Presentation) -> tuple[list[list[tuple[int, ...]]], list[tuple[int, ...]]]:
    degs = [d for _, d in pres.gens]
    gens = dict(pres.gens)
    rels = [_monomial_exponents(r, gens, "rel") for r in pres.rels]
    for r, src in zip(rels, pres.rels):
        if not any(r):
            first = next(expr_atoms(src), Atom("", pres.line, pres.col))
            raise ParseError("relation 1 kills the whole ring", first.line, first.col)
    by_degree: list[list[tuple[int, ...]]] = [[] for _ in range(pres.dim + 1)]
    count = 0

    def divisible(exps: tuple[int, ...]) -> bool:
        return any(all(e >= r for e, r in zip(exps, rel)) for rel in rels)

    def rec(k: int, exps: list[int], deg: int) -> None:
        nonlocal count
        if k == len(degs):
            t = tuple(exps)
            if not divisible(t):
                by_degree[deg].append(t)
                count += 1
                if count > MAX_WIDTH:
                    raise CapacityError(f"{pres.name}: more than {MAX_WIDTH} basis monomials")
            return
        e = 0
        while deg + e * degs[k] <= pres.dim:
            exps.append(e)
            rec(k + 1, exps, deg + e * degs[k])
            exps.pop()
            e += 1

    rec(0, [], 0)
    for lst in by_degree:
        lst.sort(reverse=True)
    return by_degree, rels


def realize(pres: Presentation) -> GradedAlgebra:
    """Build and validate the algebra of a presentation."""
    if pres.mode == "poly":
        alg = _realize_poly(pres)
    else:
        alg = _realize_table(pres)
    alg.checked()
    _attach_meta(pres, alg)
    return alg


def _realize_poly(pres: Presentation) -> GradedAlgebra:
    for g, deg in pres.gens:
        if deg > pres.dim:
            raise ParseError(f"degree overflow: generator {g} has degree {deg} > dim {pres.dim}", pres.line, pres.col)
    by_degree, rels = _poly_basis(pres)
    names = [[monomial_name(pres.gens, e) for e in lst] for lst in by_degree]
    position = {e: (j, p) for j, lst in enumerate(by_degree) for p, e in enumerate(lst)}
    products = {}
    flat = [e for lst in by_degree for e in lst]
    for a in flat:
        ja, pa = position[a]
        for b in flat:
            jb, pb = position[b]
            if ja + jb > pres.dim:
                continue
            s = tuple(x + y for x, y in zip(a, b))
            hit = position.get(s)
            bits = 1 << hit[1] if hit is not None else 0
            products[names[ja][pa], names[jb][pb]] = {ja + jb: bits}
    alg = GradedAlgebra(pres.dim, names, products, name=pres.name)
    alg.mode = "poly"
    alg.generators = tuple(pres.gens)
    alg.exponents = {names[j][p]: e for e, (j, p) in position.items()}
    return alg


def _realize_table(pres: Presentation) -> GradedAlgebra:
    degree = {UNIT: 0}
    for b, deg in pres.basis:
        if deg > pres.dim:
            raise ParseError(f"degree overflow: basis class {b} has degree {deg} > dim {pres.dim}", pres.line, pres.col)
        degree[b] = deg
    names = [[UNIT]] + [[] for _ in range(pres.dim)]
    for b, deg in pres.basis:
        names[deg].append(b)
    pos = {b: names[d].index(b) for b, d in degree.items()}
    products = {}
    for u, v, rhs in pres.prods:
        for nm in (u, v):
            if nm not in degree:
                raise ParseError(f"unknown basis class {nm!r} in prod", pres.line, pres.col)
        comps: dict[int, int] = {}
        for term in _linear_terms(rhs):
            if term.name not in degree:
                raise ParseError(f"unknown basis class {term.name!r}", term.line, term.col)
            d = degree[term.name]
            comps[d] = comps.get(d, 0) ^ (1 << pos[term.name])
        if (u, v) in products:
            raise ParseError(f"product {u}*{v} given twice", pres.line, pres.col)
        products[u, v] = comps
    for (u, v), comps in list(products.items()):
        products.setdefault((v, u), comps)
    alg = GradedAlgebra(pres.dim, names, products, name=pres.name)
    alg.mode = "table"
    return alg


def _linear_terms(e: Expr) -> list[Atom]:
    if isinstance(e, Const):
        if e.value:
            return [Atom(UNIT)]
        return []
    if isinstance(e, Atom):
        return [e]
    if isinstance(e, Add):
        out = []
        for t in e.terms:
            out.extend(_linear_terms(t))
        return out
    first = next(expr_atoms(e), Atom("", 0, 0))
    raise ParseError("table products must be sums of basis classes", first.line, first.col)


def resolver(alg: GradedAlgebra) -> Callable[[Atom], Element]:
    """Resolve atoms to basis classes; poly generators killed by a relation resolve to 0."""
    gens = dict(getattr(alg, "generators", ()))

    def resolve(atom: Atom) -> Element:
        if atom.name in alg.index:
            return alg.basis_element(atom.name)
        if atom.name in gens:
            return alg.zero()
        raise ParseError(f"unknown generator {atom.name!r} on space {alg.name!r}", atom.line, atom.col)

    return resolve


def atom_degree(alg: GradedAlgebra) -> Callable[[Atom], int]:
    gens = dict(getattr(alg, "generators", ()))

    def degree_of(atom: Atom) -> int:
        if atom.name in alg.index:
            return alg.index[atom.name][0]
        if atom.name in gens:
            return gens[atom.name]
        raise ParseError(f"unknown generator {atom.name!r} on space {alg.name!r}", atom.line, atom.col)

    return degree_of


def homogeneous_value(e: Expr, alg: GradedAlgebra, degree: int, what: str, line: int = 0, col: int = 0) -> Element:
    """Evaluate ``e`` in ``alg``, requiring it to be homogeneous of ``degree``."""
    d = expr_degree(e, atom_degree(alg))
    if d is not None and d != degree:
        first = next(expr_atoms(e), None)
        where = (first.line, first.col) if first else (line, col)
        raise ParseError(f"degree mismatch: {what} has degree {d}, expected {degree}", *where)
    return evaluate(e, alg, resolver(alg))


def _attach_meta(pres: Presentation, alg: GradedAlgebra) -> None:
    m = pres.meta

    def check_pair(deg: int, nm: str, what: str) -> tuple[int, str]:
        if deg > alg.dim:
            raise ParseError(f"degree overflow: {what} degree {deg} > dim {alg.dim}", pres.line, pres.col)
        if alg.index.get(nm, (None,))[0] != deg:
            raise ParseError(f"{what} {nm!r} is not a basis class of degree {deg}", pres.line, pres.col)
        return deg, nm

    spherical = tuple(check_pair(d, nm, "spherical class") for d, nm in m.spherical)
    forced = tuple(check_pair(d, nm, "forced_zero class") for d, nm in m.forced_zero)
    alg.meta = SpaceMeta(
        poincare=m.poincare,
        null_cobordant=m.null_cobordant,
        suspension=m.suspension,
        spherical=spherical,
        constraints=tuple(m.constraints),
        forced_zero=forced,
    )
    if m.sq1:
        alg.sq1 = _realize_sq1(pres, alg)


def _realize_sq1(pres: Presentation, alg: GradedAlgebra) -> dict[str, Element]:
    given: dict[str, Element] = {}
    for nm, e in pres.meta.sq1:
        if nm not in alg.index:
            raise ParseError(f"sq1 of unknown basis class {nm!r}", pres.line, pres.col)
        deg = alg.index[nm][0]
        if pres.mode == "poly" and nm not in dict(pres.gens):
            raise ParseError(f"in gen/rel mode sq1 is given on generators, not {nm!r}", pres.line, pres.col)
        value = homogeneous_value(e, alg, deg + 1, f"sq1 {nm}", pres.line, pres.col)
        if deg + 1 > alg.dim and value:
            raise ParseError(f"sq1 {nm} lands above dim", pres.line, pres.col)
        given[nm] = value
    if pres.mode == "table":
        return {nm: given.get(nm, alg.zero()) for nm in alg.index}
    # extend from generators by the derivation rule
    gens = [g for g, _ in pres.gens]
    out = {}
    for nm, exps in alg.exponents.items():
        total = alg.zero()
        for k, e in enumerate(exps):
            if e % 2 == 0:
                continue
            rest = list(exps)
            rest[k] -= 1
            cofactor = alg.basis_element(monomial_name(pres.gens, tuple(rest)))
            total = total + given.get(gens[k], alg.zero()) * cofactor
        out[nm] = total
    return out


def realize_profile(src: SWProfileSource, alg: GradedAlgebra):
    """Evaluate a bundle source to a :class:`~charrank.engine.SWProfile`."""
    from .engine import SWProfile

    w = {}
    for i, e in src.assignments.items():
        if i > alg.dim:
            raise ParseError(f"degree overflow: w{i} above dim {alg.dim}", src.line, src.col)
        w[i] = homogeneous_value(e, alg, i, f"w{i}", src.line, src.col)
    return SWProfile(alg, w, name=src.name)


def realize_map(src: MapSource, source: GradedAlgebra, target: GradedAlgebra) -> RingMap:
    images: dict[str, Element] = {}
    gens = dict(getattr(source, "generators", ()))
    for g, e in src.entries:
        if source.mode == "poly":
            if g not in gens:
                raise ParseError(f"unknown generator {g!r} of {source.name!r}", src.line, src.col)
            deg = gens[g]
        else:
            if g not in source.index:
                raise ParseError(f"unknown basis class {g!r} of {source.name!r}", src.line, src.col)
            deg = source.index[g][0]
        images[g] = homogeneous_value(e, target, deg, f"image of {g}", src.line, src.col)
    if source.mode == "poly":
        order = [g for g, _ in source.generators]
        full = {}
        for nm, exps in source.exponents.items():
            img = target.one()
            for g, k in zip(order, exps):
                if k:
                    img = img * images.get(g, target.zero()) ** k
            full[nm] = img
        images = full
    return RingMap(source, target, images, name=src.name).checked()


# -- documents -------------------------------------------------------------------


class Document:
    """A parsed and realized source file."""

    def __init__(self, items: list[Item]):
        self.items = items
        self.presentations: dict[str, Presentation] = {}
        self.spaces: dict[str, GradedAlgebra] = {}
        self.bundles: dict[tuple[str, str], object] = {}
        self.bundle_sources: dict[tuple[str, str], SWProfileSource] = {}
        self.maps: dict[str, RingMap] = {}
        for it in items:
            if isinstance(it, Presentation):
                self.presentations[it.name] = it
                self.spaces[it.name] = realize(it)
        for it in items:
            if isinstance(it, SWProfileSource):
                key = (it.space, it.name)
                if key in self.bundles:
                    raise ParseError(f"bundle {it.name!r} on {it.space!r} defined twice", it.line, it.col)
                self.bundle_sources[key] = it
                self.bundles[key] = realize_profile(it, self.spaces[it.space])
            elif isinstance(it, MapSource):
                self.maps[it.name] = realize_map(it, self.spaces[it.source], self.spaces[it.target])

    def space(self, name: str) -> GradedAlgebra:
        try:
            return self.spaces[name]
        except KeyError:
            raise ParseError(f"no space named {name!r}") from None

    def bundle(self, space: str, name: str):
        try:
            return self.bundles[space, name]
        except KeyError:
            raise ParseError(f"no bundle named {name!r} on space {space!r}") from None


def load(text: str) -> Document:
    return Document(parse(text))


# -- emission --------------------------------------------------------------------


def render_element(x: Element) -> str:
    alg = x.alg
    poly = getattr(alg, "mode", "table") == "poly"
    terms = []
    for j, bits in enumerate(x.bits):
        for p in range(alg.betti[j]):
            if bits >> p & 1:
                nm = alg.basis[j][p]
                terms.append(nm if poly or nm == UNIT else render_name(nm))
    return " + ".join(terms) if terms else "0"


def _meta_lines(meta: MetaSource, render_sq1: list[str]) -> list[str]:
    lines = []
    if meta.poincare:
        lines.append("meta poincare true")
    if meta.null_cobordant:
        lines.append("meta null_cobordant true")
    if meta.suspension:
        lines.append("meta suspension true")
    if meta.spherical:
        lines.append("meta spherical " + " ".join(f"{d}:{render_name(n)}" for d, n in meta.spherical))
    flags = [f for f in meta.constraints if f != "forced_zero"]
    if flags:
        lines.append("meta constraint " + " ".join(flags))
    if meta.forced_zero:
        lines.append(
            "meta constraint forced_zero " + " ".join(f"{d}:{render_name(n)}" for d, n in meta.forced_zero)
        )
    lines.extend(render_sq1)
    return lines


def emit_presentation(pres: Presentation) -> str:
    lines = [f"space {render_name(pres.name)} {{", f"  dim {pres.dim}"]
    if pres.mode == "poly":
        for g, d in pres.gens:
            lines.append(f"  gen {g}:{d}")
        for r in pres.rels:
            lines.append(f"  rel {render_expr(r)}")
    else:
        if pres.basis:
            lines.append("  basis " + " ".join(f"{render_name(b)}:{d}" for b, d in pres.basis))
        for u, v, e in pres.prods:
            lines.append(f"  prod {render_name(u)}*{render_name(v)} = {render_expr(e)}")
    sq1 = [f"meta sq1 {render_name(nm)} = {render_expr(e)}" for nm, e in pres.meta.sq1]
    lines.extend("  " + ln for ln in _meta_lines(pres.meta, sq1))
    lines.append("}")
    return "\n".join(lines)


def emit_bundle(src: SWProfileSource) -> str:
    body = "".join(f" w{i} = {render_expr(e)};" for i, e in sorted(src.assignments.items()))
    return f"bundle {render_name(src.name)} on {render_name(src.space)} {{{body} }}"


def emit_map(src: MapSource) -> str:
    body = " ".join(f"{render_name(g)} -> {render_expr(e)};" for g, e in src.entries)
    return f"map {render_name(src.name)} from {render_name(src.source)} to {render_name(src.target)} {{ {body} }}"


def emit(items: list[Item]) -> str:
    """Render items in canonical source form."""
    out = []
    for it in items:
        if isinstance(it, Presentation):
            out.append(emit_presentation(it))
        elif isinstance(it, SWProfileSource):
            out.append(emit_bundle(it))
        else:
            out.append(emit_map(it))
    return "\n\n".join(out) + "\n"


def profile_source(profile, name: Optional[str] = None) -> SWProfileSource:
    """Source form of a realized profile (expressions over basis classes)."""
    alg = profile.alg
    assignments = {}
    for i, x in sorted(profile.w.items()):
        if x:
            assignments[i] = _element_expr(x)
    return SWProfileSource(name=name or profile.name or "xi", space=alg.name, assignments=assignments)


def _element_expr(x: Element) -> Expr:
    alg = x.alg
    poly = getattr(alg, "mode", "table") == "poly"
    terms = []
    for j, bits in enumerate(x.bits):
        for p in range(alg.betti[j]):
            if bits >> p & 1:
                nm = alg.basis[j][p]
                if nm == UNIT:
                    terms.append(Const(1))
                elif poly:
                    terms.append(_monomial_expr(alg, nm))
                else:
                    terms.append(Atom(nm))
    if not terms:
        return Const(0)
    return terms[0] if len(terms) == 1 else Add(tuple(terms))


def _monomial_expr(alg: GradedAlgebra, nm: str) -> Expr:
    factors = []
    for (g, _), e in zip(alg.generators, alg.exponents[nm]):
        if e == 1:
            factors.append(Atom(g))
        elif e > 1:
            factors.append(Pow(Atom(g), e))
    return factors[0] if len(factors) == 1 else Mul(tuple(factors))


def table_presentation(alg: GradedAlgebra) -> Presentation:
    """Re-express a realized algebra as a multiplication-table presentation.

    Basis names are kept, so realizing the result gives an algebra with
    identical structure constants.
    """
    basis = [(nm, j) for j in range(1, alg.dim + 1) for nm in alg.basis[j]]
    prods = []
    for (u, v), bits in alg.products().items():
        k = alg.degree_of(u) + alg.degree_of(v)
        terms = tuple(Atom(alg.basis[k][p]) for p in range(alg.betti[k]) if bits >> p & 1)
        prods.append((u, v, terms[0] if len(terms) == 1 else Add(terms)))
    meta = MetaSource(
        poincare=alg.meta.poincare,
        null_cobordant=alg.meta.null_cobordant,
        suspension=alg.meta.suspension,
        spherical=list(alg.meta.spherical),
        constraints=list(alg.meta.constraints),
        forced_zero=list(alg.meta.forced_zero),
    )
    if alg.sq1:
        for nm, value in alg.sq1.items():
            if value:
                meta.sq1.append((nm, _table_expr(value)))
    return Presentation(name=alg.name, dim=alg.dim, mode="table", basis=basis, prods=prods, meta=meta)


def _table_expr(x: Element) -> Expr:
    alg = x.alg
    terms = tuple(
        Atom(alg.basis[j][p]) for j, bits in enumerate(x.bits) for p in range(alg.betti[j]) if bits >> p & 1
    )
    if not terms:
        return Const(0)
    return terms[0] if len(terms) == 1 else Add(terms)
