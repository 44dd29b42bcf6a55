"""Weighted dual graphs, their intersection lattice, and the ``.sdg`` text format.

Format, one statement per line, ``#`` starts a comment::

    graph <name>
    component <id> self=<int> genus=<uint> [mu=<uint>] [eta=<uint>] [nu_extra=<uint>]
    edge <id> <id> [mult=<uint>]
    arc <id>

Embedded-resolution documents additionally use ``strict``, ``mu`` and ``imult``
statements; those are collected here and interpreted by :mod:`nashgate.milnor`.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from nashgate import linalg
from nashgate.errors import NashgateError, ParseError

_ID_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-]*$")


@dataclass(frozen=True)
class Component:
    id: str
    self_int: int
    genus: int = 0
    mu: int = 0
    eta: int = 0
    nu_extra: int = 0

    def __post_init__(self):
        for name in ("genus", "mu", "eta", "nu_extra"):
            if getattr(self, name) < 0:
                raise NashgateError("NEGATIVE_INVARIANT", f"component {self.id}: {name} must be non-negative")

    @property
    def is_smooth(self) -> bool:
        return self.mu == 0 and self.eta == 0 and self.nu_extra == 0


@dataclass(frozen=True)
class DualGraph:
    """A connected weighted dual graph.

    ``edges`` is canonical: tuples ``(i, j, mult)`` with ``i < j`` indexing
    ``components`` in declaration order, sorted, one entry per pair.
    Use :meth:`build` to construct from unnormalized data.
    """

    name: str
    components: tuple[Component, ...]
    edges: tuple[tuple[int, int, int], ...] = ()
    arc: str | None = None

    @classmethod
    def build(cls, name, components, edges=(), arc=None) -> "DualGraph":
        """Validate and normalize. ``edges`` items are ``(id_or_index, id_or_index[, mult])``."""
        components = tuple(components)
        if not components:
            raise NashgateError("EMPTY_GRAPH", "graph has no components")
        index = {}
        for k, c in enumerate(components):
            if c.id in index:
                raise NashgateError("DUPLICATE_COMPONENT", f"duplicate component id {c.id!r}")
            index[c.id] = k

        def resolve(ref):
            if isinstance(ref, int):
                if not 0 <= ref < len(components):
                    raise NashgateError("UNKNOWN_COMPONENT", f"component index {ref} out of range")
                return ref
            if ref not in index:
                raise NashgateError("UNKNOWN_COMPONENT", f"edge references unknown component {ref!r}")
            return index[ref]

        merged: dict[tuple[int, int], int] = {}
        for e in edges:
            i, j = resolve(e[0]), resolve(e[1])
            mult = e[2] if len(e) > 2 else 1
            if i == j:
                raise NashgateError("SELF_EDGE", f"component {components[i].id!r} cannot meet itself")
            if mult <= 0:
                raise NashgateError("NEGATIVE_MULTIPLICITY", f"edge multiplicity must be positive, got {mult}")
            key = (min(i, j), max(i, j))
            merged[key] = merged.get(key, 0) + mult
        if arc is not None and arc not in index:
            raise NashgateError("UNKNOWN_COMPONENT", f"arc references unknown component {arc!r}")
        g = cls(name, components, tuple((i, j, m) for (i, j), m in sorted(merged.items())), arc)
        if not g.is_connected():
            raise NashgateError("DISCONNECTED", "dual graph is not connected")
        return g

    @property
    def size(self) -> int:
        return len(self.components)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.components)

    def index(self, ref: str | int) -> int:
        if isinstance(ref, int):
            if 0 <= ref < self.size:
                return ref
            raise NashgateError("UNKNOWN_COMPONENT", f"component index {ref} out of range")
        try:
            return self.ids.index(ref)
        except ValueError:
            raise NashgateError("UNKNOWN_COMPONENT", f"unknown component {ref!r}") from None

    def k(self, i: int, j: int) -> int:
        """Intersection number E_i . E_j."""
        if i == j:
            return self.components[i].self_int
        a, b = min(i, j), max(i, j)
        for p, q, m in self.edges:
            if (p, q) == (a, b):
                return m
        return 0

    def neighbors(self, i: int) -> list[int]:
        out = []
        for p, q, _ in self.edges:
            if p == i:
                out.append(q)
            elif q == i:
                out.append(p)
        return sorted(out)

    def is_connected(self) -> bool:
        seen = {0}
        todo = deque([0])
        while todo:
            for n in self.neighbors(todo.popleft()):
                if n not in seen:
                    seen.add(n)
                    todo.append(n)
        return len(seen) == self.size


@dataclass(frozen=True)
class IntersectionMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(n))


@dataclass(frozen=True)
class Definiteness:
    negative_definite: bool
    minors: tuple[int, ...]  # leading principal minors of -M, as far as computed
    witness: int | None = None  # order k (1-based) of the first non-positive minor

    def __bool__(self) -> bool:
        return self.negative_definite


@dataclass(frozen=True)
class SignReport:
    inverse: tuple[tuple[Fraction, ...], ...]
    all_nonpositive: bool
    offending_entries: tuple[tuple[int, int, Fraction], ...] = ()


def intersection_matrix(g: DualGraph) -> IntersectionMatrix:
    n = g.size
    rows = [[0] * n for _ in range(n)]
    for i, c in enumerate(g.components):
        rows[i][i] = c.self_int
    for i, j, m in g.edges:
        rows[i][j] = rows[j][i] = m
    return IntersectionMatrix(tuple(tuple(r) for r in rows))


def _as_matrix(m) -> IntersectionMatrix:
    if isinstance(m, IntersectionMatrix):
        return m
    if isinstance(m, DualGraph):
        return intersection_matrix(m)
    return IntersectionMatrix(tuple(tuple(int(x) for x in row) for row in m))


def is_negative_definite(m) -> Definiteness:
    """Sylvester's criterion on -M in exact integer arithmetic."""
    m = _as_matrix(m)
    neg = [[-x for x in row] for row in m.entries]
    minors = []
    for k in range(1, m.size + 1):
        d = linalg.determinant([row[:k] for row in neg[:k]])
        minors.append(d)
        if d <= 0:
            return Definiteness(False, tuple(minors), k)
    return Definiteness(True, tuple(minors))


def inverse_sign_report(m) -> SignReport:
    m = _as_matrix(m)
    if not m.is_symmetric() or not is_negative_definite(m):
        if linalg.determinant(m.entries) == 0:
            raise NashgateError("SINGULAR", "intersection matrix is singular")
        raise NashgateError("NOT_NEGATIVE_DEFINITE", "intersection matrix is not negative definite")
    inv = linalg.inverse(m.entries)
    offending = tuple(
        (i, j, x) for i, row in enumerate(inv) for j, x in enumerate(row) if x > 0
    )
    return SignReport(inv, not offending, offending)


def minimality_audit(g: DualGraph) -> list[Component]:
    """Smooth rational (-1)-curves; their presence means the resolution is not minimal."""
    return [c for c in g.components if c.self_int == -1 and c.genus == 0 and c.mu == 0 and c.eta == 0]


def require_negative_definite(g: DualGraph) -> IntersectionMatrix:
    m = intersection_matrix(g)
    if not is_negative_definite(m):
        raise NashgateError("NOT_NEGATIVE_DEFINITE", f"intersection matrix of {g.name!r} is not negative definite")
    return m


# -- text format -----------------------------------------------------------

@dataclass
class StrictStatement:
    id: str
    mult: int
    attach: list[tuple[str, int]]
    line: int


@dataclass
class GraphDocument:
    """Everything a ``.sdg`` file declares, before embedded-data interpretation."""

    graph: DualGraph
    strict: list[StrictStatement] = field(default_factory=list)
    mu: dict[str, int] = field(default_factory=dict)
    imult: dict[frozenset, int] = field(default_factory=dict)


_COMPONENT_KEYS = {"self", "genus", "mu", "eta", "nu_extra"}


def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _int(tok: str, col: int, lineno: int, what: str, *, unsigned: bool = False) -> int:
    if not re.fullmatch(r"[+-]?\d+", tok):
        raise ParseError("SYNTAX_ERROR", f"{what}: expected an integer, got {tok!r}", lineno, col)
    value = int(tok)
    if unsigned and value < 0:
        raise ParseError("NEGATIVE_INVARIANT", f"{what} must be non-negative, got {value}", lineno, col)
    return value


def _ident(tok: str, col: int, lineno: int) -> str:
    if not _ID_RE.match(tok):
        raise ParseError("SYNTAX_ERROR", f"invalid identifier {tok!r}", lineno, col)
    return tok


def parse_document(text: str) -> GraphDocument:
    name = None
    components: list[Component] = []
    comp_line: dict[str, int] = {}
    edges: list[tuple[str, str, int, int, int]] = []
    arc = None
    arc_pos = None
    strict: list[StrictStatement] = []
    mu: dict[str, int] = {}
    imult: dict[frozenset, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        kw, kcol = toks[0]
        args = toks[1:]
        if kw == "graph":
            if len(args) != 1:
                raise ParseError("SYNTAX_ERROR", "expected: graph <name>", lineno, kcol)
            if name is not None:
                raise ParseError("SYNTAX_ERROR", "duplicate graph statement", lineno, kcol)
            name = args[0][0]
        elif kw == "component":
            if not args:
                raise ParseError("SYNTAX_ERROR", "expected: component <id> self=<int> genus=<uint>", lineno, kcol)
            cid = _ident(*args[0], lineno)
            if cid in comp_line:
                raise ParseError(
                    "DUPLICATE_COMPONENT",
                    f"component {cid!r} already declared on line {comp_line[cid]}",
                    lineno,
                    args[0][1],
                )
            values = {}
            for tok, col in args[1:]:
                key, eq, val = tok.partition("=")
                if not eq or key not in _COMPONENT_KEYS:
                    raise ParseError("SYNTAX_ERROR", f"unexpected component attribute {tok!r}", lineno, col)
                if key in values:
                    raise ParseError("SYNTAX_ERROR", f"attribute {key!r} given twice", lineno, col)
                values[key] = _int(val, col + len(key) + 1, lineno, key, unsigned=key != "self")
            for required in ("self", "genus"):
                if required not in values:
                    raise ParseError("SYNTAX_ERROR", f"component {cid!r} is missing {required}=", lineno, kcol)
            comp_line[cid] = lineno
            components.append(
                Component(
                    cid,
                    values["self"],
                    values["genus"],
                    values.get("mu", 0),
                    values.get("eta", 0),
                    values.get("nu_extra", 0),
                )
            )
        elif kw == "edge":
            if len(args) not in (2, 3):
                raise ParseError("SYNTAX_ERROR", "expected: edge <id> <id> [mult=<uint>]", lineno, kcol)
            a = _ident(*args[0], lineno)
            b = _ident(*args[1], lineno)
            mult = 1
            if len(args) == 3:
                tok, col = args[2]
                if not tok.startswith("mult="):
                    raise ParseError("SYNTAX_ERROR", f"unexpected edge attribute {tok!r}", lineno, col)
                mult = _int(tok[5:], col + 5, lineno, "mult")
                if mult < 0:
                    raise ParseError("NEGATIVE_MULTIPLICITY", f"edge multiplicity {mult} is negative", lineno, col + 5)
                if mult == 0:
                    raise ParseError("NEGATIVE_MULTIPLICITY", "edge multiplicity must be positive", lineno, col + 5)
            if a == b:
                raise ParseError("SELF_EDGE", f"edge joins {a!r} to itself", lineno, args[1][1])
            edges.append((a, b, mult, lineno, args[0][1]))
        elif kw == "arc":
            if len(args) != 1:
                raise ParseError("SYNTAX_ERROR", "expected: arc <id>", lineno, kcol)
            if arc is not None:
                raise ParseError("SYNTAX_ERROR", "duplicate arc statement", lineno, kcol)
            arc = _ident(*args[0], lineno)
            arc_pos = (lineno, args[0][1])
        elif kw == "strict":
            strict.append(_parse_strict(args, lineno, kcol))
        elif kw == "mu":
            if len(args) != 2:
                raise ParseError("SYNTAX_ERROR", "expected: mu <id> <uint>", lineno, kcol)
            bid = _ident(*args[0], lineno)
            if bid in mu:
                raise ParseError("SYNTAX_ERROR", f"mu for {bid!r} given twice", lineno, kcol)
            mu[bid] = _int(*args[1], lineno, "mu", unsigned=True)
        elif kw == "imult":
            if len(args) != 3:
                raise ParseError("SYNTAX_ERROR", "expected: imult <id> <id> <uint>", lineno, kcol)
            a = _ident(*args[0], lineno)
            b = _ident(*args[1], lineno)
            if a == b:
                raise ParseError("SELF_EDGE", "imult needs two distinct branches", lineno, args[1][1])
            key = frozenset((a, b))
            if key in imult:
                raise ParseError("SYNTAX_ERROR", f"imult for {a!r},{b!r} given twice", lineno, kcol)
            imult[key] = _int(*args[2], lineno, "imult", unsigned=True)
        else:
            raise ParseError("SYNTAX_ERROR", f"unknown statement {kw!r}", lineno, kcol)

    if name is None:
        raise ParseError("SYNTAX_ERROR", "missing 'graph <name>' statement", 1, 1)
    if not components:
        raise ParseError("EMPTY_GRAPH", "graph declares no components", 1, 1)
    for a, b, _, lineno, col in edges:
        for ref in (a, b):
            if ref not in comp_line:
                raise ParseError("UNKNOWN_COMPONENT", f"edge references unknown component {ref!r}", lineno, col)
    if arc is not None and arc not in comp_line:
        raise ParseError("UNKNOWN_COMPONENT", f"arc references unknown component {arc!r}", *arc_pos)
    try:
        graph = DualGraph.build(name, components, [(a, b, m) for a, b, m, _, _ in edges], arc)
    except ParseError:
        raise
    except NashgateError as exc:
        raise ParseError(exc.code, exc.message) from None
    return GraphDocument(graph, strict, mu, imult)


def _parse_strict(args, lineno: int, kcol: int) -> StrictStatement:
    if not args:
        raise ParseError("SYNTAX_ERROR", "expected: strict <id> mult=<uint> attach=<id>[:<uint>],...", lineno, kcol)
    sid = _ident(*args[0], lineno)
    mult = None
    attach: list[tuple[str, int]] = []
    for tok, col in args[1:]:
        key, eq, val = tok.partition("=")
        if key == "mult" and eq:
            mult = _int(val, col + 5, lineno, "mult")
            if mult < 1:
                raise ParseError("NEGATIVE_MULTIPLICITY", "strict transform multiplicity must be >= 1", lineno, col)
        elif key == "attach" and eq:
            for part in val.split(","):
                target, _, count = part.partition(":")
                _ident(target, col, lineno)
                n = _int(count, col, lineno, "attach count") if count else 1
                if n < 1:
                    raise ParseError("NEGATIVE_MULTIPLICITY", "attachment intersection number must be >= 1", lineno, col)
                attach.append((target, n))
        else:
            raise ParseError("SYNTAX_ERROR", f"unexpected strict attribute {tok!r}", lineno, col)
    if mult is None:
        raise ParseError("SYNTAX_ERROR", f"strict {sid!r} is missing mult=", lineno, kcol)
    if not attach:
        raise ParseError("SYNTAX_ERROR", f"strict {sid!r} needs at least one attach=", lineno, kcol)
    return StrictStatement(sid, mult, attach, lineno)


def parse_graph(text: str) -> DualGraph:
    """Parse and validate a ``.sdg`` document into a :class:`DualGraph`."""
    return parse_document(text).graph


def serialize_graph(g: DualGraph) -> str:
    lines = [f"graph {g.name}"]
    for c in g.components:
        parts = [f"component {c.id} self={c.self_int} genus={c.genus}"]
        for key in ("mu", "eta", "nu_extra"):
            value = getattr(c, key)
            if value:
                parts.append(f"{key}={value}")
        lines.append(" ".join(parts))
    for i, j, m in g.edges:
        lines.append(f"edge {g.components[i].id} {g.components[j].id}" + (f" mult={m}" if m != 1 else ""))
    if g.arc is not None:
        lines.append(f"arc {g.arc}")
    return "\n".join(lines) + "\n"
