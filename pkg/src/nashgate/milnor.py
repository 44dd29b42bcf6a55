"""Euler characteristic of the Milnor fibre of a plane curve germ, two ways.

One route sums over the branches of ``f = prod g_i^{c_i}`` using their Milnor
numbers and pairwise intersection multiplicities; the other solves for the
total transform on an embedded resolution and sums ``a_k * chi(E_k minus its
special points)``. Agreement of the two is a consistency check on user data.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from nashgate import linalg
from nashgate.errors import NashgateError, ParseError
from nashgate.graph_core import (
    DualGraph,
    GraphDocument,
    intersection_matrix,
    is_negative_definite,
    parse_document,
)


@dataclass(frozen=True)
class StrictTransform:
    id: str
    mult: int
    attachments: tuple[tuple[int, int], ...]  # (exceptional index, intersection number)


@dataclass(frozen=True)
class EmbeddedResolutionData:
    exceptional: DualGraph
    strict_transforms: tuple[StrictTransform, ...]
    branch_mu: tuple[int | None, ...]
    pairwise_I: tuple[tuple[int | None, ...], ...]  # None on the diagonal and where unknown

    def __post_init__(self):
        n = len(self.strict_transforms)
        if n == 0:
            raise NashgateError("INVALID_EMBEDDED_DATA", "at least one strict transform is required")
        if len(self.branch_mu) != n or len(self.pairwise_I) != n or any(len(r) != n for r in self.pairwise_I):
            raise NashgateError("DIMENSION_MISMATCH", "branch invariants do not match the number of branches")
        for c in self.exceptional.components:
            if c.genus != 0:
                raise NashgateError("INVALID_EMBEDDED_DATA", f"exceptional curve {c.id} must be rational")
        for s in self.strict_transforms:
            if s.mult < 1 or not s.attachments:
                raise NashgateError("INVALID_EMBEDDED_DATA", f"branch {s.id}: needs mult >= 1 and an attachment")
        for i in range(n):
            if self.pairwise_I[i][i] is not None:
                raise NashgateError("INVALID_EMBEDDED_DATA", "pairwise intersection table must have empty diagonal")
            for j in range(n):
                if self.pairwise_I[i][j] != self.pairwise_I[j][i]:
                    raise NashgateError("INVALID_EMBEDDED_DATA", "pairwise intersection table must be symmetric")
                if i != j and self.pairwise_I[i][j] is not None and self.pairwise_I[i][j] < 1:
                    raise NashgateError("INVALID_EMBEDDED_DATA", "branches of a germ meet with multiplicity >= 1")

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(s.mult for s in self.strict_transforms)

    def with_mu(self, mu) -> "EmbeddedResolutionData":
        return EmbeddedResolutionData(self.exceptional, self.strict_transforms, tuple(mu), self.pairwise_I)

    def with_multiplicities(self, mults) -> "EmbeddedResolutionData":
        strict = tuple(StrictTransform(s.id, m, s.attachments) for s, m in zip(self.strict_transforms, mults))
        return EmbeddedResolutionData(self.exceptional, strict, self.branch_mu, self.pairwise_I)


@dataclass(frozen=True)
class TotalTransform:
    a: tuple[int, ...]


@dataclass(frozen=True)
class CrossCheck:
    consistent: bool
    chi_resolution: int
    chi_branches: int

    def __bool__(self) -> bool:
        return self.consistent


def from_document(doc: GraphDocument) -> EmbeddedResolutionData:
    g = doc.graph
    branch_ids = [s.id for s in doc.strict]
    if not branch_ids:
        raise ParseError("INVALID_EMBEDDED_DATA", "document declares no strict transforms")
    for s in doc.strict:
        if branch_ids.count(s.id) > 1 or s.id in g.ids:
            raise ParseError("DUPLICATE_COMPONENT", f"branch id {s.id!r} is not unique", s.line)
    strict = []
    for s in doc.strict:
        att: dict[int, int] = {}
        for target, n in s.attach:
            if target not in g.ids:
                raise ParseError("UNKNOWN_COMPONENT", f"strict {s.id!r} attaches to unknown {target!r}", s.line)
            k = g.index(target)
            att[k] = att.get(k, 0) + n
        strict.append(StrictTransform(s.id, s.mult, tuple(sorted(att.items()))))
    for bid in doc.mu:
        if bid not in branch_ids:
            raise ParseError("UNKNOWN_COMPONENT", f"mu references unknown branch {bid!r}")
    n = len(branch_ids)
    table = [[None] * n for _ in range(n)]
    for pair, value in doc.imult.items():
        a, b = sorted(pair)
        if a not in branch_ids or b not in branch_ids:
            raise ParseError("UNKNOWN_COMPONENT", f"imult references unknown branch in {sorted(pair)}")
        i, j = branch_ids.index(a), branch_ids.index(b)
        table[i][j] = table[j][i] = value
    try:
        return EmbeddedResolutionData(
            g,
            tuple(strict),
            tuple(doc.mu.get(b) for b in branch_ids),
            tuple(tuple(r) for r in table),
        )
    except ParseError:
        raise
    except NashgateError as exc:
        raise ParseError(exc.code, exc.message) from None


def parse_embedded(text: str) -> EmbeddedResolutionData:
    return from_document(parse_document(text))


def serialize_embedded(d: EmbeddedResolutionData) -> str:
    from nashgate.graph_core import serialize_graph

    lines = [serialize_graph(d.exceptional).rstrip("\n")]
    ids = d.exceptional.ids
    for s in d.strict_transforms:
        att = ",".join(ids[k] + (f":{n}" if n != 1 else "") for k, n in s.attachments)
        lines.append(f"strict {s.id} mult={s.mult} attach={att}")
    for s, mu in zip(d.strict_transforms, d.branch_mu):
        if mu is not None:
            lines.append(f"mu {s.id} {mu}")
    n = len(d.strict_transforms)
    for i in range(n):
        for j in range(i + 1, n):
            if d.pairwise_I[i][j] is not None:
                lines.append(f"imult {d.strict_transforms[i].id} {d.strict_transforms[j].id} {d.pairwise_I[i][j]}")
    return "\n".join(lines) + "\n"


def _strict_contact(d: EmbeddedResolutionData) -> list[int]:
    """Per exceptional curve: sum over branches of c_b * (Z_b . E_k)."""
    out = [0] * d.exceptional.size
    for s in d.strict_transforms:
        for k, n in s.attachments:
            out[k] += s.mult * n
    return out


def total_transform(d: EmbeddedResolutionData) -> TotalTransform:
    """Multiplicities of the exceptional curves in the total transform (V . E_k = 0 for all k)."""
    m = intersection_matrix(d.exceptional)
    if not is_negative_definite(m):
        raise NashgateError("NOT_NEGATIVE_DEFINITE", "exceptional intersection matrix is not negative definite")
    rhs = [-x for x in _strict_contact(d)]
    a = linalg.solve(m.entries, rhs)
    bad = [(d.exceptional.ids[k], x) for k, x in enumerate(a) if x.denominator != 1 or x < 1]
    if bad:
        shown = ", ".join(f"{cid}={x}" for cid, x in bad)
        raise NashgateError("NON_INTEGRAL_TOTAL_TRANSFORM", f"not a genuine embedded resolution ({shown})")
    return TotalTransform(tuple(int(x) for x in a))


def exceptional_nu(d: EmbeddedResolutionData) -> list[int]:
    """Special points on each exceptional curve: neighbours plus strict attachments, with multiplicity."""
    g = d.exceptional
    nu = [sum(g.k(i, j) for j in g.neighbors(i)) for i in range(g.size)]
    for s in d.strict_transforms:
        for k, n in s.attachments:
            nu[k] += n
    return nu


def chi_from_resolution(d: EmbeddedResolutionData) -> int:
    a = total_transform(d).a
    return sum(ak * (2 - nk) for ak, nk in zip(a, exceptional_nu(d)))


def chi_from_branches(d: EmbeddedResolutionData) -> int:
    n = len(d.strict_transforms)
    total = 0
    for i, s in enumerate(d.strict_transforms):
        if d.branch_mu[i] is None:
            raise NashgateError("MISSING_INVARIANT", f"no Milnor number given for branch {s.id}")
        contact = 0
        for j in range(n):
            if j == i:
                continue
            if d.pairwise_I[i][j] is None:
                other = d.strict_transforms[j].id
                raise NashgateError("MISSING_INVARIANT", f"no intersection multiplicity for {s.id},{other}")
            contact += d.pairwise_I[i][j]
        total += s.mult * (1 - d.branch_mu[i] - contact)
    return total


def local_deformation_bound(d: EmbeddedResolutionData, contact: int) -> int:
    """Upper bound for chi of the normalized deformation; ``contact`` counts points meeting the reduced germ."""
    if contact < 0:
        raise NashgateError("INVALID_ARGUMENT", "contact must be non-negative")
    return chi_from_branches(d) + contact


def cross_check(d: EmbeddedResolutionData) -> CrossCheck:
    res = chi_from_resolution(d)
    br = chi_from_branches(d)
    return CrossCheck(res == br, res, br)


def total_transform_residual(d: EmbeddedResolutionData, a) -> list[Fraction]:
    """``M a + strict contact``; all zeros for the genuine total transform."""
    m = intersection_matrix(d.exceptional)
    return [Fraction(x) + c for x, c in zip(linalg.matvec(m.entries, a), _strict_contact(d))]
