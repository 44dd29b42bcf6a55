"""Euler characteristic bounds for the normalized generic curve of a wedge.

Given the exceptional coefficients ``a`` of the limit divisor, these evaluate
the refined bound (disc count near the special arc, per-component ``chi`` and
``theta`` contributions, returns) and its closed form ``sum a_i t_i`` with

    t_i = 2 - 2 g_i - mu_i - eta_i + k_ii.

A normalized generic curve is a disc (chi = 1), so any bound below 1 rules the
wedge out.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from nashgate.errors import NashgateError
from nashgate.graph_core import DualGraph, intersection_matrix, is_negative_definite, minimality_audit

IMPOSSIBLE_WEDGE = "IMPOSSIBLE_WEDGE"
INCONCLUSIVE = "INCONCLUSIVE"

DISC_EULER_CHARACTERISTIC = 1

CERTIFICATE_STATEMENT = (
    "for every adjacency candidate with non-negative integral a and a_target >= 1 the final "
    "bound gives chi <= 0 < 1, so no adjacency-realizing wedge exists"
)


@dataclass(frozen=True)
class SupportTopology:
    nu: tuple[int, ...]
    chi_dot: tuple[int, ...]
    delta: tuple[int, ...]


@dataclass(frozen=True)
class BoundReport:
    a: tuple[int, ...]
    target: int
    terms: tuple[int, ...]
    refined_bound: int
    final_bound: int
    returns_term: int
    verdict: str


@dataclass(frozen=True)
class Certificate:
    graph: str
    negative_definite: bool
    minimal: bool
    terms: tuple[int, ...]
    issued: bool
    reasons: tuple[str, ...] = ()
    non_minimal_components: tuple[str, ...] = ()
    positive_term_components: tuple[str, ...] = ()

    @property
    def statement(self) -> str | None:
        return CERTIFICATE_STATEMENT if self.issued else None


def _check(g: DualGraph, target: int, a: Sequence[int]) -> None:
    if len(a) != g.size:
        raise NashgateError("DIMENSION_MISMATCH", f"a has {len(a)} entries, graph has {g.size} components")
    if any(x < 0 for x in a):
        raise NashgateError("INVALID_ARGUMENT", "coefficients a_i must be non-negative")
    if not 0 <= target < g.size:
        raise NashgateError("UNKNOWN_COMPONENT", f"target index {target} out of range")
    if a[target] < 1:
        raise NashgateError("INVALID_ARGUMENT", "the target component must be in the support (a_target >= 1)")


def _delta(a: Sequence[int]) -> list[int]:
    return [1 if x != 0 else 0 for x in a]


def _supported_neighbour_contact(g: DualGraph, a: Sequence[int], i: int) -> int:
    d = _delta(a)
    return sum(d[j] * g.k(i, j) for j in g.neighbors(i))


def support_topology(g: DualGraph, target: int, a: Sequence[int]) -> SupportTopology:
    """Branch counts and punctured Euler characteristics of the supported components.

    Every unit of edge multiplicity between supported components is one transverse
    point; the target additionally meets the strict transform of the special arc.
    Components outside the support carry no branches.
    """
    _check(g, target, a)
    d = _delta(a)
    nu = []
    for i, c in enumerate(g.components):
        if not d[i]:
            nu.append(0)
            continue
        nu.append(_supported_neighbour_contact(g, a, i) + (1 if i == target else 0) + c.nu_extra)
    chi_dot = tuple(2 - 2 * c.genus - n for c, n in zip(g.components, nu))
    return SupportTopology(tuple(nu), chi_dot, tuple(d))


def theta_term(g: DualGraph, target: int, a: Sequence[int], i: int) -> int:
    # theta_i pairs with the component's own eta_i
    topo = support_topology(g, target, a)
    c = g.components[i]
    return topo.nu[i] - c.mu - c.eta - _supported_neighbour_contact(g, a, i) - (1 if i == target else 0)


def returns_bound(g: DualGraph, target: int, a: Sequence[int]) -> int:
    """Upper bound for the returns through supported components, eliminated via the linear system."""
    _check(g, target, a)
    d = _delta(a)
    n = g.size
    return sum(a[i] * sum(d[j] * g.k(i, j) for j in range(n)) for i in range(n)) + 1


def returns_term_from_b(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise NashgateError("DIMENSION_MISMATCH", "a and b must have the same length")
    return sum(dj * bj for dj, bj in zip(_delta(a), b))


def refined_bound(g: DualGraph, target: int, a: Sequence[int], returns_term: int | None = None) -> int:
    """``a_t - 1 + sum a_i (chi_dot_i + theta_i) + returns``.

    Does not check that ``a`` and the returns come from one solution of the
    limit-divisor system; pass ``returns_term=None`` to use :func:`returns_bound`.
    """
    topo = support_topology(g, target, a)
    if returns_term is None:
        returns_term = returns_bound(g, target, a)
    body = sum(a[i] * (topo.chi_dot[i] + theta_term(g, target, a, i)) for i in range(g.size))
    return a[target] - 1 + body + returns_term


def final_bound_terms(g: DualGraph) -> tuple[int, ...]:
    return tuple(2 - 2 * c.genus - c.mu - c.eta + c.self_int for c in g.components)


def final_bound(g: DualGraph, a: Sequence[int]) -> int:
    if len(a) != g.size:
        raise NashgateError("DIMENSION_MISMATCH", f"a has {len(a)} entries, graph has {g.size} components")
    if any(x < 0 for x in a):
        raise NashgateError("INVALID_ARGUMENT", "coefficients a_i must be non-negative")
    return sum(x * t for x, t in zip(a, final_bound_terms(g)))


def verdict_for(bound: int) -> str:
    return IMPOSSIBLE_WEDGE if bound < DISC_EULER_CHARACTERISTIC else INCONCLUSIVE


def bound_report(g: DualGraph, target: int, a: Sequence[int], returns_term: int | None = None) -> BoundReport:
    a = tuple(a)
    rt = returns_bound(g, target, a) if returns_term is None else returns_term
    fin = final_bound(g, a)
    return BoundReport(a, target, final_bound_terms(g), refined_bound(g, target, a, rt), fin, rt, verdict_for(fin))


def certificate(g: DualGraph) -> Certificate:
    negdef = is_negative_definite(intersection_matrix(g)).negative_definite
    non_minimal = tuple(c.id for c in minimality_audit(g))
    terms = final_bound_terms(g)
    positive = tuple(c.id for c, t in zip(g.components, terms) if t > 0)
    reasons = []
    if not negdef:
        reasons.append("NOT_NEGATIVE_DEFINITE")
    if non_minimal:
        reasons.append("NON_MINIMAL")
    if positive:
        reasons.append("POSITIVE_TERM")
    return Certificate(
        g.name,
        negdef,
        not non_minimal,
        terms,
        not reasons,
        tuple(reasons),
        non_minimal,
        positive,
    )


def nc_global_bound(
    c: Sequence[int],
    a: Sequence[int],
    chi_dot_z: Sequence[int],
    chi_dot_e: Sequence[int],
    contact: int,
) -> int:
    """Normal-crossings bound: ``sum c_i chi(Z_i°) + sum a_i chi(E_i°) + contact``."""
    if len(c) != len(chi_dot_z) or len(a) != len(chi_dot_e):
        raise NashgateError("DIMENSION_MISMATCH", "multiplicity and Euler characteristic vectors differ in length")
    return sum(x * y for x, y in zip(c, chi_dot_z)) + sum(x * y for x, y in zip(a, chi_dot_e)) + contact
