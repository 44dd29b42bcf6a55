"""Limit-divisor system for wedge adjacencies with prescribed returns.

For an adjacency onto the target component E_t with return vector ``b``,
the coefficients ``a`` of the exceptional part of the limit divisor solve

    M a = b - e_t

where ``M`` is the intersection matrix. A wedge can only exist when every
``a_i`` is a non-negative integer; candidates failing that are ruled out.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from typing import Iterator, Sequence

from nashgate import linalg
from nashgate.errors import NashgateError
from nashgate.graph_core import DualGraph, require_negative_definite

FEASIBLE = "FEASIBLE"
RULED_OUT_NEGATIVE = "RULED_OUT_NEGATIVE"
RULED_OUT_NONINTEGRAL = "RULED_OUT_NONINTEGRAL"
RULED_OUT_BOTH = "RULED_OUT_BOTH"
CLASSIFICATIONS = (FEASIBLE, RULED_OUT_NEGATIVE, RULED_OUT_NONINTEGRAL, RULED_OUT_BOTH)

IMPOSSIBLE = "IMPOSSIBLE"
SURVIVES = "SURVIVES_INTERSECTION_TEST"

DEFAULT_MAX_RETURNS = 12


@dataclass(frozen=True)
class AdjacencyCandidate:
    target: int
    b: tuple[int, ...]

    def __post_init__(self):
        if any(x < 0 for x in self.b):
            raise NashgateError("INVALID_ARGUMENT", "returns must be non-negative")
        if not 0 <= self.target < len(self.b):
            raise NashgateError("DIMENSION_MISMATCH", f"target {self.target} outside return vector of length {len(self.b)}")
        if not any(x >= 1 for j, x in enumerate(self.b) if j != self.target):
            raise NashgateError("INVALID_ARGUMENT", "an adjacency needs a return through some non-target component")


@dataclass(frozen=True)
class LimitDivisorSolution:
    a: tuple[Fraction, ...]
    classification: str
    negative: tuple[int, ...] = ()
    nonintegral: tuple[int, ...] = ()

    @property
    def witnesses(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.negative) | set(self.nonintegral)))

    @property
    def feasible(self) -> bool:
        return self.classification == FEASIBLE


@dataclass(frozen=True)
class Verdict:
    verdict: str
    reasons: tuple[str, ...] = ()


@dataclass(frozen=True)
class ScanReport:
    graph: str
    target: int
    max_returns: int
    total: int
    feasible: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]  # (b, a) pairs
    counts: dict[str, int] = field(default_factory=dict)
    excluded_target_return: int = 0


def rhs_vector(target: int, b: Sequence[int]) -> list[int]:
    rhs = list(b)
    rhs[target] -= 1
    return rhs


def classify(a: Sequence[Fraction]) -> LimitDivisorSolution:
    neg = tuple(i for i, x in enumerate(a) if x < 0)
    nonint = tuple(i for i, x in enumerate(a) if x.denominator != 1)
    if neg and nonint:
        cls = RULED_OUT_BOTH
    elif neg:
        cls = RULED_OUT_NEGATIVE
    elif nonint:
        cls = RULED_OUT_NONINTEGRAL
    else:
        cls = FEASIBLE
    return LimitDivisorSolution(tuple(a), cls, neg, nonint)


def solve_limit_divisor(g: DualGraph, target: int | str, b: Sequence[int]) -> LimitDivisorSolution:
    m = require_negative_definite(g)
    t = g.index(target)
    if len(b) != g.size:
        raise NashgateError("DIMENSION_MISMATCH", f"return vector has {len(b)} entries, graph has {g.size} components")
    if any(x < 0 for x in b):
        raise NashgateError("INVALID_ARGUMENT", "returns must be non-negative")
    rhs = rhs_vector(t, b)
    a = linalg.solve(m.entries, rhs)
    assert linalg.matvec(m.entries, a) == rhs
    return classify(a)


def classify_candidate(sol: LimitDivisorSolution, cand: AdjacencyCandidate) -> Verdict:
    reasons = []
    if sol.negative:
        reasons.append("NEGATIVE_ENTRY")
    if sol.nonintegral:
        reasons.append("NON_INTEGRAL_ENTRY")
    # a source return exists by construction of the candidate, so the target takes no return
    if cand.b[cand.target] != 0:
        reasons.append("TARGET_RETURN_NONZERO")
    if sol.a[cand.target] <= 0:
        reasons.append("TARGET_COEFFICIENT_NOT_POSITIVE")
    return Verdict(IMPOSSIBLE, tuple(reasons)) if reasons else Verdict(SURVIVES)


def iter_return_vectors(size: int, target: int, max_returns: int) -> Iterator[tuple[int, ...]]:
    """b-vectors with b_target = 0 and 1 <= sum(b) <= max_returns; smallest sum first, lexicographic within."""
    free = size - 1
    if free == 0:
        return

    def compositions(total, slots):
        if slots == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, slots - 1):
                yield (first,) + rest

    for s in range(1, max_returns + 1):
        for comp in compositions(s, free):
            yield comp[:target] + (0,) + comp[target:]


def _count_with_target_return(size: int, max_returns: int) -> int:
    """Vectors with 1 <= sum <= B, some non-target return and b_target >= 1."""
    r = size - 1
    if r == 0:
        return 0
    with_source = sum(math.comb(s + r, r) - 1 for s in range(1, max_returns + 1))
    target_zero = sum(math.comb(s + r - 1, r - 1) for s in range(1, max_returns + 1))
    return with_source - target_zero


def _evaluate_chunk(args):
    adj, det, target, bs = args
    # a = adj(M) (b - e_t) / det(M); integer numerators keep the scan exact and fast
    n = len(adj)
    cols = [tuple(adj[i][j] for i in range(n)) for j in range(n)]
    base = [-x for x in cols[target]]
    out = []
    for b in bs:
        num = base[:]
        for j, bj in enumerate(b):
            if bj:
                num = [x + bj * c for x, c in zip(num, cols[j])]
        neg = any(x * det < 0 for x in num)
        nonint = any(x % det for x in num)
        if neg and nonint:
            cls = RULED_OUT_BOTH
        elif neg:
            cls = RULED_OUT_NEGATIVE
        elif nonint:
            cls = RULED_OUT_NONINTEGRAL
        else:
            cls = FEASIBLE
        out.append((b, cls, tuple(x // det for x in num) if cls == FEASIBLE else None))
    return out


def _chunks(it, size):
    it = iter(it)
    while chunk := list(islice(it, size)):
        yield chunk


def scan_adjacencies(
    g: DualGraph, target: int | str, max_returns: int = DEFAULT_MAX_RETURNS, jobs: int = 1
) -> ScanReport:
    if max_returns < 1:
        raise NashgateError("INVALID_ARGUMENT", "max_returns must be at least 1")
    m = require_negative_definite(g)
    t = g.index(target)
    det = linalg.determinant(m.entries)
    adj = linalg.adjugate(m.entries)
    work = ((adj, det, t, chunk) for chunk in _chunks(iter_return_vectors(g.size, t, max_returns), 4096))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for part in pool.map(_evaluate_chunk, work) for r in part]
    else:
        results = [r for part in map(_evaluate_chunk, work) for r in part]

    results.sort(key=lambda r: (sum(r[0]), r[0]))
    counts = {c: 0 for c in CLASSIFICATIONS}
    feasible = []
    for b, cls, a in results:
        counts[cls] += 1
        if cls == FEASIBLE:
            feasible.append((b, a))
    return ScanReport(
        g.name,
        t,
        max_returns,
        len(results),
        tuple(feasible),
        counts,
        _count_with_target_return(g.size, max_returns),
    )
