"""Built-in reference datasets: ADE dual graphs, negative controls, embedded curve resolutions."""
from __future__ import annotations

from functools import lru_cache

from nashgate.errors import NashgateError
from nashgate.graph_core import DualGraph, parse_graph
from nashgate.milnor import EmbeddedResolutionData, parse_embedded

CATALOG_VERSION = "1"


def _chain_edges(n: int) -> list[tuple[int, int]]:
    return [(k, k + 1) for k in range(1, n)]


def _ade_text(name: str, n: int, edges: list[tuple[int, int]]) -> str:
    lines = [f"graph {name}"]
    lines += [f"component E{k} self=-2 genus=0" for k in range(1, n + 1)]
    lines += [f"edge E{i} E{j}" for i, j in edges]
    return "\n".join(lines) + "\n"


def _ade_sources() -> dict[str, str]:
    out = {}
    for n in range(1, 9):
        out[f"A{n}"] = _ade_text(f"A{n}", n, _chain_edges(n))
    for n in range(4, 9):
        # chain E1..E{n-1}, extra leaf En on E{n-2}
        out[f"D{n}"] = _ade_text(f"D{n}", n, _chain_edges(n - 1) + [(n - 2, n)])
    for n in (6, 7, 8):
        # chain E1..E{n-1}, extra leaf En on E3: arms of length 2, 1, n-4
        out[f"E{n}"] = _ade_text(f"E{n}", n, _chain_edges(n - 1) + [(3, n)])
    return out


_GRAPH_SOURCES = {
    **_ade_sources(),
    # A1 blown up once: a smooth rational (-1)-curve meeting a (-3)-curve.
    "nonminimal-demo": """\
graph nonminimal-demo
component E1 self=-1 genus=0
component E2 self=-3 genus=0
edge E1 E2
""",
    "indefinite-demo": """\
graph indefinite-demo
component E1 self=-2 genus=0
component E2 self=0 genus=0
edge E1 E2
""",
    # a minimal (-1)-curve: elliptic, so the audit does not fire
    "elliptic-minus-one": """\
graph elliptic-minus-one
component E1 self=-1 genus=1
""",
}

# Minimal embedded resolutions of plane curve germs, reconstructed by point blowups.
_EMBEDDED_SOURCES = {
    # x^2 - y^3: three blowups; total transform (2, 3, 6)
    "cusp-embedded": """\
graph cusp-embedded
component E1 self=-3 genus=0
component E2 self=-2 genus=0
component E3 self=-1 genus=0
edge E1 E3
edge E2 E3
strict Z1 mult=1 attach=E3
mu Z1 2
""",
    # xy: one blowup separates the two lines
    "node-embedded": """\
graph node-embedded
component E1 self=-1 genus=0
strict Z1 mult=1 attach=E1
strict Z2 mult=1 attach=E1
mu Z1 0
mu Z2 0
imult Z1 Z2 1
""",
    # smooth germ after one blowup (the blowup is not needed, but keeps a curve to sum over)
    "smooth-branch-embedded": """\
graph smooth-branch-embedded
component E1 self=-1 genus=0
strict Z1 mult=1 attach=E1
mu Z1 0
""",
    # y^2 - x^4 = (y - x^2)(y + x^2): two blowups; total transform (2, 4)
    "tacnode-embedded": """\
graph tacnode-embedded
component E1 self=-2 genus=0
component E2 self=-1 genus=0
edge E1 E2
strict Z1 mult=1 attach=E2
strict Z2 mult=1 attach=E2
mu Z1 0
mu Z2 0
imult Z1 Z2 2
""",
    # x^3 - y^4 (E6 curve, mu = 6): four blowups; total transform (3, 4, 8, 12)
    "e6-curve-embedded": """\
graph e6-curve-embedded
component E1 self=-4 genus=0
component E2 self=-2 genus=0
component E3 self=-2 genus=0
component E4 self=-1 genus=0
edge E1 E4
edge E2 E3
edge E3 E4
strict Z1 mult=1 attach=E4
mu Z1 6
""",
    # x^3 - y^3: three lines through the origin, one blowup; total transform (3)
    "triple-point-embedded": """\
graph triple-point-embedded
component E1 self=-1 genus=0
strict Z1 mult=1 attach=E1
strict Z2 mult=1 attach=E1
strict Z3 mult=1 attach=E1
mu Z1 0
mu Z2 0
mu Z3 0
imult Z1 Z2 1
imult Z1 Z3 1
imult Z2 Z3 1
""",
}

ADE_NAMES = tuple(f"A{n}" for n in range(1, 9)) + tuple(f"D{n}" for n in range(4, 9)) + ("E6", "E7", "E8")
EMBEDDED_NAMES = tuple(_EMBEDDED_SOURCES)


def catalog_names() -> list[str]:
    return list(_GRAPH_SOURCES) + list(_EMBEDDED_SOURCES)


def catalog_source(name: str) -> str:
    if name in _GRAPH_SOURCES:
        return _GRAPH_SOURCES[name]
    if name in _EMBEDDED_SOURCES:
        return _EMBEDDED_SOURCES[name]
    raise NashgateError("UNKNOWN_CATALOG_NAME", f"no catalog entry named {name!r}")


@lru_cache(maxsize=None)
def catalog_lookup(name: str) -> DualGraph | EmbeddedResolutionData:
    text = catalog_source(name)
    if name in _EMBEDDED_SOURCES:
        return parse_embedded(text)
    return parse_graph(text)
