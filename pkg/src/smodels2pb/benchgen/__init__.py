"""Ground instances of four combinatorial families that are hard for resolution.

Each generator returns a :class:`~smodels2pb.program.Program` in the shape
an ASP grounder would produce from the encodings shipped in
``benchgen/encodings/*.lp``. Atom 1 plays the role of ``false``: integrity
constraints are rules with head 1, and 1 is listed in the ``B-`` compute
statement.
"""

from __future__ import annotations

import math
from importlib import resources
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from ..program import BasicRule, ChoiceRule, Literal, Program, WeightRule, neg, pos

FALSE = 1


class _Builder:
    def __init__(self):
        self.next = FALSE + 1
        self.names: Dict[int, str] = {}
        self.rules: List = []

    def atom(self, name: Optional[str] = None) -> int:
        a = self.next
        self.next += 1
        if name is not None:
            self.names[a] = name
        return a

    def forbid(self, *body: Literal) -> None:
        self.rules.append(BasicRule(FALSE, body))

    def at_least(self, k: int, atoms: Sequence[int], weighted: bool = False) -> int:
        """Fresh atom that holds iff at least k of ``atoms`` are true."""
        head = self.atom()
        self.rules.append(WeightRule(head, k, tuple((1, pos(a)) for a in atoms), cardinality=not weighted))
        return head

    def program(self) -> Program:
        return Program(tuple(self.rules), self.names, (), (FALSE,), 1)


def pigeonhole(n: int, m: int) -> Program:
    """n pigeons, m holes, at most one pigeon per hole."""
    if n < 1 or m < 1:
        raise ValueError("need at least one pigeon and one hole")
    b = _Builder()
    p = {(i, j): b.atom(f"p({i},{j})") for i in range(1, n + 1) for j in range(1, m + 1)}
    b.rules.append(ChoiceRule(tuple(p.values())))
    for i in range(1, n + 1):
        b.forbid(neg(b.at_least(1, [p[i, j] for j in range(1, m + 1)])))
    for j in range(1, m + 1):
        b.forbid(pos(b.at_least(2, [p[i, j] for i in range(1, n + 1)])))
    return b.program()


def torus_edges(rows: int, cols: int) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Edges of the rows x cols toroidal grid as a multigraph: every vertex has degree 4."""
    if rows < 2 or cols < 2:
        raise ValueError("toroidal grid needs at least 2 rows and 2 columns")
    edges = []
    for r in range(rows):
        for c in range(cols):
            edges.append(((r, c), (r, (c + 1) % cols)))
            edges.append(((r, c), ((r + 1) % rows, c)))
    return edges


def even_colouring(rows: int, cols: int, subdivide: bool = True) -> Program:
    """Black/white edge colouring with balanced colours at every vertex.

    With ``subdivide`` (the default) the first edge is split by an extra
    vertex, giving ``2*rows*cols + 1`` edges: always unsatisfiable.
    """
    edges: List[Tuple[object, object]] = list(torus_edges(rows, cols))
    if subdivide:
        u, v = edges[0]
        edges[0:1] = [(u, "mid"), ("mid", v)]
    b = _Builder()
    black = [b.atom(f"black({k})") for k in range(len(edges))]
    b.rules.append(ChoiceRule(tuple(black)))
    incident: Dict[object, List[int]] = {}
    for k, (u, v) in enumerate(edges):
        incident.setdefault(u, []).append(black[k])
        incident.setdefault(v, []).append(black[k])
    for vertex in sorted(incident, key=str):
        inc = incident[vertex]
        half = len(inc) // 2
        b.forbid(neg(b.at_least(half, inc, weighted=True)))
        b.forbid(pos(b.at_least(half + 1, inc, weighted=True)))
    return b.program()


def vertex_cover_budget(rows: int, cols: int) -> int:
    """Largest budget for which the rows x cols torus (rows even) has no vertex cover."""
    return rows * math.ceil(cols / 2) - 1


def vertex_cover(rows: int, cols: int, budget: Optional[int] = None) -> Program:
    if rows % 2:
        raise ValueError("vertex cover instances need an even number of rows")
    if budget is None:
        budget = vertex_cover_budget(rows, cols)
    b = _Builder()
    inside = {(r, c): b.atom(f"in({r},{c})") for r in range(rows) for c in range(cols)}
    b.rules.append(ChoiceRule(tuple(inside.values())))
    seen = set()
    for u, v in torus_edges(rows, cols):
        key = frozenset((u, v))
        if key not in seen:
            seen.add(key)
            b.forbid(neg(inside[u]), neg(inside[v]))
    b.forbid(pos(b.at_least(budget + 1, list(inside.values()))))
    return b.program()


def hex_strip(length: int) -> Tuple[List[str], List[Tuple[str, str]]]:
    """Vertices and edges of a row of ``length`` hexagons sharing edges (4L+2 vertices, 5L+1 edges)."""
    if length < 1:
        raise ValueError("strip needs at least one hexagon")
    top = [f"t{i}" for i in range(2 * length + 1)]
    bottom = [f"b{i}" for i in range(2 * length + 1)]
    edges = [(row[i], row[i + 1]) for row in (top, bottom) for i in range(2 * length)]
    edges += [(top[i], bottom[i]) for i in range(0, 2 * length + 1, 2)]
    return top + bottom, edges


def dominating_set(length: int, budget: Optional[int] = None) -> Program:
    vertices, edges = hex_strip(length)
    if budget is None:
        budget = len(vertices) // 4
    adj: Dict[str, List[str]] = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    b = _Builder()
    inside = {v: b.atom(f"in({v})") for v in vertices}
    b.rules.append(ChoiceRule(tuple(inside.values())))
    for v in vertices:
        b.forbid(neg(b.at_least(1, [inside[v]] + [inside[u] for u in adj[v]])))
    b.forbid(pos(b.at_least(budget + 1, list(inside.values()))))
    return b.program()


FAMILIES: Dict[str, Callable[..., Program]] = {
    "pigeonhole": pigeonhole,
    "even-colouring": even_colouring,
    "vertex-cover": vertex_cover,
    "dominating-set": dominating_set,
}


def scaled(family: str, params: Dict[str, int], steps: int, stride: int, scale: str) -> Iterator[Tuple[Dict[str, int], Program]]:
    """Instances growing linearly: parameter ``scale`` increases by ``stride`` per step."""
    gen = FAMILIES[family]
    for k in range(steps):
        p = dict(params)
        p[scale] = params[scale] + k * stride
        yield p, gen(**p)


def encoding(family: str) -> str:
    """Text of the non-ground ASP encoding the generator's output corresponds to."""
    name = family.replace("-", "_") + ".lp"
    return resources.files(__package__).joinpath("encodings", name).read_text()
