"""Linear extension of vertex functions, zero location, sign graphs, and
nodal domains on weighted trees.

A vertex function u extends to the metric tree by the affine map
u~(t) = u(x) + t*(u(y)-u(x))/l on each edge (x,y) of length l = 1/c.
Zeros of the extension, maximal strict-sign subtrees, maximal zero
components, and the metric nodal domains they induce all live here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .tree import WeightedTree

EPS_Z_DEFAULT = 1e-9
FRAGILE_BAND = 1e3  # vertices within [eps_z, 1e3*eps_z] of zero are flagged

INTERIOR = "interior"
AT_CHILD_VERTEX = "at_child_vertex"


@dataclass(frozen=True)
class LinearExtension:
    """Piecewise-affine extension of a vertex function along metric edges."""

    tree: WeightedTree
    u: np.ndarray

    def slope(self, x: int, y: int) -> float:
        """Derivative along (x,y) oriented x -> y: (u(y)-u(x))/l(x,y)."""
        return float((self.u[y] - self.u[x]) / self.tree.length(x, y))

    def value(self, x: int, y: int, t: float) -> float:
        """Extension value at parameter t in [0, l(x,y)] measured from x."""
        return float(self.u[x] + self.slope(x, y) * t)


@dataclass(frozen=True)
class EdgeZero:
    """Zero of the extension on edge (x,y) at parameter t from x.

    kind is "interior" for t strictly inside the edge and "at_child_vertex"
    when the zero sits exactly on the far endpoint (t = l); vertex zeros are
    attributed to the vertex side, so the near endpoint never appears here.
    """

    x: int
    y: int
    t: float
    kind: str

    @property
    def edge(self) -> tuple:
        return (self.x, self.y)

    def to_json_dict(self) -> dict:
        return {"edge": [self.x, self.y], "t": self.t, "kind": self.kind}


@dataclass(frozen=True)
class SignGraph:
    """Maximal connected set of vertices on which u holds one strict sign."""

    vertices: tuple
    sign: int

    def to_json_dict(self) -> dict:
        return {"vertices": list(self.vertices), "sign": self.sign}


@dataclass(frozen=True)
class NodalDomain:
    """Metric region of constant extension sign around one sign graph.

    boundary holds the zeros of the extension on edges leaving the sign
    graph, oriented outward (x inside, y outside); partial_edges lists the
    same stubs as (x, y, t): the region covers [0, t) from x on that edge.
    """

    sign_graph: SignGraph
    boundary: tuple
    partial_edges: tuple

    def to_json_dict(self) -> dict:
        return {
            "sign_graph": self.sign_graph.to_json_dict(),
            "boundary": [z.to_json_dict() for z in self.boundary],
            "partial_edges": [[x, y, t] for (x, y, t) in self.partial_edges],
        }


@dataclass(frozen=True)
class NodalDecomposition:
    """Everything the sign structure of one vertex function induces.

    zero_count counts each interior edge zero once and each zero graph once
    (a connected zero set is a single zero of the extension, however many
    vertices it spans; at_child_vertex entries are its edge-side shadows and
    are not double counted).
    """

    sign_graphs: tuple
    zero_graphs: tuple
    edge_zeros: tuple
    domains: tuple
    zero_count: int
    diagnostics: tuple
    index: int | None = None  # 1-based eigenvector index when known

    def to_json_dict(self) -> dict:
        return {
            "index": self.index,
            "sign_graphs": [g.to_json_dict() for g in self.sign_graphs],
            "zero_graphs": [list(z) for z in self.zero_graphs],
            "edge_zeros": [z.to_json_dict() for z in self.edge_zeros],
            "domains": [d.to_json_dict() for d in self.domains],
            "zero_count": self.zero_count,
            "diagnostics": [dict(d) for d in self.diagnostics],
        }


def extend(tree: WeightedTree, u) -> LinearExtension:
    u = np.asarray(u, dtype=float)
    if u.shape != (tree.n,):
        raise DimensionMismatch(
            f"vertex function has shape {u.shape}, tree has {tree.n} vertices"
        )
    return LinearExtension(tree=tree, u=u)


def effective_signs(u, eps_z: float = EPS_Z_DEFAULT):
    """Per-vertex sign in {-1, 0, +1} with |u| <= eps_z*max|u| snapped to 0.

    Returns (signs, snapped) where snapped has exact zeros at snapped
    vertices and raw values elsewhere.
    """
    u = np.asarray(u, dtype=float)
    umax = float(np.max(np.abs(u))) if u.size else 0.0
    if umax == 0.0:
        return np.zeros(u.shape, dtype=int), np.zeros_like(u)
    zero = np.abs(u) <= eps_z * umax
    signs = np.where(zero, 0, np.sign(u)).astype(int)
    return signs, np.where(zero, 0.0, u)


def zero_parameter(ux: float, uy: float, length: float) -> float:
    """Parameter of the extension zero on an edge: t = l*u(x)/(u(x)-u(y))."""
    return length * ux / (ux - uy)


def locate_zeros(ext: LinearExtension, eps_z: float = EPS_Z_DEFAULT) -> list:
    """All zeros of the extension, one EdgeZero at most per stored edge.

    Opposite strict signs give an interior zero; a strict parent over a zero
    child gives an at_child_vertex zero at t = l; a zero at the parent is the
    parent vertex's business, not this edge's.
    """
    tree = ext.tree
    signs, ueff = effective_signs(ext.u, eps_z)
    zeros = []
    for x, y, c in tree.edges:
        sx, sy = signs[x], signs[y]
        if sx == 0:
            continue
        length = 1.0 / c
        if sy == 0:
            zeros.append(EdgeZero(x, y, length, AT_CHILD_VERTEX))
        elif sx != sy:
            t = zero_parameter(ueff[x], ueff[y], length)
            zeros.append(EdgeZero(x, y, float(t), INTERIOR))
    return zeros


def sign_graphs(tree: WeightedTree, u, eps_z: float = EPS_Z_DEFAULT):
    """Strong sign graphs and zero graphs of u.

    Both lists are ordered by smallest member vertex; components are found
    by breadth-first search over same-classification neighbours.
    """
    u = np.asarray(u, dtype=float)
    if u.shape != (tree.n,):
        raise DimensionMismatch(
            f"vertex function has shape {u.shape}, tree has {tree.n} vertices"
        )
    signs, _ = effective_signs(u, eps_z)
    seen = [False] * tree.n
    graphs = []
    zero_graphs_ = []
    for v in range(tree.n):
        if seen[v]:
            continue
        comp = [v]
        seen[v] = True
        queue = [v]
        while queue:
            x = queue.pop(0)
            for y in tree.neighbors(x):
                if not seen[y] and signs[y] == signs[v]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comp = tuple(sorted(comp))
        if signs[v] == 0:
            zero_graphs_.append(comp)
        else:
            graphs.append(SignGraph(vertices=comp, sign=int(signs[v])))
    return graphs, zero_graphs_


def nodal_domains(
    tree: WeightedTree, u, eps_z: float = EPS_Z_DEFAULT, index: int | None = None
) -> NodalDecomposition:
    """Full nodal decomposition of u on the metric tree.

    One domain per sign graph; its boundary collects the outward zeros on
    edges into the neighbouring opposite-sign or zero territory.  Diagnostics
    flag fragile near-zero vertices, zero vertices that fail the
    both-signs-or-all-zero neighbourhood dichotomy, and domain boundaries
    sitting on degree-1 vertices (both impossible for exact eigenvectors).
    """
    u = np.asarray(u, dtype=float)
    ext = extend(tree, u)
    signs, ueff = effective_signs(u, eps_z)
    graphs, zero_graphs_ = sign_graphs(tree, u, eps_z)
    edge_zeros = tuple(locate_zeros(ext, eps_z))

    domains = []
    diagnostics = []
    for g in graphs:
        inside = set(g.vertices)
        boundary = []
        for x in g.vertices:
            for y in tree.neighbors(x):
                if y in inside:
                    continue
                length = tree.length(x, y)
                if signs[y] == 0:
                    z = EdgeZero(x, y, length, AT_CHILD_VERTEX)
                    if tree.degree(y) == 1:
                        diagnostics.append(
                            {"kind": "leaf_boundary", "edge": [x, y], "vertex": y}
                        )
                else:
                    t = zero_parameter(ueff[x], ueff[y], length)
                    z = EdgeZero(x, y, float(t), INTERIOR)
                boundary.append(z)
        domains.append(
            NodalDomain(
                sign_graph=g,
                boundary=tuple(boundary),
                partial_edges=tuple((z.x, z.y, z.t) for z in boundary),
            )
        )

    umax = float(np.max(np.abs(u))) if u.size else 0.0
    if umax > 0.0:
        rel = np.abs(u) / umax
        for v in np.nonzero((rel >= eps_z) & (rel <= FRAGILE_BAND * eps_z))[0]:
            diagnostics.append(
                {"kind": "fragile_vertex", "vertex": int(v), "rel": float(rel[v])}
            )
    for v in range(tree.n):
        if signs[v] != 0:
            continue
        neigh = {int(signs[y]) for y in tree.neighbors(v)}
        if neigh != {0} and not ({-1, 1} <= neigh):
            diagnostics.append(
                {
                    "kind": "dichotomy_violation",
                    "vertex": v,
                    "neighbor_signs": sorted(
                        int(signs[y]) for y in tree.neighbors(v)
                    ),
                }
            )

    interior_count = sum(1 for z in edge_zeros if z.kind == INTERIOR)
    return NodalDecomposition(
        sign_graphs=tuple(graphs),
        zero_graphs=tuple(zero_graphs_),
        edge_zeros=edge_zeros,
        domains=tuple(domains),
        zero_count=interior_count + len(zero_graphs_),
        diagnostics=tuple(diagnostics),
        index=index,
    )


def decomposition_to_dot(tree: WeightedTree, dec: NodalDecomposition) -> str:
    """DOT rendering: vertices coloured by sign, edge zeros on labels."""
    sign_of = {}
    for g in dec.sign_graphs:
        for v in g.vertices:
            sign_of[v] = g.sign
    fill = {1: "lightblue", -1: "lightsalmon", 0: "white"}
    zero_on = {}
    for z in dec.edge_zeros:
        key = (z.x, z.y) if z.x < z.y else (z.y, z.x)
        zero_on[key] = z
    lines = ["graph nodal {"]
    for v in range(tree.n):
        s = sign_of.get(v, 0)
        mark = {1: "+", -1: "-", 0: "0"}[s]
        lines.append(
            f'  {v} [label="{v}:{mark}", style=filled, fillcolor={fill[s]}];'
        )
    for x, y, c in tree.edges:
        key = (x, y) if x < y else (y, x)
        z = zero_on.get(key)
        if z is None:
            lines.append(f'  {x} -- {y} [label="{c!r}"];')
        else:
            lines.append(
                f'  {x} -- {y} [label="{c!r} z@{z.t!r}", style=dashed];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
