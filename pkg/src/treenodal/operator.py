"""Dense Schrödinger operators A = L + r on weighted trees.

L is the weighted graph Laplacian, factored as L = D*D through the edge
derivative D u(x,y) = c(x,y)**0.5 (u(x) - u(y)) and its adjoint.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .tree import WeightedTree, _check_potential


@dataclass(frozen=True)
class EdgeFunction:
    """Antisymmetric function on oriented edges: value(y, x) = -value(x, y).

    One value is stored per stored edge (parent -> child); reversed lookups
    flip the sign, so antisymmetry is exact by construction.
    """

    tree: WeightedTree
    per_edge: np.ndarray  # value on (parent, child) for each stored edge

    def __post_init__(self):
        vals = np.asarray(self.per_edge, dtype=float)
        if vals.shape != (self.tree.n - 1,):
            raise DimensionMismatch(
                "edge values %s, expected %d" % (vals.shape, self.tree.n - 1)
            )
        object.__setattr__(self, "per_edge", vals)

    def value(self, x: int, y: int) -> float:
        idx, sign = self.tree.edge_id(x, y)
        return sign * float(self.per_edge[idx])


@dataclass(frozen=True)
class SchrodingerOperator:
    """Symmetric N x N matrix with A[x,y] = -c(x,y) off the diagonal and
    A[x,x] = sum of incident weights + r(x)."""

    tree: WeightedTree
    potential: np.ndarray
    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.tree.n

    @property
    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.matrix))

    def apply(self, u) -> np.ndarray:
        """Apply A in operator form, sum_y c(x,y)(u(x)-u(y)) + r(x)u(x).

        Each edge contributes a pairwise difference, so constants are
        annihilated exactly when r = 0 (no rounding residue).
        """
        u = _check_vertex_function(self.tree, u)
        out = self.potential * u
        for i, (x, y, c) in enumerate(self.tree.edges):
            d = c * (u[x] - u[y])
            out[x] += d
            out[y] -= d
        return out


def _check_vertex_function(tree, u):
    u = np.asarray(u, dtype=float)
    if u.shape != (tree.n,):
        raise DimensionMismatch("vertex function %s, expected %d" % (u.shape, tree.n))
    return u


def assemble(tree: WeightedTree, potential=None) -> SchrodingerOperator:
    """Build the dense symmetric matrix of A = L + r.

    With potential None or all zeros this is the Laplacian, which kills the
    all-ones vector.
    """
    if potential is None:
        r = np.zeros(tree.n)
    else:
        r = _check_potential(tree, potential)
    m = np.zeros((tree.n, tree.n))
    for x, y, c in tree.edges:
        m[x, y] = -c
        m[y, x] = -c
        m[x, x] += c
        m[y, y] += c
    m[np.diag_indices(tree.n)] += r
    return SchrodingerOperator(tree=tree, potential=r, matrix=m)


def derivative(tree: WeightedTree, u) -> EdgeFunction:
    """D u(x,y) = c(x,y)**0.5 (u(x) - u(y)) on each stored (parent, child)."""
    u = _check_vertex_function(tree, u)
    parents = np.fromiter((x for x, _, _ in tree.edges), dtype=int, count=tree.n - 1)
    children = np.fromiter((y for _, y, _ in tree.edges), dtype=int, count=tree.n - 1)
    return EdgeFunction(tree, tree.sqrt_weights * (u[parents] - u[children]))


def adjoint(tree: WeightedTree, g: EdgeFunction) -> np.ndarray:
    """D* g(x) = sum over neighbours y of c(x,y)**0.5 g(x,y)."""
    if g.tree is not tree and g.tree != tree:
        raise DimensionMismatch("edge function belongs to a different tree")
    out = np.zeros(tree.n)
    for i, (x, y, _) in enumerate(tree.edges):
        s = tree.sqrt_weights[i] * g.per_edge[i]
        out[x] += s
        out[y] -= s
    return out


def vertex_inner(u, v) -> float:
    """Inner product on vertex functions, sum_x u(x) v(x)."""
    return float(np.dot(np.asarray(u, dtype=float), np.asarray(v, dtype=float)))


def edge_inner(f: EdgeFunction, g: EdgeFunction) -> float:
    """Inner product on edge functions: one term per undirected edge.

    Equals half the double sum over ordered adjacent pairs, because the
    reversed term repeats (-f)(-g) = f g.
    """
    if f.tree is not g.tree and f.tree != g.tree:
        raise DimensionMismatch("edge functions belong to different trees")
    return float(np.dot(f.per_edge, g.per_edge))


def matrix_text(op: SchrodingerOperator) -> str:
    """Dense plain-text export: one row per line, row-major."""
    return "\n".join(" ".join(repr(float(v)) for v in row) for row in op.matrix) + "\n"
