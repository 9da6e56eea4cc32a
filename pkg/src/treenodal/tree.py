"""Weighted finite trees with a degree-one root and edges oriented away from it.

Edge weights c are strictly positive; the metric length of an edge is
l = 1/c.  Each undirected edge is stored once as (parent, child, weight)
in breadth-first discovery order from the root.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadSize,
    BadWeightRange,
    DuplicateEdge,
    HasCycle,
    NonPositiveWeight,
    NotConnected,
    ParseError,
    RootDegreeNotOne,
)

GENERATOR_KINDS = ("path", "star", "caterpillar", "random_pruefer")


@dataclass(frozen=True)
class WeightedTree:
    """A validated weighted tree.  Immutable; safe to share across threads.

    edges are (parent, child, weight) with parent closer to the root.
    Reversed lookups of edge functions flip sign (antisymmetric convention).
    """

    n: int
    root: int
    edges: tuple[tuple[int, int, float], ...]
    # derived, filled by validate_tree
    _adjacency: tuple[tuple[int, ...], ...] = field(repr=False, default=())
    _edge_index: dict = field(repr=False, default_factory=dict, compare=False)
    _weights: np.ndarray = field(repr=False, default=None, compare=False)
    _sqrt_weights: np.ndarray = field(repr=False, default=None, compare=False)
    _lengths: np.ndarray = field(repr=False, default=None, compare=False)

    @property
    def weights(self) -> np.ndarray:
        """Per stored edge, the weight c."""
        return self._weights

    @property
    def sqrt_weights(self) -> np.ndarray:
        """Per stored edge, c**0.5 computed once and cached."""
        return self._sqrt_weights

    @property
    def lengths(self) -> np.ndarray:
        """Per stored edge, the length l = 1/c."""
        return self._lengths

    def neighbors(self, x: int) -> tuple[int, ...]:
        return self._adjacency[x]

    def degree(self, x: int) -> int:
        return len(self._adjacency[x])

    def is_leaf(self, x: int) -> bool:
        return len(self._adjacency[x]) == 1

    def edge_id(self, x: int, y: int) -> tuple[int, int]:
        """Return (stored edge position, +1 if (x, y) is parent->child else -1)."""
        key = (x, y) if x < y else (y, x)
        idx, forward = self._edge_index[key]
        if (x, y) == forward:
            return idx, +1
        return idx, -1

    def has_edge(self, x: int, y: int) -> bool:
        key = (x, y) if x < y else (y, x)
        return key in self._edge_index

    def weight(self, x: int, y: int) -> float:
        idx, _ = self.edge_id(x, y)
        return float(self._weights[idx])

    def length(self, x: int, y: int) -> float:
        idx, _ = self.edge_id(x, y)
        return float(self._lengths[idx])


def validate_tree(n, edges, root) -> WeightedTree:
    """Check the tree axioms and return a WeightedTree with edges oriented
    away from the root by breadth-first traversal.

    Raises NotConnected, HasCycle, NonPositiveWeight, RootDegreeNotOne or
    DuplicateEdge.
    """
    n = int(n)
    root = int(root)
    if n < 1:
        raise BadSize("vertex count must be >= 1, got %d" % n)
    if not (0 <= root < n):
        raise ParseError("root %d out of range [0, %d)" % (root, n))

    seen = set()
    weight_of = {}
    for x, y, c in edges:
        x, y = int(x), int(y)
        c = float(c)
        if not (0 <= x < n and 0 <= y < n):
            raise ParseError("edge (%d, %d) out of range [0, %d)" % (x, y, n))
        if x == y:
            raise HasCycle("self-loop at vertex %d" % x)
        key = (x, y) if x < y else (y, x)
        if key in seen:
            raise DuplicateEdge("edge (%d, %d) listed twice" % key)
        seen.add(key)
        if not (c > 0.0) or not math.isfinite(c):
            raise NonPositiveWeight("edge (%d, %d) has weight %r" % (x, y, c))
        weight_of[key] = c

    adjacency = [[] for _ in range(n)]
    for x, y in seen:
        adjacency[x].append(y)
        adjacency[y].append(x)
    for nbrs in adjacency:
        nbrs.sort()

    # BFS from the root: orients edges and detects disconnection/cycles.
    parent = [-1] * n
    order = [root]
    visited = [False] * n
    visited[root] = True
    qi = 0
    oriented = []
    while qi < len(order):
        x = order[qi]
        qi += 1
        for y in adjacency[x]:
            if not visited[y]:
                visited[y] = True
                parent[y] = x
                key = (x, y) if x < y else (y, x)
                oriented.append((x, y, weight_of[key]))
                order.append(y)
    if len(order) < n:
        raise NotConnected("only %d of %d vertices reachable from root" % (len(order), n))
    if len(seen) != n - 1:
        # connected with more than n-1 edges
        raise HasCycle("%d edges on %d vertices" % (len(seen), n))
    if len(adjacency[root]) != 1:
        raise RootDegreeNotOne(
            "root %d has degree %d, expected 1" % (root, len(adjacency[root]))
        )

    edge_index = {}
    for i, (x, y, _) in enumerate(oriented):
        key = (x, y) if x < y else (y, x)
        edge_index[key] = (i, (x, y))
    w = np.array([c for _, _, c in oriented], dtype=float)
    tree = WeightedTree(
        n=n,
        root=root,
        edges=tuple(oriented),
        _adjacency=tuple(tuple(a) for a in adjacency),
        _edge_index=edge_index,
        _weights=w,
        _sqrt_weights=np.sqrt(w),
        _lengths=1.0 / w,
    )
    return tree


def _parse_weight_law(law):
    if law == "unit" or law is None:
        return ("unit",)
    if isinstance(law, str) and law.startswith("uniform:"):
        parts = law.split(":")
        if len(parts) != 3:
            raise BadWeightRange("expected uniform:a:b, got %r" % law)
        a, b = float(parts[1]), float(parts[2])
    elif isinstance(law, (tuple, list)) and len(law) == 3 and law[0] == "uniform":
        a, b = float(law[1]), float(law[2])
    else:
        raise BadWeightRange("unknown weight law %r" % (law,))
    if not (a > 0.0) or b < a:
        raise BadWeightRange("need 0 < a <= b, got a=%r b=%r" % (a, b))
    return ("uniform", a, b)


def _decode_pruefer(seq, n):
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for v in seq:
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1 and v < ptr:
            leaf = v
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return edges


def generate(kind, n, weight_law="unit", seed=0) -> WeightedTree:
    """Build a tree of the requested shape.

    kind: "path" (0-1-...-n-1, root 0), "star" (center 0, leaves 1..n-1,
    root 1), "caterpillar" (spine plus legs, root at one spine end), or
    "random_pruefer" (uniform over labelled trees, root = smallest leaf).

    weight_law: "unit" or "uniform:a:b"; random draws come from
    random.Random(seed), so a fixed seed reproduces the tree bit-for-bit.
    """
    n = int(n)
    if n < 2:
        raise BadSize("need n >= 2, got %d" % n)
    if kind not in GENERATOR_KINDS:
        raise ValueError("unknown kind %r, expected one of %s" % (kind, GENERATOR_KINDS))
    law = _parse_weight_law(weight_law)
    rng = random.Random(seed)

    if kind == "path":
        pairs = [(i, i + 1) for i in range(n - 1)]
        root = 0
    elif kind == "star":
        pairs = [(0, i) for i in range(1, n)]
        root = 1
    elif kind == "caterpillar":
        spine = max(2, (n + 1) // 2)
        pairs = [(i, i + 1) for i in range(spine - 1)]
        for k, leg in enumerate(range(spine, n)):
            pairs.append((1 + k % (spine - 1), leg))
        root = 0
    else:  # random_pruefer
        seq = [rng.randrange(n) for _ in range(n - 2)]
        pairs = _decode_pruefer(seq, n)
        degree = [0] * n
        for x, y in pairs:
            degree[x] += 1
            degree[y] += 1
        root = min(v for v in range(n) if degree[v] == 1)

    # weights drawn in canonical (sorted undirected) edge order so the draw
    # sequence does not depend on construction order
    canon = sorted((x, y) if x < y else (y, x) for x, y in pairs)
    if law[0] == "unit":
        edges = [(x, y, 1.0) for x, y in canon]
    else:
        a, b = law[1], law[2]
        edges = [(x, y, rng.uniform(a, b)) for x, y in canon]
    return validate_tree(n, edges, root)


def random_potential(n, law="zero", seed=0) -> np.ndarray:
    """Per-vertex potential r: "zero" or "uniform:a:b" (a <= b, sign free)."""
    if law == "zero" or law is None:
        return np.zeros(int(n))
    if isinstance(law, str) and law.startswith("uniform:"):
        parts = law.split(":")
        if len(parts) != 3:
            raise BadWeightRange("expected uniform:a:b, got %r" % law)
        a, b = float(parts[1]), float(parts[2])
    elif isinstance(law, (tuple, list)) and len(law) == 3 and law[0] == "uniform":
        a, b = float(law[1]), float(law[2])
    else:
        raise BadWeightRange("unknown potential law %r" % (law,))
    if b < a:
        raise BadWeightRange("need a <= b, got a=%r b=%r" % (a, b))
    rng = random.Random(seed)
    return np.array([rng.uniform(a, b) for _ in range(int(n))])


def _check_potential(tree, potential):
    r = np.asarray(potential, dtype=float)
    if r.shape != (tree.n,):
        from .errors import DimensionMismatch

        raise DimensionMismatch(
            "potential length %s, expected %d" % (r.shape, tree.n)
        )
    if not np.all(np.isfinite(r)):
        raise ParseError("potential has non-finite entries")
    return r


def to_json(tree: WeightedTree, potential=None) -> str:
    """Serialize tree and potential to the canonical JSON document.

    Weights and potentials are written with Python's shortest round-trip
    float repr, so parse(to_json(x)) reproduces x exactly.
    """
    r = _check_potential(tree, potential) if potential is not None else np.zeros(tree.n)
    doc = {
        "n": tree.n,
        "root": tree.root,
        "edges": [[x, y, c] for x, y, c in tree.edges],
        "potential": [float(v) for v in r],
    }
    return json.dumps(doc)


def from_json(text: str):
    """Parse the canonical JSON document; returns (tree, potential)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON: %s" % exc.msg, line=exc.lineno) from exc
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object at top level")
    for key in ("n", "root", "edges"):
        if key not in doc:
            raise ParseError("missing required field", field=key)
    try:
        n = int(doc["n"])
        root = int(doc["root"])
    except (TypeError, ValueError) as exc:
        raise ParseError("n and root must be integers", field="n/root") from exc
    edges = []
    for i, item in enumerate(doc["edges"]):
        if not isinstance(item, (list, tuple)) or len(item) != 3:
            raise ParseError("edge must be [x, y, c]", field="edges[%d]" % i)
        try:
            edges.append((int(item[0]), int(item[1]), float(item[2])))
        except (TypeError, ValueError) as exc:
            raise ParseError("bad edge entry", field="edges[%d]" % i) from exc
    tree = validate_tree(n, edges, root)
    raw = doc.get("potential", [0.0] * n)
    if not isinstance(raw, list) or len(raw) != n:
        raise ParseError("potential must be a list of length n", field="potential")
    try:
        potential = np.array([float(v) for v in raw])
    except (TypeError, ValueError) as exc:
        raise ParseError("bad potential entry", field="potential") from exc
    if not np.all(np.isfinite(potential)):
        raise ParseError("potential has non-finite entries", field="potential")
    return tree, potential


def to_dot(tree: WeightedTree, potential=None) -> str:
    """Render-ready DOT: undirected edges labelled by c, vertices by r."""
    r = _check_potential(tree, potential) if potential is not None else np.zeros(tree.n)
    lines = ["graph tree {"]
    for v in range(tree.n):
        lines.append('  %d [label="r=%r"];' % (v, float(r[v])))
    for x, y, c in tree.edges:
        lines.append('  %d -- %d [label="%r"];' % (x, y, c))
    lines.append("}")
    return "\n".join(lines) + "\n"
