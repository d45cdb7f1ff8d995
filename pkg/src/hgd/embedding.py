"""Ground-truth genus distribution by enumerating T-rotation systems and tracing faces."""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from hgd import _kernels
from hgd._parallel import parallel_histogram
from hgd.errors import BudgetExceeded, InvalidArgument, InvariantViolation
from hgd.params import ParamLike, ParamTuple, as_params
from hgd.polynomial import GenusPolynomial

DEFAULT_BUDGET_BITS = 24
TREE_STRATEGIES = ("bfs", "dfs")


@dataclass(frozen=True)
class EmbeddedGraph:
    """A concrete ``H_{m_1..m_k}`` with its plane reference rotation.

    Edge ``e`` has darts ``2e`` (``u -> v``) and ``2e + 1`` (``v -> u``).
    ``rotation[v]`` lists the three outgoing darts at ``v`` counterclockwise.
    """

    params: ParamTuple
    vertex_roles: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    edge_roles: tuple[str, ...]
    rotation: tuple[tuple[int, int, int], ...]
    tree: frozenset[int]

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_roles)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def betti(self) -> int:
        return self.n_edges - self.n_vertices + 1

    @property
    def cotree(self) -> tuple[int, ...]:
        return tuple(e for e in range(self.n_edges) if e not in self.tree)

    def dart_head(self, d: int) -> int:
        u, v = self.edges[d >> 1]
        return v if d & 1 == 0 else u

    def dart_tail(self, d: int) -> int:
        return self.dart_head(d ^ 1)

    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def with_tree(self, strategy: str) -> EmbeddedGraph:
        return EmbeddedGraph(
            self.params, self.vertex_roles, self.edges, self.edge_roles, self.rotation,
            spanning_tree(self, strategy),
        )

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": i, "role": r} for i, r in enumerate(self.vertex_roles)],
            "edges": [
                {"u": u, "v": v, "role": r, "tree": e in self.tree}
                for e, ((u, v), r) in enumerate(zip(self.edges, self.edge_roles))
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def _arrays(self):
        rot = np.array(self.rotation, dtype=np.int64)
        heads = np.array([self.dart_head(d) for d in range(2 * self.n_edges)], dtype=np.int64)
        return rot, heads


@dataclass(frozen=True)
class RotationSystem:
    """Per-vertex reversal bits and per-edge twist bits relative to the reference rotation."""

    flip: tuple[int, ...]
    twist: tuple[int, ...]

    @classmethod
    def reference(cls, g: EmbeddedGraph) -> RotationSystem:
        return cls((0,) * g.n_vertices, (0,) * g.n_edges)

    @classmethod
    def from_index(cls, g: EmbeddedGraph, index: int) -> RotationSystem:
        """Decode the enumeration index: low bits flip vertices, high bits twist co-tree edges."""
        nv = g.n_vertices
        flip = tuple((index >> v) & 1 for v in range(nv))
        twist = [0] * g.n_edges
        for c, e in enumerate(g.cotree):
            twist[e] = (index >> (nv + c)) & 1
        return cls(flip, tuple(twist))

    def validate(self, g: EmbeddedGraph) -> None:
        if len(self.flip) != g.n_vertices or len(self.twist) != g.n_edges:
            raise InvalidArgument("rotation system does not match the graph size")
        if any(self.twist[e] for e in g.tree):
            raise InvalidArgument("spanning-tree edges must be untwisted in a T-rotation system")


def build_halin(params: ParamLike, tree: str = "bfs") -> EmbeddedGraph:
    """Construct ``H_{m_1..m_k}`` with a plane reference rotation.

    Spine ``v_0..v_(l+1)``; pendant leaf ``u_i`` at ``v_i`` points up or
    down in alternating runs, the first run up. The outer cycle goes
    ``v_0``, the up leaves left to right, ``v_(l+1)``, the down leaves
    right to left, back to ``v_0``.
    """
    p = as_params(params).require_strict()
    ell = p.spine_length
    up: list[bool] = []
    for r, length in enumerate(p.runs):
        up += [r % 2 == 0] * length
    assert len(up) == ell

    roles = ["spine-end"] + ["spine"] * ell + ["spine-end"] + ["leaf"] * ell
    coords: dict[int, tuple[float, float]] = {i: (float(i), 0.0) for i in range(ell + 2)}
    for i in range(1, ell + 1):
        coords[ell + 1 + i] = (float(i), 1.0 if up[i - 1] else -1.0)

    def leaf(i: int) -> int:
        return ell + 1 + i

    edges: list[tuple[int, int]] = []
    edge_roles: list[str] = []
    for i in range(ell + 1):
        edges.append((i, i + 1))
        edge_roles.append("spine" if 1 <= i < ell else "pendant")
    for i in range(1, ell + 1):
        edges.append((i, leaf(i)))
        edge_roles.append("pendant")
    cycle = [0] + [leaf(i) for i in range(1, ell + 1) if up[i - 1]] + [ell + 1]
    cycle += [leaf(i) for i in range(ell, 0, -1) if not up[i - 1]]
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        edges.append((a, b))
        edge_roles.append("cycle")

    # With no down leaves the closing edge v_(l+1) -> v_0 is routed below the spine.
    closing = {(ell + 1, 0), (0, ell + 1)} if cycle[-1] == ell + 1 else set()

    def direction(u: int, v: int) -> float:
        if (u, v) in closing:
            return -math.pi / 2
        (x0, y0), (x1, y1) = coords[u], coords[v]
        return math.atan2(y1 - y0, x1 - x0)

    out: list[list[tuple[float, int]]] = [[] for _ in roles]
    for e, (u, v) in enumerate(edges):
        out[u].append((direction(u, v), 2 * e))
        out[v].append((direction(v, u), 2 * e + 1))
    rotation = tuple(tuple(d for _, d in sorted(darts)) for darts in out)

    g = EmbeddedGraph(p, tuple(roles), tuple(edges), tuple(edge_roles), rotation, frozenset())
    return g.with_tree(tree)


def spanning_tree(g: EmbeddedGraph, strategy: str = "bfs") -> frozenset[int]:
    """Edge set of a spanning tree: BFS from ``v_0`` or DFS from ``v_(l+1)``."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n_vertices)]
    for e, (u, v) in enumerate(g.edges):
        adj[u].append((v, e))
        adj[v].append((u, e))
    seen = [False] * g.n_vertices
    tree: set[int] = set()
    if strategy == "bfs":
        root = 0
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, e in sorted(adj[u]):
                if not seen[v]:
                    seen[v] = True
                    tree.add(e)
                    queue.append(v)
    elif strategy == "dfs":
        root = g.params.spine_length + 1
        stack = [(root, -1)]
        while stack:
            u, via = stack.pop()
            if seen[u]:
                continue
            seen[u] = True
            if via >= 0:
                tree.add(via)
            for v, e in sorted(adj[u]):
                if not seen[v]:
                    stack.append((v, e))
    else:
        raise InvalidArgument(f"unknown spanning-tree strategy {strategy!r}")
    if len(tree) != g.n_vertices - 1 or not all(seen):
        raise InvariantViolation("graph is disconnected")
    return frozenset(tree)


def trace_faces(g: EmbeddedGraph, rs: RotationSystem) -> int:
    """Face count of the embedding given by ``rs`` (sided-dart orbit count halved)."""
    rs.validate(g)
    nstates = 4 * g.n_edges
    pos = {}
    for v, darts in enumerate(g.rotation):
        for i, d in enumerate(darts):
            pos[d] = i
    seen = bytearray(nstates)
    orbits = 0
    for s0 in range(nstates):
        if seen[s0]:
            continue
        orbits += 1
        s = s0
        while not seen[s]:
            seen[s] = 1
            d, side = s >> 1, s & 1
            side ^= rs.twist[d >> 1]
            v = g.dart_head(d)
            i = pos[d ^ 1]
            step = -1 if side ^ rs.flip[v] else 1
            s = (g.rotation[v][(i + step) % 3] << 1) | side
    if orbits % 2:
        raise InvariantViolation(f"odd number of face orbits ({orbits})")
    return orbits // 2


def euler_genus_of(g: EmbeddedGraph, rs: RotationSystem) -> int:
    genus = 2 - g.n_vertices + g.n_edges - trace_faces(g, rs)
    if not 0 <= genus <= g.betti:
        raise InvariantViolation(f"Euler genus {genus} outside [0, {g.betti}]")
    return genus


def embedding_bits(params: ParamLike) -> int:
    p = as_params(params)
    return 2 * p.spine_length + 2 + p.betti


def embedding_distribution(
    params: ParamLike,
    budget: int = DEFAULT_BUDGET_BITS,
    workers: int = 1,
    tree: str = "bfs",
) -> GenusPolynomial:
    """Histogram of Euler genus over all ``2**(|V| + beta)`` T-rotation systems."""
    p = as_params(params).require_strict()
    nbits = embedding_bits(p)
    if nbits > budget:
        raise BudgetExceeded(nbits, budget, f"embedding enumeration for {p}")
    g = build_halin(p, tree)
    rot, heads = g._arrays()
    cotree = np.array(g.cotree, dtype=np.int64)
    if g.n_vertices + len(cotree) != nbits:
        raise InvariantViolation("co-tree size disagrees with the Betti number")
    nv, ne = g.n_vertices, g.n_edges
    failures: list[int] = []

    def run(start, stop, hist):
        bad = _kernels.genus_histogram(rot, heads, cotree, nv, ne, start, stop, hist)
        if bad >= 0:
            failures.append(bad)

    hist = parallel_histogram(nbits, g.betti + 1, run, workers)
    if failures:
        raise InvariantViolation(f"face tracing produced an impossible genus at index {min(failures)}")
    return GenusPolynomial.from_histogram(hist)


def embedding_distribution_python(params: ParamLike, tree: str = "bfs") -> GenusPolynomial:
    """Pure-Python reference enumeration (small inputs only)."""
    g = build_halin(params, tree)
    hist = [0] * (g.betti + 1)
    for idx in range(1 << (g.n_vertices + g.betti)):
        hist[euler_genus_of(g, RotationSystem.from_index(g, idx))] += 1
    return GenusPolynomial.from_histogram(hist)


def count_faces_compiled(g: EmbeddedGraph, rs: RotationSystem) -> int:
    rot, heads = g._arrays()
    orbits = _kernels.count_faces(
        rot, heads, np.array(rs.flip, dtype=np.int64), np.array(rs.twist, dtype=np.int64)
    )
    return orbits // 2


def rotation_systems(g: EmbeddedGraph, indices: Sequence[int]):
    return [RotationSystem.from_index(g, i) for i in indices]
