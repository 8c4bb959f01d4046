"""Plumbing graphs: intersection forms, boundary homology, join and self-join.

A plumbing graph has weighted vertices and signed edges; multi-edges and
self-loops are allowed, and at most one independent cycle.  The boundary
3-manifold's first homology is Z^{cycles} plus the cokernel of the
intersection form.  Cyclic graphs are torus bundles: their monodromy is the
product of T^{w_i} S over the cycle, scaled by the product of edge signs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import DomainError
from .intmat import AbelianGroupDesc, IntMatrix, abelian_group_of
from .sl2 import MonodromyWord, SL2Element

__all__ = [
    "PlumbingGraph",
    "JoinHypotheses",
    "is_pure_cycle",
    "parse_graph",
    "format_graph",
    "intersection_form",
    "boundary_homology",
    "cycle_plumbing_from_word",
    "cycle_monodromy",
    "cycle_traversal",
    "join",
    "self_join",
    "check_join_hypotheses",
    "canonical_key",
]


@dataclass(frozen=True)
class PlumbingGraph:
    """Weighted graph with signed edges; immutable after construction."""

    vertices: tuple[tuple[str, int], ...]        # (name, weight) in declaration order
    edges: tuple[tuple[str, str, int], ...]      # (u, v, sign) with sign in {+1, -1}

    def __post_init__(self) -> None:
        names = [n for n, _ in self.vertices]
        if len(set(names)) != len(names):
            raise DomainError("duplicate-vertex", "vertex names must be unique")
        name_set = set(names)
        for u, v, s in self.edges:
            if u not in name_set or v not in name_set:
                raise DomainError("dangling-edge", f"edge ({u},{v}) references a missing vertex")
            if s not in (1, -1):
                raise DomainError("bad-edge-sign", "edge signs must be +1 or -1")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.vertices)

    def weight(self, name: str) -> int:
        for n, w in self.vertices:
            if n == name:
                return w
        raise DomainError("missing-vertex", f"no vertex named {name}")

    def component_count(self) -> int:
        seen: set[str] = set()
        adj = self._adjacency()
        count = 0
        for n in self.names:
            if n in seen:
                continue
            count += 1
            queue = deque([n])
            seen.add(n)
            while queue:
                cur = queue.popleft()
                for nb in adj[cur]:
                    if nb not in seen:
                        seen.add(nb)
                        queue.append(nb)
        return count

    @property
    def cycle_count(self) -> int:
        return len(self.edges) - len(self.vertices) + self.component_count()

    def is_tree(self) -> bool:
        return len(self.vertices) > 0 and self.component_count() == 1 and self.cycle_count == 0

    def _adjacency(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {n: [] for n in self.names}
        for u, v, _ in self.edges:
            if u == v:
                continue
            adj[u].append(v)
            adj[v].append(u)
        return adj


def parse_graph(text: str) -> PlumbingGraph:
    """Parse the line-oriented graph format::

        vertex <name> <integer-weight>
        edge <name> <name> <+|->

    '#' starts a comment.  The result has at most one cycle, with its edge
    signs normalized so that at most one cycle edge is negative (preserving
    the sign product).
    """
    vertices: list[tuple[str, int]] = []
    edges: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 3:
            try:
                weight = int(parts[2])
            except ValueError as exc:
                raise DomainError("graph-syntax", f"line {lineno}: bad weight") from exc
            vertices.append((parts[1], weight))
        elif parts[0] == "edge" and len(parts) == 4 and parts[3] in ("+", "-"):
            edges.append((parts[1], parts[2], 1 if parts[3] == "+" else -1))
        else:
            raise DomainError("graph-syntax", f"line {lineno}: cannot parse {raw!r}")
    graph = PlumbingGraph(tuple(vertices), tuple(edges))
    if graph.cycle_count > 1:
        raise DomainError("multi-cycle", "graphs with two or more independent cycles are unsupported")
    return _normalize_cycle_signs(graph)


def format_graph(g: PlumbingGraph) -> str:
    lines = [f"vertex {n} {w}" for n, w in g.vertices]
    lines.extend(f"edge {u} {v} {'+' if s > 0 else '-'}" for u, v, s in g.edges)
    return "\n".join(lines)


def _cycle_edge_indices(g: PlumbingGraph) -> list[int]:
    """Indices of the edges on the unique cycle (empty for forests).

    Computed by stripping leaves; what survives is the cycle, including the
    self-loop and double-edge degenerate shapes.
    """
    alive_edges = set(range(len(g.edges)))
    alive_vertices = set(g.names)
    incident: dict[str, set[int]] = {n: set() for n in g.names}
    for idx, (u, v, _) in enumerate(g.edges):
        incident[u].add(idx)
        incident[v].add(idx)

    def degree(n: str) -> int:
        total = 0
        for idx in incident[n]:
            if idx in alive_edges:
                u, v, _ = g.edges[idx]
                total += 2 if u == v else 1
        return total

    changed = True
    while changed:
        changed = False
        for n in list(alive_vertices):
            if degree(n) <= 1:
                alive_vertices.discard(n)
                for idx in list(incident[n]):
                    alive_edges.discard(idx)
                changed = True
    return sorted(alive_edges)


def _normalize_cycle_signs(g: PlumbingGraph) -> PlumbingGraph:
    """Flip cycle-edge signs to the normal form: at most one negative edge.

    Graphs already in normal form are returned untouched; otherwise the sign
    product is preserved and the negative edge (if any) lands on the first
    cycle edge in declaration order.
    """
    cycle = _cycle_edge_indices(g)
    negatives = [i for i in cycle if g.edges[i][2] < 0]
    if len(negatives) <= 1:
        return g
    product = 1
    for i in cycle:
        product *= g.edges[i][2]
    edges = list(g.edges)
    for i in cycle:
        u, v, _ = edges[i]
        edges[i] = (u, v, 1)
    if product < 0:
        u, v, _ = edges[cycle[0]]
        edges[cycle[0]] = (u, v, -1)
    return PlumbingGraph(g.vertices, tuple(edges))


def intersection_form(g: PlumbingGraph) -> IntMatrix:
    """Symmetric linking matrix: diagonal = weight plus 2*sign per self-loop,
    off-diagonal = sum of edge signs between the two vertices."""
    index = {n: i for i, n in enumerate(g.names)}
    n = len(g.vertices)
    q = [[0] * n for _ in range(n)]
    for i, (_, w) in enumerate(g.vertices):
        q[i][i] = w
    for u, v, s in g.edges:
        i, j = index[u], index[v]
        if i == j:
            q[i][i] += 2 * s
        else:
            q[i][j] += s
            q[j][i] += s
    return IntMatrix(n, n, tuple(x for row in q for x in row))


def boundary_homology(g: PlumbingGraph) -> AbelianGroupDesc:
    """First homology of the boundary: coker(Q) plus one Z per cycle."""
    cycles = g.cycle_count
    if cycles > 1:
        raise DomainError("multi-cycle", "boundary homology needs at most one cycle")
    coker = abelian_group_of(intersection_form(g))
    return AbelianGroupDesc(coker.free_rank + cycles, coker.torsion_factors)


def is_pure_cycle(g: PlumbingGraph) -> bool:
    """True iff the graph is a single cycle with every vertex on it."""
    n = len(g.vertices)
    if n == 0 or len(g.edges) != n or g.component_count() != 1:
        return False
    degree = {name: 0 for name in g.names}
    for u, v, _ in g.edges:
        # a self-loop contributes 2 to its vertex
        degree[u] += 1
        degree[v] += 1
    return all(d == 2 for d in degree.values())


def _cycle_vertex_names(n: int) -> list[str]:
    width = len(str(n - 1)) if n > 1 else 1
    return [f"v{str(i).zfill(width)}" for i in range(n)]


def cycle_plumbing_from_word(w: MonodromyWord) -> PlumbingGraph:
    """Cycle plumbing whose boundary is the torus bundle of ``w``.

    Accepted word classes:

    * hyperbolic normal form: sign +, all a_i >= 2, some a_j >= 3 -> cycle
      with weights -a_i and all edges positive;
    * negative parabolic, trace -2 representative (2,...,2 with sign -),
      n >= 2 -> all weights -2, exactly one negative edge;
    * its mirror (-2,...,-2 with sign -), n >= 2 -> all weights +2, exactly
      one negative edge.
    """
    a = w.coeffs
    n = len(a)
    hyperbolic = w.sign > 0 and n >= 1 and all(x >= 2 for x in a) and any(x >= 3 for x in a)
    parabolic_neg = w.sign < 0 and n >= 2 and all(x == 2 for x in a)
    parabolic_pos = w.sign < 0 and n >= 2 and all(x == -2 for x in a)
    if not (hyperbolic or parabolic_neg or parabolic_pos):
        raise DomainError(
            "unsupported-word-class",
            "need a hyperbolic normal form (+, all >=2, some >=3) or a "
            "parabolic cycle word (-, all entries 2 or all -2, length >= 2)",
        )
    names = _cycle_vertex_names(n)
    vertices = tuple((names[i], -a[i]) for i in range(n))
    wrap_sign = -1 if w.sign < 0 else 1
    if n == 1:
        edges: tuple = ((names[0], names[0], wrap_sign),)
    else:
        edges = tuple(
            (names[i], names[i + 1], 1) for i in range(n - 1)
        ) + ((names[n - 1], names[0], wrap_sign),)
    return PlumbingGraph(vertices, edges)


def cycle_traversal(g: PlumbingGraph) -> tuple[tuple[int, ...], int]:
    """Weights of a pure cycle in canonical traversal order, plus the product
    of the edge signs.

    The traversal starts at the lexicographically smallest vertex and moves
    toward its smaller-named neighbor, so the output is deterministic (any
    rotation is conjugate).
    """
    n = len(g.vertices)
    if not is_pure_cycle(g):
        raise DomainError("not-a-cycle", "graph is not a single cycle")
    adj: dict[str, list[str]] = {name: [] for name in g.names}
    for u, v, _ in g.edges:
        if u == v:
            adj[u].extend([u, u])
        else:
            adj[u].append(v)
            adj[v].append(u)

    start = min(g.names)
    order = [start]
    if n > 1:
        prev, cur = start, min(adj[start])
        while cur != start:
            order.append(cur)
            nbs = adj[cur]
            nxt = nbs[1] if nbs[0] == prev else nbs[0]
            prev, cur = cur, nxt

    weights = {name: w for name, w in g.vertices}
    sign = 1
    for _, _, s in g.edges:
        sign *= s
    return tuple(weights[name] for name in order), sign


def cycle_monodromy(g: PlumbingGraph) -> tuple[SL2Element, int]:
    """Monodromy of a pure cycle graph: the product of T^{w_i} S over the
    cycle traversal, with the product of edge signs reported separately."""
    weights, sign = cycle_traversal(g)
    m = SL2Element.identity()
    for w in weights:
        m = m @ SL2Element(-w, 1, -1, 0)
    return m, sign


def _fresh_name(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


def join(g1: PlumbingGraph, v1: str, g2: PlumbingGraph, v2: str) -> PlumbingGraph:
    """Join two plumbing trees by identifying ``v1`` and ``v2``; the merged
    vertex takes the sum of the two weights.  Vertices of ``g2`` that clash
    with names in ``g1`` are renamed by appending primes."""
    if not g1.is_tree() or not g2.is_tree():
        raise DomainError("non-tree", "join needs two plumbing trees")
    g1.weight(v1)
    w2 = g2.weight(v2)

    taken = set(g1.names)
    rename: dict[str, str] = {}
    for name, _ in g2.vertices:
        if name == v2:
            rename[name] = v1
            continue
        fresh = _fresh_name(name, taken)
        rename[name] = fresh
        taken.add(fresh)

    vertices = [
        (n, w + w2) if n == v1 else (n, w) for n, w in g1.vertices
    ]
    vertices.extend((rename[n], w) for n, w in g2.vertices if n != v2)
    edges = list(g1.edges)
    edges.extend((rename[u], rename[v], s) for u, v, s in g2.edges)
    return PlumbingGraph(tuple(vertices), tuple(edges))


def _tree_path_edges(g: PlumbingGraph, src: str, dst: str) -> list[int]:
    """Edge indices along the unique tree path from ``src`` to ``dst``,
    ordered starting at ``src``."""
    adj: dict[str, list[tuple[str, int]]] = {n: [] for n in g.names}
    for idx, (u, v, _) in enumerate(g.edges):
        adj[u].append((v, idx))
        adj[v].append((u, idx))
    parent: dict[str, tuple[str, int]] = {}
    seen = {src}
    queue = deque([src])
    while queue:
        cur = queue.popleft()
        if cur == dst:
            break
        for nb, idx in adj[cur]:
            if nb not in seen:
                seen.add(nb)
                parent[nb] = (cur, idx)
                queue.append(nb)
    path: list[int] = []
    cur = dst
    while cur != src:
        prev, idx = parent[cur]
        path.append(idx)
        cur = prev
    path.reverse()
    return path


def self_join(g: PlumbingGraph, v1: str, v2: str, sign: int) -> PlumbingGraph:
    """Identify two distinct vertices of a tree, summing their weights.

    The former tree path between them becomes the unique cycle; its edges are
    normalized to all-positive, with the edge at the ``v2`` end turned
    negative when ``sign`` is -1.  If the vertices were adjacent, their edge
    becomes a self-loop carrying ``sign``.
    """
    if sign not in (1, -1):
        raise DomainError("bad-sign", "self-join sign must be +1 or -1")
    if v1 == v2:
        raise DomainError("same-vertex", "self-join needs two distinct vertices")
    if not g.is_tree():
        raise DomainError("non-tree", "self-join needs a plumbing tree")
    w1, w2 = g.weight(v1), g.weight(v2)

    path = _tree_path_edges(g, v2, v1)
    edges = list(g.edges)
    for rank, idx in enumerate(path):
        u, v, _ = edges[idx]
        edges[idx] = (u, v, sign if rank == 0 else 1)

    vertices = tuple(
        (n, w1 + w2) if n == v1 else (n, w) for n, w in g.vertices if n != v2
    )
    remapped = tuple(
        (v1 if u == v2 else u, v1 if v == v2 else v, s) for u, v, s in edges
    )
    return PlumbingGraph(vertices, remapped)


@dataclass(frozen=True)
class JoinHypotheses:
    """Homology-level hypotheses for transferring a bounding certificate
    through a join: the boundary must look like S^1 x S^2 integrally, and the
    complement of the distinguished vertex must have rational-sphere
    boundary on every component."""

    boundary_is_s1xs2: bool
    complement_is_qs3: bool

    @property
    def all_pass(self) -> bool:
        return self.boundary_is_s1xs2 and self.complement_is_qs3


def check_join_hypotheses(g: PlumbingGraph, v: str) -> JoinHypotheses:
    if not g.is_tree():
        raise DomainError("non-tree", "hypothesis check needs a plumbing tree")
    g.weight(v)
    whole = boundary_homology(g)
    boundary_ok = whole == AbelianGroupDesc(1, ())

    rest_vertices = tuple((n, w) for n, w in g.vertices if n != v)
    rest_edges = tuple((u, vv, s) for u, vv, s in g.edges if u != v and vv != v)
    rest = PlumbingGraph(rest_vertices, rest_edges)
    complement_ok = boundary_homology(rest).free_rank == 0
    return JoinHypotheses(boundary_ok, complement_ok)


def canonical_key(g: PlumbingGraph) -> str:
    """Deterministic value key: vertices renamed by a sorted breadth-first
    traversal, then vertices and edges rendered in canonical order."""
    adj: dict[str, list[str]] = {n: [] for n in g.names}
    for u, v, _ in g.edges:
        if u != v:
            adj[u].append(v)
            adj[v].append(u)
    new_id: dict[str, int] = {}
    for start in sorted(g.names):
        if start in new_id:
            continue
        new_id[start] = len(new_id)
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for nb in sorted(adj[cur]):
                if nb not in new_id:
                    new_id[nb] = len(new_id)
                    queue.append(nb)
    weights = {name: w for name, w in g.vertices}
    by_id = sorted(g.names, key=lambda n: new_id[n])
    vparts = ",".join(f"v{new_id[n]}:{weights[n]}" for n in by_id)
    eparts = ",".join(
        sorted(
            "v{}-v{}:{}".format(
                min(new_id[u], new_id[v]),
                max(new_id[u], new_id[v]),
                "+" if s > 0 else "-",
            )
            for u, v, s in g.edges
        )
    )
    return f"{vparts}|{eparts}" if eparts else vparts
