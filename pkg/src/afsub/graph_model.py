"""Base graphs, rooted trees, subdivisions, and simple-path enumeration.

Vertex ids are dense non-negative integers.  Subdividing assigns ids
deterministically: original vertices keep their ids, division vertices are
numbered sequentially per edge in edge-list order, ordered along the path
from the stored u-endpoint to the stored v-endpoint.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence


@dataclass(frozen=True)
class BaseGraph:
    """Simple undirected graph: no loops, no duplicate edges."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        seen = set()
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) outside vertex range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "edges", tuple(norm))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in adj)


def complete_graph(n: int) -> BaseGraph:
    return BaseGraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def path_graph(n: int) -> BaseGraph:
    return BaseGraph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> BaseGraph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return BaseGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


@dataclass(frozen=True)
class RootedTree:
    """Rooted tree with ordered child lists; parent[root] is None."""

    parent: tuple[Optional[int], ...]
    children: tuple[tuple[int, ...], ...]
    root: int

    def __post_init__(self):
        n = len(self.parent)
        if len(self.children) != n:
            raise ValueError("parent/children length mismatch")
        if not 0 <= self.root < n or self.parent[self.root] is not None:
            raise ValueError("root must have no parent")
        reached = 0
        stack = [self.root]
        seen = [False] * n
        seen[self.root] = True
        while stack:
            v = stack.pop()
            reached += 1
            for c in self.children[v]:
                if seen[c] or self.parent[c] != v:
                    raise ValueError("children inconsistent with parent map")
                seen[c] = True
                stack.append(c)
        if reached != n:
            raise ValueError("tree not connected")

    @property
    def vertex_count(self) -> int:
        return len(self.parent)

    @cached_property
    def depth(self) -> tuple[int, ...]:
        d = [0] * self.vertex_count
        stack = [self.root]
        while stack:
            v = stack.pop()
            for c in self.children[v]:
                d[c] = d[v] + 1
                stack.append(c)
        return tuple(d)

    @property
    def height(self) -> int:
        return max(self.depth)

    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.vertex_count) if not self.children[v])

    def root_path(self, v: int) -> list[int]:
        """Vertices from the root down to v, inclusive."""
        path = []
        cur: Optional[int] = v
        while cur is not None:
            path.append(cur)
            cur = self.parent[cur]
        path.reverse()
        return path


def tree_from_children(children: Sequence[Sequence[int]], root: int = 0) -> RootedTree:
    n = len(children)
    parent: list[Optional[int]] = [None] * n
    for v, cs in enumerate(children):
        for c in cs:
            parent[c] = v
    return RootedTree(tuple(parent), tuple(tuple(cs) for cs in children), root)


def complete_dary_tree(d: int, h: int) -> RootedTree:
    """Complete d-ary tree of height h with breadth-first vertex ids."""
    if d < 1 or h < 0:
        raise ValueError("need d >= 1 and h >= 0")
    n = h + 1 if d == 1 else (d ** (h + 1) - 1) // (d - 1)
    children: list[tuple[int, ...]] = []
    next_id = 1
    level = [0]
    for _ in range(h):
        new_level = []
        for _v in level:
            kids = tuple(range(next_id, next_id + d))
            next_id += d
            children.append(kids)
            new_level.extend(kids)
        level = new_level
    children.extend(() for _ in level)
    assert len(children) == n
    return tree_from_children(children)


def random_binary_tree(max_height: int, seed: int) -> RootedTree:
    """Seeded random binary tree of height between 1 and max_height."""
    if max_height < 1:
        raise ValueError("max_height must be >= 1")
    rng = random.Random(seed)
    children: list[list[int]] = [[]]
    depth = [0]
    frontier = [0]
    while frontier:
        v = frontier.pop(0)
        if depth[v] >= max_height:
            continue
        k = rng.choice((1, 2, 2)) if v == 0 else rng.choice((0, 0, 1, 2, 2))
        for _ in range(k):
            c = len(children)
            children.append([])
            depth.append(depth[v] + 1)
            children[v].append(c)
            frontier.append(c)
    return tree_from_children([tuple(cs) for cs in children])


def tree_to_base_graph(t: RootedTree) -> BaseGraph:
    """Edges listed parent-first in vertex-id order, children in child order."""
    edges = []
    for v in range(t.vertex_count):
        for c in t.children[v]:
            edges.append((v, c))
    return BaseGraph(t.vertex_count, tuple(edges))


@dataclass(frozen=True)
class SubdividedGraph:
    """A base graph plus, per base edge, its ordered division-vertex path."""

    base: BaseGraph
    division_paths: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.division_paths) != len(self.base.edges):
            raise ValueError("one division path per base edge required")
        next_id = self.base.vertex_count
        for path in self.division_paths:
            for v in path:
                if v != next_id:
                    raise ValueError("division vertex ids must be sequential per edge")
                next_id += 1

    @property
    def vertex_count(self) -> int:
        return self.base.vertex_count + sum(len(p) for p in self.division_paths)

    def is_original(self, v: int) -> bool:
        return v < self.base.vertex_count

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]

        def link(a: int, b: int) -> None:
            adj[a].append(b)
            adj[b].append(a)

        for (u, v), path in zip(self.base.edges, self.division_paths):
            chain = [u, *path, v]
            for a, b in zip(chain, chain[1:]):
                link(a, b)
        return tuple(tuple(sorted(ns)) for ns in adj)

    @cached_property
    def division_edge_index(self) -> dict[int, int]:
        """Maps each division vertex to the index of its base edge."""
        out = {}
        for i, path in enumerate(self.division_paths):
            for v in path:
                out[v] = i
        return out

    def flatten(self) -> BaseGraph:
        """The subdivision as a plain graph on all vertices."""
        edges = []
        for (u, v), path in zip(self.base.edges, self.division_paths):
            chain = [u, *path, v]
            edges.extend(zip(chain, chain[1:]))
        return BaseGraph(self.vertex_count, tuple(edges))


def subdivide(g: BaseGraph, counts: Sequence[int]) -> SubdividedGraph:
    """Subdivide edge i exactly counts[i] times."""
    if len(counts) != len(g.edges):
        raise ValueError("counts must be given for every edge")
    if any(c < 0 for c in counts):
        raise ValueError("division counts must be non-negative")
    paths = []
    next_id = g.vertex_count
    for c in counts:
        paths.append(tuple(range(next_id, next_id + c)))
        next_id += c
    return SubdividedGraph(g, tuple(paths))


def k_subdivision(g: BaseGraph, k: int) -> SubdividedGraph:
    if k < 0:
        raise ValueError("k must be non-negative")
    return subdivide(g, [k] * len(g.edges))


def contracted(s: SubdividedGraph) -> BaseGraph:
    """Recover the base graph from the flat adjacency by contracting the
    degree-2 division chains.  Used to cross-check subdivide."""
    adj = s.adjacency
    n0 = s.base.vertex_count
    edges = set()
    for u in range(n0):
        for first in adj[u]:
            prev, cur = u, first
            while cur >= n0:
                nxt = [w for w in adj[cur] if w != prev]
                if len(nxt) != 1:
                    raise ValueError(f"division vertex {cur} does not have degree 2")
                prev, cur = cur, nxt[0]
            edges.add((min(u, cur), max(u, cur)))
    return BaseGraph(n0, tuple(sorted(edges)))


@dataclass(frozen=True)
class ColouredGraph:
    """A base graph with a total vertex colouring."""

    graph: BaseGraph
    colours: tuple[int, ...]

    def __post_init__(self):
        if len(self.colours) != self.graph.vertex_count:
            raise ValueError("colouring must be total")


@dataclass(frozen=True)
class ColouredSubdivision:
    """A subdivided graph with a total colouring and palette metadata."""

    graph: SubdividedGraph
    colour: tuple[int, ...]
    palette: tuple[int, ...]
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.colour) != self.graph.vertex_count:
            raise ValueError("colouring must be total")
        pal = set(self.palette)
        for v, c in enumerate(self.colour):
            if c not in pal:
                raise ValueError(f"vertex {v} coloured {c}, outside palette")

    @property
    def max_division_count(self) -> int:
        return max((len(p) for p in self.graph.division_paths), default=0)


def coloured_subdivision(graph: SubdividedGraph, colour: Sequence[int], provenance: dict) -> ColouredSubdivision:
    colour = tuple(colour)
    return ColouredSubdivision(graph, colour, tuple(sorted(set(colour))), provenance)


@dataclass(frozen=True)
class OneSubdivision:
    """1-subdivision flattened to a base graph, with its proper 2-colouring.

    colour_class is 0 (black) on original vertices and 1 (white) on the
    midpoint vertices; midpoint_of[i] is the midpoint of base edge i.
    """

    graph: BaseGraph
    colour_class: tuple[int, ...]
    midpoint_of: tuple[int, ...]


def one_subdivision(g: BaseGraph) -> OneSubdivision:
    s = k_subdivision(g, 1)
    mids = tuple(path[0] for path in s.division_paths)
    colour_class = tuple(0 if v < g.vertex_count else 1 for v in range(s.vertex_count))
    return OneSubdivision(s.flatten(), colour_class, mids)


def _adjacency_of(g) -> tuple[tuple[int, ...], ...]:
    if isinstance(g, BaseGraph):
        return g.adjacency
    if isinstance(g, SubdividedGraph):
        return g.adjacency
    raise TypeError(f"expected BaseGraph or SubdividedGraph, got {type(g)!r}")


def enumerate_simple_paths(g) -> Iterator[tuple[int, ...]]:
    """Every simple path with >= 1 vertex, once up to reversal, ordered
    lexicographically by (first endpoint, last endpoint, full sequence).

    Exponential in general; intended for test-scale graphs.
    """
    adj = _adjacency_of(g)
    n = len(adj)
    out: list[tuple[int, ...]] = [(v,) for v in range(n)]
    path: list[int] = []
    on_path = [False] * n

    def dfs(v: int) -> None:
        path.append(v)
        on_path[v] = True
        if len(path) >= 2:
            tup = tuple(path)
            if tup <= tup[::-1]:
                out.append(tup)
        for w in adj[v]:
            if not on_path[w]:
                dfs(w)
        on_path[v] = False
        path.pop()

    for start in range(n):
        dfs(start)
    out.sort(key=lambda p: (p[0], p[-1], p))
    return iter(out)


def _is_forest(adj) -> bool:
    n = len(adj)
    seen = [False] * n
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [(root, -1)]
        while stack:
            v, parent = stack.pop()
            for w in adj[v]:
                if w == parent:  # simple graph: at most one edge back up
                    continue
                if seen[w]:
                    return False
                seen[w] = True
                stack.append((w, v))
    return True


def enumerate_maximal_simple_paths(g, *, step_budget: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Simple paths that cannot be extended at either end, once up to
    reversal, in deterministic (first endpoint, sequence) order.

    step_budget, when given, caps the number of DFS extensions; exceeding it
    raises StepBudgetExceeded.  Every simple path is a contiguous window of
    some maximal path, so scanning windows of these covers all paths.
    In a forest maximal paths run leaf to leaf, so only leaves seed the DFS.
    """
    adj = _adjacency_of(g)
    n = len(adj)
    steps = 0
    path: list[int] = []
    on_path = [False] * n

    def enter(v: int, frames: list) -> None:
        nonlocal steps
        steps += 1
        if step_budget is not None and steps > step_budget:
            raise StepBudgetExceeded(steps)
        path.append(v)
        on_path[v] = True
        frames.append([v, iter(adj[v]), False])

    def walk(start: int):
        frames: list = []
        enter(start, frames)
        while frames:
            frame = frames[-1]
            descended = False
            for w in frame[1]:
                if not on_path[w]:
                    frame[2] = True
                    enter(w, frames)
                    descended = True
                    break
            if descended:
                continue
            if not frame[2]:  # dead end: check maximality at the start end too
                if all(on_path[w] for w in adj[path[0]]):
                    tup = tuple(path)
                    if tup <= tup[::-1]:
                        yield tup
            on_path[frame[0]] = False
            path.pop()
            frames.pop()

    if _is_forest(adj):
        starts: Iterable[int] = (v for v in range(n) if len(adj[v]) <= 1)
    else:
        starts = range(n)
    for start in starts:
        yield from walk(start)


class StepBudgetExceeded(Exception):
    def __init__(self, steps: int):
        super().__init__(f"path enumeration exceeded step budget at {steps} steps")
        self.steps = steps
