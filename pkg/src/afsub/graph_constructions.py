"""Sequence-subdivisions of general graphs and their discriminating colourings.

A bipartite graph whose edges are ranked white-endpoint-major and given
3 * t_rank division vertices apiece, with the division paths cut into
thirds X / Y / Z anchored at the white and black ends, supports colourings
whose restriction structure rules out anagrams.  colour_14 does this with a
doubling sequence and 14 colours; colour_8 squeezes the palette to 8 with a
faster-growing sequence calibrated to symbol densities of anagram-free
words; colour_merged splits the edges into k groups to trade division
counts against palette size (2 + 12k colours).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph_model import (
    BaseGraph,
    ColouredSubdivision,
    OneSubdivision,
    SubdividedGraph,
    coloured_subdivision,
    one_subdivision,
    subdivide,
)
from .words import keranen_symbols

BLACK_COLOUR = 0
WHITE_COLOUR = 1


def doubling_sequence(m: int) -> tuple[int, ...]:
    """(1, 2, 4, ..., 2^(m-1))."""
    if m < 1:
        raise ValueError("need at least one term")
    return tuple(1 << i for i in range(m))


def density_sequence(m: int) -> tuple[int, ...]:
    """t_1 = 8, t_n = 15 + floor(25/3 * sum of earlier terms), exact integers.

    Grows so that even the sparsest admissible occurrence count of a
    dedicated colour in one third of edge n beats the densest possible
    total over all earlier edges; satisfies t_n <= 15 * (1 + 75/9)^(n-1).
    """
    if m < 1:
        raise ValueError("need at least one term")
    ts = [8]
    while len(ts) < m:
        ts.append(15 + (25 * sum(ts)) // 3)
    return tuple(ts)


def density_sequence_margin(n: int) -> Fraction:
    """Exact value of t_n/15 - (5/9) * sum of the first n-1 terms."""
    ts = density_sequence(n)
    return Fraction(ts[-1], 15) - Fraction(5, 9) * sum(ts[:-1])


@dataclass(frozen=True)
class SequenceSubdivisionLabels:
    """Vertex and edge rankings of a sequence-subdivision.

    vertex_rank is a bijection onto 1..n with every white vertex ranked
    above every black vertex; edge_rank orders edges by white-endpoint rank,
    then black-endpoint rank; thirds[i] holds the X, Y, Z division-vertex
    tuples of edge i, each ordered away from the white end.
    """

    vertex_rank: tuple[int, ...]
    edge_rank: tuple[int, ...]
    bipartition: tuple[int, ...]  # 0 black, 1 white
    thirds: tuple[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]], ...]


def build_sequence_subdivision(
    g: BaseGraph, bipartition: Sequence[int], t: Sequence[int]
) -> tuple[SubdividedGraph, SequenceSubdivisionLabels]:
    """Subdivide edge e of a properly 2-coloured graph 3 * t[rank(e) - 1] times.

    Black vertices take ranks 1..#black in id order, whites the rest; edge
    ranks follow (white rank, black rank).  Each division path is split into
    consecutive thirds with X adjacent to the white end and Z to the black.
    """
    bipartition = tuple(bipartition)
    if len(bipartition) != g.vertex_count or any(b not in (0, 1) for b in bipartition):
        raise ValueError("bipartition must assign 0 (black) or 1 (white) to every vertex")
    for u, v in g.edges:
        if bipartition[u] == bipartition[v]:
            raise ValueError(f"edge ({u}, {v}) is monochromatic: graph not properly 2-coloured")
    m = len(g.edges)
    if len(t) < m:
        raise ValueError(f"sequence has {len(t)} terms but {m} edges need ranks")
    if any(x < 1 for x in t[:m]):
        raise ValueError("sequence terms must be positive")

    blacks = [v for v in range(g.vertex_count) if bipartition[v] == 0]
    whites = [v for v in range(g.vertex_count) if bipartition[v] == 1]
    rank = [0] * g.vertex_count
    for i, v in enumerate(blacks, start=1):
        rank[v] = i
    for i, v in enumerate(whites, start=len(blacks) + 1):
        rank[v] = i

    def white_end(e: tuple[int, int]) -> int:
        return e[0] if bipartition[e[0]] == 1 else e[1]

    def black_end(e: tuple[int, int]) -> int:
        return e[0] if bipartition[e[0]] == 0 else e[1]

    order = sorted(range(m), key=lambda i: (rank[white_end(g.edges[i])], rank[black_end(g.edges[i])]))
    edge_rank = [0] * m
    for r, i in enumerate(order, start=1):
        edge_rank[i] = r

    counts = [3 * t[edge_rank[i] - 1] for i in range(m)]
    s = subdivide(g, counts)

    thirds = []
    for i, (u, v) in enumerate(g.edges):
        path = s.division_paths[i]
        oriented = path if bipartition[u] == 1 else path[::-1]
        ti = t[edge_rank[i] - 1]
        thirds.append((oriented[:ti], oriented[ti : 2 * ti], oriented[2 * ti :]))

    labels = SequenceSubdivisionLabels(tuple(rank), tuple(edge_rank), bipartition, tuple(thirds))
    return s, labels


def oriented_division_path(s: SubdividedGraph, labels: SequenceSubdivisionLabels, i: int) -> tuple[int, ...]:
    """Division path of edge i ordered from its white end."""
    u, _v = s.base.edges[i]
    path = s.division_paths[i]
    return path if labels.bipartition[u] == 1 else path[::-1]


@dataclass(frozen=True)
class SequenceConstruction:
    """A coloured sequence-subdivision together with its labelling."""

    coloured: ColouredSubdivision
    labels: SequenceSubdivisionLabels
    source: BaseGraph
    one_sub: OneSubdivision


def _x_block(offset: int) -> tuple[int, ...]:
    return tuple(range(2 + offset, 6 + offset))


def _y_block(offset: int) -> tuple[int, ...]:
    return tuple(range(6 + offset, 10 + offset))


def _z_block(offset: int) -> tuple[int, ...]:
    return tuple(range(10 + offset, 14 + offset))


def colour_14(g_prime: BaseGraph) -> SequenceConstruction:
    """14-colour anagram-free subdivision of an arbitrary graph.

    The 1-subdivision of the input is bipartite; its edges get the doubling
    sequence, and each third family X / Y / Z is coloured path-by-path with
    fresh prefixes of the anagram-free 4-symbol word over its own 4-colour
    block.  The largest division count realised is 3 * 2^(2|E| - 1).
    """
    if not g_prime.edges:
        raise ValueError("need at least one edge")
    one = one_subdivision(g_prime)
    m = len(one.graph.edges)
    t = doubling_sequence(m)
    s, labels = build_sequence_subdivision(one.graph, one.colour_class, t)

    colours = [0] * s.vertex_count
    for v in range(one.graph.vertex_count):
        colours[v] = WHITE_COLOUR if one.colour_class[v] == 1 else BLACK_COLOUR
    blocks = (_x_block(0), _y_block(0), _z_block(0))
    for i in range(m):
        for third, block in zip(labels.thirds[i], blocks):
            word = keranen_symbols(len(third))
            for dv, sym in zip(third, word):
                colours[dv] = block[sym]

    e_src = len(g_prime.edges)
    cs = coloured_subdivision(
        s,
        colours,
        {
            "construction": "graph14",
            "source_edges": e_src,
            "division_bound": 3 * 2 ** (2 * e_src - 1),
            "division_bound_alt": 3 * 2 ** (2 * e_src - 1) - 1,
        },
    )
    return SequenceConstruction(cs, labels, g_prime, one)


def colour_8(g_prime: BaseGraph) -> SequenceConstruction:
    """8-colour anagram-free subdivision of an arbitrary graph.

    Like colour_14 but over the density-calibrated sequence: each edge's
    whole division path is coloured by a fresh prefix of the anagram-free
    4-symbol word, with the fourth symbol split into three colours by
    X / Y / Z membership.  Palette: black, white, and colours 2..7.
    """
    if not g_prime.edges:
        raise ValueError("need at least one edge")
    one = one_subdivision(g_prime)
    m = len(one.graph.edges)
    t = density_sequence(m)
    s, labels = build_sequence_subdivision(one.graph, one.colour_class, t)

    colours = [0] * s.vertex_count
    for v in range(one.graph.vertex_count):
        colours[v] = WHITE_COLOUR if one.colour_class[v] == 1 else BLACK_COLOUR
    for i in range(m):
        path = oriented_division_path(s, labels, i)
        ti = len(path) // 3
        word = keranen_symbols(len(path))
        for j, (dv, sym) in enumerate(zip(path, word)):
            if sym < 3:
                colours[dv] = 2 + sym
            else:
                colours[dv] = 5 + j // ti  # 5 in X, 6 in Y, 7 in Z

    cs = coloured_subdivision(
        s,
        colours,
        {"construction": "graph8", "source_edges": len(g_prime.edges)},
    )
    return SequenceConstruction(cs, labels, g_prime, one)


@dataclass(frozen=True)
class MergedConstruction:
    """Edge-partitioned merge of 14-colour constructions sharing black/white."""

    coloured: ColouredSubdivision
    groups: tuple[tuple[int, ...], ...]  # source-edge indices per group
    group_edge_indices: tuple[tuple[int, ...], ...]  # subdivided-edge indices per group
    source: BaseGraph
    one_sub: OneSubdivision


def colour_merged(g: BaseGraph, k: int) -> MergedConstruction:
    """(2 + 12k)-colour subdivision: split the edges into k near-equal groups.

    Each group is treated as its own doubling-sequence construction over the
    shared 1-subdivision, with black and white common to all groups and
    twelve fresh division colours per group, so larger k caps the division
    count at 3 * 4^ceil(|E|/k) per source edge.
    """
    m = len(g.edges)
    if not 1 <= k <= m:
        raise ValueError("need 1 <= k <= number of edges")
    one = one_subdivision(g)

    sizes = [m // k + (1 if j < m % k else 0) for j in range(k)]
    groups = []
    at = 0
    for size in sizes:
        groups.append(tuple(range(at, at + size)))
        at += size

    counts = [0] * len(one.graph.edges)
    group_edge_indices = []
    colour_jobs = []  # (group offset, edge ranks, sub-edge indices)
    for j, group in enumerate(groups):
        sub_edges = []
        for i in group:
            sub_edges.extend((2 * i, 2 * i + 1))
        verts = sorted({w for ei in sub_edges for w in one.graph.edges[ei]})
        blacks = [v for v in verts if one.colour_class[v] == 0]
        whites = [v for v in verts if one.colour_class[v] == 1]
        rank = {}
        for r, v in enumerate(blacks, start=1):
            rank[v] = r
        for r, v in enumerate(whites, start=len(blacks) + 1):
            rank[v] = r

        def ends(ei):
            a, b = one.graph.edges[ei]
            return (a, b) if one.colour_class[a] == 1 else (b, a)  # (white, black)

        order = sorted(sub_edges, key=lambda ei: (rank[ends(ei)[0]], rank[ends(ei)[1]]))
        t = doubling_sequence(len(sub_edges))
        edge_rank = {ei: r for r, ei in enumerate(order, start=1)}
        for ei in sub_edges:
            counts[ei] = 3 * t[edge_rank[ei] - 1]
        colour_jobs.append((12 * j, edge_rank, sub_edges))
        group_edge_indices.append(tuple(sub_edges))

    s = subdivide(one.graph, counts)

    colours = [0] * s.vertex_count
    for v in range(one.graph.vertex_count):
        colours[v] = WHITE_COLOUR if one.colour_class[v] == 1 else BLACK_COLOUR
    for offset, edge_rank, sub_edges in colour_jobs:
        blocks = (_x_block(offset), _y_block(offset), _z_block(offset))
        for ei in sub_edges:
            u, v = one.graph.edges[ei]
            path = s.division_paths[ei]
            oriented = path if one.colour_class[u] == 1 else path[::-1]
            ti = len(oriented) // 3
            thirds = (oriented[:ti], oriented[ti : 2 * ti], oriented[2 * ti :])
            for third, block in zip(thirds, blocks):
                word = keranen_symbols(len(third))
                for dv, sym in zip(third, word):
                    colours[dv] = block[sym]

    cs = coloured_subdivision(
        s,
        colours,
        {
            "construction": "graph-merged",
            "source_edges": m,
            "k": k,
            "per_edge_division_bound": 3 * 4 ** (-(-m // k)),
        },
    )
    return MergedConstruction(cs, tuple(groups), tuple(group_edge_indices), g, one)
