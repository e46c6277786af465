"""Anagram-free colourings of tree subdivisions.

build_binary_tree_8: subdivides a binary tree so that a 2-label edge
colouring plus one anagram-free 4-symbol word yields an 8-colour
anagram-free colouring.  build_dary_tree_10 does the complete d-ary case
with 10 colours via a red/green split of each edge's division path.
build_dary_banded trades division count against palette size by cutting the
tree into height bands, and extend_plus_4 recolours any subdivision of an
already anagram-free graph with four extra colours.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .graph_model import (
    ColouredGraph,
    ColouredSubdivision,
    RootedTree,
    SubdividedGraph,
    complete_dary_tree,
    coloured_subdivision,
    subdivide,
    tree_to_base_graph,
)
from .words import keranen_symbols

BLACK, WHITE, RED, GREEN = "black", "white", "red", "green"


class EmbeddingError(ValueError):
    pass


@dataclass(frozen=True)
class LabelledTreeSubdivision:
    """A coloured tree subdivision plus the labelling that produced it."""

    coloured: ColouredSubdivision
    vertex_labels: tuple
    edge_labels: tuple
    tree: RootedTree


def _trivial_vertex(tree: RootedTree, construction: str, **params) -> LabelledTreeSubdivision:
    base = tree_to_base_graph(tree)
    s = subdivide(base, [])
    cs = coloured_subdivision(s, (0,), {"construction": construction, "height": 0, **params})
    return LabelledTreeSubdivision(cs, (1,), (), tree)


def _tree_edges(tree: RootedTree) -> list[tuple[int, int]]:
    """Edge list aligned with tree_to_base_graph's edge order."""
    return [(v, c) for v in range(tree.vertex_count) for c in tree.children[v]]


def build_binary_tree_8(tree: RootedTree) -> LabelledTreeSubdivision:
    """8-colour anagram-free subdivision of a binary tree.

    Edges at depth x from the root get 3^(h-x-1) - 1 division vertices.
    Sibling edges under a branch vertex are labelled 1 and 2 (single-child
    edges get label 1), the root is labelled 1, and every other vertex
    inherits its parent edge's label.  A vertex with label L whose root path
    contains x vertices of label L (itself included) is coloured (L, w_x)
    with w the canonical anagram-free 4-symbol word.
    """
    for v in range(tree.vertex_count):
        if len(tree.children[v]) > 2:
            raise ValueError(f"vertex {v} has more than two children")
    h = tree.height
    if h == 0:
        return _trivial_vertex(tree, "binary-tree-8")

    edges = _tree_edges(tree)
    eidx = {e: i for i, e in enumerate(edges)}
    edge_label = {}
    for v in range(tree.vertex_count):
        kids = tree.children[v]
        for i, c in enumerate(kids):
            edge_label[(v, c)] = i + 1 if len(kids) == 2 else 1

    counts = [3 ** (h - tree.depth[u] - 1) - 1 for (u, _c) in edges]
    base = tree_to_base_graph(tree)
    s = subdivide(base, counts)

    longest = max(
        sum(counts[eidx[e]] + 1 for e in zip(tree.root_path(leaf), tree.root_path(leaf)[1:])) + 1
        for leaf in tree.leaves()
    )
    word = keranen_symbols(longest)

    n = s.vertex_count
    labels: list = [None] * n
    colours = [0] * n
    labels[tree.root] = 1
    colours[tree.root] = _enc8(1, word[0])

    # depth-first walk of the subdivided tree carrying per-label counts
    stack: list[tuple[int, int, int]] = [(tree.root, 1, 0)]  # (vertex, count_1, count_2)
    while stack:
        v, n1, n2 = stack.pop()
        for child in tree.children[v]:
            ei = eidx[(v, child)]
            lab = edge_label[(v, child)]
            c1, c2 = n1, n2
            for dv in s.division_paths[ei]:
                if lab == 1:
                    c1 += 1
                    x = c1
                else:
                    c2 += 1
                    x = c2
                labels[dv] = lab
                colours[dv] = _enc8(lab, word[x - 1])
            if lab == 1:
                c1 += 1
                x = c1
            else:
                c2 += 1
                x = c2
            labels[child] = lab
            colours[child] = _enc8(lab, word[x - 1])
            stack.append((child, c1, c2))

    cs = coloured_subdivision(
        s,
        colours,
        {
            "construction": "binary-tree-8",
            "height": h,
            "colour_legend": {str(_enc8(l, w)): [l, w + 1] for l in (1, 2) for w in range(4)},
        },
    )
    return LabelledTreeSubdivision(cs, tuple(labels), tuple(edge_label[e] for e in edges), tree)


def _enc8(label: int, symbol: int) -> int:
    return 4 * (label - 1) + symbol


def subdivision_step(d: int, x: int, y: int) -> int:
    """Half the division count of a depth-(h-x) edge with sibling label y."""
    return y * (d + 1) ** (x - 1)


def build_dary_tree_10(d: int, h: int) -> LabelledTreeSubdivision:
    """10-colour anagram-free subdivision of the complete d-ary tree.

    Sibling edges get labels 1..d; the edge at depth z with label y gets
    2 * y * (d+1)^(h-z-1) division vertices.  Originals carry a proper black
    and white 2-colouring.  The half of each division path nearer the parent
    is red, the other half green, and a red vertex whose root path holds i
    red vertices is coloured (w_i, red); green likewise.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    if h < 0:
        raise ValueError("height must be non-negative")
    tree = complete_dary_tree(d, h)
    if h == 0:
        return _trivial_vertex(tree, "dary-tree-10", d=d)

    edges = _tree_edges(tree)
    eidx = {e: i for i, e in enumerate(edges)}
    edge_label = {}
    for v in range(tree.vertex_count):
        for i, c in enumerate(tree.children[v]):
            edge_label[(v, c)] = i + 1

    counts = [2 * subdivision_step(d, h - tree.depth[u], edge_label[(u, c)]) for (u, c) in edges]
    base = tree_to_base_graph(tree)
    s = subdivide(base, counts)

    longest = (d + 1) ** h  # red vertices on a root-leaf path cannot exceed this
    word = keranen_symbols(longest)

    n = s.vertex_count
    labels: list = [None] * n
    colours = [0] * n

    def original_colour(v: int) -> tuple[str, int]:
        side = WHITE if tree.depth[v] % 2 == 0 else BLACK
        return side, (1 if side == WHITE else 0)

    lab, col = original_colour(tree.root)
    labels[tree.root] = lab
    colours[tree.root] = col

    stack: list[tuple[int, int, int]] = [(tree.root, 0, 0)]  # (vertex, red_count, green_count)
    while stack:
        v, nr, ng = stack.pop()
        for child in tree.children[v]:
            ei = eidx[(v, child)]
            path = s.division_paths[ei]
            t = len(path) // 2
            r, g = nr, ng
            for j, dv in enumerate(path):
                if j < t:
                    r += 1
                    labels[dv] = RED
                    colours[dv] = 2 + word[r - 1]
                else:
                    g += 1
                    labels[dv] = GREEN
                    colours[dv] = 6 + word[g - 1]
            lab, col = original_colour(child)
            labels[child] = lab
            colours[child] = col
            stack.append((child, r, g))

    legend = {"0": [BLACK], "1": [WHITE]}
    legend.update({str(2 + w): [RED, w + 1] for w in range(4)})
    legend.update({str(6 + w): [GREEN, w + 1] for w in range(4)})
    cs = coloured_subdivision(
        s,
        colours,
        {"construction": "dary-tree-10", "d": d, "height": h, "colour_legend": legend},
    )
    return LabelledTreeSubdivision(cs, tuple(labels), tuple(edge_label[e] for e in edges), tree)


def embed_by_child_order(t: RootedTree, host: RootedTree) -> dict[int, int]:
    """Map t's vertices into host root-to-root, i-th child to i-th child."""
    image = {t.root: host.root}
    stack = [t.root]
    while stack:
        v = stack.pop()
        hv = image[v]
        kids = t.children[v]
        if len(kids) > len(host.children[hv]):
            raise EmbeddingError(
                f"vertex {v} has {len(kids)} children but its image offers "
                f"{len(host.children[hv])}"
            )
        for i, c in enumerate(kids):
            image[c] = host.children[hv][i]
            stack.append(c)
    return image


def prune_to_subtree(full: LabelledTreeSubdivision, t: RootedTree) -> LabelledTreeSubdivision:
    """Restrict a complete-tree construction to an embedded subtree.

    The colouring of a subgraph of an anagram-free colouring stays
    anagram-free, so the result inherits the full construction's guarantee.
    """
    prov = full.coloured.provenance
    image = embed_by_child_order(t, full.tree)

    full_edges = _tree_edges(full.tree)
    full_index = {e: i for i, e in enumerate(full_edges)}

    edges = _tree_edges(t)
    counts = []
    for u, c in edges:
        fi = full_index[(image[u], image[c])]
        counts.append(len(full.coloured.graph.division_paths[fi]))
    base = tree_to_base_graph(t)
    s = subdivide(base, counts)

    n = s.vertex_count
    colours = [0] * n
    labels: list = [None] * n
    for v in range(t.vertex_count):
        colours[v] = full.coloured.colour[image[v]]
        labels[v] = full.vertex_labels[image[v]]
    edge_labels = []
    for i, (u, c) in enumerate(edges):
        fi = full_index[(image[u], image[c])]
        edge_labels.append(full.edge_labels[fi])
        for dv, fdv in zip(s.division_paths[i], full.coloured.graph.division_paths[fi]):
            colours[dv] = full.coloured.colour[fdv]
            labels[dv] = full.vertex_labels[fdv]

    cs = coloured_subdivision(
        s,
        colours,
        {**prov, "construction": prov["construction"] + "-pruned", "pruned_vertices": t.vertex_count},
    )
    return LabelledTreeSubdivision(cs, tuple(labels), tuple(edge_labels), t)


def band_parameters(d: int, hprime: int, k: int) -> tuple[int, int]:
    """Number of bands x and band height for the banded construction.

    x is the least integer with (2d)^x * (d+1)^hprime <= k^x, i.e. the
    ceiling of hprime / log_{d+1}(k / 2d), computed in exact integers.
    """
    if k <= 2 * d:
        raise ValueError("need k > 2d")
    lhs_base = 2 * d
    grow = (d + 1) ** hprime
    x = 1
    while lhs_base**x * grow > k**x:
        x += 1
    band = -(-hprime // x)
    return x, band


@dataclass(frozen=True)
class BandedConstruction:
    coloured: ColouredSubdivision
    component_of_vertex: tuple[int, ...]  # component index per original vertex
    component_depth_index: tuple[int, ...]  # band index per component
    x: int
    band_height: int


def build_dary_banded(d: int, hprime: int, k: int) -> BandedConstruction:
    """(<= k)-subdivision of the complete d-ary tree with at most 10x colours.

    Cuts the edges at depths i * ceil(hprime/x) - 1 (the i = 0 cut is the
    vacuous depth -1), colours each remaining component with the 10-colour
    construction on its own band's colour block, and reinstates the cut
    edges unsubdivided.
    """
    if d < 2 or hprime < 1:
        raise ValueError("need d >= 2 and hprime >= 1")
    x, band = band_parameters(d, hprime, k)
    cut_depths = {i * band - 1 for i in range(x)}

    tree = complete_dary_tree(d, hprime)
    edges = _tree_edges(tree)
    is_cut = [tree.depth[u] in cut_depths for (u, _c) in edges]

    comp = [-1] * tree.vertex_count
    comp_roots: list[int] = []
    for v in range(tree.vertex_count):  # ids are BFS order, parents first
        p = tree.parent[v]
        if p is None or tree.depth[p] in cut_depths:
            comp[v] = len(comp_roots)
            comp_roots.append(v)
        else:
            comp[v] = comp[p]

    comp_members: list[list[int]] = [[] for _ in comp_roots]
    for v in range(tree.vertex_count):
        comp_members[comp[v]].append(v)
    comp_height = [
        max(tree.depth[v] for v in members) - tree.depth[comp_roots[ci]]
        for ci, members in enumerate(comp_members)
    ]
    depth_index = []
    for ci, r in enumerate(comp_roots):
        i = tree.depth[r] // band
        assert tree.depth[r] == i * band
        depth_index.append(i)

    # per-component construction, mapped back by parallel traversal
    counts = [0] * len(edges)
    edge_index = {e: i for i, e in enumerate(edges)}
    colour_of: dict[int, int] = {}
    division_colours: dict[int, list[int]] = {}
    for ci, r in enumerate(comp_roots):
        offset = 10 * depth_index[ci]
        hc = comp_height[ci]
        if hc == 0:
            colour_of[r] = offset
            continue
        local = build_dary_tree_10(d, hc)
        mapping = {local.tree.root: r}
        order = [local.tree.root]
        for lv in order:
            gv = mapping[lv]
            for i, lc in enumerate(local.tree.children[lv]):
                gc = tree.children[gv][i]
                mapping[lc] = gc
                order.append(lc)
        for lv, gv in mapping.items():
            colour_of[gv] = offset + local.coloured.colour[lv]
        local_edges = _tree_edges(local.tree)
        for li, (lu, lc) in enumerate(local_edges):
            gi = edge_index[(mapping[lu], mapping[lc])]
            path = local.coloured.graph.division_paths[li]
            counts[gi] = len(path)
            division_colours[gi] = [offset + local.coloured.colour[dv] for dv in path]

    base = tree_to_base_graph(tree)
    s = subdivide(base, counts)
    colours = [0] * s.vertex_count
    for v in range(tree.vertex_count):
        colours[v] = colour_of[v]
    for gi, path in enumerate(s.division_paths):
        if path:
            for dv, col in zip(path, division_colours[gi]):
                colours[dv] = col

    assert max(counts, default=0) <= k
    cs = coloured_subdivision(
        s,
        colours,
        {
            "construction": "dary-banded",
            "d": d,
            "height": hprime,
            "k": k,
            "bands": x,
            "band_height": band,
        },
    )
    return BandedConstruction(cs, tuple(comp), tuple(depth_index), x, band)


def extend_plus_4(
    base: ColouredGraph,
    s: SubdividedGraph,
    new_colours: Optional[Sequence[int]] = None,
) -> ColouredSubdivision:
    """Colour a subdivision of an anagram-free-coloured graph with 4 extra colours.

    Originals keep their colours; each edge's division path gets a fresh
    prefix of the canonical anagram-free 4-symbol word over four colours
    disjoint from the base palette.  The base colouring must itself be
    anagram-free for the result to be.
    """
    if s.base != base.graph:
        raise ValueError("subdivision does not match the coloured base graph")
    base_palette = set(base.colours)
    if new_colours is None:
        start = max(base_palette, default=-1) + 1
        new_colours = tuple(range(start, start + 4))
    else:
        new_colours = tuple(new_colours)
        if len(new_colours) != 4 or len(set(new_colours)) != 4:
            raise ValueError("exactly four distinct new colours required")
        if set(new_colours) & base_palette:
            raise ValueError("palette collision: new colours overlap the base palette")

    colours = list(base.colours) + [0] * (s.vertex_count - base.graph.vertex_count)
    for path in s.division_paths:
        word = keranen_symbols(len(path))
        for dv, sym in zip(path, word):
            colours[dv] = new_colours[sym]
    return coloured_subdivision(
        s,
        colours,
        {"construction": "extend-plus-4", "new_colours": list(new_colours)},
    )
