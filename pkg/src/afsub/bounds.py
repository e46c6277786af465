"""Closed-form bounds and constructive lower-bound witnesses.

kn_lower_bound gives the minimum division count a c-colourable anagram-free
subdivision of the complete graph must have; find_anagram_pigeonhole turns
a violation of that bound into a concrete anagram by grouping clique edges
by division-multiset.  extract_monochromatic_subtree and
find_anagram_undercoloured_tree do the analogous job for undercoloured
subdivided trees, and dary_two_sided evaluates both sides of the resulting
two-sided bound for complete d-ary trees.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .graph_model import (
    ColouredSubdivision,
    RootedTree,
    complete_graph,
    coloured_subdivision,
    subdivide,
)
from .verifier import Counterexample

_REL_TOL = 1e-9


class PreconditionError(ValueError):
    pass


class WitnessSearchFailed(RuntimeError):
    """A guaranteed witness could not be produced; indicates a build defect."""


def _ceil_tol(x: float) -> int:
    return math.ceil(x - _REL_TOL)


def kn_lower_bound(n: int, c: int) -> float:
    """(c! * (n/c - 1))^(1/c) - c, exact where the root is integral.

    Any anagram-free c-colouring of a (<= k)-subdivision of the complete
    graph on n vertices needs k at least this large.
    """
    if n < 1 or c < 1:
        raise ValueError("need n >= 1 and c >= 1")
    inner = Fraction(math.factorial(c)) * (Fraction(n, c) - 1)
    if inner < 0:
        raise ValueError("formula undefined for n < c (the bound is vacuous there)")
    if inner == 0:
        return float(-c)
    root = _exact_root(inner, c)
    if root is not None:
        return float(root - c)
    return float(inner) ** (1.0 / c) - c


def _exact_root(value: Fraction, c: int) -> Optional[Fraction]:
    num = round(value.numerator ** (1.0 / c))
    den = round(value.denominator ** (1.0 / c))
    for p in (num - 1, num, num + 1):
        for q in (den - 1, den, den + 1):
            if p >= 0 and q >= 1 and p**c == value.numerator and q**c == value.denominator:
                return Fraction(p, q)
    return None


def multiset_count(k: int, c: int) -> int:
    """Number of multisets of size at most k over c colours: C(k + c, c).

    Exact arbitrary-precision integer (no overflow possible).
    """
    if k < 0 or c < 1:
        raise ValueError("need k >= 0 and c >= 1")
    return math.comb(k + c, c)


def multiset_count_by_summation(k: int, c: int) -> int:
    """Independent summation form: sum over i <= k of C(i + c - 1, c - 1)."""
    if k < 0 or c < 1:
        raise ValueError("need k >= 0 and c >= 1")
    return sum(math.comb(i + c - 1, c - 1) for i in range(k + 1))


def _division_multiset_key(colours: Sequence[int], path: Sequence[int]) -> tuple:
    return tuple(sorted(Counter(colours[v] for v in path).items()))


def find_anagram_pigeonhole(s: ColouredSubdivision, c: int) -> Counterexample:
    """Anagram witness in an undersubdivided colouring of a complete graph.

    Picks a largest monochromatic original-vertex class, groups the clique
    edges inside it by the colour multiset of their division vertices, and
    finds a vertex v meeting two same-multiset edges alpha = uv and
    beta = vw.  The walk u, divisions(alpha), v, divisions(beta) splits into
    halves {u} + alpha-divisions and {v} + beta-divisions with equal
    multisets, hence is an anagram.  Guaranteed to exist whenever the
    palette has at most c colours and the maximum division count is below
    kn_lower_bound(n, c).
    """
    g = s.graph.base
    n = g.vertex_count
    expected = {(i, j) for i in range(n) for j in range(i + 1, n)}
    if set(g.edges) != expected:
        raise PreconditionError("base graph is not a complete graph")
    if len(s.palette) > c:
        raise PreconditionError(f"colouring uses {len(s.palette)} > {c} colours")
    k = s.max_division_count
    bound = kn_lower_bound(n, c)
    if k >= bound:
        raise PreconditionError(f"division count {k} is not below the bound {bound:.4f}")

    classes: dict[int, list[int]] = {}
    for v in range(n):
        classes.setdefault(s.colour[v], []).append(v)
    best_colour = max(classes, key=lambda col: (len(classes[col]), -col))
    clique = set(classes[best_colour])

    edge_of: dict[tuple, int] = {}  # (multiset key, shared endpoint) -> edge index
    for i, (u, v) in enumerate(g.edges):
        if u not in clique or v not in clique:
            continue
        key = _division_multiset_key(s.colour, s.graph.division_paths[i])
        for shared, other in ((u, v), (v, u)):
            prev = edge_of.get((key, shared))
            if prev is not None:
                return _assemble_pigeonhole_witness(s, prev, i, shared)
        edge_of[(key, u)] = i
        edge_of[(key, v)] = i
    raise WitnessSearchFailed(
        "no same-multiset edge pair shares a vertex; the pigeonhole guarantee failed"
    )


def _assemble_pigeonhole_witness(s: ColouredSubdivision, alpha: int, beta: int, shared: int) -> Counterexample:
    def oriented(eidx: int, start: int) -> list[int]:
        u, v = s.graph.base.edges[eidx]
        path = list(s.graph.division_paths[eidx])
        return path if start == u else path[::-1]

    au, av = s.graph.base.edges[alpha]
    u = av if au == shared else au
    path_alpha = oriented(alpha, u)  # runs u -> shared
    path_beta = oriented(beta, shared)  # runs shared -> w
    vertices = [u, *path_alpha, shared, *path_beta]
    split = 1 + len(path_alpha)
    half = Counter(s.colour[v] for v in vertices[:split])
    return Counterexample(tuple(vertices), split, tuple(sorted(half.items())))


@dataclass(frozen=True)
class EffectiveStructure:
    """Leaves and branch vertices of a rooted tree, with derived heights."""

    tree: RootedTree
    effective_vertices: frozenset[int]
    effective_root: int
    effective_height: int


def branch_vertices(t: RootedTree) -> list[int]:
    return [v for v in range(t.vertex_count) if len(t.children[v]) >= 2]


def effective_structure(t: RootedTree) -> EffectiveStructure:
    eff = {v for v in range(t.vertex_count) if len(t.children[v]) != 1}
    root = t.root
    while root not in eff:
        root = t.children[root][0]
    height = _effective_height_from(t, t.root)
    return EffectiveStructure(t, frozenset(eff), root, height)


def _effective_height_from(t: RootedTree, v: int) -> int:
    """Minimum number of branch vertices on any path from v down to a leaf."""
    order = [t.root]
    for u in order:
        order.extend(t.children[u])
    best = [0] * t.vertex_count
    for u in reversed(order):
        if t.children[u]:
            best[u] = min(best[c] for c in t.children[u]) + (1 if len(t.children[u]) >= 2 else 0)
    return best[v]


def is_d_branch(t: RootedTree, d: int) -> bool:
    return all(len(t.children[v]) >= d for v in branch_vertices(t))


@dataclass(frozen=True)
class MonochromaticWitness:
    """A subtree whose leaves and branch vertices all share one colour."""

    colour: int
    root: int
    vertices: frozenset[int]


def extract_monochromatic_subtree(
    t: RootedTree, colours: Sequence[int], d: int, targets: Sequence[int]
) -> MonochromaticWitness:
    """Essentially monochromatic d-branch subtree extraction.

    Given a d-branch tree whose effective height is at least the sum of the
    targets, returns a witness of colour i whose effective height is at
    least targets[i], following the inductive recipe: recurse below the
    effective root with that root's colour target lowered, bubble up any
    other-coloured witness unchanged, or stitch the d same-coloured
    witnesses back together through the effective root.
    """
    if d < 2:
        raise PreconditionError("need d >= 2")
    if not is_d_branch(t, d):
        raise PreconditionError("tree is not d-branch")
    targets = list(targets)
    if any(a < 0 for a in targets):
        raise PreconditionError("targets must be non-negative")
    if effective_structure(t).effective_height < sum(targets):
        raise PreconditionError("effective height below the sum of targets")
    for v in range(t.vertex_count):
        if not 0 <= colours[v] < len(targets):
            raise PreconditionError(f"vertex {v} coloured outside the target range")

    def effective_root_below(v: int) -> int:
        while len(t.children[v]) == 1:
            v = t.children[v][0]
        return v

    def rec(sub_root: int, a: list[int]) -> tuple[int, int, set[int]]:
        v = effective_root_below(sub_root)
        i = colours[v]
        if a[i] <= 0:
            return i, v, {v}
        if not t.children[v]:
            raise WitnessSearchFailed("ran out of branch vertices with targets unmet")
        a_next = a.copy()
        a_next[i] -= 1
        parts: list[tuple[int, set[int]]] = []
        for child in t.children[v][:d]:
            ij, rj, sj = rec(child, a_next)
            if ij != i:
                return ij, rj, sj  # already meets its full, undecremented target
            parts.append((rj, sj))
        members = {v}
        for rj, sj in parts:
            members |= sj
            cur = rj
            while cur != v:
                members.add(cur)
                cur = t.parent[cur]
        return i, v, members

    colour, root, members = rec(t.root, targets)
    return MonochromaticWitness(colour, root, frozenset(members))


def witness_children(t: RootedTree, w: MonochromaticWitness) -> dict[int, list[int]]:
    """Child lists of the witness subtree, in t's child order."""
    kids: dict[int, list[int]] = {v: [] for v in w.vertices}
    for v in w.vertices:
        if v == w.root:
            continue
        p = t.parent[v]
        kids[p].append(v)
    for v in kids:
        kids[v].sort(key=lambda c: t.children[t.parent[c]].index(c))
    return kids


def validate_monochromatic_witness(
    t: RootedTree, colours: Sequence[int], d: int, target: int, w: MonochromaticWitness
) -> bool:
    """Recount the witness guarantees from scratch."""
    kids = witness_children(t, w)
    for v in w.vertices:
        if v != w.root and t.parent[v] not in w.vertices:
            return False
    effective = {v for v in w.vertices if len(kids[v]) != 1}
    if any(colours[v] != w.colour for v in effective):
        return False
    if any(len(kids[v]) < d for v in effective if kids[v]):
        return False

    heights: dict[int, int] = {}

    def height_of(v: int) -> int:
        if v in heights:
            return heights[v]
        if not kids[v]:
            h = 0
        else:
            h = min(height_of(c) for c in kids[v]) + (1 if len(kids[v]) >= 2 else 0)
        heights[v] = h
        return h

    return height_of(w.root) >= target


def tree_lower_bound(d: int, h_eff: int, h: int) -> int:
    """ceil(sqrt(h_eff / log_d(h))): colours any anagram-free colouring of a
    d-branch tree of effective height h_eff and height at most h must use.

    The pigeonhole guarantee behind the bound assumes h >= sqrt(d); the
    formula is evaluated for any h >= 2 (see height_condition_met).
    """
    if d < 2:
        raise PreconditionError("need d >= 2")
    if h < 2:
        raise PreconditionError("need h >= 2")
    if h_eff < 0:
        raise PreconditionError("effective height must be non-negative")
    if h_eff == 0:
        return 0
    return _ceil_tol(math.sqrt(h_eff / math.log(h, d)))


def height_condition_met(d: int, h: int) -> bool:
    """Whether (d, h) meets the height floor h >= max(2, sqrt(d)) that the
    counting argument behind tree_lower_bound assumes."""
    return h >= max(2.0, math.sqrt(d))


def subdivision_tree_lower_bound(d: int, h: int, k: int) -> float:
    """sqrt(h / log_b(h * (k+1))) with b = min(d, (h * (k+1))^2): the lower
    bound for the k-subdivision of the complete d-ary tree of height h."""
    if d < 2 or h < 1 or k < 0:
        raise ValueError("need d >= 2, h >= 1, k >= 0")
    target = h * (k + 1)
    base = min(d, target**2)
    return math.sqrt(h / math.log(target, base))


def find_anagram_undercoloured_tree(
    t: RootedTree, colours: Sequence[int], x: int, d: int, h: int
) -> Counterexample:
    """Anagram witness in an x-coloured tree with x below tree_lower_bound.

    Extracts an essentially monochromatic d-branch subtree with equitable
    targets (earlier colours take the ceilings), groups its root-to-leaf
    paths by colour multiset, and on the guaranteed collision P1, P2 with
    meeting vertex v and leaf l1 returns the path that climbs from just
    above l1 through v and down to l2: dropping l1 and adding v preserves
    the half multisets because both are effective, hence share the
    monochromatic colour.
    """
    eff = effective_structure(t)
    h_eff = eff.effective_height
    bound = tree_lower_bound(d, h_eff, h)
    if x >= bound:
        raise PreconditionError(f"x = {x} is not below the bound {bound}")
    used = {colours[v] for v in range(t.vertex_count)}
    if not used <= set(range(x)):
        raise PreconditionError(f"colours {sorted(used)} not within 0..{x - 1}")

    base_target, extra = divmod(h_eff, x)
    targets = [base_target + (1 if i < extra else 0) for i in range(x)]
    w = extract_monochromatic_subtree(t, colours, d, targets)
    kids = witness_children(t, w)

    # witness members are closed under t-parents, so root-to-leaf paths of
    # the witness follow direct child links
    paths: dict[tuple, list[int]] = {}
    stack: list[tuple[int, list[int]]] = [(w.root, [w.root])]
    while stack:
        v, path = stack.pop()
        if not kids[v]:
            key = tuple(sorted(Counter(colours[u] for u in path).items()))
            other = paths.get(key)
            if other is not None:
                return _assemble_tree_witness(colours, other, path)
            paths[key] = path
            continue
        for c in reversed(kids[v]):
            stack.append((c, path + [c]))
    raise WitnessSearchFailed("no two root-to-leaf colour multisets collided")


def _assemble_tree_witness(colours: Sequence[int], p1: list[int], p2: list[int]) -> Counterexample:
    common = 0
    while common < min(len(p1), len(p2)) and p1[common] == p2[common]:
        common += 1
    v = p1[common - 1]
    seg1 = p1[common:]
    seg2 = p2[common:]
    vertices = list(reversed(seg1))[1:] + [v] + seg2  # drop leaf l1, keep v
    split = len(seg1)
    half = Counter(colours[u] for u in vertices[:split])
    return Counterexample(tuple(vertices), split, tuple(sorted(half.items())))


def seeded_complete_subdivision_colouring(n: int, c: int, k: int, seed: int) -> ColouredSubdivision:
    """Uniform (<= k)-subdivision of the complete graph on n vertices with a
    uniform c-colouring, both driven by one seed.  Witness-instance plumbing."""
    if n < 2 or c < 1 or k < 0:
        raise ValueError("need n >= 2, c >= 1, k >= 0")
    rng = random.Random(seed)
    g = complete_graph(n)
    counts = [rng.randint(0, k) for _ in g.edges]
    s = subdivide(g, counts)
    colours = [rng.randrange(c) for _ in range(s.vertex_count)]
    return coloured_subdivision(
        s, colours, {"construction": "seeded-kn", "n": n, "c": c, "k": k, "seed": seed}
    )


def seeded_tree_colouring(t: RootedTree, x: int, seed: int) -> tuple[int, ...]:
    """Uniform x-colouring of a tree's vertices."""
    if x < 1:
        raise ValueError("need at least one colour")
    rng = random.Random(seed)
    return tuple(rng.randrange(x) for _ in range(t.vertex_count))


def dary_two_sided(d: int, h: int, k: int) -> tuple[float, float]:
    """Lower and upper bounds on the anagram-free chromatic number of the
    k-subdivision of the complete d-ary tree of height h."""
    if d < 2 or h < 1:
        raise ValueError("need d >= 2 and h >= 1")
    if k <= 2 * d:
        raise ValueError("need k > 2d")
    lower = subdivision_tree_lower_bound(d, h, k)
    upper = 10 * h / math.log(k / (2 * d), d + 1) + 14
    return lower, upper
