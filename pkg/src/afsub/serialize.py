"""Canonical JSON interchange and DOT export for coloured subdivisions.

Schema:
{"vertices": [{"id": int, "kind": "original"|"division", "colour": int|null}],
 "base_edges": [{"u": int, "v": int, "division": [int, ...]}],
 "palette": [int], "provenance": {...}}

Serialisation is canonical (sorted keys, 2-space indent), so parse followed
by serialise is byte-identical.
"""

from __future__ import annotations

import colorsys
import json
from typing import Any

from .graph_model import BaseGraph, ColouredSubdivision, SubdividedGraph


class SchemaError(ValueError):
    pass


def to_json_dict(cs: ColouredSubdivision) -> dict:
    vertices = [
        {
            "id": v,
            "kind": "original" if cs.graph.is_original(v) else "division",
            "colour": cs.colour[v],
        }
        for v in range(cs.graph.vertex_count)
    ]
    base_edges = [
        {"u": u, "v": v, "division": list(path)}
        for (u, v), path in zip(cs.graph.base.edges, cs.graph.division_paths)
    ]
    return {
        "vertices": vertices,
        "base_edges": base_edges,
        "palette": list(cs.palette),
        "provenance": cs.provenance,
    }


def to_json_str(cs: ColouredSubdivision) -> str:
    return json.dumps(to_json_dict(cs), indent=2, sort_keys=True) + "\n"


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise SchemaError(message)


def from_json_dict(data: Any) -> ColouredSubdivision:
    _require(isinstance(data, dict), "top level must be an object")
    for key in ("vertices", "base_edges", "palette"):
        _require(key in data, f"missing key {key!r}")
    vertices = data["vertices"]
    _require(isinstance(vertices, list), "vertices must be a list")
    n = len(vertices)
    kinds: list[str] = [""] * n
    colours: list = [None] * n
    seen_ids = set()
    for entry in vertices:
        _require(isinstance(entry, dict), "vertex entries must be objects")
        for key in ("id", "kind", "colour"):
            _require(key in entry, f"vertex entry missing {key!r}")
        vid = entry["id"]
        _require(isinstance(vid, int) and 0 <= vid < n, f"vertex id {vid!r} out of range")
        _require(vid not in seen_ids, f"duplicate vertex id {vid}")
        seen_ids.add(vid)
        _require(entry["kind"] in ("original", "division"), f"vertex {vid}: bad kind {entry['kind']!r}")
        kinds[vid] = entry["kind"]
        colour = entry["colour"]
        _require(colour is None or isinstance(colour, int), f"vertex {vid}: colour must be int or null")
        colours[vid] = colour

    n_original = sum(1 for k in kinds if k == "original")
    _require(
        all(k == "original" for k in kinds[:n_original]),
        "original vertices must occupy the low id range",
    )

    base_edges = data["base_edges"]
    _require(isinstance(base_edges, list), "base_edges must be a list")
    edges = []
    division_paths = []
    covered: set[int] = set()
    for entry in base_edges:
        _require(isinstance(entry, dict), "edge entries must be objects")
        for key in ("u", "v", "division"):
            _require(key in entry, f"edge entry missing {key!r}")
        u, v, division = entry["u"], entry["v"], entry["division"]
        _require(
            isinstance(u, int) and isinstance(v, int) and 0 <= u < n_original and 0 <= v < n_original,
            f"edge ({u!r}, {v!r}) endpoints must be original vertex ids",
        )
        _require(isinstance(division, list), "division must be a list of vertex ids")
        for dv in division:
            _require(
                isinstance(dv, int) and n_original <= dv < n and kinds[dv] == "division",
                f"division vertex {dv!r} invalid",
            )
            _require(dv not in covered, f"division vertex {dv} listed twice")
            covered.add(dv)
        edges.append((u, v))
        division_paths.append(tuple(division))
    _require(len(covered) == n - n_original, "some division vertices belong to no edge")

    palette = data["palette"]
    _require(
        isinstance(palette, list) and all(isinstance(c, int) for c in palette),
        "palette must be a list of ints",
    )
    pal = set(palette)
    for vid, colour in enumerate(colours):
        _require(
            colour is None or colour in pal,
            f"vertex {vid} coloured {colour}, outside palette",
        )
    _require(all(c is not None for c in colours), "all vertices must be coloured")

    try:
        base = BaseGraph(n_original, tuple(edges))
        graph = SubdividedGraph(base, tuple(division_paths))
        return ColouredSubdivision(graph, tuple(colours), tuple(palette), data.get("provenance", {}))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def from_json_str(text: str) -> ColouredSubdivision:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: line {exc.lineno}, column {exc.colno}") from exc
    return from_json_dict(data)


def _fill(colour: int, palette: tuple[int, ...]) -> str:
    idx = palette.index(colour) if colour in palette else 0
    hue = idx / max(len(palette), 1)
    r, g, b = colorsys.hsv_to_rgb(hue, 0.45, 0.95)
    return f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}"


def to_dot(cs: ColouredSubdivision) -> str:
    """DOT rendering: originals as boxes, division vertices as points."""
    lines = ["graph subdivision {", "  node [style=filled];"]
    palette = cs.palette
    for v in range(cs.graph.vertex_count):
        fill = _fill(cs.colour[v], palette)
        if cs.graph.is_original(v):
            lines.append(f'  v{v} [shape=box, label="{v}:{cs.colour[v]}", fillcolor="{fill}"];')
        else:
            lines.append(f'  v{v} [shape=point, fillcolor="{fill}", color="{fill}"];')
    for (u, v), path in zip(cs.graph.base.edges, cs.graph.division_paths):
        chain = [u, *path, v]
        for a, b in zip(chain, chain[1:]):
            lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
