"""Canonical JSON documents for sources, designs, boards, solutions, puzzles.

Serialization is deterministic: lines are sorted lexicographically by
their sorted point ids, keys are sorted, and floats are formatted with
a fixed precision, so serialize(deserialize(serialize(x))) is
byte-identical to serialize(x).
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from latinboards.design import Design, Perm, PermGroup
from latinboards.errors import LoadError
from latinboards.exactnum import format_quad, parse_quad
from latinboards.geometry import Point, Source, SymmetryGroup, dihedral_group, polyhedron_group
from latinboards.symmetry import Board, acts_on_lines

SCHEMA_BOARD = "latinboards.board/1"
SCHEMA_SOLUTION = "latinboards.solution/1"
SCHEMA_PUZZLE = "latinboards.puzzle/1"


def dumps(doc: Mapping) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def dumps_compact(doc: Mapping) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# designs


def design_to_doc(d: Design) -> dict:
    lines = [sorted(l) for l in d.lines]
    return {
        "points": list(d.points),
        "lines": lines,
        "classes": {name: list(idxs) for name, idxs in sorted(d.classes.items())},
    }


def design_from_doc(doc: Mapping) -> Design:
    classes = {
        name: [doc["lines"][i] for i in idxs]
        for name, idxs in doc.get("classes", {}).items()
    }
    return Design.build(doc["points"], doc["lines"], classes=classes or None)


# ---------------------------------------------------------------------------
# sources


def source_to_doc(src: Source) -> dict:
    group_doc: dict = {"kind": src.group.kind, "n": src.group.n}
    if src.group.kind == "dihedral":
        group_doc["center"] = [format_quad(c) for c in src.group.center]
        group_doc["mirror"] = src.group.mirror
    return {
        "family": src.family,
        "order": src.order,
        "group": group_doc,
        "points": [
            {
                "id": p.id,
                "kind": p.kind,
                "coords": [format_quad(c) for c in p.coords],
            }
            for p in src.points
        ],
    }


_POLYHEDRAL_KINDS = {
    "tetrahedral": "tetrahedron",
    "octahedral": "cube",
    "icosahedral": "icosahedron",
}


def _group_from_doc(doc: Mapping) -> SymmetryGroup:
    kind = doc["kind"]
    if kind == "dihedral":
        center = doc.get("center", (0, 0))
        return dihedral_group(doc["n"], tuple(parse_quad(str(c)) for c in center),
                              mirror=doc.get("mirror", "x"))
    if kind in _POLYHEDRAL_KINDS:
        return polyhedron_group(_POLYHEDRAL_KINDS[kind])
    raise LoadError(f"unknown symmetry group kind {kind!r}")


def source_from_doc(doc: Mapping) -> Source:
    points = tuple(
        Point(p["id"], tuple(parse_quad(c) for c in p["coords"]), p["kind"])
        for p in doc["points"]
    )
    group = _group_from_doc(doc["group"])
    return Source(points, group, family=doc["family"], order=doc["order"])


# ---------------------------------------------------------------------------
# boards


def board_to_doc(board: Board, layout: Mapping | None = None,
                 warp=None, warp_k: int | None = None) -> dict:
    doc: dict[str, Any] = {
        "schema": SCHEMA_BOARD,
        "name": board.name,
        "design": design_to_doc(board.design),
        "group": {
            "perms": [
                [p(x) for x in board.design.points]
                for p in board.group_perms.generators
            ],
        },
    }
    if board.source is not None:
        doc["source"] = source_to_doc(board.source)
        doc["group"]["kind"] = board.source.group.kind
        if board.source.group.n:
            doc["group"]["n"] = board.source.group.n
    if layout is not None:
        doc["layout"] = dict(layout)
    if warp is not None:
        doc["warp"] = sorted(sorted(l) for l in warp)
        doc["warp_k"] = warp_k or 1
    return doc


def board_from_doc(doc: Mapping, name: str = "") -> Board:
    if doc.get("schema") != SCHEMA_BOARD:
        raise LoadError(f"expected schema {SCHEMA_BOARD}, got {doc.get('schema')!r}")
    design = design_from_doc(doc["design"])
    points = design.points
    perms = []
    for images in doc["group"]["perms"]:
        if len(images) != len(points):
            raise LoadError("group permutation has wrong length")
        perms.append(Perm(dict(zip(points, images))))
    group = PermGroup(perms, domain=points)
    source = source_from_doc(doc["source"]) if "source" in doc else None
    board = Board(source, design, group, name=name or doc.get("name", ""))
    if not acts_on_lines(group, design):
        raise LoadError("group permutations do not preserve the line set")
    return board


# ---------------------------------------------------------------------------
# solutions and puzzles


def solution_to_doc(board_ref: Mapping, k: int, warp_lines, labeling: Mapping | None) -> dict:
    doc = {
        "schema": SCHEMA_SOLUTION,
        "board_ref": dict(board_ref),
        "k": k,
        "warp": sorted(sorted(l) for l in warp_lines),
    }
    if labeling is not None:
        doc["labeling"] = {str(sym): idx for sym, idx in labeling.items()}
    return doc


def puzzle_to_doc(puzzle_id: str, board_doc: Mapping, warp_k: int,
                  symbols, clues: Mapping[int, str],
                  layout: Mapping | None = None) -> dict:
    doc = {
        "schema": SCHEMA_PUZZLE,
        "id": puzzle_id,
        "board": dict(board_doc),
        "warp_k": warp_k,
        "symbols": list(symbols),
        "clues": {str(p): s for p, s in sorted(clues.items())},
    }
    if layout is not None:
        doc["layout"] = dict(layout)
    return doc


def round_trip_stable(doc: Mapping) -> bool:
    """serialize(deserialize(serialize(x))) == serialize(x)."""
    once = dumps(doc)
    return dumps(json.loads(once)) == once
