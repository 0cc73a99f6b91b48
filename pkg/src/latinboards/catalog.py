"""Named, reproducible board constructions with machine-verified profiles.

Every entry rebuilds its board from scratch and checks the result
against a frozen expected profile (point count, class shape, line
sizes, intersection numbers, weft/woof class); any mismatch raises
ConstructionBug.  Entries whose incidence cannot be derived from closed
rules are loaded from bundled JSON files and re-verified on load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable, Mapping

from latinboards.design import Design, sin
from latinboards.errors import ConstructionBug, InvalidParameter, LoadError, UnknownEntry
from latinboards.exactnum import HALF, Quad, sqrt_int
from latinboards.geometry import (
    EDGE,
    FACE,
    VERTEX,
    Point,
    Source,
    build_biregular,
    build_polyhedral_source,
    dihedral_group,
    hexagon_cells,
    induced_group,
    tri_vertex,
    triangle_cells,
    vmean,
    vsub,
)
from latinboards.symmetry import Board, BoardClass, acts_on_lines, classify_board

_SQRT3 = sqrt_int(3)


# ---------------------------------------------------------------------------
# expected profiles


@dataclass(frozen=True)
class Profile:
    """What a correctly built entry must look like."""

    points: int
    lines: int
    line_size: int | None  # None when sizes vary
    classes: dict[str, tuple[int, int]] | None  # name -> (lines, line size)
    sin_values: frozenset[int]
    board_class: BoardClass


def _verify_profile(board: Board, profile: Profile) -> Board:
    d = board.design
    problems = []
    if len(d.points) != profile.points:
        problems.append(f"{len(d.points)} points, expected {profile.points}")
    if len(d.lines) != profile.lines:
        problems.append(f"{len(d.lines)} lines, expected {profile.lines}")
    if profile.line_size is not None:
        sizes = {len(l) for l in d.lines}
        if sizes != {profile.line_size}:
            problems.append(f"line sizes {sorted(sizes)}, expected {profile.line_size}")
    if profile.classes is not None:
        if set(d.classes) != set(profile.classes):
            problems.append(f"classes {sorted(d.classes)}, expected {sorted(profile.classes)}")
        else:
            for name, (count, size) in profile.classes.items():
                lines = d.class_lines(name)
                if len(lines) != count or any(len(l) != size for l in lines):
                    problems.append(f"class {name}: {len(lines)} lines")
    actual_sin = sin(d, include_empty=False)
    if actual_sin != profile.sin_values:
        problems.append(f"SIN {sorted(actual_sin)}, expected {sorted(profile.sin_values)}")
    if not acts_on_lines(board.group_perms, d):
        problems.append("declared group does not act on the lines")
    actual_class = classify_board(board)
    if actual_class != profile.board_class:
        problems.append(f"classified {actual_class.value}, expected {profile.board_class.value}")
    if problems:
        raise ConstructionBug(f"{board.name}: " + "; ".join(problems))
    return board


# ---------------------------------------------------------------------------
# shared helpers


def _board(source: Source, lines, classes, name: str) -> Board:
    design = Design.build([p.id for p in source.points], lines, classes=classes)
    return Board(source, design, induced_group(source), name=name)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InvalidParameter(message)


def fano_source() -> Source:
    """Seven points of an equilateral triangle: center, vertices, edge midpoints.

    Ids follow the classic labeling: 0 the center, 1/3/5 the edge
    midpoints, 2/4/6 the vertices, with midpoint 1 opposite vertex 2 and
    so on around the triangle.
    """
    o = Quad(0)
    pts = [
        Point(0, (o, o), VERTEX),                  # center
        Point(1, (Quad(-1), o), EDGE),             # midpoint opposite vertex 2
        Point(2, (Quad(2), o), VERTEX),
        Point(3, (HALF, -_SQRT3 * HALF), EDGE),    # opposite vertex 4
        Point(4, (Quad(-1), _SQRT3), VERTEX),
        Point(5, (HALF, _SQRT3 * HALF), EDGE),     # opposite vertex 6
        Point(6, (Quad(-1), -_SQRT3), VERTEX),
    ]
    return Source(tuple(pts), dihedral_group(3), family="custom", order=0)


FANO_LINES = [
    {0, 1, 2},
    {0, 3, 4},
    {0, 5, 6},
    {1, 3, 5},
    {1, 4, 6},
    {2, 3, 6},
    {2, 4, 5},
]


def _build_fano() -> Board:
    return _board(fano_source(), FANO_LINES, None, "fano")


def _grid_source(n: int, top_origin: bool, one_based: bool) -> Source:
    """Face centers of a biregular square, relabeled to classic reading order."""
    src = build_biregular("square", n, FACE)
    mapping = {}
    for p in src.points:
        c = int(p.coords[0] - HALF)
        r = int(p.coords[1] - HALF)  # 0 = bottom row
        row = (n - 1 - r) if top_origin else r
        mapping[p.id] = row * n + c + (1 if one_based else 0)
    return src.relabeled(mapping)


def _build_latin_square_base(n: int) -> Board:
    _require(n >= 2, "latin_square_base needs n >= 2")
    src = _grid_source(n, top_origin=True, one_based=True)
    rows = [set(range(r * n + 1, r * n + n + 1)) for r in range(n)]
    cols = [set(range(c + 1, n * n + 1, n)) for c in range(n)]
    return _board(src, rows + cols, {"H": rows, "V": cols}, f"latin_square_base({n})")


def _build_sudoku_base() -> Board:
    src = _grid_source(9, top_origin=True, one_based=False)
    rows = [{9 * r + c for c in range(9)} for r in range(9)]
    cols = [{9 * r + c for r in range(9)} for c in range(9)]
    boxes = [
        {9 * (3 * br + r) + (3 * bc + c) for r in range(3) for c in range(3)}
        for br in range(3)
        for bc in range(3)
    ]
    return _board(src, rows + cols + boxes, {"H": rows, "V": cols, "Q": boxes}, "sudoku_base")


def _build_knut_vik_base(n: int) -> Board:
    _require(n >= 3 and n % 2 == 1, "knut_vik_base needs odd n >= 3")
    src = _grid_source(n, top_origin=True, one_based=False)
    diags = [{n * r + (r + i) % n for r in range(n)} for i in range(n)]
    antis = [{n * r + (j - r) % n for r in range(n)} for j in range(n)]
    return _board(src, diags + antis, {"D": diags, "A": antis}, f"knut_vik_base({n})")


# --- triangle family -------------------------------------------------------


def _triangle_face_bands(n: int) -> dict[tuple[str, int, int], tuple[int, int, int]]:
    """Cell -> (band from bottom side, from left side, from right side)."""
    bands = {}
    for tag, i, j, _ in triangle_cells(n):
        if tag == "up":
            bands[(tag, i, j)] = (j, i, n - 1 - i - j)
        else:
            bands[(tag, i, j)] = (j, i, n - 2 - i - j)
    return bands


def _monthai_cells_and_lines(n: int):
    """Face cells of an order-n triangle grouped into paired-band lines."""
    cells = triangle_cells(n)
    bands = _triangle_face_bands(n)
    lines: dict[tuple[str, int], set[tuple[str, int, int]]] = {}
    for direction in range(3):
        for pair in range(n // 2):
            lines[(("A", "B", "C")[direction], pair)] = set()
    for tag, i, j, _ in cells:
        b = bands[(tag, i, j)]
        for direction in range(3):
            band = b[direction]
            pair = band if band < n // 2 else n - 1 - band
            lines[(("A", "B", "C")[direction], pair)].add((tag, i, j))
    return cells, lines


def _build_monthai_base(n: int) -> Board:
    _require(n >= 4 and n % 2 == 0, "monthai_base needs even n >= 4")
    src = build_biregular("triangle", n, FACE)
    index = src.coords_index()
    cells, raw_lines = _monthai_cells_and_lines(n)
    centroid = {(tag, i, j): vmean(c) for tag, i, j, c in cells}
    lines_by_class: dict[str, list[set[int]]] = {"A": [], "B": [], "C": []}
    for (cls, _pair), members in sorted(raw_lines.items()):
        lines_by_class[cls].append({index[centroid[m]] for m in members})
    all_lines = [l for cls in ("A", "B", "C") for l in lines_by_class[cls]]
    return _board(src, all_lines, lines_by_class, f"monthai_base({n})")


def _build_triangle_vertex_base(n: int) -> Board:
    _require(n >= 3 and n % 2 == 1, "triangle_vertex_base needs odd n >= 3")
    src = build_biregular("triangle", n, VERTEX)
    index = src.coords_index()
    lines_by_class: dict[str, list[set[int]]] = {"A": [], "B": [], "C": []}
    verts = [(i, j) for j in range(n + 1) for i in range(n + 1 - j)]
    for direction, cls in enumerate(("A", "B", "C")):
        rows: dict[int, set[int]] = {}
        for i, j in verts:
            band = (j, i, n - i - j)[direction]
            rows.setdefault(band, set()).add(index[tri_vertex(i, j)])
        for pair in range((n + 1) // 2):
            lines_by_class[cls].append(rows[pair] | rows[n - pair])
    all_lines = [l for cls in ("A", "B", "C") for l in lines_by_class[cls]]
    return _board(src, all_lines, lines_by_class, f"triangle_vertex_base({n})")


def _build_square_paired_base(n: int) -> Board:
    _require(n >= 4 and n % 2 == 0, "square_paired_base needs even n >= 4")
    src = _grid_source(n, top_origin=True, one_based=False)
    row_pairs = [
        {n * r + c for r in (p, n - 1 - p) for c in range(n)} for p in range(n // 2)
    ]
    col_pairs = [
        {n * r + c for c in (p, n - 1 - p) for r in range(n)} for p in range(n // 2)
    ]
    return _board(
        src, row_pairs + col_pairs, {"H": row_pairs, "V": col_pairs}, f"square_paired_base({n})"
    )


# --- hexagon family --------------------------------------------------------


def _hexagon_strips(n: int) -> dict[int, dict[int, set[tuple[str, int, int]]]]:
    """Strips of face cells per direction; strip indices 1..2n."""
    strips: dict[int, dict[int, set]] = {0: {}, 1: {}, 2: {}}
    for tag, q, r, _ in hexagon_cells(n):
        if tag == "up":
            idx = (r + n, q + n, -q - r - 1 + n)
        else:
            idx = (r + n, q + n, -q - r - 2 + n)
        for direction in range(3):
            strips[direction].setdefault(idx[direction] + 1, set()).add((tag, q, r))
    return strips


def _hexagon_pairings(n: int) -> dict[str, list[tuple[int, int]]]:
    opposite = [(i, i + n) for i in range(1, n + 1)]
    reflected = [(i, n + 1 - i) for i in range(1, n // 2 + 1)]
    reflected += [(n + i, 2 * n + 1 - i) for i in range(1, n // 2 + 1)]
    if n % 2 == 1:
        mid = (n + 1) // 2
        reflected.append((mid, mid + n))
    return {"P1": opposite, "P2": sorted(reflected)}


def _build_hexagon_base(n: int, pairing: str = "P1") -> Board:
    _require(n >= 2, "hexagon_base needs n >= 2")
    aliases = {"P_weft": HEXAGON_WEFT_PAIRING, "P_woof": HEXAGON_WOOF_PAIRING}
    pairing = aliases.get(pairing, pairing)
    pairings = _hexagon_pairings(n)
    if pairing not in pairings:
        raise InvalidParameter(f"pairing must be P1, P2, P_weft or P_woof, not {pairing!r}")
    src = build_biregular("hexagon", n, FACE)
    index = src.coords_index()
    cells = {(tag, q, r): vmean(c) for tag, q, r, c in hexagon_cells(n)}
    strips = _hexagon_strips(n)
    lines_by_class: dict[str, list[set[int]]] = {}
    for direction, cls in enumerate(("A", "B", "C")):
        lines = []
        for a, b in pairings[pairing]:
            members = strips[direction][a] | strips[direction][b]
            lines.append({index[cells[m]] for m in members})
        lines_by_class[cls] = lines
    all_lines = [l for cls in ("A", "B", "C") for l in lines_by_class[cls]]
    return _board(src, all_lines, lines_by_class, f"hexagon_base({n},{pairing})")


# frozen after first derivation: P1 (strip i joined with the opposite strip
# i+n) is the pairing whose cross-class intersections are all 6, hence weft
HEXAGON_WEFT_PAIRING = "P1"
HEXAGON_WOOF_PAIRING = "P2"


# --- polyhedra -------------------------------------------------------------


def _bary(p, a, b, c):
    """Exact barycentric coordinates of 2D point p in triangle (a, b, c)."""
    v0 = vsub(b, a)
    v1 = vsub(c, a)
    v2 = vsub(p, a)
    det = v0[0] * v1[1] - v0[1] * v1[0]
    beta = (v2[0] * v1[1] - v2[1] * v1[0]) / det
    gamma = (v0[0] * v2[1] - v0[1] * v2[0]) / det
    return (Quad(1) - beta - gamma, beta, gamma)


def _build_tetrahedron_base(m: int) -> Board:
    _require(m >= 2 and m % 2 == 0, "tetrahedron_base needs even m >= 2")
    n = 2 * m
    src = build_polyhedral_source("tetrahedron", m, FACE)
    index = src.coords_index()

    t1, t2, t3 = tri_vertex(0, 0), tri_vertex(n, 0), tri_vertex(0, n)
    m12, m23, m13 = tri_vertex(m, 0), vmean([t2, t3]), vmean([t1, t3])
    from latinboards.geometry import polyhedron_data

    w, _faces = polyhedron_data("tetrahedron")
    regions = [
        ((t1, m12, m13), (w[0], w[1], w[3])),
        ((t2, m23, m12), (w[0], w[2], w[1])),
        ((t3, m13, m23), (w[0], w[3], w[2])),
        ((m12, m23, m13), (w[1], w[2], w[3])),
    ]

    def fold(p2d):
        alpha, beta, gamma = _bary(p2d, t1, t2, t3)
        half = Quad(Fraction(1, 2))
        if alpha > half:
            region = regions[0]
        elif beta > half:
            region = regions[1]
        elif gamma > half:
            region = regions[2]
        else:
            region = regions[3]
        (a, b, c), (a3, b3, c3) = region
        la, lb, lc = _bary(p2d, a, b, c)
        return tuple(la * a3[k] + lb * b3[k] + lc * c3[k] for k in range(3))

    cells, raw_lines = _monthai_cells_and_lines(n)
    centroid = {(tag, i, j): vmean(c) for tag, i, j, c in cells}
    lines_by_class: dict[str, list[set[int]]] = {"A": [], "B": [], "C": []}
    for (cls, _pair), members in sorted(raw_lines.items()):
        lines_by_class[cls].append({index[fold(centroid[mref])] for mref in members})
    all_lines = [l for cls in ("A", "B", "C") for l in lines_by_class[cls]]
    return _board(src, all_lines, lines_by_class, f"tetrahedron_base({m})")


def _build_cube_base(m: int) -> Board:
    _require(m >= 2, "cube_base needs m >= 2")
    src = build_polyhedral_source("cube", m, FACE)
    one = Quad(1)
    lines = []
    for axis in range(3):
        levels = sorted({p.coords[axis] for p in src.points if abs(p.coords[axis]) != one})
        for level in levels:
            ring = {
                p.id
                for p in src.points
                if p.coords[axis] == level and abs(p.coords[axis]) != one
            }
            lines.append(ring)
    return _board(src, lines, None, f"cube_base({m})")


# ---------------------------------------------------------------------------
# data-backed entries


def _load_bundled(name: str, expect_warp: tuple[int, int, int]) -> Board:
    """Load a shipped reconstruction and re-verify its stored warp class."""
    try:
        text = resources.files("latinboards.data").joinpath(f"{name}.json").read_text()
    except FileNotFoundError as exc:
        raise LoadError(f"bundled data file for {name} missing") from exc
    doc = json.loads(text)
    board = board_from_json(doc, name=name)
    from latinboards.warp import WarpClass, verify_warp

    k, n_lines, line_size = expect_warp
    if doc.get("warp_k") != k or "warp" not in doc:
        raise LoadError(f"{name}: data file carries no {k}-warp class")
    warp = WarpClass(k, frozenset(frozenset(l) for l in doc["warp"]))
    report = verify_warp(board, warp)
    if not report.ok:
        first = report.failures[0]
        raise LoadError(f"{name}: stored warp fails {first.check}: {first.detail}")
    if len(warp.lines) != n_lines or {len(l) for l in warp.lines} != {line_size}:
        raise LoadError(
            f"{name}: warp shape {len(warp.lines)} lines != expected {n_lines}x{line_size}"
        )
    return board


def bundled_warp(name: str) -> "object":
    """The stored warp class of a data-backed entry (verified on load)."""
    from latinboards.warp import WarpClass

    text = resources.files("latinboards.data").joinpath(f"{name}.json").read_text()
    doc = json.loads(text)
    return WarpClass(doc["warp_k"], frozenset(frozenset(l) for l in doc["warp"]))


def bundled_layout(name: str) -> dict:
    text = resources.files("latinboards.data").joinpath(f"{name}.json").read_text()
    return json.loads(text).get("layout", {})


def board_from_json(doc: Mapping, name: str = "") -> Board:
    """Rebuild and re-verify a board from its JSON document."""
    from latinboards.serialize import board_from_doc

    try:
        return board_from_doc(doc, name=name)
    except (KeyError, TypeError, ValueError) as exc:
        raise LoadError(f"malformed board document: {exc}") from exc


def load_board(path) -> Board:
    """Load a board JSON file, re-verifying every invariant."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise LoadError(f"cannot read board file {path}: {exc}") from exc
    return board_from_json(doc, name=str(doc.get("name", path)))


# ---------------------------------------------------------------------------
# registry

_W = BoardClass.WEFT
_WF = BoardClass.WOOF


@dataclass(frozen=True)
class Entry:
    name: str
    status: str  # "derived" | "data_backed"
    params: tuple[str, ...]
    builder: Callable[..., Board]
    profile: Callable[..., Profile]
    doc: str = ""


def _profile_fano(**_):
    return Profile(7, 7, 3, None, frozenset({1}), _WF)


def _profile_latin_square(n: int):
    return Profile(n * n, 2 * n, n, {"H": (n, n), "V": (n, n)}, frozenset({1}), _W)


def _profile_sudoku(**_):
    return Profile(81, 27, 9, {"H": (9, 9), "V": (9, 9), "Q": (9, 9)}, frozenset({1, 3}), _WF)


def _profile_knut_vik(n: int):
    return Profile(n * n, 2 * n, n, {"D": (n, n), "A": (n, n)}, frozenset({1}), _W)


def _profile_monthai(n: int):
    cls = {c: (n // 2, 2 * n) for c in "ABC"}
    return Profile(n * n, 3 * (n // 2), 2 * n, cls, frozenset({4}), _W)


def _profile_triangle_vertex(n: int):
    count = (n + 1) * (n + 2) // 2
    cls = {c: ((n + 1) // 2, n + 2) for c in "ABC"}
    return Profile(count, 3 * ((n + 1) // 2), n + 2, cls, frozenset({2, 3}), _WF)


def _profile_square_paired(n: int):
    cls = {"H": (n // 2, 2 * n), "V": (n // 2, 2 * n)}
    return Profile(n * n, n, 2 * n, cls, frozenset({4}), _W)


def _profile_hexagon(n: int, pairing: str = "P1"):
    aliases = {"P_weft": HEXAGON_WEFT_PAIRING, "P_woof": HEXAGON_WOOF_PAIRING}
    pairing = aliases.get(pairing, pairing)
    cls = {c: (n, 6 * n) for c in "ABC"}
    if pairing == HEXAGON_WEFT_PAIRING:
        return Profile(6 * n * n, 3 * n, 6 * n, cls, frozenset({6}), _W)
    woof_sin = frozenset({4, 6, 8}) if n % 2 else frozenset({4, 8})
    return Profile(6 * n * n, 3 * n, 6 * n, cls, woof_sin, _WF)


def _profile_tetrahedron(m: int):
    n = 2 * m
    cls = {c: (m, 2 * n) for c in "ABC"}
    return Profile(n * n, 3 * m, 2 * n, cls, frozenset({4}), _W)


def _profile_cube(m: int):
    return Profile(6 * m * m, 3 * m, 4 * m, None, frozenset({2}), _WF)


def _profile_octa(**_):
    return Profile(72, 12, 18, None, frozenset({4}), _WF)


def _profile_icosa(**_):
    return Profile(80, 12, 20, None, frozenset({8}), _WF)


def _profile_dodeca(**_):
    return Profile(30, 10, 6, None, frozenset({2}), _WF)


def _profile_helios(**_):
    return Profile(36, 12, 6, None, frozenset({1}), _WF)


ENTRIES: dict[str, Entry] = {}


def _register(name, status, params, builder, profile, doc=""):
    ENTRIES[name] = Entry(name, status, params, builder, profile, doc)


_register("fano", "derived", (), _build_fano, _profile_fano,
          "the seven-point plane on a triangle with center")
_register("latin_square_base", "derived", ("n",), _build_latin_square_base,
          _profile_latin_square, "rows and columns of an n x n grid")
_register("sudoku_base", "derived", (), _build_sudoku_base, _profile_sudoku,
          "rows, columns and 3x3 boxes of the 9x9 grid")
_register("knut_vik_base", "derived", ("n",), _build_knut_vik_base, _profile_knut_vik,
          "broken diagonals and antidiagonals of an odd-order grid")
_register("monthai_base", "derived", ("n",), _build_monthai_base, _profile_monthai,
          "paired face rows of an even-order triangle, three directions")
_register("triangle_vertex_base", "derived", ("n",), _build_triangle_vertex_base,
          _profile_triangle_vertex, "paired vertex rows of an odd-order triangle")
_register("square_paired_base", "derived", ("n",), _build_square_paired_base,
          _profile_square_paired, "paired rows and columns of an even-order grid")
_register("hexagon_base", "derived", ("n", "pairing"), _build_hexagon_base,
          _profile_hexagon, "paired triangle strips of a hexagon; P1 opposite, P2 reflected")
_register("tetrahedron_base", "derived", ("m",), _build_tetrahedron_base,
          _profile_tetrahedron, "paired-row triangle board folded onto the tetrahedron")
_register("cube_base", "derived", ("m",), _build_cube_base, _profile_cube,
          "width-1 rings of face cells around the three axes of a cube")
_register("octa_board", "data_backed", (),
          lambda: _load_bundled("octa_board", (1, 18, 4)),
          _profile_octa, "equatorial cell bands of a subdivided octahedron")
_register("icosa_board", "data_backed", (),
          lambda: _load_bundled("icosa_board", (1, 20, 4)),
          _profile_icosa, "vertex-star cell lines of a subdivided icosahedron")
_register("dodeca_board", "data_backed", (),
          lambda: _load_bundled("dodeca_board", (1, 6, 5)),
          _profile_dodeca, "antipodal vertex-star edge lines of the dodecahedron")
_register("helios_board", "data_backed", (),
          lambda: _load_bundled("helios_board", (1, 6, 6)),
          _profile_helios, "crossing chords of a 24-gon with 12-fold symmetry")


def build(name: str, **params) -> Board:
    """Build a catalog entry and verify it against its expected profile."""
    if name == "b1":
        name, params = "latin_square_base", {"n": params.get("n", 3)}
    entry = ENTRIES.get(name)
    if entry is None:
        raise UnknownEntry(f"no catalog entry named {name!r}")
    unknown = set(params) - set(entry.params)
    if unknown:
        raise InvalidParameter(f"{name} does not take parameters {sorted(unknown)}")
    board = entry.builder(**params)
    return _verify_profile(board, entry.profile(**params))


def entries() -> list[Entry]:
    return [ENTRIES[k] for k in sorted(ENTRIES)]
