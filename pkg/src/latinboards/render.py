"""2D layouts and deterministic SVG rendering.

Planar sources render where they stand; polyhedral sources are unfolded
into a net by walking the face-adjacency graph and hinging each face
flat about its shared edge.  Layouts feed both the SVG renderer and the
puzzle documents served to the play client; the combinatorics never
depend on them.
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence

from latinboards.errors import NoLayout
from latinboards.geometry import (
    FACE,
    Source,
    biregular_cell_polygons,
    polyhedron_data,
    subdivide_triangle,
    vmean,
    vsub,
    dot as qdot,
)
from latinboards.symmetry import Board

Pt = tuple[float, float]


def _f(v) -> float:
    return float(v)


def _fmt(x: float) -> str:
    return f"{x:.4f}".rstrip("0").rstrip(".") or "0"


# ---------------------------------------------------------------------------
# generic net unfolding


def _face_cycle(verts_3d: Sequence, face: Sequence[int]) -> list[int]:
    """Order a planar convex face cyclically around its centroid."""
    pts = [tuple(map(float, (verts_3d[i][0], verts_3d[i][1], verts_3d[i][2]))) for i in face]
    cx = [sum(p[i] for p in pts) / len(pts) for i in range(3)]
    # build an in-plane basis from the first edge
    e1 = [pts[0][i] - cx[i] for i in range(3)]
    n1 = math.sqrt(sum(x * x for x in e1))
    e1 = [x / n1 for x in e1]
    # normal direction: centroid works for centered solids
    nrm = cx
    nn = math.sqrt(sum(x * x for x in nrm)) or 1.0
    nrm = [x / nn for x in nrm]
    e2 = [
        nrm[1] * e1[2] - nrm[2] * e1[1],
        nrm[2] * e1[0] - nrm[0] * e1[2],
        nrm[0] * e1[1] - nrm[1] * e1[0],
    ]
    angles = []
    for idx, p in zip(face, pts):
        d = [p[i] - cx[i] for i in range(3)]
        angles.append((math.atan2(sum(a * b for a, b in zip(d, e2)), sum(a * b for a, b in zip(d, e1))), idx))
    return [idx for _, idx in sorted(angles)]


class _NetUnfolder:
    """Isometrically places each face of a convex solid into the plane."""

    def __init__(self, verts_3d: Sequence, faces: Sequence[Sequence[int]]):
        self.verts = [tuple(map(float, v)) for v in verts_3d]
        self.faces = [_face_cycle(verts_3d, f) for f in faces]
        self.placements: list[dict[int, Pt] | None] = [None] * len(faces)
        self.order: list[int] = []
        self._unfold()

    def _local(self, face: list[int]) -> dict[int, Pt]:
        a = self.verts[face[0]]
        b = self.verts[face[1]]
        e1 = [b[i] - a[i] for i in range(3)]
        n1 = math.sqrt(sum(x * x for x in e1))
        e1 = [x / n1 for x in e1]
        c = self.verts[face[2]]
        t = [c[i] - a[i] for i in range(3)]
        proj = sum(t[i] * e1[i] for i in range(3))
        e2 = [t[i] - proj * e1[i] for i in range(3)]
        n2 = math.sqrt(sum(x * x for x in e2))
        e2 = [x / n2 for x in e2]
        out = {}
        for vi in face:
            d = [self.verts[vi][i] - a[i] for i in range(3)]
            out[vi] = (sum(d[i] * e1[i] for i in range(3)), sum(d[i] * e2[i] for i in range(3)))
        return out

    @staticmethod
    def _rigid(src_a: Pt, src_b: Pt, dst_a: Pt, dst_b: Pt, flip: bool):
        """2D isometry taking src_a->dst_a, src_b->dst_b, optionally flipped."""
        sv = (src_b[0] - src_a[0], src_b[1] - src_a[1])
        dv = (dst_b[0] - dst_a[0], dst_b[1] - dst_a[1])
        if flip:
            sv = (sv[0], -sv[1])
        norm = sv[0] * sv[0] + sv[1] * sv[1]
        cos = (sv[0] * dv[0] + sv[1] * dv[1]) / norm
        sin = (sv[0] * dv[1] - sv[1] * dv[0]) / norm

        def apply(p: Pt) -> Pt:
            x, y = p[0] - src_a[0], p[1] - src_a[1]
            if flip:
                y = -y
            return (dst_a[0] + cos * x - sin * y, dst_a[1] + sin * x + cos * y)

        return apply

    def _unfold(self):
        root = 0
        local = self._local(self.faces[root])
        self.placements[root] = dict(local)
        self.order.append(root)
        placed = {root}
        frontier = [root]
        while frontier:
            nxt = []
            for fi in frontier:
                for gj, gface in enumerate(self.faces):
                    if gj in placed:
                        continue
                    shared = [v for v in gface if v in self.faces[fi]]
                    if len(shared) < 2:
                        continue
                    a, b = shared[0], shared[1]
                    glocal = self._local(gface)
                    fplace = self.placements[fi]
                    assert fplace is not None
                    best = None
                    for flip in (False, True):
                        apply = self._rigid(glocal[a], glocal[b], fplace[a], fplace[b], flip)
                        placed_pts = {v: apply(glocal[v]) for v in gface}
                        # G must land on the far side of edge ab from F
                        ax, ay = fplace[a]
                        bx, by = fplace[b]
                        ex, ey = bx - ax, by - ay
                        f_side = g_side = 0.0
                        for v, (px, py) in fplace.items():
                            if v not in (a, b):
                                f_side += ex * (py - ay) - ey * (px - ax)
                        for v, (px, py) in placed_pts.items():
                            if v not in (a, b):
                                g_side += ex * (py - ay) - ey * (px - ax)
                        if f_side * g_side < 0:
                            best = placed_pts
                            break
                    if best is None:
                        best = {v: apply(glocal[v]) for v in gface}
                    self.placements[gj] = best
                    placed.add(gj)
                    self.order.append(gj)
                    nxt.append(gj)
            frontier = nxt

    def map_point(self, fi: int, p3d) -> Pt:
        """Map a 3D point lying on face fi into the net."""
        face = self.faces[fi]
        a = self.verts[face[0]]
        b = self.verts[face[1]]
        c = self.verts[face[2]]
        e1 = [b[i] - a[i] for i in range(3)]
        n1 = math.sqrt(sum(x * x for x in e1))
        e1 = [x / n1 for x in e1]
        t = [c[i] - a[i] for i in range(3)]
        proj = sum(t[i] * e1[i] for i in range(3))
        e2 = [t[i] - proj * e1[i] for i in range(3)]
        n2 = math.sqrt(sum(x * x for x in e2))
        e2 = [x / n2 for x in e2]
        p = tuple(map(float, p3d))
        d = [p[i] - a[i] for i in range(3)]
        local = (sum(d[i] * e1[i] for i in range(3)), sum(d[i] * e2[i] for i in range(3)))
        place = self.placements[fi]
        assert place is not None
        la, lb = self._local(face)[face[0]], self._local(face)[face[1]]
        apply = self._rigid(la, lb, place[face[0]], place[face[1]], flip=self._is_flipped(fi))
        return apply(local)

    def _is_flipped(self, fi: int) -> bool:
        face = self.faces[fi]
        local = self._local(face)
        place = self.placements[fi]
        assert place is not None

        def signed_area(pts: list[Pt]) -> float:
            s = 0.0
            for i in range(len(pts)):
                x1, y1 = pts[i]
                x2, y2 = pts[(i + 1) % len(pts)]
                s += x1 * y2 - x2 * y1
            return s

        return signed_area([local[v] for v in face]) * signed_area([place[v] for v in face]) < 0


# ---------------------------------------------------------------------------
# layouts per source family

_POLY_KIND = {
    "tetra_net": "tetrahedron",
    "cube_net": "cube",
    "octa_net": "octahedron",
    "icosa_net": "icosahedron",
    "dodeca_net": "dodecahedron",
}


def _dodeca_faces() -> tuple[list, list[list[int]]]:
    """Dodecahedron pentagons, as index lists into its vertex list."""
    from latinboards.geometry import _dodeca_vertices, _icosa_vertices, _triangle_faces_from_edges, _edges_by_min_distance

    iverts = _icosa_vertices()
    ifaces = _triangle_faces_from_edges(iverts, _edges_by_min_distance(iverts))
    dverts = _dodeca_vertices()
    faces = []
    for vi in range(len(iverts)):
        ring = [fi for fi, f in enumerate(ifaces) if vi in f]
        faces.append(ring)
    return dverts, faces


def source_layout(source: Source) -> dict[int, dict]:
    """Per-point layout: position plus a cell polygon where one exists."""
    fam = source.family
    if fam.startswith("biregular_") or fam in ("custom", "kaleidoscopic"):
        out = {}
        polygons = None
        if fam.startswith("biregular_") and all(p.kind == FACE for p in source.points):
            shape = fam.removeprefix("biregular_")
            polys = biregular_cell_polygons(shape, source.order)
            polygons = [[(_f(x), _f(y)) for x, y in poly] for poly in polys]
        for i, p in enumerate(sorted(source.points, key=lambda p: p.id)):
            pos = (_f(p.coords[0]), _f(p.coords[1]))
            entry: dict = {"pos": [pos[0], pos[1]]}
            if polygons is not None:
                entry["polygon"] = [[x, y] for x, y in polygons[i]]
            out[p.id] = entry
        return _with_default_polygons(out)
    if fam in _POLY_KIND:
        return _polyhedral_layout(source, _POLY_KIND[fam])
    raise NoLayout(f"no layout rule for source family {fam!r}")


def _polyhedral_layout(source: Source, kind: str) -> dict[int, dict]:
    m = source.order
    if kind == "dodecahedron":
        verts, faces = _dodeca_faces()
    else:
        verts, faces = polyhedron_data(kind)
    unfolder = _NetUnfolder(verts, faces)
    index = source.coords_index()
    out: dict[int, dict] = {}
    if kind == "dodecahedron":
        # edge centers: assign each edge to its earliest-placed face
        face_rank = {fi: r for r, fi in enumerate(unfolder.order)}
        from latinboards.geometry import _edges_by_min_distance

        edges = _edges_by_min_distance(verts)
        for a, b in edges:
            mid = vmean([verts[a], verts[b]])
            pid = index[mid]
            owners = [fi for fi, f in enumerate(unfolder.faces) if a in f and b in f]
            fi = min(owners, key=lambda f: face_rank[f])
            out[pid] = {"pos": list(unfolder.map_point(fi, mid))}
        return _with_default_polygons(out)
    if kind == "cube":
        from fractions import Fraction

        from latinboards.geometry import vadd, vscale

        for fi, face in enumerate(unfolder.faces):
            corners = [verts[i] for i in face]
            origin = corners[0]
            offsets = sorted(
                (vsub(c, origin) for c in corners[1:]),
                key=lambda o: (qdot(o, o), o),
            )
            u, v = offsets[0], offsets[1]
            for i in range(m):
                for j in range(m):
                    center = vadd(
                        origin,
                        vadd(
                            vscale(u, Fraction(2 * i + 1, 2 * m)),
                            vscale(v, Fraction(2 * j + 1, 2 * m)),
                        ),
                    )
                    pid = index[center]
                    corners2d = []
                    for di, dj in ((0, 0), (1, 0), (1, 1), (0, 1)):
                        pt = vadd(
                            origin,
                            vadd(
                                vscale(u, Fraction(i + di, m)),
                                vscale(v, Fraction(j + dj, m)),
                            ),
                        )
                        corners2d.append(list(unfolder.map_point(fi, pt)))
                    out[pid] = {
                        "pos": list(unfolder.map_point(fi, center)),
                        "polygon": corners2d,
                    }
        return out
    # triangle-faced solids
    for fi, face in enumerate(unfolder.faces):
        a, b, c = (verts[i] for i in face)
        for cell in subdivide_triangle(a, b, c, m):
            center = vmean(cell)
            pid = index[center]
            out[pid] = {
                "pos": list(unfolder.map_point(fi, center)),
                "polygon": [list(unfolder.map_point(fi, corner)) for corner in cell],
            }
    return out


def _with_default_polygons(layout: dict[int, dict]) -> dict[int, dict]:
    """Give polygon-less points a small square so cell-based UIs can draw them."""
    missing = [pid for pid, e in layout.items() if "polygon" not in e]
    if not missing:
        return layout
    xs = sorted({tuple(e["pos"]) for e in layout.values()})
    if len(xs) > 1:
        dmin = min(
            math.dist(a, b) for a, b in zip(xs, xs[1:])
        )
        r = max(dmin * 0.45, 1e-3)
    else:
        r = 0.5
    for pid in missing:
        x, y = layout[pid]["pos"]
        layout[pid]["polygon"] = [
            [x - r, y - r],
            [x + r, y - r],
            [x + r, y + r],
            [x - r, y + r],
        ]
    return layout


def board_layout(board: Board) -> dict[int, dict]:
    if board.source is None:
        raise NoLayout("board has no geometric source; supply a layout explicitly")
    return source_layout(board.source)


# ---------------------------------------------------------------------------
# SVG

_PALETTE = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#17becf", "#e377c2", "#7f7f7f", "#bcbd22",
]


def render_svg(
    board: Board,
    layout: Mapping[int, Mapping] | None = None,
    symbols: Mapping[int, str] | None = None,
    clues: Mapping[int, str] | None = None,
    show_cells: bool = False,
    scale: float = 40.0,
) -> str:
    """Deterministic SVG: cell polygons, line paths, point glyphs, symbols."""
    if layout is None:
        layout = board_layout(board)
    layout = {int(k): v for k, v in layout.items()}
    missing = [p for p in board.design.points if p not in layout]
    if missing:
        raise NoLayout(f"layout misses points {missing[:5]}")
    xs = [e["pos"][0] for e in layout.values()]
    ys = [e["pos"][1] for e in layout.values()]
    pad = 1.0
    minx, maxx = min(xs) - pad, max(xs) + pad
    miny, maxy = min(ys) - pad, max(ys) + pad
    width = (maxx - minx) * scale
    height = (maxy - miny) * scale

    def sx(x: float) -> str:
        return _fmt((x - minx) * scale)

    def sy(y: float) -> str:
        return _fmt((maxy - y) * scale)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    ]
    if show_cells:
        parts.append('<g class="cells" fill="#ffffff" stroke="#444444" stroke-width="1">')
        for p in board.design.points:
            poly = layout[p].get("polygon")
            if poly:
                pts = " ".join(f"{sx(x)},{sy(y)}" for x, y in poly)
                parts.append(f'<polygon data-point="{p}" points="{pts}"/>')
        parts.append("</g>")

    line_class = {}
    for name in sorted(board.design.classes):
        for idx in board.design.classes[name]:
            line_class[idx] = name
    class_color = {
        name: _PALETTE[i % len(_PALETTE)]
        for i, name in enumerate(sorted(board.design.classes))
    }
    parts.append('<g class="lines" fill="none" stroke-width="1.5" opacity="0.8">')
    for idx, line in enumerate(board.design.lines):
        color = class_color.get(line_class.get(idx), _PALETTE[idx % len(_PALETTE)])
        pts = sorted(line)
        path = " ".join(
            f"{'M' if i == 0 else 'L'} {sx(layout[p]['pos'][0])} {sy(layout[p]['pos'][1])}"
            for i, p in enumerate(pts)
        )
        parts.append(f'<path data-line="{idx}" stroke="{color}" d="{path}"/>')
    parts.append("</g>")

    parts.append('<g class="points" fill="#222222">')
    for p in board.design.points:
        x, y = layout[p]["pos"]
        parts.append(f'<circle data-point="{p}" cx="{sx(x)}" cy="{sy(y)}" r="2.5"/>')
    parts.append("</g>")

    if symbols:
        parts.append(
            '<g class="symbols" font-family="monospace" font-size="14" '
            'text-anchor="middle" fill="#000000">'
        )
        for p in sorted(board.design.points):
            sym = symbols.get(p)
            if sym is None:
                continue
            x, y = layout[p]["pos"]
            weight = ' font-weight="bold"' if clues and p in clues else ""
            parts.append(
                f'<text data-point="{p}" x="{sx(x)}" y="{sy(y)}" dy="5"{weight}>{sym}</text>'
            )
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
