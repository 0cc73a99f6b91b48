"""Geometric sources: tiled polygons, polyhedral surfaces, kaleidoscopic orbits.

Every coordinate is exact (see :mod:`latinboards.exactnum`), so checking
that a transform maps a point set onto itself is plain equality, with no
tolerance anywhere.  Polyhedral sources are represented folded, in 3D;
unfolding is a rendering concern handled elsewhere.

Conventions fixed here so constructions are reproducible byte-for-byte:

* point ids are assigned row-major from the bottom-left (sort by (y, x)
  in 2D), per point kind;
* biregular polygons are centered so the dihedral group fixes the
  centroid;
* polyhedral symmetry groups are the rotation groups (orders 12/24/60).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from latinboards.design import Perm, PermGroup
from latinboards.errors import AmbiguousSeed, InvalidParameter, NotInvariant, UnsupportedSource
from latinboards.exactnum import HALF, PHI, Quad, sqrt_int

FACE = "face_center"
VERTEX = "vertex"
EDGE = "edge_center"

Vec = tuple[Quad, ...]


def vec(*xs) -> Vec:
    return tuple(Quad.of(x) for x in xs)


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vscale(u: Vec, s) -> Vec:
    q = Quad.of(s)
    return tuple(a * q for a in u)


def vmean(vectors: Sequence[Vec]) -> Vec:
    n = len(vectors)
    acc = vectors[0]
    for v in vectors[1:]:
        acc = vadd(acc, v)
    return vscale(acc, Fraction(1, n))


def dot(u: Vec, v: Vec) -> Quad:
    total = Quad(0)
    for a, b in zip(u, v):
        total = total + a * b
    return total


@dataclass(frozen=True)
class Point:
    id: int
    coords: Vec
    kind: str


@dataclass(frozen=True)
class Transform:
    """An isometry x -> M x + t with an exact matrix."""

    matrix: tuple[Vec, ...]
    translation: Vec
    name: str = ""

    def apply(self, p: Vec) -> Vec:
        moved = tuple(dot(row, p) for row in self.matrix)
        return vadd(moved, self.translation)

    def compose(self, other: "Transform") -> "Transform":
        """self after other: (self * other)(x) = self(other(x))."""
        m = tuple(
            tuple(
                sum((self.matrix[i][k] * other.matrix[k][j] for k in range(len(self.matrix))), Quad(0))
                for j in range(len(self.matrix))
            )
            for i in range(len(self.matrix))
        )
        t = vadd(tuple(dot(row, other.translation) for row in self.matrix), self.translation)
        return Transform(m, t, name=f"{self.name}*{other.name}")

    def key(self):
        return (self.matrix, self.translation)

    def is_isometry(self) -> bool:
        n = len(self.matrix)
        cols = [tuple(self.matrix[i][j] for i in range(n)) for j in range(n)]
        for i in range(n):
            for j in range(n):
                expected = Quad(1 if i == j else 0)
                if dot(cols[i], cols[j]) != expected:
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, Transform) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def identity_transform(dim: int) -> Transform:
    m = tuple(tuple(Quad(1 if i == j else 0) for j in range(dim)) for i in range(dim))
    return Transform(m, tuple(Quad(0) for _ in range(dim)), name="id")


@dataclass(frozen=True)
class SymmetryGroup:
    generators: tuple[Transform, ...]
    kind: str
    n: int = 0
    center: tuple = ()
    mirror: str = "x"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def elements(self) -> tuple[Transform, ...]:
        if "elements" not in self._cache:
            seen: dict = {}
            ident = identity_transform(len(self.generators[0].translation))
            seen[ident.key()] = ident
            frontier = [ident]
            while frontier:
                new = []
                for g in self.generators:
                    for h in frontier:
                        t = g.compose(h)
                        if t.key() not in seen:
                            seen[t.key()] = t
                            new.append(t)
                frontier = new
            self._cache["elements"] = tuple(seen.values())
        return self._cache["elements"]

    @property
    def order(self) -> int:
        return len(self.elements())

    def __repr__(self):
        label = f"dihedral({self.n})" if self.kind == "dihedral" else self.kind
        return f"SymmetryGroup({label}, order {self.order})"


@dataclass(frozen=True)
class Source:
    points: tuple[Point, ...]
    group: SymmetryGroup
    family: str
    order: int

    def coords_index(self) -> dict[Vec, int]:
        return {p.coords: p.id for p in self.points}

    def point(self, pid: int) -> Point:
        for p in self.points:
            if p.id == pid:
                return p
        raise KeyError(pid)

    def relabeled(self, mapping: dict[int, int]) -> "Source":
        pts = tuple(
            sorted(
                (Point(mapping[p.id], p.coords, p.kind) for p in self.points),
                key=lambda p: p.id,
            )
        )
        return Source(pts, self.group, self.family, self.order)


# ---------------------------------------------------------------------------
# dihedral groups

# exact (cos, sin) of the base rotation 2*pi/n
_EXACT_ROTATIONS: dict[int, tuple[Quad, Quad]] = {
    1: (Quad(1), Quad(0)),
    2: (Quad(-1), Quad(0)),
    3: (Quad(Fraction(-1, 2)), sqrt_int(3) * HALF),
    4: (Quad(0), Quad(1)),
    6: (HALF, sqrt_int(3) * HALF),
    8: (sqrt_int(2) * HALF, sqrt_int(2) * HALF),
    12: (sqrt_int(3) * HALF, HALF),
}


def dihedral_group(n: int, center: Sequence = (0, 0), mirror: str = "x") -> SymmetryGroup:
    """The 2n rotations and reflections of a regular n-gon about ``center``.

    ``mirror`` picks the generating reflection axis through the center:
    "x" (horizontal) or "y" (vertical), whichever the polygon actually
    has.
    """
    if n < 3:
        raise InvalidParameter("dihedral group needs n >= 3")
    if n not in _EXACT_ROTATIONS:
        supported = sorted(k for k in _EXACT_ROTATIONS if k >= 3)
        raise InvalidParameter(
            f"no exact quadratic representation for n={n}; supported: {supported}"
        )
    c, s = _EXACT_ROTATIONS[n]
    ctr = vec(*center)

    def about_center(matrix, name):
        # x -> M (x - ctr) + ctr
        t = vsub(ctr, tuple(dot(row, ctr) for row in matrix))
        return Transform(matrix, t, name=name)

    rot = about_center(((c, -s), (s, c)), f"rot{360 // n if 360 % n == 0 else n}")
    if mirror == "x":
        flip = about_center((vec(1, 0), vec(0, -1)), "reflect-axis-0")
    elif mirror == "y":
        flip = about_center((vec(-1, 0), vec(0, 1)), "reflect-axis-90")
    else:
        raise InvalidParameter("mirror must be 'x' or 'y'")
    group = SymmetryGroup((rot, flip), kind="dihedral", n=n, center=ctr, mirror=mirror)
    assert group.order == 2 * n
    return group


# ---------------------------------------------------------------------------
# polyhedral rotation groups


def _mat(rows) -> tuple[Vec, ...]:
    return tuple(vec(*r) for r in rows)


def _rotation_group(kind: str, generators: Sequence[Transform], expect: int) -> SymmetryGroup:
    g = SymmetryGroup(tuple(generators), kind=kind)
    if g.order != expect:
        raise AssertionError(f"{kind} closure has {g.order} elements, expected {expect}")
    return g


def tetrahedral_group() -> SymmetryGroup:
    cycle = Transform(_mat([(0, 0, 1), (1, 0, 0), (0, 1, 0)]), vec(0, 0, 0), "rot120-diag")
    flip = Transform(_mat([(-1, 0, 0), (0, -1, 0), (0, 0, 1)]), vec(0, 0, 0), "rot180-z")
    return _rotation_group("tetrahedral", [cycle, flip], 12)


def octahedral_group() -> SymmetryGroup:
    quarter = Transform(_mat([(0, -1, 0), (1, 0, 0), (0, 0, 1)]), vec(0, 0, 0), "rot90-z")
    cycle = Transform(_mat([(0, 0, 1), (1, 0, 0), (0, 1, 0)]), vec(0, 0, 0), "rot120-diag")
    return _rotation_group("octahedral", [quarter, cycle], 24)


def icosahedral_group() -> SymmetryGroup:
    # 72-degree turn about the vertex axis (0, 1, phi); entries live in Q(sqrt5)
    c = (sqrt_int(5) - 1) / 4
    half_phi = PHI * HALF
    r5 = Transform(
        (
            (c, -half_phi, HALF),
            (half_phi, HALF, c),
            (-HALF, c, half_phi),
        ),
        vec(0, 0, 0),
        "rot72-vertex",
    )
    cycle = Transform(_mat([(0, 0, 1), (1, 0, 0), (0, 1, 0)]), vec(0, 0, 0), "rot120-face")
    return _rotation_group("icosahedral", [r5, cycle], 60)


# ---------------------------------------------------------------------------
# biregular polygons

_H = sqrt_int(3) * HALF  # height of a unit equilateral triangle row


def _sorted_points(coords: Iterable[Vec], kind: str) -> list[Point]:
    ordered = sorted(set(coords), key=lambda c: tuple(c[::-1]))
    return [Point(i, c, kind) for i, c in enumerate(ordered)]


def tri_vertex(i: int, j: int) -> Vec:
    """Triangular-lattice vertex at axial (i, j)."""
    return (Quad(i) + Quad(j) * HALF, Quad(j) * _H)


def triangle_cells(n: int) -> list[tuple[str, int, int, tuple[Vec, ...]]]:
    """Unit cells of an order-n triangle: (orientation, i, j, corners)."""
    v = tri_vertex
    cells = [
        ("up", i, j, (v(i, j), v(i + 1, j), v(i, j + 1)))
        for j in range(n)
        for i in range(n - j)
    ]
    cells += [
        ("down", i, j, (v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)))
        for j in range(n - 1)
        for i in range(n - 1 - j)
    ]
    return cells


def hexagon_cells(n: int) -> list[tuple[str, int, int, tuple[Vec, ...]]]:
    """Unit cells of an order-n hexagon: (orientation, q, r, corners)."""

    def inside(q, r):
        return abs(q) <= n and abs(r) <= n and abs(q + r) <= n

    v = tri_vertex
    cells = []
    for q in range(-n - 1, n + 1):
        for r in range(-n - 1, n + 1):
            if inside(q, r) and inside(q + 1, r) and inside(q, r + 1):
                cells.append(("up", q, r, (v(q, r), v(q + 1, r), v(q, r + 1))))
            if inside(q + 1, r) and inside(q, r + 1) and inside(q + 1, r + 1):
                cells.append(("down", q, r, (v(q + 1, r), v(q, r + 1), v(q + 1, r + 1))))
    return cells


def _triangle_lattice_cells(n: int):
    cells = triangle_cells(n)
    ups = [c[3] for c in cells if c[0] == "up"]
    downs = [c[3] for c in cells if c[0] == "down"]
    return ups, downs


def _hexagon_lattice_cells(n: int):
    cells = hexagon_cells(n)
    ups = [c[3] for c in cells if c[0] == "up"]
    downs = [c[3] for c in cells if c[0] == "down"]
    return ups, downs


def _cells_to_points(cells, kind: str):
    if kind == FACE:
        return [vmean(c) for c in cells]
    if kind == VERTEX:
        return [corner for c in cells for corner in c]
    if kind == EDGE:
        mids = []
        for c in cells:
            for a, b in itertools.combinations(c, 2):
                mids.append(vmean([a, b]))
        return mids
    raise InvalidParameter(f"unknown point kind {kind!r}")


def build_biregular(family: str, n: int, point_kind: str = FACE) -> Source:
    """A regular polygon tiled by regular polygons, with points of one kind.

    Point counts follow the closed forms of the biregular parameter
    table: triangle (n+1)(n+2)/2 / 3n(n+1)/2 / n^2, square (n+1)^2 /
    2n(n+1) / n^2, hexagon 3n^2+3n+1 / 3n(3n+1) / 6n^2 for vertices,
    edges and faces respectively.
    """
    if n < 2:
        raise InvalidParameter("biregular order must exceed 1")
    if family == "triangle":
        ups, downs = _triangle_lattice_cells(n)
        cells = ups + downs
        center = (Quad(n) * HALF, Quad(n) * _H / 3)
        group = dihedral_group(3, center, mirror="y")  # apex-up: vertical axis
    elif family == "square":
        def v(i, j):
            return vec(i, j)

        cells = [
            (v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1))
            for j in range(n)
            for i in range(n)
        ]
        center = (Quad(n) * HALF, Quad(n) * HALF)
        group = dihedral_group(4, center)
    elif family == "hexagon":
        ups, downs = _hexagon_lattice_cells(n)
        cells = ups + downs
        center = vec(0, 0)
        group = dihedral_group(6, center)
    else:
        raise InvalidParameter(f"unknown biregular family {family!r}")

    if family == "square" and point_kind == EDGE:
        coords = []
        for c in cells:
            for a, b in zip(c, c[1:] + c[:1]):
                coords.append(vmean([a, b]))
    else:
        coords = _cells_to_points(cells, point_kind)
    points = tuple(_sorted_points(coords, point_kind))
    src = Source(points, group, family=f"biregular_{family}", order=n)
    _check_invariant(src)
    return src


def biregular_cell_polygons(family: str, n: int) -> list[tuple[Vec, ...]]:
    """Face outlines in id order for FACE-kind sources (rendering/layout)."""
    if family == "triangle":
        ups, downs = _triangle_lattice_cells(n)
        cells = ups + downs
    elif family == "square":
        cells = [
            (vec(i, j), vec(i + 1, j), vec(i + 1, j + 1), vec(i, j + 1))
            for j in range(n)
            for i in range(n)
        ]
    elif family == "hexagon":
        ups, downs = _hexagon_lattice_cells(n)
        cells = ups + downs
    else:
        raise InvalidParameter(f"unknown biregular family {family!r}")
    keyed = sorted(cells, key=lambda c: tuple(vmean(c)[::-1]))
    return [tuple(c) for c in keyed]


# ---------------------------------------------------------------------------
# polyhedra

_TETRA_VERTICES = [vec(1, 1, 1), vec(1, -1, -1), vec(-1, 1, -1), vec(-1, -1, 1)]
_TETRA_FACES = [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)]

_OCTA_VERTICES = [
    vec(1, 0, 0), vec(-1, 0, 0), vec(0, 1, 0), vec(0, -1, 0), vec(0, 0, 1), vec(0, 0, -1),
]


def _octa_faces():
    faces = []
    for sx in (1, -1):
        for sy in (1, -1):
            for sz in (1, -1):
                ix = 0 if sx > 0 else 1
                iy = 2 if sy > 0 else 3
                iz = 4 if sz > 0 else 5
                faces.append((ix, iy, iz))
    return faces


def _icosa_vertices() -> list[Vec]:
    one = Quad(1)
    pts = []
    for a, b in [(one, PHI), (one, -PHI), (-one, PHI), (-one, -PHI)]:
        pts.append((Quad(0), a, b))
        pts.append((a, b, Quad(0)))
        pts.append((b, Quad(0), a))
    return pts


def _dodeca_vertices() -> list[Vec]:
    """Dodecahedron as the dual of the icosahedron above.

    Vertices are unnormalized icosahedron face-centroid sums, which keeps
    every coordinate in Q(sqrt5) and aligns the rotation axes with
    :func:`icosahedral_group` (a circumradius-1 rescaling would leave the
    quadratic field).
    """
    verts = _icosa_vertices()
    faces = _triangle_faces_from_edges(verts, _edges_by_min_distance(verts))
    out = []
    for f in faces:
        a, b, c = (verts[i] for i in f)
        out.append(vadd(vadd(a, b), c))
    return out


def _edges_by_min_distance(vertices: list[Vec]) -> list[tuple[int, int]]:
    best: Quad | None = None
    pairs = []
    for i, j in itertools.combinations(range(len(vertices)), 2):
        d = dot(vsub(vertices[i], vertices[j]), vsub(vertices[i], vertices[j]))
        pairs.append((d, i, j))
    best = min(p[0] for p in pairs)
    return [(i, j) for d, i, j in pairs if d == best]


def _triangle_faces_from_edges(vertices, edges) -> list[tuple[int, int, int]]:
    adj: dict[int, set[int]] = {i: set() for i in range(len(vertices))}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    faces = set()
    for i, j in edges:
        for k in adj[i] & adj[j]:
            faces.add(tuple(sorted((i, j, k))))
    return sorted(faces)


def subdivide_triangle(a: Vec, b: Vec, c: Vec, m: int) -> list[tuple[Vec, ...]]:
    """The m^2 sub-triangles of (a, b, c) as corner tuples."""
    u = vscale(vsub(b, a), Fraction(1, m))
    v = vscale(vsub(c, a), Fraction(1, m))

    def at(i, j):
        return vadd(a, vadd(vscale(u, i), vscale(v, j)))

    cells = []
    for j in range(m):
        for i in range(m - j):
            cells.append((at(i, j), at(i + 1, j), at(i, j + 1)))
    for j in range(m - 1):
        for i in range(m - 1 - j):
            cells.append((at(i + 1, j), at(i, j + 1), at(i + 1, j + 1)))
    return cells


def polyhedron_data(kind: str):
    """(vertices, faces) for the five regular solids; faces as vertex index tuples."""
    if kind == "tetrahedron":
        return _TETRA_VERTICES, list(_TETRA_FACES)
    if kind == "octahedron":
        return _OCTA_VERTICES, _octa_faces()
    if kind == "cube":
        verts = [vec(sx, sy, sz) for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)]
        faces = []
        for axis in range(3):
            for sign in (1, -1):
                idxs = [i for i, v in enumerate(verts) if v[axis] == Quad(sign)]
                faces.append(tuple(idxs))
        return verts, faces
    if kind == "icosahedron":
        verts = _icosa_vertices()
        return verts, _triangle_faces_from_edges(verts, _edges_by_min_distance(verts))
    if kind == "dodecahedron":
        verts = _dodeca_vertices()
        return verts, None  # pentagon faces unused; edges suffice
    raise UnsupportedSource(f"unknown polyhedron {kind!r}")


def polyhedron_group(kind: str) -> SymmetryGroup:
    if kind == "tetrahedron":
        return tetrahedral_group()
    if kind in ("cube", "octahedron"):
        return octahedral_group()
    if kind in ("icosahedron", "dodecahedron"):
        return icosahedral_group()
    raise UnsupportedSource(f"unknown polyhedron {kind!r}")


def build_polyhedral_source(kind: str, m: int = 1, point_kind: str = FACE) -> Source:
    """Points on the folded surface of a regular polyhedron.

    ``face_center`` subdivides each face into m^2 triangles (or m x m
    squares on the cube) and takes cell centers; ``edge_center`` takes
    edge midpoints (dodecahedron only, m ignored).
    """
    if m < 1:
        raise InvalidParameter("subdivision must be at least 1")
    group = polyhedron_group(kind)
    if kind == "dodecahedron":
        if point_kind != EDGE:
            raise UnsupportedSource("dodecahedron source uses edge centers")
        verts = _dodeca_vertices()
        edges = _edges_by_min_distance(verts)
        coords = [vmean([verts[i], verts[j]]) for i, j in edges]
        pts = tuple(Point(i, c, EDGE) for i, c in enumerate(sorted(coords)))
        src = Source(pts, group, family="dodeca_net", order=1)
        _check_invariant(src)
        return src
    if point_kind != FACE:
        raise UnsupportedSource(f"{kind} source supports face centers only")
    verts, faces = polyhedron_data(kind)
    centers: list[Vec] = []
    if kind == "cube":
        for face in faces:
            corners = [verts[i] for i in face]
            origin = corners[0]
            offsets = sorted(
                (vsub(c, origin) for c in corners[1:]),
                key=lambda o: (dot(o, o), o),
            )
            u, v = offsets[0], offsets[1]  # the two edge directions from origin
            for i in range(m):
                for j in range(m):
                    offs = vadd(
                        vscale(u, Fraction(2 * i + 1, 2 * m)),
                        vscale(v, Fraction(2 * j + 1, 2 * m)),
                    )
                    centers.append(vadd(origin, offs))
    else:
        for face in faces:
            a, b, c = (verts[i] for i in face)
            for cell in subdivide_triangle(a, b, c, m):
                centers.append(vmean(cell))
    pts = tuple(Point(i, c, FACE) for i, c in enumerate(sorted(centers)))
    family = {"tetrahedron": "tetra_net", "cube": "cube_net", "octahedron": "octa_net", "icosahedron": "icosa_net"}[kind]
    src = Source(pts, group, family=family, order=m)
    _check_invariant(src)
    return src


# ---------------------------------------------------------------------------
# group actions on point sets


def induced_permutation(t: Transform, points: Sequence[Point]) -> Perm:
    """The point permutation encoding positions before and after ``t``."""
    index = {p.coords: p.id for p in points}
    mapping = {}
    for p in points:
        image = t.apply(p.coords)
        target = index.get(image)
        if target is None:
            raise NotInvariant(f"{t.name or 'transform'} moves point {p.id} off the set")
        mapping[p.id] = target
    return Perm(mapping)


def induced_group(source: Source) -> PermGroup:
    """Image of the source's symmetry group under the natural action."""
    perms = [induced_permutation(t, source.points) for t in source.group.elements()]
    return PermGroup.from_elements(sorted(set(perms), key=lambda p: p._items))


def _check_invariant(source: Source) -> None:
    for t in source.group.generators:
        induced_permutation(t, source.points)


def kaleidoscopic_set(group: SymmetryGroup, seeds: Sequence[Sequence]) -> Source:
    """Union of the free orbits of ``seeds``; |points| = |seeds| * |group|.

    A seed whose orbit is smaller than the group order sits on a mirror
    (or coincides with another orbit) and is rejected, which keeps the
    size contract exact.
    """
    elements = group.elements()
    all_coords: list[Vec] = []
    seen: set[Vec] = set()
    for seed in seeds:
        s = vec(*seed)
        orbit = {t.apply(s) for t in elements}
        if len(orbit) < len(elements):
            raise AmbiguousSeed(f"seed {seed} has a nontrivial stabilizer")
        if orbit & seen:
            raise AmbiguousSeed(f"seed {seed} repeats points of an earlier orbit")
        seen |= orbit
        all_coords.extend(orbit)
    points = tuple(_sorted_points(all_coords, VERTEX))
    src = Source(points, group, family="kaleidoscopic", order=0)
    _check_invariant(src)
    return src
