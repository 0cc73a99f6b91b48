import math

import pytest

from latinboards.errors import AmbiguousSeed, InvalidParameter, NotInvariant, UnsupportedSource
from latinboards.exactnum import Quad
from latinboards.geometry import (
    EDGE,
    FACE,
    VERTEX,
    build_biregular,
    build_polyhedral_source,
    dihedral_group,
    icosahedral_group,
    induced_group,
    induced_permutation,
    kaleidoscopic_set,
    octahedral_group,
    tetrahedral_group,
    vec,
)


def test_dihedral_orders():
    assert dihedral_group(3).order == 6
    assert dihedral_group(4).order == 8
    assert dihedral_group(12).order == 24
    with pytest.raises(InvalidParameter):
        dihedral_group(2)
    with pytest.raises(InvalidParameter):
        dihedral_group(5)


def test_dihedral_12_against_float_enumeration():
    # independent oracle: brute-force closure with float matrices
    import itertools

    def rot(k):
        a = 2 * math.pi * k / 12
        return ((math.cos(a), -math.sin(a)), (math.sin(a), math.cos(a)))

    def mul(m1, m2):
        return tuple(
            tuple(sum(m1[i][k] * m2[k][j] for k in range(2)) for j in range(2))
            for i in range(2)
        )

    mirror = ((1.0, 0.0), (0.0, -1.0))
    mats = set()
    for k in range(12):
        for use_mirror in (False, True):
            m = rot(k) if not use_mirror else mul(rot(k), mirror)
            mats.add(tuple(round(x, 9) + 0.0 for row in m for x in row))
    assert len(mats) == 24

    group = dihedral_group(12)
    exact = set()
    for t in group.elements():
        exact.add(tuple(round(float(x), 9) + 0.0 for row in t.matrix for x in row))
    assert exact == mats


def test_all_transforms_are_isometries():
    for group in (dihedral_group(3), dihedral_group(6), tetrahedral_group(), icosahedral_group()):
        for t in group.elements():
            assert t.is_isometry()


FORMULAS = {
    "triangle": {
        VERTEX: lambda n: (n + 1) * (n + 2) // 2,
        EDGE: lambda n: 3 * n * (n + 1) // 2,
        FACE: lambda n: n * n,
    },
    "square": {
        VERTEX: lambda n: (n + 1) ** 2,
        EDGE: lambda n: 2 * n * (n + 1),
        FACE: lambda n: n * n,
    },
    "hexagon": {
        VERTEX: lambda n: 3 * n * n + 3 * n + 1,
        EDGE: lambda n: 3 * n * (3 * n + 1),
        FACE: lambda n: 6 * n * n,
    },
}


@pytest.mark.parametrize("family", ["triangle", "square", "hexagon"])
@pytest.mark.parametrize("kind", [VERTEX, EDGE, FACE])
def test_biregular_counts_match_closed_forms(family, kind):
    for n in range(2, 9):
        src = build_biregular(family, n, kind)
        assert len(src.points) == FORMULAS[family][kind](n), (family, kind, n)


def test_biregular_examples():
    assert len(build_biregular("triangle", 6, FACE).points) == 36
    assert len(build_biregular("hexagon", 3, FACE).points) == 54
    with pytest.raises(InvalidParameter):
        build_biregular("square", 1, FACE)


def test_biregular_group_sizes():
    assert build_biregular("triangle", 2).group.order == 6
    assert build_biregular("square", 2).group.order == 8
    assert build_biregular("hexagon", 2).group.order == 12


def test_polyhedral_group_orders():
    assert tetrahedral_group().order == 12
    assert octahedral_group().order == 24
    assert icosahedral_group().order == 60


def test_polyhedral_sources():
    assert len(build_polyhedral_source("tetrahedron", 4, FACE).points) == 64
    assert len(build_polyhedral_source("cube", 4, FACE).points) == 96
    assert len(build_polyhedral_source("octahedron", 3, FACE).points) == 72
    assert len(build_polyhedral_source("icosahedron", 2, FACE).points) == 80
    assert len(build_polyhedral_source("dodecahedron", 1, EDGE).points) == 30
    with pytest.raises(UnsupportedSource):
        build_polyhedral_source("dodecahedron", 1, FACE)
    with pytest.raises(UnsupportedSource):
        build_polyhedral_source("cube", 2, EDGE)


def test_source_invariance_under_full_group():
    for src in (
        build_biregular("triangle", 4, FACE),
        build_biregular("hexagon", 2, FACE),
        build_polyhedral_source("tetrahedron", 2, FACE),
        build_polyhedral_source("dodecahedron", 1, EDGE),
    ):
        for t in src.group.elements():
            induced_permutation(t, src.points)  # raises NotInvariant on failure


def test_induced_permutation_90_rotation_on_grid():
    src = build_biregular("square", 3, FACE)
    group = src.group
    quarter = [t for t in group.elements() if t.name.startswith("rot") and t.matrix[0][0] == Quad(0)]
    p = induced_permutation(quarter[0], src.points)
    assert p.order() == 4
    center = src.points[4]  # 3x3 grid, middle point
    assert p(center.id) == center.id


def test_induced_permutation_not_invariant():
    src = build_biregular("square", 3, FACE)
    shifted = dihedral_group(4, center=(0, 0)).generators[0]
    with pytest.raises(NotInvariant):
        induced_permutation(shifted, src.points)


def test_homomorphism_on_generator_pairs():
    for src in (
        build_biregular("triangle", 3, FACE),
        build_biregular("square", 3, FACE),
        build_polyhedral_source("octahedron", 2, FACE),
    ):
        gens = src.group.generators
        for t1 in gens:
            for t2 in gens:
                left = induced_permutation(t1.compose(t2), src.points)
                right = induced_permutation(t1, src.points) * induced_permutation(t2, src.points)
                assert left == right
        ident = induced_permutation(src.group.elements()[0].compose(src.group.elements()[0]), src.points)
        assert ident is not None


def test_induced_group_order_divides_transform_count():
    src = build_biregular("square", 3, FACE)
    g = induced_group(src)
    assert g.order == 8  # faithful on a 3x3 grid


def test_kaleidoscopic_sizes():
    d3 = dihedral_group(3)
    src = kaleidoscopic_set(d3, [(5, 1)])
    assert len(src.points) == 6
    d4 = dihedral_group(4)
    src2 = kaleidoscopic_set(d4, [(5, 1), (7, 2)])
    assert len(src2.points) == 16
    assert induced_group(src2).order == 8


def test_kaleidoscopic_seed_on_mirror_rejected():
    d3 = dihedral_group(3)
    with pytest.raises(AmbiguousSeed):
        kaleidoscopic_set(d3, [(5, 0)])  # on the x-axis mirror
    with pytest.raises(AmbiguousSeed):
        kaleidoscopic_set(d3, [(5, 1), (5, 1)])  # duplicate orbit


def test_fano_geometry_permutation():
    # equilateral triangle with center, vertices and edge midpoints:
    # a 120-degree rotation induces an order-3 permutation fixing the center
    from latinboards.catalog import fano_source

    src = fano_source()
    rot = None
    for t in src.group.elements():
        p = induced_permutation(t, src.points)
        if p.order() == 3:
            rot = p
            break
    assert rot is not None
    assert rot(0) == 0  # center fixed
