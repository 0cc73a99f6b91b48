import pytest

from latinboards.design import (
    Design,
    Perm,
    PermGroup,
    are_isomorphic,
    are_orthogonal,
    automorphism_group,
    dual,
    find_resolutions,
    is_automorphism,
    is_k_uniform,
    is_parallel_class,
    line_size,
    sin,
)
from latinboards.errors import NonSimpleDual, TooLarge, UndefinedSIN

from conftest import B1_H, B1_S, B1_V, b1_design, fano_design, sudoku_design


def test_line_size_and_uniformity():
    assert line_size({1, 4, 7}) == 3
    assert is_k_uniform(b1_design(), 3)
    lines = [{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}, {5, 6}]
    tweaked = Design.build(range(7), lines)
    assert not is_k_uniform(tweaked, 3)


def test_design_validation():
    with pytest.raises(ValueError):
        Design.build([0, 1, 2], [[0, 1]])  # point 2 uncovered
    with pytest.raises(ValueError):
        Design.build([0, 1], [[0, 1], [1, 0]])  # duplicate line
    with pytest.raises(ValueError):
        Design.build([0, 1, 2], [[0, 1], [1, 2]], classes={"bad": [[0, 1], [1, 2]]})


def test_sin_on_b1_and_sudoku():
    b1 = b1_design()
    assert sin(b1) == frozenset({1})
    assert sin(b1, include_empty=True) == frozenset({0, 1})
    assert sin(sudoku_design()) == frozenset({1, 3})
    single = Design.build([0, 1], [[0, 1]])
    with pytest.raises(UndefinedSIN):
        sin(single)


def test_parallel_and_orthogonal():
    b1 = b1_design()
    assert is_parallel_class(b1, B1_H)
    assert is_parallel_class(b1, B1_V)
    assert not is_parallel_class(b1, B1_H[:2])
    assert are_orthogonal(B1_H, B1_V)
    assert not are_orthogonal(B1_H, B1_H)
    assert are_orthogonal(B1_S, B1_H)
    assert are_orthogonal(B1_S, B1_V)


def test_dual_fano_self_dual():
    fano = fano_design()
    fd = dual(fano)
    assert are_isomorphic(fano, fd) is not None
    dd = dual(fd)
    assert are_isomorphic(fano, dd) is not None


def test_dual_non_simple_rejected():
    d = Design.build([0, 1, 2], [[0, 1, 2]])
    with pytest.raises(NonSimpleDual):
        dual(d)


def test_find_resolutions_b1():
    b1 = b1_design()
    res = find_resolutions(b1, limit=10)
    assert len(res) == 1
    classes = {frozenset(c) for c in res[0]}
    assert classes == {
        frozenset(frozenset(l) for l in B1_H),
        frozenset(frozenset(l) for l in B1_V),
    }


def test_find_resolutions_fano_none():
    # 7 points with 3-uniform lines: no parallel class since 7 % 3 != 0
    assert find_resolutions(fano_design(), limit=1) == []


def test_find_resolutions_sudoku_declared_first():
    sud = sudoku_design()
    res = find_resolutions(sud, limit=1)
    assert len(res) == 1
    names = {frozenset(c) for c in res[0]}
    assert frozenset(sud.class_lines("Q")) in names


def test_resolution_guard():
    lines = [[2 * i, 2 * i + 1] for i in range(70)]
    big = Design.build(range(140), lines)
    with pytest.raises(TooLarge):
        find_resolutions(big)
    assert find_resolutions(big, force=True, limit=1)


def test_automorphism_group_fano():
    aut = automorphism_group(fano_design())
    assert aut.order == 168


def test_automorphism_group_singleton_line_designs():
    # three singleton lines on a triangle: every bijection preserves the lines
    tri = Design.build([0, 1, 2], [[0], [1], [2]])
    assert automorphism_group(tri).order == 6
    sq = Design.build([0, 1, 2, 3], [[0], [1], [2], [3]])
    assert automorphism_group(sq).order == 24


def test_b1_automorphisms():
    b1 = b1_design()
    p = Perm.from_cycles(range(1, 10), [(1, 2), (4, 5), (7, 8)])
    assert is_automorphism(b1, p)
    aut = automorphism_group(b1)
    assert p in aut
    # row perms x column perms x transpose
    assert aut.order == 72


def test_are_isomorphic_witness_and_negative():
    b1 = b1_design()
    p = Perm.from_cycles(range(1, 10), [(1, 2), (4, 5), (7, 8)])
    relabeled = Design.build(
        range(1, 10), [p.apply_line(l) for l in b1.lines]
    )
    w = are_isomorphic(b1, relabeled)
    assert w is not None
    assert w.apply_lines(b1.lines) == relabeled.line_set
    assert are_isomorphic(b1, fano_design()) is None


def test_perm_group_closure():
    r = Perm.from_cycles(range(4), [(0, 1, 2, 3)])
    f = Perm.from_cycles(range(4), [(1, 3)])
    d4 = PermGroup([r, f])
    assert d4.order == 8
    assert Perm.identity(range(4)) in d4


def test_perm_composition_convention():
    a = Perm.from_cycles(range(3), [(0, 1)])
    b = Perm.from_cycles(range(3), [(1, 2)])
    # (a * b)(x) = a(b(x))
    assert (a * b)(1) == a(b(1)) == a(2) == 2
    ab = a * b
    assert [ab(x) for x in range(3)] == [1, 2, 0]


def test_perm_order_and_cycles():
    p = Perm.from_cycles(range(6), [(0, 1, 2), (3, 4)])
    assert p.order() == 6
    assert p.cycles() == [(0, 1, 2), (3, 4)]
    assert p.inverse().order() == 6
    assert (p * p.inverse()).is_identity()


def test_uniform_parallel_class_divisibility_fuzz():
    # a k-uniform parallel class forces |P| to be a multiple of k
    import random

    rng = random.Random(7)
    for _ in range(60):
        k = rng.randint(1, 4)
        classes = rng.randint(1, 4)
        points = list(range(k * classes))
        rng.shuffle(points)
        lines = [set(points[i * k:(i + 1) * k]) for i in range(classes)]
        d = Design.build(points, lines)
        assert is_parallel_class(d, lines)
        assert len(d.points) % k == 0


def test_dual_dual_isomorphic_on_catalog_designs():
    from latinboards import catalog
    from latinboards.errors import NonSimpleDual

    for name, params in [("fano", {}), ("latin_square_base", {"n": 3}),
                         ("monthai_base", {"n": 4}), ("helios_board", {})]:
        d = catalog.build(name, **params).design
        try:
            dd = dual(dual(d))
        except NonSimpleDual:
            continue
        assert are_isomorphic(d, dd, force=True) is not None, name


def test_automorphism_group_closed_under_composition():
    aut = automorphism_group(b1_design())
    elems = aut.elements()
    b1 = b1_design()
    for a in elems[:6]:
        for b in elems[:6]:
            assert is_automorphism(b1, a * b)
