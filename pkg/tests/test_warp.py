import itertools

import pytest

from latinboards import catalog
from latinboards.design import Design, PermGroup
from latinboards.errors import InvalidLabeling, NotUniform, SizeMismatch, UnsupportedBoard
from latinboards.symmetry import Board, orbit
from latinboards.warp import (
    LatinBoard,
    WarpClass,
    WovenBoard,
    conjugates,
    count_latin_boards,
    equivalence_reduce,
    find_warp_classes,
    label,
    latin_from_assignment,
    square_paratopy_transforms,
    verify_latin,
    verify_warp,
)

from conftest import B1_S, B1_S2


def all_latin_squares(n):
    """Independent oracle: brute-force row-by-row enumeration of n x n squares."""
    rows = list(itertools.permutations(range(n)))
    squares = []

    def extend(chosen):
        if len(chosen) == n:
            squares.append(tuple(chosen))
            return
        for row in rows:
            if all(row[c] != prev[c] for prev in chosen for c in range(n)):
                extend(chosen + [row])

    extend([])
    return squares


@pytest.fixture(scope="module")
def b1():
    return catalog.build("latin_square_base", n=3)


@pytest.fixture(scope="module")
def b1_4():
    return catalog.build("latin_square_base", n=4)


def test_b1_warp_classes_contain_both_diagonal_classes(b1):
    found = list(find_warp_classes(b1, 1))
    as_sets = {wc.lines for wc in found}
    s = frozenset(frozenset(l) for l in B1_S)
    s2 = frozenset(frozenset(l) for l in B1_S2)
    assert s in as_sets
    assert s2 in as_sets
    assert len(found) == 2  # 12 squares / 3! labelings


def test_fano_has_no_warp():
    fano = catalog.build("fano")
    assert list(find_warp_classes(fano, 1)) == []


def test_warp_counts_match_brute_force(b1, b1_4):
    assert count_latin_boards(b1, 1).count == len(all_latin_squares(3)) == 12
    assert count_latin_boards(b1_4, 1).count == len(all_latin_squares(4)) == 576


def test_count_cap_flagged(b1_4):
    res = count_latin_boards(b1_4, 1, cap=30)
    assert res.capped and res.count >= 30


def test_verify_warp_good_and_bad(b1):
    s = WarpClass(1, frozenset(frozenset(l) for l in B1_S))
    report = verify_warp(b1, s)
    assert report.ok and report.n_warp_lines == 3
    rows = WarpClass(1, frozenset({frozenset({1, 2, 3}), frozenset({4, 5, 6}), frozenset({7, 8, 9})}))
    bad = verify_warp(b1, rows)
    assert not bad.ok
    assert any(f.check == "intersection" for f in bad.failures)


def test_warp_guards():
    fano = catalog.build("fano")
    with pytest.raises(SizeMismatch):
        list(find_warp_classes(fano, 2))
    lines = [[0, 1, 2], [0, 1, 2, 3], [3, 4], [4, 5], [5, 0]]
    d = Design.build(range(6), lines)
    board = Board(None, d, PermGroup([], domain=range(6)))
    with pytest.raises(NotUniform):
        list(find_warp_classes(board, 1))


def test_label_reproduces_cyclic_square(b1):
    s = WarpClass(1, frozenset(frozenset(l) for l in B1_S))
    latin = label(WovenBoard(b1, s), ["1", "2", "3"])
    assign = latin.assignment()
    grid = [[assign[3 * r + c + 1] for c in range(3)] for r in range(3)]
    assert grid == [["1", "2", "3"], ["2", "3", "1"], ["3", "1", "2"]]


def test_label_permuted_symbols_differ(b1):
    s = WarpClass(1, frozenset(frozenset(l) for l in B1_S))
    woven = WovenBoard(b1, s)
    a = label(woven, ["1", "2", "3"])
    b = label(woven, ["2", "1", "3"])
    assert a.assignment() != b.assignment()
    with pytest.raises(InvalidLabeling):
        label(woven, ["1", "2"])


def test_size_laws_on_found_warps(b1):
    for k, board in ((1, b1), (1, catalog.build("monthai_base", n=6))):
        for wc in find_warp_classes(board, k, limit=2, strategy="greedy"):
            s = len(board.design.lines[0])
            assert s == wc.k * len(wc.lines)
            report = verify_warp(board, wc)
            assert report.ok


def test_orbit_closure_of_warp(b1):
    s = frozenset(frozenset(l) for l in B1_S)
    for image in orbit(b1.group_perms, s):
        assert verify_warp(b1, WarpClass(1, image)).ok


def test_orbit_of_woven_line_set_yields_woven_boards(b1):
    # every group image of the woven board's full line set is again the
    # symmetric board plus a valid warp class
    woven_lines = frozenset(
        frozenset(l) for l in list(b1.design.lines) + [frozenset(l) for l in B1_S]
    )
    base_lines = b1.design.line_set
    for image in orbit(b1.group_perms, woven_lines):
        extra = image - base_lines
        assert base_lines <= image
        assert verify_warp(b1, WarpClass(1, frozenset(extra))).ok


def test_orbit_of_top_row(b1):
    row = frozenset({1, 2, 3})
    images = orbit(b1.group_perms, row)
    assert images == {
        frozenset({1, 2, 3}),
        frozenset({7, 8, 9}),
        frozenset({1, 4, 7}),
        frozenset({3, 6, 9}),
    }


def test_latin_from_assignment_and_verify(b1):
    assign = {1: "1", 2: "2", 3: "3", 4: "2", 5: "3", 6: "1", 7: "3", 8: "1", 9: "2"}
    latin = latin_from_assignment(b1, assign)
    assert verify_latin(b1, assign)
    assert latin.assignment() == assign
    bad = dict(assign)
    bad[1] = "2"
    assert not verify_latin(b1, bad)


def test_conjugates_order3(b1):
    assign = {1: "1", 2: "2", 3: "3", 4: "2", 5: "3", 6: "1", 7: "3", 8: "1", 9: "2"}
    latin = latin_from_assignment(b1, assign)
    conj = conjugates(latin)
    assert 1 <= len(conj) <= 6
    # the (2,1,3)-conjugate equals the transpose
    from latinboards.warp import _latin_to_grid

    _, values, n = _latin_to_grid(latin)
    transpose = [[values[j][i] for j in range(n)] for i in range(n)]
    conj_values = []
    for c in conj:
        _, v, _ = _latin_to_grid(c)
        conj_values.append(v)
    assert transpose in conj_values
    # this square is symmetric, so strictly fewer than 6 distinct conjugates
    assert len(conj) < 6


def test_conjugates_single_cell_board():
    # the one-cell grid: its single row and column are the same line
    d = Design.build([0], [[0]], classes={"H": [[0]], "V": [[0]]})
    board = Board(None, d, PermGroup([], domain=[0]))
    latin = latin_from_assignment(board, {0: "1"})
    assert len(conjugates(latin)) == 1


def test_count_unweavable_board_is_zero():
    fano = catalog.build("fano")
    assert count_latin_boards(fano, 1).count == 0


def test_conjugates_need_square(b1):
    monthai = catalog.build("monthai_base", n=6)
    wc = next(find_warp_classes(monthai, 4, limit=1, strategy="greedy"))
    latin = label(WovenBoard(monthai, wc), [str(i) for i in range(1, 4)])
    with pytest.raises(UnsupportedBoard):
        conjugates(latin)


def np_paratopy_class_count(n):
    """Independent oracle: vectorized canonicalization over all transforms."""
    import numpy as np

    squares = np.array([np.array(sq).reshape(n, n) for sq in all_latin_squares(n)])
    m = len(squares)
    powers = (n ** np.arange(n * n)).astype(np.int64)
    best = None
    perms = list(itertools.permutations(range(n)))
    for conj in itertools.permutations(range(3)):
        # build conjugated squares once per role permutation
        base = np.empty_like(squares)
        idx = np.indices((n, n))
        for t, sq in enumerate(squares):
            trip = np.stack([idx[0].ravel(), idx[1].ravel(), sq.ravel()])
            rows, cols, vals = trip[conj[0]], trip[conj[1]], trip[conj[2]]
            base[t][rows, cols] = vals
        for rp in perms:
            rp = list(rp)
            for cp in perms:
                arr = base[:, rp][:, :, list(cp)]
                for sp in perms:
                    coded = np.take(np.array(sp), arr).reshape(m, -1) @ powers
                    best = coded if best is None else np.minimum(best, coded)
    return len(np.unique(best))


def test_equivalence_reduce_paratopy_counts(b1):
    boards = []
    for wc in find_warp_classes(b1, 1):
        woven = WovenBoard(b1, wc)
        for perm in itertools.permutations(["1", "2", "3"]):
            boards.append(LatinBoard(woven, tuple(perm)))
    assert len(boards) == 12
    reps = equivalence_reduce(boards, square_paratopy_transforms(boards[0]))
    assert len(reps) == 1
    assert np_paratopy_class_count(3) == 1


def test_equivalence_reduce_single_board(b1):
    assign = {1: "1", 2: "2", 3: "3", 4: "2", 5: "3", 6: "1", 7: "3", 8: "1", 9: "2"}
    latin = latin_from_assignment(b1, assign)
    reps = equivalence_reduce([latin], [])
    assert len(reps) == 1 and reps[0].key() == latin.key()


def test_symmetry_pruning_matches_reduced_set(b1, b1_4):
    for board in (b1, b1_4):
        full = {wc.lines for wc in find_warp_classes(board, 1)}
        pruned = {wc.lines for wc in find_warp_classes(board, 1, prune_by_symmetry=True)}
        assert pruned <= full
        # every full class is group-equivalent to some pruned class
        for lines in full:
            images = orbit(board.group_perms, lines)
            assert any(img in pruned for img in images)


def test_stream_determinism(b1_4):
    first = [wc.sorted_lines() for wc in find_warp_classes(b1_4, 1)]
    second = [wc.sorted_lines() for wc in find_warp_classes(b1_4, 1)]
    assert first == second
    assert len(first) == 24


def test_count_equiv_mode(b1):
    res = count_latin_boards(b1, 1, up_to="equiv")
    assert res.count == 1


def test_knut_vik_warp_existence():
    # the rows of the grid meet every broken diagonal and antidiagonal
    # exactly once, so an orthogonal warp class exists for every odd n
    for n in (3, 5, 7):
        kv = catalog.build("knut_vik_base", n=n)
        wc = next(find_warp_classes(kv, 1, limit=1, strategy="greedy"), None)
        assert wc is not None and verify_warp(kv, wc).ok
        rows = frozenset(
            frozenset(n * r + c for c in range(n)) for r in range(n)
        )
        assert verify_warp(kv, WarpClass(1, rows)).ok
