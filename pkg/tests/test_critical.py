import itertools

import pytest

from latinboards import catalog
from latinboards.critical import (
    PartialBoard,
    PartialClass,
    classify_partial,
    count_completions,
    find_critical_set,
    unique_completion,
)
from latinboards.errors import InvalidPartial
from latinboards.warp import WovenBoard, find_warp_classes, label, verify_latin

from conftest import sudoku_17_assignment, sudoku_full_assignment

SYMBOLS9 = tuple(str(i) for i in range(1, 10))


@pytest.fixture(scope="module")
def b1():
    return catalog.build("latin_square_base", n=3)


@pytest.fixture(scope="module")
def b1_latin(b1):
    wc = next(find_warp_classes(b1, 1))
    return label(WovenBoard(b1, wc), ["1", "2", "3"])


@pytest.fixture(scope="module")
def sudoku():
    return catalog.build("sudoku_base")


def test_empty_partial_counts_all_completions(b1):
    empty = PartialBoard(b1, 1, ("1", "2", "3"))
    assert count_completions(empty, cap=None) == 12


def test_invalid_partial_rejected(b1):
    with pytest.raises(InvalidPartial):
        PartialBoard(b1, 1, ("1", "2", "3"), {1: "1", 2: "1"})  # same row twice
    with pytest.raises(InvalidPartial):
        PartialBoard(b1, 1, ("1", "2"), {})  # wrong symbol count
    with pytest.raises(InvalidPartial):
        PartialBoard(b1, 1, ("1", "2", "3"), {99: "1"})


def test_sudoku_17_clue_unique_and_critical(sudoku):
    partial = PartialBoard(sudoku, 1, SYMBOLS9, sudoku_17_assignment())
    assert count_completions(partial, cap=2) == 1
    comp = unique_completion(partial)
    assert comp is not None
    assert comp.assignment() == sudoku_full_assignment()
    assert classify_partial(partial) == PartialClass.CRITICAL


def test_sudoku_17_clue_deletions_multi(sudoku):
    clues = sudoku_17_assignment()
    for p in sorted(clues)[:5]:  # spot-check a third of them here; all in acceptance
        reduced = dict(clues)
        del reduced[p]
        partial = PartialBoard(sudoku, 1, SYMBOLS9, reduced)
        assert count_completions(partial, cap=2) == 2


def test_full_board_subcritical_not_critical(b1_latin, b1):
    partial = PartialBoard(b1, 1, b1_latin.symbols, b1_latin.assignment())
    assert classify_partial(partial) == PartialClass.SUBCRITICAL


def test_classify_incompletable(b1):
    clues = {1: "1", 5: "1", 9: "2"}  # cells 1,5,9 pairwise unaligned
    partial = PartialBoard(b1, 1, ("1", "2", "3"), clues)
    assert classify_partial(partial) == PartialClass.INCOMPLETABLE


def test_find_critical_set_order3(b1_latin):
    crit = find_critical_set(b1_latin, seed=11)
    assert classify_partial(crit) == PartialClass.CRITICAL
    # exhaustive census of order-3 critical sets gives sizes 2 and 3
    assert 2 <= len(crit.clues) <= 4


def test_find_critical_set_deterministic(b1_latin):
    a = find_critical_set(b1_latin, seed=3)
    b = find_critical_set(b1_latin, seed=3)
    assert a.clues == b.clues
    c = find_critical_set(b1_latin, seed=4, strategy="greedy-with-restarts", restarts=2)
    assert classify_partial(c) == PartialClass.CRITICAL


def test_order3_critical_census_oracle(b1, b1_latin):
    """Brute-force census over all 12 squares: critical sizes are 2..3."""
    rows = list(itertools.permutations("123"))
    squares = []

    def extend(chosen):
        if len(chosen) == 3:
            squares.append(tuple(chosen))
            return
        for r in rows:
            if all(r[c] != prev[c] for prev in chosen for c in range(3)):
                extend(chosen + [r])

    extend([])
    assert len(squares) == 12

    def completions(clues):
        return [
            sq
            for sq in squares
            if all(sq[r][c] == s for (r, c), s in clues.items())
        ]

    sizes = set()
    cells = [(r, c) for r in range(3) for c in range(3)]
    for sq in squares:
        for mask in range(512):
            clues = {
                cells[i]: sq[cells[i][0]][cells[i][1]]
                for i in range(9)
                if mask >> i & 1
            }
            if len(completions(clues)) != 1:
                continue
            if all(
                len(completions({k: v for k, v in clues.items() if k != rm})) > 1
                for rm in clues
            ):
                sizes.add(len(clues))
    assert min(sizes) == 2 and max(sizes) == 3
    # greedy output is critical, so its size lies in the census range
    crit = find_critical_set(b1_latin, seed=0)
    assert len(crit.clues) in sizes


def test_monotonicity_add_clue_keeps_subcritical(b1_latin, b1):
    import random

    crit = find_critical_set(b1_latin, seed=5)
    full = b1_latin.assignment()
    rng = random.Random(99)
    free = sorted(set(full) - set(crit.clues))
    for _ in range(50):
        p = rng.choice(free)
        sym = rng.choice(["1", "2", "3"])
        clues = dict(crit.clues)
        clues[p] = sym
        try:
            partial = crit.with_clues(clues)
        except InvalidPartial:
            continue
        assert classify_partial(partial) in (
            PartialClass.SUBCRITICAL,
            PartialClass.CRITICAL,
            PartialClass.INCOMPLETABLE,
        )


def test_k4_partial_boards():
    monthai = catalog.build("monthai_base", n=6)
    wc = next(find_warp_classes(monthai, 4, limit=1, strategy="greedy"))
    latin = label(WovenBoard(monthai, wc), ["a", "b", "c"])
    assert verify_latin(monthai, latin.assignment(), k=4)
    crit = find_critical_set(latin, seed=1)
    assert classify_partial(crit) == PartialClass.CRITICAL
    assert len(crit.clues) < 36
