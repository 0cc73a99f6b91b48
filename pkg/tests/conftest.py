"""Shared literal designs used across the test suite."""

from __future__ import annotations

from latinboards.design import Design

FANO_LINES = [
    {0, 1, 2},
    {0, 3, 4},
    {0, 5, 6},
    {1, 3, 5},
    {1, 4, 6},
    {2, 3, 6},
    {2, 4, 5},
]

B1_H = [{1, 2, 3}, {4, 5, 6}, {7, 8, 9}]
B1_V = [{1, 4, 7}, {2, 5, 8}, {3, 6, 9}]
B1_S = [{1, 6, 8}, {2, 4, 9}, {3, 5, 7}]
B1_S2 = [{3, 4, 8}, {2, 6, 7}, {1, 5, 9}]


def fano_design() -> Design:
    return Design.build(range(7), FANO_LINES)


def b1_design() -> Design:
    return Design.build(range(1, 10), B1_H + B1_V, classes={"H": B1_H, "V": B1_V})


def b2_design() -> Design:
    lines = B1_H + B1_V + B1_S
    return Design.build(
        range(1, 10), lines, classes={"H": B1_H, "V": B1_V, "S": B1_S}
    )


def sudoku_lines() -> dict[str, list[set[int]]]:
    rows = [{9 * r + c for c in range(9)} for r in range(9)]
    cols = [{9 * r + c for r in range(9)} for c in range(9)]
    boxes = [
        {9 * (3 * br + r) + (3 * bc + c) for r in range(3) for c in range(3)}
        for br in range(3)
        for bc in range(3)
    ]
    return {"H": rows, "V": cols, "Q": boxes}


def sudoku_design() -> Design:
    cls = sudoku_lines()
    lines = cls["H"] + cls["V"] + cls["Q"]
    return Design.build(range(81), lines, classes=cls)


# a published full sudoku grid and its 17-clue critical set (rows top to bottom)
SUDOKU_FULL_ROWS = [
    "937645821",
    "852913476",
    "614287359",
    "763829145",
    "249531687",
    "185476932",
    "496352718",
    "321798564",
    "578164293",
]

SUDOKU_17_CLUES = {
    (1, 5): "4", (1, 8): "2",
    (2, 2): "5", (2, 4): "9",
    (3, 2): "1",
    (4, 4): "8", (4, 7): "1", (4, 9): "5",
    (5, 1): "2", (5, 5): "3",
    (6, 7): "9",
    (7, 1): "4", (7, 2): "9", (7, 6): "2",
    (8, 1): "3", (8, 8): "6",
    (9, 4): "1",
}


def sudoku_full_assignment() -> dict[int, str]:
    return {
        9 * r + c: SUDOKU_FULL_ROWS[r][c]
        for r in range(9)
        for c in range(9)
    }


def sudoku_17_assignment() -> dict[int, str]:
    return {9 * (r - 1) + (c - 1): s for (r, c), s in SUDOKU_17_CLUES.items()}
