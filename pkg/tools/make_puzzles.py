#!/usr/bin/env python3
"""Regenerate the bundled puzzle store.

Three puzzles of different geometry ship with the package: the
published 17-clue 9x9 grid, a triangle-board puzzle (12 symbols), and a
4x4 square.  The triangle and square clue sets are critical sets found
by the greedy generator with fixed seeds, so the output is stable.

Run from the repository root:  python3 tools/make_puzzles.py
"""

from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from latinboards import catalog
from latinboards.critical import PartialBoard, classify_partial, find_critical_set
from latinboards.render import board_layout
from latinboards.serialize import board_to_doc, dumps, puzzle_to_doc
from latinboards.warp import WovenBoard, find_warp_classes, label

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "latinboards" / "data" / "puzzles"

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

SUDOKU_17 = {
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


def rounded_layout(board) -> dict:
    out = {}
    for pid, entry in board_layout(board).items():
        e = {"pos": [round(v, 6) for v in entry["pos"]]}
        if "polygon" in entry:
            e["polygon"] = [[round(v, 6) for v in pt] for pt in entry["polygon"]]
        out[str(pid)] = e
    return out


def sudoku_puzzle() -> dict:
    board = catalog.build("sudoku_base")
    clues = {9 * (r - 1) + (c - 1): s for (r, c), s in SUDOKU_17.items()}
    full = {
        9 * r + c: SUDOKU_FULL_ROWS[r][c] for r in range(9) for c in range(9)
    }
    assert all(full[p] == s for p, s in clues.items())
    symbols = tuple(str(i) for i in range(1, 10))
    partial = PartialBoard(board, 1, symbols, clues)
    assert classify_partial(partial).value == "critical"
    doc = puzzle_to_doc(
        "sudoku-17", board_to_doc(board), 1, symbols, clues, layout=rounded_layout(board)
    )
    doc["board_ref"] = {"catalog": {"name": "sudoku_base", "params": {}}}
    return doc


def critical_puzzle(puzzle_id: str, ref: dict, board, k: int, symbols, seed: int) -> dict:
    wc = next(find_warp_classes(board, k, limit=1, strategy="greedy"))
    latin = label(WovenBoard(board, wc), symbols)
    partial = find_critical_set(latin, seed=seed)
    assert classify_partial(partial).value == "critical"
    doc = puzzle_to_doc(
        puzzle_id,
        board_to_doc(board),
        k,
        latin.symbols,
        partial.clues,
        layout=rounded_layout(board),
    )
    doc["board_ref"] = {"catalog": ref}
    return doc


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    docs = [
        sudoku_puzzle(),
        critical_puzzle(
            "monthai-6",
            {"name": "monthai_base", "params": {"n": 6}},
            catalog.build("monthai_base", n=6),
            1,
            [str(i) for i in range(1, 13)],
            seed=0,
        ),
        critical_puzzle(
            "square-4",
            {"name": "latin_square_base", "params": {"n": 4}},
            catalog.build("latin_square_base", n=4),
            1,
            ["1", "2", "3", "4"],
            seed=0,
        ),
    ]
    for doc in docs:
        path = OUT / f"{doc['id']}.json"
        path.write_text(dumps(doc))
        print(f"wrote {path} ({len(doc['clues'])} clues)")


if __name__ == "__main__":
    main()
