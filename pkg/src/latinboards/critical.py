"""Partial boards: completion counting, classification, critical-set search.

A partial board is a partial point-to-symbol assignment in which no
symbol exceeds multiplicity k on any symmetric line.  Classification is
by completion count with an early-exit cap of 2: zero completions is
incompletable, two or more is multi-completable, exactly one is
subcritical, and a subcritical partial is critical when removing any
single clue breaks uniqueness.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional

from latinboards.errors import InvalidParameter, InvalidPartial
from latinboards.symmetry import Board
from latinboards.warp import LatinBoard, _Engine, _prepare, latin_from_assignment


class PartialClass(enum.Enum):
    INCOMPLETABLE = "incompletable"
    MULTI_COMPLETABLE = "multi_completable"
    SUBCRITICAL = "subcritical"
    CRITICAL = "critical"


@dataclass(frozen=True)
class PartialBoard:
    """A clue set over a board, with symbols bounded by multiplicity k."""

    board: Board
    k: int
    symbols: tuple[str, ...]
    clues: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        s, w = _prepare(self.board, self.k)
        if len(self.symbols) != w:
            raise InvalidPartial(
                f"{len(self.symbols)} symbols, but line size {s} / k {self.k} needs {w}"
            )
        if len(set(self.symbols)) != len(self.symbols):
            raise InvalidPartial("symbols must be distinct")
        valid = set(self.symbols)
        points = set(self.board.design.points)
        for p, sym in self.clues.items():
            if p not in points:
                raise InvalidPartial(f"clue on unknown point {p}")
            if sym not in valid:
                raise InvalidPartial(f"clue symbol {sym!r} not in the symbol set")
        for line in self.board.design.lines:
            counts: dict[str, int] = {}
            for p in line:
                sym = self.clues.get(p)
                if sym is not None:
                    counts[sym] = counts.get(sym, 0) + 1
                    if counts[sym] > self.k:
                        raise InvalidPartial(
                            f"symbol {sym!r} exceeds multiplicity {self.k} on line {sorted(line)}"
                        )
        object.__setattr__(self, "clues", dict(self.clues))

    def with_clues(self, clues: Mapping[int, str]) -> "PartialBoard":
        return PartialBoard(self.board, self.k, self.symbols, clues)

    def __repr__(self):
        return f"PartialBoard({self.board.name or 'board'}, {len(self.clues)}/{len(self.board.design.points)} clues)"


def _completions(partial: PartialBoard, cap: Optional[int]) -> Iterator[dict[int, str]]:
    _, w = _prepare(partial.board, partial.k)
    engine = _Engine(partial.board.design, partial.k, w)
    sym_index = {s: i for i, s in enumerate(partial.symbols)}
    ok = True
    for p, sym in partial.clues.items():
        if not engine.assign(engine.index[p], sym_index[sym]):
            ok = False
            break
    if not ok:
        return
    count = 0
    for assignment in engine.solutions_greedy():
        yield {
            partial.board.design.points[i]: partial.symbols[s]
            for i, s in enumerate(assignment)
        }
        count += 1
        if cap is not None and count >= cap:
            return


def count_completions(partial: PartialBoard, cap: Optional[int] = 2) -> int:
    """Number of full boards extending the partial, stopping at ``cap``."""
    n = 0
    for _ in _completions(partial, cap):
        n += 1
    return n


def unique_completion(partial: PartialBoard) -> Optional[LatinBoard]:
    """The single completion when the partial is subcritical, else None."""
    found = list(_completions(partial, 2))
    if len(found) != 1:
        return None
    return latin_from_assignment(partial.board, found[0], partial.k)


def classify_partial(partial: PartialBoard) -> PartialClass:
    n = count_completions(partial, cap=2)
    if n == 0:
        return PartialClass.INCOMPLETABLE
    if n > 1:
        return PartialClass.MULTI_COMPLETABLE
    for p in sorted(partial.clues):
        reduced = dict(partial.clues)
        del reduced[p]
        if count_completions(partial.with_clues(reduced), cap=2) == 1:
            return PartialClass.SUBCRITICAL
    return PartialClass.CRITICAL


def find_critical_set(
    full: LatinBoard, seed: int = 0, strategy: str = "greedy", restarts: int = 0
) -> PartialBoard:
    """Greedy descent from a full board to a critical set.

    Clues are dropped in a seed-shuffled order whenever uniqueness
    survives; a clue rejected once stays rejected, since later removals
    only add completions.  ``greedy-with-restarts`` repeats with derived
    seeds and keeps the smallest result.
    """
    if strategy not in ("greedy", "greedy-with-restarts"):
        raise InvalidParameter(f"unknown strategy {strategy!r}")
    rounds = restarts + 1 if strategy == "greedy-with-restarts" else 1
    best: PartialBoard | None = None
    assignment = full.assignment()
    for r in range(rounds):
        rng = random.Random(seed + r)
        order = sorted(assignment)
        rng.shuffle(order)
        clues = dict(assignment)
        partial = PartialBoard(full.board, full.k, full.symbols, clues)
        for p in order:
            trial = dict(clues)
            del trial[p]
            candidate = partial.with_clues(trial)
            if count_completions(candidate, cap=2) == 1:
                clues = trial
                partial = candidate
        if best is None or len(partial.clues) < len(best.clues):
            best = partial
    assert best is not None
    return best
