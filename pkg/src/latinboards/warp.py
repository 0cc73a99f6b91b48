"""Warp-class search, woven boards, Latin boards, and their equivalences.

A k-warp class through a symmetric board is a partition of the points
into lines that each meet every symmetric line in exactly k points.
Finding one is an exact-cover-flavored search; the engine below assigns
a warp-line index (a "symbol") to one point at a time with forward
checking and forced-assignment propagation on (line, symbol) capacity.

Two search orders are offered:

* ``ordered``: static ascending point order with symbol-precedence
  breaking, which enumerates every warp class exactly once in a
  reproducible canonical order (used for counting and full streams);
* ``greedy``: fail-first order (fewest feasible symbols, then smallest
  id), best for existence queries on large boards.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, NamedTuple, Optional, Sequence

from latinboards.design import Design, Perm, PermGroup
from latinboards.errors import (
    InvalidLabeling,
    InvalidParameter,
    NotUniform,
    SizeMismatch,
    UnsupportedBoard,
)
from latinboards.symmetry import Board, BoardClass, classify_board


@dataclass(frozen=True)
class WarpClass:
    """A parallel class meeting every symmetric line in exactly k points."""

    k: int
    lines: frozenset[frozenset[int]]

    def sorted_lines(self) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(l)) for l in self.lines)

    def __repr__(self):
        return f"WarpClass(k={self.k}, {len(self.lines)} lines)"


@dataclass(frozen=True)
class WovenBoard:
    base: Board
    warp: WarpClass

    def __post_init__(self):
        sizes = {len(l) for l in self.base.design.lines}
        if len(sizes) != 1:
            raise NotUniform("woven boards need uniform symmetric lines")
        s = sizes.pop()
        if s != self.warp.k * len(self.warp.lines):
            raise SizeMismatch(
                f"line size {s} != k*|W| = {self.warp.k * len(self.warp.lines)}"
            )


@dataclass(frozen=True)
class LatinBoard:
    """A woven board with warp lines bijectively labeled by symbols.

    ``symbols[i]`` labels the i-th warp line in canonical order (lines
    sorted by their sorted point tuples).
    """

    woven: WovenBoard
    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(self.symbols) != len(self.woven.warp.lines):
            raise InvalidLabeling(
                f"{len(self.symbols)} symbols for {len(self.woven.warp.lines)} warp lines"
            )
        if len(set(self.symbols)) != len(self.symbols):
            raise InvalidLabeling("symbols must be distinct")

    @property
    def board(self) -> Board:
        return self.woven.base

    @property
    def k(self) -> int:
        return self.woven.warp.k

    def labeling(self) -> dict[str, int]:
        return {sym: i for i, sym in enumerate(self.symbols)}

    def assignment(self) -> dict[int, str]:
        out: dict[int, str] = {}
        for sym, line in zip(self.symbols, self.woven.warp.sorted_lines()):
            for p in line:
                out[p] = sym
        return out

    def key(self) -> tuple[str, ...]:
        assign = self.assignment()
        return tuple(assign[p] for p in self.board.design.points)

    def __repr__(self):
        return f"LatinBoard({self.board.name or 'board'}, k={self.k}, {len(self.symbols)} symbols)"


# ---------------------------------------------------------------------------
# the search engine


class _Engine:
    """Point-to-warp-line assignment with capacity propagation."""

    def __init__(self, design: Design, k: int, n_symbols: int):
        self.points = design.points
        self.index = {p: i for i, p in enumerate(self.points)}
        self.n = len(self.points)
        self.k = k
        self.w = n_symbols
        self.full = (1 << n_symbols) - 1
        self.lines = [tuple(sorted(self.index[p] for p in l)) for l in design.lines]
        plines: list[list[int]] = [[] for _ in range(self.n)]
        for li, line in enumerate(self.lines):
            for p in line:
                plines[p].append(li)
        self.plines = [tuple(ls) for ls in plines]
        self.domain = [self.full] * self.n
        self.assigned = [-1] * self.n
        self.cnt = [[0] * n_symbols for _ in self.lines]
        self.avail = [[len(l)] * n_symbols for l in self.lines]
        self.n_unassigned = self.n
        self.trail: list[tuple] = []

    def mark(self) -> int:
        return len(self.trail)

    def undo(self, mark: int) -> None:
        trail = self.trail
        while len(trail) > mark:
            kind, a, b, c = trail.pop()
            if kind == 0:  # domain change
                self.domain[a] = b
            elif kind == 1:  # assignment
                self.assigned[a] = -1
                self.n_unassigned += 1
            elif kind == 2:  # cnt bump
                self.cnt[a][b] -= 1
            else:  # avail delta
                self.avail[a][b] -= c

    def _remove_symbol(self, p: int, s: int, queue: list) -> bool:
        bit = 1 << s
        dom = self.domain[p]
        if not dom & bit:
            return True
        self.trail.append((0, p, dom, 0))
        dom &= ~bit
        self.domain[p] = dom
        if dom == 0:
            return False
        for li in self.plines[p]:
            av = self.avail[li]
            av[s] -= 1
            self.trail.append((3, li, s, -1))
            need = self.k - self.cnt[li][s]
            if av[s] < need:
                return False
            if need > 0 and av[s] == need:
                for q in self.lines[li]:
                    if self.assigned[q] < 0 and self.domain[q] >> s & 1:
                        queue.append((q, s))
        if dom & (dom - 1) == 0:
            queue.append((p, dom.bit_length() - 1))
        return True

    def assign(self, p: int, s: int) -> bool:
        """Assign and propagate; returns False on contradiction."""
        queue = [(p, s)]
        while queue:
            p, s = queue.pop()
            if self.assigned[p] >= 0:
                if self.assigned[p] != s:
                    return False
                continue
            if not self.domain[p] >> s & 1:
                return False
            self.trail.append((1, p, 0, 0))
            self.assigned[p] = s
            self.n_unassigned -= 1
            dom = self.domain[p]
            for li in self.plines[p]:
                cnt = self.cnt[li]
                av = self.avail[li]
                cnt[s] += 1
                self.trail.append((2, li, s, 0))
                if cnt[s] > self.k:
                    return False
                # p left the unassigned pool of this line
                m = dom
                while m:
                    low = m & -m
                    t = low.bit_length() - 1
                    av[t] -= 1
                    self.trail.append((3, li, t, -1))
                    m ^= low
                if cnt[s] == self.k:
                    for q in self.lines[li]:
                        if self.assigned[q] < 0 and self.domain[q] >> s & 1:
                            if not self._remove_symbol(q, s, queue):
                                return False
                else:
                    need = self.k - cnt[s]
                    if av[s] < need:
                        return False
                    if av[s] == need:
                        for q in self.lines[li]:
                            if self.assigned[q] < 0 and self.domain[q] >> s & 1:
                                queue.append((q, s))
                # other symbols on this line may have become tight
                m = dom & ~(1 << s)
                while m:
                    low = m & -m
                    t = low.bit_length() - 1
                    m ^= low
                    need_t = self.k - cnt[t]
                    if av[t] < need_t:
                        return False
                    if need_t > 0 and av[t] == need_t:
                        for q in self.lines[li]:
                            if self.assigned[q] < 0 and self.domain[q] >> t & 1:
                                queue.append((q, t))
        return True

    # -- search drivers ----------------------------------------------------

    def solutions_ordered(self, symmetry: Optional["_SymmetryPruner"] = None) -> Iterator[list[int]]:
        """Canonical enumeration: static point order, symbol precedence."""
        yield from self._ordered(0, -1, symmetry)

    def _ordered(self, start: int, used_max: int, symmetry) -> Iterator[list[int]]:
        p = start
        while p < self.n and self.assigned[p] >= 0:
            p += 1
        if p == self.n:
            yield list(self.assigned)
            return
        limit = min(self.w - 1, used_max + 1)
        dom = self.domain[p]
        for s in range(limit + 1):
            if not dom >> s & 1:
                continue
            m = self.mark()
            if self.assign(p, s):
                if symmetry is None or symmetry.admissible(self):
                    yield from self._ordered(p + 1, max(used_max, s), symmetry)
            self.undo(m)

    def solutions_greedy(self) -> Iterator[list[int]]:
        """Fail-first order: fewest feasible symbols, then smallest id."""
        if self.n_unassigned == 0:
            yield list(self.assigned)
            return
        best, best_bits = -1, self.w + 1
        for p in range(self.n):
            if self.assigned[p] < 0:
                bits = bin(self.domain[p]).count("1")
                if bits < best_bits:
                    best, best_bits = p, bits
                    if bits <= 1:
                        break
        dom = self.domain[best]
        m0 = dom
        while m0:
            low = m0 & -m0
            s = low.bit_length() - 1
            m0 ^= low
            m = self.mark()
            if self.assign(best, s):
                yield from self.solutions_greedy()
            self.undo(m)


class _SymmetryPruner:
    """Rejects branches whose leading warp lines are not orbit-minimal.

    Once the class of symbol 0 is complete (it holds k points of every
    symmetric line), any group image of it that contains the same seed
    point and sorts lower proves the branch redundant: the image branch
    enumerates an equivalent warp class.  For groups larger than 24 the
    rule is applied again to the class of symbol 1 under the stabilizer
    of the first class.
    """

    def __init__(self, engine: _Engine, group: PermGroup):
        idx = engine.index
        self.maps = [
            tuple(idx[p(pt)] for pt in engine.points) for p in group.elements()
        ]
        self.k_total = engine.k * len(engine.lines)
        self.deep = len(self.maps) > 24
        self._approved: set[tuple] = set()
        self._stab_cache: dict[tuple, list] = {}

    def _complete_class(self, engine: _Engine, s: int) -> tuple[int, ...] | None:
        if sum(row[s] for row in engine.cnt) != self.k_total:
            return None
        return tuple(p for p in range(engine.n) if engine.assigned[p] == s)

    def _minimal(self, cls: tuple[int, ...], maps) -> bool:
        seed = cls[0]
        for gm in maps:
            img = sorted(gm[p] for p in cls)
            if img[0] == seed and tuple(img) < cls:
                return False
        return True

    def admissible(self, engine: _Engine) -> bool:
        cls0 = self._complete_class(engine, 0)
        if cls0 is None:
            return True
        if cls0 not in self._approved:
            if not self._minimal(cls0, self.maps):
                return False
            self._approved.add(cls0)
        if not self.deep:
            return True
        cls1 = self._complete_class(engine, 1)
        if cls1 is None:
            return True
        key = (cls0, cls1)
        if key in self._approved:
            return True
        stab = self._stab_cache.get(cls0)
        if stab is None:
            set0 = set(cls0)
            stab = [gm for gm in self.maps if {gm[p] for p in cls0} == set0]
            self._stab_cache[cls0] = stab
        if not self._minimal(cls1, stab):
            return False
        self._approved.add(key)
        return True


def _prepare(board: Board, k: int) -> tuple[int, int]:
    sizes = {len(l) for l in board.design.lines}
    if len(sizes) != 1:
        raise NotUniform("warp search needs all symmetric lines the same size")
    s = sizes.pop()
    if k < 1:
        raise InvalidParameter("k must be at least 1")
    if s % k:
        raise SizeMismatch(f"line size {s} not divisible by k={k}")
    return s, s // k


def find_warp_classes(
    board: Board,
    k: int,
    limit: int | None = None,
    prune_by_symmetry: bool = False,
    strategy: str = "auto",
) -> Iterator[WarpClass]:
    """Yield k-warp classes through ``board``.

    ``strategy="ordered"`` enumerates each class exactly once in a fixed
    canonical order; ``"greedy"`` reaches a first solution faster on
    large boards.  ``"auto"`` picks ordered for unlimited streams and
    greedy for small limits.  Symmetry pruning applies to the ordered
    strategy and keeps at least one representative per group orbit.
    """
    _, w = _prepare(board, k)
    if strategy == "auto":
        strategy = "ordered" if limit is None or limit > 4 else "greedy"
    if strategy not in ("ordered", "greedy"):
        raise InvalidParameter(f"unknown strategy {strategy!r}")

    engine = _Engine(board.design, k, w)
    points = engine.points
    if strategy == "ordered":
        pruner = _SymmetryPruner(engine, board.group_perms) if prune_by_symmetry else None
        stream = engine.solutions_ordered(pruner)
    else:
        stream = engine.solutions_greedy()

    seen: set[frozenset[frozenset[int]]] = set()
    count = 0
    for assignment in stream:
        groups: dict[int, set[int]] = {}
        for idx, s in enumerate(assignment):
            groups.setdefault(s, set()).add(points[idx])
        lines = frozenset(frozenset(g) for g in groups.values())
        if lines in seen:
            continue
        seen.add(lines)
        yield WarpClass(k, lines)
        count += 1
        if limit is not None and count >= limit:
            return


# ---------------------------------------------------------------------------
# verification


class WarpFailure(NamedTuple):
    check: str
    detail: str
    warp_line: tuple[int, ...] | None = None
    sym_line: tuple[int, ...] | None = None


@dataclass(frozen=True)
class WarpReport:
    ok: bool
    failures: tuple[WarpFailure, ...]
    k: int
    n_warp_lines: int


def verify_warp(board: Board, warp: WarpClass) -> WarpReport:
    """Re-check a warp class from scratch (shares no state with the search)."""
    failures: list[WarpFailure] = []
    points = set(board.design.points)
    union: set[int] = set()
    total = 0
    for w in warp.lines:
        total += len(w)
        union |= w
    if union != points or total != len(points):
        failures.append(WarpFailure("partition", "warp lines do not partition the point set"))
    for w in warp.lines:
        for l in board.design.lines:
            got = len(w & l)
            if got != warp.k:
                failures.append(
                    WarpFailure(
                        "intersection",
                        f"|w ∩ l| = {got}, expected {warp.k}",
                        tuple(sorted(w)),
                        tuple(sorted(l)),
                    )
                )
    sizes = {len(l) for l in board.design.lines}
    if len(sizes) == 1:
        s = sizes.pop()
        if s != warp.k * len(warp.lines):
            failures.append(
                WarpFailure("size-law", f"line size {s} != {warp.k}*{len(warp.lines)}")
            )
    else:
        failures.append(WarpFailure("uniformity", "symmetric lines are not uniform"))
    if classify_board(board) == BoardClass.WEFT and board.design.classes:
        per_class = {len(board.design.classes[c]) for c in board.design.classes}
        if len(per_class) == 1:
            m = per_class.pop()
            for w in warp.lines:
                if len(w) != warp.k * m:
                    failures.append(
                        WarpFailure(
                            "weft-uniformity",
                            f"warp line size {len(w)} != k*m = {warp.k * m}",
                            tuple(sorted(w)),
                        )
                    )
    return WarpReport(not failures, tuple(failures), warp.k, len(warp.lines))


# ---------------------------------------------------------------------------
# labeling


def label(woven: WovenBoard, symbols: Sequence[str]) -> LatinBoard:
    """Label warp lines (canonical order) with the given symbols."""
    symbols = tuple(str(s) for s in symbols)
    if len(symbols) != len(woven.warp.lines):
        raise InvalidLabeling(
            f"{len(symbols)} symbols for {len(woven.warp.lines)} warp lines"
        )
    return LatinBoard(woven, symbols)


def latin_from_assignment(board: Board, assignment: Mapping[int, str], k: int = 1) -> LatinBoard:
    """Interpret a full point->symbol map as a Latin board (symbol classes = warp)."""
    if set(assignment) != set(board.design.points):
        raise InvalidLabeling("assignment must cover every point exactly once")
    groups: dict[str, set[int]] = {}
    for p, s in assignment.items():
        groups.setdefault(str(s), set()).add(p)
    warp = WarpClass(k, frozenset(frozenset(g) for g in groups.values()))
    report = verify_warp(board, warp)
    if not report.ok:
        first = report.failures[0]
        raise InvalidLabeling(f"not a Latin board: {first.check}: {first.detail}")
    woven = WovenBoard(board, warp)
    by_line = {frozenset(g): s for s, g in groups.items()}
    symbols = tuple(by_line[frozenset(l)] for l in warp.sorted_lines())
    return LatinBoard(woven, symbols)


def verify_latin(board: Board, assignment: Mapping[int, str], k: int = 1) -> bool:
    """True iff every symbol occurs exactly k times on every symmetric line."""
    try:
        latin_from_assignment(board, assignment, k)
    except InvalidLabeling:
        return False
    return True


# ---------------------------------------------------------------------------
# square-grid structure, conjugates, paratopy transforms


def grid_structure(board: Board) -> tuple[list[list[int]], int]:
    """(cell[i][j] point ids, n) for boards with orthogonal row/column classes."""
    classes = board.design.classes
    if set(classes) != {"H", "V"}:
        raise UnsupportedBoard("need exactly the H and V classes of a square grid")
    rows = sorted(board.design.class_lines("H"), key=sorted)
    cols = sorted(board.design.class_lines("V"), key=sorted)
    n = len(rows)
    if len(cols) != n or any(len(l) != n for l in rows + cols):
        raise UnsupportedBoard("row/column classes are not an n x n grid")
    grid = []
    for r in rows:
        row_cells = []
        for c in cols:
            cell = r & c
            if len(cell) != 1:
                raise UnsupportedBoard("rows and columns do not meet in single cells")
            row_cells.append(next(iter(cell)))
        grid.append(row_cells)
    return grid, n


def _latin_to_grid(latin: LatinBoard) -> tuple[list[list[int]], list[list[int]], int]:
    grid, n = grid_structure(latin.board)
    assign = latin.assignment()
    sym_index = {s: i for i, s in enumerate(latin.symbols)}
    values = [[sym_index[assign[grid[i][j]]] for j in range(n)] for i in range(n)]
    return grid, values, n


def _grid_to_latin(latin: LatinBoard, values: list[list[int]]) -> LatinBoard:
    grid, n = grid_structure(latin.board)
    assignment = {
        grid[i][j]: latin.symbols[values[i][j]] for i in range(n) for j in range(n)
    }
    return latin_from_assignment(latin.board, assignment, latin.k)


def conjugates(latin: LatinBoard) -> list[LatinBoard]:
    """The distinct boards obtained by permuting the (row, column, symbol) roles."""
    if latin.k != 1:
        raise UnsupportedBoard("conjugates are defined for k=1 square boards")
    _, values, n = _latin_to_grid(latin)
    triples = {(i, j, values[i][j]) for i in range(n) for j in range(n)}
    out: list[LatinBoard] = []
    seen: set[tuple] = set()
    for perm in itertools.permutations(range(3)):
        new_values = [[-1] * n for _ in range(n)]
        for t in triples:
            i, j, s = t[perm[0]], t[perm[1]], t[perm[2]]
            new_values[i][j] = s
        key = tuple(tuple(row) for row in new_values)
        if key in seen:
            continue
        seen.add(key)
        out.append(_grid_to_latin(latin, new_values))
    return out


Transformer = Callable[[LatinBoard], LatinBoard]


def symbol_swap_transforms(latin: LatinBoard) -> list[Transformer]:
    n = len(latin.symbols)

    def swap(i: int) -> Transformer:
        def apply(b: LatinBoard) -> LatinBoard:
            syms = list(b.symbols)
            order = sorted(range(n), key=lambda t: syms[t])
            a, c = order[i], order[i + 1]
            syms[a], syms[c] = syms[c], syms[a]
            return LatinBoard(b.woven, tuple(syms))

        return apply

    return [swap(i) for i in range(n - 1)]


def group_point_transforms(latin: LatinBoard) -> list[Transformer]:
    board = latin.board

    def mover(perm: Perm) -> Transformer:
        def apply(b: LatinBoard) -> LatinBoard:
            assign = b.assignment()
            moved = {perm(p): s for p, s in assign.items()}
            return latin_from_assignment(board, moved, b.k)

        return apply

    return [mover(p) for p in board.group_perms.generators]


def _row_col_swap_transforms(latin: LatinBoard) -> list[Transformer]:
    _, _, n = _latin_to_grid(latin)
    out: list[Transformer] = []

    def swap_rows(i: int) -> Transformer:
        def apply(b: LatinBoard) -> LatinBoard:
            _, values, _ = _latin_to_grid(b)
            values[i], values[i + 1] = values[i + 1], values[i]
            return _grid_to_latin(b, values)

        return apply

    def swap_cols(j: int) -> Transformer:
        def apply(b: LatinBoard) -> LatinBoard:
            _, values, _ = _latin_to_grid(b)
            for row in values:
                row[j], row[j + 1] = row[j + 1], row[j]
            return _grid_to_latin(b, values)

        return apply

    for i in range(n - 1):
        out.append(swap_rows(i))
        out.append(swap_cols(i))
    return out


def square_isotopy_transforms(latin: LatinBoard) -> list[Transformer]:
    return _row_col_swap_transforms(latin) + symbol_swap_transforms(latin)


def square_paratopy_transforms(latin: LatinBoard) -> list[Transformer]:
    def conj(order: tuple[int, int, int]) -> Transformer:
        def apply(b: LatinBoard) -> LatinBoard:
            _, values, n = _latin_to_grid(b)
            triples = {(i, j, values[i][j]) for i in range(n) for j in range(n)}
            new_values = [[-1] * n for _ in range(n)]
            for t in triples:
                new_values[t[order[0]]][t[order[1]]] = t[order[2]]
            return _grid_to_latin(b, new_values)

        return apply

    return square_isotopy_transforms(latin) + [conj((1, 0, 2)), conj((0, 2, 1))]


def equivalence_reduce(
    boards: Sequence[LatinBoard], transforms: Sequence[Transformer]
) -> list[LatinBoard]:
    """One canonical representative per orbit of ``boards`` under ``transforms``.

    The representative minimizes the serialized symbol tuple over the
    whole orbit generated by the transform set.
    """
    if not boards:
        return []
    base = boards[0].board
    for b in boards:
        if b.board is not base and b.board.design != base.design:
            raise UnsupportedBoard("equivalence_reduce needs boards on one base")
    reps: dict[tuple, LatinBoard] = {}
    seen: dict[tuple, tuple] = {}  # board key -> orbit rep key
    for b in boards:
        k0 = b.key()
        if k0 in seen:
            continue
        orbit = {k0: b}
        frontier = [b]
        while frontier:
            nxt = []
            for cur in frontier:
                for t in transforms:
                    img = t(cur)
                    ki = img.key()
                    if ki not in orbit:
                        orbit[ki] = img
                        nxt.append(img)
            frontier = nxt
        best = min(orbit)
        for ki in orbit:
            seen[ki] = best
        reps[best] = orbit[best]
    return [reps[k] for k in sorted(reps)]


# ---------------------------------------------------------------------------
# counting


class CountResult(NamedTuple):
    count: int
    capped: bool

    def __int__(self):
        return self.count


def count_latin_boards(
    board: Board,
    k: int,
    up_to: str = "raw",
    cap: int | None = None,
    transforms: Callable[[LatinBoard], Sequence[Transformer]] | None = None,
) -> CountResult:
    """Count labeled Latin boards (raw) or equivalence classes (equiv)."""
    _, w = _prepare(board, k)
    if up_to == "raw":
        labelings = math.factorial(w)
        total = 0
        for _wc in find_warp_classes(board, k, strategy="ordered"):
            total += labelings
            if cap is not None and total >= cap:
                return CountResult(total, True)
        return CountResult(total, False)
    if up_to != "equiv":
        raise InvalidParameter("up_to must be 'raw' or 'equiv'")
    symbols = [str(i + 1) for i in range(w)]
    boards: list[LatinBoard] = []
    for wc in find_warp_classes(board, k, strategy="ordered"):
        woven = WovenBoard(board, wc)
        for perm in itertools.permutations(symbols):
            boards.append(LatinBoard(woven, tuple(perm)))
            if cap is not None and len(boards) >= cap:
                break
    if not boards:
        return CountResult(0, False)
    factory = transforms or square_paratopy_transforms
    reps = equivalence_reduce(boards, factory(boards[0]))
    return CountResult(len(reps), cap is not None and len(boards) >= cap)
