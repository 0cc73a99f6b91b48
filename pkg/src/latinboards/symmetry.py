"""Boards: designs over geometric sources, acted on by symmetry groups.

Classification follows the weft/woof split: a weft board is resolvable,
has a singleton set of intersection numbers (empty intersections
excluded), and its group permutes the parallel classes of some
resolution transitively.  Everything else that is still symmetric is a
woof board.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from latinboards.design import Design, Perm, PermGroup, find_resolutions, sin
from latinboards.errors import NotAnAction, TooLarge, UndefinedSIN
from latinboards.geometry import Source, induced_group


class BoardClass(enum.Enum):
    WEFT = "weft"
    WOOF = "woof"
    NOT_SYMMETRIC = "not_symmetric"


@dataclass(frozen=True)
class Board:
    """A design whose points are the points of a geometric source.

    ``group_perms`` is the image of the source symmetry group under the
    natural action (or, for data-backed boards, the permutation group
    shipped with the incidence file).
    """

    source: Source | None
    design: Design
    group_perms: PermGroup
    name: str = ""

    def __post_init__(self):
        if self.source is not None:
            source_ids = tuple(sorted(p.id for p in self.source.points))
            if source_ids != self.design.points:
                raise ValueError("design point ids must equal source point ids")
        if tuple(sorted(self.group_perms.domain)) != self.design.points:
            raise ValueError("group permutations must act on the design points")

    @staticmethod
    def from_source(source: Source, design: Design, name: str = "") -> "Board":
        return Board(source, design, induced_group(source), name=name)

    @property
    def points(self) -> tuple[int, ...]:
        return self.design.points

    @property
    def lines(self) -> tuple[frozenset[int], ...]:
        return self.design.lines

    def __repr__(self):
        label = self.name or "board"
        return f"Board({label}: {len(self.points)} points, {len(self.lines)} lines)"


def acts_on_lines(group: PermGroup, design: Design) -> bool:
    """True iff every generator maps the line set onto itself."""
    line_set = design.line_set
    return all(p.apply_lines(design.lines) == line_set for p in group.generators)


def acts_transitively(group: PermGroup, blocks: Sequence[frozenset]) -> bool:
    """True iff the induced action on ``blocks`` has a single orbit.

    Raises NotAnAction if some generator fails to map a block to a block.
    """
    block_list = list(blocks)
    index = {b: i for i, b in enumerate(block_list)}

    def block_image(p: Perm, block: frozenset) -> frozenset:
        sample = next(iter(block))
        if isinstance(sample, frozenset):
            return frozenset(p.apply_line(l) for l in block)
        return p.apply_line(block)

    if not block_list:
        return False
    reached = {0}
    frontier = [0]
    # build the block permutation for each generator, verifying it is one
    moves: list[list[int]] = []
    for p in group.generators:
        row = []
        for b in block_list:
            img = block_image(p, b)
            if img not in index:
                raise NotAnAction(f"generator {p!r} does not map blocks to blocks")
            row.append(index[img])
        moves.append(row)
    while frontier:
        nxt = []
        for i in frontier:
            for row in moves:
                j = row[i]
                if j not in reached:
                    reached.add(j)
                    nxt.append(j)
        frontier = nxt
    return len(reached) == len(block_list)


CLASSIFY_RESOLUTION_LIMIT = 64


def classify_board(board: Board) -> BoardClass:
    """Weft, woof, or not symmetric at all.

    The weft conditions are checked against every resolution found by
    the bounded resolution search; whichever resolution lets the group
    act transitively wins.
    """
    group = board.group_perms
    if group.order <= 1:
        return BoardClass.NOT_SYMMETRIC
    if not acts_on_lines(group, board.design):
        return BoardClass.NOT_SYMMETRIC
    try:
        values = sin(board.design, include_empty=False)
    except UndefinedSIN:
        return BoardClass.WOOF
    if len(values) != 1:
        return BoardClass.WOOF
    try:
        resolutions = find_resolutions(board.design, limit=CLASSIFY_RESOLUTION_LIMIT)
    except TooLarge:
        resolutions = find_resolutions(board.design, limit=CLASSIFY_RESOLUTION_LIMIT, force=True)
    for res in resolutions:
        blocks = [frozenset(cls) for cls in res]
        try:
            if acts_transitively(group, blocks):
                return BoardClass.WEFT
        except NotAnAction:
            continue
    return BoardClass.WOOF


def orbit(group: PermGroup, x):
    """Orbit of a point, a line, or a set of lines under the group."""
    out = set()
    for p in group.elements():
        if isinstance(x, int):
            out.add(p(x))
        elif isinstance(x, frozenset) and x and isinstance(next(iter(x)), frozenset):
            out.add(p.apply_lines(x))
        else:
            out.add(p.apply_line(frozenset(x)))
    return out
