"""Combinatorial designs: lines, parallel classes, duals, automorphisms.

A design here is always simple (all lines distinct) and leaves no point
uncovered.  Parallel classes declared on a design are validated as true
partitions of the point set at construction time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from latinboards.errors import NonSimpleDual, TooLarge, UndefinedSIN

Line = frozenset


def _canonical_lines(lines: Iterable[Iterable[int]]) -> tuple[frozenset[int], ...]:
    return tuple(sorted((frozenset(l) for l in lines), key=lambda l: sorted(l)))


@dataclass(frozen=True)
class Design:
    """A simple design: points, lines, and optional named parallel classes.

    ``classes`` maps a class name to a tuple of indices into ``lines``;
    each named class must partition the point set.
    """

    points: tuple[int, ...]
    lines: tuple[frozenset[int], ...]
    classes: Mapping[str, tuple[int, ...]] = field(default_factory=dict)

    @staticmethod
    def build(
        points: Iterable[int],
        lines: Iterable[Iterable[int]],
        classes: Mapping[str, Iterable[Iterable[int]]] | None = None,
    ) -> "Design":
        """Normalize inputs: sort points, canonicalize line order, resolve classes."""
        pts = tuple(sorted(set(points)))
        lns = _canonical_lines(lines)
        index = {l: i for i, l in enumerate(lns)}
        cls: dict[str, tuple[int, ...]] = {}
        if classes:
            for name, group in classes.items():
                cls[name] = tuple(sorted(index[frozenset(l)] for l in group))
        return Design(pts, lns, cls)

    def __post_init__(self):
        pts = set(self.points)
        if len(self.lines) != len(set(self.lines)):
            raise ValueError("duplicate lines: design must be simple")
        covered = set()
        for l in self.lines:
            if not l:
                raise ValueError("empty line")
            if not l <= pts:
                raise ValueError(f"line {sorted(l)} uses unknown points")
            covered |= l
        if covered != pts:
            raise ValueError(f"points {sorted(pts - covered)} lie on no line")
        for name, idxs in self.classes.items():
            class_lines = [self.lines[i] for i in idxs]
            if not _is_partition(class_lines, pts):
                raise ValueError(f"class {name!r} does not partition the points")
        object.__setattr__(self, "classes", dict(self.classes))

    def class_lines(self, name: str) -> tuple[frozenset[int], ...]:
        return tuple(self.lines[i] for i in self.classes[name])

    @property
    def line_set(self) -> frozenset[frozenset[int]]:
        return frozenset(self.lines)

    def __repr__(self):
        return f"Design({len(self.points)} points, {len(self.lines)} lines, classes={list(self.classes)})"


# ---------------------------------------------------------------------------
# permutations


class Bijection:
    """An injective map between point-id sets, stored as a sorted item tuple."""

    __slots__ = ("_items", "_map")

    def __init__(self, mapping: Mapping[int, int]):
        items = tuple(sorted(mapping.items()))
        if len({v for _, v in items}) != len(items):
            raise ValueError("mapping is not injective")
        object.__setattr__(self, "_items", items)
        object.__setattr__(self, "_map", dict(items))

    def __call__(self, x: int) -> int:
        return self._map[x]

    def apply_line(self, line: frozenset[int]) -> frozenset[int]:
        return frozenset(self._map[x] for x in line)

    def apply_lines(self, lines: Iterable[frozenset[int]]) -> frozenset[frozenset[int]]:
        return frozenset(self.apply_line(l) for l in lines)

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self._items)

    def inverse(self) -> "Bijection":
        return type(self)({v: k for k, v in self._items})

    def __eq__(self, other):
        return type(other) is type(self) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        return f"{type(self).__name__}({dict(self._items)})"


class Perm(Bijection):
    """A bijection of a point set onto itself."""

    __slots__ = ()

    def __init__(self, mapping: Mapping[int, int]):
        super().__init__(mapping)
        src = [k for k, _ in self._items]
        dst = sorted(v for _, v in self._items)
        if src != dst:
            raise ValueError("not a permutation of its own domain")

    @staticmethod
    def identity(domain: Iterable[int]) -> "Perm":
        return Perm({x: x for x in domain})

    @staticmethod
    def from_cycles(domain: Iterable[int], cycles: Sequence[Sequence[int]]) -> "Perm":
        m = {x: x for x in domain}
        for cyc in cycles:
            for i, x in enumerate(cyc):
                m[x] = cyc[(i + 1) % len(cyc)]
        return Perm(m)

    def __mul__(self, other: "Perm") -> "Perm":
        """(a * b)(x) = a(b(x))."""
        return Perm({x: self._map[other._map[x]] for x in other._map})

    def is_identity(self) -> bool:
        return all(k == v for k, v in self._items)

    def order(self) -> int:
        seen = set()
        result = 1
        for start in self._map:
            if start in seen:
                continue
            length, x = 0, start
            while True:
                seen.add(x)
                x = self._map[x]
                length += 1
                if x == start:
                    break
            result = _lcm(result, length)
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each rotated to start at its minimum."""
        seen, out = set(), []
        for start in self._map:
            if start in seen:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self._map[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return sorted(out)

    def __eq__(self, other):
        return isinstance(other, Perm) and self._items == other._items

    __hash__ = Bijection.__hash__

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return "Perm(id)"
        return "Perm(" + "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) + ")"


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


class PermGroup:
    """A permutation group given by generators, with cached closure."""

    def __init__(self, generators: Sequence[Perm], domain: Iterable[int] | None = None):
        gens = list(generators)
        if not gens:
            if domain is None:
                raise ValueError("empty group needs an explicit domain")
            gens = [Perm.identity(domain)]
        self.generators: tuple[Perm, ...] = tuple(gens)
        self._elements: Optional[tuple[Perm, ...]] = None

    @staticmethod
    def from_elements(elements: Iterable[Perm]) -> "PermGroup":
        elems = tuple(elements)
        g = PermGroup(elems)
        g._elements = elems
        return g

    @property
    def domain(self) -> tuple[int, ...]:
        return self.generators[0].domain

    def elements(self) -> tuple[Perm, ...]:
        if self._elements is None:
            seen = set(self.generators)
            seen.add(Perm.identity(self.domain))
            frontier = list(seen)
            while frontier:
                new = []
                for g in self.generators:
                    for h in frontier:
                        p = g * h
                        if p not in seen:
                            seen.add(p)
                            new.append(p)
                frontier = new
            self._elements = tuple(sorted(seen, key=lambda p: p._items))
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements())

    def __contains__(self, p: Perm) -> bool:
        return p in set(self.elements())

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements())

    def __repr__(self):
        return f"PermGroup({len(self.generators)} generators, order {self.order})"


# ---------------------------------------------------------------------------
# basic line queries


def line_size(line: Iterable[int]) -> int:
    return len(frozenset(line))


def is_k_uniform(d: Design, k: int) -> bool:
    return all(len(l) == k for l in d.lines)


def uniform_line_size(d: Design) -> Optional[int]:
    sizes = {len(l) for l in d.lines}
    return sizes.pop() if len(sizes) == 1 else None


def sin(d: Design, include_empty: bool = False) -> frozenset[int]:
    """Set of pairwise line-intersection sizes.

    Empty intersections are excluded by default: every intersection
    number this toolkit asserts for its catalog boards follows that
    convention.
    """
    if len(d.lines) < 2:
        raise UndefinedSIN("need at least two lines")
    values = set()
    for l1, l2 in itertools.combinations(d.lines, 2):
        values.add(len(l1 & l2))
    if not include_empty:
        values.discard(0)
    return frozenset(values)


def _is_partition(lines: Sequence[frozenset[int]], points: set[int]) -> bool:
    total = 0
    union = set()
    for l in lines:
        total += len(l)
        union |= l
    return total == len(points) and union == points


def is_parallel_class(d: Design, lines: Iterable[Iterable[int]]) -> bool:
    return _is_partition([frozenset(l) for l in lines], set(d.points))


def are_orthogonal(c1: Iterable[Iterable[int]], c2: Iterable[Iterable[int]]) -> bool:
    a = [frozenset(l) for l in c1]
    b = [frozenset(l) for l in c2]
    return all(len(l1 & l2) == 1 for l1 in a for l2 in b)


# ---------------------------------------------------------------------------
# dual


def dual(d: Design) -> Design:
    """Swap the roles of points and lines; raises if the dual is not simple."""
    new_points = tuple(range(len(d.lines)))
    new_lines = []
    for p in d.points:
        new_lines.append(frozenset(i for i, l in enumerate(d.lines) if p in l))
    if len(set(new_lines)) != len(new_lines):
        raise NonSimpleDual("two points lie on exactly the same lines")
    return Design.build(new_points, new_lines)


# ---------------------------------------------------------------------------
# resolutions

RESOLUTION_LINE_GUARD = 64


def parallel_classes_through(
    d: Design, first: frozenset[int], pool: Sequence[frozenset[int]]
) -> Iterator[tuple[frozenset[int], ...]]:
    """All parallel classes that contain ``first`` and otherwise use ``pool`` lines."""
    points = set(d.points)
    by_point: dict[int, list[frozenset[int]]] = {p: [] for p in points}
    for l in pool:
        for p in l:
            by_point[p].append(l)

    def extend(chosen: list[frozenset[int]], covered: set[int]):
        if covered == points:
            yield tuple(sorted(chosen, key=sorted))
            return
        pivot = min(points - covered)
        for l in by_point[pivot]:
            if l.isdisjoint(covered) and sorted(l) > sorted(chosen[-1]):
                chosen.append(l)
                yield from extend(chosen, covered | l)
                chosen.pop()

    if not first.isdisjoint(set()):  # pragma: no cover - trivial guard
        pass
    yield from extend([first], set(first))


def find_resolutions(d: Design, limit: int = 1, force: bool = False) -> list[tuple[tuple[frozenset[int], ...], ...]]:
    """Partitions of the line set into parallel classes, up to ``limit``.

    If the design's declared classes already cover every line, that
    resolution is reported first.
    """
    if len(d.lines) > RESOLUTION_LINE_GUARD and not force:
        raise TooLarge(f"{len(d.lines)} lines exceeds resolution search guard")
    results: list[tuple[tuple[frozenset[int], ...], ...]] = []
    seen: set[frozenset[frozenset[frozenset[int]]]] = set()

    def emit(classes: Sequence[tuple[frozenset[int], ...]]) -> bool:
        key = frozenset(frozenset(c) for c in classes)
        if key in seen:
            return False
        seen.add(key)
        results.append(tuple(sorted(classes, key=lambda c: sorted(sorted(l) for l in c))))
        return True

    if d.classes:
        declared = [d.class_lines(name) for name in d.classes]
        if sum(len(c) for c in declared) == len(d.lines):
            emit(declared)
            if len(results) >= limit:
                return results

    lines_sorted = sorted(d.lines, key=sorted)

    def search(remaining: list[frozenset[int]], classes: list[tuple[frozenset[int], ...]]):
        if len(results) >= limit:
            return
        if not remaining:
            emit(classes)
            return
        first = remaining[0]
        pool = remaining[1:]
        for cls in parallel_classes_through(d, first, pool):
            used = set(cls)
            rest = [l for l in pool if l not in used]
            classes.append(cls)
            search(rest, classes)
            classes.pop()
            if len(results) >= limit:
                return

    search(lines_sorted, [])
    return results


def is_resolvable(d: Design) -> bool:
    try:
        return bool(find_resolutions(d, limit=1))
    except TooLarge:
        return bool(find_resolutions(d, limit=1, force=True))


# ---------------------------------------------------------------------------
# automorphisms and isomorphisms

AUT_POINT_GUARD = 32


def _refine_colors(d: Design) -> dict[int, int]:
    """Iterated point coloring by line-size/neighbor-color signatures."""
    colors = {p: 0 for p in d.points}
    while True:
        sigs = {}
        for p in d.points:
            line_sigs = sorted(
                (len(l), tuple(sorted(colors[q] for q in l))) for l in d.lines if p in l
            )
            sigs[p] = (colors[p], tuple(line_sigs))
        canon = {s: i for i, s in enumerate(sorted(set(sigs.values())))}
        new = {p: canon[sigs[p]] for p in d.points}
        if len(set(new.values())) == len(set(colors.values())):
            return new
        colors = new


def _line_profile(d: Design, colors: dict[int, int]) -> dict[frozenset[int], tuple]:
    return {l: (len(l), tuple(sorted(colors[p] for p in l))) for l in d.lines}


def _iso_search(d1: Design, d2: Design, find_all: bool) -> list[Bijection]:
    """Line-first isomorphism search.

    Backtracks over a line bijection constrained by the pairwise
    intersection matrices, then matches points through their incident
    line sets: points sharing exactly the same lines are interchangeable,
    so every consistent line bijection extends by independent bijections
    within those cells.
    """
    if len(d1.points) != len(d2.points) or len(d1.lines) != len(d2.lines):
        return []
    if sorted(map(len, d1.lines)) != sorted(map(len, d2.lines)):
        return []
    c1, c2 = _refine_colors(d1), _refine_colors(d2)
    if sorted(c1.values()) != sorted(c2.values()):
        return []
    prof1, prof2 = _line_profile(d1, c1), _line_profile(d2, c2)
    if sorted(prof1.values()) != sorted(prof2.values()):
        return []

    lines1, lines2 = list(d1.lines), list(d2.lines)
    n_lines = len(lines1)
    m1 = [[len(a & b) for b in lines1] for a in lines1]
    m2 = [[len(a & b) for b in lines2] for a in lines2]

    def line_sets(d: Design, lines) -> dict[int, tuple[int, ...]]:
        incident: dict[int, list[int]] = {p: [] for p in d.points}
        for i, l in enumerate(lines):
            for p in l:
                incident[p].append(i)
        return {p: tuple(s) for p, s in incident.items()}

    sets1, sets2 = line_sets(d1, lines1), line_sets(d2, lines2)
    cells2: dict[tuple[int, ...], list[int]] = {}
    for q, key in sets2.items():
        cells2.setdefault(key, []).append(q)
    cells1: dict[tuple[int, ...], list[int]] = {}
    for p, key in sets1.items():
        cells1.setdefault(key, []).append(p)
    for cell in cells1.values():
        cell.sort()
    for cell in cells2.values():
        cell.sort()

    sigma: dict[int, int] = {}
    used: set[int] = set()
    results: list[Bijection] = []
    endo = d1.points == d2.points
    wrap = Perm if endo else Bijection

    def point_maps() -> bool:
        pairs: list[tuple[list[int], list[int]]] = []
        for key, cell1 in cells1.items():
            key2 = tuple(sorted(sigma[i] for i in key))
            cell2 = cells2.get(key2)
            if cell2 is None or len(cell2) != len(cell1):
                return False
            pairs.append((cell1, cell2))
        if find_all:
            choices = [list(itertools.permutations(c2_)) for _, c2_ in pairs]
            for combo in itertools.product(*choices):
                mapping = {}
                for (cell1, _), images in zip(pairs, combo):
                    mapping.update(zip(cell1, images))
                results.append(wrap(mapping))
            return False
        mapping = {}
        for cell1, cell2 in pairs:
            mapping.update(zip(cell1, cell2))
        results.append(wrap(mapping))
        return True

    def extend() -> bool:
        if len(sigma) == n_lines:
            return point_maps()
        # most-constrained next line: most mapped neighbors, then index
        best, best_score = -1, (-1, 0)
        for i in range(n_lines):
            if i in sigma:
                continue
            score = sum(1 for j in sigma if m1[i][j])
            if score > best_score[0]:
                best, best_score = i, (score, 0)
        i = best if best >= 0 else next(k for k in range(n_lines) if k not in sigma)
        for j in range(n_lines):
            if j in used or prof2[lines2[j]] != prof1[lines1[i]]:
                continue
            if any(m2[j][sigma[i2]] != m1[i][i2] for i2 in sigma):
                continue
            sigma[i] = j
            used.add(j)
            if extend():
                return True
            del sigma[i]
            used.discard(j)
        return False

    extend()
    return results


def automorphism_group(d: Design, force: bool = False) -> PermGroup:
    """The full automorphism group, enumerated by backtracking.

    Guarded at 32 points because the enumeration is output-sensitive;
    pass force=True for larger designs at your own risk.
    """
    if len(d.points) > AUT_POINT_GUARD and not force:
        raise TooLarge(f"{len(d.points)} points exceeds automorphism guard")
    elements = _iso_search(d, d, find_all=True)
    return PermGroup.from_elements(elements)


def are_isomorphic(d1: Design, d2: Design, force: bool = False) -> Optional[Bijection]:
    """A witnessing point bijection, or None."""
    guard = max(len(d1.points), len(d2.points))
    if guard > AUT_POINT_GUARD and not force:
        raise TooLarge(f"{guard} points exceeds isomorphism guard")
    found = _iso_search(d1, d2, find_all=False)
    return found[0] if found else None


def is_automorphism(d: Design, p: Perm) -> bool:
    return p.apply_lines(d.lines) == d.line_set
