"""Brute-force pebbling simulator: the combinatorial ground truth.

A move removes one pebble from (i, j) and puts one pebble on each of
(i+1, j) and (i, j+1), which must both be empty.  Starting arrangements for
m >= 1 carry doubled cells on the level set L(m+1); G(k, m) counts the
reachable boards with k pebbles in which every cell holds a single pebble.

Practical ceiling: the number of distinct states grows roughly like 2.32^k,
so ~12 steps from any of the m <= 2 starts stays well below a million states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional

Cell = tuple[int, int]


class IllegalMoveError(ValueError):
    pass


class ResourceLimitError(RuntimeError):
    """BFS exceeded its state budget; carries the levels finished so far."""

    def __init__(self, message: str, counts: CountByPebbles, last_complete: Optional[int]):
        super().__init__(message)
        self.counts = counts
        self.last_complete = last_complete


@dataclass(frozen=True, order=True)
class Board:
    """Immutable board; ``cells`` is the canonical sorted ((i, j), mult) tuple."""

    cells: tuple[tuple[Cell, int], ...]

    @classmethod
    def from_mapping(cls, occupied: Mapping[Cell, int]) -> Board:
        for (i, j), mult in occupied.items():
            if i < 0 or j < 0:
                raise ValueError(f"cell {(i, j)} is outside the quadrant")
            if mult not in (0, 1, 2):
                raise ValueError(f"multiplicity {mult} at {(i, j)} not in {{1, 2}}")
        return cls(tuple(sorted((c, m) for c, m in occupied.items() if m)))

    def as_dict(self) -> dict[Cell, int]:
        return dict(self.cells)

    def __getitem__(self, cell: Cell) -> int:
        for c, m in self.cells:
            if c == cell:
                return m
        return 0

    def __iter__(self) -> Iterator[tuple[Cell, int]]:
        return iter(self.cells)

    @property
    def pebbles(self) -> int:
        return sum(m for _, m in self.cells)

    @property
    def is_clean(self) -> bool:
        return all(m == 1 for _, m in self.cells)

    def encode(self) -> str:
        """Debug text form: one ``i j mult`` line per occupied cell."""
        return "\n".join(f"{i} {j} {m}" for (i, j), m in self.cells)

    @classmethod
    def decode(cls, text: str) -> Board:
        occupied: dict[Cell, int] = {}
        for line in text.strip().splitlines():
            if not line.strip():
                continue
            i, j, m = (int(x) for x in line.split())
            occupied[i, j] = m
        return cls.from_mapping(occupied)


CountByPebbles = dict[int, int]


def initial_board(m: int) -> Board:
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return Board.from_mapping({(0, 1): 1, (1, 0): 1})
    occupied = {(0, m + 1): 1, (m + 1, 0): 1}
    for i in range(1, m + 1):
        occupied[i, m + 1 - i] = 2
    return Board.from_mapping(occupied)


def legal_moves(b: Board) -> list[Cell]:
    occ = b.as_dict()
    return [
        (i, j)
        for (i, j), _ in b.cells
        if (i + 1, j) not in occ and (i, j + 1) not in occ
    ]


def apply_move(b: Board, cell: Cell) -> Board:
    occ = b.as_dict()
    i, j = cell
    if occ.get(cell, 0) < 1:
        raise IllegalMoveError(f"illegal move: no pebble at {cell}")
    if (i + 1, j) in occ or (i, j + 1) in occ:
        raise IllegalMoveError(f"illegal move: a target of {cell} is occupied")
    occ[cell] -= 1
    if not occ[cell]:
        del occ[cell]
    occ[i + 1, j] = 1
    occ[i, j + 1] = 1
    return Board(tuple(sorted(occ.items())))


def _successors(b: Board) -> Iterable[Board]:
    occ = b.as_dict()
    for cell in legal_moves(b):
        new = dict(occ)
        i, j = cell
        new[cell] -= 1
        if not new[cell]:
            del new[cell]
        new[i + 1, j] = 1
        new[i, j + 1] = 1
        yield Board(tuple(sorted(new.items())))


def enumerate_counts(
    m: int, max_steps: int, max_states: Optional[int] = 5_000_000
) -> CountByPebbles:
    """Clean-board counts by pebble total, from ``initial_board(m)``.

    Every board at BFS depth d has exactly 2m + 2 + d pebbles (2 + d for
    m = 0), so one frontier is one pebble level and every level up to the
    depth cap is complete.  Levels with no clean board are omitted.  States
    are deduplicated by canonical form.  Raises :class:`ResourceLimitError` past ``max_states`` visited boards.
    """
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    start = initial_board(m)
    base = start.pebbles
    counts: CountByPebbles = {}
    frontier = {start}
    visited = 1
    last_complete: Optional[int] = None
    for depth in range(max_steps + 1):
        k = base + depth
        counts[k] = sum(1 for b in frontier if b.is_clean)
        last_complete = k
        if depth == max_steps:
            break
        nxt: set[Board] = set()
        for b in frontier:
            nxt.update(_successors(b))
        visited += len(nxt)
        if max_states is not None and visited > max_states:
            raise ResourceLimitError(
                f"state budget {max_states} exceeded at {k + 1} pebbles",
                {kk: c for kk, c in counts.items() if c},
                last_complete,
            )
        frontier = nxt
    return {k: c for k, c in counts.items() if c}


def level_sizes(m: int, max_steps: int) -> dict[int, int]:
    """Total (clean and unclean) distinct boards per pebble count."""
    frontier = {initial_board(m)}
    sizes: dict[int, int] = {}
    for _ in range(max_steps + 1):
        b = next(iter(frontier))
        sizes[b.pebbles] = len(frontier)
        frontier = {s for b in frontier for s in _successors(b)}
    return sizes
