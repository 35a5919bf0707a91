"""Bookkeeping for block-diagonal sums of rectangular summands."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..exact import ExactMatrix, ONE, ZERO, block_diag
from ..patterns import Canvas, PatternMatrix
from ..structures import BlockPartition, Permutation


def f_block(r: int) -> ExactMatrix:
    """``F_r``: ``r x (r-1)``, ones on the diagonal."""
    return ExactMatrix(r, r - 1, tuple(tuple(ONE if i == j else ZERO for j in range(r - 1)) for i in range(r)))


def g_block(r: int) -> ExactMatrix:
    """``G_r``: ``r x (r-1)``, ones on the subdiagonal."""
    return ExactMatrix(r, r - 1, tuple(tuple(ONE if i == j + 1 else ZERO for j in range(r - 1)) for i in range(r)))


@dataclass
class Summand:
    name: str
    rows: int
    cols: int
    partition: BlockPartition
    row_off: int = 0
    col_off: int = 0


@dataclass
class Layout:
    """Direct sum of summands, each with a row and a column offset."""

    summands: list[Summand] = field(default_factory=list)

    def add(self, name: str, rows: int, cols: int, partition: BlockPartition) -> Summand:
        s = Summand(name, rows, cols, partition, self.rows, self.cols)
        self.summands.append(s)
        return s

    @property
    def rows(self) -> int:
        return sum(s.rows for s in self.summands)

    @property
    def cols(self) -> int:
        return sum(s.cols for s in self.summands)

    def partition(self) -> BlockPartition:
        out = BlockPartition((), ())
        for s in self.summands:
            out = out + s.partition
        return out


def singular_partition(rows: int, cols: int, spare_first: bool) -> BlockPartition:
    """1x1 blocks along the diagonal of an ``F``/``G`` summand; the spare row or
    column of a rectangular summand gets a block of its own with an empty partner."""
    k = min(rows, cols)
    extra = (rows - k, cols - k)
    if extra == (0, 0):
        return BlockPartition((1,) * k, (1,) * k)
    if spare_first:
        return BlockPartition((extra[0],) + (1,) * k, (extra[1],) + (1,) * k)
    return BlockPartition((1,) * k + (extra[0],), (1,) * k + (extra[1],))


class PairCanvas:
    """Two star canvases sharing a layout: first is rows x cols, second either
    the same shape (pencil) or transposed (contragredient)."""

    def __init__(self, layout: Layout, transposed: bool) -> None:
        self.layout = layout
        self.transposed = transposed
        self.first = Canvas(layout.rows, layout.cols)
        self.second = Canvas(layout.cols, layout.rows) if transposed else Canvas(layout.rows, layout.cols)

    def put_first(self, i: Summand, j: Summand, block: PatternMatrix, dr: int = 0, dc: int = 0) -> None:
        self.first.place(i.row_off + dr, j.col_off + dc, block)

    def put_second(self, i: Summand, j: Summand, block: PatternMatrix, dr: int = 0, dc: int = 0) -> None:
        if self.transposed:
            self.second.place(i.col_off + dr, j.row_off + dc, block)
        else:
            self.second.place(i.row_off + dr, j.col_off + dc, block)


def segment_permutation(sizes: Sequence[int], new_order: Sequence[int], inner: Sequence[Permutation | None] | None = None) -> Permutation:
    """Permutation moving segment ``new_order[k]`` to slot ``k``, optionally
    permuting inside each segment first (``inner[s]`` acts on segment ``s``)."""
    starts, pos = [], 0
    for s in sizes:
        starts.append(pos)
        pos += s
    order: list[int] = []
    for s in new_order:
        within = list(range(sizes[s]))
        if inner is not None and inner[s] is not None:
            within = list(inner[s].order)
        order.extend(starts[s] + k for k in within)
    return Permutation.from_order(order)


def diag(*blocks: ExactMatrix) -> ExactMatrix:
    return block_diag(*blocks)
