"""Zero/star parameter patterns.

A :class:`PatternMatrix` records which entries of a deformation are free
parameters.  Parameter ids are always the row-major rank of the star, so
two patterns with the same support are equal and renumbering after block
assembly is automatic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence, Union, overload

from .exact import ExactMatrix, ZERO
from .structures import BlockPartition, Permutation, StructureError

Direction = Literal["up", "down", "left", "right"]


@dataclass(frozen=True)
class PatternMatrix:
    rows: int
    cols: int
    mask: tuple[tuple[bool, ...], ...]
    _ids: tuple[tuple[Optional[int], ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.mask) != self.rows or any(len(r) != self.cols for r in self.mask):
            raise StructureError("pattern mask does not match its shape")
        k = 0
        ids = []
        for r in self.mask:
            row = []
            for star in r:
                row.append(k if star else None)
                k += star
            ids.append(tuple(row))
        object.__setattr__(self, "_ids", tuple(ids))

    @classmethod
    def from_mask(cls, mask: Sequence[Sequence[bool | int]], cols: int | None = None) -> "PatternMatrix":
        m = tuple(tuple(bool(x) for x in r) for r in mask)
        if cols is None:
            cols = len(m[0]) if m else 0
        return cls(len(m), cols, m)

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "PatternMatrix":
        """``PatternMatrix.from_strings(["*..", "*.."])``."""
        return cls.from_mask([[c == "*" for c in line.replace(" ", "")] for line in lines])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PatternMatrix":
        return cls(rows, cols, tuple((False,) * cols for _ in range(rows)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[tuple[Optional[int], ...], ...]:
        """Grid of parameter ids; ``None`` marks a structural zero."""
        return self._ids

    @property
    def param_count(self) -> int:
        return sum(sum(r) for r in self.mask)

    def stars(self) -> list[tuple[int, int]]:
        """Star positions in parameter-id order."""
        return [(i, j) for i, r in enumerate(self.mask) for j, s in enumerate(r) if s]

    def transpose(self) -> "PatternMatrix":
        if self.rows == 0:
            return PatternMatrix.zeros(self.cols, 0)
        return PatternMatrix(self.cols, self.rows, tuple(zip(*self.mask)))

    def permuted(self, rows: Permutation, cols: Permutation) -> "PatternMatrix":
        ro, co = rows.order, cols.order
        return PatternMatrix(self.rows, self.cols, tuple(tuple(self.mask[i][j] for j in co) for i in ro))

    def without(self, position: tuple[int, int]) -> "PatternMatrix":
        i, j = position
        grid = [list(r) for r in self.mask]
        grid[i][j] = False
        return PatternMatrix.from_mask(grid, self.cols)

    def to_json(self) -> list[list[str]]:
        return [["0" if k is None else f"p{k}" for k in r] for r in self._ids]

    @classmethod
    def from_json(cls, grid: Sequence[Sequence[str]], cols: int | None = None) -> "PatternMatrix":
        return cls.from_mask([[x != "0" for x in r] for r in grid], cols)

    def render(self, partition: BlockPartition | None = None) -> str:
        return render_grid([["*" if s else "." for s in r] for r in self.mask], partition, self.cols)


def render_grid(cells: Sequence[Sequence[str]], partition: BlockPartition | None, cols: int) -> str:
    """Bracketed ASCII display with ``|`` and ``-`` block separators."""
    width = max([len(c) for r in cells for c in r], default=1)
    rcuts = _cuts(partition.row_sizes) if partition else set()
    ccuts = _cuts(partition.col_sizes) if partition else set()
    lines = []

    def fmt(row: Sequence[str]) -> str:
        parts = []
        for j, c in enumerate(row):
            if j in ccuts and j > 0:
                parts.append("|")
            parts.append(c.rjust(width))
        return "[ " + " ".join(parts) + " ]"

    sep_len = len(fmt(["."] * cols))
    for i, row in enumerate(cells):
        if i in rcuts and i > 0:
            lines.append("  " + "-" * (sep_len - 4))
        lines.append(fmt(row))
    return "\n".join(lines)


def _cuts(sizes: Sequence[int]) -> set[int]:
    out, pos = set(), 0
    for s in sizes:
        out.add(pos)
        pos += s
    return out


# --------------------------------------------------------------------------
# Constructors.


def t_block(p: int, q: int) -> PatternMatrix:
    """``p x q`` block: stars in the first column if ``p < q``, else in the last row."""
    if p < q:
        return PatternMatrix.from_mask([[j == 0 for j in range(q)] for _ in range(p)], q)
    return PatternMatrix.from_mask([[i == p - 1] * q for i in range(p)], q)


def star_block(a: int, b: int) -> PatternMatrix:
    return PatternMatrix(a, b, tuple((True,) * b for _ in range(a)))


def arrow_block(direction: Direction, rows: int, cols: int) -> PatternMatrix:
    """Stars on one border line: ``up`` first row, ``down`` last row, ``left``/``right`` columns."""
    if direction == "up":
        test = lambda i, j: i == 0
    elif direction == "down":
        test = lambda i, j: i == rows - 1
    elif direction == "left":
        test = lambda i, j: j == 0
    elif direction == "right":
        test = lambda i, j: j == cols - 1
    else:
        raise ValueError(f"unknown arrow direction {direction!r}")
    return PatternMatrix.from_mask([[test(i, j) for j in range(cols)] for i in range(rows)], cols)


def z_block(rows: int, cols: int) -> PatternMatrix:
    """First row starred in its leading ``cols - rows`` positions (clipped at zero)."""
    k = max(0, cols - rows)
    return PatternMatrix.from_mask([[i == 0 and j < k for j in range(cols)] for i in range(rows)], cols)


@overload
def adjoin_zero_row_top(m: PatternMatrix) -> PatternMatrix: ...
@overload
def adjoin_zero_row_top(m: ExactMatrix) -> ExactMatrix: ...


def adjoin_zero_row_top(m):
    if isinstance(m, PatternMatrix):
        return PatternMatrix(m.rows + 1, m.cols, ((False,) * m.cols,) + m.mask)
    return ExactMatrix(m.rows + 1, m.cols, ((ZERO,) * m.cols,) + m.entries)


@overload
def adjoin_zero_col_right(m: PatternMatrix) -> PatternMatrix: ...
@overload
def adjoin_zero_col_right(m: ExactMatrix) -> ExactMatrix: ...


def adjoin_zero_col_right(m):
    if isinstance(m, PatternMatrix):
        return PatternMatrix(m.rows, m.cols + 1, tuple(r + (False,) for r in m.mask))
    return ExactMatrix(m.rows, m.cols + 1, tuple(r + (ZERO,) for r in m.entries))


def compose_blocks(layout: Sequence[Sequence[PatternMatrix]]) -> PatternMatrix:
    """Assemble a block grid; every block row shares a height, every block column a width."""
    if not layout:
        return PatternMatrix.zeros(0, 0)
    ncols = len(layout[0])
    if any(len(r) != ncols for r in layout):
        raise StructureError("ragged block grid")
    heights = [r[0].rows if r else 0 for r in layout]
    widths = [layout[0][j].cols for j in range(ncols)]
    for bi, row in enumerate(layout):
        for bj, blk in enumerate(row):
            if blk.rows != heights[bi] or blk.cols != widths[bj]:
                raise StructureError(f"block ({bi}, {bj}) has shape {blk.shape}, expected {(heights[bi], widths[bj])}")
    mask = []
    for bi, row in enumerate(layout):
        for i in range(heights[bi]):
            mask.append(tuple(s for blk in row for s in blk.mask[i]))
    return PatternMatrix(sum(heights), sum(widths), tuple(mask))


def pattern_block_diag(*blocks: PatternMatrix) -> PatternMatrix:
    canvas = Canvas(sum(b.rows for b in blocks), sum(b.cols for b in blocks))
    r = c = 0
    for b in blocks:
        canvas.place(r, c, b)
        r += b.rows
        c += b.cols
    return canvas.pattern()


class Canvas:
    """Mutable star grid used while assembling a template."""

    def __init__(self, rows: int, cols: int) -> None:
        self.rows, self.cols = rows, cols
        self.grid = [[False] * cols for _ in range(rows)]

    def place(self, r0: int, c0: int, block: PatternMatrix) -> None:
        if r0 + block.rows > self.rows or c0 + block.cols > self.cols:
            raise StructureError(f"block {block.shape} at ({r0}, {c0}) overflows {self.rows}x{self.cols}")
        for i, row in enumerate(block.mask):
            for j, s in enumerate(row):
                if s:
                    self.grid[r0 + i][c0 + j] = True

    def pattern(self) -> PatternMatrix:
        return PatternMatrix(self.rows, self.cols, tuple(tuple(r) for r in self.grid))


PatternOrMatrix = Union[PatternMatrix, ExactMatrix]
