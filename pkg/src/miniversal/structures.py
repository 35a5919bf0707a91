"""Jordan and Weyr canonical matrices and the permutation between them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Literal, Sequence

from .exact import ExactMatrix, ExactScalar, Number, ZERO, ONE, block_diag, rank


class StructureError(ValueError):
    """Input violates an invariant of a canonical-form description."""


@dataclass(frozen=True)
class EigenBlock:
    value: ExactScalar
    sizes: tuple[int, ...]


@dataclass(frozen=True)
class SegreStructure:
    """Eigenvalues with descending Jordan block sizes."""

    eigenvalues: tuple[EigenBlock, ...]

    def __post_init__(self) -> None:
        seen = set()
        for eb in self.eigenvalues:
            if not eb.sizes:
                raise StructureError(f"eigenvalue {eb.value} has no Jordan blocks")
            if any(s < 1 for s in eb.sizes):
                raise StructureError("Jordan block sizes must be positive")
            if list(eb.sizes) != sorted(eb.sizes, reverse=True):
                raise StructureError(
                    f"Jordan block sizes for {eb.value} must be descending (n_1 >= n_2 >= ...), got {list(eb.sizes)}"
                )
            if eb.value in seen:
                raise StructureError(f"eigenvalue {eb.value} listed twice; eigenvalues must be pairwise distinct")
            seen.add(eb.value)

    @classmethod
    def of(cls, *pairs: tuple[Number | str, Sequence[int]]) -> "SegreStructure":
        """``SegreStructure.of((0, [4, 2]), ("1+i", [1]))``."""
        return cls(tuple(EigenBlock(ExactScalar.coerce(v), tuple(s)) for v, s in pairs))

    @classmethod
    def single(cls, sizes: Sequence[int], value: Number | str = 0) -> "SegreStructure":
        return cls.of((value, sizes))

    @property
    def size(self) -> int:
        return sum(sum(eb.sizes) for eb in self.eigenvalues)

    @property
    def values(self) -> list[ExactScalar]:
        return [eb.value for eb in self.eigenvalues]

    def __iter__(self):
        return iter(self.eigenvalues)


@dataclass(frozen=True)
class WeyrCharacteristic:
    s: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(x < 1 for x in self.s) or list(self.s) != sorted(self.s, reverse=True):
            raise StructureError(f"Weyr characteristic must be positive and non-increasing, got {list(self.s)}")

    def __len__(self) -> int:
        return len(self.s)

    def __iter__(self):
        return iter(self.s)


@dataclass(frozen=True)
class BlockPartition:
    """Row and column block sizes of a partitioned matrix.

    Square canonical matrices use equal row and column sizes.  Rectangular
    pencils pair every row block with a column block (the "diagonal" blocks);
    a size may then be zero, e.g. the spare column of an ``F_p^T`` summand.
    """

    row_sizes: tuple[int, ...]
    col_sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(x < 0 for x in self.row_sizes + self.col_sizes):
            raise StructureError("block sizes must be non-negative")

    @classmethod
    def square(cls, sizes: Iterable[int]) -> "BlockPartition":
        sizes = tuple(sizes)
        return cls(sizes, sizes)

    @property
    def shape(self) -> tuple[int, int]:
        return (sum(self.row_sizes), sum(self.col_sizes))

    def transpose(self) -> "BlockPartition":
        return BlockPartition(self.col_sizes, self.row_sizes)

    def __add__(self, other: "BlockPartition") -> "BlockPartition":
        return BlockPartition(self.row_sizes + other.row_sizes, self.col_sizes + other.col_sizes)

    def reversed(self) -> "BlockPartition":
        return BlockPartition(self.row_sizes[::-1], self.col_sizes[::-1])


EMPTY_PARTITION = BlockPartition((), ())


@dataclass(frozen=True)
class StripIndex:
    family: int
    position: int

    def __iter__(self):
        return iter((self.family, self.position))


@dataclass(frozen=True)
class Permutation:
    """Index map ``image[k]`` = new position of old index ``k`` (0-based).

    Applied to a matrix ``M`` this gives ``P^T M P`` with ``P[k, image[k]] = 1``,
    i.e. old row/column ``k`` moves to position ``image[k]``.
    """

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.image) != list(range(len(self.image))):
            raise StructureError("permutation image must be a bijection on 0..n-1")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "Permutation":
        """Permutation placing old index ``order[j]`` at new position ``j``."""
        image = [0] * len(order)
        for j, k in enumerate(order):
            image[k] = j
        return cls(tuple(image))

    @property
    def order(self) -> tuple[int, ...]:
        out = [0] * len(self.image)
        for k, j in enumerate(self.image):
            out[j] = k
        return tuple(out)

    def __len__(self) -> int:
        return len(self.image)

    def then(self, other: "Permutation") -> "Permutation":
        """Apply ``self`` first, then ``other``."""
        return Permutation(tuple(other.image[j] for j in self.image))

    def inverse(self) -> "Permutation":
        return Permutation(self.order)

    def shifted(self, offset: int) -> tuple[int, ...]:
        return tuple(j + offset for j in self.image)

    def matrix(self) -> ExactMatrix:
        n = len(self.image)
        grid = [[ZERO] * n for _ in range(n)]
        for k, j in enumerate(self.image):
            grid[k][j] = ONE
        return ExactMatrix(n, n, tuple(tuple(r) for r in grid))

    def one_based(self) -> list[int]:
        return [j + 1 for j in self.image]


def direct_sum_permutation(perms: Sequence[Permutation]) -> Permutation:
    image: list[int] = []
    off = 0
    for p in perms:
        image.extend(p.shifted(off))
        off += len(p)
    return Permutation(tuple(image))


def permute_rows_cols(m: ExactMatrix, rows: Permutation, cols: Permutation) -> ExactMatrix:
    """Move row ``k`` to ``rows.image[k]`` and column ``k`` to ``cols.image[k]``."""
    ro, co = rows.order, cols.order
    return m.submatrix(ro, co)


# --------------------------------------------------------------------------


def jordan_block(value: Number | str, n: int) -> ExactMatrix:
    lam = ExactScalar.coerce(value)
    return ExactMatrix(
        n,
        n,
        tuple(tuple(lam if i == j else ONE if j == i + 1 else ZERO for j in range(n)) for i in range(n)),
    )


def build_jordan(s: SegreStructure) -> ExactMatrix:
    return block_diag(*(jordan_block(eb.value, n) for eb in s for n in eb.sizes))


def jordan_partition(s: SegreStructure) -> BlockPartition:
    return BlockPartition.square(n for eb in s for n in eb.sizes)


def weyr_char_from_segre(sizes: Sequence[int]) -> WeyrCharacteristic:
    """Conjugate partition: ``s_i`` counts Jordan blocks of size at least ``i``."""
    sizes = list(sizes)
    if not sizes:
        raise StructureError("Segre characteristic must be non-empty")
    if sizes != sorted(sizes, reverse=True) or sizes[-1] < 1:
        raise StructureError(f"Segre characteristic must be positive and descending, got {sizes}")
    return WeyrCharacteristic(tuple(sum(1 for n in sizes if n >= i) for i in range(1, sizes[0] + 1)))


def segre_from_weyr(w: WeyrCharacteristic | Sequence[int]) -> list[int]:
    s = list(w.s if isinstance(w, WeyrCharacteristic) else w)
    if not s:
        raise StructureError("Weyr characteristic must be non-empty")
    WeyrCharacteristic(tuple(s))  # validates monotonicity
    return [sum(1 for x in s if x >= i) for i in range(1, s[0] + 1)]


def distinct_sizes(sizes: Sequence[int]) -> list[tuple[int, int]]:
    """``[(m_1, r_1), ..., (m_t, r_t)]`` with ``m_1 > ... > m_t``."""
    return [(m, len(list(g))) for m, g in groupby(sizes)]


def strip_index_sequence(
    s: SegreStructure | Sequence[int], order: Literal["row-major", "column-major"] = "row-major"
) -> list[StripIndex]:
    """Strip labels ``(i, j)``: row-major is the ``J^+`` order, column-major the Weyr order."""
    if isinstance(s, SegreStructure):
        if len(s.eigenvalues) != 1:
            raise StructureError("strip indices are defined for a single eigenvalue")
        sizes = s.eigenvalues[0].sizes
    else:
        sizes = tuple(s)
    ms = [m for m, _ in distinct_sizes(sizes)]
    if order == "row-major":
        return [StripIndex(i + 1, j) for i, m in enumerate(ms) for j in range(1, m + 1)]
    if order == "column-major":
        return [StripIndex(i + 1, j) for j in range(1, ms[0] + 1) for i, m in enumerate(ms) if m >= j]
    raise ValueError(f"unknown strip order {order!r}")


def _single_weyr_permutation(sizes: Sequence[int]) -> Permutation:
    """Two steps: gather equal-size blocks into ``J_m(lambda I_r)``, then reorder strips."""
    groups = distinct_sizes(sizes)
    # step one, within each equal-size group: column j of block b -> strip (i, j), slot b
    strip_members: dict[tuple[int, int], list[int]] = {}
    offset = 0
    for i, (m, r) in enumerate(groups, start=1):
        for b in range(r):
            for j in range(1, m + 1):
                strip_members.setdefault((i, j), []).append(offset + b * m + (j - 1))
        offset += r * m
    plus_order = [k for st in strip_index_sequence(sizes, "row-major") for k in strip_members[tuple(st)]]
    step1 = Permutation.from_order(plus_order)
    # step two: strips from row-major to column-major order
    lengths = {(i, j): r for i, (m, r) in enumerate(groups, start=1) for j in range(1, m + 1)}
    start, pos = {}, 0
    for st in strip_index_sequence(sizes, "row-major"):
        start[tuple(st)] = pos
        pos += lengths[tuple(st)]
    step2_order = [
        start[tuple(st)] + k for st in strip_index_sequence(sizes, "column-major") for k in range(lengths[tuple(st)])
    ]
    return step1.then(Permutation.from_order(step2_order))


def jordan_to_weyr_permutation(s: SegreStructure) -> Permutation:
    """``P^T J P = J^#`` where ``P`` is ``.matrix()`` of the result."""
    return direct_sum_permutation([_single_weyr_permutation(eb.sizes) for eb in s])


def weyr_partition(s: SegreStructure) -> BlockPartition:
    """Coarsest partition of ``J^#`` with scalar diagonal blocks: one block per strip."""
    sizes = []
    for eb in s:
        r = dict((i, r) for i, (_, r) in enumerate(distinct_sizes(eb.sizes), start=1))
        sizes.extend(r[st.family] for st in strip_index_sequence(eb.sizes, "column-major"))
    return BlockPartition.square(sizes)


def _single_weyr(value: ExactScalar, sizes: Sequence[int]) -> ExactMatrix:
    w = weyr_char_from_segre(sizes).s
    n = sum(sizes)
    grid = [[ZERO] * n for _ in range(n)]
    starts = [sum(w[:k]) for k in range(len(w))]
    for k, sk in enumerate(w):
        for a in range(sk):
            grid[starts[k] + a][starts[k] + a] = value
            if k + 1 < len(w) and a < w[k + 1]:
                grid[starts[k] + a][starts[k + 1] + a] = ONE
    return ExactMatrix(n, n, tuple(tuple(r) for r in grid))


def build_weyr(s: SegreStructure) -> tuple[ExactMatrix, BlockPartition]:
    return block_diag(*(_single_weyr(eb.value, eb.sizes) for eb in s)), weyr_partition(s)


def weyr_char_of_matrix(a: ExactMatrix, value: Number | str) -> WeyrCharacteristic | tuple[()]:
    """``s_k = rank((A - lambda I)^(k-1)) - rank((A - lambda I)^k)``; empty if not an eigenvalue."""
    if a.rows != a.cols:
        raise StructureError("Weyr characteristic needs a square matrix")
    shifted = a - ExactMatrix.identity(a.rows, value)
    out = []
    prev_rank, power = a.rows, ExactMatrix.identity(a.rows)
    while True:
        power = power @ shifted
        r = rank(power)
        if r == prev_rank:
            break
        out.append(prev_rank - r)
        prev_rank = r
    return WeyrCharacteristic(tuple(out)) if out else ()
