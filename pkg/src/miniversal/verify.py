"""Exact oracles: tangent maps, versality certificates, centralizers, triangularity.

Vectorization is column-major throughout: entry ``(i, j)`` of an ``r x c``
matrix is coordinate ``i + j*r``.  For pairs the first matrix's coordinates
come before the second's, and the domain is ``vec S`` followed by ``vec R``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Literal, Sequence, Union

from .deformations.base import Template, TemplatePair
from .exact import (
    ExactMatrix,
    ExactScalar,
    SparseRow,
    _plain,
    sparse_nullspace,
    sparse_rank,
    sparse_solve,
)
from .patterns import PatternMatrix
from .structures import BlockPartition, SegreStructure, StructureError

TangentKind = Literal["similarity", "pencil", "contragredient"]
_KIND_ALIASES = {"pencil_equivalence": "pencil"}
Orientation = Literal["lower", "upper"]

#: Orientation of the commutant of a Weyr matrix under its strip partition,
#: fixed by the exact nullspace of the commutator map (see tests).
CENTRALIZER_ORIENTATION: Orientation = "upper"


@dataclass(frozen=True)
class VersalityReport:
    total_dim: int
    tangent_rank: int
    param_count: int
    versal: bool
    miniversal: bool

    @property
    def codimension(self) -> int:
        return self.total_dim - self.tangent_rank

    def to_json(self) -> dict:
        out = asdict(self)
        out["codimension"] = self.codimension
        return out


def _nz(m: ExactMatrix) -> list[list[tuple[int, Fraction | ExactScalar]]]:
    return [[(j, _plain(a)) for j, a in enumerate(r) if a] for r in m.entries]


def _nz_cols(m: ExactMatrix) -> list[list[tuple[int, Fraction | ExactScalar]]]:
    return _nz(m.transpose())


def _left_mult(rows: list[SparseRow], a: ExactMatrix, x_rows: int, x_cols: int, target_off: int, dom_off: int, sign: int) -> None:
    """Add ``sign * A X`` (X is x_rows x x_cols, domain block at ``dom_off``)."""
    a_nz = _nz(a)
    out_rows = a.rows
    for j in range(x_cols):
        for i in range(out_rows):
            row = rows[target_off + i + j * out_rows]
            for k, v in a_nz[i]:
                col = dom_off + k + j * x_rows
                nv = row.get(col, 0) + sign * v
                if nv:
                    row[col] = nv
                else:
                    row.pop(col, None)


def _right_mult(rows: list[SparseRow], a: ExactMatrix, x_rows: int, x_cols: int, target_off: int, dom_off: int, sign: int) -> None:
    """Add ``sign * X A``."""
    a_cols = _nz_cols(a)
    out_cols = a.cols
    for j in range(out_cols):
        for i in range(x_rows):
            row = rows[target_off + i + j * x_rows]
            for k, v in a_cols[j]:
                col = dom_off + i + k * x_rows
                nv = row.get(col, 0) + sign * v
                if nv:
                    row[col] = nv
                else:
                    row.pop(col, None)


def tangent_rows(base: Union[ExactMatrix, tuple[ExactMatrix, ExactMatrix]], kind: TangentKind) -> tuple[list[SparseRow], int]:
    """Sparse rows of the tangent map and its domain dimension."""
    kind = _KIND_ALIASES.get(kind, kind)
    if kind == "similarity":
        a = base if isinstance(base, ExactMatrix) else None
        if a is None or a.rows != a.cols:
            raise StructureError("similarity tangent needs one square matrix")
        n = a.rows
        rows: list[SparseRow] = [{} for _ in range(n * n)]
        _left_mult(rows, a, n, n, 0, 0, 1)
        _right_mult(rows, a, n, n, 0, 0, -1)
        return rows, n * n
    if isinstance(base, ExactMatrix) or len(base) != 2:
        raise StructureError(f"{kind} tangent needs a pair of matrices")
    a, b = base
    m, n = a.shape
    if kind == "pencil":
        if b.shape != (m, n):
            raise StructureError(f"pencil matrices differ in shape: {a.shape} vs {b.shape}")
        rows = [{} for _ in range(2 * m * n)]
        s_off, r_off = 0, m * m
        # (A R - S A, B R - S B)
        _left_mult(rows, a, n, n, 0, r_off, 1)
        _right_mult(rows, a, m, m, 0, s_off, -1)
        _left_mult(rows, b, n, n, m * n, r_off, 1)
        _right_mult(rows, b, m, m, m * n, s_off, -1)
        return rows, m * m + n * n
    if kind == "contragredient":
        if b.shape != (n, m):
            raise StructureError(f"contragredient pair needs m x n and n x m, got {a.shape} and {b.shape}")
        rows = [{} for _ in range(2 * m * n)]
        s_off, r_off = 0, m * m
        # (A R - S A, B S - R B)
        _left_mult(rows, a, n, n, 0, r_off, 1)
        _right_mult(rows, a, m, m, 0, s_off, -1)
        _left_mult(rows, b, m, m, m * n, s_off, 1)
        _right_mult(rows, b, n, n, m * n, r_off, -1)
        return rows, m * m + n * n
    raise ValueError(f"unknown tangent kind {kind!r}")


def tangent_matrix(base: Union[ExactMatrix, tuple[ExactMatrix, ExactMatrix]], kind: TangentKind) -> ExactMatrix:
    rows, ncols = tangent_rows(base, kind)
    zero = ExactScalar(0)
    return ExactMatrix(
        len(rows),
        ncols,
        tuple(tuple(ExactScalar.coerce(r[j]) if j in r else zero for j in range(ncols)) for r in rows),
    )


def _bases_and_patterns(obj: Template | TemplatePair) -> tuple:
    if isinstance(obj, Template):
        return obj.base, [obj.pattern]
    return (obj.first.base, obj.second.base), [obj.first.pattern, obj.second.pattern]


def _default_kind(obj: Template | TemplatePair) -> TangentKind:
    return "similarity" if isinstance(obj, Template) else obj.kind


def star_coordinates(patterns: Sequence[PatternMatrix]) -> list[int]:
    """Target coordinates of all stars, in global parameter order."""
    out, off = [], 0
    for p in patterns:
        out.extend(off + i + j * p.rows for i, j in p.stars())
        off += p.rows * p.cols
    return out


def certify(obj: Template | TemplatePair, kind: TangentKind | None = None) -> VersalityReport:
    """Exact versality test: the tangent image plus the star coordinates must span everything."""
    kind = kind or _default_kind(obj)
    base, patterns = _bases_and_patterns(obj)
    rows, ndom = tangent_rows(base, kind)
    total = len(rows)
    t_rank = sparse_rank(rows)
    coords = star_coordinates(patterns)
    aug = [dict(r) for r in rows]
    for k, c in enumerate(coords):
        aug[c][ndom + k] = Fraction(1)
    a_rank = sparse_rank(aug)
    versal = a_rank == total
    return VersalityReport(
        total_dim=total,
        tangent_rank=t_rank,
        param_count=len(coords),
        versal=versal,
        miniversal=versal and len(coords) == total - t_rank,
    )


def is_versal_without(obj: Template | TemplatePair, drop: int, kind: TangentKind | None = None) -> bool:
    """Versality after deleting the star with global parameter id ``drop``."""
    kind = kind or _default_kind(obj)
    base, patterns = _bases_and_patterns(obj)
    rows, ndom = tangent_rows(base, kind)
    coords = star_coordinates(patterns)
    aug = [dict(r) for r in rows]
    for k, c in enumerate(coords):
        if k != drop:
            aug[c][ndom + k] = Fraction(1)
    return sparse_rank(aug) == len(rows)


def centralizer_basis(a: ExactMatrix) -> list[ExactMatrix]:
    """Exact basis of ``{X : AX = XA}``."""
    rows, ndom = tangent_rows(a, "similarity")
    n = a.rows
    out = []
    for vec in sparse_nullspace(rows, ndom):
        grid = [[ExactScalar(0)] * n for _ in range(n)]
        for idx, v in vec.items():
            grid[idx % n][idx // n] = ExactScalar.coerce(v)
        out.append(ExactMatrix(n, n, tuple(tuple(r) for r in grid)))
    return out


def is_block_triangular(
    obj: PatternMatrix | ExactMatrix, partition: BlockPartition, orientation: Orientation = "lower"
) -> bool:
    """Block triangularity under ``partition``.

    For patterns every block must be all-zero or all-star, and star blocks may
    sit only on or below (``lower``) / above (``upper``) the block diagonal.
    For exact matrices only the second condition applies to nonzero blocks.
    """
    if orientation not in ("lower", "upper"):
        raise ValueError(f"unknown orientation {orientation!r}")
    if partition.shape != obj.shape or len(partition.row_sizes) != len(partition.col_sizes):
        raise StructureError(f"partition {partition} is not conformal with a {obj.shape} matrix")
    if isinstance(obj, PatternMatrix):
        grid = obj.mask
    else:
        grid = tuple(tuple(bool(x) for x in r) for r in obj.entries)
    r0 = 0
    for a, rs in enumerate(partition.row_sizes):
        c0 = 0
        for b, cs in enumerate(partition.col_sizes):
            if rs and cs:
                cells = [grid[i][j] for i in range(r0, r0 + rs) for j in range(c0, c0 + cs)]
                if any(cells):
                    if isinstance(obj, PatternMatrix) and not all(cells):
                        return False
                    if (orientation == "lower" and b > a) or (orientation == "upper" and b < a):
                        return False
            c0 += cs
        r0 += rs
    return True


def codim_similarity_formula(s: SegreStructure) -> int:
    """Centralizer dimension of a Jordan matrix: sum over eigenvalues of ``min(n_i, n_j)``."""
    return sum(min(a, b) for eb in s for a in eb.sizes for b in eb.sizes)


def linear_params(obj: Template | TemplatePair, perturbation) -> list:
    """Exact first-order parameters: the ``pi`` solving ``T(X) - B(pi) = -E``.

    ``perturbation`` is an ExactMatrix (a pair of them for pencils) and the
    template must be miniversal so that ``pi`` is unique.
    """
    kind = _default_kind(obj)
    base, patterns = _bases_and_patterns(obj)
    perts = [perturbation] if isinstance(obj, Template) else list(perturbation)
    rows, ndom = tangent_rows(base, kind)
    coords = star_coordinates(patterns)
    aug = [dict(r) for r in rows]
    for k, c in enumerate(coords):
        aug[c][ndom + k] = Fraction(-1)
    rhs = []
    for e in perts:
        rhs.extend(-e[i, j] for j in range(e.cols) for i in range(e.rows))
    sol = sparse_solve(aug, rhs, ndom + len(coords))
    if sol is None:
        raise ValueError("linearized system has no solution; the template is not versal")
    return [ExactScalar.coerce(sol.get(ndom + k, 0)) for k in range(len(coords))]
