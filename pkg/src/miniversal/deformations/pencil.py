"""Miniversal deformations of matrix pencils under ``(S^-1 A R, S^-1 B R)``."""

from __future__ import annotations

from ..exact import ExactMatrix, block_diag
from ..patterns import arrow_block, z_block
from ..structures import (
    BlockPartition,
    Permutation,
    SegreStructure,
    build_jordan,
    build_weyr,
    jordan_partition,
    jordan_to_weyr_permutation,
    weyr_partition,
)
from ._layout import Layout, PairCanvas, f_block, g_block, segment_permutation, singular_partition
from .base import PencilStructure, Template, TemplatePair
from .similarity import deform_jordan, deform_weyr


def _infinite(ps: PencilStructure) -> SegreStructure:
    return SegreStructure.single(ps.infinite, 0) if ps.infinite else SegreStructure(())


def _pair(canvas: PairCanvas, base_a: ExactMatrix, base_b: ExactMatrix) -> TemplatePair:
    part = canvas.layout.partition()
    return TemplatePair(
        Template(base_a, canvas.first.pattern(), part),
        Template(base_b, canvas.second.pattern(), part),
        kind="pencil",
    )


def deform_pencil(ps: PencilStructure) -> TemplatePair:
    """Block lower triangular simple miniversal deformation of

    ``(+) (F_p^T, G_p^T)  (+)  (I, J^#)  (+)  (J(0)^#, I)  (+)  (+) (F_q, G_q)``

    with ``p`` ascending and ``q`` descending.  Singular summands are
    partitioned into 1x1 blocks, the regular parts into Weyr strips.
    """
    inf = _infinite(ps)
    reg_t = deform_weyr(ps.regular)
    inf_t = deform_weyr(inf)
    n_reg, n_inf = ps.n_regular, ps.n_infinite

    lay = Layout()
    lefts = [lay.add(f"FT{p}", p - 1, p, singular_partition(p - 1, p, spare_first=True)) for p in ps.left]
    reg = lay.add("reg", n_reg, n_reg, reg_t.partition)
    infs = lay.add("inf", n_inf, n_inf, inf_t.partition)
    rights = [lay.add(f"F{q}", q, q - 1, singular_partition(q, q - 1, spare_first=False)) for q in ps.right]

    base_a = block_diag(
        *(f_block(p).transpose() for p in ps.left), ExactMatrix.identity(n_reg), inf_t.base, *(f_block(q) for q in ps.right)
    )
    base_b = block_diag(
        *(g_block(p).transpose() for p in ps.left), reg_t.base, ExactMatrix.identity(n_inf), *(g_block(q) for q in ps.right)
    )

    c = PairCanvas(lay, transposed=False)
    c.put_first(infs, infs, inf_t.pattern)
    c.put_second(reg, reg, reg_t.pattern)
    for b, (j, pj) in enumerate(zip(lefts, ps.left)):
        c.put_first(infs, j, arrow_block("right", n_inf, pj))
        c.put_second(reg, j, arrow_block("left", n_reg, pj))
        for i, pi in zip(lefts[b + 1 :], ps.left[b + 1 :]):
            c.put_second(i, j, z_block(pj, pi - 1).transpose())
    for a, (i, qi) in enumerate(zip(rights, ps.right)):
        c.put_first(i, infs, arrow_block("down", qi, n_inf))
        c.put_second(i, reg, arrow_block("up", qi, n_reg))
        for j, pj in zip(lefts, ps.left):
            c.put_first(i, j, arrow_block("right", qi, pj))
            c.put_second(i, j, arrow_block("up", qi, pj))
        for j, qj in zip(rights[:a], ps.right[:a]):
            c.put_second(i, j, z_block(qi, qj - 1))
    return _pair(c, base_a, base_b)


def deform_pencil_kronecker(ps: PencilStructure) -> TemplatePair:
    """Simple miniversal deformation in Kronecker order

    ``(+) (F_q, G_q)  (+)  (I, J)  (+)  (J(0), I)  (+)  (+) (F_p^T, G_p^T)``

    with the ``F_q`` summands in ascending and the ``F_p^T`` summands in
    descending size, Jordan regular parts and Arnold's ``H``/``K``.
    """
    inf = _infinite(ps)
    qs = list(reversed(ps.right))
    pl = list(reversed(ps.left))
    reg_t = deform_jordan(ps.regular)
    inf_t = deform_jordan(inf)
    n_reg, n_inf = ps.n_regular, ps.n_infinite

    lay = Layout()
    rights = [lay.add(f"F{q}", q, q - 1, singular_partition(q, q - 1, spare_first=False)) for q in qs]
    reg = lay.add("reg", n_reg, n_reg, jordan_partition(ps.regular))
    infs = lay.add("inf", n_inf, n_inf, jordan_partition(inf))
    lefts = [lay.add(f"FT{p}", p - 1, p, singular_partition(p - 1, p, spare_first=True)) for p in pl]

    base_a = block_diag(
        *(f_block(q) for q in qs), ExactMatrix.identity(n_reg), build_jordan(inf), *(f_block(p).transpose() for p in pl)
    )
    base_b = block_diag(
        *(g_block(q) for q in qs), build_jordan(ps.regular), ExactMatrix.identity(n_inf), *(g_block(p).transpose() for p in pl)
    )

    c = PairCanvas(lay, transposed=False)
    c.put_first(infs, infs, inf_t.pattern)
    c.put_second(reg, reg, reg_t.pattern)
    for a, (i, qi) in enumerate(zip(rights, qs)):
        c.put_first(i, infs, arrow_block("down", qi, n_inf))
        c.put_second(i, reg, arrow_block("up", qi, n_reg))
        for j, qj in zip(rights[a + 1 :], qs[a + 1 :]):
            c.put_second(i, j, z_block(qi, qj - 1))
        for j, pj in zip(lefts, pl):
            c.put_first(i, j, arrow_block("right", qi, pj))
            c.put_second(i, j, arrow_block("up", qi, pj))
    for b, (j, pj) in enumerate(zip(lefts, pl)):
        c.put_first(infs, j, arrow_block("right", n_inf, pj))
        c.put_second(reg, j, arrow_block("left", n_reg, pj))
        for i, pi in zip(lefts[:b], pl[:b]):
            c.put_second(i, j, z_block(pj, pi - 1).transpose())
    return _pair(c, base_a, base_b)


def kronecker_to_weyr_permutations(ps: PencilStructure) -> tuple[Permutation, Permutation]:
    """Row and column permutations taking :func:`deform_pencil_kronecker` to :func:`deform_pencil`.

    Summand families are reversed and swapped into the Weyr order; inside the
    regular and infinite parts the Jordan-to-Weyr permutation is applied.
    """
    l, r = len(ps.left), len(ps.right)
    reg_p = jordan_to_weyr_permutation(ps.regular)
    inf_p = jordan_to_weyr_permutation(_infinite(ps))
    # Kronecker segments: F_q (ascending) | reg | inf | F_p^T (descending)
    q_asc, p_desc = list(reversed(ps.right)), list(reversed(ps.left))
    row_sizes = [q for q in q_asc] + [ps.n_regular, ps.n_infinite] + [p - 1 for p in p_desc]
    col_sizes = [q - 1 for q in q_asc] + [ps.n_regular, ps.n_infinite] + [p for p in p_desc]
    # target order: F_p^T ascending, reg, inf, F_q descending
    new_order = [r + 2 + (l - 1 - k) for k in range(l)] + [r, r + 1] + [r - 1 - k for k in range(r)]
    inner = [None] * r + [reg_p, inf_p] + [None] * l
    return (
        segment_permutation(row_sizes, new_order, inner),
        segment_permutation(col_sizes, new_order, inner),
    )
