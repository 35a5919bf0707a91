"""Miniversal deformations of contragredient pencils under ``(S^-1 A R, R^-1 B S)``.

Summand order is ``(I, J)`` with ``J`` nonsingular, then ``(F_p, G_p^T)``
(``p`` descending), ``(I, J(0))``, ``(J'(0), I)`` and ``(G_q^T, F_q)``
(``q`` ascending).  The first matrix is ``m x n``, the second ``n x m``.
"""

from __future__ import annotations

from ..exact import ExactMatrix, block_diag
from ..patterns import adjoin_zero_col_right, adjoin_zero_row_top, t_block
from ..structures import (
    BlockPartition,
    Permutation,
    SegreStructure,
    build_jordan,
    jordan_partition,
    jordan_to_weyr_permutation,
    permute_rows_cols,
    weyr_partition,
)
from ._layout import Layout, PairCanvas, f_block, g_block, segment_permutation, singular_partition
from .base import ContraStructure, Template, TemplatePair
from .similarity import arnold_pattern, deform_jordan


def _nilpotent(sizes: tuple[int, ...]) -> SegreStructure:
    return SegreStructure.single(sizes, 0) if sizes else SegreStructure(())


def _layout(cs: ContraStructure):
    lay = Layout()
    reg = lay.add("reg", cs.regular.size, cs.regular.size, jordan_partition(cs.regular))
    ps = [lay.add(f"P{p}", p, p - 1, singular_partition(p, p - 1, spare_first=True)) for p in cs.left]
    abz = [lay.add(f"Z{a}", a, a, BlockPartition.square([a])) for a in cs.ab_zero]
    baz = [lay.add(f"W{b}", b, b, BlockPartition.square([b])) for b in cs.ba_zero]
    qs = [lay.add(f"Q{q}", q - 1, q, singular_partition(q - 1, q, spare_first=False)) for q in cs.right]
    return lay, reg, ps, abz, baz, qs


def triangular_partition(cs: ContraStructure) -> BlockPartition:
    """Partition of the first matrix after triangularization (the second uses its transpose)."""
    out = weyr_partition(cs.regular)
    for p in cs.left:
        out = out + singular_partition(p, p - 1, spare_first=True)
    out = out + weyr_partition(_nilpotent(cs.ab_zero)) + weyr_partition(_nilpotent(cs.ba_zero)).reversed()
    for q in cs.right:
        out = out + singular_partition(q - 1, q, spare_first=False)
    return out


def deform_contragredient(cs: ContraStructure) -> TemplatePair:
    """Simple miniversal deformation ``(I, J + K) (+) (A, B)``.

    Couplings between summands, block ``(i, j)`` of the first matrix being
    ``m_i x n_j`` and of the second ``n_i x m_j``; ``T`` is the ``t_block``
    of the block's shape and a ``^`` (``>``) marks a zero row on top (zero
    column on the right)::

        first:  (P_i, P_j) i<j   T         second: (P_i, P_i)       G^T + T
                (P, Z)           T^                (P_i, P_j) i>j   T
                (P, W), (P, Q)   T                 (Z, P)           T
                (Z, W)           T                 (Z, Z)           J(0) + H
                (Z, Q)           T>                (W, P)           T>
                (W, W)           J'(0) + H         (W, Z)           T
                (W, Q)           T                 (Q, P), (Q, Z)   T
                (Q_i, Q_j) i<j   T                 (Q, W)           T^
                                                   (Q_i, Q_i)       F + T
                                                   (Q_i, Q_j) i>j   T
    """
    lay, reg, ps, abz, baz, qs = _layout(cs)
    m, n = lay.rows, lay.cols
    reg_t = deform_jordan(cs.regular)

    base_a = block_diag(
        ExactMatrix.identity(reg.rows),
        *(f_block(p) for p in cs.left),
        ExactMatrix.identity(sum(cs.ab_zero)),
        build_jordan(_nilpotent(cs.ba_zero)),
        *(g_block(q).transpose() for q in cs.right),
    )
    base_b = block_diag(
        reg_t.base,
        *(g_block(p).transpose() for p in cs.left),
        build_jordan(_nilpotent(cs.ab_zero)),
        ExactMatrix.identity(sum(cs.ba_zero)),
        *(f_block(q) for q in cs.right),
    )
    assert base_a.shape == (m, n) and base_b.shape == (n, m)

    c = PairCanvas(lay, transposed=True)
    A, B = c.put_first, c.put_second
    B(reg, reg, reg_t.pattern)
    if abz:
        B(abz[0], abz[0], arnold_pattern(cs.ab_zero))
    if baz:
        A(baz[0], baz[0], arnold_pattern(cs.ba_zero))

    for i, pi in zip(ps, cs.left):
        B(i, i, t_block(pi - 1, pi))
        for j, pj in zip(ps, cs.left):
            if ps.index(i) < ps.index(j):
                A(i, j, t_block(pi, pj - 1))
            elif ps.index(i) > ps.index(j):
                B(i, j, t_block(pi - 1, pj))
        for k, a in zip(abz, cs.ab_zero):
            A(i, k, adjoin_zero_row_top(t_block(pi - 1, a)))
            B(k, i, t_block(a, pi))
        for k, b in zip(baz, cs.ba_zero):
            A(i, k, t_block(pi, b))
            B(k, i, adjoin_zero_col_right(t_block(b, pi - 1)))
        for k, q in zip(qs, cs.right):
            A(i, k, t_block(pi, q))
            B(k, i, t_block(q, pi))
    for i, a in zip(abz, cs.ab_zero):
        for k, b in zip(baz, cs.ba_zero):
            A(i, k, t_block(a, b))
            B(k, i, t_block(b, a))
        for k, q in zip(qs, cs.right):
            A(i, k, adjoin_zero_col_right(t_block(a, q - 1)))
            B(k, i, t_block(q, a))
    for i, b in zip(baz, cs.ba_zero):
        for k, q in zip(qs, cs.right):
            A(i, k, t_block(b, q))
            B(k, i, adjoin_zero_row_top(t_block(q - 1, b)))
    for a_idx, (i, qi) in enumerate(zip(qs, cs.right)):
        B(i, i, t_block(qi, qi - 1))
        for b_idx, (j, qj) in enumerate(zip(qs, cs.right)):
            if a_idx < b_idx:
                A(i, j, t_block(qi - 1, qj))
            elif a_idx > b_idx:
                B(i, j, t_block(qi, qj - 1))

    part = lay.partition()
    return TemplatePair(
        Template(base_a, c.first.pattern(), part),
        Template(base_b, c.second.pattern(), part.transpose()),
        kind="contragredient",
    )


def triangularizing_permutations(cs: ContraStructure) -> tuple[Permutation, Permutation]:
    """Permutations of the ``m``- and ``n``-index spaces that make the deformation block triangular.

    The regular part and ``J(0)`` go to Weyr form; ``J'(0)`` goes to Weyr form
    and is then read in reverse.  Singular summands stay in place.
    """
    reg_p = jordan_to_weyr_permutation(cs.regular)
    ab_p = jordan_to_weyr_permutation(_nilpotent(cs.ab_zero))
    ba_w = jordan_to_weyr_permutation(_nilpotent(cs.ba_zero))
    nb = len(ba_w)
    ba_p = ba_w.then(Permutation(tuple(nb - 1 - k for k in range(nb))))

    def build(left_sizes, right_sizes):
        sizes = [cs.regular.size, *left_sizes, sum(cs.ab_zero), sum(cs.ba_zero), *right_sizes]
        inner = [reg_p, *([None] * len(left_sizes)), ab_p, ba_p, *([None] * len(right_sizes))]
        return segment_permutation(sizes, range(len(sizes)), inner)

    m_perm = build(list(cs.left), [q - 1 for q in cs.right])
    n_perm = build([p - 1 for p in cs.left], list(cs.right))
    return m_perm, n_perm


def triangularize_contragredient(tp: TemplatePair, cs: ContraStructure) -> tuple[TemplatePair, Permutation, Permutation]:
    """Apply :func:`triangularizing_permutations` contragrediently.

    Returns the new pair with the ``m``-space and ``n``-space permutations:
    rows of the first matrix and columns of the second follow the ``m``
    permutation, the other two follow the ``n`` permutation.  The first
    matrix ends up block upper triangular and the second block lower
    triangular under the returned partitions.
    """
    if tp.kind != "contragredient" or tp.first.shape != cs.shape:
        raise ValueError("template pair does not match the contragredient structure")
    m_perm, n_perm = triangularizing_permutations(cs)
    part = triangular_partition(cs)
    first = Template(
        permute_rows_cols(tp.first.base, m_perm, n_perm), tp.first.pattern.permuted(m_perm, n_perm), part
    )
    second = Template(
        permute_rows_cols(tp.second.base, n_perm, m_perm), tp.second.pattern.permuted(n_perm, m_perm), part.transpose()
    )
    return TemplatePair(first, second, kind="contragredient"), m_perm, n_perm
