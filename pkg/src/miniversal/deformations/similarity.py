from __future__ import annotations

from typing import Literal

from ..patterns import Canvas, PatternMatrix, pattern_block_diag, star_block, t_block
from ..structures import (
    SegreStructure,
    build_jordan,
    build_weyr,
    distinct_sizes,
    jordan_partition,
    jordan_to_weyr_permutation,
    strip_index_sequence,
)
from .base import Template


def arnold_pattern(sizes: tuple[int, ...]) -> PatternMatrix:
    """``H = [T_{n_i, n_j}]`` for one eigenvalue."""
    n = sum(sizes)
    canvas = Canvas(n, n)
    r = 0
    for ni in sizes:
        c = 0
        for nj in sizes:
            canvas.place(r, c, t_block(ni, nj))
            c += nj
        r += ni
    return canvas.pattern()


def deform_jordan(s: SegreStructure) -> Template:
    """Arnold's simple miniversal deformation ``J + K``."""
    pattern = pattern_block_diag(*(arnold_pattern(eb.sizes) for eb in s))
    return Template(build_jordan(s), pattern, jordan_partition(s))


def weyr_pattern_direct(sizes: tuple[int, ...]) -> PatternMatrix:
    """``H^#`` placed strip by strip.

    Strip ``(i, j)`` holds the ``j``-th columns of the ``r_i`` blocks of size
    ``m_i``; block ``((i, j), (i2, j2))`` is all-star iff ``i <= i2`` and
    ``j == m_i``, or ``i > i2`` and ``j2 == 1``.
    """
    groups = distinct_sizes(sizes)
    strips = strip_index_sequence(sizes, "column-major")
    start, pos = {}, 0
    for st in strips:
        start[st] = pos
        pos += groups[st.family - 1][1]
    canvas = Canvas(pos, pos)
    for a in strips:
        for b in strips:
            (i, j), (i2, j2) = a, b
            m_i = groups[i - 1][0]
            if (i <= i2 and j == m_i) or (i > i2 and j2 == 1):
                canvas.place(start[a], start[b], star_block(groups[i - 1][1], groups[i2 - 1][1]))
    return canvas.pattern()


def deform_weyr(s: SegreStructure, route: Literal["permute", "direct"] = "permute") -> Template:
    """Block triangular miniversal deformation ``J^# + K^#``.

    ``permute`` conjugates Arnold's deformation by the Jordan-to-Weyr
    permutation; ``direct`` writes the strip pattern down without it.
    """
    base, partition = build_weyr(s)
    if route == "permute":
        perm = jordan_to_weyr_permutation(s)
        pattern = deform_jordan(s).pattern.permuted(perm, perm)
    elif route == "direct":
        pattern = pattern_block_diag(*(weyr_pattern_direct(eb.sizes) for eb in s))
    else:
        raise ValueError(f"unknown route {route!r}")
    return Template(base, pattern, partition)
