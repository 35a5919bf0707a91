import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from miniversal.exact import ExactMatrix
from miniversal.patterns import (
    PatternMatrix,
    adjoin_zero_col_right,
    adjoin_zero_row_top,
    arrow_block,
    compose_blocks,
    star_block,
    t_block,
    z_block,
)
from miniversal.structures import BlockPartition, Permutation, StructureError

P = PatternMatrix.from_strings


def test_t_block_cases():
    assert t_block(2, 3) == P(["*..", "*.."])
    assert t_block(3, 2) == P(["..", "..", "**"])
    assert t_block(1, 1) == P(["*"])
    assert t_block(2, 2) == P(["..", "**"])
    assert t_block(0, 3).shape == (0, 3)


@settings(max_examples=80)
@given(st.integers(0, 7), st.integers(0, 7))
def test_t_block_count(p, q):
    assert t_block(p, q).param_count == (p if p < q else q)


def test_star_block():
    assert star_block(1, 1) == P(["*"])
    assert star_block(2, 3).param_count == 6
    assert star_block(0, 3).shape == (0, 3)


def test_arrows():
    assert arrow_block("down", 3, 2) == P(["..", "..", "**"])
    assert arrow_block("right", 2, 2) == P([".*", ".*"])
    assert arrow_block("up", 1, 4) == P(["****"])
    assert arrow_block("left", 2, 3) == P(["*..", "*.."])
    assert arrow_block("up", 0, 3).param_count == 0
    with pytest.raises(ValueError):
        arrow_block("sideways", 1, 1)


def test_z_block():
    assert z_block(2, 5) == P(["***..", "....."])
    assert z_block(3, 3).param_count == 0
    assert z_block(2, 1).param_count == 0


@settings(max_examples=80)
@given(st.integers(1, 7), st.integers(0, 7))
def test_z_block_count(r, c):
    assert z_block(r, c).param_count == max(0, c - r)


def test_z_block_without_rows_has_no_stars():
    assert z_block(0, 4).shape == (0, 4)
    assert z_block(0, 4).param_count == 0


def test_adjoin():
    assert adjoin_zero_row_top(P(["*"])) == P([".", "*"])
    assert adjoin_zero_col_right(P(["*"])) == P(["*."])
    top = adjoin_zero_row_top(PatternMatrix.zeros(0, 3))
    assert top.shape == (1, 3) and top.param_count == 0
    m = adjoin_zero_col_right(ExactMatrix.from_rows([[1], [2]]))
    assert m == ExactMatrix.from_rows([[1, 0], [2, 0]])


def test_ids_row_major_and_contiguous():
    p = P(["*.*", ".**"])
    assert p.entries == ((0, None, 1), (None, 2, 3))
    assert p.to_json() == [["p0", "0", "p1"], ["0", "p2", "p3"]]
    assert PatternMatrix.from_json(p.to_json()) == p


def test_compose():
    one = star_block(1, 1)
    z = PatternMatrix.zeros(1, 1)
    assert compose_blocks([[one]]) == one
    assert compose_blocks([[one, z], [z, one]]).param_count == 2
    with pytest.raises(StructureError):
        compose_blocks([[one, z], [one]])
    with pytest.raises(StructureError):
        compose_blocks([[star_block(2, 1), z]])


def test_compose_reproduces_arnold_4_2():
    grid = [[t_block(4, 4), t_block(4, 2)], [t_block(2, 4), t_block(2, 2)]]
    h = compose_blocks(grid)
    assert h.param_count == 10
    assert h == P(["......", "......", "......", "******", "*.....", "*...**"])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=3), st.lists(st.integers(1, 4), min_size=1, max_size=3), st.data())
def test_compose_preserves_stars(heights, widths, data):
    grid = [[data.draw(st.sampled_from([t_block, z_block, star_block]))(h, w) for w in widths] for h in heights]
    c = compose_blocks(grid)
    assert c.param_count == sum(b.param_count for row in grid for b in row)
    r0 = 0
    for h, row in zip(heights, grid):
        c0 = 0
        for w, b in zip(widths, row):
            for i, j in b.stars():
                assert c.mask[r0 + i][c0 + j]
            c0 += w
        r0 += h


def test_transpose_permute_without():
    p = P(["*.", "**"])
    assert p.transpose() == P(["**", ".*"])
    swap = Permutation((1, 0))
    assert p.permuted(swap, swap) == P(["**", ".*"])
    assert p.without((1, 1)) == P(["*.", "*."])
    assert PatternMatrix.zeros(0, 2).transpose().shape == (2, 0)


def test_render_uses_separators():
    text = t_block(2, 2).render(BlockPartition.square([1, 1]))
    assert text.splitlines()[0] == "[ . | . ]"
    assert "-" in text.splitlines()[1]
    assert text.splitlines()[2] == "[ * | * ]"


def test_ids_unique_for_all_constructors():
    for p in [t_block(3, 5), star_block(2, 2), arrow_block("left", 3, 3), z_block(2, 6)]:
        ids = [k for r in p.entries for k in r if k is not None]
        assert ids == list(range(p.param_count))
