import random
from fractions import Fraction

import pytest

from miniversal.corpus import random_contra, random_pencil, random_segre
from miniversal.deformations import (
    ContraStructure,
    PencilStructure,
    Template,
    TemplatePair,
    deform_contragredient,
    deform_jordan,
    deform_pencil,
    deform_pencil_kronecker,
    deform_weyr,
)
from miniversal.exact import ExactMatrix
from miniversal.patterns import PatternMatrix, star_block
from miniversal.structures import BlockPartition, SegreStructure, StructureError, build_jordan, build_weyr
from miniversal.verify import (
    CENTRALIZER_ORIENTATION,
    centralizer_basis,
    certify,
    codim_similarity_formula,
    is_block_triangular,
    is_versal_without,
    linear_params,
    tangent_matrix,
)

from conftest import kron_tangent, sympy_rank, to_sympy

J2 = ExactMatrix.from_rows([[0, 1], [0, 0]])


def _template(base, pattern):
    return Template(base, pattern, BlockPartition.square([base.rows]))


def test_tangent_examples():
    assert sympy_rank(to_sympy(tangent_matrix(ExactMatrix.zeros(2, 2), "similarity"))) == 0
    assert sympy_rank(to_sympy(tangent_matrix(J2, "similarity"))) == 2
    f2, g2 = ExactMatrix.from_rows([[1], [0]]), ExactMatrix.from_rows([[0], [1]])
    t = tangent_matrix((f2, g2), "pencil")
    assert t.shape == (4, 5)
    assert sympy_rank(to_sympy(t)) == 4
    assert deform_pencil(PencilStructure(right=(2,))).param_count == 0


def test_tangent_matches_kronecker_oracle():
    rng = random.Random(1)
    for _ in range(4):
        s = random_segre(rng, max_n=5)
        a = build_weyr(s)[0]
        assert to_sympy(tangent_matrix(a, "similarity")) == kron_tangent("similarity", a)
    for _ in range(3):
        tp = deform_pencil(random_pencil(rng, max_dim=4))
        pair = (tp.first.base, tp.second.base)
        assert to_sympy(tangent_matrix(pair, "pencil")) == kron_tangent("pencil", *pair)
        tc = deform_contragredient(random_contra(rng, max_dim=4))
        pair = (tc.first.base, tc.second.base)
        assert to_sympy(tangent_matrix(pair, "contragredient")) == kron_tangent("contragredient", *pair)


def test_tangent_dimension_errors():
    with pytest.raises(StructureError):
        tangent_matrix(ExactMatrix.zeros(2, 3), "similarity")
    with pytest.raises(StructureError):
        tangent_matrix((ExactMatrix.zeros(2, 3), ExactMatrix.zeros(2, 2)), "pencil")
    with pytest.raises(StructureError):
        tangent_matrix((ExactMatrix.zeros(2, 3), ExactMatrix.zeros(2, 3)), "contragredient")
    assert tangent_matrix((ExactMatrix.zeros(1, 1), ExactMatrix.zeros(1, 1)), "pencil_equivalence").shape == (2, 2)


def test_certify_examples():
    r = certify(deform_jordan(SegreStructure.single([5], 1)))
    assert r.versal and r.miniversal and r.param_count == 5
    assert not certify(_template(J2, PatternMatrix.zeros(2, 2))).versal
    r = certify(_template(J2, star_block(2, 2)))
    assert r.versal and not r.miniversal and r.param_count == 4
    assert r.to_json()["codimension"] == 2


def test_certify_ranks_agree_with_sympy():
    rng = random.Random(2)
    for _ in range(3):
        tp = deform_pencil_kronecker(random_pencil(rng, max_dim=4))
        r = certify(tp)
        t = kron_tangent("pencil", tp.first.base, tp.second.base)
        assert r.tangent_rank == sympy_rank(t)


def test_centralizer():
    assert len(centralizer_basis(ExactMatrix.identity(3))) == 9
    basis = centralizer_basis(J2)
    assert len(basis) == 2
    for x in basis:
        assert x @ J2 == J2 @ x
        assert x[1, 0] == 0 and x[0, 0] == x[1, 1]
    w, part = build_weyr(SegreStructure.single([4, 2], 0))
    basis = centralizer_basis(w)
    assert len(basis) == 10
    assert all(is_block_triangular(x, part, CENTRALIZER_ORIENTATION) for x in basis)


def test_orientation_is_derived_not_assumed():
    # J_2(0) + J_1(0): Weyr strips (1,1),(2,1),(1,2); the commutant reaches above the diagonal only
    w, part = build_weyr(SegreStructure.single([2, 1], 0))
    basis = centralizer_basis(w)
    assert all(is_block_triangular(x, part, "upper") for x in basis)
    assert not all(is_block_triangular(x, part, "lower") for x in basis)
    assert CENTRALIZER_ORIENTATION == "upper"


def test_is_block_triangular_examples():
    part = BlockPartition.square([1] * 6)
    oih = deform_weyr(SegreStructure.single([4, 2])).pattern
    assert is_block_triangular(oih, part, "lower")
    assert not is_block_triangular(oih, part, "upper")
    assert is_block_triangular(PatternMatrix.zeros(3, 3), BlockPartition.square([2, 1]), "upper")
    with pytest.raises(StructureError):
        is_block_triangular(oih, BlockPartition.square([2, 2]), "lower")
    # mixed block is neither zero nor all-star
    assert not is_block_triangular(PatternMatrix.from_strings(["*.", ".."]), BlockPartition.square([2]), "lower")


@pytest.mark.parametrize(
    "s, expected",
    [
        (SegreStructure.single([6]), 6),
        (SegreStructure.single([4, 2]), 10),
        (SegreStructure.of((0, [1]), (1, [1])), 2),
    ],
)
def test_codim_formula(s, expected):
    assert codim_similarity_formula(s) == expected
    n = s.size
    assert n * n - sympy_rank(kron_tangent("similarity", build_jordan(s))) == expected


def test_tightness_small():
    t = deform_weyr(SegreStructure.of((0, [3, 1]), ("i", [2])))
    assert certify(t).miniversal
    assert not any(is_versal_without(t, k) for k in range(t.param_count))


def test_pair_tightness_small():
    tp = deform_contragredient(ContraStructure(left=(2,), ab_zero=(1,), right=(2,)))
    assert certify(tp).miniversal
    assert not any(is_versal_without(tp, k) for k in range(tp.param_count))


def test_linear_params_simple():
    t = deform_jordan(SegreStructure.single([2]))
    e = ExactMatrix.from_rows([[0, 0], ["1/3", 0]])
    assert linear_params(t, e) == [Fraction(1, 3), 0]
    # a tangent direction produces no parameters
    x = ExactMatrix.from_rows([[1, 2], [3, 4]])
    assert all(v == 0 for v in linear_params(t, t.base @ x - x @ t.base))


def test_linear_params_not_versal():
    with pytest.raises(ValueError):
        linear_params(_template(J2, PatternMatrix.zeros(2, 2)), ExactMatrix.from_rows([[0, 0], [1, 0]]))


def test_pair_kinds():
    tp = deform_pencil(PencilStructure(left=(2,), regular=SegreStructure.single([1], 1)))
    assert certify(tp, "pencil").miniversal
    assert isinstance(tp, TemplatePair)
