"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is echoed in the terminal summary.
Corpora are seeded, so every run checks the same cases.
"""

import random
import time
from fractions import Fraction

import numpy as np
import pytest

from miniversal.corpus import random_contra, random_pencil, random_segre
from miniversal.deformations import (
    deform_contragredient,
    deform_pencil,
    deform_pencil_kronecker,
    deform_weyr,
    kronecker_to_weyr_permutations,
    triangularize_contragredient,
)
from miniversal.exact import ExactMatrix, sparse_rank
from miniversal.patterns import PatternMatrix
from miniversal.reduce import NoConvergence, SingularTransform, reconstruct, reduce_similarity
from miniversal.structures import (
    SegreStructure,
    build_jordan,
    build_weyr,
    jordan_to_weyr_permutation,
    permute_rows_cols,
)
from miniversal.verify import (
    CENTRALIZER_ORIENTATION,
    centralizer_basis,
    certify,
    codim_similarity_formula,
    is_block_triangular,
    is_versal_without,
    linear_params,
    tangent_rows,
)

from conftest import record


@pytest.fixture(scope="module")
def segre_corpus():
    rng = random.Random(2024)
    return [random_segre(rng, max_n=12, max_eigenvalues=3) for _ in range(200)]


def test_criterion_1_worked_example():
    # base: strips (1,1),(2,1),(1,2),(2,2),(1,3),(1,4) with I links (i,j) -> (i,j+1)
    lam = "5/3"
    ones = {(0, 2), (1, 3), (2, 4), (4, 5)}
    expected_base = ExactMatrix.from_rows(
        [[lam if i == j else (1 if (i, j) in ones else 0) for j in range(6)] for i in range(6)]
    )
    expected_pattern = PatternMatrix.from_strings(["......", "*.....", "......", "**.*..", "......", "******"])
    t0 = time.perf_counter()
    t = deform_weyr(SegreStructure.single([4, 2], lam))
    elapsed = time.perf_counter() - t0
    ok = (
        t.base == expected_base
        and t.pattern == expected_pattern
        and t.param_count == 10
        and all(not any(t.pattern.mask[r]) for r in (0, 2, 4))
        and all(t.pattern.mask[5])
        and elapsed < 0.1
    )
    record(1, ok, f"[4,2] Weyr base and pattern exact, 10 stars, built in {elapsed * 1e3:.2f} ms")
    assert ok


def test_criterion_2_weyr_triangularity(segre_corpus):
    failures = 0
    for s in segre_corpus:
        a, b = deform_weyr(s, "permute"), deform_weyr(s, "direct")
        if not (is_block_triangular(a.pattern, a.partition, "lower") and a.pattern == b.pattern):
            failures += 1
    record(2, failures == 0, f"{len(segre_corpus)} structures, {failures} failures (lower triangular, permute == direct)")
    assert failures == 0


def test_criterion_3_similarity_miniversal(segre_corpus):
    t0 = time.perf_counter()
    failures = 0
    for s in segre_corpus:
        r = certify(deform_weyr(s))
        n = s.size
        rows, _ = tangent_rows(build_jordan(s), "similarity")
        jordan_codim = n * n - sparse_rank(rows)
        if not (r.miniversal and r.param_count == codim_similarity_formula(s) == r.codimension == jordan_codim):
            failures += 1
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 30
    record(3, ok, f"{len(segre_corpus)} structures, {failures} failures, {elapsed:.2f} s")
    assert ok


def test_criterion_4_pencil():
    rng = random.Random(7)
    failures = 0
    for _ in range(100):
        ps = random_pencil(rng, max_dim=10)
        w, k = deform_pencil(ps), deform_pencil_kronecker(ps)
        rw, rk = certify(w), certify(k)
        rp, cp = kronecker_to_weyr_permutations(ps)
        equivalent = all(
            a.pattern.permuted(rp, cp) == b.pattern and permute_rows_cols(a.base, rp, cp) == b.base
            for a, b in ((k.first, w.first), (k.second, w.second))
        )
        if not (rw.miniversal and rk.miniversal and w.param_count == k.param_count and equivalent):
            failures += 1
    record(4, failures == 0, f"100 pencils, {failures} failures (both orderings miniversal, supports permutation equivalent)")
    assert failures == 0


def test_criterion_5_contragredient():
    rng = random.Random(8)
    failures = 0
    for _ in range(100):
        cs = random_contra(rng, max_dim=10)
        tp = deform_contragredient(cs)
        tri, _, _ = triangularize_contragredient(tp, cs)
        ok = (
            certify(tp).miniversal
            and certify(tri).miniversal
            and tri.param_count == tp.param_count
            and is_block_triangular(tri.first.pattern, tri.first.partition, "upper")
            and is_block_triangular(tri.second.pattern, tri.second.partition, "lower")
        )
        failures += not ok
    record(5, failures == 0, f"100 contragredient pairs, {failures} failures (miniversal, count kept, first upper / second lower)")
    assert failures == 0


def test_criterion_6_tightness():
    rng = random.Random(6)
    templates = []
    while len(templates) < 50:
        kind = len(templates) % 3
        obj = (
            deform_weyr(random_segre(rng))
            if kind == 0
            else deform_pencil(random_pencil(rng))
            if kind == 1
            else deform_contragredient(random_contra(rng))
        )
        if obj.param_count and certify(obj).miniversal:
            templates.append(obj)
    false_passes = checked = 0
    for obj in templates:
        ids = rng.sample(range(obj.param_count), min(10, obj.param_count))
        for k in ids:
            checked += 1
            false_passes += is_versal_without(obj, k)
    record(6, false_passes == 0, f"50 templates, {checked} star deletions, {false_passes} still versal")
    assert false_passes == 0


def test_criterion_7_belitskii():
    rng = random.Random(77)
    failures = 0
    for _ in range(50):
        w, part = build_weyr(random_segre(rng))
        basis = centralizer_basis(w)
        failures += not all(is_block_triangular(x, part, CENTRALIZER_ORIENTATION) for x in basis)
    record(7, failures == 0, f"50 Weyr matrices, {failures} failures (commutant {CENTRALIZER_ORIENTATION} block triangular)")
    assert failures == 0


def test_criterion_8_conjugation(segre_corpus):
    failures = 0
    for s in segre_corpus:
        p = jordan_to_weyr_permutation(s).matrix()
        failures += p.transpose() @ build_jordan(s) @ p != build_weyr(s)[0]
    record(8, failures == 0, f"{len(segre_corpus)} structures, {failures} failures (P^T J P = J#)")
    assert failures == 0


def test_criterion_9_reducer():
    rng = random.Random(99)
    nrng = np.random.default_rng(99)
    cases = []
    while len(cases) < 50:
        s = random_segre(rng, max_n=8)
        t = deform_weyr(s)
        n = s.size
        e = nrng.standard_normal((n, n)) + 1j * nrng.standard_normal((n, n))
        cases.append((t, e * (1e-3 / np.abs(e).max())))

    converged = 0
    worst_iter = 0
    for t, e in cases:
        try:
            res = reduce_similarity(t, e)
        except (NoConvergence, SingularTransform):
            continue
        m = np.linalg.solve(res.transform, (t.base.to_complex() + e) @ res.transform)
        recomputed = np.abs(m - reconstruct(t, res.params)).max()
        if recomputed <= 1e-10 and res.iterations <= 25:
            converged += 1
            worst_iter = max(worst_iter, res.iterations)
    rate = converged / len(cases)

    zero_ok = True
    for t, _ in cases:
        n = t.shape[0]
        res = reduce_similarity(t, np.zeros((n, n)))
        zero_ok &= (
            np.array_equal(res.transform, np.eye(n))
            and not res.params.any()
            and res.residual == 0.0
            and res.iterations == 0
        )

    first_order = []
    for t, _ in cases[:5]:
        n = t.shape[0]
        e0 = nrng.standard_normal((n, n))
        pi = np.array([complex(z) for z in linear_params(t, ExactMatrix.from_rows([[Fraction(float(x)) for x in r] for r in e0]))])
        scale = max(np.abs(pi).max(), 1e-300)
        errs = []
        for k in range(6):
            tt = 1e-4 * 10.0 ** (-k / 2)
            errs.append(np.abs(reduce_similarity(t, tt * e0).params / tt - pi).max() / scale)
        first_order.append(errs[-1])
    fo_ok = max(first_order) <= 1e-4

    ok = rate >= 0.95 and zero_ok and fo_ok
    record(
        9,
        ok,
        f"{converged}/50 converged (max {worst_iter} iterations), zero input exact: {zero_ok}, "
        f"first-order rel. error {max(first_order):.2e}",
    )
    assert ok
