"""Independent oracles shared by the test modules.

None of these reuse the package's elimination code: ranks go through sympy,
tangent maps are rebuilt from Kronecker products, partitions are conjugated
naively.
"""

from __future__ import annotations

import itertools
import random

import pytest
import sympy
from hypothesis import strategies as st

from miniversal.exact import ExactMatrix


def to_sympy(m: ExactMatrix) -> sympy.Matrix:
    return sympy.Matrix(
        m.rows, m.cols, lambda i, j: sympy.Rational(m[i, j].re) + sympy.I * sympy.Rational(m[i, j].im)
    )


def sympy_rank(m: sympy.Matrix) -> int:
    if 0 in m.shape:
        return 0
    return m.rank(simplify=True)


def kron_tangent(kind: str, a: ExactMatrix, b: ExactMatrix | None = None) -> sympy.Matrix:
    """Tangent map by the identity vec(XYZ) = (Z^T kron X) vec(Y)."""
    A = to_sympy(a)
    eye = sympy.eye
    kp = sympy.kronecker_product
    if kind == "similarity":
        n = a.rows
        return kp(eye(n), A) - kp(A.T, eye(n))
    B = to_sympy(b)
    m, n = a.shape
    if kind == "pencil":
        top = sympy.Matrix.hstack(-kp(A.T, eye(m)), kp(eye(n), A))
        bot = sympy.Matrix.hstack(-kp(B.T, eye(m)), kp(eye(n), B))
    else:
        top = sympy.Matrix.hstack(-kp(A.T, eye(m)), kp(eye(n), A))
        bot = sympy.Matrix.hstack(kp(eye(m), B), -kp(B.T, eye(n)))
    return sympy.Matrix.vstack(top, bot)


def conjugate_partition(sizes: list[int]) -> list[int]:
    return [sum(1 for s in sizes if s >= i) for i in range(1, max(sizes) + 1)]


def brute_force_conjugators(j: ExactMatrix, w: ExactMatrix) -> list[tuple[int, ...]]:
    """All ``image`` tuples with ``P^T J P = W`` for the 0/1 matrix ``P[k, image[k]] = 1``."""
    n = j.rows
    out = []
    for image in itertools.permutations(range(n)):
        order = [0] * n
        for k, v in enumerate(image):
            order[v] = k
        if all(j[order[r], order[c]] == w[r, c] for r in range(n) for c in range(n)):
            out.append(image)
    return out


@pytest.fixture
def rng() -> random.Random:
    return random.Random(12345)


partitions = st.lists(st.integers(1, 6), min_size=1, max_size=5).map(lambda xs: sorted(xs, reverse=True))


# acceptance summary: test_acceptance records one line per criterion
ACCEPTANCE: dict[int, str] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(ACCEPTANCE[criterion])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
