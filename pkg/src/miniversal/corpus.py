"""Seeded random structures for property tests and ``certify --fuzz``."""

from __future__ import annotations

import random
from fractions import Fraction

from .deformations.base import ContraStructure, PencilStructure
from .exact import ExactScalar
from .structures import EigenBlock, SegreStructure

_PARTS = [Fraction(k, d) for k in range(-3, 4) for d in (1, 2)]


def _partition(rng: random.Random, n: int, max_part: int | None = None) -> list[int]:
    out, rest = [], n
    while rest:
        k = rng.randint(1, min(rest, max_part or rest))
        out.append(k)
        rest -= k
    return sorted(out, reverse=True)


def _eigenvalues(rng: random.Random, k: int, nonzero: bool = False) -> list[ExactScalar]:
    seen: list[ExactScalar] = []
    while len(seen) < k:
        im = rng.choice(_PARTS) if rng.random() < 0.3 else Fraction(0)
        v = ExactScalar(rng.choice(_PARTS), im)
        if v not in seen and not (nonzero and not v):
            seen.append(v)
    return seen


def random_segre(rng: random.Random, max_n: int = 12, max_eigenvalues: int = 3, n: int | None = None, nonzero: bool = False) -> SegreStructure:
    n = rng.randint(1, max_n) if n is None else n
    if n == 0:
        return SegreStructure(())
    k = rng.randint(1, min(max_eigenvalues, n))
    cuts = sorted(rng.sample(range(1, n), k - 1))
    parts = [b - a for a, b in zip([0, *cuts], [*cuts, n])]
    values = _eigenvalues(rng, k, nonzero)
    return SegreStructure(tuple(EigenBlock(v, tuple(_partition(rng, p))) for v, p in zip(values, parts)))


def random_pencil(rng: random.Random, max_dim: int = 10) -> PencilStructure:
    """Kronecker data with ``m, n <= max_dim`` and at least one summand."""
    while True:
        left = sorted(rng.randint(1, 4) for _ in range(rng.randint(0, 2)))
        right = sorted((rng.randint(1, 4) for _ in range(rng.randint(0, 2))), reverse=True)
        budget = max_dim - max(sum(p - 1 for p in left) + sum(right), sum(left) + sum(q - 1 for q in right))
        if budget < 0:
            continue
        n_reg = rng.randint(0, min(budget, 5))
        n_inf = rng.randint(0, min(budget - n_reg, 4))
        regular = random_segre(rng, n=n_reg)
        infinite = tuple(_partition(rng, n_inf))
        ps = PencilStructure(tuple(left), tuple(right), regular, infinite)
        if ps.shape != (0, 0):
            return ps


def random_contra(rng: random.Random, max_dim: int = 10) -> ContraStructure:
    """Contragredient data with ``m, n <= max_dim`` and at least one summand."""
    while True:
        left = sorted((rng.randint(1, 4) for _ in range(rng.randint(0, 2))), reverse=True)
        right = sorted(rng.randint(1, 4) for _ in range(rng.randint(0, 2)))
        budget = max_dim - max(sum(left) + sum(q - 1 for q in right), sum(p - 1 for p in left) + sum(right))
        if budget < 0:
            continue
        n_reg = rng.randint(0, min(budget, 4))
        n_ab = rng.randint(0, min(budget - n_reg, 3))
        n_ba = rng.randint(0, min(budget - n_reg - n_ab, 3))
        cs = ContraStructure(
            random_segre(rng, n=n_reg, nonzero=True),
            tuple(left),
            tuple(_partition(rng, n_ab)),
            tuple(_partition(rng, n_ba)),
            tuple(right),
        )
        if cs.shape != (0, 0):
            return cs
