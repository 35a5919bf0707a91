from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Literal, Sequence

from ..exact import ExactMatrix
from ..patterns import PatternMatrix
from ..structures import BlockPartition, SegreStructure, StructureError

PairKind = Literal["pencil", "contragredient"]


@dataclass(frozen=True)
class Template:
    """Simple deformation ``base + pattern(alpha)`` with a block partition."""

    base: ExactMatrix
    pattern: PatternMatrix
    partition: BlockPartition

    def __post_init__(self) -> None:
        if self.base.shape != self.pattern.shape:
            raise StructureError(f"base {self.base.shape} and pattern {self.pattern.shape} differ in shape")
        if self.partition.shape != self.base.shape:
            raise StructureError(f"partition {self.partition.shape} does not cover {self.base.shape}")

    def overlaps(self) -> list[tuple[int, int]]:
        """Star positions whose base entry is nonzero (eigenvalue entries of regular blocks)."""
        return [(i, j) for i, j in self.pattern.stars() if self.base[i, j]]

    @property
    def shape(self) -> tuple[int, int]:
        return self.base.shape

    @property
    def param_count(self) -> int:
        return self.pattern.param_count


@dataclass(frozen=True)
class TemplatePair:
    """Pair of templates deformed together; parameters are numbered first then second."""

    first: Template
    second: Template
    kind: PairKind = "pencil"

    def __post_init__(self) -> None:
        a, b = self.first.shape, self.second.shape
        if self.kind == "pencil" and a != b:
            raise StructureError(f"pencil matrices must share a shape, got {a} and {b}")
        if self.kind == "contragredient" and a != (b[1], b[0]):
            raise StructureError(f"contragredient pair needs m x n and n x m, got {a} and {b}")

    @property
    def param_count(self) -> int:
        return self.first.param_count + self.second.param_count

    @property
    def shape(self) -> tuple[int, int]:
        return self.first.shape


def _check_positive(name: str, xs: Sequence[int]) -> None:
    if any(x < 1 for x in xs):
        raise StructureError(f"{name} must all be >= 1, got {list(xs)}")


def _is_sorted(xs: Sequence[int], descending: bool) -> bool:
    return list(xs) == sorted(xs, reverse=descending)


@dataclass(frozen=True)
class PencilStructure:
    """Kronecker data: ``(F_p^T, G_p^T)`` indices ``left``, ``(F_q, G_q)`` indices ``right``,
    finite eigenvalues for ``(I, J)`` and nilpotent sizes for ``(J(0), I)``."""

    left: tuple[int, ...] = ()
    right: tuple[int, ...] = ()
    regular: SegreStructure = field(default_factory=lambda: SegreStructure(()))
    infinite: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for name in ("left", "right", "infinite"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        _check_positive("minimal indices", self.left + self.right)
        _check_positive("infinite Jordan block sizes", self.infinite)
        if not _is_sorted(self.left, descending=False):
            raise StructureError(f"left indices must satisfy p_1 <= ... <= p_l, got {list(self.left)}")
        if not _is_sorted(self.right, descending=True):
            raise StructureError(f"right indices must satisfy q_1 >= ... >= q_r, got {list(self.right)}")
        if not _is_sorted(self.infinite, descending=True):
            raise StructureError(f"infinite Jordan block sizes must be descending, got {list(self.infinite)}")

    @classmethod
    def normalized(cls, left=(), right=(), regular: SegreStructure | None = None, infinite=()) -> "PencilStructure":
        """Sort the index lists into the required order, warning if anything moved."""
        l2, r2, i2 = sorted(left), sorted(right, reverse=True), sorted(infinite, reverse=True)
        if (l2, r2, i2) != (list(left), list(right), list(infinite)):
            warnings.warn("pencil summands reordered to p ascending, q descending", stacklevel=2)
        return cls(tuple(l2), tuple(r2), regular or SegreStructure(()), tuple(i2))

    @property
    def n_regular(self) -> int:
        return self.regular.size

    @property
    def n_infinite(self) -> int:
        return sum(self.infinite)

    @property
    def shape(self) -> tuple[int, int]:
        m = sum(p - 1 for p in self.left) + self.n_regular + self.n_infinite + sum(self.right)
        n = sum(self.left) + self.n_regular + self.n_infinite + sum(q - 1 for q in self.right)
        return (m, n)


@dataclass(frozen=True)
class ContraStructure:
    """Contragredient data: ``(I, J)`` with ``J`` nonsingular, then ``(F_p, G_p^T)``
    indices ``left``, ``(I, J(0))`` sizes ``ab_zero``, ``(J'(0), I)`` sizes ``ba_zero``
    and the ``right`` indices."""

    regular: SegreStructure = field(default_factory=lambda: SegreStructure(()))
    left: tuple[int, ...] = ()
    ab_zero: tuple[int, ...] = ()
    ba_zero: tuple[int, ...] = ()
    right: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for name in ("left", "ab_zero", "ba_zero", "right"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        _check_positive("minimal indices", self.left + self.right)
        _check_positive("nilpotent Jordan block sizes", self.ab_zero + self.ba_zero)
        if any(v == 0 for v in self.regular.values):
            raise StructureError("the regular part must be nonsingular: eigenvalue 0 belongs in ab_zero/ba_zero")
        if not _is_sorted(self.left, descending=True):
            raise StructureError(f"left indices must satisfy p_1 >= ... >= p_l, got {list(self.left)}")
        if not _is_sorted(self.right, descending=False):
            raise StructureError(f"right indices must satisfy q_1 <= ... <= q_r, got {list(self.right)}")
        for name in ("ab_zero", "ba_zero"):
            if not _is_sorted(getattr(self, name), descending=True):
                raise StructureError(f"{name} Jordan block sizes must be descending")

    @classmethod
    def normalized(cls, regular: SegreStructure | None = None, left=(), ab_zero=(), ba_zero=(), right=()) -> "ContraStructure":
        l2, r2 = sorted(left, reverse=True), sorted(right)
        a2, b2 = sorted(ab_zero, reverse=True), sorted(ba_zero, reverse=True)
        if (l2, a2, b2, r2) != (list(left), list(ab_zero), list(ba_zero), list(right)):
            warnings.warn("contragredient summands reordered to p descending, q ascending", stacklevel=2)
        return cls(regular or SegreStructure(()), tuple(l2), tuple(a2), tuple(b2), tuple(r2))

    @property
    def shape(self) -> tuple[int, int]:
        reg = self.regular.size
        m = reg + sum(self.left) + sum(self.ab_zero) + sum(self.ba_zero) + sum(q - 1 for q in self.right)
        n = reg + sum(p - 1 for p in self.left) + sum(self.ab_zero) + sum(self.ba_zero) + sum(self.right)
        return (m, n)
