"""Exact complex-rational scalars, dense exact matrices and sparse elimination.

Everything here is exact: scalars are Gaussian rationals ``re + im*i`` with
``fractions.Fraction`` parts, and ranks/nullspaces come from plain rational
Gaussian elimination on sparse rows.  When every entry of a system is real
the elimination runs on bare ``Fraction`` values, which is several times
faster than going through :class:`ExactScalar`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction, "ExactScalar"]

_SCALAR_RE = re.compile(
    r"""^\s*
    (?P<re>[+-]?\d+(?:/\d+)?)?      # real part
    (?:(?P<sign>[+-])(?P<im>\d+(?:/\d+)?)?i)?   # imaginary part with sign
    \s*$""",
    re.VERBOSE,
)
_PURE_IM_RE = re.compile(r"^\s*(?P<sign>[+-]?)(?P<im>\d+(?:/\d+)?)?i\s*$")


@dataclass(frozen=True)
class ExactScalar:
    """Gaussian rational ``re + im*i``."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, x: Number | str) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        if isinstance(x, float):
            raise TypeError("floating values are not exact; pass a Fraction or 'p/q' string")
        return cls(Fraction(x))

    @classmethod
    def parse(cls, text: str) -> "ExactScalar":
        """Parse ``"p/q"``, ``"p/q+p/qi"``, ``"-p/qi"``, ``"i"`` and friends."""
        m = _PURE_IM_RE.match(text)
        if m:
            im = Fraction(m.group("im")) if m.group("im") else Fraction(1)
            return cls(0, -im if m.group("sign") == "-" else im)
        m = _SCALAR_RE.match(text)
        if not m or (m.group("re") is None and m.group("sign") is None):
            raise ValueError(f"cannot parse exact scalar {text!r}")
        re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
        im_part = Fraction(0)
        if m.group("sign"):
            im_part = Fraction(m.group("im")) if m.group("im") else Fraction(1)
            if m.group("sign") == "-":
                im_part = -im_part
        return cls(re_part, im_part)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        im = "" if abs(self.im) == 1 else str(abs(self.im))
        sign = "-" if self.im < 0 else "+"
        if self.re == 0:
            return f"{'-' if self.im < 0 else ''}{im}i"
        return f"{self.re}{sign}{im}i"

    def __repr__(self) -> str:
        return f"ExactScalar({str(self)!r})"

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExactScalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.re, -self.im)

    def __add__(self, other: Number) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            return ExactScalar(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return ExactScalar(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: Number) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            return ExactScalar(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return ExactScalar(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other: Number) -> "ExactScalar":
        return (-self) + other

    def __mul__(self, other: Number) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            return ExactScalar(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return ExactScalar(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "ExactScalar":
        if isinstance(other, (int, Fraction)):
            return ExactScalar(self.re / other, self.im / other)
        if isinstance(other, ExactScalar):
            d = other.re * other.re + other.im * other.im
            if d == 0:
                raise ZeroDivisionError("division by exact zero")
            return ExactScalar(
                (self.re * other.re + self.im * other.im) / d,
                (self.im * other.re - self.re * other.im) / d,
            )
        return NotImplemented

    def __rtruediv__(self, other: Number) -> "ExactScalar":
        return ExactScalar.coerce(other) / self

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


ZERO = ExactScalar(0)
ONE = ExactScalar(1)


def _plain(x: ExactScalar) -> Fraction | ExactScalar:
    return x.re if x.im == 0 else x


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix over Gaussian rationals.  Zero rows or columns are allowed."""

    rows: int
    cols: int
    entries: tuple[tuple[ExactScalar, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[Number | str]], cols: int | None = None) -> "ExactMatrix":
        rows = tuple(tuple(ExactScalar.coerce(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int, scale: Number = 1) -> "ExactMatrix":
        s = ExactScalar.coerce(scale)
        return cls(n, n, tuple(tuple(s if i == j else ZERO for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx: tuple[int, int]) -> ExactScalar:
        i, j = idx
        return self.entries[i][j]

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        return ExactMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        return ExactMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def scale(self, c: Number) -> "ExactMatrix":
        c = ExactScalar.coerce(c)
        return ExactMatrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.entries))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols_t = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for r in self.entries:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in cols_t:
                acc = ZERO
                for k, a in nz:
                    b = c[k]
                    if b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return ExactMatrix(self.rows, other.cols, tuple(out))

    def transpose(self) -> "ExactMatrix":
        if self.rows == 0:
            return ExactMatrix.zeros(self.cols, 0)
        return ExactMatrix(self.cols, self.rows, tuple(zip(*self.entries)))

    T = property(transpose)

    def power(self, k: int) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        out = ExactMatrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(len(rows), len(cols), tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def is_zero(self) -> bool:
        return not any(a for r in self.entries for a in r)

    def to_strings(self) -> list[list[str]]:
        return [[str(a) for a in r] for r in self.entries]

    def to_complex(self):
        import numpy as np

        out = np.zeros((self.rows, self.cols), dtype=complex)
        for i, r in enumerate(self.entries):
            for j, a in enumerate(r):
                if a:
                    out[i, j] = complex(a)
        return out

    def sparse_rows(self) -> list[dict[int, Fraction | ExactScalar]]:
        return [{j: _plain(a) for j, a in enumerate(r) if a} for r in self.entries]

    def _check_same(self, other: "ExactMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")


def block_diag(*blocks: ExactMatrix) -> ExactMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    grid = [[ZERO] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.entries):
            grid[r0 + i][c0 : c0 + b.cols] = row
        r0 += b.rows
        c0 += b.cols
    return ExactMatrix(rows, cols, tuple(tuple(r) for r in grid))


# --------------------------------------------------------------------------
# Sparse elimination.  A sparse matrix is a list of rows, each a dict
# ``{column: nonzero value}``; values are Fraction or ExactScalar.

SparseRow = dict


def _normalize_values(rows: Iterable[SparseRow]) -> list[SparseRow]:
    out = []
    for row in rows:
        new = {}
        for c, v in row.items():
            if isinstance(v, ExactScalar):
                v = _plain(v)
            elif isinstance(v, int):
                v = Fraction(v)
            if v:
                new[c] = v
        out.append(new)
    return out


def _reduce(row: SparseRow, pivots: dict[int, SparseRow]) -> SparseRow:
    """Eliminate pivot columns from ``row`` in increasing column order.

    Each stored pivot row has its pivot column as its smallest column with
    leading coefficient one, so elimination only creates entries to the right.
    """
    row = dict(row)
    while row:
        done = True
        for c in sorted(row):
            p = pivots.get(c)
            if p is None:
                continue
            f = row[c]
            for k, v in p.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            done = False
            break
        if done:
            break
    return row


class Echelon:
    """Incremental row echelon basis over Q or Q(i)."""

    def __init__(self) -> None:
        self.pivots: dict[int, SparseRow] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: SparseRow) -> bool:
        """Insert a row; return True if it enlarged the row space."""
        r = _reduce(row, self.pivots)
        if not r:
            return False
        c = min(r)
        lead = r[c]
        self.pivots[c] = {k: v / lead for k, v in r.items()}
        return True


def sparse_rank(rows: Iterable[SparseRow]) -> int:
    ech = Echelon()
    for row in _normalize_values(rows):
        if row:
            ech.add(row)
    return ech.rank


def rank(m: ExactMatrix) -> int:
    return sparse_rank(m.sparse_rows())


def _rref(rows: list[SparseRow]) -> dict[int, SparseRow]:
    ech = Echelon()
    for row in rows:
        if row:
            ech.add(row)
    piv = ech.pivots
    # back substitution: clear each pivot column from every other pivot row
    for c in sorted(piv, reverse=True):
        prow = piv[c]
        for c2, row in piv.items():
            if c2 == c or c not in row:
                continue
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return piv


def sparse_nullspace(rows: Iterable[SparseRow], ncols: int) -> list[SparseRow]:
    """Basis of ``{x : M x = 0}``, one vector per free column, in column order."""
    piv = _rref(_normalize_values(rows))
    basis = []
    for free in range(ncols):
        if free in piv:
            continue
        vec: SparseRow = {free: Fraction(1)}
        for c, row in piv.items():
            v = row.get(free)
            if v:
                vec[c] = -v
        basis.append(vec)
    return basis


def sparse_solve(rows: Sequence[SparseRow], rhs: Sequence[Number], ncols: int) -> SparseRow | None:
    """One exact solution of ``M x = b`` (free variables set to zero), or None."""
    aug = []
    for row, b in zip(_normalize_values(rows), _normalize_values([{0: x} for x in rhs])):
        r = dict(row)
        if b:
            r[ncols] = b[0]
        aug.append(r)
    piv = _rref(aug)
    if ncols in piv:
        return None
    return {c: row[ncols] for c, row in piv.items() if ncols in row}


def pivot_columns(rows: Iterable[SparseRow]) -> list[int]:
    """Columns that carry pivots in a row echelon form; they index a column basis."""
    ech = Echelon()
    for row in _normalize_values(rows):
        if row:
            ech.add(row)
    return sorted(ech.pivots)


def transpose_sparse(rows: Sequence[SparseRow], ncols: int) -> list[SparseRow]:
    out: list[SparseRow] = [{} for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, v in row.items():
            out[j][i] = v
    return out
