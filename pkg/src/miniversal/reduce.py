"""Numeric reduction of a perturbed canonical matrix to its deformation normal form.

Given a miniversal template ``A + B(alpha)`` and a small ``E`` we look for
``S`` near the identity with ``S^-1 (A + E) S = A + B(h)``.  Each step
solves the linearized equation

    A Y - Y A - B(pi) = A - M_k,        M_k = S_k^-1 (A + E) S_k,

for ``Y`` in a fixed complement of the centralizer and ``pi`` in the star
coordinates, then sets ``S_{k+1} = S_k (I + Y)``.  The coefficient matrix
is the exact augmented tangent matrix restricted to pivot columns, which is
square and nonsingular exactly when the template is miniversal; it is
converted to floating point and LU-factorized once.

Pairs (pencil and contragredient) go through the same iteration with two
transforms.  That path is experimental.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
import scipy.linalg as sla

from .deformations.base import Template, TemplatePair
from .exact import pivot_columns
from .verify import certify, star_coordinates, tangent_rows


class NoConvergence(RuntimeError):
    """The iteration did not reach tolerance; ``result`` holds the best iterate."""

    def __init__(self, message: str, result: "ReductionResult") -> None:
        super().__init__(message)
        self.result = result


class SingularTransform(RuntimeError):
    """The accumulated transform became too ill-conditioned."""


@dataclass(frozen=True)
class ReduceOptions:
    tol: float = 1e-10
    max_iter: int = 50
    cond_cap: float = 1e8
    stall: int = 5


@dataclass
class ReductionResult:
    transform: np.ndarray
    params: np.ndarray
    residual: float
    iterations: int
    transform_right: Optional[np.ndarray] = field(default=None)

    def to_json(self) -> dict:
        out = {
            "transform": _cjson(self.transform),
            "params": [[float(z.real), float(z.imag)] for z in self.params],
            "residual": self.residual,
            "iterations": self.iterations,
        }
        if self.transform_right is not None:
            out["transform_right"] = _cjson(self.transform_right)
        return out


def _cjson(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _vec(m: np.ndarray) -> np.ndarray:
    return m.reshape(-1, order="F")


class _System:
    """Float LU of ``[T[:, pivots] | -E_stars]`` for one template."""

    def __init__(self, obj: Union[Template, TemplatePair]) -> None:
        if isinstance(obj, Template):
            self.kind = "similarity"
            bases = (obj.base,)
            patterns = [obj.pattern]
            rows, ndom = tangent_rows(obj.base, "similarity")
        else:
            self.kind = obj.kind
            bases = (obj.first.base, obj.second.base)
            patterns = [obj.first.pattern, obj.second.pattern]
            rows, ndom = tangent_rows(bases, obj.kind)
        report = certify(obj)
        if not report.miniversal:
            raise ValueError(f"template is not miniversal: {report}")
        self.bases = [b.to_complex() for b in bases]
        self.patterns = patterns
        self.ndom = ndom
        self.total = len(rows)
        self.coords = star_coordinates(patterns)
        self.pivots = pivot_columns(rows)
        size = len(self.pivots) + len(self.coords)
        if size != self.total:
            raise ValueError("augmented tangent system is not square")
        mat = np.zeros((self.total, size), dtype=complex)
        col_of = {c: k for k, c in enumerate(self.pivots)}
        for i, row in enumerate(rows):
            for c, v in row.items():
                k = col_of.get(c)
                if k is not None:
                    mat[i, k] = complex(v)
        for k, c in enumerate(self.coords):
            mat[c, len(self.pivots) + k] = -1.0
        self.matrix = mat
        self.lu = sla.lu_factor(mat, check_finite=True)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        z = sla.lu_solve(self.lu, rhs)
        if not np.all(np.isfinite(z)):
            z = np.linalg.lstsq(self.matrix, rhs, rcond=None)[0]
        return z

    def defect(self, current: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray, float]:
        """Stacked ``vec(M - A)``, the star values, and the off-pattern max-norm."""
        d = np.concatenate([_vec(m - a) for m, a in zip(current, self.bases)])
        params = d[self.coords]
        off = d.copy()
        off[self.coords] = 0
        return d, params, float(np.max(np.abs(off), initial=0.0))


def _act(kind: str, mats: list[np.ndarray], s: np.ndarray, r: Optional[np.ndarray]) -> list[np.ndarray]:
    if kind == "similarity":
        return [np.linalg.solve(s, mats[0] @ s)]
    if kind == "pencil":
        return [np.linalg.solve(s, m @ r) for m in mats]
    return [np.linalg.solve(s, mats[0] @ r), np.linalg.solve(r, mats[1] @ s)]


def reduce(
    obj: Union[Template, TemplatePair],
    perturbation: Union[np.ndarray, tuple[np.ndarray, np.ndarray]],
    opts: ReduceOptions = ReduceOptions(),
) -> ReductionResult:
    """Reduce ``base + perturbation`` to ``base + pattern(params)``; raises on failure."""
    sys = _System(obj)
    if sys.kind == "similarity":
        perts = [np.asarray(perturbation, dtype=complex)]
    else:
        perts = [np.asarray(p, dtype=complex) for p in perturbation]
    for p, a in zip(perts, sys.bases):
        if p.shape != a.shape:
            raise ValueError(f"perturbation shape {p.shape} does not match {a.shape}")
        if not np.all(np.isfinite(p)):
            raise ValueError("perturbation has non-finite entries")
    perturbed = [a + p for a, p in zip(sys.bases, perts)]

    m_dim = sys.bases[0].shape[0]
    n_dim = sys.bases[0].shape[1]
    s = np.eye(m_dim, dtype=complex)
    r = None if sys.kind == "similarity" else np.eye(n_dim, dtype=complex)
    best: Optional[ReductionResult] = None
    since_best = 0

    for it in range(opts.max_iter + 1):
        current = _act(sys.kind, perturbed, s, r) if it else perturbed
        d, params, residual = sys.defect(current)
        result = ReductionResult(s.copy(), params.copy(), residual, it, None if r is None else r.copy())
        if best is None or residual < best.residual:
            best, since_best = result, 0
        else:
            since_best += 1
        if residual <= opts.tol:
            return result
        if it == opts.max_iter or since_best >= opts.stall:
            break
        z = sys.solve(-d)
        y = np.zeros(sys.ndom, dtype=complex)
        y[sys.pivots] = z[: len(sys.pivots)]
        if sys.kind == "similarity":
            s = s @ (np.eye(m_dim) + y.reshape((m_dim, m_dim), order="F"))
        else:
            ys = y[: m_dim * m_dim].reshape((m_dim, m_dim), order="F")
            yr = y[m_dim * m_dim :].reshape((n_dim, n_dim), order="F")
            s = s @ (np.eye(m_dim) + ys)
            r = r @ (np.eye(n_dim) + yr)
        for t in (s, r):
            if t is not None and np.linalg.cond(t) > opts.cond_cap:
                raise SingularTransform(f"transform condition number exceeds {opts.cond_cap:g} at iteration {it + 1}")
    raise NoConvergence(f"residual {best.residual:.3e} above tolerance {opts.tol:g}", best)


def reduce_similarity(template: Template, perturbation: np.ndarray, opts: ReduceOptions = ReduceOptions()) -> ReductionResult:
    if not isinstance(template, Template):
        raise TypeError("reduce_similarity takes a single square template")
    return reduce(template, perturbation, opts)


def reconstruct(template: Template, params: np.ndarray) -> np.ndarray:
    """``base + pattern(params)`` as a complex array."""
    out = template.base.to_complex()
    for (i, j), v in zip(template.pattern.stars(), params):
        out[i, j] += v
    return out
