"""JSON and ASCII serialization.  Field names are listed in docs/schema.md."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Union

import numpy as np

from .deformations.base import ContraStructure, PencilStructure, Template, TemplatePair
from .exact import ExactMatrix, ExactScalar
from .patterns import PatternMatrix, render_grid
from .structures import BlockPartition, EigenBlock, Permutation, SegreStructure, StructureError


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_frac(x: Any, what: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise StructureError(f"{what} must be an exact rational (integer or 'p/q' string), got {x!r}")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise StructureError(f"{what}: cannot read {x!r} as a rational") from exc


def _require(d: Any, what: str) -> dict:
    if not isinstance(d, dict):
        raise StructureError(f"{what} must be a JSON object")
    return d


def _int_list(xs: Any, what: str) -> tuple[int, ...]:
    if not isinstance(xs, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in xs):
        raise StructureError(f"{what} must be a list of integers")
    return tuple(xs)


# Structures --------------------------------------------------------------


def segre_to_json(s: SegreStructure) -> dict:
    return {
        "eigenvalues": [
            {"re": _frac(eb.value.re), "im": _frac(eb.value.im), "sizes": list(eb.sizes)} for eb in s.eigenvalues
        ]
    }


def segre_from_json(d: Any) -> SegreStructure:
    d = _require(d, "segre structure")
    evs = d.get("eigenvalues")
    if not isinstance(evs, list):
        raise StructureError("segre structure needs an 'eigenvalues' list")
    blocks = []
    for k, e in enumerate(evs):
        e = _require(e, f"eigenvalues[{k}]")
        value = ExactScalar(_parse_frac(e.get("re", "0"), f"eigenvalues[{k}].re"), _parse_frac(e.get("im", "0"), f"eigenvalues[{k}].im"))
        blocks.append(EigenBlock(value, _int_list(e.get("sizes"), f"eigenvalues[{k}].sizes")))
    return SegreStructure(tuple(blocks))


def pencil_to_json(ps: PencilStructure) -> dict:
    return {"left": list(ps.left), "right": list(ps.right), "regular": segre_to_json(ps.regular), "infinite": list(ps.infinite)}


def pencil_from_json(d: Any) -> PencilStructure:
    d = _require(d, "pencil structure")
    regular = segre_from_json(d["regular"]) if "regular" in d else SegreStructure(())
    return PencilStructure(
        _int_list(d.get("left", []), "left"),
        _int_list(d.get("right", []), "right"),
        regular,
        _int_list(d.get("infinite", []), "infinite"),
    )


def contra_to_json(cs: ContraStructure) -> dict:
    return {
        "regular": segre_to_json(cs.regular),
        "left": list(cs.left),
        "ab_zero": list(cs.ab_zero),
        "ba_zero": list(cs.ba_zero),
        "right": list(cs.right),
    }


def contra_from_json(d: Any) -> ContraStructure:
    d = _require(d, "contragredient structure")
    regular = segre_from_json(d["regular"]) if "regular" in d else SegreStructure(())
    return ContraStructure(
        regular,
        _int_list(d.get("left", []), "left"),
        _int_list(d.get("ab_zero", []), "ab_zero"),
        _int_list(d.get("ba_zero", []), "ba_zero"),
        _int_list(d.get("right", []), "right"),
    )


# Matrices and templates ---------------------------------------------------


def matrix_to_json(m: ExactMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": m.to_strings()}


def matrix_from_json(d: Any) -> ExactMatrix:
    d = _require(d, "matrix")
    try:
        grid = [[ExactScalar.parse(str(x)) for x in r] for r in d["entries"]]
        return ExactMatrix(int(d["rows"]), int(d["cols"]), tuple(tuple(r) for r in grid))
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"malformed matrix: {exc}") from exc


def partition_to_json(p: BlockPartition) -> dict:
    return {"row_sizes": list(p.row_sizes), "col_sizes": list(p.col_sizes)}


def partition_from_json(d: Any) -> BlockPartition:
    d = _require(d, "partition")
    return BlockPartition(_int_list(d.get("row_sizes"), "row_sizes"), _int_list(d.get("col_sizes"), "col_sizes"))


def permutation_to_json(p: Permutation) -> dict:
    return {"image": p.one_based()}


def permutation_from_json(d: Any) -> Permutation:
    image = _int_list(_require(d, "permutation").get("image"), "image")
    return Permutation(tuple(k - 1 for k in image))


def _pattern_json(p: PatternMatrix, offset: int) -> list[list[str]]:
    return [["0" if k is None else f"p{k + offset}" for k in r] for r in p.entries]


def template_to_json(t: Template, offset: int = 0) -> dict:
    return {
        "base": matrix_to_json(t.base),
        "pattern": _pattern_json(t.pattern, offset),
        "partition": partition_to_json(t.partition),
        "param_count": t.param_count,
    }


def template_from_json(d: Any) -> Template:
    d = _require(d, "template")
    base = matrix_from_json(d["base"])
    pattern = PatternMatrix.from_json(d["pattern"], base.cols)
    t = Template(base, pattern, partition_from_json(d["partition"]))
    if "param_count" in d and d["param_count"] != t.param_count:
        raise StructureError("param_count does not match the number of stars")
    return t


def pair_to_json(tp: TemplatePair) -> dict:
    return {
        "kind": tp.kind,
        "first": template_to_json(tp.first),
        "second": template_to_json(tp.second, offset=tp.first.param_count),
        "param_count": tp.param_count,
    }


def pair_from_json(d: Any) -> TemplatePair:
    d = _require(d, "template pair")
    return TemplatePair(template_from_json(d["first"]), template_from_json(d["second"]), kind=d.get("kind", "pencil"))


def deformation_from_json(d: Any) -> Union[Template, TemplatePair]:
    """A template or a pair, told apart by the ``first`` field."""
    d = _require(d, "deformation")
    return pair_from_json(d) if "first" in d else template_from_json(d)


def deformation_to_json(obj: Union[Template, TemplatePair]) -> dict:
    return template_to_json(obj) if isinstance(obj, Template) else pair_to_json(obj)


# Floating point -----------------------------------------------------------


def _complex_entry(x: Any) -> complex:
    if isinstance(x, list) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, str):
        return complex(x.replace(" ", "").replace("i", "j"))
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    raise ValueError(f"cannot read {x!r} as a complex number")


def float_matrix_from_json(d: Any) -> np.ndarray:
    """Rows of numbers, ``[re, im]`` pairs or strings such as ``"1e-3-2e-4j"``."""
    grid = d["entries"] if isinstance(d, dict) else d
    try:
        out = np.array([[_complex_entry(x) for x in r] for r in grid], dtype=complex)
    except (TypeError, ValueError) as exc:
        raise StructureError(f"malformed perturbation matrix: {exc}") from exc
    if out.ndim != 2 and out.size:
        raise StructureError("perturbation must be a rectangular matrix")
    if not np.all(np.isfinite(out)):
        raise StructureError("perturbation entries must be finite")
    return out


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2)


# ASCII ---------------------------------------------------------------------


def render_template(t: Template, offset: int = 0) -> str:
    """Base and pattern side by side, separated by ``+``."""
    base = render_grid(t.base.to_strings(), t.partition, t.base.cols)
    pat = t.pattern.render(t.partition)
    left, right = base.splitlines(), pat.splitlines()
    if not left:
        return f"({t.base.rows}x{t.base.cols} empty)"
    width = max(len(x) for x in left)
    mid = len(left) // 2
    return "\n".join(
        f"{a.ljust(width)}  {'+' if k == mid else ' '}  {b}" for k, (a, b) in enumerate(zip(left, right))
    )


def render_deformation(obj: Union[Template, TemplatePair]) -> str:
    if isinstance(obj, Template):
        return render_template(obj) + f"\n\nparameters: {obj.param_count}"
    return (
        f"first ({obj.first.shape[0]}x{obj.first.shape[1]}):\n{render_template(obj.first)}\n\n"
        f"second ({obj.second.shape[0]}x{obj.second.shape[1]}):\n{render_template(obj.second)}\n\n"
        f"parameters: {obj.param_count} ({obj.kind})"
    )


def render_matrix(m: ExactMatrix, partition: BlockPartition | None = None) -> str:
    if m.rows == 0:
        return f"({m.rows}x{m.cols} empty)"
    return render_grid(m.to_strings(), partition, m.cols)
