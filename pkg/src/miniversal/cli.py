"""Command-line front end.

Exit codes: 0 on success (for ``certify``: the template is miniversal), 1
when certification or reduction fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Any, Callable, Optional, Sequence

from . import io
from .corpus import random_contra, random_pencil, random_segre
from .deformations import (
    deform_contragredient,
    deform_jordan,
    deform_pencil,
    deform_pencil_kronecker,
    deform_weyr,
    triangularize_contragredient,
)
from .deformations.base import Template
from .reduce import NoConvergence, ReduceOptions, SingularTransform, reduce
from .structures import (
    StructureError,
    build_jordan,
    build_weyr,
    jordan_partition,
    jordan_to_weyr_permutation,
    weyr_char_from_segre,
    weyr_char_of_matrix,
)
from .verify import certify


class UsageError(Exception):
    pass


def _load(text: str) -> Any:
    """Inline JSON, a file path, or ``-`` for stdin."""
    if text == "-":
        raw = sys.stdin.read()
    elif os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            raw = fh.read()
    else:
        raw = text
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"input is neither a readable file nor valid JSON: {exc}") from exc


def _need(args: argparse.Namespace, name: str) -> Any:
    value = getattr(args, name, None)
    if value is None:
        raise UsageError(f"--{name} is required here")
    return _load(value)


def _emit(args: argparse.Namespace, payload: dict, ascii_text: str) -> None:
    if args.format == "json":
        print(io.dumps(payload))
    else:
        print(ascii_text)


def _build(args: argparse.Namespace):
    kind = args.kind
    if kind == "similarity":
        s = io.segre_from_json(_need(args, "segre"))
        if args.ordering == "kronecker":
            return deform_jordan(s)
        return deform_weyr(s, route=args.route)
    if kind == "pencil":
        ps = io.pencil_from_json(_need(args, "pencil"))
        return deform_pencil_kronecker(ps) if args.ordering == "kronecker" else deform_pencil(ps)
    if kind == "contragredient":
        cs = io.contra_from_json(_need(args, "contra"))
        tp = deform_contragredient(cs)
        return triangularize_contragredient(tp, cs)[0] if args.triangularize else tp
    raise UsageError(f"unknown kind {kind!r}")


def _template_or_build(args: argparse.Namespace):
    if args.template is not None:
        return io.deformation_from_json(_load(args.template))
    return _build(args)


# Verbs ---------------------------------------------------------------------


def cmd_canon(args: argparse.Namespace) -> int:
    s = io.segre_from_json(_need(args, "segre"))
    if args.form == "weyr":
        m, part = build_weyr(s)
    else:
        m, part = build_jordan(s), jordan_partition(s)
    payload = {"form": args.form, "matrix": io.matrix_to_json(m), "partition": io.partition_to_json(part)}
    _emit(args, payload, io.render_matrix(m, part))
    return 0


def cmd_weyr(args: argparse.Namespace) -> int:
    if args.matrix is not None:
        m = io.matrix_from_json(_load(args.matrix))
        if m.rows != m.cols:
            raise UsageError("the Weyr characteristic needs a square matrix")
        if args.value is None:
            raise UsageError("--value is required with --matrix")
        w = weyr_char_of_matrix(m, args.value)
        chars = [{"value": args.value, "weyr": list(w)}]
    else:
        s = io.segre_from_json(_need(args, "segre"))
        chars = [{"value": str(eb.value), "weyr": list(weyr_char_from_segre(eb.sizes))} for eb in s]
    text = "\n".join(f"{c['value']}: ({', '.join(map(str, c['weyr']))})" for c in chars)
    _emit(args, {"characteristics": chars}, text)
    return 0


def cmd_perm(args: argparse.Namespace) -> int:
    s = io.segre_from_json(_need(args, "segre"))
    p = jordan_to_weyr_permutation(s)
    order = [k + 1 for k in p.order]
    payload = {"image": p.one_based(), "order": order}
    _emit(args, payload, f"image: {' '.join(map(str, p.one_based()))}\norder: {' '.join(map(str, order))}")
    return 0


def cmd_deform(args: argparse.Namespace) -> int:
    obj = _build(args)
    _emit(args, io.deformation_to_json(obj), io.render_deformation(obj))
    return 0


def _report_text(r) -> str:
    return (
        f"target dimension: {r.total_dim}\ntangent rank: {r.tangent_rank}\n"
        f"parameters: {r.param_count} (codimension {r.codimension})\n"
        f"versal: {r.versal}\nminiversal: {r.miniversal}"
    )


def _fuzz_cases(kind: str, ordering: str, n: int, seed: int) -> list[tuple[dict, Callable[[], Any]]]:
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        if kind == "similarity":
            s = random_segre(rng)
            build = (lambda s=s: deform_jordan(s)) if ordering == "kronecker" else (lambda s=s: deform_weyr(s))
            out.append((io.segre_to_json(s), build))
        elif kind == "pencil":
            ps = random_pencil(rng)
            fn = deform_pencil_kronecker if ordering == "kronecker" else deform_pencil
            out.append((io.pencil_to_json(ps), lambda ps=ps, fn=fn: fn(ps)))
        else:
            cs = random_contra(rng)
            out.append((io.contra_to_json(cs), lambda cs=cs: deform_contragredient(cs)))
    return out


def cmd_certify(args: argparse.Namespace) -> int:
    if args.fuzz:
        failures = []
        for structure, build in _fuzz_cases(args.kind, args.ordering, args.fuzz, args.seed):
            r = certify(build())
            if not r.miniversal:
                failures.append({"structure": structure, "report": r.to_json()})
        payload = {"kind": args.kind, "cases": args.fuzz, "seed": args.seed, "failures": failures}
        _emit(args, payload, f"{args.fuzz - len(failures)}/{args.fuzz} miniversal (kind {args.kind}, seed {args.seed})")
        return 0 if not failures else 1
    r = certify(_template_or_build(args))
    _emit(args, r.to_json(), _report_text(r))
    return 0 if r.miniversal else 1


def cmd_reduce(args: argparse.Namespace) -> int:
    obj = _template_or_build(args)
    data = _need(args, "perturbation")
    if isinstance(obj, Template):
        pert = io.float_matrix_from_json(data)
    else:
        if not isinstance(data, dict) or "first" not in data or "second" not in data:
            raise UsageError("a pair perturbation needs 'first' and 'second' matrices")
        pert = (io.float_matrix_from_json(data["first"]), io.float_matrix_from_json(data["second"]))
    opts = ReduceOptions(tol=args.tol, max_iter=args.max_iter, cond_cap=args.cond_cap)
    try:
        res = reduce(obj, pert, opts)
        status = 0
    except NoConvergence as exc:
        res, status = exc.result, 1
        print(f"warning: {exc}", file=sys.stderr)
    except SingularTransform as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = res.to_json()
    payload["converged"] = status == 0
    text = (
        f"converged: {status == 0}\niterations: {res.iterations}\nresidual: {res.residual:.3e}\n"
        + "params: "
        + " ".join(f"{z.real:.6g}{z.imag:+.6g}j" for z in res.params)
    )
    _emit(args, payload, text)
    return status


# Parser --------------------------------------------------------------------


def _structure_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--segre", help="Segre structure JSON (inline, path, or - for stdin)")
    p.add_argument("--pencil", help="pencil structure JSON")
    p.add_argument("--contra", help="contragredient structure JSON")
    p.add_argument("--kind", choices=["similarity", "pencil", "contragredient"], default="similarity")
    p.add_argument("--ordering", choices=["weyr", "kronecker"], default="weyr")
    p.add_argument("--route", choices=["permute", "direct"], default="permute")
    p.add_argument("--triangularize", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="miniversal", description="Weyr forms and block triangular miniversal deformations.")
    parser.add_argument("--format", choices=["json", "ascii"], default="json")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("canon", help="Jordan or Weyr canonical matrix")
    p.add_argument("--segre", required=True)
    p.add_argument("--form", choices=["jordan", "weyr"], default="jordan")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("weyr", help="Weyr characteristic")
    p.add_argument("--segre")
    p.add_argument("--matrix", help="exact matrix JSON")
    p.add_argument("--value", help="eigenvalue, e.g. 0 or 1/2+i")
    p.set_defaults(func=cmd_weyr)

    p = sub.add_parser("perm", help="Jordan-to-Weyr permutation")
    p.add_argument("--segre", required=True)
    p.set_defaults(func=cmd_perm)

    p = sub.add_parser("deform", help="deformation template")
    _structure_args(p)
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("certify", help="exact versality certificate")
    _structure_args(p)
    p.add_argument("--template", help="template or pair JSON as emitted by deform")
    p.add_argument("--fuzz", type=int, default=0, metavar="N", help="certify N random structures of --kind")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("reduce", help="numeric reduction to normal form")
    _structure_args(p)
    p.add_argument("--template")
    p.add_argument("--perturbation", required=True, help="float matrix JSON (pairs: {first, second})")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=50)
    p.add_argument("--cond-cap", type=float, default=1e8)
    p.set_defaults(func=cmd_reduce)

    # accept --format after the verb as well
    for action in sub.choices.values():
        action.add_argument("--format", choices=["json", "ascii"], default=argparse.SUPPRESS)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, StructureError, ValueError, KeyError, TypeError) as exc:
        msg = f"missing field {exc.args[0]!r}" if isinstance(exc, KeyError) else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
