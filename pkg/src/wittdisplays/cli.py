"""Command-line surface.

Every subcommand reads structured inputs (flags plus, where natural, a
JSON document on stdin) and emits one deterministic document on stdout:
JSON by default, a plain rendering with ``--format text``.  Exit codes:
0 on success, 1 on domain errors (reported as an error document), 2 on
usage errors (argparse).

Examples:

    wittdisplays witt add --p 2 --len 2 --ring Z --x [1,0] --y [1,0]
    wittdisplays display example lubin-tate-h3 | wittdisplays display point
    wittdisplays period sections --h 2 --p 3 --order 2
    wittdisplays selftest
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stdout

from . import deformation, dieudonne, display, moduli, period, selftest, serialize
from .errors import AlgebraError
from .rings import RingElement
from .witt import WittVector, generate_universal_polynomials, teichmuller


def _emit(doc, fmt: str):
    if fmt == "text":
        print(_render_text(doc))
    else:
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))


def _render_text(doc):
    if isinstance(doc, dict):
        if "text" in doc:
            return doc["text"]
        if doc.get("kind") == "selftest":
            return "\n".join(doc["lines"])
        return json.dumps(doc, sort_keys=True, indent=2)
    return str(doc)


def _read_stdin_document():
    data = sys.stdin.read()
    if not data.strip():
        raise AlgebraError("expected a JSON document on stdin")
    return json.loads(data)


def _ring_from_flag(text: str):
    text = text.strip()
    if text.startswith("{"):
        return serialize.ring_from_json(json.loads(text))
    return serialize.parse_ring(text)


def _witt_from_flags(args, ring):
    comps = json.loads(args.x)
    if not isinstance(comps, list):
        raise AlgebraError("--x must be a JSON list of components")
    elements = [serialize.element_from_json(c, ring) for c in comps]
    if len(elements) < args.len:
        elements += [ring.zero()] * (args.len - len(elements))
    return WittVector(args.p, ring, elements[: args.len])


def _witt_doc(w: WittVector):
    doc = serialize.witt_to_json(w)
    doc["text"] = repr(w)
    return doc


# ---------------------------------------------------------------------------
# witt subcommands


def _cmd_witt(args) -> dict:
    ring = _ring_from_flag(args.ring)
    op = args.operation
    if op == "teich":
        elt = serialize.element_from_json(json.loads(args.x), ring)
        return _witt_doc(teichmuller(elt, args.p, args.len))
    x = _witt_from_flags(args, ring)
    if op == "ghost":
        value = x.ghost(args.k)
        return {
            "kind": "ring_element",
            "ring": serialize.ring_to_json(ring),
            "value": serialize.element_to_json(value),
            "text": repr(value),
        }
    if op == "frob":
        return _witt_doc(x.frobenius())
    if op == "versch":
        return _witt_doc(x.verschiebung())
    if op == "invert":
        return _witt_doc(x.invert())
    y = WittVector(
        args.p,
        ring,
        [serialize.element_from_json(c, ring) for c in json.loads(args.y)],
    )
    if op == "add":
        return _witt_doc(x + y)
    if op == "mul":
        return _witt_doc(x * y)
    raise AlgebraError(f"unknown witt operation {op!r}")


# ---------------------------------------------------------------------------
# display subcommands


def _display_doc(D):
    doc = serialize.display_to_json(D)
    doc["text"] = repr(D)
    return doc


def _display_from_args_or_stdin(args):
    if getattr(args, "matrix", None):
        ring = _ring_from_flag(args.ring)
        rows = serialize._witt_matrix_from_json(json.loads(args.matrix), args.p, ring)
        return display.new_display(args.p, getattr(args, "h"), getattr(args, "d"), ring, rows)
    return serialize.display_from_json(_read_stdin_document())


def _cmd_display(args) -> dict:
    op = args.operation
    if op == "example":
        result = display.example_display(args.name, args.p, args.len, args.order)
        if isinstance(result, dict):
            return {
                "kind": "zeta_fixture",
                "zeta": serialize.element_to_json(result["zeta"]),
                "field": serialize.ring_to_json(result["field"]),
                "display": serialize.display_to_json(result["display"]),
                "pullback": serialize.display_to_json(result["pullback"]),
                "phi": serialize.change_to_json(result["phi"]),
            }
        return _display_doc(result)
    if op in ("new", "check"):
        try:
            D = _display_from_args_or_stdin(args)
        except AlgebraError as exc:
            if op == "check":
                return {"kind": "display_check", "valid": False, "reason": str(exc)}
            raise
        if op == "check":
            return {"kind": "display_check", "valid": True, "reason": None}
        return _display_doc(D)
    D = serialize.display_from_json(_read_stdin_document())
    if op == "point":
        return serialize.projective_point_to_json(deformation.projective_point(D))
    if op == "nilpotent":
        result = display.is_nilpotent(D, args.max_iter)
        return {
            "kind": "nilpotence",
            "status": result.status,
            "exponent": result.exponent,
            "text": f"{result.status}"
            + (f" (n={result.exponent})" if result.exponent is not None else ""),
        }
    if op == "dual":
        return _display_doc(display.dual(D))
    if op == "reduce-h2":
        reduced, phi = display.reduce_h2(D)
        return {
            "kind": "reduction",
            "display": serialize.display_to_json(reduced),
            "phi": serialize.change_to_json(phi),
        }
    if op == "change":
        phi = serialize.change_from_json(json.loads(args.phi))
        moved, factor = display.change_of_coords(D, phi)
        if isinstance(factor, RingElement):
            factor_doc = serialize.element_to_json(factor)
        else:
            factor_doc = [[serialize.element_to_json(x) for x in row] for row in factor]
        return {
            "kind": "changed_display",
            "display": serialize.display_to_json(moved),
            "one_form_factor": factor_doc,
        }
    raise AlgebraError(f"unknown display operation {op!r}")


# ---------------------------------------------------------------------------
# dieudonne, moduli, deform, period


def _cmd_dieudonne(args) -> dict:
    if args.operation == "from-display":
        D = serialize.display_from_json(_read_stdin_document())
        module = dieudonne.to_dieudonne(D)
        return serialize.dieudonne_to_json(module)
    if args.operation == "check-fv":
        module = serialize.dieudonne_from_json(_read_stdin_document())
        ok = module.check_fv_relations()
        return {"kind": "fv_check", "fv_relations_hold": ok}
    raise AlgebraError(f"unknown dieudonne operation {args.operation!r}")


def _cmd_moduli(args) -> dict:
    symbolic = {"auto": "auto", "yes": True, "no": False}[args.symbolic]
    P = moduli.build_presentation(args.p, args.len, args.h, symbolic=symbolic)
    if args.operation == "present":
        return serialize.presentation_to_json(P)
    if args.operation == "invariant-ideal":
        cert = moduli.invariant_ideal_certificate(P)
        return {
            "kind": "invariant_ideal_certificate",
            "p": args.p,
            "n": args.len,
            "h": args.h,
            "unit_factor": serialize.localized_to_json(cert.unit_factor),
            "p_part": serialize.localized_to_json(cert.p_part),
            "hh_part": serialize.localized_to_json(cert.hh_part),
            "mod_p_cofactor": serialize.localized_to_json(cert.mod_p_cofactor),
            "mod_p_cofactor_inverse": serialize.localized_to_json(
                cert.mod_p_cofactor_inverse
            ),
            "identity": "eta_R(beta0_hh) = unit_factor * beta0_hh + p * p_part "
            "+ beta0_hh * hh_part",
        }
    raise AlgebraError(f"unknown moduli operation {args.operation!r}")


def _cmd_deform(args) -> dict:
    if args.operation == "etale":
        if args.chart:
            chart = serialize.chart_map_from_json(json.loads(args.chart))
            result = deformation.jacobian_etale_check(chart)
            return {
                "kind": "etale_check",
                "etale": result.etale,
                "reason": result.reason,
            }
        D = serialize.display_from_json(_read_stdin_document())
        point = deformation.projective_point(D)
        charts = deformation.all_charts_etale(point)
        return {
            "kind": "etale_all_charts",
            "point": serialize.projective_point_to_json(point),
            "charts": {
                str(i): {"etale": r.etale, "reason": r.reason}
                for i, r in sorted(charts.items())
            },
        }
    if args.operation == "tangent-oracle":
        D = serialize.display_from_json(_read_stdin_document())
        result = deformation.tangent_lift_oracle(
            D, budget=args.budget, nonnilpotent=args.nonnilpotent
        )
        return {
            "kind": "tangent_oracle",
            "class_count": result.class_count,
            "subspace_rank": result.subspace_rank,
            "total_dimension": result.total_dimension,
            "closed_form_matches": result.closed_form_matches,
            "nilpotence": result.nilpotence.status,
            "warnings": list(result.warnings),
            "representatives": [
                serialize.display_to_json(rep) for rep in result.representatives
            ],
        }
    raise AlgebraError(f"unknown deform operation {args.operation!r}")


def _ring_matrix_doc(rows):
    return [[serialize.element_to_json(x) for x in row] for row in rows]


def _cmd_period(args) -> dict:
    if args.operation == "psi":
        rows = period.psi_matrix(args.h, args.p, args.order, args.reduced)
        return {
            "kind": "psi_matrix",
            "h": args.h,
            "p": args.p,
            "order": args.order,
            "reduced": bool(args.reduced),
            "matrix": _ring_matrix_doc(rows),
        }
    pa = period.horizontal_sections(args.h, args.p, args.order)
    if args.operation == "sections":
        doc = serialize.period_to_json(pa)
        doc["text"] = "\n".join(
            "[" + ", ".join(repr(x) for x in row) + "]" for row in pa.matrix
        )
        return doc
    if args.operation == "map":
        point = period.period_map(pa)
        doc = serialize.projective_point_to_json(point)
        doc["kind"] = "period_map"
        doc["order"] = args.order
        return doc
    raise AlgebraError(f"unknown period operation {args.operation!r}")


def _cmd_selftest(args) -> tuple:
    numbers = None
    if args.criteria:
        numbers = {int(x) for x in args.criteria.split(",")}
    lines = []
    results = selftest.run_all(numbers=numbers, echo=lines.append)
    ok = all(r.passed for r in results)
    doc = {
        "kind": "selftest",
        "passed": ok,
        "lines": lines,
        "results": [
            {
                "criterion": r.number,
                "passed": r.passed,
                "description": r.description,
                "details": r.details,
            }
            for r in results
        ],
    }
    return doc, 0 if ok else 1


# ---------------------------------------------------------------------------
# Parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wittdisplays",
        description="Exact arithmetic for truncated Witt vectors and displays",
    )
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    witt_p = sub.add_parser("witt", help="Witt vector arithmetic")
    witt_p.add_argument(
        "operation",
        choices=("add", "mul", "frob", "versch", "teich", "ghost", "invert"),
    )
    witt_p.add_argument("--p", type=int, required=True)
    witt_p.add_argument("--len", type=int, required=True)
    witt_p.add_argument("--ring", required=True)
    witt_p.add_argument("--x", required=True)
    witt_p.add_argument("--y")
    witt_p.add_argument("--k", type=int, default=0)
    witt_p.set_defaults(func=_cmd_witt)

    disp_p = sub.add_parser("display", help="displays in matrix form")
    disp_p.add_argument(
        "operation",
        choices=("new", "check", "nilpotent", "change", "dual",
                 "reduce-h2", "point", "example"),
    )
    disp_p.add_argument("name", nargs="?", help="example name")
    disp_p.add_argument("--p", type=int)
    disp_p.add_argument("--len", type=int, default=2)
    disp_p.add_argument("--h", type=int)
    disp_p.add_argument("--d", type=int)
    disp_p.add_argument("--ring")
    disp_p.add_argument("--matrix")
    disp_p.add_argument("--phi")
    disp_p.add_argument("--order", type=int, default=3,
                        help="ideal-power truncation for example rings")
    disp_p.add_argument("--max-iter", type=int, default=None)
    disp_p.set_defaults(func=_cmd_display)

    dieu_p = sub.add_parser("dieudonne", help="Dieudonne modules")
    dieu_p.add_argument("operation", choices=("from-display", "check-fv"))
    dieu_p.set_defaults(func=_cmd_dieudonne)

    mod_p = sub.add_parser("moduli", help="the groupoid presentation")
    mod_p.add_argument("operation", choices=("present", "invariant-ideal"))
    mod_p.add_argument("--p", type=int, required=True)
    mod_p.add_argument("--len", type=int, required=True)
    mod_p.add_argument("--h", type=int, required=True)
    mod_p.add_argument("--symbolic", choices=("auto", "yes", "no"), default="auto")
    mod_p.set_defaults(func=_cmd_moduli)

    def_p = sub.add_parser("deform", help="deformation-theoretic checks")
    def_p.add_argument("operation", choices=("etale", "tangent-oracle"))
    def_p.add_argument("--chart")
    def_p.add_argument("--budget", type=int, default=1 << 20)
    def_p.add_argument("--nonnilpotent", choices=("warn", "reject"), default="warn")
    def_p.set_defaults(func=_cmd_deform)

    per_p = sub.add_parser("period", help="period-map approximation")
    per_p.add_argument("operation", choices=("psi", "sections", "map"))
    per_p.add_argument("--h", type=int, required=True)
    per_p.add_argument("--p", type=int, required=True)
    per_p.add_argument("--order", type=int, required=True)
    per_p.add_argument("--reduced", action="store_true",
                       help="send the variables to zero (psi only)")
    per_p.set_defaults(func=_cmd_period)

    self_p = sub.add_parser("selftest", help="run the acceptance criteria")
    self_p.add_argument("--criteria", help="comma-separated criterion numbers")
    self_p.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (AlgebraError, ValueError, KeyError, json.JSONDecodeError) as exc:
        _emit({"kind": "error", "ok": False, "error": str(exc)}, args.format)
        return 1
    if isinstance(result, tuple):
        doc, code = result
    else:
        doc, code = result, 0
    if args.command == "selftest" and args.format == "json":
        _emit(doc, "json")
    elif args.command == "selftest":
        _emit(doc, "text")
    else:
        _emit(doc, args.format)
    return code


def run_for_test(argv, stdin_text=None):
    """In-process CLI invocation used by the determinism criterion and the
    test suite: returns (exit code, captured stdout)."""
    buffer = io.StringIO()
    old_stdin = sys.stdin
    try:
        if stdin_text is not None:
            sys.stdin = io.StringIO(stdin_text)
        with redirect_stdout(buffer):
            try:
                code = main(list(argv))
            except SystemExit as exc:  # argparse usage errors
                code = exc.code if isinstance(exc.code, int) else 2
    finally:
        sys.stdin = old_stdin
    return code, buffer.getvalue()


if __name__ == "__main__":
    sys.exit(main())
