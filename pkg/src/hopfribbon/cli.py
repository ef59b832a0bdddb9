"""Command-line interface.

Exit codes: 0 success, 1 predicate computed false, 2 input error,
3 theorem violation (the two ribbon enumerations disagree).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .catalog import catalog_ids
from .catalog import load as load_entry
from .double import (
    QuasiTriangularData,
    QuasitriangularError,
    double,
    from_quasitriangular_json,
    verify_quasitriangular,
)
from .hopf import (
    HopfAlgebra,
    SchemaError,
    StructureError,
    antipode_order,
    characters,
    dual,
    from_json,
    grouplikes,
    validate_axioms,
)
from .radford import IntegralError, radford_data
from .ribbon import (
    ConventionFault,
    TheoremViolation,
    classify,
    pivotal_grouplikes,
    ribbon_elements_direct,
    spherical_dsps,
)

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_THEOREM = 0, 1, 2, 3
DEFAULT_MAX_DIM = 12

log = logging.getLogger("hopfribbon")


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# input


def _read_document(source: str) -> dict:
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"$: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def load_input(source: str) -> tuple[HopfAlgebra, QuasiTriangularData | None]:
    """A catalog id, a path, or ``-`` for standard input."""
    if source in catalog_ids():
        return load_entry(source), None
    doc = _read_document(source)
    try:
        if isinstance(doc, dict) and "r_matrix" in doc:
            qt = from_quasitriangular_json(doc)
            return qt.algebra, qt
        return from_json(doc), None
    except SchemaError as exc:
        raise InputError(f"schema violation at {exc}") from exc
    except StructureError as exc:
        raise InputError(str(exc)) from exc


def _require_valid(h: HopfAlgebra) -> None:
    report = validate_axioms(h)
    if not report.ok:
        lines = [f"{h.name} is not a Hopf algebra:"] + [f"  {f}" for f in report.failures]
        raise InputError("\n".join(lines))


def _check_ceiling(h: HopfAlgebra, max_dim: int) -> None:
    if h.dim > max_dim:
        raise InputError(f"dim {h.dim} exceeds the ceiling {max_dim} for the double (use --max-dim)")


# ---------------------------------------------------------------------------
# commands; each returns (payload, predicate or None)


def cmd_validate(h, qt, args):
    report = validate_axioms(h)
    payload = report.to_json()
    ok = report.ok
    if qt is not None:
        qrep = verify_quasitriangular(qt)
        payload["quasitriangular"] = qrep.to_json()
        ok = ok and qrep.ok
    return payload, ok


def cmd_info(h, qt, args):
    _require_valid(h)
    G = grouplikes(h)
    X = characters(h)
    comm = h.mult.equals(h.mult.transpose(1, 0, 2))
    cocomm = h.comult.equals(h.comult.transpose(0, 2, 1))
    return {
        "name": h.name,
        "field": str(h.field),
        "dim": h.dim,
        "basis": list(h.basis),
        "commutative": comm,
        "cocommutative": cocomm,
        "antipode_order": antipode_order(h),
        "grouplike_count": len(G),
        "character_count": len(X),
        "warnings": G.warnings + X.warnings,
    }, None


def cmd_dual(h, qt, args):
    _require_valid(h)
    return dual(h).to_json(), None


def _double_of(h, qt, args) -> QuasiTriangularData:
    if qt is not None:
        return qt
    _require_valid(h)
    _check_ceiling(h, args.max_dim)
    return double(h)


def cmd_double(h, qt, args):
    qt = _double_of(h, qt, args)
    return qt.to_json(), None


def cmd_integrals(h, qt, args):
    _require_valid(h)
    rad = radford_data(h)
    return {
        "left_integral": rad.left_integral.tolist_str(),
        "right_integral_dual": rad.right_integral_dual.tolist_str(),
    }, None


def cmd_grouplikes(h, qt, args):
    _require_valid(h)
    G = grouplikes(h)
    X = characters(h)
    return {
        "grouplikes": [g.tolist_str() for g in G.elements],
        "grouplike_table": G.group_table,
        "characters": [c.tolist_str() for c in X.elements],
        "character_table": X.group_table,
        "warnings": G.warnings + X.warnings,
    }, None


def cmd_radford(h, qt, args):
    _require_valid(h)
    rad = radford_data(h)
    if not rad.s4.ok:
        raise TheoremViolation(f"S^4 formula fails on basis elements {rad.s4.witnesses}")
    return rad.to_json(), None


def cmd_ribbon(h, qt, args):
    q = _double_of(h, qt, args)
    pivotals = pivotal_grouplikes(q)
    certs = ribbon_elements_direct(q, pivotals)
    return {
        "algebra": q.algebra.name,
        "dim": q.dim,
        "pivotal_count": len(pivotals),
        "pivotal_grouplikes": [p.p.tolist_str() for p in pivotals],
        "ribbon_count": len(certs),
        "ribbon_elements": [c.v.tolist_str() for c in certs],
    }, bool(certs)


def cmd_spherical(h, qt, args):
    _require_valid(h)
    rad = radford_data(h)
    verdict = spherical_dsps(h, rad)
    return {"algebra": h.name, "unimodular": rad.unimodular, "spherical_dsps": verdict}, verdict


def _classification(h, qt, args):
    if qt is not None and qt.base is None:
        raise InputError("classify needs a Hopf algebra, not a quasitriangular document")
    _require_valid(h)
    _check_ceiling(h, args.max_dim)
    return classify(h)


def cmd_modular(h, qt, args):
    report = _classification(h, qt, args)
    return {
        "algebra": h.name,
        "factorizable": report.factorizable,
        "ribbon_count": report.ribbon_count,
        "modular": report.modular,
    }, report.modular


def cmd_classify(h, qt, args):
    report = _classification(h, qt, args)
    return report.to_json(), report.modular


COMMANDS = {
    "validate": (cmd_validate, "check the Hopf algebra axioms (and R-matrix identities if present)"),
    "info": (cmd_info, "summary: dimension, (co)commutativity, antipode order, grouplike counts"),
    "dual": (cmd_dual, "emit the dual Hopf algebra"),
    "double": (cmd_double, "emit the Drinfeld double with R-matrix, u and monodromy"),
    "integrals": (cmd_integrals, "left integral of H and right integral of H*"),
    "grouplikes": (cmd_grouplikes, "grouplike elements and characters"),
    "radford": (cmd_radford, "distinguished grouplikes and the S^4 formula"),
    "ribbon": (cmd_ribbon, "ribbon elements of the double (or of a quasitriangular input)"),
    "spherical": (cmd_spherical, "spherical pivotal structure test"),
    "modular": (cmd_modular, "modularity verdict for the double"),
    "classify": (cmd_classify, "full classification report"),
}


# ---------------------------------------------------------------------------
# output


def _render_text(payload, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(payload, dict):
        for key, value in payload.items():
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                lines.append(f"{pad}{key}:")
                lines += _render_text(value, indent + 1)
            else:
                lines.append(f"{pad}{key}: {_inline(value)}")
    elif isinstance(payload, list):
        for item in payload:
            if isinstance(item, (dict, list)) and not _is_flat(item):
                lines.append(f"{pad}-")
                lines += _render_text(item, indent + 1)
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(f"{pad}{_inline(payload)}")
    return lines


def _is_flat(value) -> bool:
    if isinstance(value, list):
        return all(not isinstance(v, (dict, list)) for v in value)
    if isinstance(value, dict):
        return all(not isinstance(v, (dict, list)) for v in value.values()) and len(value) <= 3
    return True


def _inline(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    if isinstance(value, list):
        return "[" + ", ".join(_inline(v) for v in value) + "]"
    if isinstance(value, dict):
        return ", ".join(f"{k}={_inline(v)}" for k, v in value.items())
    return str(value)


def emit(payload, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(payload, indent=1, ensure_ascii=False, sort_keys=False))
        out.write("\n")
    else:
        out.write("\n".join(_render_text(payload)) + "\n")


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopfribbon",
        description="Exact computations with finite-dimensional Hopf algebras and their Drinfeld doubles.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM,
                        help=f"largest dim(H) for commands that build the double (default {DEFAULT_MAX_DIM})")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument("input", help="JSON file, '-' for standard input, or a catalog id")
    ex = sub.add_parser("examples", help="list or emit catalog entries")
    ex_sub = ex.add_subparsers(dest="action", required=True)
    ex_sub.add_parser("list", help="print catalog ids", parents=[common])
    em = ex_sub.add_parser("emit", help="print the algebra JSON of a catalog entry", parents=[common])
    em.add_argument("id")
    return parser


def _examples(args) -> int:
    if args.action == "list":
        if args.format == "json":
            emit(catalog_ids(), "json")
        else:
            sys.stdout.write("\n".join(catalog_ids()) + "\n")
        return EXIT_OK
    try:
        h = load_entry(args.id)
    except KeyError:
        raise InputError(f"unknown catalog id {args.id!r}") from None
    emit(h.to_json(), "json" if args.format == "json" else "text")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        if args.command == "examples":
            return _examples(args)
        h, qt = load_input(args.input)
        log.info("loaded %s (dim %d over %s)", h.name, h.dim, h.field)
        payload, verdict = COMMANDS[args.command][0](h, qt, args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except IntegralError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (TheoremViolation, ConventionFault, QuasitriangularError) as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    emit(payload, args.format)
    if verdict is False:
        if args.command == "validate":
            for f in payload.get("failures", []):
                print(f"axiom failure: {f}", file=sys.stderr)
        return EXIT_FALSE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
