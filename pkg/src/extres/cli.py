"""Command-line front-end.

One subcommand per computation: betti, lq, sets, resolve, verify, oracle,
tspread, poincare, cxdepth.  Ideals come inline (-n/-g), from a file or
from stdin; output is aligned text or JSON (--json, schema version 1).
Exit status: 0 success, 1 mathematical failure (no linear-quotient order,
failed verification, ...), 2 input error.  Output is deterministic
byte-for-byte for identical requests.
"""

from __future__ import annotations

import argparse
import json
import sys

from .betti import betti_lq, complexity_and_depth, poincare
from .cartan import ResourceLimitError, oracle_betti
from .exterior import ParseError, indices_of
from .fields import FieldError, parse_field
from .ideals import (
    LinearQuotientOrder,
    MonomialIdeal,
    check_linear_quotients,
    find_lq_order,
    format_ideal,
    ideal_to_json,
    parse_ideal,
)
from .resolution import (
    DecompositionFunction,
    is_regular,
    lift_mapping_cone,
    regular_resolution,
    verify_complex,
)
from .tspread import (
    TSpreadError,
    betti_tspread,
    is_tspread_strongly_stable,
    lex_lq_order,
    tspread_closure,
    validate_t,
)

SCHEMA = 1


class InputError(Exception):
    pass


class MathFailure(Exception):
    pass


def _add_ideal_args(p):
    p.add_argument("-n", type=int, help="number of variables")
    p.add_argument(
        "-g",
        metavar="GENS",
        help="generators as bracket groups, e.g. [1,3],[1,4],[2,4,6]",
    )
    p.add_argument("--file", help="read the ideal from FILE ('-' for stdin)")
    p.add_argument(
        "--order",
        metavar="K1,K2,...",
        help="generator order override, 1-based positions in the input list",
    )
    p.add_argument("--json", action="store_true", help="emit JSON")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="extres",
        description=(
            "Minimal free resolutions, Betti tables, Poincare series and "
            "related invariants of monomial ideals with linear quotients "
            "over an exterior algebra."
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", help="graded Betti table from the set-size formula")
    _add_ideal_args(p)
    p.add_argument("--imax", type=int, default=6)
    p.add_argument("--jmax", type=int, default=None)
    p.add_argument("--oracle", action="store_true",
                   help="route through the homology oracle instead")
    p.add_argument("--field", default="gf2", help="gf2, gfp:P or qq (oracle only)")

    p = sub.add_parser("lq", help="find or validate a linear-quotient order")
    _add_ideal_args(p)

    p = sub.add_parser("sets", help="report set(u) for a linear-quotient order")
    _add_ideal_args(p)

    p = sub.add_parser("resolve", help="differential matrices of the resolution")
    _add_ideal_args(p)
    p.add_argument("--imax", type=int, default=3)
    p.add_argument("--field", default="qq")
    p.add_argument("--regular", action="store_true",
                   help="force the closed-form differentials (requires regularity)")
    p.add_argument("--lift", action="store_true",
                   help="force the generic comparison-map lift")

    p = sub.add_parser("verify", help="d o d, minimality, exactness report")
    _add_ideal_args(p)
    p.add_argument("--imax", type=int, default=3)
    p.add_argument("--field", default="qq")
    p.add_argument("--regular", action="store_true",
                   help="use the closed-form differentials and report regularity")
    p.add_argument("--lift", action="store_true")

    p = sub.add_parser("oracle", help="Betti table by exact Cartan homology")
    _add_ideal_args(p)
    p.add_argument("--imax", type=int, default=3)
    p.add_argument("--jmax", type=int, default=None)
    p.add_argument("--field", default="gf2")
    p.add_argument("--max-cells", type=int, default=100_000_000,
                   help="largest rank block, in matrix cells")

    p = sub.add_parser("tspread", help="t-spread strongly stable toolkit")
    _add_ideal_args(p)
    p.add_argument("--t", required=True, help="spread vector, e.g. 2,2")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--check", action="store_true",
                      help="predicate + validated lexicographic sets")
    mode.add_argument("--closure", action="store_true",
                      help="closure of the input generators under exchanges")
    mode.add_argument("--betti", action="store_true",
                      help="Betti table from the t-spread formula")
    p.add_argument("--imax", type=int, default=6)
    p.add_argument("--lex-increasing", action="store_true",
                   help="flip the lexicographic direction")

    p = sub.add_parser("poincare", help="truncated graded Poincare series")
    _add_ideal_args(p)
    p.add_argument("--imax", type=int, default=6)
    p.add_argument("--jmax", type=int, default=None)

    p = sub.add_parser("cxdepth", help="complexity and depth of E/I")
    _add_ideal_args(p)
    return ap


def load_ideal(args) -> MonomialIdeal:
    if args.file:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            try:
                with open(args.file, "r", encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise InputError(str(exc)) from None
        try:
            return parse_ideal(text)
        except ParseError as exc:
            raise InputError(str(exc)) from None
    if args.n is None:
        raise InputError("provide an ideal via --file or -n together with -g")
    gens = args.g if args.g is not None else ""
    try:
        return parse_ideal(f"n={args.n}; gens={gens}")
    except ParseError as exc:
        raise InputError(str(exc)) from None


def pick_order(ideal: MonomialIdeal, args, allow_search=True) -> LinearQuotientOrder:
    """Resolve the linear-quotient order for a request: an explicit
    --order wins, then the input order if it validates, then the search."""
    if ideal.is_unit:
        raise InputError("the unit ideal has no linear-quotient theory here")
    if args.order:
        try:
            positions = [int(x) for x in args.order.split(",")]
        except ValueError:
            raise InputError(f"bad --order {args.order!r}") from None
        if sorted(positions) != list(range(1, len(ideal.gens) + 1)):
            raise InputError(
                f"--order must be a permutation of 1..{len(ideal.gens)}"
            )
        order = [ideal.gens[k - 1] for k in positions]
        try:
            result = check_linear_quotients(ideal, order)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if not isinstance(result, LinearQuotientOrder):
            raise MathFailure(f"given order fails linear quotients: {result}")
        return result
    degs = [g.degree for g in ideal.gens]
    if all(a <= b for a, b in zip(degs, degs[1:])):
        result = check_linear_quotients(ideal, ideal.gens)
        if isinstance(result, LinearQuotientOrder):
            return result
    if allow_search:
        found = find_lq_order(ideal)
        if found is not None:
            return found
    raise MathFailure("no linear-quotient order (degree-increasing orders exhausted)")


def _emit(payload: dict, text: str, as_json: bool) -> None:
    if as_json:
        payload = {"schema": SCHEMA, **payload}
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _order_json(lq: LinearQuotientOrder) -> dict:
    return {
        "order": [list(u.support) for u in lq.order],
        "sets": [list(indices_of(s)) for s in lq.sets],
    }


def _sets_text(lq: LinearQuotientOrder) -> str:
    lines = []
    for k, (u, s) in enumerate(zip(lq.order, lq.sets), start=1):
        idx = ",".join(map(str, indices_of(s)))
        lines.append(f"u{k} = {u}: set = {{{idx}}}")
    return "\n".join(lines)


def cmd_betti(args) -> int:
    ideal = load_ideal(args)
    if args.oracle:
        return cmd_oracle(args)
    lq = pick_order(ideal, args)
    table = betti_lq(lq, args.imax, args.jmax)
    _emit(
        {
            "command": "betti",
            "ideal": ideal_to_json(ideal),
            **_order_json(lq),
            "imax": args.imax,
            "entries": table.to_json_entries(),
            "totals": table.totals(),
        },
        table.render_text(),
        args.json,
    )
    return 0


def cmd_lq(args) -> int:
    ideal = load_ideal(args)
    lq = pick_order(ideal, args)
    text = "linear quotients: yes\n" + _sets_text(lq)
    _emit(
        {"command": "lq", "ideal": ideal_to_json(ideal), **_order_json(lq)},
        text,
        args.json,
    )
    return 0


def cmd_sets(args) -> int:
    ideal = load_ideal(args)
    lq = pick_order(ideal, args)
    _emit(
        {"command": "sets", "ideal": ideal_to_json(ideal), **_order_json(lq)},
        _sets_text(lq),
        args.json,
    )
    return 0


def _build_complex(args, lq, field):
    df = DecompositionFunction(lq)
    reg = is_regular(df)
    if args.lift:
        return lift_mapping_cone(lq, args.imax, field), reg, "lift"
    if args.regular:
        if not reg:
            raise MathFailure(f"decomposition function is not regular: {reg.witness}")
        return regular_resolution(df, args.imax, field), reg, "regular"
    if reg:
        return regular_resolution(df, args.imax, field), reg, "regular"
    return lift_mapping_cone(lq, args.imax, field), reg, "lift"


def cmd_resolve(args) -> int:
    ideal = load_ideal(args)
    try:
        field = parse_field(args.field)
    except FieldError as exc:
        raise InputError(str(exc)) from None
    lq = pick_order(ideal, args)
    F, reg, route = _build_complex(args, lq, field)
    text = f"route: {route} (regular: {'yes' if reg.regular else 'no'})\n"
    text += F.render_text()
    _emit(
        {
            "command": "resolve",
            "ideal": ideal_to_json(ideal),
            **_order_json(lq),
            "route": route,
            "regular": reg.regular,
            "complex": F.to_json(),
        },
        text,
        args.json,
    )
    return 0


def cmd_verify(args) -> int:
    ideal = load_ideal(args)
    try:
        field = parse_field(args.field)
    except FieldError as exc:
        raise InputError(str(exc)) from None
    lq = pick_order(ideal, args)
    F, reg, route = _build_complex(args, lq, field)
    report = verify_complex(F)
    lines = [
        f"route: {route}",
        f"regular decomposition function: {'yes' if reg.regular else 'no'}"
        + ("" if reg.regular else f" (witness: {reg.witness})"),
        f"d o d = 0: {'yes' if report.dd_zero else 'NO'}",
        f"minimal: {'yes' if report.minimal else 'NO'}",
    ]
    for i in sorted(report.exactness):
        lines.append(
            f"exact at homological degree {i}: "
            f"{'yes' if report.exactness[i] else 'NO'}"
        )
    ok = report.all_passed
    lines.append(f"verdict: {'pass' if ok else 'FAIL'}")
    _emit(
        {
            "command": "verify",
            "ideal": ideal_to_json(ideal),
            **_order_json(lq),
            "route": route,
            "regular": reg.regular,
            "dd_zero": report.dd_zero,
            "minimal": report.minimal,
            "exactness": {str(k): v for k, v in report.exactness.items()},
            "pass": ok,
        },
        "\n".join(lines),
        args.json,
    )
    return 0 if ok else 1


def cmd_oracle(args) -> int:
    ideal = load_ideal(args)
    try:
        field = parse_field(args.field)
    except FieldError as exc:
        raise InputError(str(exc)) from None
    max_cells = getattr(args, "max_cells", 100_000_000)
    try:
        result = oracle_betti(
            ideal, args.imax, args.jmax, field=field, max_block_cells=max_cells
        )
    except ResourceLimitError as exc:
        raise MathFailure(str(exc)) from None
    table = result.betti_ideal
    diag = "\n".join(
        f"block i={b.i} degree={b.internal_degree}: dim {b.dim}, "
        f"rank in {b.rank_in}, rank out {b.rank_out}, homology {b.homology}"
        for b in result.blocks
    )
    text = f"field: {field.name}\n{table.render_text()}\n{diag}"
    _emit(
        {
            "command": "oracle",
            "ideal": ideal_to_json(ideal),
            "field": field.name,
            "imax": args.imax,
            "entries": table.to_json_entries(),
            "totals": table.totals(),
            "quotient_entries": result.betti_quotient.to_json_entries(),
            "blocks": [
                {
                    "i": b.i,
                    "degree": b.internal_degree,
                    "dim": b.dim,
                    "rank_in": b.rank_in,
                    "rank_out": b.rank_out,
                }
                for b in result.blocks
            ],
        },
        text,
        args.json,
    )
    return 0


def cmd_tspread(args) -> int:
    ideal = load_ideal(args)
    try:
        t = validate_t(args.t.split(","))
    except (TSpreadError, ValueError) as exc:
        raise InputError(f"bad --t {args.t!r}: {exc}") from None
    if args.closure:
        try:
            closed = tspread_closure(ideal.gens, t)
        except (TSpreadError, ValueError) as exc:
            raise MathFailure(str(exc)) from None
        _emit(
            {
                "command": "tspread-closure",
                "t": list(t),
                "ideal": ideal_to_json(ideal),
                "closure": ideal_to_json(closed),
            },
            format_ideal(closed),
            args.json,
        )
        return 0
    if args.check:
        try:
            ok = is_tspread_strongly_stable(ideal, t)
        except TSpreadError as exc:
            raise MathFailure(str(exc)) from None
        payload = {
            "command": "tspread-check",
            "t": list(t),
            "ideal": ideal_to_json(ideal),
            "tspread_strongly_stable": ok,
        }
        if not ok:
            _emit(payload, "t-spread strongly stable: no", args.json)
            return 1
        lq = lex_lq_order(ideal, t, increasing=args.lex_increasing)
        payload.update(_order_json(lq))
        _emit(
            payload,
            "t-spread strongly stable: yes\n" + _sets_text(lq),
            args.json,
        )
        return 0
    try:
        table = betti_tspread(ideal, t, args.imax)
    except TSpreadError as exc:
        raise MathFailure(str(exc)) from None
    _emit(
        {
            "command": "tspread-betti",
            "t": list(t),
            "ideal": ideal_to_json(ideal),
            "imax": args.imax,
            "entries": table.to_json_entries(),
            "totals": table.totals(),
        },
        table.render_text(),
        args.json,
    )
    return 0


def cmd_poincare(args) -> int:
    ideal = load_ideal(args)
    lq = pick_order(ideal, args)
    series = poincare(lq, args.imax, args.jmax)
    _emit(
        {
            "command": "poincare",
            "ideal": ideal_to_json(ideal),
            **_order_json(lq),
            "imax": series.i_max,
            "jmax": series.j_max,
            "coefficients": [
                {"i": i, "j": j, "coeff": c}
                for (i, j), c in sorted(series.coefficients.items())
            ],
        },
        series.render_text(),
        args.json,
    )
    return 0


def cmd_cxdepth(args) -> int:
    ideal = load_ideal(args)
    lq = pick_order(ideal, args)
    try:
        result = complexity_and_depth(lq)
    except ValueError as exc:
        raise MathFailure(str(exc)) from None
    text = (
        f"cx = {result.cx}\ndepth = {result.depth} "
        "(depth formula assumes an infinite ground field)"
    )
    _emit(
        {
            "command": "cxdepth",
            "ideal": ideal_to_json(ideal),
            **_order_json(lq),
            "cx": result.cx,
            "depth": result.depth,
            "depth_assumes_infinite_field": True,
        },
        text,
        args.json,
    )
    return 0


_HANDLERS = {
    "betti": cmd_betti,
    "lq": cmd_lq,
    "sets": cmd_sets,
    "resolve": cmd_resolve,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "tspread": cmd_tspread,
    "poincare": cmd_poincare,
    "cxdepth": cmd_cxdepth,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MathFailure as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
