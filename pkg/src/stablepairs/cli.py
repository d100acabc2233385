"""Command-line front end for the stable-pairs library.

Subcommands:

* ``js``         -- one equivariant stable-pair invariant P(n, d) on a local
                    curve geometry, as canonical text or a JSON report.
* ``verify``     -- sweep the closed formula over a (d, n/d) grid and compare
                    every value against the conjectured 1/(d! l3^d) / zero.
* ``residues``   -- certify the vanishing of the n = 2d invariant through its
                    integer-point residues.
* ``series pt``  -- expand a stable-pair generating series from a table of
                    genus-zero/one invariants, cross-checked two ways.
* ``series wallcheck`` -- verify the wall-crossing identities across one wall.
* ``series gvinvert``  -- invert genus-zero/one Gromov-Witten data back to
                    integer-type invariants, with a round-trip check.

Exit codes: 0 success, 1 mathematical mismatch (counterexample, failed
identity, golden-file disagreement), 2 usage or malformed input, 3 internal
error (a trivial weight reached an Euler class).

Output is deterministic: byte-identical across worker counts unless
``--timings`` is passed.  The default worker count comes from the
``STABLEPAIRS_JOBS`` environment variable.
"""

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .equivariant import SplitGeometry, TrivialWeightError
from .localcurve import (
    GEOM_STANDARD,
    js_invariant_closed_form,
    js_invariant_enumerated,
    residue_vanishing_check,
    verify_conjecture,
)
from .ratfun import ratfun_parse, ratfun_str
from .series import (
    ClassLattice,
    GVTable,
    TParam,
    WallError,
    frac_str,
    gv0_from_gw,
    gv1_extract,
    gw0_from_gv0,
    gw1_assemble,
    parse_frac,
    pt_coeff_from_gv,
    pt_series_from_gv,
    wall_jump_check,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

ARITY = 4


def _fail_usage(message):
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _fail_mismatch(message):
    print(f"mismatch: {message}", file=sys.stderr)
    return EXIT_MISMATCH


def _default_jobs():
    raw = os.environ.get("STABLEPAIRS_JOBS", "1")
    try:
        return int(raw)
    except ValueError:
        return 1


def _dump_json(payload):
    print(json.dumps(payload, indent=2, sort_keys=True))


def _parse_beta_key(key):
    beta = json.loads(key)
    if not isinstance(beta, list) or not all(isinstance(b, int) for b in beta):
        raise ValueError(f"bad curve-class key {key!r}")
    return tuple(beta)


# -- js ------------------------------------------------------------------------------


def _js_report(result, timings, audit):
    report = result.to_report(timings=timings)
    if audit and result.contributions is not None:
        report["contributions"] = [
            {"fixed_point": label, "value": ratfun_str(value)}
            for label, value in result.contributions
        ]
    return report


def _golden_js(path, result):
    """Create or compare a golden file for the ``js`` value.

    The stored form is the canonical single-line text of the invariant; the
    comparison reparses it, so any print-equivalent file passes.
    """
    path = Path(path)
    rendered = ratfun_str(result.value)
    if not path.exists():
        path.write_text(rendered + "\n", encoding="utf-8")
        print(f"golden file created: {path}", file=sys.stderr)
        return EXIT_OK
    stored = path.read_text(encoding="utf-8").strip()
    try:
        expected = ratfun_parse(stored, ARITY)
    except ValueError as exc:
        return _fail_usage(f"golden file {path} does not parse: {exc}")
    if expected != result.value:
        return _fail_mismatch(
            f"golden file {path} holds {stored}, computed {rendered}"
        )
    return EXIT_OK


def cmd_js(args):
    degrees = (args.l1, args.l2, args.l3)
    if sum(degrees) != -2:
        return _fail_usage(
            f"geometry degrees must sum to -2 (Calabi-Yau condition), got {degrees}"
        )
    if args.jobs < 1:
        return _fail_usage("--jobs must be at least 1")
    geom = SplitGeometry(*degrees)
    if args.method == "closed" and geom.degrees != GEOM_STANDARD.degrees:
        return _fail_usage(
            "the closed formula is specific to the (-1, -1, 0) geometry"
        )
    try:
        if args.method == "closed":
            result = js_invariant_closed_form(
                args.n, args.d, jobs=args.jobs, audit=args.audit
            )
        else:
            result = js_invariant_enumerated(
                args.n, args.d, geom, jobs=args.jobs, audit=args.audit
            )
    except ValueError as exc:
        return _fail_usage(str(exc))
    except TrivialWeightError as exc:
        print(f"internal: {exc}", file=sys.stderr)
        return EXIT_INTERNAL

    if args.format == "json":
        _dump_json(_js_report(result, args.timings, args.audit))
    else:
        if args.audit and result.contributions is not None:
            for label, value in result.contributions:
                print(f"{label}: {ratfun_str(value)}")
        print(ratfun_str(result.value))
    if args.golden:
        return _golden_js(args.golden, result)
    return EXIT_OK


# -- verify --------------------------------------------------------------------------


def _load_checkpoint(path):
    rows_done = {}
    if path.exists():
        with path.open(encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                row = json.loads(line)
                rows_done[(row["n"], row["d"])] = row
    return rows_done


def cmd_verify(args):
    if args.d_max < 1 or args.ratio_max < 1:
        return _fail_usage("--d-max and --ratio-max must be at least 1")
    if args.jobs < 1:
        return _fail_usage("--jobs must be at least 1")
    rows_done = {}
    on_row = None
    handle = None
    if args.checkpoint:
        path = Path(args.checkpoint)
        try:
            rows_done = _load_checkpoint(path)
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            return _fail_usage(f"checkpoint {path} is malformed: {exc}")
        handle = path.open("a", encoding="utf-8")

        def on_row(row):
            handle.write(json.dumps(row, sort_keys=True) + "\n")
            handle.flush()

    try:
        report = verify_conjecture(
            args.d_max, args.ratio_max, jobs=args.jobs,
            rows_done=rows_done, on_row=on_row,
        )
    finally:
        if handle is not None:
            handle.close()

    if args.format == "json":
        _dump_json(report)
    else:
        for row in report["rows"]:
            print(
                f"n={row['n']} d={row['d']} value={row['value']} "
                f"status={row['conjecture_status']}"
            )
        verdict = "OK" if report["ok"] else "COUNTEREXAMPLE"
        print(f"checked {len(report['rows'])} invariants: {verdict}")
    return EXIT_OK if report["ok"] else EXIT_MISMATCH


# -- residues ------------------------------------------------------------------------


def cmd_residues(args):
    if args.d < 1:
        return _fail_usage("--d must be at least 1")
    report = residue_vanishing_check(args.d)
    if args.format == "json":
        _dump_json(report)
    else:
        for row in report["poles"]:
            status = "ok" if row["ok"] else "NONZERO"
            print(
                f"m={row['m']} residue={row['residue']} "
                f"printed={row['printed_form']} {status}"
            )
        print(f"phi identically zero: {report['phi_is_zero']}")
        print(f"residue check for n={report['n']}, d={report['d']}: "
              f"{'OK' if report['ok'] else 'FAILED'}")
    return EXIT_OK if report["ok"] else EXIT_MISMATCH


# -- series --------------------------------------------------------------------------


def _load_gv_table(path, deg_max):
    with open(path, encoding="utf-8") as handle:
        data = json.load(handle)
    return GVTable.from_json(data, dmax=deg_max)


def _parse_t(text, side):
    if text == "inf":
        return TParam.infinity()
    if text == "0+":
        return TParam.zero_plus()
    value = parse_frac(text)
    if value <= 0:
        raise ValueError(f"stability parameter must be positive, got {value}")
    if side == "plus":
        return TParam.plus(value)
    if side == "minus":
        return TParam.minus(value)
    return TParam.exact(value)


def cmd_series_pt(args):
    try:
        gv = _load_gv_table(args.gv_file, args.deg_max)
        t = _parse_t(args.t, args.side)
    except (OSError, json.JSONDecodeError, ValueError, KeyError, TypeError) as exc:
        return _fail_usage(f"cannot read inputs: {exc}")
    if args.n_max < 0:
        return _fail_usage("--n-max must be nonnegative")

    try:
        series = pt_series_from_gv(t, gv, args.n_max)
        memo = {}
        rows = []
        consistent = True
        for beta in gv.lattice.classes():
            for n in range(args.n_max + 1):
                from_series = math.factorial(n) * series.coefficient(n, beta)
                from_recursion = pt_coeff_from_gv(t, n, beta, gv, memo)
                if from_series != from_recursion:
                    consistent = False
                if from_series or from_recursion:
                    rows.append(
                        {
                            "n": n,
                            "beta": list(beta),
                            "invariant": frac_str(from_recursion),
                            "series_product": frac_str(from_series),
                            "ok": from_series == from_recursion,
                        }
                    )
    except WallError as exc:
        return _fail_usage(f"{exc} (pass --side plus or --side minus)")

    _dump_json(
        {
            "t": t.label(),
            "n_max": args.n_max,
            "rank": gv.lattice.rank,
            "omega": list(gv.lattice.omega),
            "deg_max": gv.lattice.dmax,
            "coefficients": rows,
            "ok": consistent,
        }
    )
    return EXIT_OK if consistent else EXIT_MISMATCH


def cmd_series_wallcheck(args):
    try:
        gv = _load_gv_table(args.gv_file, args.deg_max)
        t0 = parse_frac(args.t0)
        if t0 <= 0:
            raise ValueError(f"wall location must be positive, got {t0}")
    except (OSError, json.JSONDecodeError, ValueError, KeyError, TypeError) as exc:
        return _fail_usage(f"cannot read inputs: {exc}")
    if args.n_max < 0:
        return _fail_usage("--n-max must be nonnegative")
    report = wall_jump_check(t0, gv, args.n_max)
    _dump_json(report)
    return EXIT_OK if report["ok"] else EXIT_MISMATCH


def _load_gw_data(path, deg_max):
    with open(path, encoding="utf-8") as handle:
        data = json.load(handle)
    rank = int(data["rank"])
    omega = tuple(int(w) for w in data["omega"])
    tables = {}
    for name in ("gw0", "gw1", "n0_c2"):
        raw = data.get(name) or {}
        tables[name] = {_parse_beta_key(k): parse_frac(v) for k, v in raw.items()}
    meeting = {}
    for key, v in (data.get("meeting") or {}).items():
        left, _, right = key.partition("|")
        if not right:
            raise ValueError(f"bad meeting key {key!r}")
        meeting[(_parse_beta_key(left), _parse_beta_key(right))] = parse_frac(v)
    if deg_max is None:
        degs = [
            sum(w * b for w, b in zip(omega, beta))
            for table in tables.values()
            for beta in table
        ]
        degs.extend(
            sum(w * (b1 + b2) for w, b1, b2 in zip(omega, left, right))
            for left, right in meeting
        )
        deg_max = max(degs, default=0)
    lattice = ClassLattice(rank, omega, deg_max)
    return lattice, tables["gw0"], tables["gw1"], tables["n0_c2"], meeting


def cmd_series_gvinvert(args):
    try:
        lattice, gw0, gw1, n0_c2, meeting = _load_gw_data(
            args.gv_file, args.deg_max
        )
    except (OSError, json.JSONDecodeError, ValueError, KeyError, TypeError) as exc:
        return _fail_usage(f"cannot read inputs: {exc}")

    n0 = gv0_from_gw(gw0, lattice)
    n1 = gv1_extract(gw1, n0_c2, meeting, lattice)

    round_trip_ok = True
    gw0_back = gw0_from_gv0(n0, lattice)
    if gw0_back != {b: v for b, v in gw0.items() if v}:
        round_trip_ok = False
        print("mismatch: genus-zero inversion does not round-trip", file=sys.stderr)
    gw1_back = gw1_assemble(n1, n0_c2, meeting, lattice)
    if gw1_back != {b: v for b, v in gw1.items() if v}:
        round_trip_ok = False
        print("mismatch: genus-one inversion does not round-trip", file=sys.stderr)

    _dump_json(
        {
            "rank": lattice.rank,
            "omega": list(lattice.omega),
            "deg_max": lattice.dmax,
            "n0": {json.dumps(list(b)): frac_str(v) for b, v in sorted(n0.items())},
            "n1": {json.dumps(list(b)): frac_str(v) for b, v in sorted(n1.items())},
            "round_trip_ok": round_trip_ok,
        }
    )
    return EXIT_OK if round_trip_ok else EXIT_MISMATCH


# -- parser --------------------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="stablepairs",
        description="Equivariant stable-pair invariants of local curves and "
        "wall-crossing series checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    js = sub.add_parser("js", help="compute one invariant P(n, d)")
    js.add_argument("--n", type=int, required=True, help="Euler characteristic")
    js.add_argument("--d", type=int, required=True, help="curve degree")
    js.add_argument("--l1", type=int, default=-1, help="degree of L1 (default -1)")
    js.add_argument("--l2", type=int, default=-1, help="degree of L2 (default -1)")
    js.add_argument("--l3", type=int, default=0, help="degree of L3 (default 0)")
    js.add_argument(
        "--method", choices=("enum", "closed"), default="enum",
        help="fixed-point enumeration (default) or the closed product formula",
    )
    js.add_argument("--format", choices=("text", "json"), default="text")
    js.add_argument("--jobs", type=int, default=_default_jobs())
    js.add_argument(
        "--golden", metavar="PATH",
        help="compare against (or create) a golden value file",
    )
    js.add_argument(
        "--audit", action="store_true",
        help="also report the per-fixed-point contributions",
    )
    js.add_argument(
        "--timings", action="store_true",
        help="include wall-clock timings in JSON output (breaks byte determinism)",
    )
    js.set_defaults(func=cmd_js)

    verify = sub.add_parser(
        "verify", help="sweep P(n, d) against the conjectured values"
    )
    verify.add_argument("--d-max", type=int, required=True)
    verify.add_argument("--ratio-max", type=int, required=True)
    verify.add_argument("--jobs", type=int, default=_default_jobs())
    verify.add_argument(
        "--checkpoint", metavar="PATH",
        help="JSON-lines file of finished rows; appended to, read to resume",
    )
    verify.add_argument("--format", choices=("text", "json"), default="text")
    verify.set_defaults(func=cmd_verify)

    residues = sub.add_parser(
        "residues", help="residue certificate that P(2d, d) vanishes"
    )
    residues.add_argument("--d", type=int, required=True)
    residues.add_argument("--format", choices=("text", "json"), default="text")
    residues.set_defaults(func=cmd_residues)

    series = sub.add_parser("series", help="generating-series checks")
    series_sub = series.add_subparsers(dest="series_command", required=True)

    pt = series_sub.add_parser(
        "pt", help="stable-pair series from a table of integer-type invariants"
    )
    pt.add_argument("--gv-file", required=True, metavar="PATH")
    pt.add_argument("--n-max", type=int, required=True)
    pt.add_argument("--deg-max", type=int, default=None)
    pt.add_argument(
        "--t", required=True,
        help="stability parameter: a positive rational, 'inf', or '0+'",
    )
    pt.add_argument(
        "--side", choices=("exact", "plus", "minus"), default="exact",
        help="which side of t to take when t sits on a wall",
    )
    pt.set_defaults(func=cmd_series_pt)

    wallcheck = series_sub.add_parser(
        "wallcheck", help="verify the wall-crossing identities across one wall"
    )
    wallcheck.add_argument("--gv-file", required=True, metavar="PATH")
    wallcheck.add_argument("--t0", required=True, help="wall location (rational)")
    wallcheck.add_argument("--n-max", type=int, required=True)
    wallcheck.add_argument("--deg-max", type=int, default=None)
    wallcheck.set_defaults(func=cmd_series_wallcheck)

    gvinvert = series_sub.add_parser(
        "gvinvert",
        help="recover integer-type invariants from Gromov-Witten series data",
    )
    gvinvert.add_argument("--gv-file", required=True, metavar="PATH")
    gvinvert.add_argument("--deg-max", type=int, default=None)
    gvinvert.set_defaults(func=cmd_series_gvinvert)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
