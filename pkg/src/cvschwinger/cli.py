"""Command-line front end for the pair-creation correlation pipeline.

Subcommands mirror the library layers: ``validate`` checks physicality of the
pipeline output, ``correlations`` prints every measure for every mode pair at
one working point, ``sweep`` and ``monogamy`` tabulate field-strength scans,
``sudden-death`` locates the entanglement zero, ``oracle-check`` compares the
Gaussian route against the truncated number-basis oracle, and ``crosscheck``
audits the pipeline against the published closed forms.

Tables are emitted as CSV (default) or JSON, to stdout or ``--out``.  Floats
are printed with repr(), the shortest digit string that round-trips, so a
fixed configuration produces byte-identical files on any platform.  The
environment variable CVS_LOG_BASE ("2" or "e") switches the logarithm base of
the von Neumann measure family; the Renyi-2 family is always in nats.

Exit codes: 0 success, 2 bad usage or invalid input, 3 numerical failure,
4 a tolerance check flagged a discrepancy (suppressed by --report-only).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .channel import FieldParams, apply_bilateral, apply_unilateral, bogoliubov, reduce_pair
from .closedforms import PAIR_KEYS, crosscheck, sudden_death_reference
from .errors import (
    CvschwingerError,
    DomainError,
    NumericalError,
    ShapeError,
    SweepError,
    TruncationError,
)
from .fock import oracle_measures, pipeline_state
from .gaussian import check_physical, symplectic_eigenvalues, tmsv
from .renyi2 import entropy_renyi2, mutual_information_renyi2, renyi2_report
from .sweep import (
    DEFAULT_PAIRS,
    FAMILIES,
    QUANTITIES,
    GridSpec,
    SweepConfig,
    find_sudden_death,
    run_sweep,
    sweep_point,
)
from .vn import log_base, log_negativity, mutual_information_vn, ppt_minimum, vn_report

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_DISCREPANCY = 4

_SCENARIO_ALIASES = {
    "uni": "unilateral",
    "bi": "bilateral",
    "unilateral": "unilateral",
    "bilateral": "bilateral",
}

_APPLY = {"unilateral": apply_unilateral, "bilateral": apply_bilateral}

# Column tokens per measure family.  The negativity/entanglement balance is
# an extension beyond the three monogamy quantities, hence the _ext suffix
# on its sweep header.
_MEASURE_COLUMNS = {
    "von_neumann": (
        ("N1", "negativity"),
        ("D1ab", "discord_a_given_b"),
        ("D1ba", "discord_b_given_a"),
        ("I1", "mutual_info"),
    ),
    "renyi2": (
        ("E2", "entanglement"),
        ("D2ab", "discord_a_given_b"),
        ("D2ba", "discord_b_given_a"),
        ("I2", "mutual_info"),
    ),
}

_BALANCE_TOKEN = {
    ("von_neumann", "D(A|B)"): "dD1ab",
    ("von_neumann", "D(B|A)"): "dD1ba",
    ("von_neumann", "I"): "dI1",
    ("von_neumann", "N"): "dN1_ext",
    ("renyi2", "D(A|B)"): "dD2ab",
    ("renyi2", "D(B|A)"): "dD2ba",
    ("renyi2", "I"): "dI2",
    ("renyi2", "N"): "dE2_ext",
}


class _Parser(argparse.ArgumentParser):
    """argparse with single-line errors on stderr and exit code 2."""

    def error(self, message):
        sys.stderr.write("cvschwinger: error: %s\n" % " ".join(message.split()))
        raise SystemExit(EXIT_USAGE)


def _fail(code, exc):
    msg = " ".join(("%s: %s" % (type(exc).__name__, exc)).split())
    sys.stderr.write("cvschwinger: error: %s\n" % msg)
    return code


def _scenario(name):
    try:
        return _SCENARIO_ALIASES[name]
    except KeyError:
        raise DomainError("scenario must be uni or bi, got %r" % (name,))


def _parse_grid(text):
    parts = text.split(":")
    if len(parts) != 4:
        raise DomainError("grid must be min:max:count:log|lin, got %r" % (text,))
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise DomainError("grid fields must be number:number:int:log|lin, got %r" % (text,))
    return GridSpec(start, stop, count, spacing=parts[3])


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return repr(float(value))


def _base_note():
    base = log_base()
    return "von Neumann family log base %s; Renyi-2 family natural log" % (
        "2" if base == 2.0 else "e"
    )


def _render(columns, rows, meta, fmt):
    if fmt == "json":
        payload = {
            "meta": meta,
            "columns": list(columns),
            "rows": [list(row) for row in rows],
        }
        return json.dumps(payload, indent=2) + "\n"
    lines = ["# %s=%s" % (k, v) for k, v in meta.items()]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_rows(report, family):
    return [getattr(report, attr) for _, attr in _MEASURE_COLUMNS[family]]


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args):
    scenario = _scenario(args.scenario)
    out = _APPLY[scenario](args.s, FieldParams(args.x))
    columns = ("object", "nu_min", "ppt_min", "physical")
    rows = []
    full = check_physical(out.cm)
    rows.append(("output_4mode", full.min_symplectic_eigenvalue, None,
                 "yes" if full.ok else "no"))
    ok = full.ok
    std_in = tmsv(args.s)
    rows.append(("input_pq", min(symplectic_eigenvalues(std_in.to_cm())),
                 ppt_minimum(std_in), "yes"))
    for key in DEFAULT_PAIRS[scenario]:
        std = reduce_pair(out, PAIR_KEYS[key])
        rep = check_physical(std.to_cm())
        ok = ok and rep.ok
        rows.append((key, rep.min_symplectic_eigenvalue, ppt_minimum(std),
                     "yes" if rep.ok else "no"))
    meta = {"command": "validate", "scenario": scenario,
            "s": _fmt(args.s), "x": _fmt(args.x)}
    _emit(_render(columns, rows, meta, args.format), args.out)
    if not ok:
        sys.stderr.write("cvschwinger: error: NumericalError: unphysical covariance\n")
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_correlations(args):
    scenario = _scenario(args.scenario)
    out = _APPLY[scenario](args.s, FieldParams(args.x))
    columns = ["pair"]
    for fam in FAMILIES:
        columns += [token for token, _ in _MEASURE_COLUMNS[fam]]
    rows = []
    targets = [("in", tmsv(args.s))]
    targets += [(key, reduce_pair(out, PAIR_KEYS[key])) for key in DEFAULT_PAIRS[scenario]]
    for name, std in targets:
        row = [name]
        row += _report_rows(vn_report(std), "von_neumann")
        row += _report_rows(renyi2_report(std), "renyi2")
        rows.append(row)
    meta = {"command": "correlations", "scenario": scenario,
            "s": _fmt(args.s), "x": _fmt(args.x), "bases": _base_note()}
    _emit(_render(columns, rows, meta, args.format), args.out)
    return EXIT_OK


def _load_sweep_config(args):
    raw = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        unknown = set(raw) - {"scenario", "s", "grid", "families", "pairs", "parallelism"}
        if unknown:
            raise DomainError("unknown config keys %s" % sorted(unknown))
    if args.scenario is not None:
        raw["scenario"] = args.scenario
    if args.s is not None:
        raw["s"] = args.s
    if args.grid is not None:
        raw["grid"] = args.grid
    if "scenario" not in raw or "s" not in raw:
        raise DomainError("sweep needs --s and --scenario (flags or config file)")
    scenario = _scenario(raw["scenario"])
    if isinstance(raw.get("grid"), str):
        grid = _parse_grid(raw["grid"])
    elif isinstance(raw.get("grid"), dict):
        g = raw["grid"]
        unknown = set(g) - {"min", "max", "count", "spacing"}
        if unknown:
            raise DomainError("unknown grid keys %s" % sorted(unknown))
        grid = GridSpec(float(g["min"]), float(g["max"]), int(g["count"]),
                        spacing=g.get("spacing", "log"))
    elif isinstance(raw.get("grid"), GridSpec):
        grid = raw["grid"]
    else:
        grid = GridSpec(1.0e-2, 1.0e3, 200)
    kwargs = {}
    if "families" in raw:
        kwargs["families"] = tuple(raw["families"])
    if "pairs" in raw:
        kwargs["pairs"] = tuple(raw["pairs"])
    if "parallelism" in raw:
        kwargs["parallelism"] = int(raw["parallelism"])
    return SweepConfig(scenario=scenario, s=float(raw["s"]), grid=grid, **kwargs)


def _sweep_columns(cfg):
    columns = ["x"]
    for key in cfg.pairs:
        for fam in cfg.families:
            columns += ["%s_%s" % (token, key) for token, _ in _MEASURE_COLUMNS[fam]]
    for fam in cfg.families:
        columns += [_BALANCE_TOKEN[(fam, q)] for q in QUANTITIES]
    return columns


def _sweep_rows(cfg, records):
    rows = []
    for rec in records:
        row = [rec.x]
        for key in cfg.pairs:
            if "von_neumann" in cfg.families:
                row += _report_rows(rec.vn[key], "von_neumann")
            if "renyi2" in cfg.families:
                row += _report_rows(rec.renyi2[key], "renyi2")
        row += [score.value for score in rec.monogamy]
        rows.append(row)
    return rows


def cmd_sweep(args):
    cfg = _load_sweep_config(args)
    records = run_sweep(cfg)
    meta = {"command": "sweep", "scenario": cfg.scenario, "s": _fmt(cfg.s),
            "grid": "%s:%s:%d:%s" % (_fmt(cfg.grid.start), _fmt(cfg.grid.stop),
                                     cfg.grid.count, cfg.grid.spacing),
            "pairs": "+".join(cfg.pairs), "bases": _base_note()}
    _emit(_render(_sweep_columns(cfg), _sweep_rows(cfg, records), meta, args.format),
          args.out)
    return EXIT_OK


def cmd_monogamy(args):
    scenario = _scenario(args.scenario)
    if args.grid is not None:
        grid = _parse_grid(args.grid)
    elif args.x is not None:
        grid = None
    else:
        raise DomainError("monogamy needs --x or --grid")
    columns = ["x"] + [_BALANCE_TOKEN[(fam, q)] for fam in FAMILIES for q in QUANTITIES]
    if grid is None:
        records = [sweep_point(scenario, args.s, args.x)]
    else:
        cfg = SweepConfig(scenario=scenario, s=args.s, grid=grid)
        records = run_sweep(cfg)
    rows = [[rec.x] + [score.value for score in rec.monogamy] for rec in records]
    meta = {"command": "monogamy", "scenario": scenario, "s": _fmt(args.s),
            "bases": _base_note()}
    _emit(_render(columns, rows, meta, args.format), args.out)
    return EXIT_OK


def cmd_sudden_death(args):
    scenario = _scenario(args.scenario)
    x_star = find_sudden_death(args.s, scenario=scenario)
    columns = ("quantity", "value")
    rows = [("x_star", x_star)]
    meta = {"command": "sudden-death", "scenario": scenario, "s": _fmt(args.s)}
    if scenario == "bilateral":
        ref = sudden_death_reference(args.s)
        rows.append(("reference_closed_form", ref))
        rows.append(("rel_diff", abs(x_star - ref) / ref))
    _emit(_render(columns, rows, meta, args.format), args.out)
    return EXIT_OK


def cmd_oracle_check(args):
    scenario = _scenario(args.scenario)
    if scenario == "bilateral" and (args.s > 0.5 or args.n_max > 25):
        raise DomainError(
            "bilateral oracle checks are limited to s <= 0.5 and n_max <= 25 "
            "(joint Fock dimension grows as (n_max+1)^4)"
        )
    fp = FieldParams(args.x)
    state = pipeline_state(args.s, bogoliubov(fp), scenario, args.n_max)
    out = _APPLY[scenario](args.s, fp)
    columns = ("pair", "measure", "oracle", "gaussian", "abs_diff")
    rows = []
    worst = 0.0
    for key in DEFAULT_PAIRS[scenario]:
        pair = PAIR_KEYS[key]
        fock_vals = oracle_measures(state, pair)
        std = reduce_pair(out, pair)
        gauss_vals = {
            "negativity": log_negativity(std),
            "mutual_info_vn": mutual_information_vn(std),
            "mutual_info_renyi2": mutual_information_renyi2(std),
            "renyi2_entropy_a": math.log(std.a),
            "renyi2_entropy_b": math.log(std.b),
            "renyi2_entropy_joint": entropy_renyi2(std),
        }
        for measure, gauss in gauss_vals.items():
            diff = abs(fock_vals[measure] - gauss)
            worst = max(worst, diff)
            rows.append((key, measure, fock_vals[measure], gauss, diff))
    meta = {"command": "oracle-check", "scenario": scenario, "s": _fmt(args.s),
            "x": _fmt(args.x), "n_max": str(args.n_max), "tol": _fmt(args.tol),
            "bases": _base_note()}
    _emit(_render(columns, rows, meta, args.format), args.out)
    if worst > args.tol and not args.report_only:
        sys.stderr.write(
            "cvschwinger: error: oracle disagreement %s exceeds tol %s\n"
            % (_fmt(worst), _fmt(args.tol))
        )
        return EXIT_DISCREPANCY
    return EXIT_OK


def cmd_crosscheck(args):
    report = crosscheck(args.s, FieldParams(args.x))
    columns = ("formula_id", "measure", "pipeline", "reference", "abs_diff",
               "verdict", "note")
    rows = [
        (e.formula_id, e.measure, e.pipeline, e.reference, e.abs_diff, e.verdict, e.note)
        for e in report.entries
    ]
    meta = {"command": "crosscheck", "s": _fmt(args.s), "x": _fmt(args.x),
            "tol": _fmt(report.tolerance),
            "n_pass": str(report.n_pass), "n_flag": str(report.n_flag)}
    _emit(_render(columns, rows, meta, args.format), args.out)
    if report.n_flag and not args.report_only:
        sys.stderr.write(
            "cvschwinger: error: %d reference formula(s) flagged beyond tol\n"
            % report.n_flag
        )
        return EXIT_DISCREPANCY
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_common(sub, s_default=None, scenario=True, fmt=True):
    sub.add_argument("--s", type=float, default=s_default, required=s_default is None,
                     help="two-mode squeezing of the input state")
    if scenario:
        sub.add_argument("--scenario", choices=sorted(_SCENARIO_ALIASES),
                         default="uni", help="which modes see the field")
    if fmt:
        sub.add_argument("--format", choices=("csv", "json"), default="csv")
        sub.add_argument("--out", default=None, metavar="PATH",
                         help="write the table here instead of stdout")


def build_parser():
    parser = _Parser(
        prog="cvschwinger",
        description="Two-mode Gaussian correlations under constant-field pair creation.",
        epilog="Set CVS_LOG_BASE=2|e to pick the von Neumann family log base.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[], help="physicality of the pipeline output")
    _add_common(p)
    p.add_argument("--x", type=float, required=True, help="field strength")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("correlations", help="all measures for all pairs at one point")
    _add_common(p)
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(func=cmd_correlations)

    p = sub.add_parser("sweep", help="field-strength scan (config file, flags override)")
    p.add_argument("config", nargs="?", default=None, help="JSON sweep config")
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--scenario", choices=sorted(_SCENARIO_ALIASES), default=None)
    p.add_argument("--grid", default=None, metavar="MIN:MAX:COUNT:log|lin")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, metavar="PATH")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("monogamy", help="balance columns only, one x or a grid")
    _add_common(p)
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--grid", default=None, metavar="MIN:MAX:COUNT:log|lin")
    p.set_defaults(func=cmd_monogamy)

    p = sub.add_parser("sudden-death", help="field strength where entanglement dies")
    _add_common(p)
    p.set_defaults(func=cmd_sudden_death, scenario="bi")

    p = sub.add_parser("oracle-check", help="Gaussian pipeline vs number-basis oracle")
    _add_common(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--n-max", type=int, default=40, dest="n_max")
    p.add_argument("--tol", type=float, default=1.0e-4)
    p.add_argument("--report-only", action="store_true", dest="report_only",
                   help="always exit 0, just print the table")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("crosscheck", help="pipeline vs published closed forms")
    _add_common(p, scenario=False)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--report-only", action="store_true", dest="report_only")
    p.set_defaults(func=cmd_crosscheck)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ShapeError) as exc:
        return _fail(EXIT_USAGE, exc)
    except (NumericalError, TruncationError, SweepError) as exc:
        return _fail(EXIT_NUMERICAL, exc)
    except CvschwingerError as exc:
        return _fail(EXIT_NUMERICAL, exc)
    except OSError as exc:
        return _fail(EXIT_USAGE, exc)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        return _fail(EXIT_USAGE, exc)


if __name__ == "__main__":
    sys.exit(main())
