"""Generate the closed-form crosscheck report (markdown + JSON).

Runs the pipeline-vs-reference audit at a set of field strengths and writes
``reports/crosscheck.md`` and ``reports/crosscheck.json``.  Every formula
that is flagged anywhere gets a documentation note describing the failure
mode we observe numerically; generation aborts if a flag shows up that has
no note, so the report can never silently carry an undocumented discrepancy.

The flags are expected: the reference expressions are transcribed exactly as
printed, and a subset of them disagrees with the covariance-matrix pipeline
in reproducible, structured ways (common offsets shared by several measures,
entropy arguments below the vacuum floor, negativities that keep running
negative instead of clamping).  The point of the report is to freeze that
pattern, not to hide it.
"""

from __future__ import annotations

import argparse
import json
import math
from pathlib import Path

from cvschwinger.channel import FieldParams
from cvschwinger.closedforms import CROSSCHECK_TOL, crosscheck

REPO_ROOT = Path(__file__).resolve().parents[1]

DEFAULT_X = (0.0, 1.0, 5.0, 13.0)

# One documentation note per formula id that is expected to flag somewhere.
# Shared wording for ids that fail in the same structured way.
_UNI_PMQ_VN = (
    "the printed expression feeds the entropy kernel an argument below the "
    "vacuum floor at every field strength, the free-field limit included, so "
    "it never evaluates; the pipeline computes this measure from the reduced "
    "covariance block instead"
)
_UNI_PQ_VN = (
    "mutual information and both discord directions sit above the pipeline "
    "by one common x-dependent offset, so the shared joint-state term of the "
    "printed form is mis-set while the conditional (classical) terms agree"
)
_BI_SYM_VN = (
    "offset from the pipeline by one common x-dependent amount that is "
    "identical for the (p,q) and (-p,-q) pairs, pointing at a single "
    "mis-set term shared by the printed bilateral first-family forms"
)
_BI_PMQ_VN = (
    "offset from the pipeline by one common x-dependent amount specific to "
    "this pair; the same offset cancels between mutual information and "
    "classical correlation, so both discord directions inherit it unchanged"
)
_BI_I2 = (
    "low by an x-dependent offset shared between the (p,q) and (-p,-q) "
    "second-family mutual informations; for (-p,-q) the printed value turns "
    "negative at larger x, which a mutual information cannot do"
)

FLAG_DOCS = {
    "uni.pmq.D1ab": _UNI_PMQ_VN,
    "uni.pmq.D1ba": _UNI_PMQ_VN,
    "uni.pmq.I1": _UNI_PMQ_VN,
    "uni.pq.D1ab": _UNI_PQ_VN,
    "uni.pq.D1ba": _UNI_PQ_VN,
    "uni.pq.I1": _UNI_PQ_VN,
    "bi.pq.D1ab": _BI_SYM_VN,
    "bi.pq.D1ba": _BI_SYM_VN,
    "bi.pq.I1": _BI_SYM_VN,
    "bi.mpmq.D1ab": _BI_SYM_VN,
    "bi.mpmq.D1ba": _BI_SYM_VN,
    "bi.mpmq.I1": _BI_SYM_VN,
    "bi.pmq.D1ab": _BI_PMQ_VN,
    "bi.pmq.D1ba": _BI_PMQ_VN,
    "bi.pmq.I1": _BI_PMQ_VN,
    "bi.pq.I2": _BI_I2,
    "bi.mpmq.I2": _BI_I2,
    "bi.pq.N1": (
        "matches the pipeline while the pair is entangled and only flags "
        "past the death point, where the printed form keeps decreasing "
        "instead of clamping at zero"
    ),
    "bi.pmq.N1": (
        "negative for a pair the channel keeps separable, and its logarithm "
        "argument leaves the domain at larger x; the pipeline reports the "
        "clamped value 0"
    ),
    "bi.mpmq.N1": (
        "negative for a pair the channel keeps separable; the pipeline "
        "reports the clamped value 0"
    ),
}


def _num(value):
    """JSON-safe float: non-finite values become null."""
    return float(value) if math.isfinite(value) else None


def _fmt(value):
    if not math.isfinite(value):
        return "nan"
    return "%.9g" % value


def build_report(s, x_values):
    entries = []
    summary = {}
    flagged = set()
    for x in x_values:
        rep = crosscheck(s, FieldParams(x))
        summary[x] = {"n_pass": rep.n_pass, "n_flag": rep.n_flag}
        for e in rep.entries:
            note = e.note
            if e.verdict == "flag":
                flagged.add(e.formula_id)
                doc = FLAG_DOCS.get(e.formula_id)
                if doc is None:
                    raise SystemExit(
                        "undocumented flag %r at x=%g; add a note to FLAG_DOCS"
                        % (e.formula_id, x)
                    )
                note = "%s; %s" % (e.note, doc) if e.note else doc
            entries.append({
                "x": x,
                "formula_id": e.formula_id,
                "scenario": e.scenario,
                "pair": e.pair,
                "family": e.family,
                "measure": e.measure,
                "pipeline": _num(e.pipeline),
                "reference": _num(e.reference),
                "abs_diff": _num(e.abs_diff),
                "verdict": e.verdict,
                "note": note,
            })
    return entries, summary, flagged


def render_markdown(s, x_values, entries, summary, flagged):
    lines = [
        "# Closed-form crosscheck report",
        "",
        "Pipeline (covariance-matrix route) versus the reference closed forms,",
        "transcribed as printed, at s = %s and tolerance %g." % (s, CROSSCHECK_TOL),
        "Generated by `scripts/make_crosscheck_report.py`; regenerate with",
        "`python scripts/make_crosscheck_report.py`.",
        "",
    ]
    for x in x_values:
        cnt = summary[x]
        lines.append("## x = %g (%d pass, %d flag)" % (x, cnt["n_pass"], cnt["n_flag"]))
        lines.append("")
        lines.append("| formula | pipeline | reference | abs diff | verdict |")
        lines.append("|---|---|---|---|---|")
        for e in entries:
            if e["x"] != x:
                continue
            lines.append("| %s | %s | %s | %s | %s |" % (
                e["formula_id"],
                _fmt(e["pipeline"] if e["pipeline"] is not None else math.nan),
                _fmt(e["reference"] if e["reference"] is not None else math.nan),
                _fmt(e["abs_diff"] if e["abs_diff"] is not None else math.nan),
                e["verdict"],
            ))
        lines.append("")
    lines.append("## Flag documentation")
    lines.append("")
    lines.append(
        "Every formula flagged above, with the failure mode observed "
        "numerically.  The reference expressions are kept exactly as "
        "printed; the pipeline value is the one the package reports."
    )
    lines.append("")
    for fid in sorted(flagged):
        lines.append("- **%s**: %s" % (fid, FLAG_DOCS[fid]))
    lines.append("")
    return "\n".join(lines)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--s", type=float, default=1.0)
    parser.add_argument("--x", type=float, action="append", default=None,
                        help="field strength (repeatable; default %s)" % (DEFAULT_X,))
    parser.add_argument("--out-dir", default=str(REPO_ROOT / "reports"))
    args = parser.parse_args(argv)

    x_values = tuple(args.x) if args.x else DEFAULT_X
    entries, summary, flagged = build_report(args.s, x_values)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = {
        "s": args.s,
        "tolerance": CROSSCHECK_TOL,
        "x_values": list(x_values),
        "summary": {repr(x): summary[x] for x in x_values},
        "entries": entries,
    }
    (out_dir / "crosscheck.json").write_text(
        json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    (out_dir / "crosscheck.md").write_text(
        render_markdown(args.s, x_values, entries, summary, flagged),
        encoding="utf-8")

    for x in x_values:
        print("x=%-6g %d pass / %d flag" % (x, summary[x]["n_pass"], summary[x]["n_flag"]))
    print("%d distinct formulas flagged, all documented" % len(flagged))
    print("wrote %s and %s" % (out_dir / "crosscheck.md", out_dir / "crosscheck.json"))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
