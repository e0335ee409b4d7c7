import math

import pytest

from cvschwinger.channel import FieldParams
from cvschwinger.closedforms import (
    CROSSCHECK_TOL,
    PAIR_KEYS,
    crosscheck,
    reference_correlations,
    sudden_death_reference,
)
from cvschwinger.errors import DomainError

# Empirical verdict pattern at s = 1, frozen.  The flags are stable
# documented disagreements between the printed reference expressions and
# the symplectic pipeline; see the per-entry notes in the generated report.
ALWAYS_PASS = {
    "uni.pq.N1",
    "uni.pq.I2",
    "uni.pmq.N1",
    "uni.pmq.I2",
    "bi.pmq.I2",
    "uni.cons.I2",
}
FLAGGED_AT_ZERO = {"uni.pmq.D1ab", "uni.pmq.D1ba", "uni.pmq.I1"}


def _ids(entries):
    return {e.formula_id for e in entries}


def test_sudden_death_reference_value():
    # pi / ln coth(s) at s = 1
    want = math.pi / math.log(1.0 / math.tanh(1.0))
    assert sudden_death_reference(1.0) == pytest.approx(want, rel=1e-15)
    assert sudden_death_reference(1.0) == pytest.approx(11.535491330579802, abs=1e-12)


def test_sudden_death_reference_domain():
    with pytest.raises(DomainError):
        sudden_death_reference(0.0)
    with pytest.raises(DomainError):
        sudden_death_reference(-1.0)


def test_reference_correlations_key_shapes():
    fp = FieldParams(x=1.0)
    both = reference_correlations(1.0, fp, "unilateral", "pq")
    assert ("vn", "negativity") in both
    assert ("renyi2", "mutual_info") in both
    vn_only = reference_correlations(1.0, fp, "unilateral", "pq", family="vn")
    assert "negativity" in vn_only and "mutual_info" in vn_only
    with pytest.raises(DomainError):
        reference_correlations(1.0, fp, "unilateral", "nosuch")
    with pytest.raises(DomainError):
        reference_correlations(1.0, fp, "bilateral", "mpq")


def test_reference_pair_accepts_mode_tuples():
    fp = FieldParams(x=0.5)
    by_key = reference_correlations(1.0, fp, "bilateral", "pmq", family="renyi2")
    by_tuple = reference_correlations(
        1.0, fp, "bilateral", PAIR_KEYS["pmq"], family="renyi2"
    )
    assert by_key["mutual_info"].value == by_tuple["mutual_info"].value


def test_crosscheck_entry_count_is_stable():
    for x in (0.0, 1.0):
        rep = crosscheck(1.0, FieldParams(x=x))
        assert len(rep.entries) == 26
        assert rep.n_pass + rep.n_flag == 26
        assert rep.tolerance == CROSSCHECK_TOL


def test_crosscheck_verdicts_at_zero_field():
    rep = crosscheck(1.0, FieldParams(x=0.0))
    assert rep.n_pass == 23
    assert rep.n_flag == 3
    assert _ids(rep.flagged()) == FLAGGED_AT_ZERO
    # the three x=0 flags come from a reference spectrum below the vacuum
    # floor; each carries an explanatory note
    for e in rep.flagged():
        assert e.note


def test_crosscheck_verdicts_in_active_regime():
    for x in (1.0, 5.0):
        rep = crosscheck(1.0, FieldParams(x=x))
        assert rep.n_pass == 7
        assert rep.n_flag == 19
        ids = {e.formula_id for e in rep.entries if e.verdict == "pass"}
        assert ids == ALWAYS_PASS | {"bi.pq.N1"}


def test_crosscheck_past_sudden_death():
    # bi.pq.N1 tracks the pipeline only while the pair is entangled; the
    # unclamped reference goes negative past x* ~ 11.54 and flips to flag
    rep = crosscheck(1.0, FieldParams(x=13.0))
    assert rep.n_pass == 6
    assert rep.n_flag == 20
    ids = {e.formula_id for e in rep.entries if e.verdict == "pass"}
    assert ids == ALWAYS_PASS


def test_crosscheck_survives_extreme_field():
    # broken reference expressions must degrade to NaN + note, never raise
    rep = crosscheck(1.0, FieldParams(x=1000.0))
    assert len(rep.entries) == 26
    for e in rep.entries:
        if not math.isfinite(e.reference):
            assert e.verdict == "flag"
            assert e.note


def test_crosscheck_pass_entries_are_tight():
    rep = crosscheck(1.0, FieldParams(x=1.0))
    for e in rep.entries:
        if e.verdict == "pass":
            assert e.abs_diff <= CROSSCHECK_TOL


def test_crosscheck_records_both_sides():
    rep = crosscheck(1.0, FieldParams(x=1.0))
    by_id = {e.formula_id: e for e in rep.entries}
    exact = by_id["uni.pq.N1"]
    assert exact.pipeline == pytest.approx(exact.reference, abs=1e-10)
    assert exact.scenario == "unilateral" and exact.pair == "pq"
