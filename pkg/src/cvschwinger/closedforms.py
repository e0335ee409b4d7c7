"""Analytic reference expressions for the channel-output correlations.

Every quantity the symplectic pipeline computes for the reduced mode pairs
also has a hand-derived closed form in (s, |alpha|, |beta|).  This module
keeps those expressions verbatim in a registry and compares them against the
pipeline.  The registry is a fixed comparison target: several entries are
typographically suspect (odd powers where even ones belong, a missing square
under a radical, a missing separability clamp), and the comparator's job is
to report where they disagree with the pipeline, never to repair them.

The pipeline is ground truth; reference values are advisory.  Formula IDs
are stable strings like "uni.pq.N1" (scenario.pair.measure) used in reports
and CSV output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import apply_bilateral, apply_unilateral, bogoliubov, reduce_pair
from .errors import CvschwingerError, DomainError
from .gaussian import MINUS_P, MINUS_Q, P, Q
from .renyi2 import mutual_information_renyi2
from .vn import (
    Direction,
    discord_vn,
    f_vn,
    log_base,
    log_negativity,
    mutual_information_vn,
)

PAIR_KEYS = {
    "pq": (P, Q),
    "pmq": (P, MINUS_Q),
    "mpq": (MINUS_P, Q),
    "mpmq": (MINUS_P, MINUS_Q),
}

CROSSCHECK_TOL = 1e-8


def _log(x):
    return math.log(x) / math.log(log_base())


def _common(s, bc):
    """Shorthands shared by the reference expressions."""
    c2s, s2s = math.cosh(2.0 * s), math.sinh(2.0 * s)
    a2, b2 = bc.alpha_sq, bc.beta_sq
    z = c2s * a2 + b2
    xi = a2 + c2s * b2
    return c2s, s2s, a2, b2, z, xi


# -- unilateral (p, q) --------------------------------------------------------

def _uni_pq_n1(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    brace = (
        c2s * c2s
        + 2.0 * a2 * s2s * s2s
        + z * z
        - 2.0
        * (c2s + z)
        * math.sqrt(math.cosh(s) ** 4 * b2 * b2 + a2 * s2s * s2s)
    )
    return 0.5 - 0.5 * _log(brace)


def _eta(s, bc):
    # As printed: an odd cosh(s) among cosh(2s) expressions.  Suspect, kept.
    return 1.0 + 2.0 * bc.beta_sq * math.cosh(s)


def _uni_pq_d1ab(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    return f_vn(z) - f_vn(_eta(s, bc))


def _uni_pq_d1ba(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    return f_vn(c2s) + f_vn(1.0 + 2.0 * b2) - f_vn(_eta(s, bc))


def _uni_pq_i1(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    return f_vn(c2s) + f_vn(z) - f_vn(_eta(s, bc))


def _uni_pq_i2(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    return math.log(z * c2s / xi)


# -- unilateral (p, -q) -------------------------------------------------------

def _uni_pmq_spectrum(s, bc):
    # As printed: the brace subtracts 2|beta|^2 sinh^2(2s) and the inner
    # radical subtracts 4z rather than 4z^2.  Suspect, kept.
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    brace = c2s * c2s + xi * xi - 2.0 * b2 * s2s * s2s
    inner = brace * brace - 4.0 * z
    if inner < 0.0:
        raise DomainError("negative inner radical %.3g in the reference spectrum" % inner)
    lo = math.sqrt(max(brace - math.sqrt(inner), 0.0) / 2.0)
    hi = math.sqrt((brace + math.sqrt(inner)) / 2.0)
    return lo, hi


def _uni_pmq_n1(s, bc):
    return 0.0


def _uni_pmq_d1ab(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    eps1 = (b2 + (b2 + 2.0) * c2s) / (2.0 + (1.0 + c2s) * b2)
    lo, hi = _uni_pmq_spectrum(s, bc)
    return f_vn(xi) - f_vn(lo) - f_vn(hi) + f_vn(eps1)


def _uni_pmq_d1ba(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    eps2 = 2.0 * b2 + 1.0
    lo, hi = _uni_pmq_spectrum(s, bc)
    return f_vn(c2s) - f_vn(lo) - f_vn(hi) + f_vn(eps2)


def _uni_pmq_i1(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    lo, hi = _uni_pmq_spectrum(s, bc)
    return f_vn(c2s) - f_vn(lo) - f_vn(hi) + f_vn(xi)


def _uni_pmq_i2(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    return math.log(xi * c2s / z)


# -- bilateral shorthands -----------------------------------------------------

def _chi(bc):
    a2, b2 = bc.alpha_sq, bc.beta_sq
    return (a2 + b2) ** 2 + 4.0 * a2 * a2 * b2 * b2


def _tau(s, bc):
    a2, b2 = bc.alpha_sq, bc.beta_sq
    return 0.5 * math.sqrt(3.0 + 8.0 * math.cosh(2.0 * s) * a2 * b2 + _chi(bc))


def _bi_pmq_spectrum(s, bc):
    a2, b2 = bc.alpha_sq, bc.beta_sq
    c2s = math.cosh(2.0 * s)
    chi = _chi(bc)
    base = 2.0 + math.cosh(4.0 * s) + chi + 8.0 * c2s * a2 * b2
    wing = 4.0 * math.sqrt(2.0) * math.cosh(s) * math.sinh(s) ** 2 * math.sqrt(c2s + chi)
    lo = 0.5 * math.sqrt(max(base - wing, 0.0))
    hi = 0.5 * math.sqrt(base + wing)
    return lo, hi


# -- bilateral (p, q) ---------------------------------------------------------

def _bi_pq_n1(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    # As printed: no separability clamp; goes negative past sudden death.
    return -_log(z - s2s * a2)


def _bi_pq_d1(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    return f_vn(z) + f_vn(a2 + b2) - 2.0 * f_vn(_tau(s, bc))


def _bi_pq_i1(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    return 2.0 * f_vn(z) - 2.0 * f_vn(_tau(s, bc))


def _bi_pq_i2(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    return math.log(z * z / (xi * xi + b2 * b2 * s2s * s2s))


# -- bilateral (p, -q) --------------------------------------------------------

def _bi_pmq_n1(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    c4s = math.cosh(4.0 * s)
    chi = _chi(bc)
    brace = (
        (1.0 + c2s * c2s) * (a2 * a2 + b2 * b2)
        + (c4s + 4.0 * c2s - 1.0) * a2 * b2
        - 2.0
        * math.cosh(s) ** 2
        * math.sinh(s)
        * (a2 + b2)
        * math.sqrt(chi - 3.0 + c2s * (1.0 + chi))
    )
    return 0.5 - 0.5 * _log(brace)


def _bi_pmq_d1ab(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    c4s = math.cosh(4.0 * s)
    eps3 = (
        c2s * c2s * a2 * b2
        + (1.0 - 0.5 * (c4s - 3.0) * a2) * b2
        + c2s * (a2 + a2 * a2 + b2 * b2)
    ) / (1.0 + xi)
    lo, hi = _bi_pmq_spectrum(s, bc)
    return f_vn(xi) - f_vn(lo) - f_vn(hi) + f_vn(eps3)


def _bi_pmq_d1ba(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    eps2 = 2.0 * b2 + 1.0
    lo, hi = _bi_pmq_spectrum(s, bc)
    return f_vn(z) - f_vn(lo) - f_vn(hi) + f_vn(eps2)


def _bi_pmq_i1(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    lo, hi = _bi_pmq_spectrum(s, bc)
    return f_vn(z) + f_vn(xi) - f_vn(lo) - f_vn(hi)


def _bi_pmq_i2(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    return math.log(z * xi / (a2 * z + b2 * xi))


# -- bilateral (-p, -q) -------------------------------------------------------

def _bi_mpmq_n1(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    return -_log(xi - s2s * b2)


def _bi_mpmq_d1(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    eps4 = (a2 * a2 + b2 * b2 + 2.0 * c2s * a2 * b2 + xi) / (1.0 + xi)
    return f_vn(xi) + f_vn(eps4) - 2.0 * f_vn(_tau(s, bc))


def _bi_mpmq_i1(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    return 2.0 * f_vn(xi) - 2.0 * f_vn(_tau(s, bc))


def _bi_mpmq_i2(s, bc):
    c2s, s2s, a2, b2, z, xi = _common(s, bc)
    return math.log(xi * xi / (xi * xi + b2 * b2 * s2s * s2s))


# (scenario, pair, family, measure) -> (formula_id, callable)
REFERENCE_FORMULAS = {
    ("unilateral", "pq", "vn", "negativity"): ("uni.pq.N1", _uni_pq_n1),
    ("unilateral", "pq", "vn", "discord_ab"): ("uni.pq.D1ab", _uni_pq_d1ab),
    ("unilateral", "pq", "vn", "discord_ba"): ("uni.pq.D1ba", _uni_pq_d1ba),
    ("unilateral", "pq", "vn", "mutual_info"): ("uni.pq.I1", _uni_pq_i1),
    ("unilateral", "pq", "renyi2", "mutual_info"): ("uni.pq.I2", _uni_pq_i2),
    ("unilateral", "pmq", "vn", "negativity"): ("uni.pmq.N1", _uni_pmq_n1),
    ("unilateral", "pmq", "vn", "discord_ab"): ("uni.pmq.D1ab", _uni_pmq_d1ab),
    ("unilateral", "pmq", "vn", "discord_ba"): ("uni.pmq.D1ba", _uni_pmq_d1ba),
    ("unilateral", "pmq", "vn", "mutual_info"): ("uni.pmq.I1", _uni_pmq_i1),
    ("unilateral", "pmq", "renyi2", "mutual_info"): ("uni.pmq.I2", _uni_pmq_i2),
    ("bilateral", "pq", "vn", "negativity"): ("bi.pq.N1", _bi_pq_n1),
    ("bilateral", "pq", "vn", "discord_ab"): ("bi.pq.D1ab", _bi_pq_d1),
    ("bilateral", "pq", "vn", "discord_ba"): ("bi.pq.D1ba", _bi_pq_d1),
    ("bilateral", "pq", "vn", "mutual_info"): ("bi.pq.I1", _bi_pq_i1),
    ("bilateral", "pq", "renyi2", "mutual_info"): ("bi.pq.I2", _bi_pq_i2),
    ("bilateral", "pmq", "vn", "negativity"): ("bi.pmq.N1", _bi_pmq_n1),
    ("bilateral", "pmq", "vn", "discord_ab"): ("bi.pmq.D1ab", _bi_pmq_d1ab),
    ("bilateral", "pmq", "vn", "discord_ba"): ("bi.pmq.D1ba", _bi_pmq_d1ba),
    ("bilateral", "pmq", "vn", "mutual_info"): ("bi.pmq.I1", _bi_pmq_i1),
    ("bilateral", "pmq", "renyi2", "mutual_info"): ("bi.pmq.I2", _bi_pmq_i2),
    ("bilateral", "mpmq", "vn", "negativity"): ("bi.mpmq.N1", _bi_mpmq_n1),
    ("bilateral", "mpmq", "vn", "discord_ab"): ("bi.mpmq.D1ab", _bi_mpmq_d1),
    ("bilateral", "mpmq", "vn", "discord_ba"): ("bi.mpmq.D1ba", _bi_mpmq_d1),
    ("bilateral", "mpmq", "vn", "mutual_info"): ("bi.mpmq.I1", _bi_mpmq_i1),
    ("bilateral", "mpmq", "renyi2", "mutual_info"): ("bi.mpmq.I2", _bi_mpmq_i2),
}


def initial_mutual_info_renyi2(s):
    """Conserved total: I2(pq) + I2(p,-q) = 2 ln cosh 2s (unilateral)."""
    return 2.0 * math.log(math.cosh(2.0 * s))


def sudden_death_reference(s):
    """Field strength where the bilateral (p,q) negativity reaches zero:
    x* = pi / ln[(1 + cosh 2s - sinh 2s) / (1 - cosh 2s + sinh 2s)]."""
    s = float(s)
    if s <= 0.0:
        raise DomainError("sudden death needs s > 0 (no entanglement at s = 0)")
    c2s, s2s = math.cosh(2.0 * s), math.sinh(2.0 * s)
    return math.pi / math.log((1.0 + c2s - s2s) / (1.0 - c2s + s2s))


@dataclass(frozen=True)
class ReferenceValue:
    formula_id: str
    value: float
    note: str = ""


def reference_correlations(s, fp, scenario, pair, family=None):
    """Reference values for one (scenario, pair): {measure: ReferenceValue}.

    `pair` may be a key like "pq"/"pmq"/"mpmq" or a mode-label tuple.
    `family` restricts to "vn" or "renyi2"; None returns both.  Expressions
    whose ingredients leave their domain (e.g. a thermal-entropy argument
    below 1) yield NaN with a note instead of raising.
    """
    pair_key = _pair_key(pair)
    out = {}
    for (scen, pk, fam, measure), (fid, fn) in REFERENCE_FORMULAS.items():
        if scen != scenario or pk != pair_key:
            continue
        if family is not None and fam != family:
            continue
        key = measure if family is not None else (fam, measure)
        out[key] = _safe_eval(fid, fn, s, fp)
    if not out:
        raise DomainError(
            "no reference formulas for scenario=%r pair=%r family=%r"
            % (scenario, pair, family)
        )
    return out


def _pair_key(pair):
    if isinstance(pair, str):
        if pair not in PAIR_KEYS:
            raise DomainError("unknown pair key %r (want one of %s)" % (pair, sorted(PAIR_KEYS)))
        return pair
    labels = tuple(pair)
    for key, val in PAIR_KEYS.items():
        if val == labels:
            return key
    raise DomainError("pair %r is not a canonical mode pair" % (pair,))


def _safe_eval(fid, fn, s, fp):
    bc = bogoliubov(fp)
    try:
        return ReferenceValue(fid, float(fn(float(s), bc)))
    except (CvschwingerError, ValueError, OverflowError, ZeroDivisionError) as exc:
        return ReferenceValue(fid, math.nan, note="%s: %s" % (type(exc).__name__, exc))


@dataclass(frozen=True)
class Discrepancy:
    formula_id: str
    scenario: str
    pair: str
    family: str
    measure: str
    reference: float
    pipeline: float
    abs_diff: float
    verdict: str
    note: str = ""


@dataclass(frozen=True)
class DiscrepancyReport:
    s: float
    x: float
    tolerance: float
    entries: tuple

    @property
    def n_pass(self):
        return sum(1 for e in self.entries if e.verdict == "pass")

    @property
    def n_flag(self):
        return sum(1 for e in self.entries if e.verdict == "flag")

    def flagged(self):
        return tuple(e for e in self.entries if e.verdict == "flag")


def _pipeline_measures(std):
    vals = {}
    errs = {}
    for fam, measure, fn in (
        ("vn", "negativity", log_negativity),
        ("vn", "discord_ab", lambda t: discord_vn(t, Direction.A_GIVEN_B)),
        ("vn", "discord_ba", lambda t: discord_vn(t, Direction.B_GIVEN_A)),
        ("vn", "mutual_info", mutual_information_vn),
        ("renyi2", "mutual_info", mutual_information_renyi2),
    ):
        try:
            vals[(fam, measure)] = fn(std)
        except CvschwingerError as exc:
            vals[(fam, measure)] = math.nan
            errs[(fam, measure)] = "%s: %s" % (type(exc).__name__, exc)
    return vals, errs


def crosscheck(s, fp, tol=CROSSCHECK_TOL):
    """Compare the pipeline against every reference formula at one (s, x).

    A row passes when |pipeline - reference| <= tol; anything else (including
    a non-finite side) is flagged with its formula id.  Flags are expected
    for the typographically suspect entries; they are reported, not fixed.
    """
    s = float(s)
    outputs = {
        "unilateral": apply_unilateral(s, fp),
        "bilateral": apply_bilateral(s, fp),
    }
    entries = []
    cache = {}
    for (scen, pk, fam, measure), (fid, fn) in sorted(
        REFERENCE_FORMULAS.items(), key=lambda kv: kv[1][0]
    ):
        if (scen, pk) not in cache:
            std = reduce_pair(outputs[scen], PAIR_KEYS[pk])
            cache[(scen, pk)] = _pipeline_measures(std)
        vals, errs = cache[(scen, pk)]
        ref = _safe_eval(fid, fn, s, fp)
        pipe = vals[(fam, measure)]
        note = ref.note or errs.get((fam, measure), "")
        diff = abs(pipe - ref.value)
        verdict = "pass" if math.isfinite(diff) and diff <= tol else "flag"
        entries.append(
            Discrepancy(
                formula_id=fid,
                scenario=scen,
                pair=pk,
                family=fam,
                measure=measure,
                reference=ref.value,
                pipeline=pipe,
                abs_diff=diff,
                verdict=verdict,
                note=note,
            )
        )
    # Conservation of the second-family mutual information (unilateral): the
    # two pair totals must reproduce the input value exactly.
    uni = outputs["unilateral"]
    total = mutual_information_renyi2(
        reduce_pair(uni, PAIR_KEYS["pq"])
    ) + mutual_information_renyi2(reduce_pair(uni, PAIR_KEYS["pmq"]))
    ref_total = initial_mutual_info_renyi2(s)
    diff = abs(total - ref_total)
    entries.append(
        Discrepancy(
            formula_id="uni.cons.I2",
            scenario="unilateral",
            pair="pq+pmq",
            family="renyi2",
            measure="mutual_info_total",
            reference=ref_total,
            pipeline=total,
            abs_diff=diff,
            verdict="pass" if diff <= tol else "flag",
        )
    )
    return DiscrepancyReport(s=s, x=fp.x, tolerance=tol, entries=tuple(entries))
