"""Parameter sweeps, monogamy balances, and the entanglement death point.

The functions here drive the channel + measure pipeline over a grid of field
strengths and tabulate, per grid point, the correlation reports of the mode
pairs together with monogamy-style balances

    R(input) - sum over output pairs of R(pair)

for R a discord direction or a mutual information.  The same balance applied
to the negativity is not a monogamy statement in the usual sense, so sweep
outputs label that column as an extension rather than a score.

``find_sudden_death`` locates the field strength at which the partially
transposed symplectic eigenvalue of the (p, q) pair crosses 1, i.e. where the
logarithmic negativity hits zero from above.  Bracketing is done on mu - 1
rather than on the clamped negativity, which is identically zero on one side
and therefore useless to a bisection.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from .channel import FieldParams, apply_bilateral, apply_unilateral, reduce_pair
from .closedforms import PAIR_KEYS, sudden_death_reference
from .errors import DomainError, NumericalError, SweepError
from .gaussian import tmsv
from .renyi2 import Renyi2Report, renyi2_report
from .vn import VnReport, ppt_minimum, vn_report

__all__ = [
    "GridSpec",
    "SweepConfig",
    "MonogamyScore",
    "SweepRecord",
    "monogamy_unilateral",
    "monogamy_bilateral",
    "find_sudden_death",
    "run_sweep",
    "sweep_point",
    "SCENARIOS",
    "FAMILIES",
    "QUANTITIES",
    "DEFAULT_PAIRS",
]

SCENARIOS = ("unilateral", "bilateral")
FAMILIES = ("von_neumann", "renyi2")

# Quantities a balance can be formed from.  "N" is the negativity extension;
# it rides along in the same machinery but is reported under an extension
# header by the CLI and the scripts.
QUANTITIES = ("D(A|B)", "D(B|A)", "I", "N")
MONOGAMY_QUANTITIES = ("D(A|B)", "D(B|A)", "I")

_QUANTITY_FIELD = {
    "D(A|B)": "discord_a_given_b",
    "D(B|A)": "discord_b_given_a",
    "I": "mutual_info",
}

# Pairs that carry correlations in each scenario.  A unilateral run leaves the
# (-p, .) sector in vacuum, so only the two pairs involving p are tabulated
# and the balance subtracts exactly those two.
DEFAULT_PAIRS = {
    "unilateral": ("pq", "pmq"),
    "bilateral": ("pq", "pmq", "mpq", "mpmq"),
}

_APPLY = {"unilateral": apply_unilateral, "bilateral": apply_bilateral}


def _quantity_value(report, quantity):
    if quantity == "N":
        # The two report families name their entanglement column differently.
        return getattr(report, "negativity", None) if isinstance(report, VnReport) \
            else report.entanglement
    return getattr(report, _QUANTITY_FIELD[quantity])


@dataclass(frozen=True)
class GridSpec:
    """Grid of field strengths x, linear or logarithmic.

    ``start``/``stop`` are inclusive endpoints.  Logarithmic spacing needs a
    strictly positive start; a linear grid may begin at x = 0 (free channel).
    """

    start: float
    stop: float
    count: int
    spacing: str = "log"

    def __post_init__(self):
        if self.spacing not in ("lin", "log"):
            raise DomainError("spacing must be 'lin' or 'log', got %r" % (self.spacing,))
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise DomainError("grid endpoints must be finite")
        if self.start < 0.0:
            raise DomainError("field strength grid must start at x >= 0")
        if self.spacing == "log" and self.start <= 0.0:
            raise DomainError("log spacing needs start > 0")
        if self.stop <= self.start:
            raise DomainError("grid needs stop > start")
        if self.count < 2:
            raise DomainError("grid needs at least 2 points")

    def points(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepConfig:
    """Everything a sweep run needs.

    families and pairs are tuples of names; order is preserved in the output.
    ``parallelism`` counts worker threads; results are ordered by grid index
    regardless, so the output does not depend on it.
    """

    scenario: str
    s: float
    grid: GridSpec
    families: tuple = FAMILIES
    pairs: tuple = None  # None means the scenario default
    parallelism: int = 1

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise DomainError("scenario must be one of %s" % (SCENARIOS,))
        if not (math.isfinite(self.s) and self.s > 0.0):
            raise DomainError("squeezing s must be finite and positive")
        if self.pairs is None:
            object.__setattr__(self, "pairs", DEFAULT_PAIRS[self.scenario])
        for fam in self.families:
            if fam not in FAMILIES:
                raise DomainError("unknown family %r" % (fam,))
        if not self.families:
            raise DomainError("at least one family is required")
        allowed = DEFAULT_PAIRS[self.scenario]
        for key in self.pairs:
            if key not in allowed:
                raise DomainError(
                    "pair %r not available in the %s scenario" % (key, self.scenario)
                )
        if not self.pairs:
            raise DomainError("at least one pair is required")
        if self.parallelism < 1:
            raise DomainError("parallelism must be >= 1")


@dataclass(frozen=True)
class MonogamyScore:
    """Balance value for one (family, quantity) combination at a grid point."""

    family: str
    quantity: str
    value: float


@dataclass(frozen=True)
class SweepRecord:
    """All measures at one field strength.

    ``vn`` and ``renyi2`` map pair keys to reports (empty dict when the family
    was not requested).  ``monogamy`` holds one MonogamyScore per requested
    family and quantity, including the negativity extension column.
    """

    x: float
    vn: dict = field(default_factory=dict)
    renyi2: dict = field(default_factory=dict)
    monogamy: tuple = ()

    def __post_init__(self):
        values = [self.x]
        for rep in list(self.vn.values()) + list(self.renyi2.values()):
            values += [
                _quantity_value(rep, "N"),
                rep.discord_a_given_b,
                rep.discord_b_given_a,
                rep.mutual_info,
            ]
        values += [score.value for score in self.monogamy]
        if not all(math.isfinite(v) for v in values):
            raise NumericalError("non-finite value in sweep record at x=%r" % (self.x,))


def _reports_at(scenario, s, x, families):
    """Reports for the input pair and every scenario pair at one grid point."""
    out = _APPLY[scenario](s, FieldParams(x))
    std_in = tmsv(s)
    stds = {key: reduce_pair(out, PAIR_KEYS[key]) for key in DEFAULT_PAIRS[scenario]}
    reports = {}
    if "von_neumann" in families:
        reports["von_neumann"] = {
            "in": vn_report(std_in),
            **{key: vn_report(std) for key, std in stds.items()},
        }
    if "renyi2" in families:
        reports["renyi2"] = {
            "in": renyi2_report(std_in),
            **{key: renyi2_report(std) for key, std in stds.items()},
        }
    return reports


def _balance(family_reports, scenario, quantity):
    value = _quantity_value(family_reports["in"], quantity)
    for key in DEFAULT_PAIRS[scenario]:
        value -= _quantity_value(family_reports[key], quantity)
    return value


def monogamy_unilateral(s, fp, family="von_neumann", quantity="I"):
    """Input-pair measure minus the (p,q) and (p,-q) output measures.

    Positive values mean the channel cannot distribute more of the quantity
    to the two pairs than the input held; the mutual information instead
    obeys an exact conservation in the Renyi-2 family, making this zero.
    """
    return _monogamy("unilateral", s, fp, family, quantity)


def monogamy_bilateral(s, fp, family="von_neumann", quantity="I"):
    """Input measure minus the sum over all four output pairs."""
    return _monogamy("bilateral", s, fp, family, quantity)


def _monogamy(scenario, s, fp, family, quantity):
    if family not in FAMILIES:
        raise DomainError("unknown family %r" % (family,))
    if quantity not in QUANTITIES:
        raise DomainError("unknown quantity %r" % (quantity,))
    if not isinstance(fp, FieldParams):
        fp = FieldParams(fp)
    reports = _reports_at(scenario, s, fp.x, (family,))
    return _balance(reports[family], scenario, quantity)


def _record_at(cfg: SweepConfig, x: float) -> SweepRecord:
    reports = _reports_at(cfg.scenario, cfg.s, x, cfg.families)
    scores = []
    for fam in cfg.families:
        for quantity in QUANTITIES:
            scores.append(
                MonogamyScore(fam, quantity, _balance(reports[fam], cfg.scenario, quantity))
            )
    vn = {}
    renyi2 = {}
    if "von_neumann" in cfg.families:
        vn = {key: reports["von_neumann"][key] for key in cfg.pairs}
    if "renyi2" in cfg.families:
        renyi2 = {key: reports["renyi2"][key] for key in cfg.pairs}
    return SweepRecord(x=float(x), vn=vn, renyi2=renyi2, monogamy=tuple(scores))


def sweep_point(scenario, s, x, families=FAMILIES, pairs=None):
    """One SweepRecord at a single field strength, no grid required.

    Output matches the corresponding row of run_sweep exactly; SweepConfig
    does the argument validation and the placeholder grid is never read.
    """
    pairs = None if pairs is None else tuple(pairs)
    cfg = SweepConfig(scenario=scenario, s=float(s), grid=GridSpec(1.0, 2.0, 2),
                      families=tuple(families), pairs=pairs)
    return _record_at(cfg, float(x))


def run_sweep(cfg: SweepConfig) -> list:
    """Evaluate every grid point and return SweepRecords in grid order.

    Grid points are independent, so they are farmed out to a thread pool of
    ``cfg.parallelism`` workers.  Each point does the same arithmetic in the
    same order no matter how the pool schedules it, so results are identical
    for any worker count.  Failures are collected per point and raised at the
    end as a single SweepError listing the bad indices.
    """
    xs = cfg.grid.points()

    def one(i):
        try:
            return _record_at(cfg, xs[i]), None
        except Exception as exc:  # noqa: BLE001 - aggregated and re-raised below
            return None, (i, float(xs[i]), "%s: %s" % (type(exc).__name__, exc))

    with ThreadPoolExecutor(max_workers=cfg.parallelism) as pool:
        outcomes = list(pool.map(one, range(len(xs))))

    failures = [err for _, err in outcomes if err is not None]
    if failures:
        raise SweepError(failures)
    return [rec for rec, _ in outcomes]


def find_sudden_death(s, scenario="bilateral", x_max=1.0e6):
    """Field strength where the (p,q) negativity dies, by bisection.

    The bracketing function is mu(x) - 1 with mu the smaller symplectic
    eigenvalue of the partial transpose: negative while the pair is entangled,
    positive afterwards.  Raises NumericalError when no sign change exists in
    (0, x_max], which is the expected outcome for the unilateral scenario
    where the (p,q) pair stays entangled at any finite field strength.
    """
    if scenario not in SCENARIOS:
        raise DomainError("scenario must be one of %s" % (SCENARIOS,))
    if not (math.isfinite(s) and s > 0.0):
        raise DomainError("squeezing s must be finite and positive")

    apply = _APPLY[scenario]

    def gap(x):
        std = reduce_pair(apply(s, FieldParams(x)), PAIR_KEYS["pq"])
        return ppt_minimum(std) - 1.0

    if gap(0.0) >= 0.0:  # exp(-2s) - 1, always negative for s > 0
        raise NumericalError("input pair is not entangled; nothing to kill")

    lo, hi = 0.0, None
    for x in np.geomspace(1.0e-3, x_max, 400):
        if gap(x) >= 0.0:
            hi = x
            break
        lo = x
    if hi is None:
        raise NumericalError("no sign change bracket found in (0, %g]" % (x_max,))

    root = bisect(gap, lo, hi, xtol=1.0e-30, rtol=1.0e-12)
    return float(root)
