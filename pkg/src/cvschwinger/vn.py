"""First measure family: logarithmic negativity, von Neumann mutual
information, and Gaussian discord from the single-expression conditional
variance, all on two-mode standard forms.

Log base defaults to 2 (bits) and can be switched to natural log through the
environment variable CVS_LOG_BASE ("2" or "e"); the base is read per call so
a test or CLI invocation can flip it without re-importing.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, NumericalError
from .gaussian import invariants

LOG_BASE_ENV = "CVS_LOG_BASE"
DEFAULT_LOG_BASE = 2.0

F_CLAMP_TOL = 1e-9
DISC_CLAMP_TOL = 1e-12

# Separability snap band: reduced pairs the channel keeps separable can
# round their partial-transpose eigenvalue to 1 - O(eps), which would leak a
# one-ulp negativity.  Anything this close to the boundary is reported as
# exactly zero; the band sits far below the precision of the eigenvalue.
PPT_SNAP_TOL = 1e-12


def log_base():
    """Current logarithm base for this measure family (2.0 or e)."""
    raw = os.environ.get(LOG_BASE_ENV)
    if raw is None:
        return DEFAULT_LOG_BASE
    val = raw.strip().lower()
    if val == "2":
        return 2.0
    if val == "e":
        return math.e
    raise DomainError("%s must be '2' or 'e', got %r" % (LOG_BASE_ENV, raw))


class Direction(Enum):
    """Which subsystem is measured in the conditional entropy: A_GIVEN_B
    means the measurement acts on B."""

    A_GIVEN_B = "A|B"
    B_GIVEN_A = "B|A"


def f_vn(x):
    """Entropy of a thermal mode with symplectic eigenvalue x:
    f(x) = ((x+1)/2) log((x+1)/2) - ((x-1)/2) log((x-1)/2).

    Accepts x down to 1 - 1e-9 (clamped to 1, where f = 0 by the
    0 log 0 = 0 convention); smaller x raises DomainError.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("f_vn needs a finite argument, got %r" % (x,))
    if x < 1.0 - F_CLAMP_TOL:
        raise DomainError("f_vn argument %.17g below 1 (unphysical eigenvalue)" % x)
    if x <= 1.0:
        return 0.0
    ln_b = math.log(log_base())
    up = 0.5 * (x + 1.0)
    dn = 0.5 * (x - 1.0)
    return (up * math.log(up) - dn * math.log(dn)) / ln_b


def _eigen_pair(delta, det, disc, what):
    """Both roots of nu^4 - delta nu^2 + det = 0, smallest first.

    ``disc`` is delta^2 - 4 det supplied by the caller in a factored form
    that avoids the cancellation of the textbook difference.  The small root
    is evaluated as 2 det / (delta + sqrt(disc)), algebraically the same as
    (delta - sqrt(disc))/2 but stable when disc is close to delta^2.
    Negative discriminants within roundoff of a degenerate pair clamp to 0.
    """
    if disc < 0.0:
        slack = DISC_CLAMP_TOL + 64.0 * 2.220446049250313e-16 * delta * delta
        if disc < -slack:
            raise NumericalError(
                "negative discriminant %.3g in %s spectrum (delta=%.17g, det=%.17g)"
                % (disc, what, delta, det)
            )
        disc = 0.0
    root = math.sqrt(disc)
    hi_sq = 0.5 * (delta + root)
    lo_sq = (2.0 * det / (delta + root)) if delta + root > 0.0 else 0.0
    return math.sqrt(max(lo_sq, 0.0)), math.sqrt(hi_sq)


def state_spectrum(std):
    """Symplectic eigenvalues (nu_minus, nu_plus) of the state itself.

    The quartic discriminant is expanded as

        (a^2 - b^2)^2 + 4 (a c1 + b c2)(a c2 + b c1),

    which is exactly delta^2 - 4 det sigma but does not lose the ~1e-8
    eigenvalue splitting of a nearly pure state to cancellation the way the
    direct difference does (both terms there are O(delta^2) while the true
    discriminant can be arbitrarily small).
    """
    inv = invariants(std)
    a, b, c1, c2 = std.a, std.b, std.c1, std.c2
    disc = (a * a - b * b) ** 2 + 4.0 * (a * c1 + b * c2) * (a * c2 + b * c1)
    return _eigen_pair(inv.big_delta, inv.j4, disc, "state")


def ppt_minimum(std):
    """Smallest symplectic eigenvalue of the partial transpose (mu_minus);
    entanglement iff this drops below 1.  Same factored discriminant as
    state_spectrum with c2 negated."""
    inv = invariants(std)
    a, b, c1, c2 = std.a, std.b, std.c1, std.c2
    disc = (a * a - b * b) ** 2 + 4.0 * (a * c1 - b * c2) * (b * c1 - a * c2)
    return _eigen_pair(inv.small_delta, inv.j4, disc, "partial-transpose")[0]


def log_negativity(std):
    """max{0, -log mu_minus} in the configured base.

    Clamped to exactly zero within PPT_SNAP_TOL of the separability boundary
    so separable states cannot leak a roundoff-sized negativity.
    """
    mu = ppt_minimum(std)
    if mu >= 1.0 - PPT_SNAP_TOL:
        return 0.0
    return -math.log(mu) / math.log(log_base())


def mutual_information_vn(std):
    """I = f(a) + f(b) - f(nu_minus) - f(nu_plus), clamped at zero."""
    lo, hi = state_spectrum(std)
    return max(f_vn(std.a) + f_vn(std.b) - f_vn(lo) - f_vn(hi), 0.0)


def conditional_eigenvalue(std, direction=Direction.A_GIVEN_B):
    """Variance of A left by a heterodyne measurement of B:

        eps = sqrt[ (a - c1^2/(b+1)) (a - c2^2/(b+1)) ],

    the symplectic eigenvalue of the Schur complement A - X (B+I)^-1 X^T.
    When c2 = -c1 this collapses to the compact single expression
    (a + ab + c1 c2)/(b + 1) quoted for two-mode squeezed thermal states.
    The compact spelling is not used here because it carries the sign of
    c1 c2 into the correction term: on states whose correlations share a
    sign it *adds* c1^2/(b+1) instead of subtracting it, which overstates
    the conditional entropy and flips the sign of discord balances that are
    provably nonnegative through the covariance route.  The other direction
    exchanges the roles of a and b.
    """
    if direction is Direction.B_GIVEN_A:
        std = std.swapped()
    elif direction is not Direction.A_GIVEN_B:
        raise DomainError("direction must be a Direction member, got %r" % (direction,))
    den = std.b + 1.0
    # a - c^2/(b+1) > 0 follows from ab >= c^2 (positivity of the x-x minor)
    return math.sqrt(
        (std.a - std.c1 * std.c1 / den) * (std.a - std.c2 * std.c2 / den)
    )


def discord_vn(std, direction=Direction.A_GIVEN_B):
    """Gaussian discord D = f(b) - f(nu_minus) - f(nu_plus) + f(eps).

    eps is the heterodyne conditional eigenvalue above; if it evaluates
    below 1 the state sits outside the expression's domain and a
    DomainError carries the diagnostic rather than silently patching it.
    """
    eps = conditional_eigenvalue(std, direction)
    if eps < 1.0 - F_CLAMP_TOL:
        raise DomainError(
            "conditional eigenvalue %.17g < 1 for %s on (a=%.17g, b=%.17g, "
            "c1=%.17g, c2=%.17g): outside the formula domain"
            % (eps, direction.value, std.a, std.b, std.c1, std.c2)
        )
    lo, hi = state_spectrum(std)
    b_here = std.a if direction is Direction.B_GIVEN_A else std.b
    return f_vn(b_here) - f_vn(lo) - f_vn(hi) + f_vn(eps)


@dataclass(frozen=True)
class VnReport:
    """All first-family quantities of one two-mode state, in the configured
    log base (bits by default)."""

    negativity: float
    discord_a_given_b: float
    discord_b_given_a: float
    mutual_info: float


def vn_report(std):
    return VnReport(
        negativity=log_negativity(std),
        discord_a_given_b=discord_vn(std, Direction.A_GIVEN_B),
        discord_b_given_a=discord_vn(std, Direction.B_GIVEN_A),
        mutual_info=mutual_information_vn(std),
    )
