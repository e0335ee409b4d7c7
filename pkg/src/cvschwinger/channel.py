"""Pair-creation channel for a constant electric field, in symplectic form.

A constant field converts each (k, -k) particle/antiparticle mode pair by a
two-mode Bogoliubov transformation with coefficients (alpha, beta),
|alpha|^2 - |beta|^2 = 1.  With the dimensionless field strength
x = e*E0 / (k_perp^2 + m^2) one has |beta|^2 = exp(-pi/x), and alpha follows
from a ratio of complex Gamma functions.  On covariance matrices the channel
acts as the two-mode squeezer

    S = [[|alpha| I2, |beta| Z2], [|beta| Z2, |alpha| I2]].

Two scenarios are provided: `apply_unilateral` squeezes only Bob's (q, -q)
pair, `apply_bilateral` squeezes both (p, -p) and (q, -q).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError, ShapeError
from .gaussian import (
    CANONICAL_MODES,
    I2,
    MINUS_P,
    MINUS_Q,
    P,
    Q,
    Z2,
    MultimodeCM,
    apply_symplectic,
    embed_input,
    embed_pair_transform,
    tmsv,
    to_std_form,
)

# Lanczos approximation, g = 7 with 9 coefficients.  Relative accuracy is a
# few 1e-14 on Re z >= 1/2, which covers the strip used by `bogoliubov`.
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def log_gamma(z):
    """log Gamma(z) for complex z, continued analytically from the real axis.

    Uses the Lanczos series on Re z >= 1/2 and the reflection formula
    elsewhere.  Working in log space keeps |Gamma| representable far up the
    imaginary axis where Gamma itself underflows.
    """
    z = complex(z)
    if z.real < 0.5:
        if z.imag == 0.0 and z.real == math.floor(z.real):
            raise DomainError("Gamma pole at non-positive integer %r" % (z,))
        # Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return (
            math.log(math.pi)
            - _log_sin_pi(z)
            - log_gamma(1.0 - z)
        )
    zm = z - 1.0
    acc = _LANCZOS_C[0] + 0j
    for i, c in enumerate(_LANCZOS_C[1:], start=1):
        acc += c / (zm + i)
    t = zm + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (zm + 0.5) * cmath.log(t) - t + cmath.log(acc)


def _log_sin_pi(z):
    """log sin(pi z) without overflow for large |Im z|."""
    piz = math.pi * z
    if abs(piz.imag) < 20.0:
        return cmath.log(cmath.sin(piz))
    # sin w = (e^{iw} - e^{-iw}) / 2i; keep the dominant exponential.
    sgn = 1.0 if piz.imag < 0 else -1.0
    w = 1j * piz * sgn
    return w + cmath.log((1.0 - cmath.exp(-2.0 * w)) / 2j) + (0.0 if sgn > 0 else 1j * math.pi)


def complex_gamma(z):
    """Gamma(z) for complex z (poles at non-positive integers raise)."""
    return cmath.exp(log_gamma(z))


@dataclass(frozen=True)
class FieldParams:
    """Dimensionless field strength x = e*E0 / (k_perp^2 + m^2); x = 0 means
    no field (identity channel)."""

    x: float

    def __post_init__(self):
        try:
            val = float(self.x)
        except (TypeError, ValueError):
            raise DomainError("field strength must be a real number, got %r" % (self.x,))
        if not math.isfinite(val):
            raise DomainError("field strength must be finite, got %r" % (self.x,))
        if val < 0:
            raise DomainError("field strength must be >= 0, got %r" % (self.x,))
        object.__setattr__(self, "x", val)

    @classmethod
    def from_raw(cls, mass, charge, field, k_perp):
        denom = k_perp * k_perp + mass * mass
        if denom <= 0:
            raise DomainError("k_perp^2 + m^2 must be positive")
        val = charge * field / denom
        return cls(val)

    @property
    def zeta(self):
        """Inverse field strength 1/x (infinite at x = 0)."""
        return math.inf if self.x == 0.0 else 1.0 / self.x


@dataclass(frozen=True)
class BogoliubovCoeffs:
    """Bogoliubov pair (alpha, beta) of the channel.

    `beta_sq` is exact (= exp(-pi/x)); `alpha_sq` is fixed to 1 + beta_sq so
    the symplectic constraint holds to machine precision, while `alpha`
    itself carries the Gamma-route value whose modulus is verified against
    sqrt(alpha_sq).
    """

    alpha: complex
    beta: complex
    alpha_sq: float
    beta_sq: float


def bogoliubov(fp):
    """Bogoliubov coefficients for field strength fp.x.

    beta comes directly from |beta|^2 = exp(-pi/x).  alpha is evaluated
    through the Gamma-function route

        alpha = sqrt(2 pi) / Gamma(1/2 + i zeta/2) * exp(-i pi/4 - pi zeta/4),

    zeta = 1/x, and |alpha| is required to match sqrt(1 + |beta|^2) within
    1e-8 (NumericalError otherwise).
    """
    if fp.x == 0.0:
        return BogoliubovCoeffs(alpha=1.0 + 0.0j, beta=0.0j, alpha_sq=1.0, beta_sq=0.0)
    zeta = fp.zeta
    beta_sq = math.exp(-math.pi * zeta)
    if beta_sq == 0.0:
        # x below pi/log(1/DBL_MIN) ~ 4.2e-3: the pair-creation weight
        # underflows and the channel is the identity in double precision.
        # Skipping the Gamma route here also avoids overflowing the (gauge)
        # phase of alpha, whose winding grows like zeta*log(zeta).
        return BogoliubovCoeffs(alpha=1.0 + 0.0j, beta=0.0j, alpha_sq=1.0, beta_sq=0.0)
    beta = 1j * math.exp(-0.5 * math.pi * zeta)
    log_alpha = (
        _HALF_LOG_2PI
        - log_gamma(0.5 + 0.5j * zeta)
        - 0.25j * math.pi
        - 0.25 * math.pi * zeta
    )
    alpha = cmath.exp(log_alpha)
    alpha_sq = 1.0 + beta_sq
    if abs(abs(alpha) - math.sqrt(alpha_sq)) > 1e-8:
        raise NumericalError(
            "Gamma-route |alpha| = %.17g disagrees with sqrt(1+|beta|^2) = %.17g"
            % (abs(alpha), math.sqrt(alpha_sq))
        )
    return BogoliubovCoeffs(alpha=alpha, beta=beta, alpha_sq=alpha_sq, beta_sq=beta_sq)


def squeeze_symplectic(bc):
    """4x4 two-mode squeezer acting on a (particle, antiparticle) pair.

    Only the moduli enter; the overall phases of alpha and beta are gauge.
    """
    am = math.sqrt(bc.alpha_sq)
    bm = math.sqrt(bc.beta_sq)
    return np.block([[am * I2, bm * Z2], [bm * Z2, am * I2]])


@dataclass(frozen=True)
class ChannelOutput:
    """Four-mode output CM plus the parameters that produced it."""

    cm: MultimodeCM
    s: float
    field: FieldParams
    bc: BogoliubovCoeffs
    kind: str


def _apply(s, fp, pairs, kind):
    std_in = tmsv(s)
    cm = embed_input(std_in)
    bc = bogoliubov(fp)
    if bc.beta_sq != 0.0:
        for pair in pairs:
            t = embed_pair_transform(squeeze_symplectic(bc), pair)
            cm = apply_symplectic(cm, t)
    return ChannelOutput(cm=cm, s=float(s), field=fp, bc=bc, kind=kind)


def apply_unilateral(s, fp):
    """Squeeze only Bob's (q, -q) pair; Alice's modes are untouched."""
    return _apply(s, fp, [(Q, MINUS_Q)], "unilateral")


def apply_bilateral(s, fp):
    """Squeeze both (p, -p) and (q, -q) pairs."""
    return _apply(s, fp, [(P, MINUS_P), (Q, MINUS_Q)], "bilateral")


def reduce_pair(out, pair):
    """Two-mode std form of an output pair, first mode of `pair` first."""
    if len(pair) != 2:
        raise DomainError("pair must name exactly two modes")
    idx = []
    for label in pair:
        k = out.cm.mode_index(label)
        idx.extend((2 * k, 2 * k + 1))
    sub = out.cm.matrix[np.ix_(idx, idx)]
    return to_std_form(MultimodeCM(tuple(pair), sub))
