"""Labeled multimode Gaussian covariance matrices and symplectic machinery.

Quadratures are ordered (x1, p1, x2, p2, ...) and the vacuum has unit
variance, so the identity matrix is the vacuum covariance matrix (CM) and
the symplectic form is Omega = blkdiag([[0, 1], [-1, 0]], ...).

Two-mode states reduced from the pair-creation pipeline always arrive in
block form

    sigma = [[a*I2, X], [X.T, b*I2]],   X = diag(c1, c2),

which is captured by `TwoModeStdForm` together with its local/global
symplectic invariants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, NumericalError, ShapeError

SYMMETRY_TOL = 1e-12
PHYSICALITY_TOL = 1e-9

I2 = np.eye(2)
Z2 = np.diag([1.0, -1.0])


class Owner(Enum):
    ALICE = "A"
    BOB = "B"


class Species(Enum):
    PARTICLE = "particle"
    ANTIPARTICLE = "antiparticle"


@dataclass(frozen=True)
class ModeLabel:
    """One field mode: who holds it, and particle vs antiparticle."""

    owner: Owner
    species: Species

    def __str__(self):
        base = "p" if self.owner is Owner.ALICE else "q"
        return base if self.species is Species.PARTICLE else "-" + base


P = ModeLabel(Owner.ALICE, Species.PARTICLE)
Q = ModeLabel(Owner.BOB, Species.PARTICLE)
MINUS_P = ModeLabel(Owner.ALICE, Species.ANTIPARTICLE)
MINUS_Q = ModeLabel(Owner.BOB, Species.ANTIPARTICLE)

# Storage order used for every four-mode state in the package.
CANONICAL_MODES = (P, Q, MINUS_P, MINUS_Q)

MODE_BY_NAME = {str(m): m for m in CANONICAL_MODES}


def symplectic_form(n_modes):
    """Omega for n modes in (x, p) interleaved ordering."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


@dataclass(frozen=True)
class MultimodeCM:
    """Real symmetric covariance matrix over an ordered tuple of mode labels.

    The matrix is defensively copied, symmetrized, and frozen; physicality
    (every symplectic eigenvalue >= 1) is *not* enforced here so that
    `check_physical` can be used to interrogate arbitrary matrices.
    """

    modes: tuple
    matrix: np.ndarray

    def __post_init__(self):
        modes = tuple(self.modes)
        if len(set(modes)) != len(modes):
            raise DomainError("duplicate mode labels: %s" % (modes,))
        mat = np.array(self.matrix, dtype=float)
        n = len(modes)
        if mat.shape != (2 * n, 2 * n):
            raise ShapeError(
                "expected a %dx%d matrix for %d modes, got %s"
                % (2 * n, 2 * n, n, mat.shape)
            )
        if not np.all(np.isfinite(mat)):
            raise DomainError("covariance matrix has non-finite entries")
        scale = max(1.0, float(np.max(np.abs(mat))))
        if float(np.max(np.abs(mat - mat.T))) > SYMMETRY_TOL * scale:
            raise DomainError("covariance matrix is not symmetric")
        mat = 0.5 * (mat + mat.T)
        mat.setflags(write=False)
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "matrix", mat)

    @property
    def n_modes(self):
        return len(self.modes)

    def mode_index(self, label):
        try:
            return self.modes.index(label)
        except ValueError:
            raise DomainError("mode %s not present in %s" % (label, self.modes))


@dataclass(frozen=True)
class TwoModeStdForm:
    """Two-mode state in (a, b, c1, c2) block form; mode A first, mode B second."""

    a: float
    b: float
    c1: float
    c2: float

    def __post_init__(self):
        vals = (self.a, self.b, self.c1, self.c2)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError("non-finite std-form entries: %s" % (vals,))
        if self.a < 1.0 - PHYSICALITY_TOL or self.b < 1.0 - PHYSICALITY_TOL:
            raise DomainError(
                "local variances must satisfy a, b >= 1; got a=%r b=%r"
                % (self.a, self.b)
            )

    def to_cm(self, modes=(P, Q)):
        """Rebuild the explicit 4x4 covariance matrix."""
        m = np.zeros((4, 4))
        m[0, 0] = m[1, 1] = self.a
        m[2, 2] = m[3, 3] = self.b
        m[0, 2] = m[2, 0] = self.c1
        m[1, 3] = m[3, 1] = self.c2
        return MultimodeCM(tuple(modes), m)

    def swapped(self):
        """The same state with the two modes exchanged."""
        return TwoModeStdForm(self.b, self.a, self.c1, self.c2)


@dataclass(frozen=True)
class SymplecticInvariants:
    """Local symplectic invariants of a two-mode std form.

    j1 = det A, j2 = det B, j3 = det X, j4 = det sigma,
    big_delta  = j1 + j2 + 2*j3   (enters the symplectic eigenvalues),
    small_delta = j1 + j2 - 2*j3  (enters the partially transposed ones).
    """

    j1: float
    j2: float
    j3: float
    j4: float
    big_delta: float
    small_delta: float


def invariants(std):
    a, b, c1, c2 = std.a, std.b, std.c1, std.c2
    j1 = a * a
    j2 = b * b
    j3 = c1 * c2
    j4 = (a * b - c1 * c1) * (a * b - c2 * c2)
    return SymplecticInvariants(j1, j2, j3, j4, j1 + j2 + 2.0 * j3, j1 + j2 - 2.0 * j3)


def tmsv(s):
    """Two-mode squeezed vacuum with squeezing s >= 0, in std form.

    a = b = cosh(2s), c1 = -c2 = sinh(2s).
    """
    if not isinstance(s, (int, float)) or not math.isfinite(float(s)):
        raise DomainError("squeezing must be a finite real, got %r" % (s,))
    if s < 0:
        raise DomainError("squeezing must be >= 0, got %r" % (s,))
    ch, sh = math.cosh(2.0 * s), math.sinh(2.0 * s)
    return TwoModeStdForm(ch, ch, sh, -sh)


def embed_input(std):
    """Place a two-mode std form on (p, q) and vacuum on (-p, -q).

    Returns the 8x8 CM over CANONICAL_MODES that feeds the pair-creation
    channel.
    """
    m = np.eye(8)
    m[0:4, 0:4] = std.to_cm().matrix
    return MultimodeCM(CANONICAL_MODES, m)


def symplectic_eigenvalues(cm):
    """Symplectic spectrum of a CM, ascending.

    Computed from the eigenvalues of i*Omega*sigma, which occur in +/- nu
    pairs; adjacent moduli are averaged to cancel pairing noise.
    """
    omega = symplectic_form(cm.n_modes)
    try:
        eigs = np.linalg.eigvals(1j * omega @ cm.matrix)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - defensive
        raise NumericalError("eigendecomposition failed: %s" % exc)
    mags = np.sort(np.abs(eigs))
    return 0.5 * (mags[0::2] + mags[1::2])


@dataclass(frozen=True)
class PhysicalityReport:
    ok: bool
    symmetric: bool
    min_symplectic_eigenvalue: float
    messages: tuple


def check_physical(cm, tol=PHYSICALITY_TOL):
    """Report whether a CM describes a physical Gaussian state.

    Physical means symmetric within tol and min symplectic eigenvalue
    >= 1 - tol (uncertainty principle with unit vacuum variance).
    """
    mat = cm.matrix
    scale = max(1.0, float(np.max(np.abs(mat))))
    asym = float(np.max(np.abs(mat - mat.T)))
    symmetric = asym <= tol * scale
    nu_min = float(symplectic_eigenvalues(cm)[0])
    messages = []
    if not symmetric:
        messages.append("asymmetry %.3e exceeds tol" % asym)
    if nu_min < 1.0 - tol:
        messages.append("min symplectic eigenvalue %.12g < 1 - tol" % nu_min)
    return PhysicalityReport(
        ok=symmetric and nu_min >= 1.0 - tol,
        symmetric=symmetric,
        min_symplectic_eigenvalue=nu_min,
        messages=tuple(messages),
    )


def _require_symplectic(s_mat, n_modes, tol=1e-10):
    omega = symplectic_form(n_modes)
    defect = float(np.max(np.abs(s_mat @ omega @ s_mat.T - omega)))
    if defect > tol:
        raise DomainError(
            "matrix is not symplectic (S Omega S^T deviates by %.3e)" % defect
        )


def apply_symplectic(cm, s_mat):
    """Conjugate a CM by a symplectic matrix: sigma -> S sigma S^T."""
    s_mat = np.asarray(s_mat, dtype=float)
    n = cm.n_modes
    if s_mat.shape != (2 * n, 2 * n):
        raise ShapeError(
            "symplectic must be %dx%d, got %s" % (2 * n, 2 * n, s_mat.shape)
        )
    _require_symplectic(s_mat, n)
    return MultimodeCM(cm.modes, s_mat @ cm.matrix @ s_mat.T)


def embed_pair_transform(s4, pair, modes=CANONICAL_MODES):
    """Embed a two-mode symplectic into the identity on a larger register.

    The 2x2 blocks of `s4` land on the quadrature rows/columns of the two
    modes named in `pair`; every other mode is untouched.
    """
    s4 = np.asarray(s4, dtype=float)
    if s4.shape != (4, 4):
        raise ShapeError("expected a 4x4 symplectic, got %s" % (s4.shape,))
    _require_symplectic(s4, 2)
    modes = tuple(modes)
    idx = []
    for label in pair:
        if label not in modes:
            raise DomainError("mode %s not in register %s" % (label, modes))
        k = modes.index(label)
        idx.extend((2 * k, 2 * k + 1))
    if len(set(idx)) != 4:
        raise DomainError("pair must name two distinct modes")
    full = np.eye(2 * len(modes))
    full[np.ix_(idx, idx)] = s4
    return full


def partial_trace(cm, keep):
    """Restrict a CM to the modes in `keep` (order as stored in cm.modes)."""
    keep = set(keep)
    missing = keep - set(cm.modes)
    if missing:
        raise DomainError("cannot keep modes not present: %s" % (missing,))
    kept = tuple(m for m in cm.modes if m in keep)
    idx = []
    for label in kept:
        k = cm.modes.index(label)
        idx.extend((2 * k, 2 * k + 1))
    return MultimodeCM(kept, cm.matrix[np.ix_(idx, idx)])


def to_std_form(cm, tol=1e-8):
    """Read off (a, b, c1, c2) from a two-mode CM already in block form.

    Raises ShapeError if the CM is not of the form
    [[a*I, diag(c1,c2)], [diag(c1,c2), b*I]] within tol (relative to the
    largest entry).
    """
    if cm.n_modes != 2:
        raise ShapeError("std form needs a two-mode CM, got %d modes" % cm.n_modes)
    m = cm.matrix
    scale = max(1.0, float(np.max(np.abs(m))))
    lim = tol * scale

    def off(x):
        return abs(float(x)) > lim

    a_blk, b_blk, x_blk = m[0:2, 0:2], m[2:4, 2:4], m[0:2, 2:4]
    bad = (
        off(a_blk[0, 0] - a_blk[1, 1])
        or off(b_blk[0, 0] - b_blk[1, 1])
        or off(a_blk[0, 1])
        or off(b_blk[0, 1])
        or off(x_blk[0, 1])
        or off(x_blk[1, 0])
    )
    if bad:
        raise ShapeError("two-mode CM is not in (a, b, c1, c2) block form")
    a = 0.5 * float(a_blk[0, 0] + a_blk[1, 1])
    b = 0.5 * float(b_blk[0, 0] + b_blk[1, 1])
    return TwoModeStdForm(a, b, float(x_blk[0, 0]), float(x_blk[1, 1]))
