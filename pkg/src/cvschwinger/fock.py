"""Truncated number-basis oracle.

Everything the Gaussian pipeline computes in closed form is recomputed here
by brute force: states live as amplitude tensors over a truncated Fock basis,
the pair-creation channel acts through the two-mode-squeezer series

    S |n, 0> = alpha^{-(n+1)} sum_m (beta*/alpha*)^m sqrt(C(n+m, m)) |n+m, m>,

and negativity / entropies come from dense partial transposes and spectra.
Intended for small squeezing (the series truncates geometrically in
tanh^2 = |beta|^2/|alpha|^2); used by the test suite and the `oracle-check`
CLI subcommand to certify the symplectic route.

Amplitudes are kept unnormalized after truncation; the dropped probability
mass is tracked in `tail_weight` instead of being renormalized away, so a
fat tail is visible rather than silently absorbed.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, TruncationError
from .gaussian import MINUS_P, MINUS_Q, P, Q
from .vn import log_base

TMSV_TAIL_TOL = 1e-8
CHANNEL_TAIL_TOL = 1e-6


@dataclass(frozen=True)
class TruncatedState:
    """Pure multimode state on a truncated Fock basis.

    amps[n1, ..., nk] is the amplitude of |n1 ... nk> in the order given by
    `modes`; every axis runs 0..n_max.  tail_weight is the probability mass
    lost to truncation (sum |amps|^2 + tail_weight = 1 up to roundoff).
    """

    modes: tuple
    amps: np.ndarray
    tail_weight: float

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.ndim != len(self.modes):
            raise DomainError(
                "amplitude tensor has %d axes for %d modes"
                % (amps.ndim, len(self.modes))
            )
        dims = set(amps.shape)
        if len(dims) != 1:
            raise DomainError("all mode axes must share one truncation, got %s" % (amps.shape,))
        if not np.all(np.isfinite(amps.view(float))):
            raise DomainError("non-finite amplitude")
        if not (0.0 <= self.tail_weight < 1.0):
            raise DomainError("tail_weight must be in [0, 1), got %r" % (self.tail_weight,))
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)
        object.__setattr__(self, "modes", tuple(self.modes))

    @property
    def n_max(self):
        return self.amps.shape[0] - 1

    @property
    def norm_sq(self):
        return float(np.vdot(self.amps, self.amps).real)

    def mode_axis(self, label):
        try:
            return self.modes.index(label)
        except ValueError:
            raise DomainError("mode %s not present in %s" % (label, self.modes))


def tmsv_fock(s, n_max):
    """Two-mode squeezed vacuum as a Schmidt series on modes (p, q).

    Amplitudes sech(s) tanh(s)^n on |n, n>; the exact dropped mass is the
    geometric tail tanh(s)^{2(n_max+1)}.  Warns if that tail exceeds 1e-8.
    """
    s = float(s)
    if not math.isfinite(s) or s < 0:
        raise DomainError("squeezing must be finite and >= 0, got %r" % (s,))
    n_max = int(n_max)
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    t = math.tanh(s)
    tail = t ** (2 * (n_max + 1))
    if tail > TMSV_TAIL_TOL:
        warnings.warn(
            "tmsv_fock truncation tail %.3g exceeds %.0e at s=%g, n_max=%d"
            % (tail, TMSV_TAIL_TOL, s, n_max),
            stacklevel=2,
        )
    amps = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    sech = 1.0 / math.cosh(s)
    amps[np.arange(n_max + 1), np.arange(n_max + 1)] = sech * t ** np.arange(n_max + 1)
    return TruncatedState(modes=(P, Q), amps=amps, tail_weight=tail)


def _squeeze_kernel(bc, n_max):
    """Complex kernel K[n, m]: |n, 0> component -> amplitude on |n+m, m>.

    Entries with n + m > n_max are zero (truncated).  Log-space evaluation
    keeps the binomial factors stable out to large n_max.
    """
    alpha, beta = complex(bc.alpha), complex(bc.beta)
    am = abs(alpha)
    ratio = beta.conjugate() / alpha.conjugate()
    rm = abs(ratio)
    n = np.arange(n_max + 1)
    # ln |K| = -(n+1) ln|alpha| + m ln|ratio| + 0.5 ln C(n+m, m)
    lg = np.vectorize(math.lgamma)(n + 1.0)
    ln_binom = lg[:, None] * 0.0
    tot = n[:, None] + n[None, :]
    valid = tot <= n_max
    ln_binom = np.where(
        valid,
        np.vectorize(math.lgamma)(np.where(valid, tot + 1.0, 1.0))
        - lg[:, None]
        - lg[None, :],
        -np.inf,
    )
    with np.errstate(divide="ignore"):
        ln_mag = (
            -(n[:, None] + 1.0) * math.log(am)
            + n[None, :] * (math.log(rm) if rm > 0 else -math.inf)
            + 0.5 * ln_binom
        )
    mag = np.exp(ln_mag)
    phase_a = (alpha / am) ** -(n + 1.0) if am > 0 else np.ones(n_max + 1, dtype=complex)
    phase_r = np.ones(n_max + 1, dtype=complex)
    if rm > 0:
        phase_r = (ratio / rm) ** n.astype(float)
    return mag * phase_a[:, None] * phase_r[None, :]


def apply_schwinger_fock(state, bc, pair, n_max=None):
    """Act with the pair-creation squeezer on `pair` = (particle, antiparticle).

    The antiparticle arm must be in vacuum (it is for every pipeline input);
    if that mode is absent it is appended in vacuum first.  Raises
    TruncationError when the accumulated dropped mass exceeds 1e-6.
    """
    if len(pair) != 2:
        raise DomainError("pair must name exactly two modes")
    part, anti = pair
    if n_max is not None and int(n_max) != state.n_max:
        raise DomainError("changing n_max mid-pipeline is not supported")
    nm = state.n_max
    if anti not in state.modes:
        amps = np.zeros(state.amps.shape + (nm + 1,), dtype=complex)
        amps[..., 0] = state.amps
        state = TruncatedState(state.modes + (anti,), amps, state.tail_weight)
    ax_p = state.mode_axis(part)
    ax_a = state.mode_axis(anti)
    if ax_p == ax_a:
        raise DomainError("pair must name two distinct modes")
    vac_sel = [slice(None)] * state.amps.ndim
    vac_sel[ax_a] = slice(1, None)
    if np.any(state.amps[tuple(vac_sel)] != 0):
        raise DomainError("antiparticle arm %s is not in vacuum" % (anti,))

    if bc.beta_sq == 0.0:
        return state

    kern = _squeeze_kernel(bc, nm)
    # Move the pair axes to the back: work[..., n_particle, n_anti].
    work = np.moveaxis(state.amps, (ax_p, ax_a), (-2, -1))
    out = np.zeros_like(work)
    src = work[..., 0]
    for n in range(nm + 1):
        m = np.arange(nm + 1 - n)
        out[..., n + m, m] += src[..., n, None] * kern[n, : nm + 1 - n]
    out = np.moveaxis(out, (-2, -1), (ax_p, ax_a))
    norm_in = float(np.vdot(state.amps, state.amps).real)
    norm_out = float(np.vdot(out, out).real)
    tail = state.tail_weight + max(0.0, norm_in - norm_out)
    if tail > CHANNEL_TAIL_TOL:
        raise TruncationError(
            "truncation tail %.3g exceeds %.0e (n_max=%d); raise n_max"
            % (tail, CHANNEL_TAIL_TOL, nm)
        )
    return TruncatedState(state.modes, out, tail)


def reduced_density(state, keep):
    """Density matrix of the modes in `keep` (given order), rest traced out.

    Returns (rho, dim) with rho of shape (dim^k, dim^k), row index built from
    the kept occupation numbers in the order requested.
    """
    keep = tuple(keep)
    axes = [state.mode_axis(m) for m in keep]
    if len(set(axes)) != len(axes):
        raise DomainError("duplicate mode in keep list")
    rest = [i for i in range(state.amps.ndim) if i not in axes]
    dim = state.n_max + 1
    psi = np.transpose(state.amps, axes + rest).reshape(dim ** len(keep), -1)
    rho = psi @ psi.conj().T
    return rho, dim


def marginal_photon_distribution(state, mode):
    """Probabilities p_n of finding n quanta in one mode (tail not included)."""
    ax = state.mode_axis(mode)
    prob = np.abs(state.amps) ** 2
    other = tuple(i for i in range(prob.ndim) if i != ax)
    return prob.sum(axis=other)


def mean_occupation(state, mode):
    p = marginal_photon_distribution(state, mode)
    return float(np.dot(np.arange(p.size), p))


def _entropy_vn(evals, ln_base):
    lam = np.clip(evals.real, 0.0, None)
    lam = lam[lam > 1e-300]
    return float(-(lam * np.log(lam)).sum() / ln_base)


def oracle_measures(state, pair):
    """Spectral measures of a two-mode reduction: negativity (PPT trace
    norm), von Neumann entropies and mutual information in the configured
    log base, Renyi-2 entropies and mutual information (natural log), and
    the joint purity.  Gaussian discord is deliberately not recomputed here;
    its measurement optimization has no cheap number-basis analogue.
    """
    if state.tail_weight > CHANNEL_TAIL_TOL:
        raise TruncationError(
            "state tail %.3g too large for trustworthy measures" % state.tail_weight
        )
    a_mode, b_mode = pair
    rho, dim = reduced_density(state, (a_mode, b_mode))
    rho_a, _ = reduced_density(state, (a_mode,))
    rho_b, _ = reduced_density(state, (b_mode,))

    ln_base = math.log(log_base())
    ev_ab = np.linalg.eigvalsh(rho)
    ev_a = np.linalg.eigvalsh(rho_a)
    ev_b = np.linalg.eigvalsh(rho_b)
    s_ab = _entropy_vn(ev_ab, ln_base)
    s_a = _entropy_vn(ev_a, ln_base)
    s_b = _entropy_vn(ev_b, ln_base)

    pt = rho.reshape(dim, dim, dim, dim).transpose(0, 3, 2, 1).reshape(dim * dim, dim * dim)
    trace_norm = float(np.abs(np.linalg.eigvalsh(pt)).sum())
    negativity = max(0.0, math.log(max(trace_norm, 1.0)) / ln_base)

    pur_ab = float(np.vdot(rho, rho).real)
    pur_a = float(np.vdot(rho_a, rho_a).real)
    pur_b = float(np.vdot(rho_b, rho_b).real)
    s2_ab = -math.log(pur_ab)
    s2_a = -math.log(pur_a)
    s2_b = -math.log(pur_b)

    return {
        "negativity": negativity,
        "entropy_vn_a": s_a,
        "entropy_vn_b": s_b,
        "entropy_vn_joint": s_ab,
        "mutual_info_vn": s_a + s_b - s_ab,
        "renyi2_entropy_a": s2_a,
        "renyi2_entropy_b": s2_b,
        "renyi2_entropy_joint": s2_ab,
        "mutual_info_renyi2": s2_a + s2_b - s2_ab,
        "purity_joint": pur_ab,
    }


def pipeline_state(s, bc, scenario, n_max):
    """Fock-space version of the full channel: tmsv on (p, q), then the
    pair-creation squeezer on (q, -q) alone ('unilateral') or on both
    (p, -p) and (q, -q) ('bilateral')."""
    state = tmsv_fock(s, n_max)
    if scenario == "unilateral":
        return apply_schwinger_fock(state, bc, (Q, MINUS_Q))
    if scenario == "bilateral":
        state = apply_schwinger_fock(state, bc, (P, MINUS_P))
        return apply_schwinger_fock(state, bc, (Q, MINUS_Q))
    raise DomainError("scenario must be 'unilateral' or 'bilateral', got %r" % (scenario,))
