"""Spectrum sweeps versus the reduced field beta = 2 mu_B B / J.

A sweep diagonalizes each conserved-projection block on a beta grid and
connects eigenvectors between adjacent grid points by maximal overlap
("adiabatic tracks").  On top of the tracks:

* :func:`find_anticrossings` locates level crossings (sign changes of a
  track-pair gap, only possible for uncoupled pairs) and anticrossings.
  An anticrossing is detected as a *character exchange*: a track whose
  dominant basis state at the high-beta end differs from the one at the
  low-beta end.  Its location ``beta_star`` is the half-transfer point where
  the entering character's weight crosses 1/2, and ``min_gap`` is the
  distance to the nearest same-block level there.  For weakly coupled pairs
  this reduces to the textbook minimum-gap point; for the strongly mixed
  regime (alpha ~ 0.3) it remains well defined where a plain adjacent-gap
  minimum does not.
* :func:`adiabatic_transfer_trace` certifies which basis state each track
  turns into across the sweep, with the dominant weights at both ends.
* :func:`eq19_gap` is the strong-field closed form for the splitting of the
  two lowest M + m = -1 levels at equal hyperfine couplings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import DEFAULT_CONSTANTS, PhysicalConstants
from .jacobi import eigensolve_block
from .spin_hamiltonian import (
    BASIS,
    BLOCK_ORDER,
    BLOCKS,
    MU_OVER_BETA,
    SpinParams,
    build_hamiltonian,
)

DEFAULT_BETA_GRID = np.linspace(0.2, 3.0, 401)

OVERLAP_AMBIGUITY = 1e-6
_MAX_REFINE_DEPTH = 24

# lowest electron level at strong field: both electrons down (M = -1)
GROUND_QUARTET = (13, 14, 15, 16)


@dataclass(frozen=True)
class Track:
    """One adiabatically-continued eigenvalue track of a symmetry block."""

    block: int                 # M + m of the block
    basis: tuple[int, ...]     # 1-based basis indices spanning the block
    energies: np.ndarray       # (n_beta,), units of J
    vectors: np.ndarray        # (n_beta, dim), eigenvector components

    def dominant(self, i: int) -> tuple[int, float]:
        """(basis label, weight) of the dominant component at grid point i."""
        w = self.vectors[i] ** 2
        k = int(np.argmax(w))
        return self.basis[k], float(w[k])


@dataclass(frozen=True)
class SpectrumSweep:
    beta_grid: np.ndarray
    tracks: list[Track]        # block listing order, ascending within block
    params: SpinParams         # template: alphas (+ mu when mu_mode = "fixed")
    mu_mode: str               # "slaved" | "fixed"

    def energy_matrix(self) -> np.ndarray:
        """(n_beta, 16) matrix of all tracks in listing order."""
        return np.column_stack([t.energies for t in self.tracks])


@dataclass(frozen=True)
class AnticrossingReport:
    pair: tuple[int, int]      # (entering label at high beta, label after exchange)
    beta_star: float
    min_gap: float             # units of J; 0 for true crossings
    eq19_gap: float | None     # strong-field closed form, where applicable
    block: int
    kind: str                  # "anticrossing" | "crossing"
    partner: int | None        # dominant label of the nearest level at beta_star
    enter_weight: float
    exit_weight: float


@dataclass(frozen=True)
class TransferTrace:
    block: int
    level: int                 # 1-based track position in listing order
    enter_label: int           # dominant basis state at the high-beta end
    exit_label: int            # dominant basis state at the low-beta end
    enter_weight: float
    exit_weight: float
    conclusive: bool           # both end weights >= 0.6


class _BlockSystem:
    """Per-block Hamiltonian pieces H(beta) = C0 + beta*Cb + mu(beta)*Cm."""

    def __init__(self, params: SpinParams, mu_mode: str):
        if mu_mode not in ("slaved", "fixed"):
            raise ValueError("mu_mode must be 'slaved' or 'fixed'")
        self.params = params
        self.mu_mode = mu_mode
        base = build_hamiltonian(
            SpinParams(params.alpha_a, params.alpha_b, beta=0.0, mu=0.0)
        )
        with_beta = build_hamiltonian(
            SpinParams(params.alpha_a, params.alpha_b, beta=1.0, mu=0.0)
        )
        with_mu = build_hamiltonian(
            SpinParams(params.alpha_a, params.alpha_b, beta=0.0, mu=1.0)
        )
        self.parts = {}
        for key in BLOCK_ORDER:
            sel = [i - 1 for i in BLOCKS[key]]
            ix = np.ix_(sel, sel)
            self.parts[key] = (base[ix], with_beta[ix] - base[ix], with_mu[ix] - base[ix])

    def mu_at(self, beta: float) -> float:
        return MU_OVER_BETA * beta if self.mu_mode == "slaved" else self.params.mu

    def solve(self, key: int, beta: float):
        c0, cb, cm = self.parts[key]
        h = c0 + beta * cb + self.mu_at(beta) * cm
        h = 0.5 * (h + h.T)  # exact symmetry despite rounding in the assembly
        return eigensolve_block(h)


def _greedy_match(v0: np.ndarray, v1: np.ndarray) -> tuple[list[int], float]:
    """Assign new eigenvectors to previous tracks by largest |overlap|.

    Returns (perm, margin): perm[i] is the v1 column continuing track i;
    margin is the smallest lead of a chosen overlap over its best remaining
    alternative in the same row (ambiguity signal).
    """
    O = np.abs(v0.T @ v1)
    n = O.shape[0]
    perm = [-1] * n
    margin = np.inf
    avail_r = set(range(n))
    avail_c = set(range(n))
    work = O.copy()
    for _ in range(n):
        i, j = np.unravel_index(int(np.argmax(work)), work.shape)
        alternatives = [O[i, k] for k in avail_c if k != j]
        if alternatives:
            margin = min(margin, O[i, j] - max(alternatives))
        perm[i] = j
        avail_r.discard(i)
        avail_c.discard(j)
        work[i, :] = -1.0
        work[:, j] = -1.0
    return perm, float(margin)


def _match(system: _BlockSystem, key: int, b0, v0, b1, v1, depth: int = 0) -> list[int]:
    """Overlap matching with deterministic local refinement on ambiguity."""
    perm, margin = _greedy_match(v0, v1)
    if margin >= OVERLAP_AMBIGUITY or depth >= _MAX_REFINE_DEPTH:
        return perm
    bm = 0.5 * (b0 + b1)
    _, vm = system.solve(key, bm)
    p_left = _match(system, key, b0, v0, bm, vm, depth + 1)
    vm_aligned = vm[:, p_left]
    p_right = _match(system, key, bm, vm_aligned, b1, v1, depth + 1)
    return p_right


def sweep_spectrum(
    template: SpinParams,
    beta_grid=None,
    mu_mode: str = "slaved",
) -> SpectrumSweep:
    """Diagonalize all blocks over the beta grid with adiabatic continuation.

    ``mu_mode="slaved"`` ties mu to beta through the physical ratio
    g_N mu_N / (2 mu_B) (a single swept field B); ``"fixed"`` holds
    ``template.mu`` constant.
    """
    betas = DEFAULT_BETA_GRID if beta_grid is None else np.asarray(beta_grid, dtype=float)
    if betas.ndim != 1 or betas.size == 0:
        raise ValueError("beta_grid must be a non-empty 1-D array")
    if betas.size > 1 and not np.all(np.diff(betas) > 0):
        raise ValueError("beta_grid must be strictly ascending")

    system = _BlockSystem(template, mu_mode)
    tracks: list[Track] = []
    for key in BLOCK_ORDER:
        dim = len(BLOCKS[key])
        energies = np.empty((betas.size, dim))
        vectors = np.empty((betas.size, dim, dim))
        prev_v = None
        prev_b = None
        for i, b in enumerate(betas):
            w, v = system.solve(key, b)
            if prev_v is not None:
                perm = _match(system, key, prev_b, prev_v, b, v)
                w = w[perm]
                v = v[:, perm]
            energies[i] = w
            vectors[i] = v
            prev_v, prev_b = v, b
        for t in range(dim):
            tracks.append(
                Track(
                    block=key,
                    basis=BLOCKS[key],
                    energies=energies[:, t].copy(),
                    vectors=vectors[:, :, t].copy(),
                )
            )
    return SpectrumSweep(beta_grid=betas, tracks=tracks, params=template, mu_mode=mu_mode)


def _locate_track_column(v_ref: np.ndarray, v: np.ndarray) -> int:
    return int(np.argmax(np.abs(v_ref @ v)))


def _exchange_report(
    system: _BlockSystem, sweep: SpectrumSweep, track: Track, crossing_tol: float
) -> AnticrossingReport | None:
    betas = sweep.beta_grid
    n = betas.size
    wts = track.vectors**2
    enter_label, enter_weight = track.dominant(n - 1)
    exit_label, exit_weight = track.dominant(0)
    if enter_label == exit_label:
        return None

    j_hi = track.basis.index(enter_label)
    j_lo = track.basis.index(exit_label)
    whi = wts[:, j_hi]
    # half-transfer point of the entering character, scanned from the top;
    # if the entering weight never reaches 1/2 (strong mixing), fall back to
    # the dominance-swap point between the two exchanging characters
    f = whi - 0.5 if whi[-1] >= 0.5 else whi - wts[:, j_lo]
    bracket = None
    for i in range(n - 1, 0, -1):
        if f[i] >= 0.0 and f[i - 1] < 0.0:
            bracket = (i - 1, i)
            break
    if bracket is None:
        return None
    i0, i1 = bracket

    v_ref = track.vectors[i1]
    lo, hi = betas[i0], betas[i1]
    use_half = whi[-1] >= 0.5
    for _ in range(16):
        mid = 0.5 * (lo + hi)
        w, v = system.solve(track.block, mid)
        col = _locate_track_column(v_ref, v)
        wcol = v[:, col] ** 2
        val = wcol[j_hi] - (0.5 if use_half else wcol[j_lo])
        if val >= 0.0:
            hi = mid
        else:
            lo = mid
    beta_star = 0.5 * (lo + hi)

    w, v = system.solve(track.block, beta_star)
    col = _locate_track_column(v_ref, v)
    others = [abs(w[j] - w[col]) for j in range(len(w)) if j != col]
    gap = min(others)
    partner_col = min(
        (j for j in range(len(w)) if j != col), key=lambda j: abs(w[j] - w[col])
    )
    partner = track.basis[int(np.argmax(np.abs(v[:, partner_col])))]

    scale = max(1.0, float(np.max(np.abs(w))))
    kind = "anticrossing" if gap > crossing_tol * scale else "crossing"

    eq19 = None
    p = sweep.params
    if p.alpha_a == p.alpha_b and beta_star > 1.1:
        eq19 = eq19_gap_dimensionless(p.alpha_a, beta_star)

    return AnticrossingReport(
        pair=(enter_label, exit_label),
        beta_star=float(beta_star),
        min_gap=float(gap),
        eq19_gap=eq19,
        block=track.block,
        kind=kind,
        partner=partner,
        enter_weight=enter_weight,
        exit_weight=exit_weight,
    )


def _crossing_reports(sweep: SpectrumSweep, crossing_tol: float) -> list[AnticrossingReport]:
    betas = sweep.beta_grid
    out = []
    for key in BLOCK_ORDER:
        block_tracks = [t for t in sweep.tracks if t.block == key]
        for s in range(len(block_tracks)):
            for t in range(s + 1, len(block_tracks)):
                d = block_tracks[s].energies - block_tracks[t].energies
                scale = max(
                    1.0,
                    float(np.max(np.abs(block_tracks[s].energies))),
                    float(np.max(np.abs(block_tracks[t].energies))),
                )
                if np.max(np.abs(d)) <= crossing_tol * scale:
                    continue  # degenerate pair everywhere, not a crossing
                for i in range(betas.size - 1):
                    if d[i] == 0.0 or d[i] * d[i + 1] < 0.0:
                        frac = 0.0 if d[i] == 0.0 else d[i] / (d[i] - d[i + 1])
                        bstar = betas[i] + frac * (betas[i + 1] - betas[i])
                        lab_s, w_s = block_tracks[s].dominant(i + 1)
                        lab_t, w_t = block_tracks[t].dominant(i + 1)
                        out.append(
                            AnticrossingReport(
                                pair=(lab_s, lab_t),
                                beta_star=float(bstar),
                                min_gap=0.0,
                                eq19_gap=None,
                                block=key,
                                kind="crossing",
                                partner=None,
                                enter_weight=w_s,
                                exit_weight=w_t,
                            )
                        )
    return out


def find_anticrossings(
    sweep: SpectrumSweep, crossing_tol: float = 1e-9
) -> list[AnticrossingReport]:
    """All character exchanges (anticrossings) and true crossings of the sweep.

    Gaps below ``crossing_tol`` (relative to the local energy scale) are
    classified as crossings.  Deterministic ordering by (beta_star, block,
    pair).
    """
    system = _BlockSystem(sweep.params, sweep.mu_mode)
    reports: list[AnticrossingReport] = []
    for track in sweep.tracks:
        if len(track.basis) < 2:
            continue
        rep = _exchange_report(system, sweep, track, crossing_tol)
        if rep is not None:
            reports.append(rep)
    reports.extend(_crossing_reports(sweep, crossing_tol))
    reports.sort(key=lambda r: (r.beta_star, r.block, r.pair))
    return reports


def spin_transfer_reports(reports: list[AnticrossingReport]) -> list[AnticrossingReport]:
    """Anticrossings that move nuclear-spin information into the electrons.

    Selected: the track enters (strong field) as one of the lowest electron
    quartet |13>, |14>, |15>, |16> and the exchange changes the total
    electron projection (triplet-to-singlet character transfer).
    """
    out = []
    for r in reports:
        if r.kind != "anticrossing":
            continue
        if r.pair[0] not in GROUND_QUARTET:
            continue
        if BASIS[r.pair[0] - 1].M == BASIS[r.pair[1] - 1].M:
            continue
        out.append(r)
    return out


def adiabatic_transfer_trace(sweep: SpectrumSweep) -> list[TransferTrace]:
    """End-to-end character of every track: what each state turns into.

    A trace is conclusive only when the dominant weight is at least 0.6 at
    both ends; strongly mixed endpoints (e.g. near-equal singlet components)
    are reported with their labels but flagged inconclusive.
    """
    traces = []
    n = sweep.beta_grid.size
    for level, track in enumerate(sweep.tracks, start=1):
        enter_label, enter_weight = track.dominant(n - 1)
        exit_label, exit_weight = track.dominant(0)
        traces.append(
            TransferTrace(
                block=track.block,
                level=level,
                enter_label=enter_label,
                exit_label=exit_label,
                enter_weight=enter_weight,
                exit_weight=exit_weight,
                conclusive=enter_weight >= 0.6 and exit_weight >= 0.6,
            )
        )
    return traces


def refine_beta_grid(beta_grid, centers, window: float = 0.05, factor: int = 10):
    """Merge factor-times-finer points within +-window of each center.

    Used for the two-pass sweep export: a first pass locates the
    crossing/anticrossing points, the export pass resolves their vicinity
    ten times finer.  The result is strictly ascending and deterministic.
    """
    grid = np.asarray(beta_grid, dtype=float)
    centers = [c for c in centers if grid[0] <= c <= grid[-1]]
    if grid.size < 2 or not centers:
        return grid
    fine = float(np.min(np.diff(grid))) / factor
    pieces = [grid]
    for c in centers:
        lo = max(grid[0], c - window)
        hi = min(grid[-1], c + window)
        pieces.append(np.arange(lo, hi + 0.5 * fine, fine))
    return np.unique(np.concatenate(pieces))


def eq19_gap_dimensionless(alpha: float, beta: float) -> float:
    """Strong-field splitting of the two lowest M+m = -1 levels, units of J.

    (alpha/2)^2 (1/(beta-1) - 1/beta); valid for beta >> 1 at equal couplings.
    """
    return (alpha / 2.0) ** 2 * (1.0 / (beta - 1.0) - 1.0 / beta)


def eq19_gap(
    B: float,
    J: float,
    A: float,
    pc: PhysicalConstants = DEFAULT_CONSTANTS,
) -> tuple[float, float]:
    """Physical strong-field gap E14 - E15 = (A/2)^2/(2 mu_B B - J) - (A/2)^2/(2 mu_B B).

    Args:
        B: magnetic field, T (must be > 0).
        J: exchange energy, J (>= 0; the validity window 2 mu_B B >= 3 J is
           enforced, which keeps the formula away from its 2 mu_B B = J pole).
        A: common hyperfine coupling of both donors, J.

    Returns:
        (gap, nu): splitting in joules and the transition frequency gap/h in Hz.
    """
    if B <= 0:
        raise ValueError("B must be positive")
    if J < 0:
        raise ValueError("J must be non-negative")
    zeeman = 2.0 * pc.mu_B * B
    if J > 0 and zeeman < 3.0 * J:
        raise ValueError(
            "strong-field formula requires 2 mu_B B >= 3 J (anticrossing region excluded)"
        )
    if J == 0.0 or A == 0.0:
        return 0.0, 0.0
    gap = (A / 2.0) ** 2 / (zeeman - J) - (A / 2.0) ** 2 / zeeman
    return gap, gap / pc.h
