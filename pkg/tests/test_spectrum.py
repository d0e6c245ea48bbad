import numpy as np
import pytest

from sidonor.constants import DEFAULT_CONSTANTS
from sidonor.spectrum import (
    adiabatic_transfer_trace,
    eq19_gap,
    eq19_gap_dimensionless,
    find_anticrossings,
    spin_transfer_reports,
    sweep_spectrum,
)
from sidonor.spin_hamiltonian import (
    BLOCKS,
    MU_OVER_BETA,
    SpinParams,
    block_decompose,
    build_hamiltonian,
)
from sidonor.jacobi import eigensolve_block

REFERENCE = SpinParams(0.3, 0.4, beta=0.0, mu=0.0)  # asymmetric couplings of the worked case


@pytest.fixture(scope="module")
def reference_sweep():
    return sweep_spectrum(REFERENCE, mu_mode="slaved")


# --- sweep basics -----------------------------------------------------------

def test_sweep_track_layout(reference_sweep):
    sweep = reference_sweep
    assert len(sweep.tracks) == 16
    sizes = {}
    for t in sweep.tracks:
        sizes[t.block] = sizes.get(t.block, 0) + 1
        assert t.basis == BLOCKS[t.block]
        assert t.energies.shape == sweep.beta_grid.shape
    assert sizes == {0: 6, 1: 4, -1: 4, 2: 1, -2: 1}


def test_sweep_matches_direct_diagonalization(reference_sweep):
    sweep = reference_sweep
    i = 200
    beta = sweep.beta_grid[i]
    p = SpinParams(0.3, 0.4, beta=beta, mu=MU_OVER_BETA * beta)
    direct = np.sort(
        np.concatenate(
            [eigensolve_block(b.matrix)[0] for b in block_decompose(build_hamiltonian(p))]
        )
    )
    from_sweep = np.sort([t.energies[i] for t in sweep.tracks])
    assert np.allclose(direct, from_sweep, atol=1e-12)


def test_sweep_single_point_grid():
    sweep = sweep_spectrum(REFERENCE, beta_grid=[1.0], mu_mode="slaved")
    assert sweep.beta_grid.size == 1
    assert len(sweep.tracks) == 16
    assert find_anticrossings(sweep) == []  # nothing to exchange on one point


def test_sweep_rejects_bad_grids():
    with pytest.raises(ValueError):
        sweep_spectrum(REFERENCE, beta_grid=[2.0, 1.0])
    with pytest.raises(ValueError):
        sweep_spectrum(REFERENCE, beta_grid=[])
    with pytest.raises(ValueError):
        sweep_spectrum(REFERENCE, mu_mode="free")


def test_sweep_deterministic(reference_sweep):
    again = sweep_spectrum(REFERENCE, mu_mode="slaved")
    for t1, t2 in zip(reference_sweep.tracks, again.tracks):
        assert np.array_equal(t1.energies, t2.energies)
        assert np.array_equal(t1.vectors, t2.vectors)


def test_mu_modes_differ():
    slaved = sweep_spectrum(REFERENCE, beta_grid=[2.0], mu_mode="slaved")
    fixed = sweep_spectrum(SpinParams(0.3, 0.4, 0.0, mu=0.05), beta_grid=[2.0], mu_mode="fixed")
    e_slaved = sorted(t.energies[0] for t in slaved.tracks)
    e_fixed = sorted(t.energies[0] for t in fixed.tracks)
    assert not np.allclose(e_slaved, e_fixed, atol=1e-6)


# --- uncoupled limit: crossings, no anticrossings ---------------------------

@pytest.fixture(scope="module")
def bare_sweep():
    return sweep_spectrum(SpinParams(0.0, 0.0, 0.0, 0.0), mu_mode="fixed")


def test_bare_crossing_at_unit_beta(bare_sweep):
    reports = find_anticrossings(bare_sweep)
    assert all(r.kind == "crossing" for r in reports)
    step = bare_sweep.beta_grid[1] - bare_sweep.beta_grid[0]
    near_one = [r for r in reports if abs(r.beta_star - 1.0) <= step]
    assert near_one
    assert all(r.min_gap == 0.0 for r in near_one)


def test_bare_tracks_keep_their_character(bare_sweep):
    for t in adiabatic_transfer_trace(bare_sweep):
        assert t.enter_label == t.exit_label


def test_bare_lowest_two_levels_touch_at_one(bare_sweep):
    energies = bare_sweep.energy_matrix()
    gaps = np.sort(energies, axis=1)
    gap = gaps[:, 4] - gaps[:, 3]
    i = int(np.argmin(gap))
    step = bare_sweep.beta_grid[1] - bare_sweep.beta_grid[0]
    assert abs(bare_sweep.beta_grid[i] - 1.0) <= step


# --- strong-field ordering --------------------------------------------------

def test_triplet_quartet_below_singlet_quartet_at_strong_field():
    sweep = sweep_spectrum(SpinParams(0.1, 0.1, 0.0, 0.0), beta_grid=[3.0], mu_mode="slaved")
    w = np.sort([t.energies[0] for t in sweep.tracks])
    assert np.all(np.abs(w[:4] - (-3.0 + 0.25)) < 0.2)   # electron triplet M = -1
    assert np.all(np.abs(w[4:8] - (-0.75)) < 0.1)        # electron singlet


# --- anticrossing detection -------------------------------------------------

def test_reference_transfer_pairs(reference_sweep):
    transfers = spin_transfer_reports(find_anticrossings(reference_sweep))
    pairs = {r.pair: r for r in transfers}
    assert set(pairs) == {(15, 12), (13, 10)}
    for r in pairs.values():
        assert r.kind == "anticrossing"
        assert 0.8 < r.beta_star < 1.2
        assert r.min_gap > 0.0
        assert r.enter_weight > 0.9


def test_reference_anticrossing_locations(reference_sweep):
    transfers = {r.pair: r for r in spin_transfer_reports(find_anticrossings(reference_sweep))}
    assert transfers[(15, 12)].beta_star == pytest.approx(1.049, abs=0.02)
    assert transfers[(13, 10)].beta_star == pytest.approx(0.864, abs=0.02)


def test_gap_grows_with_coupling_scale():
    # slightly asymmetric couplings keep the exchange labels well defined
    gaps = []
    for alpha in (0.05, 0.1, 0.2):
        sweep = sweep_spectrum(SpinParams(0.75 * alpha, alpha, 0.0, 0.0), mu_mode="slaved")
        transfers = {r.pair: r for r in spin_transfer_reports(find_anticrossings(sweep))}
        gaps.append(transfers[(15, 12)].min_gap)
    assert gaps[0] < gaps[1] < gaps[2]


def test_reports_sorted_deterministically(reference_sweep):
    reports = find_anticrossings(reference_sweep)
    keys = [(r.beta_star, r.block, r.pair) for r in reports]
    assert keys == sorted(keys)


# --- adiabatic transfer trace -----------------------------------------------

def test_reference_traces(reference_sweep):
    traces = {t.enter_label: t for t in adiabatic_transfer_trace(reference_sweep)}
    t15 = traces[15]
    assert t15.exit_label == 12
    assert t15.enter_weight > 0.9
    assert not t15.conclusive  # exit lands on a near-even singlet mixture
    t13 = traces[13]
    assert t13.exit_label == 10
    t16 = traces[16]
    assert t16.exit_label == 16 and t16.conclusive  # 1x1 block never exchanges


def test_equal_couplings_transfer_is_even_mixture():
    # at alpha_a = alpha_b the a<->b symmetry ties |8> and |12> exactly, so no
    # single exit label dominates; the track still abandons its |14>/|15> character
    sweep = sweep_spectrum(SpinParams(0.1, 0.1, 0.0, 0.0), mu_mode="slaved")
    low = min(
        (t for t in sweep.tracks if t.block == -1), key=lambda t: t.energies[-1]
    )
    n = sweep.beta_grid.size
    w_hi = low.vectors[n - 1] ** 2
    w_lo = low.vectors[0] ** 2
    lab = {s: low.basis.index(s) for s in (8, 12, 14, 15)}
    assert w_hi[lab[14]] + w_hi[lab[15]] > 0.99
    assert w_lo[lab[8]] + w_lo[lab[12]] > 0.98
    assert abs(w_lo[lab[8]] - w_lo[lab[12]]) < 1e-6
    assert w_lo[lab[15]] < 0.05


# --- strong-field gap formula -----------------------------------------------

def test_eq19_matches_dimensionless_times_exchange():
    B, J = 2.0, 7.416e-24
    beta = 2 * DEFAULT_CONSTANTS.mu_B * B / J
    alpha = 0.05
    gap, nu = eq19_gap(B, J, alpha * J)
    assert gap == pytest.approx(eq19_gap_dimensionless(alpha, beta) * J, rel=1e-12)
    assert nu == pytest.approx(gap / DEFAULT_CONSTANTS.h, rel=1e-14)


def test_eq19_numeric_agreement_improves_with_field():
    alpha = 0.05
    rels = {}
    for beta in (5.0, 10.0):
        p = SpinParams(alpha, alpha, beta=beta, mu=MU_OVER_BETA * beta)
        block = next(b for b in block_decompose(build_hamiltonian(p)) if b.m_plus_M == -1)
        w, _ = eigensolve_block(block.matrix)
        closed = eq19_gap_dimensionless(alpha, beta)
        rels[beta] = abs((w[1] - w[0]) - closed) / closed
    assert rels[5.0] < 0.05
    assert rels[10.0] < rels[5.0]


def test_eq19_trivial_cases():
    assert eq19_gap(B=1.0, J=0.0, A=1e-25) == (0.0, 0.0)
    assert eq19_gap(B=1.0, J=1e-24, A=0.0) == (0.0, 0.0)


def test_eq19_domain_errors():
    zeeman = 2 * DEFAULT_CONSTANTS.mu_B  # at B = 1 T
    with pytest.raises(ValueError):
        eq19_gap(B=1.0, J=zeeman, A=1e-26)  # pole region
    with pytest.raises(ValueError):
        eq19_gap(B=1.0, J=zeeman / 2.0, A=1e-26)  # beta = 2 < validity window
    with pytest.raises(ValueError):
        eq19_gap(B=-1.0, J=1e-25, A=1e-26)
    with pytest.raises(ValueError):
        eq19_gap(B=1.0, J=-1e-25, A=1e-26)
