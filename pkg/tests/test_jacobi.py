import numpy as np
import pytest
from oracles import eig_bisect

from sidonor.jacobi import ConvergenceError, eigensolve_block
from sidonor.spin_hamiltonian import MU_OVER_BETA, SpinParams, block_decompose, build_hamiltonian

def _has_ext():
    try:
        from sidonor import _jacobi  # noqa: F401
        return True
    except ImportError:
        return False


BACKENDS = ["python"] + (["cython"] if _has_ext() else [])


def random_symmetric(rng, n):
    a = rng.standard_normal((n, n))
    return a + a.T


@pytest.mark.parametrize("backend", BACKENDS)
def test_one_by_one(backend):
    w, v = eigensolve_block(np.array([[3.25]]), backend=backend)
    assert w[0] == 3.25 and v[0, 0] == 1.0


@pytest.mark.parametrize("backend", BACKENDS)
def test_two_by_two_coupling(backend):
    g = 0.7
    w, v = eigensolve_block(np.array([[0.0, g], [g, 0.0]]), backend=backend)
    assert np.allclose(w, [-g, g], atol=1e-15)
    assert np.allclose(np.abs(v), np.full((2, 2), np.sqrt(0.5)), atol=1e-14)


@pytest.mark.parametrize("backend", BACKENDS)
def test_six_by_six_spin_block_vs_bisection_oracle(backend):
    p = SpinParams(0.3, 0.4, beta=1.0, mu=MU_OVER_BETA * 1.0)
    block = next(b for b in block_decompose(build_hamiltonian(p)) if b.m_plus_M == 0)
    w, v = eigensolve_block(block.matrix, backend=backend)
    ref = eig_bisect(block.matrix)
    assert np.allclose(w, ref, atol=1e-10)
    # eigenpair residual and orthonormality
    scale = np.linalg.norm(block.matrix)
    for j in range(6):
        assert np.linalg.norm(block.matrix @ v[:, j] - w[j] * v[:, j]) <= 1e-10 * scale
    assert np.max(np.abs(v.T @ v - np.eye(6))) < 1e-10


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("n", [2, 3, 4, 6, 8])
def test_random_matrices_against_oracles(backend, n):
    rng = np.random.default_rng(100 + n)
    for _ in range(5):
        a = random_symmetric(rng, n)
        w, v = eigensolve_block(a, backend=backend)
        assert np.allclose(w, np.linalg.eigvalsh(a), atol=1e-12 * max(1, np.linalg.norm(a)))
        assert np.allclose(w, eig_bisect(a), atol=1e-10 * max(1, np.linalg.norm(a)))
        assert np.all(np.diff(w) >= -1e-14)
        assert np.max(np.abs(v.T @ v - np.eye(n))) < 1e-10
        recon = v @ np.diag(w) @ v.T
        assert np.allclose(recon, a, atol=1e-12 * max(1, np.linalg.norm(a)))


def test_backends_agree_exactly():
    if "cython" not in BACKENDS:
        pytest.skip("compiled kernel not built")
    rng = np.random.default_rng(7)
    for n in (2, 4, 6, 8, 12, 16):
        a = random_symmetric(rng, n)
        w_py, v_py = eigensolve_block(a, backend="python")
        w_cy, v_cy = eigensolve_block(a, backend="cython")
        assert np.array_equal(w_py, w_cy)
        assert np.array_equal(v_py, v_cy)


@pytest.mark.parametrize("backend", BACKENDS)
def test_sign_convention(backend):
    rng = np.random.default_rng(11)
    a = random_symmetric(rng, 5)
    _, v = eigensolve_block(a, backend=backend)
    for j in range(5):
        k = int(np.argmax(np.abs(v[:, j])))
        assert v[k, j] > 0.0


@pytest.mark.parametrize("backend", BACKENDS)
def test_zero_and_diagonal_matrices(backend):
    w, v = eigensolve_block(np.zeros((4, 4)), backend=backend)
    assert np.array_equal(w, np.zeros(4)) and np.array_equal(v, np.eye(4))
    d = np.diag([3.0, -1.0, 2.0, 0.5])
    w, v = eigensolve_block(d, backend=backend)
    assert np.array_equal(w, np.array([-1.0, 0.5, 2.0, 3.0]))


def test_determinism():
    rng = np.random.default_rng(23)
    a = random_symmetric(rng, 6)
    w1, v1 = eigensolve_block(a)
    w2, v2 = eigensolve_block(a)
    assert np.array_equal(w1, w2) and np.array_equal(v1, v2)


def test_input_validation():
    with pytest.raises(ValueError):
        eigensolve_block(np.ones((2, 3)))
    with pytest.raises(ValueError):
        eigensolve_block(np.array([[0.0, 1.0], [1.0 + 1e-12, 0.0]]))
    with pytest.raises(ValueError):
        eigensolve_block(np.eye(3), backend="fortran")


def test_unreachable_tolerance_raises():
    rng = np.random.default_rng(5)
    a = random_symmetric(rng, 4)
    with pytest.raises(ConvergenceError):
        eigensolve_block(a, tol=0.0)
