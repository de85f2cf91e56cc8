import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from nlw import qcore
from nlw.qcore import BipartiteShape


def rand_herm(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (a + a.conj().T) / 2


def bell_proj(sign=1):
    v = np.array([1, 0, 0, sign]) / np.sqrt(2)
    return qcore.projector(v)


def test_pt_of_bell_projector_eigenvalues():
    for sign in (1, -1):
        ev = qcore.eigvalsh(qcore.partial_transpose(bell_proj(sign), BipartiteShape(2, 2)))
        np.testing.assert_allclose(ev, [-0.5, 0.5, 0.5, 0.5], atol=1e-10)


def test_left_and_right_pt_are_related_by_full_transpose():
    rng = np.random.default_rng(1)
    a = rand_herm(rng, 6)
    sh = BipartiteShape(2, 3)
    np.testing.assert_allclose(qcore.partial_transpose(a, sh, "right"), qcore.partial_transpose(a, sh, "left").T)


@settings(max_examples=40, deadline=None)
@given(m=st.integers(2, 4), n=st.integers(2, 4), seed=st.integers(0, 2**32 - 1))
def test_pt_involution_and_trace(m, n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(m * n, m * n)) + 1j * rng.normal(size=(m * n, m * n))
    sh = BipartiteShape(m, n)
    pt = qcore.partial_transpose(a, sh)
    np.testing.assert_allclose(qcore.partial_transpose(pt, sh), a)
    assert np.isclose(np.trace(pt), np.trace(a))
    # Frobenius isometry
    assert np.isclose(np.linalg.norm(pt), np.linalg.norm(a))


def test_pt_rejects_wrong_shape():
    with pytest.raises(qcore.ShapeError):
        qcore.partial_transpose(np.eye(5), BipartiteShape(2, 2))


def test_partial_trace_of_product():
    rng = np.random.default_rng(2)
    a, b = rand_herm(rng, 2), rand_herm(rng, 3)
    ab = qcore.kron(a, b)
    sh = BipartiteShape(2, 3)
    np.testing.assert_allclose(qcore.partial_trace(ab, sh, "left"), a * np.trace(b))
    np.testing.assert_allclose(qcore.partial_trace(ab, sh, "right"), b * np.trace(a))


def test_kron_matches_numpy_and_respects_cap(monkeypatch):
    a, b = np.arange(4).reshape(2, 2), np.eye(3)
    np.testing.assert_array_equal(qcore.kron(a, b), np.kron(a, b))
    monkeypatch.setenv("NLW_DIM_CAP", "4")
    with pytest.raises(qcore.DimensionCapError):
        qcore.kron(a, b)


def test_default_cap():
    assert qcore.DEFAULT_DIM_CAP == 2**13


@pytest.mark.parametrize("d", [1, 2, 5, 12])
def test_jacobi_agrees_with_lapack(d):
    rng = np.random.default_rng(d)
    a = rand_herm(rng, d)
    lap = qcore.hermitian_eig(a)
    jac = qcore.hermitian_eig(a, method="jacobi")
    np.testing.assert_allclose(jac.eigenvalues, lap.eigenvalues, atol=1e-10)
    recon = jac.eigenvectors @ np.diag(jac.eigenvalues) @ jac.eigenvectors.conj().T
    np.testing.assert_allclose(recon, a, atol=1e-10)


def test_eig_rejects_non_hermitian():
    with pytest.raises(qcore.NotHermitianError):
        qcore.hermitian_eig(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        qcore.hermitian_eig(np.eye(2), method="qr")


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 5))
def test_psd_project_is_nearest_psd(seed, d):
    rng = np.random.default_rng(seed)
    a = rand_herm(rng, d)
    p = qcore.psd_project(a)
    assert qcore.eigvalsh(p).min() >= -1e-12
    best = np.linalg.norm(a - p)
    # no random PSD matrix beats it
    for _ in range(25):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        assert np.linalg.norm(a - g @ g.conj().T * rng.uniform(0, 1)) >= best - 1e-12
    np.testing.assert_allclose(qcore.psd_project(p), p, atol=1e-12)


@given(arrays(np.float64, (3,), elements=st.floats(-1, 1)))
def test_projector_idempotent(v):
    if np.linalg.norm(v) < 1e-3:
        return
    p = qcore.projector(v / np.linalg.norm(v))
    np.testing.assert_allclose(p @ p, p, atol=1e-12)
