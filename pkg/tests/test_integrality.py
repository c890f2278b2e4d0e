import pytest

from cyclotqft.cyclo import embed_complex
from cyclotqft.matrix import CycloMatrix
from cyclotqft.modular_data import labels, psi, rho_sigma, rho_tau, sl2z_relations_check
from cyclotqft.integrality import (
    claim_check,
    companion_matrix,
    d_matrix,
    h_coefficients,
    integral_generators,
    lagrange_p0,
    matrix_in_O,
    split_check,
    sprime_tprime,
    sv_closed_form,
    sv_direct_sum,
    theorem1_verdict,
    u_matrix,
    v_inverse,
    v_matrix,
    verify_prop1,
    verify_prop2,
    w_matrix,
)
from cyclotqft.numtheory import ambient_field, in_ring_O, sqrt_p, theta, zeta_p

from conftest import PRIMES


def test_u_matrix_columns():
    p = 5
    U = u_matrix(p)
    L = labels(p)
    assert U[0, 0] == 1 and U[1, 0] == -1
    assert U[L.X, 2] == psi(p) and U[L.Xp, 2] == -psi(p)
    assert U.det() != 0


@pytest.mark.parametrize("p", PRIMES)
def test_split(p):
    w = split_check(p)
    assert w.block_diagonal and w.h1_integral
    F = ambient_field(p)
    ps2 = psi(p) ** 2
    assert w.h1_tau == CycloMatrix(F, [[1, 0, 0], [0, 0, ps2], [0, 1, 0]])
    assert w.h1_sigma == CycloMatrix(F, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])


@pytest.mark.parametrize("p", PRIMES)
def test_h2_block_is_sprime(p):
    w = split_check(p)
    S1, T1 = sprime_tprime(p)
    assert (w.h2_sigma, w.h2_tau) == (S1, T1)


def test_sprime_shape():
    S1, T1 = sprime_tprime(7)
    inv = sqrt_p(7).inverse()
    assert S1.row(0) == (inv,) * 4
    assert T1[0, 0] == 1


@pytest.mark.parametrize("p", PRIMES)
def test_d_matrix(p):
    D = d_matrix(p)
    S1, T1 = sprime_tprime(p)
    assert D.inverse() @ S1 @ D == S1.T
    assert D.inverse() @ T1 @ D == T1
    conj = D.inverse() @ S1 @ D
    for k in range(1, D.rows):
        assert conj[0, k] == 2 / sqrt_p(p)


def test_v_matrix():
    V = v_matrix(5)
    assert V.col(0) == (V.field.one,) * 3
    assert V.row(1) == (1, zeta_p(5, 2), zeta_p(5, 4))
    assert V.det() != 0
    assert v_matrix(7).det() != 0


def test_sv_closed_form_cases():
    assert sv_closed_form(5, 0, 0) == sqrt_p(5)
    assert sv_closed_form(5, 1, 0) == 0
    assert sv_closed_form(5, 1, 1) == -zeta_p(5, 3)
    with pytest.raises(IndexError):
        sv_closed_form(5, 3, 0)


def test_sv_brute_force_p5():
    F = ambient_field(5)
    brute = sum((zeta_p(5, l + 2 * l * l) for l in range(5)), F.zero) / sqrt_p(5)
    assert brute == sv_closed_form(5, 1, 1) == sv_direct_sum(5, 1, 1)


@pytest.mark.parametrize("p", PRIMES)
def test_prop1(p):
    ok, mismatch = verify_prop1(p)
    assert ok, mismatch


@pytest.mark.parametrize("p", PRIMES)
def test_lagrange_p0(p):
    coeffs = lagrange_p0(p)
    F = ambient_field(p)
    r = (p - 1) // 2

    def P0(x):
        return sum((c * x**k for k, c in enumerate(coeffs)), F.zero)

    assert P0(F.one) == 1
    for k in range(1, r + 1):
        assert P0(theta(p, k)) == 0
    assert list(coeffs) == list(v_inverse(p).col(0))
    assert all(in_ring_O(c * sqrt_p(p), p) for c in coeffs)


@pytest.mark.parametrize("p", PRIMES)
def test_prop2(p):
    ok, detail = verify_prop2(p)
    assert ok, detail


@pytest.mark.parametrize("p", PRIMES)
def test_companion_eigenvectors(p):
    coeffs = h_coefficients(p)
    C = companion_matrix(coeffs)
    F = ambient_field(p)
    r = (p - 1) // 2
    for j in range(r + 1):
        th = theta(p, j)
        v = CycloMatrix(F, [[th**k] for k in range(r + 1)])
        assert C @ v == v * th
    _, T1 = sprime_tprime(p)
    assert v_inverse(p) @ T1 @ v_matrix(p) == C.T


@pytest.mark.parametrize("p", PRIMES)
def test_claim(p):
    ok, detail = claim_check(p)
    assert ok, detail
    assert len(detail["T_powers_integral"]) == p


@pytest.mark.parametrize("p", PRIMES)
def test_theorem1(p):
    rep = theorem1_verdict(p)
    assert rep
    d = rep.to_dict()
    assert d["ring"] == f"Z[zeta_{p if p % 4 == 1 else 4 * p}]"


def test_control_original_basis_not_integral():
    fail = matrix_in_O(rho_sigma(5), 5)
    assert fail is not None
    assert not fail.membership


@pytest.mark.parametrize("p", [5, 7])
def test_relations_survive_conjugation(p):
    before = sl2z_relations_check(rho_sigma(p), rho_tau(p))
    after = sl2z_relations_check(*integral_generators(p))
    assert (before.lam, before.mu) == (after.lam, after.mu)


@pytest.mark.parametrize("p", PRIMES)
def test_w_conjugation(p):
    W = w_matrix(p)
    Sw, Tw = integral_generators(p)
    assert W @ Sw == rho_sigma(p) @ W
    assert W @ Tw == rho_tau(p) @ W


def test_integral_generators_numerically_conjugate():
    import numpy as np

    W = w_matrix(5).to_complex()
    Sw = integral_generators(5)[0].to_complex()
    assert np.allclose(np.linalg.inv(W) @ rho_sigma(5).to_complex() @ W, Sw, atol=1e-9)
