"""Numbered acceptance criteria. A summary line per criterion is printed at the end of the run."""

import math
import random
import time
from fractions import Fraction

import pytest

from cyclotqft.closure import full_image, h2_image
from cyclotqft.cyclo import CycloField, cyclotomic_poly, embed_complex, galois, root_of_unity
from cyclotqft.integrality import (
    companion_check,
    h_coefficients,
    integral_generators,
    matrix_in_O,
    sv_closed_form,
    sv_direct_sum,
    sv_product,
    v_inverse,
    v_matrix,
    verify_prop1,
    verify_prop2,
    sprime_tprime,
)
from cyclotqft.matrix import CycloMatrix
from cyclotqft.modular_data import fusion_table, rho_sigma, rho_tau, verlinde_check
from cyclotqft.numtheory import (
    ambient_field,
    epsilon_const,
    in_ring_O,
    lemma3_product,
    ring_order,
    sqrt_p,
    theta,
    unit_u,
)
from cyclotqft.weil import (
    check_pi_homomorphism,
    heis_generators,
    intertwining_scalar,
    sigma,
    special_character,
    tau,
    verify_theorem2,
    weil_generator_matrices,
)

from conftest import PRIMES


def acceptance(n, summary):
    return pytest.mark.acceptance(n, summary)


@acceptance(1, "W^-1 rho W entries lie in O for p = 5, 7, 11, 13 (exact, < 30 s each)")
@pytest.mark.parametrize("p", PRIMES)
def test_c1_integral_basis(p):
    start = time.perf_counter()
    Sw, Tw = integral_generators(p)
    for M in (Sw, Tw):
        assert M.shape == ((p - 1) // 2 + 4,) * 2
        assert matrix_in_O(M, p) is None
    assert ring_order(p) == (p if p % 4 == 1 else 4 * p)
    assert time.perf_counter() - start < 30


@acceptance(2, "closed-form S V equals the exact product entrywise for p = 5, 7, 11, 13")
@pytest.mark.parametrize("p", PRIMES)
def test_c2_sv_closed_form(p):
    ok, mismatch = verify_prop1(p)
    assert ok, mismatch
    r = (p - 1) // 2
    SV = sv_product(p)
    for j in range(r + 1):
        for k in range(1, r + 1):
            assert sv_direct_sum(p, j, k) == SV[j, k] == sv_closed_form(p, j, k)


@acceptance(3, "p = eps prod (1 - zeta^k)^2 exactly; u and 1/u are integral in O")
@pytest.mark.parametrize("p", PRIMES)
def test_c3_unit_factorization(p):
    assert epsilon_const(p) * lemma3_product(p) == p
    w = unit_u(p)
    assert w.u * w.u_inv == 1
    assert in_ring_O(w.u, p) and in_ring_O(w.u_inv, p)
    r = (p - 1) // 2
    prod = ambient_field(p).one
    for k in range(1, r + 1):
        prod = prod * (1 - theta(p, k))
    assert prod * w.u == sqrt_p(p)


@acceptance(4, "column 0 of V^-1 S V lies in O^(r+1)")
@pytest.mark.parametrize("p", PRIMES)
def test_c4_column_zero(p):
    ok, detail = verify_prop2(p)
    assert ok, detail
    col = (v_inverse(p) @ sv_product(p)).col(0)
    assert all(in_ring_O(x, p) for x in col)


@acceptance(5, "V^-1 T V = (C_h)^t exactly and every coefficient of h lies in O")
@pytest.mark.parametrize("p", PRIMES)
def test_c5_companion(p):
    ok, detail = companion_check(p)
    assert ok, detail
    coeffs = h_coefficients(p)
    assert coeffs[0] == 1
    assert all(in_ring_O(b, p) for b in coeffs)
    r = (p - 1) // 2
    _, T1 = sprime_tprime(p)
    CT = v_inverse(p) @ T1 @ v_matrix(p)
    # C_h built independently: ones on the superdiagonal, last row -b_{r+1}, ..., -b_1
    F = ambient_field(p)
    expect = CycloMatrix.from_function(
        F,
        r + 1,
        r + 1,
        lambda i, j: (F.one if j == i + 1 else F.zero) if i < r else -coeffs[r + 1 - j],
    )
    assert CT == expect.T


@acceptance(6, "rho|H2 = c W_even projectively with c_sigma = 1/sqrt(p), c_tau = 1")
@pytest.mark.parametrize("p", PRIMES)
def test_c6_weil_even_part(p):
    eq = verify_theorem2(p)
    assert eq.c_sigma == sqrt_p(p).inverse()
    assert eq.c_tau == 1


@acceptance(7, "pi_phi homomorphism on all 125 x 125 pairs at p = 5; W(sigma), W(tau) intertwine exactly")
def test_c7_heisenberg():
    phi = special_character(5)
    ok, bad = check_pi_homomorphism(phi)
    assert ok, bad
    for p in PRIMES:
        phi = special_character(p)
        Ws, Wt = weil_generator_matrices(phi)
        assert intertwining_scalar(Ws, sigma(p), phi, heis_generators(p)) is not None
        assert intertwining_scalar(Wt, tau(p), phi, heis_generators(p)) is not None


@acceptance(8, "projective H2 image has order 60 at p=5, 168 at p=7; full image at p=5 below cap 1e5 (< 5 min)")
def test_c8_finite_images():
    start = time.perf_counter()
    assert h2_image(5).order == 60
    assert h2_image(7).order == 168
    full = full_image(5, cap=10**5)
    assert not full.cap_exceeded
    assert full.order < 10**5
    assert full.order % 60 == 0
    assert time.perf_counter() - start < 300


def _random_elem(rng, F):
    return F.element([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(F.degree)])


@acceptance(9, "ring axioms, Galois laws, Phi_N(zeta) = 0, S unitary/symmetric, Verlinde, float oracle on 1000 elements")
def test_c9_property_suites():
    rng = random.Random(9)
    for N in (5, 8, 12, 40, 56):
        F = CycloField(N)
        z = F.zeta(1)
        assert sum((z**k * c for k, c in enumerate(cyclotomic_poly(N))), F.zero) == 0
        units = [t for t in range(1, N) if math.gcd(t, N) == 1]
        for _ in range(30):
            a, b, c = (_random_elem(rng, F) for _ in range(3))
            assert a + b == b + a and a * b == b * a
            assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + F.zero == a and a * F.one == a and a - a == 0
            if a:
                assert a * a.inverse() == 1
            s, t = rng.choice(units), rng.choice(units)
            assert galois(a * b, s) == galois(a, s) * galois(b, s)
            assert galois(a + b, s) == galois(a, s) + galois(b, s)
            assert galois(galois(a, s), t) == galois(a, s * t % N)
    for p in PRIMES:
        S = rho_sigma(p)
        assert S == S.T
        assert S @ S.conj().T == CycloMatrix.identity(S.field, S.rows)
        assert rho_tau(p).is_diagonal()
    for p in (5, 7, 11):
        ok, mismatch = verlinde_check(rho_sigma(p), fusion_table(p))
        assert ok, mismatch
    F = CycloField(40)
    worst = 0.0
    for _ in range(1000):
        a, b = _random_elem(rng, F), _random_elem(rng, F)
        ea, eb = embed_complex(a), embed_complex(b)
        worst = max(worst, abs(embed_complex(a * b) - ea * eb), abs(embed_complex(a + b) - (ea + eb)))
        worst = max(worst, abs(embed_complex(a.conj()) - ea.conjugate()))
    assert worst < 1e-9
    assert abs(embed_complex(root_of_unity(F, 5)) - complex(2**-0.5, 2**-0.5)) < 1e-9
