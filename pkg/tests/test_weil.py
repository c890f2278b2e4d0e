import itertools
import random

import pytest

from cyclotqft.integrality import sprime_tprime
from cyclotqft.matrix import CycloMatrix
from cyclotqft.modular_data import a_matrix
from cyclotqft.numtheory import ambient_field, sqrt_p, theta
from cyclotqft.weil import (
    Character,
    HeisElem,
    SL2p,
    b_matrix,
    check_lift,
    check_pi_homomorphism,
    even_restriction,
    heis_generators,
    heis_identity,
    heis_inv,
    heis_mul,
    intertwining_scalar,
    pi_phi,
    sigma,
    sl2_act,
    special_character,
    tau,
    verify_theorem2,
    weil_data,
    weil_generator_matrices,
)

from conftest import PRIMES


def matmul_mod(A, B, p):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(3)) % p for j in range(3)) for i in range(3))


def test_heis_product_matches_matrix_oracle():
    p = 7
    rng = random.Random(1)
    for _ in range(300):
        g = HeisElem(*(rng.randrange(p) for _ in range(3)), p)
        h = HeisElem(*(rng.randrange(p) for _ in range(3)), p)
        assert heis_mul(g, h).matrix() == matmul_mod(g.matrix(), h.matrix(), p)


def test_heis_noncommutative():
    a, b = HeisElem(1, 0, 0, 5), HeisElem(0, 1, 0, 5)
    assert a * b == HeisElem(1, 1, 0, 5)
    assert b * a == HeisElem(1, 1, 1, 5)


def test_heis_inverse():
    rng = random.Random(2)
    for _ in range(100):
        g = HeisElem(*(rng.randrange(11) for _ in range(3)), 11)
        assert g * heis_inv(g) == heis_identity(11) == heis_inv(g) * g


def test_heis_prime_mismatch():
    with pytest.raises(ValueError):
        HeisElem(1, 0, 0, 5) * HeisElem(1, 0, 0, 7)


def test_sl2_validation():
    with pytest.raises(ValueError):
        SL2p(1, 1, 1, 1, 5)
    assert sigma(5) @ sigma(5) @ sigma(5) @ sigma(5) == SL2p(1, 0, 0, 1, 5)


def test_lift_identity():
    ident = SL2p(1, 0, 0, 1, 5)
    for x, y, z in itertools.product(range(5), repeat=3):
        h = HeisElem(x, y, z, 5)
        assert sl2_act(ident, h) == h


def test_lift_fixes_centre():
    for a, b, c, d in [(0, -1, 1, 0), (1, 1, 0, 1), (2, 3, 1, 2)]:
        alpha = SL2p(a, b, c, d, 5)
        for z in range(5):
            assert sl2_act(alpha, HeisElem(0, 0, z, 5)) == HeisElem(0, 0, z, 5)


@pytest.mark.parametrize("alpha", [sigma(5), tau(5)])
def test_lift_automorphism_exhaustive(alpha):
    ok, bad = check_lift(alpha)
    assert ok, bad


def test_lift_compatible_with_products():
    # sl2_act(ab, h) = sl2_act(a, sl2_act(b, h)) for words of length <= 4 in sigma, tau
    p = 5
    gens = [sigma(p), tau(p)]
    elems = [HeisElem(x, y, z, p) for x, y, z in itertools.product(range(p), repeat=3)]
    for n in range(1, 5):
        for word in itertools.product(gens, repeat=n):
            prod = word[0]
            for w in word[1:]:
                prod = prod @ w
            for h in elems:
                step = h
                for w in reversed(word):
                    step = sl2_act(w, step)
                assert sl2_act(prod, h) == step


def test_character():
    phi = special_character(7)
    assert phi(0) == 1
    assert phi(1) * phi(6) == 1
    assert len(phi.table()) == 7
    with pytest.raises(ValueError):
        Character(7, 0)


def test_pi_centre_and_shift():
    p = 5
    phi = special_character(p)
    F = ambient_field(p)
    assert pi_phi(phi, HeisElem(0, 0, 1, p)) == CycloMatrix.identity(F, p) * phi(1)
    shift = pi_phi(phi, HeisElem(0, 1, 0, p))
    assert shift == CycloMatrix.from_function(F, p, p, lambda a, b: int(a == (b + 1) % p))


def test_pi_homomorphism_exhaustive_p5():
    ok, bad = check_pi_homomorphism(special_character(5))
    assert ok, bad


@pytest.mark.parametrize("p", [7, 11, 13])
def test_pi_homomorphism_sampled(p):
    ok, bad = check_pi_homomorphism(special_character(p), pairs=500, seed=p)
    assert ok, bad


def test_pi_centre_is_scalar():
    p = 7
    phi = special_character(p)
    for z in range(p):
        M = pi_phi(phi, HeisElem(0, 0, z, p))
        assert M == CycloMatrix.identity(M.field, p) * phi(z)


@pytest.mark.parametrize("p", PRIMES)
def test_weil_generators(p):
    phi = special_character(p)
    Ws, Wt = weil_generator_matrices(phi)
    half = pow(2, -1, p)
    assert Wt[0, 0] == 1
    for j in range(p):
        assert Wt[j, j] == phi(-j * j * half)
    assert intertwining_scalar(Ws, sigma(p), phi) == 1
    assert intertwining_scalar(Wt, tau(p), phi) == 1


def test_wrong_intertwiner_rejected():
    p = 5
    phi = special_character(p)
    Ws, Wt = weil_generator_matrices(phi)
    assert intertwining_scalar(Wt, sigma(p), phi) is None


def test_other_character():
    phi = Character(5, 2)
    Ws, Wt = weil_generator_matrices(phi)
    assert intertwining_scalar(Ws, sigma(5), phi, heis_generators(5)) is not None


@pytest.mark.parametrize("p", PRIMES)
def test_even_odd_invariant(p):
    wd = weil_data(special_character(p))
    assert wd.odd_sigma is not None and wd.odd_tau is not None
    r = (p - 1) // 2
    assert wd.even_sigma.shape == (r + 1, r + 1)


@pytest.mark.parametrize("p", PRIMES)
def test_even_restriction_form(p):
    phi = special_character(p)
    es, et = even_restriction(phi)
    B = b_matrix(phi)
    r = (p - 1) // 2
    assert B == B.T
    assert B == a_matrix(p) * sqrt_p(p)
    assert es.row(0) == (es.field.one,) * (r + 1)
    assert all(es[k, 0] == 2 for k in range(1, r + 1))
    assert es.submatrix(range(1, r + 1), range(1, r + 1)) == B
    assert [et[j, j] for j in range(r + 1)] == [theta(p, j) for j in range(r + 1)]


@pytest.mark.parametrize("p", PRIMES)
def test_theorem2_scalars(p):
    eq = verify_theorem2(p)
    assert eq
    assert eq.c_sigma == sqrt_p(p).inverse() and eq.c_tau == 1
    S1, _ = sprime_tprime(p)
    es, _ = even_restriction(special_character(p))
    assert es * eq.c_sigma == S1
