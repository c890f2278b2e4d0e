import pytest

from cyclotqft.closure import bfs_closure, canonicalize, full_image, h1_image, h2_image, image
from cyclotqft.integrality import integral_generators, matrix_in_O
from cyclotqft.matrix import CycloMatrix
from cyclotqft.modular_data import rho_sigma
from cyclotqft.numtheory import ambient_field, sqrt_p


def test_canonicalize_scale_invariant():
    M = rho_sigma(5)
    F = M.field
    for lam in (F.zeta(3), F(7) / 2, 1 + F.zeta(5)):
        assert canonicalize(M * lam) == canonicalize(M)


def test_canonicalize_identity():
    I = CycloMatrix.identity(ambient_field(5), 3)
    assert canonicalize(I).canonical == I


def test_canonicalize_rho_sigma():
    c = canonicalize(rho_sigma(5))
    assert c.canonical[0, 0] == 1
    assert c.canonical[0, 1] == 1
    assert rho_sigma(5)[0, 0] == 1 / (2 * sqrt_p(5))


def test_canonicalize_idempotent():
    c = canonicalize(rho_sigma(7))
    assert canonicalize(c.canonical).key == c.key


def test_canonicalize_zero():
    with pytest.raises(ValueError):
        canonicalize(CycloMatrix.zeros(ambient_field(5), 2))


def test_trivial_group():
    res = bfs_closure([CycloMatrix.identity(ambient_field(5), 2)])
    assert res.order == 1 and not res.cap_exceeded


def test_cyclic_group():
    F = ambient_field(5)
    res = bfs_closure([CycloMatrix.diag(F, [1, F.zeta(1)])])
    assert res.order == 40


def test_bad_cap():
    with pytest.raises(ValueError):
        bfs_closure([CycloMatrix.identity(ambient_field(5), 2)], cap=0)


@pytest.mark.parametrize("p, order", [(5, 60), (7, 168)])
def test_h2_psl2(p, order):
    res = h2_image(p)
    assert res.order == order == p * (p * p - 1) // 2
    assert len(res.digest) == 64


def test_h2_cap_exceeded():
    res = h2_image(13, cap=100)
    assert res.cap_exceeded and res.order is None and res.digest is None


def test_generator_order_irrelevant():
    from cyclotqft.integrality import sprime_tprime

    S, T = sprime_tprime(5)
    a, b = bfs_closure([S, T]), bfs_closure([T, S])
    assert {e.key for e in a.elements} == {e.key for e in b.elements}


def test_digest_stable():
    assert bfs_closure(list(integral_generators(5))).digest == bfs_closure(list(integral_generators(5))).digest


@pytest.mark.parametrize("p", [5, 7])
def test_h1_monomial(p):
    res, monomial = h1_image(p)
    assert not res.cap_exceeded and monomial


def test_h1_order_p5():
    res, _ = h1_image(5)
    assert res.order == 24


def test_full_image_p5():
    res = full_image(5, cap=10**5)
    assert not res.cap_exceeded
    assert res.order % h2_image(5).order == 0
    assert image(5, "full", 10**5) == res


def test_group_elements_integral_in_w_basis():
    # walk words in the integral generators; every projective element has an integral representative
    gens = list(integral_generators(5))
    start = CycloMatrix.identity(gens[0].field, gens[0].rows)
    seen = {canonicalize(start).key}
    frontier = [start]
    while frontier:
        nxt = []
        for M in frontier:
            for g in gens:
                P = M @ g
                key = canonicalize(P).key
                if key not in seen:
                    assert matrix_in_O(P, 5) is None
                    seen.add(key)
                    nxt.append(P)
        frontier = nxt
    assert len(seen) == full_image(5, cap=10**5).order


def test_image_bad_space():
    with pytest.raises(ValueError):
        image(5, "h3")
