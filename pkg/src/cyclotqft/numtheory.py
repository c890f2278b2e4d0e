"""Jacobi symbols, quadratic Gauss sums and the unit factorizations of p and sqrt(p).

Everything for a prime p is computed inside one ambient field Q(zeta_{8p}),
which holds zeta_p, i, zeta_8 and sqrt(p) at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cyclo import CycloElem, CycloField, Membership, in_subring, root_of_unity, sqrt_p_element

__all__ = [
    "UnitWitness",
    "ambient_field",
    "ring_order",
    "in_ring_O",
    "zeta_p",
    "imag_unit",
    "sqrt_p",
    "jacobi",
    "gauss_sum",
    "iota",
    "epsilon_const",
    "lemma3_product",
    "verify_lemma3",
    "eta",
    "unit_u",
]


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(n**0.5) + 1))


def check_prime(p: int) -> int:
    if not isinstance(p, int) or p < 5 or not is_prime(p):
        raise ValueError(f"p must be an odd prime >= 5, got {p!r}")
    return p


@lru_cache(maxsize=None)
def ambient_field(p: int) -> CycloField:
    return CycloField(8 * check_prime(p))


def ring_order(p: int) -> int:
    """Conductor m with O = Z[zeta_m]: p if p = 1 mod 4, else 4p."""
    return p if p % 4 == 1 else 4 * p


def in_ring_O(a: CycloElem, p: int) -> Membership:
    return in_subring(a, ring_order(p), integral=True)


def zeta_p(p: int, k: int = 1) -> CycloElem:
    F = ambient_field(p)
    return root_of_unity(F, 8 * (k % p))


def imag_unit(p: int) -> CycloElem:
    F = ambient_field(p)
    return root_of_unity(F, F.N // 4)


@lru_cache(maxsize=None)
def sqrt_p(p: int) -> CycloElem:
    """Exact positive sqrt(p); the sign is checked once against the complex embedding."""
    s = sqrt_p_element(p, ambient_field(p))
    z = complex(s)
    if not (abs(z.imag) < 1e-9 and z.real > 0):
        raise ArithmeticError(f"sqrt({p}) element embeds to {z}")
    return s


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n, by quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive n, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def gauss_sum(p: int, c: int) -> CycloElem:
    """sum_{l=0}^{p-1} zeta_p^(c l^2), summed term by term."""
    if c % p == 0:
        raise ValueError(f"gauss_sum needs gcd(c, p) = 1, got c={c}")
    total = ambient_field(p).zero
    for ell in range(p):
        total = total + zeta_p(p, c * ell * ell)
    return total


def iota(p: int) -> CycloElem:
    """1 if p = 1 mod 4, i if p = 3 mod 4 (so that gauss_sum(p, 1) = iota(p) sqrt(p))."""
    return ambient_field(p).one if p % 4 == 1 else imag_unit(p)


def epsilon_const(p: int) -> CycloElem:
    r = (p - 1) // 2
    sign = -1 if r % 2 else 1
    return zeta_p(p, -r * (r + 1) // 2) * sign


def lemma3_product(p: int) -> CycloElem:
    """prod_{k=1}^r (1 - zeta^k)^2."""
    r = (p - 1) // 2
    prod = ambient_field(p).one
    for k in range(1, r + 1):
        f = 1 - zeta_p(p, k)
        prod = prod * f * f
    return prod


def verify_lemma3(p: int, eps: CycloElem | None = None) -> bool:
    eps = epsilon_const(p) if eps is None else eps
    return eps * lemma3_product(p) == p


def theta(p: int, j: int) -> CycloElem:
    r = (p - 1) // 2
    return zeta_p(p, r * j * j)


def eta(p: int, k: int) -> CycloElem:
    """(1 - zeta^k) / (1 - theta_k), a unit of O."""
    return (1 - zeta_p(p, k)) / (1 - theta(p, k))


@dataclass(frozen=True)
class UnitWitness:
    u: CycloElem
    u_inv: CycloElem
    ring_order: int
    u_member: Membership
    u_inv_member: Membership

    def __bool__(self):
        return bool(self.u * self.u_inv == 1 and self.u_member and self.u_inv_member)


def unit_u(p: int) -> UnitWitness:
    """u = sqrt(p) / prod_{k=1}^r (1 - theta_k), with both u and 1/u tested for membership in O."""
    r = (p - 1) // 2
    denom = ambient_field(p).one
    for k in range(1, r + 1):
        factor = 1 - theta(p, k)
        if not factor:
            raise ZeroDivisionError(f"1 - theta_{k} vanishes for p={p}")
        denom = denom * factor
    u = sqrt_p(p) / denom
    u_inv = u.inverse()
    return UnitWitness(u, u_inv, ring_order(p), in_ring_O(u, p), in_ring_O(u_inv, p))
