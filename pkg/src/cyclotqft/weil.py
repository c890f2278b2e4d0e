"""Heisenberg group over Z/p, its Schroedinger representation, and the Weil intertwiners.

A Heisenberg element (x, y, z) stands for the unipotent matrix
[[1, y, z], [0, 1, x], [0, 0, 1]], so

    (x, y, z) * (x', y', z') = (x + x', y + y', z + z' + x' y).

With this convention (pi(x, y, z) f)(a) = phi(-x a + z) f(a - y) is a
homomorphism and the kernel matrices phi(jk), diag(phi(-j^2/2)) intertwine
it with the quadratic lift of sigma and tau below.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from .cyclo import CycloElem
from .matrix import CycloMatrix
from .numtheory import ambient_field, check_prime, sqrt_p, zeta_p

__all__ = [
    "HeisElem",
    "SL2p",
    "Character",
    "WeilData",
    "heis_mul",
    "heis_inv",
    "heis_identity",
    "heis_elements",
    "heis_generators",
    "sl2_act",
    "sigma",
    "tau",
    "special_character",
    "pi_phi",
    "weil_generator_matrices",
    "intertwining_scalar",
    "even_basis",
    "odd_basis",
    "restrict",
    "even_restriction",
    "verify_theorem2",
    "check_pi_homomorphism",
    "check_lift",
]


@dataclass(frozen=True)
class HeisElem:
    x: int
    y: int
    z: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "x", self.x % self.p)
        object.__setattr__(self, "y", self.y % self.p)
        object.__setattr__(self, "z", self.z % self.p)

    def __mul__(self, other: HeisElem) -> HeisElem:
        return heis_mul(self, other)

    def matrix(self) -> tuple[tuple[int, ...], ...]:
        return ((1, self.y, self.z), (0, 1, self.x), (0, 0, 1))


def heis_mul(g: HeisElem, h: HeisElem) -> HeisElem:
    if g.p != h.p:
        raise ValueError("Heisenberg elements over different primes")
    return HeisElem(g.x + h.x, g.y + h.y, g.z + h.z + h.x * g.y, g.p)


def heis_inv(g: HeisElem) -> HeisElem:
    return HeisElem(-g.x, -g.y, g.x * g.y - g.z, g.p)


def heis_identity(p: int) -> HeisElem:
    return HeisElem(0, 0, 0, p)


def heis_elements(p: int):
    for x, y, z in itertools.product(range(p), repeat=3):
        yield HeisElem(x, y, z, p)


def heis_generators(p: int) -> tuple[HeisElem, ...]:
    return HeisElem(1, 0, 0, p), HeisElem(0, 1, 0, p), HeisElem(0, 0, 1, p)


@dataclass(frozen=True)
class SL2p:
    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % self.p)
        if (self.a * self.d - self.b * self.c) % self.p != 1:
            raise ValueError(f"determinant of {self} is not 1 mod {self.p}")

    def __matmul__(self, other: SL2p) -> SL2p:
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return SL2p(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, self.p)


def sigma(p: int) -> SL2p:
    return SL2p(0, -1, 1, 0, p)


def tau(p: int) -> SL2p:
    return SL2p(1, 1, 0, 1, p)


def sl2_act(alpha: SL2p, h: HeisElem) -> HeisElem:
    """Lift of (x, y) -> (ax + by, cx + dy) fixing the centre, with a quadratic z-correction."""
    p = h.p
    a, b, c, d = alpha.a, alpha.b, alpha.c, alpha.d
    x, y = h.x, h.y
    half = pow(2, -1, p)
    q = (a * c * x * x + 2 * b * c * x * y + b * d * y * y) * half
    return HeisElem(a * x + b * y, c * x + d * y, h.z + q, p)


@dataclass(frozen=True)
class Character:
    """Additive character j -> zeta_p^(k j)."""

    p: int
    k: int = 1

    def __post_init__(self):
        if self.k % self.p == 0:
            raise ValueError("character must be nontrivial")

    def __call__(self, j: int) -> CycloElem:
        return zeta_p(self.p, self.k * j)

    def table(self) -> tuple[CycloElem, ...]:
        return tuple(self(j) for j in range(self.p))


def special_character(p: int) -> Character:
    return Character(check_prime(p), 1)


def pi_phi(phi: Character, h: HeisElem) -> CycloMatrix:
    """Matrix of pi_phi(h) on the delta basis f_0..f_{p-1}: f_b -> phi(-x(b+y) + z) f_{b+y}."""
    p = phi.p
    F = ambient_field(p)
    grid = [[F.zero] * p for _ in range(p)]
    for b in range(p):
        a = (b + h.y) % p
        grid[a][b] = phi(-h.x * a + h.z)
    return CycloMatrix(F, grid)


@lru_cache(maxsize=None)
def _weil_raw(phi: Character) -> tuple[CycloMatrix, CycloMatrix]:
    p = phi.p
    F = ambient_field(p)
    half = pow(2, -1, p)
    Ws = CycloMatrix.from_function(F, p, p, lambda j, k: phi(j * k))
    Wt = CycloMatrix.diag(F, [phi(-j * j * half) for j in range(p)])
    return Ws, Wt


def intertwining_scalar(W: CycloMatrix, alpha: SL2p, phi: Character, hs=None) -> CycloElem | None:
    """c with W pi(h) = c pi(alpha h) W for every h in hs (default: Heisenberg generators)."""
    hs = heis_generators(phi.p) if hs is None else hs
    c = None
    for h in hs:
        ratio = (W @ pi_phi(phi, h)).scalar_ratio(pi_phi(phi, sl2_act(alpha, h)) @ W)
        if ratio is None or (c is not None and ratio != c):
            return None
        c = ratio
    return c


def weil_generator_matrices(phi: Character) -> tuple[CycloMatrix, CycloMatrix]:
    """W(sigma) = [phi(jk)] and W(tau) = diag(phi(-j^2/2)), checked against the lift."""
    Ws, Wt = _weil_raw(phi)
    p = phi.p
    for name, W, alpha in (("sigma", Ws, sigma(p)), ("tau", Wt, tau(p))):
        if intertwining_scalar(W, alpha, phi) is None:
            raise ArithmeticError(f"W({name}) does not intertwine pi_phi with the chosen lift")
    return Ws, Wt


def even_basis(p: int, scaled: bool = True) -> CycloMatrix:
    """Columns 2 f_0 (or f_0), f_k + f_{p-k} for k = 1..r."""
    r = (p - 1) // 2
    F = ambient_field(p)
    grid = [[F.zero] * (r + 1) for _ in range(p)]
    grid[0][0] = F(2 if scaled else 1)
    for k in range(1, r + 1):
        grid[k][k] = F.one
        grid[p - k][k] = F.one
    return CycloMatrix(F, grid)


def odd_basis(p: int) -> CycloMatrix:
    """Columns f_k - f_{p-k} for k = 1..r."""
    r = (p - 1) // 2
    F = ambient_field(p)
    grid = [[F.zero] * r for _ in range(p)]
    for k in range(1, r + 1):
        grid[k][k - 1] = F.one
        grid[p - k][k - 1] = F(-1)
    return CycloMatrix(F, grid)


def restrict(W: CycloMatrix, E: CycloMatrix) -> CycloMatrix | None:
    """M with W E = E M when the column span of E is W-invariant, else None."""
    m = E.cols
    # rows 0..m-1 of the even basis and rows 1..m of the odd basis are invertible
    rows = list(range(m)) if E[0, 0] else list(range(1, m + 1))
    lead = E.submatrix(rows, range(m))
    WE = W @ E
    M = lead.inverse() @ WE.submatrix(rows, range(m))
    return M if E @ M == WE else None


@dataclass(frozen=True)
class WeilData:
    p: int
    phi: Character
    W_sigma: CycloMatrix
    W_tau: CycloMatrix
    even_sigma: CycloMatrix
    even_tau: CycloMatrix
    odd_sigma: CycloMatrix | None
    odd_tau: CycloMatrix | None

    @property
    def character_table(self) -> tuple[CycloElem, ...]:
        return self.phi.table()


def even_restriction(phi: Character, scaled: bool = True) -> tuple[CycloMatrix, CycloMatrix]:
    """Restriction of W(sigma), W(tau) to span{f_k + f_{p-k}}.

    scaled=True uses the basis 2 f_0, f_1 + f_{p-1}, ..., which is the one
    matched with 1 + Z, Y_1, ..., Y_r.
    """
    Ws, Wt = weil_generator_matrices(phi)
    E = even_basis(phi.p, scaled)
    out = restrict(Ws, E), restrict(Wt, E)
    if None in out:
        raise ArithmeticError("even subspace is not invariant")
    return out


def weil_data(phi: Character) -> WeilData:
    Ws, Wt = weil_generator_matrices(phi)
    es, et = even_restriction(phi)
    O = odd_basis(phi.p)
    return WeilData(phi.p, phi, Ws, Wt, es, et, restrict(Ws, O), restrict(Wt, O))


def b_matrix(phi: Character) -> CycloMatrix:
    r = (phi.p - 1) // 2
    return CycloMatrix.from_function(
        ambient_field(phi.p), r, r, lambda j, k: phi((j + 1) * (k + 1)) + phi(-(j + 1) * (k + 1))
    )


@dataclass(frozen=True)
class ProjectiveEquality:
    c_sigma: CycloElem | None
    c_tau: CycloElem | None
    expected_c_sigma: CycloElem

    def __bool__(self):
        return self.c_sigma == self.expected_c_sigma and self.c_tau == 1


def verify_theorem2(p: int) -> ProjectiveEquality:
    """Scalars c with rho|H2(sigma) = c_sigma W_even(sigma) and rho|H2(tau) = c_tau W_even(tau)."""
    from .integrality import sprime_tprime

    S1, T1 = sprime_tprime(p)
    es, et = even_restriction(special_character(p))
    return ProjectiveEquality(S1.scalar_ratio(es), T1.scalar_ratio(et), sqrt_p(p).inverse())


# -- exhaustive / sampled structural checks ---------------------------------------


def check_pi_homomorphism(phi: Character, pairs: int | None = None, seed: int = 0) -> tuple[bool, tuple | None]:
    """pi(g h) == pi(g) pi(h) on all pairs (pairs=None) or on a seeded random sample."""
    p = phi.p
    elems = list(heis_elements(p))
    cache = {g: pi_phi(phi, g) for g in elems}
    if pairs is None:
        it = itertools.product(elems, repeat=2)
    else:
        rng = random.Random(seed)
        it = ((rng.choice(elems), rng.choice(elems)) for _ in range(pairs))
    for g, h in it:
        if cache[g] @ cache[h] != cache[heis_mul(g, h)]:
            return False, (g, h)
    return True, None


def check_lift(alpha: SL2p) -> tuple[bool, tuple | None]:
    """alpha acts as a centre-fixing automorphism of H_p (exhaustive over all pairs)."""
    p = alpha.p
    elems = list(heis_elements(p))
    image = {g: sl2_act(alpha, g) for g in elems}
    for z in range(p):
        c = HeisElem(0, 0, z, p)
        if image[c] != c:
            return False, ("centre", c)
    if len(set(image.values())) != len(elems):
        return False, ("not bijective", None)
    for g in elems:
        ig = image[g]
        for h in elems:
            if image[heis_mul(g, h)] != heis_mul(ig, image[h]):
                return False, (g, h)
    return True, None
