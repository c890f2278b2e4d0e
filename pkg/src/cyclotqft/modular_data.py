"""Labels, fusion rules and the genus-one S and T matrices of SO(p)_2.

Basis order is fixed as [1, Z, Y_1, ..., Y_r, X, X'] throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclo import CycloElem, root_of_unity
from .matrix import CycloMatrix
from .numtheory import ambient_field, check_prime, sqrt_p, theta, zeta_p

__all__ = [
    "LabelSet",
    "FusionTable",
    "RepPair",
    "Relations",
    "labels",
    "fusion_table",
    "theta",
    "psi",
    "a_matrix",
    "rho_sigma",
    "rho_tau",
    "rep_pair",
    "verlinde_check",
    "verlinde_table",
    "sl2z_relations_check",
]


@dataclass(frozen=True)
class LabelSet:
    p: int

    @property
    def r(self) -> int:
        return (self.p - 1) // 2

    @property
    def names(self) -> tuple[str, ...]:
        return ("1", "Z") + tuple(f"Y{j}" for j in range(1, self.r + 1)) + ("X", "X'")

    def __len__(self):
        return self.r + 4

    def index(self, name: str) -> int:
        return self.names.index(name)

    def Y(self, j: int) -> int:
        if not 1 <= j <= self.r:
            raise IndexError(f"Y_{j} out of range 1..{self.r}")
        return 1 + j

    @property
    def X(self) -> int:
        return self.r + 2

    @property
    def Xp(self) -> int:
        return self.r + 3


@lru_cache(maxsize=None)
def labels(p: int) -> LabelSet:
    return LabelSet(check_prime(p))


@dataclass(frozen=True)
class FusionTable:
    """N[a][b][c] = multiplicity of c in a (x) b."""

    labels: LabelSet
    N: tuple[tuple[tuple[int, ...], ...], ...]

    def product(self, a: int, b: int) -> dict[int, int]:
        return {c: n for c, n in enumerate(self.N[a][b]) if n}

    def dims_consistent(self, dims) -> bool:
        return all(
            dims[a] * dims[b] == sum(n * dims[c] for c, n in self.product(a, b).items())
            for a in range(len(self.labels))
            for b in range(len(self.labels))
        )

    def is_associative(self) -> bool:
        n = len(self.labels)
        N = self.N
        for a, b, c, d in itertools.product(range(n), repeat=4):
            lhs = sum(N[a][b][e] * N[e][c][d] for e in range(n))
            rhs = sum(N[b][c][f] * N[a][f][d] for f in range(n))
            if lhs != rhs:
                return False
        return True

    def is_commutative(self) -> bool:
        n = len(self.labels)
        return all(self.N[a][b] == self.N[b][a] for a in range(n) for b in range(n))


def _seed_rules(L: LabelSet):
    """The generating fusion rules; Y-indices use the modulus p."""
    p, r = L.p, L.r
    one, Z, X, Xp = 0, 1, L.X, L.Xp
    Ys = [L.Y(j) for j in range(1, r + 1)]
    rules = {
        (Z, Z): {one: 1},
        (Z, X): {Xp: 1},
        (X, X): {one: 1, **{y: 1 for y in Ys}},
        (X, Xp): {Z: 1, **{y: 1 for y in Ys}},
    }
    for j in range(1, r + 1):
        y = L.Y(j)
        rules[(Z, y)] = {y: 1}
        rules[(X, y)] = {X: 1, Xp: 1}
        rules[(y, y)] = {one: 1, Z: 1, L.Y(min(2 * j, p - 2 * j)): 1}
        for k in range(1, r + 1):
            if k != j:
                rules[(y, L.Y(k))] = {L.Y(abs(j - k)): 1, L.Y(min(j + k, p - j - k)): 1}
    return rules


@lru_cache(maxsize=None)
def fusion_table(p: int) -> FusionTable:
    """Fill every product from the seed rules, the unit, commutativity and Z-translation."""
    L = labels(p)
    n = len(L)
    Z = 1
    known = dict(_seed_rules(L))
    for a in range(n):
        known[(0, a)] = {a: 1}

    def add_symmetric():
        for (a, b), v in list(known.items()):
            known.setdefault((b, a), v)

    add_symmetric()
    # Z (x) a is simple for every a, so a = Z (x) a' and a (x) b = Z (x) (a' (x) b)
    z_partner = {}
    for a in range(n):
        prod = known.get((Z, a))
        if prod is not None and len(prod) == 1:
            (c, mult), = prod.items()
            if mult == 1:
                z_partner[c] = a
    # Z (x) Z = 1 gives Z (x) (Z (x) a) = a
    for c, a in list(z_partner.items()):
        known.setdefault((Z, c), {a: 1})
        z_partner.setdefault(a, c)
    add_symmetric()
    changed = True
    while changed:
        changed = False
        for a, b in itertools.product(range(n), repeat=2):
            if (a, b) in known or a not in z_partner:
                continue
            inner = known.get((z_partner[a], b))
            if inner is None or any((Z, c) not in known for c in inner):
                continue
            out: dict[int, int] = {}
            for c, m in inner.items():
                for d, m2 in known[(Z, c)].items():
                    out[d] = out.get(d, 0) + m * m2
            known[(a, b)] = out
            changed = True
        add_symmetric()
    missing = [(a, b) for a, b in itertools.product(range(n), repeat=2) if (a, b) not in known]
    if missing:
        names = L.names
        raise ValueError(f"fusion closure left products undefined: {[(names[a], names[b]) for a, b in missing]}")
    table = tuple(
        tuple(tuple(known[(a, b)].get(c, 0) for c in range(n)) for b in range(n)) for a in range(n)
    )
    return FusionTable(L, table)


def psi(p: int) -> CycloElem:
    """zeta_8^r."""
    r = (p - 1) // 2
    F = ambient_field(p)
    return root_of_unity(F, F.N // 8 * r)


@lru_cache(maxsize=None)
def a_matrix(p: int) -> CycloMatrix:
    """A_jk = (zeta^{jk} + zeta^{-jk}) / sqrt(p), 1 <= j, k <= r."""
    r = (p - 1) // 2
    inv_s = sqrt_p(p).inverse()
    return CycloMatrix.from_function(
        ambient_field(p), r, r, lambda j, k: (zeta_p(p, (j + 1) * (k + 1)) + zeta_p(p, -(j + 1) * (k + 1))) * inv_s
    )


@lru_cache(maxsize=None)
def rho_sigma(p: int) -> CycloMatrix:
    """Image of sigma; column b is the image of basis vector b."""
    L = labels(p)
    F = ambient_field(p)
    n, r = len(L), L.r
    inv_s = sqrt_p(p).inverse()
    half = Fraction(1, 2)
    A = a_matrix(p)
    cols = {}
    Ys = [L.Y(j) for j in range(1, r + 1)]

    def vec(items):
        v = [F.zero] * n
        for idx, val in items:
            v[idx] = F(val)
        return v

    for sign, label in ((1, 0), (-1, 1)):
        cols[label] = vec(
            [(0, inv_s * half), (1, inv_s * half)]
            + [(y, inv_s) for y in Ys]
            + [(L.X, sign * half), (L.Xp, sign * half)]
        )
    for j in range(1, r + 1):
        cols[L.Y(j)] = vec([(0, inv_s), (1, inv_s)] + [(L.Y(k), A[k - 1, j - 1]) for k in range(1, r + 1)])
    cols[L.X] = vec([(0, half), (1, -half), (L.X, half), (L.Xp, -half)])
    cols[L.Xp] = vec([(0, half), (1, -half), (L.X, -half), (L.Xp, half)])
    return CycloMatrix(F, [[cols[b][a] for b in range(n)] for a in range(n)])


@lru_cache(maxsize=None)
def rho_tau(p: int) -> CycloMatrix:
    """diag(1, 1, theta_1, ..., theta_r, psi, -psi)."""
    r = (p - 1) // 2
    ps = psi(p)
    return CycloMatrix.diag(ambient_field(p), [1, 1] + [theta(p, j) for j in range(1, r + 1)] + [ps, -ps])


@dataclass(frozen=True)
class RepPair:
    p: int
    S_full: CycloMatrix
    T_full: CycloMatrix

    @property
    def labels(self) -> LabelSet:
        return labels(self.p)


def rep_pair(p: int) -> RepPair:
    return RepPair(p, rho_sigma(p), rho_tau(p))


def verlinde_table(S: CycloMatrix) -> list[list[list[CycloElem]]]:
    """sum_x S_ax S_bx conj(S_cx) / S_0x for all a, b, c."""
    n = S.rows
    first = S.row(0)
    if any(not x for x in first):
        raise ZeroDivisionError("S has a zero entry in the unit row")
    inv_first = [x.inverse() for x in first]
    Sbar = S.conj()
    # ratio[a][x] = S_ax / S_0x
    ratio = [[S[a, x] * inv_first[x] for x in range(n)] for a in range(n)]
    out = []
    for a in range(n):
        plane = []
        for b in range(n):
            w = [S[a, x] * ratio[b][x] for x in range(n)]
            plane.append([sum((w[x] * Sbar[c, x] for x in range(n)), S.field.zero) for c in range(n)])
        out.append(plane)
    return out


def verlinde_check(S: CycloMatrix, table: FusionTable) -> tuple[bool, tuple | None]:
    """Compare the Verlinde formula with the fusion table; returns (ok, first mismatch)."""
    vt = verlinde_table(S)
    n = S.rows
    for a, b, c in itertools.product(range(n), repeat=3):
        if vt[a][b][c] != table.N[a][b][c]:
            names = table.labels.names
            return False, (names[a], names[b], names[c], str(vt[a][b][c]), table.N[a][b][c])
    return True, None


@dataclass(frozen=True)
class Relations:
    """(ST)^3 = lam * S^2 and S^4 = mu * Id; a scalar is None when no such scalar exists."""

    lam: CycloElem | None
    mu: CycloElem | None

    def __bool__(self):
        return self.lam is not None and self.mu is not None


def sl2z_relations_check(S: CycloMatrix, T: CycloMatrix) -> Relations:
    S2 = S @ S
    ST = S @ T
    lam = (ST @ ST @ ST).scalar_ratio(S2)
    mu = (S2 @ S2).scalar_ratio(CycloMatrix.identity(S.field, S.rows))
    return Relations(lam, mu)
