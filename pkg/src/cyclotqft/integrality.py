"""The integral change of basis W = U (Id_3 + D V) and the checks behind it.

H splits as H1 + H2 under U. H1 (basis 1-Z, X+X', psi(X-X')) is already
integral; H2 (basis 1+Z, Y_1..Y_r) is made integral by the Vandermonde
matrix of the twists theta_0 = 1, theta_1, ..., theta_r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cyclo import CycloElem, Membership
from .matrix import CycloMatrix
from .modular_data import a_matrix, labels, psi, rho_sigma, rho_tau
from .numtheory import ambient_field, in_ring_O, iota, jacobi, ring_order, sqrt_p, theta, zeta_p

__all__ = [
    "BasisChange",
    "EntryFailure",
    "IntegralityReport",
    "u_matrix",
    "split_check",
    "SplitWitness",
    "sprime_tprime",
    "d_matrix",
    "v_matrix",
    "w_matrix",
    "basis_change",
    "s_matrix",
    "sv_closed_form",
    "sv_direct_sum",
    "verify_prop1",
    "lagrange_p0",
    "verify_prop2",
    "companion_matrix",
    "companion_check",
    "claim_check",
    "integral_generators",
    "h_coefficients",
    "matrix_in_O",
    "theorem1_verdict",
]


@dataclass(frozen=True)
class EntryFailure:
    """First entry of a matrix that is not in O, with the membership refusal."""

    row: int
    col: int
    value: str
    membership: Membership


def matrix_in_O(M: CycloMatrix, p: int) -> EntryFailure | None:
    """None if every entry lies in O, else the first offending entry."""
    for i, j, x in M.entries():
        m = in_ring_O(x, p)
        if not m:
            return EntryFailure(i, j, str(x), m)
    return None


# -- the split H = H1 + H2 ------------------------------------------------------


@lru_cache(maxsize=None)
def u_matrix(p: int) -> CycloMatrix:
    """Columns are 1-Z, X+X', psi(X-X'), 1+Z, Y_1, ..., Y_r in label coordinates."""
    L = labels(p)
    n = len(L)
    F = ambient_field(p)
    ps = psi(p)
    cols = [[F.zero] * n for _ in range(n)]
    cols[0][0], cols[0][1] = F.one, F(-1)
    cols[1][L.X], cols[1][L.Xp] = F.one, F.one
    cols[2][L.X], cols[2][L.Xp] = ps, -ps
    cols[3][0], cols[3][1] = F.one, F.one
    for j in range(1, L.r + 1):
        cols[3 + j][L.Y(j)] = F.one
    return CycloMatrix(F, [[cols[b][a] for b in range(n)] for a in range(n)])


@lru_cache(maxsize=None)
def split_generators(p: int) -> tuple[CycloMatrix, CycloMatrix]:
    """U^-1 rho(sigma) U and U^-1 rho(tau) U."""
    U = u_matrix(p)
    Ui = U.inverse()
    return Ui @ rho_sigma(p) @ U, Ui @ rho_tau(p) @ U


@dataclass(frozen=True)
class SplitWitness:
    block_diagonal: bool
    h1_sigma: CycloMatrix
    h1_tau: CycloMatrix
    h1_integral: bool
    h2_sigma: CycloMatrix
    h2_tau: CycloMatrix

    def __bool__(self):
        return self.block_diagonal and self.h1_integral


def split_check(p: int) -> SplitWitness:
    S_u, T_u = split_generators(p)
    n = S_u.rows
    off = all(
        not M[i, j]
        for M in (S_u, T_u)
        for i in range(n)
        for j in range(n)
        if (i < 3) != (j < 3)
    )
    h1, h2 = range(3), range(3, n)
    blocks = [M.submatrix(h1, h1) for M in (S_u, T_u)]
    integral = all(matrix_in_O(b, p) is None for b in blocks)
    return SplitWitness(off, blocks[0], blocks[1], integral, S_u.submatrix(h2, h2), T_u.submatrix(h2, h2))


@lru_cache(maxsize=None)
def sprime_tprime(p: int) -> tuple[CycloMatrix, CycloMatrix]:
    """Restrictions of rho(sigma), rho(tau) to H2 in the basis 1+Z, Y_1..Y_r."""
    r = (p - 1) // 2
    F = ambient_field(p)
    inv_s = sqrt_p(p).inverse()
    A = a_matrix(p)

    def entry(i, j):
        if i == 0:
            return inv_s
        if j == 0:
            return inv_s * 2
        return A[i - 1, j - 1]

    S1 = CycloMatrix.from_function(F, r + 1, r + 1, entry)
    T1 = CycloMatrix.diag(F, [theta(p, j) for j in range(r + 1)])
    return S1, T1


@lru_cache(maxsize=None)
def d_matrix(p: int) -> CycloMatrix:
    """diag(1, 2, ..., 2), the conjugator turning S' into its transpose."""
    r = (p - 1) // 2
    D = CycloMatrix.diag(ambient_field(p), [1] + [2] * r)
    S1, _ = sprime_tprime(p)
    if D.inverse() @ S1 @ D != S1.T:
        raise ArithmeticError(f"D^-1 S' D != S'^t at p={p}")
    return D


def s_matrix(p: int) -> CycloMatrix:
    """S = (S')^t."""
    return sprime_tprime(p)[0].T


@lru_cache(maxsize=None)
def v_matrix(p: int) -> CycloMatrix:
    """V_jk = theta_j^k, 0 <= j, k <= r."""
    r = (p - 1) // 2
    th = [theta(p, j) for j in range(r + 1)]
    return CycloMatrix.from_function(ambient_field(p), r + 1, r + 1, lambda j, k: th[j] ** k)


@lru_cache(maxsize=None)
def v_inverse(p: int) -> CycloMatrix:
    return v_matrix(p).inverse()


@lru_cache(maxsize=None)
def w_matrix(p: int) -> CycloMatrix:
    F = ambient_field(p)
    return u_matrix(p) @ CycloMatrix.block_diag(CycloMatrix.identity(F, 3), d_matrix(p) @ v_matrix(p))


@dataclass(frozen=True)
class BasisChange:
    U: CycloMatrix
    D: CycloMatrix
    V: CycloMatrix
    W: CycloMatrix


def basis_change(p: int) -> BasisChange:
    return BasisChange(u_matrix(p), d_matrix(p), v_matrix(p), w_matrix(p))


# -- SV closed form -------------------------------------------------------------


def sv_closed_form(p: int, j: int, k: int) -> CycloElem:
    """Entry (j, k) of S V from the Gauss-sum evaluation."""
    r = (p - 1) // 2
    if not (0 <= j <= r and 0 <= k <= r):
        raise IndexError(f"({j}, {k}) outside 0..{r}")
    if k == 0:
        return sqrt_p(p) if j == 0 else ambient_field(p).zero
    exponent = (-pow(k, -1, p)) % p
    return theta(p, j) ** exponent * iota(p) * jacobi(r * k, p)


def sv_direct_sum(p: int, j: int, k: int) -> CycloElem:
    """(1/sqrt p) sum_{l=0}^{p-1} zeta^{j l + r k l^2}."""
    r = (p - 1) // 2
    total = ambient_field(p).zero
    for ell in range(p):
        total = total + zeta_p(p, j * ell + r * k * ell * ell)
    return total / sqrt_p(p)


@lru_cache(maxsize=None)
def sv_product(p: int) -> CycloMatrix:
    return s_matrix(p) @ v_matrix(p)


def verify_prop1(p: int) -> tuple[bool, tuple | None]:
    """Compare S V entrywise with the closed form; returns (ok, first mismatch)."""
    SV = sv_product(p)
    for j, k, x in SV.entries():
        expected = sv_closed_form(p, j, k)
        if x != expected:
            return False, (j, k, str(x), str(expected))
    return True, None


# -- column 0 of V^-1 S V -------------------------------------------------------


def lagrange_p0(p: int) -> list[CycloElem]:
    """Coefficients (constant first) of prod_{n=1}^r (x - theta_n) / (1 - theta_n)."""
    r = (p - 1) // 2
    F = ambient_field(p)
    coeffs = [F.one]
    for n in range(1, r + 1):
        th = theta(p, n)
        scale = (1 - th).inverse()
        shifted = [F.zero] + coeffs
        coeffs = [(a - th * b) * scale for a, b in zip(shifted, coeffs + [F.zero])]
    return coeffs


def verify_prop2(p: int) -> tuple[bool, dict]:
    """Column 0 of V^-1 (S V) lies in O^{r+1} and equals sqrt(p) times column 0 of V^-1."""
    Vi = v_inverse(p)
    col0 = (Vi @ sv_product(p)).col(0)
    s = sqrt_p(p)
    matches_lagrange = [c == x for c, x in zip(lagrange_p0(p), Vi.col(0))]
    scaled = all(c == Vi[j, 0] * s for j, c in enumerate(col0))
    failures = [(j, str(c), m.reason) for j, c in enumerate(col0) if not (m := in_ring_O(c, p))]
    ok = not failures and scaled and all(matches_lagrange)
    return ok, {
        "column0": [str(c) for c in col0],
        "equals_sqrt_p_times_Vinv_col0": scaled,
        "lagrange_matches_Vinv_col0": all(matches_lagrange),
        "failures": failures,
    }


# -- companion matrix -------------------------------------------------------------


def h_coefficients(p: int) -> list[CycloElem]:
    """[1, b_1, ..., b_{r+1}] for h(x) = (x - 1) prod (x - theta_k), highest degree first."""
    r = (p - 1) // 2
    F = ambient_field(p)
    poly = [F.one]  # highest degree first
    for k in range(r + 1):
        th = theta(p, k)
        poly = [a - th * b for a, b in zip(poly + [F.zero], [F.zero] + poly)]
    return poly


def companion_matrix(coeffs: list[CycloElem]) -> CycloMatrix:
    """Companion matrix of the monic polynomial [1, b_1, ..., b_n] (highest degree first)."""
    F = coeffs[0].field
    n = len(coeffs) - 1

    def entry(i, j):
        if i < n - 1:
            return F.one if j == i + 1 else F.zero
        return -coeffs[n - j]

    return CycloMatrix.from_function(F, n, n, entry)


def companion_check(p: int) -> tuple[bool, dict]:
    r = (p - 1) // 2
    coeffs = h_coefficients(p)
    C = companion_matrix(coeffs)
    F = ambient_field(p)
    eig = True
    for j in range(r + 1):
        th = theta(p, j)
        v = CycloMatrix(F, [[th**k] for k in range(r + 1)])
        eig = eig and (C @ v == v * th)
    V = v_matrix(p)
    _, T = sprime_tprime(p)
    conj = v_inverse(p) @ T @ V
    b_fail = [(k, str(b)) for k, b in enumerate(coeffs[1:], 1) if not in_ring_O(b, p)]
    ok = eig and conj == C.T and not b_fail
    return ok, {
        "eigenvectors": eig,
        "vinv_t_v_equals_companion_transpose": conj == C.T,
        "b": [str(b) for b in coeffs[1:]],
        "b_not_in_O": b_fail,
    }


def claim_check(p: int) -> tuple[bool, dict]:
    """V^-1 S V and V^-1 T^j V (0 <= j <= 2r) are integral."""
    r = (p - 1) // 2
    V, Vi = v_matrix(p), v_inverse(p)
    _, T = sprime_tprime(p)
    detail = {}
    ok = True
    fail = matrix_in_O(Vi @ sv_product(p), p)
    detail["VinvSV"] = None if fail is None else _failure_dict(fail)
    ok = ok and fail is None
    Tj = CycloMatrix.identity(ambient_field(p), r + 1)
    powers_ok = []
    for j in range(2 * r + 1):
        fail = matrix_in_O(Vi @ Tj @ V, p)
        powers_ok.append(fail is None)
        if fail is not None and "VinvTjV" not in detail:
            detail["VinvTjV"] = {"j": j, **_failure_dict(fail)}
        Tj = Tj @ T
    detail["T_powers_integral"] = powers_ok
    return ok and all(powers_ok), detail


def _failure_dict(f: EntryFailure) -> dict:
    m = f.membership
    return {
        "row": f.row,
        "col": f.col,
        "value": f.value,
        "reason": m.reason,
        "coeffs": None if m.coeffs is None else [str(c) for c in m.coeffs],
        "automorphism": m.automorphism,
    }


# -- the verdict --------------------------------------------------------------------


@dataclass(frozen=True)
class IntegralityReport:
    p: int
    ring_order: int
    sigma_failure: EntryFailure | None
    tau_failure: EntryFailure | None
    block_structure: bool
    sigma_integral: CycloMatrix = field(repr=False)
    tau_integral: CycloMatrix = field(repr=False)

    @property
    def passed(self) -> bool:
        return self.sigma_failure is None and self.tau_failure is None and self.block_structure

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {
            "ring": f"Z[zeta_{self.ring_order}]",
            "block_structure_3_plus_r1": self.block_structure,
            "sigma_entries_in_O": self.sigma_failure is None,
            "tau_entries_in_O": self.tau_failure is None,
            "counterexample": _failure_dict(self.sigma_failure or self.tau_failure)
            if not (self.sigma_failure is None and self.tau_failure is None)
            else None,
        }


@lru_cache(maxsize=None)
def integral_generators(p: int) -> tuple[CycloMatrix, CycloMatrix]:
    """W^-1 rho(sigma) W and W^-1 rho(tau) W."""
    W = w_matrix(p)
    Wi = W.inverse()
    return Wi @ rho_sigma(p) @ W, Wi @ rho_tau(p) @ W


def theorem1_verdict(p: int) -> IntegralityReport:
    S_w, T_w = integral_generators(p)
    n = S_w.rows
    blocks = all(not M[i, j] for M in (S_w, T_w) for i in range(n) for j in range(n) if (i < 3) != (j < 3))
    return IntegralityReport(
        p, ring_order(p), matrix_in_O(S_w, p), matrix_in_O(T_w, p), blocks, S_w, T_w
    )
