"""Per-prime verification checks and the report they are collected into."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from . import __version__
from .closure import h1_image, h2_image, full_image
from .cyclo import embed_complex
from .integrality import (
    claim_check,
    companion_check,
    d_matrix,
    split_check,
    theorem1_verdict,
    verify_prop1,
    verify_prop2,
)
from .matrix import CycloMatrix
from .modular_data import fusion_table, rho_sigma, rho_tau, sl2z_relations_check, verlinde_check
from .numtheory import (
    ambient_field,
    epsilon_const,
    eta,
    in_ring_O,
    sqrt_p,
    unit_u,
    verify_lemma3,
)
from .weil import (
    check_lift,
    check_pi_homomorphism,
    intertwining_scalar,
    sigma,
    special_character,
    tau,
    verify_theorem2,
    weil_data,
)

SCHEMA_VERSION = 1
STATUSES = ("pass", "fail", "skipped", "cap-exceeded")
FULL_CLOSURE_MAX_PRIME = 5
CLOSURE_CAP = 10**5

ASSUMPTIONS = (
    {
        "id": "fusion-modulus",
        "note": "Y_j (x) Y_j and Y_j (x) Y_k use the modulus p in min{2j, p-2j} and min{j+k, p-j-k}; "
        "associativity and Verlinde consistency of the resulting table are checked, not assumed.",
    },
    {
        "id": "heisenberg-lift",
        "note": "SL(2,F_p) acts on H_p by (x,y,z) -> (ax+by, cx+dy, z + (ac x^2 + 2bc xy + bd y^2)/2); "
        "centre-fixing, automorphism and intertwining properties are checked.",
    },
    {
        "id": "heisenberg-product",
        "note": "(x,y,z) is the matrix [[1,y,z],[0,1,x],[0,0,1]], so the product adds x' y to z; "
        "this is the convention under which (pi(x,y,z) f)(a) = phi(-xa+z) f(a-y) is a homomorphism.",
    },
    {
        "id": "iota-argument",
        "note": "the constant iota(m) in the SV closed-form derivation is read as iota(p).",
    },
)


@dataclass
class CheckRecord:
    name: str
    anchor: str
    status: str
    witness: dict
    wall_time: float | None = None

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "status": self.status,
            "witness": self.witness,
            "wall_time_s": round(self.wall_time, 6) if timings and self.wall_time is not None else None,
        }


@dataclass
class VerificationReport:
    prime: int
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def field_order(self) -> int:
        return 8 * self.prime

    def counts(self) -> dict[str, int]:
        return {s: sum(1 for c in self.checks if c.status == s) for s in STATUSES}

    def exit_code(self) -> int:
        counts = self.counts()
        if counts["fail"]:
            return 1
        if counts["cap-exceeded"]:
            return 3
        return 0

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "tool": {"name": "cyclotqft", "version": __version__},
            "prime": self.prime,
            "field_order": self.field_order,
            "assumptions": list(ASSUMPTIONS),
            "checks": [c.to_dict(timings) for c in self.checks],
            "summary": self.counts(),
        }

    def to_text(self, timings: bool = False) -> str:
        lines = [f"cyclotqft {__version__}  p={self.prime}  field Q(zeta_{self.field_order})"]
        for c in self.checks:
            t = f"  ({c.wall_time:.2f}s)" if timings and c.wall_time is not None else ""
            lines.append(f"{c.status.upper():<13}{c.name:<16}{c.anchor}{t}")
        counts = self.counts()
        lines.append("  ".join(f"{k}={v}" for k, v in counts.items()))
        return "\n".join(lines) + "\n"


# -- individual checks: each returns (status, witness) ----------------------------


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _check_sqrt_p(p):
    s = sqrt_p(p)
    z = embed_complex(s, digits=30)
    ok = s * s == p and abs(z.real - p**0.5) < 1e-9 and abs(z.imag) < 1e-9
    return _status(ok), {"sqrt_p": str(s), "embedding": [z.real, z.imag]}


def _check_fusion(p):
    ft = fusion_table(p)
    n = len(ft.labels)
    unit = all(ft.N[0][a][b] == int(a == b) for a in range(n) for b in range(n))
    S = rho_sigma(p)
    dims = [complex(S[0, x] / S[0, 0]).real for x in range(n)]
    dims_ok = all(
        abs(dims[a] * dims[b] - sum(m * dims[c] for c, m in ft.product(a, b).items())) < 1e-9
        for a in range(n)
        for b in range(n)
    )
    w = {
        "unit": unit,
        "commutative": ft.is_commutative(),
        "associative": ft.is_associative(),
        "dimension_consistent": dims_ok,
    }
    return _status(all(w.values())), w


def _check_verlinde(p):
    ok, mismatch = verlinde_check(rho_sigma(p), fusion_table(p))
    return _status(ok), {"counterexample": mismatch}


def _check_unitarity(p):
    S, T = rho_sigma(p), rho_tau(p)
    ident = CycloMatrix.identity(S.field, S.rows)
    w = {
        "S_symmetric": S == S.T,
        "S_real": S == S.conj(),
        "S_unitary": S @ S.conj().T == ident,
        "T_diagonal": T.is_diagonal(),
        "T_unit_modulus": all(T[i, i] * T[i, i].conj() == 1 for i in range(T.rows)),
    }
    return _status(all(w.values())), w


def _check_relations(p):
    rel = sl2z_relations_check(rho_sigma(p), rho_tau(p))
    w = {"lambda": None if rel.lam is None else str(rel.lam), "mu": None if rel.mu is None else str(rel.mu)}
    return _status(bool(rel)), w


def _check_lemma1(p):
    sw = split_check(p)
    w = {
        "block_diagonal": sw.block_diagonal,
        "h1_integral": sw.h1_integral,
        "h1_sigma": [[str(x) for x in row] for row in sw.h1_sigma.tolist()],
        "h1_tau": [[str(x) for x in row] for row in sw.h1_tau.tolist()],
    }
    return _status(bool(sw)), w


def _check_d(p):
    try:
        D = d_matrix(p)
    except ArithmeticError as exc:
        return "fail", {"error": str(exc)}
    return "pass", {"D": [str(D[i, i]) for i in range(D.rows)]}


def _check_prop1(p):
    ok, mismatch = verify_prop1(p)
    return _status(ok), {"entries": ((p + 1) // 2) ** 2, "counterexample": mismatch}


def _check_lemma3(p):
    eps = epsilon_const(p)
    ok = verify_lemma3(p)
    perturbed = verify_lemma3(p, eps * ambient_field(p).zeta(8))
    return _status(ok and not perturbed), {"epsilon": str(eps), "perturbed_rejected": not perturbed}


def _check_cor1(p):
    w = unit_u(p)
    r = (p - 1) // 2
    etas = {}
    for k in range(1, r + 1):
        e = eta(p, k)
        etas[str(k)] = bool(in_ring_O(e, p)) and bool(in_ring_O(e.inverse(), p))
    witness = {
        "u": str(w.u),
        "u_inv": str(w.u_inv),
        "ring": f"Z[zeta_{w.ring_order}]",
        "u_in_O": bool(w.u_member),
        "u_inv_in_O": bool(w.u_inv_member),
        "eta_units": etas,
    }
    if not w.u_member:
        witness["counterexample"] = w.u_member.reason
    elif not w.u_inv_member:
        witness["counterexample"] = w.u_inv_member.reason
    return _status(bool(w) and all(etas.values())), witness


def _check_prop2(p):
    ok, detail = verify_prop2(p)
    return _status(ok), detail


def _check_lemma5(p):
    ok, detail = companion_check(p)
    return _status(ok), detail


def _check_claim1(p):
    ok, detail = claim_check(p)
    return _status(ok), detail


def _check_theorem1(p):
    rep = theorem1_verdict(p)
    return _status(bool(rep)), rep.to_dict()


def _check_heisenberg(p):
    phi = special_character(p)
    exhaustive = p == 5
    hom, bad = check_pi_homomorphism(phi, None if exhaustive else 500)
    w = {
        "pi_homomorphism": hom,
        "pairs": "all" if exhaustive else 500,
        "counterexample": None if bad is None else [list((g.x, g.y, g.z)) for g in bad],
    }
    if exhaustive:
        for name, alpha in (("sigma", sigma(p)), ("tau", tau(p))):
            ok, bad = check_lift(alpha)
            w[f"lift_{name}_automorphism"] = ok
            hom = hom and ok
    return _status(hom), w


def _check_intertwining(p):
    wd = weil_data(special_character(p))
    cs = intertwining_scalar(wd.W_sigma, sigma(p), wd.phi)
    ct = intertwining_scalar(wd.W_tau, tau(p), wd.phi)
    w = {
        "scalar_sigma": None if cs is None else str(cs),
        "scalar_tau": None if ct is None else str(ct),
        "even_invariant": True,
        "odd_invariant": wd.odd_sigma is not None and wd.odd_tau is not None,
    }
    return _status(cs is not None and ct is not None and w["odd_invariant"]), w


def _check_theorem2(p):
    eq = verify_theorem2(p)
    w = {
        "c_sigma": None if eq.c_sigma is None else str(eq.c_sigma),
        "c_tau": None if eq.c_tau is None else str(eq.c_tau),
        "expected_c_sigma": str(eq.expected_c_sigma),
    }
    return _status(bool(eq)), w


def _check_cor2(p):
    res = h2_image(p, CLOSURE_CAP)
    w = res.to_dict()
    w["psl2_order"] = p * (p * p - 1) // 2
    if res.cap_exceeded:
        return "cap-exceeded", w
    return _status(res.order == w["psl2_order"]), w


def _check_cor3(p):
    h1, monomial = h1_image(p, CLOSURE_CAP)
    h2 = h2_image(p, CLOSURE_CAP)
    w = {"h1": h1.to_dict(), "h1_monomial_roots_of_unity": monomial, "h2_order": h2.order}
    if h1.cap_exceeded or h2.cap_exceeded:
        return "cap-exceeded", w
    w["full_order_bound"] = h1.order * h2.order
    if p <= FULL_CLOSURE_MAX_PRIME:
        full = full_image(p, CLOSURE_CAP)
        w["full"] = full.to_dict()
        if full.cap_exceeded:
            return "cap-exceeded", w
        w["full_divisible_by_h2"] = full.order % h2.order == 0
        return _status(monomial and w["full_divisible_by_h2"]), w
    w["full"] = None
    return _status(monomial), w


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    run: Callable[[int], tuple[str, dict]]


CHECKS: tuple[Check, ...] = (
    Check("sqrt_p", "sqrt(p) as a positive real cyclotomic integer", _check_sqrt_p),
    Check("fusion", "fusion rules: unit, commutativity, associativity", _check_fusion),
    Check("verlinde", "Verlinde formula against the fusion table", _check_verlinde),
    Check("unitarity", "S symmetric real unitary, T diagonal unimodular", _check_unitarity),
    Check("sl2z_relations", "projective SL(2,Z) relations", _check_relations),
    Check("lemma1", "H = H1 + H2 split with integral H1 block", _check_lemma1),
    Check("d_constraint", "D^-1 S' D = (S')^t", _check_d),
    Check("prop1", "closed form of S V", _check_prop1),
    Check("lemma3", "p = eps prod (1 - zeta^k)^2", _check_lemma3),
    Check("cor1", "sqrt(p) = prod (1 - theta_k) u with u a unit", _check_cor1),
    Check("prop2", "column 0 of V^-1 S V is integral", _check_prop2),
    Check("lemma5", "V^-1 T V = companion(h)^t with integral h", _check_lemma5),
    Check("claim1", "V^-1 S V and V^-1 T^j V integral", _check_claim1),
    Check("theorem1", "W^-1 rho W integral over O", _check_theorem1),
    Check("heisenberg", "Heisenberg representation and lift", _check_heisenberg),
    Check("intertwining", "Weil intertwiners for sigma and tau", _check_intertwining),
    Check("theorem2", "H2 part equals even Weil part projectively", _check_theorem2),
    Check("cor2", "finite projective image on H2", _check_cor2),
    Check("cor3", "finite projective image on H", _check_cor3),
)
CHECK_NAMES = tuple(c.name for c in CHECKS)


def run_check(check: Check, p: int) -> CheckRecord:
    start = time.perf_counter()
    try:
        status, witness = check.run(p)
    except Exception as exc:  # a crashing check is a failed check with the error as witness
        status, witness = "fail", {"error": f"{type(exc).__name__}: {exc}"}
    elapsed = time.perf_counter() - start
    if status == "fail" and not witness:
        witness = {"error": "check failed without detail"}
    return CheckRecord(check.name, check.anchor, status, witness, elapsed)


def verify(p: int, names: list[str] | None = None) -> VerificationReport:
    """Run the named checks (all by default) in registry order."""
    selected = CHECKS if names is None else tuple(c for c in CHECKS if c.name in set(names))
    unknown = set(names or ()) - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    report = VerificationReport(p)
    for check in selected:
        report.checks.append(run_check(check, p))
    return report
