"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(d-1) with d = phi(N),
as a tuple of integer numerators over one positive common denominator.
That pair is the canonical form: two elements are equal iff their
numerators and denominators agree.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "CycloField",
    "CycloElem",
    "FieldMismatch",
    "Membership",
    "cyclotomic_poly",
    "root_of_unity",
    "galois",
    "embed_complex",
    "in_subring",
    "sqrt_p_element",
    "serialize",
    "parse",
]


class FieldMismatch(ValueError):
    """Operands live in different cyclotomic fields."""


# -- integer polynomials (coefficient lists, lowest degree first) ----------


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _mobius(n):
    result, m, q = 1, n, 2
    while q * q <= m:
        if m % q == 0:
            m //= q
            if m % q == 0:
                return 0
            result = -result
        q += 1
    if m > 1:
        result = -result
    return result


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    nzb = [(j, c) for j, c in enumerate(b) if c]
    for i, ai in enumerate(a):
        if ai:
            for j, bj in nzb:
                out[i + j] += ai * bj
    return out


def _poly_divexact(a, b):
    """Divide integer polynomial a by monic-up-to-sign b, requiring zero remainder."""
    a = list(a)
    lead = b[-1]
    if lead not in (1, -1):
        raise ValueError("divisor must have unit leading coefficient")
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] * lead
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple[int, ...]:
    """Coefficients of the N-th cyclotomic polynomial, constant term first.

    Uses the Moebius product over divisors with exact integer division.
    """
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    num, den = [1], [1]
    for d in _divisors(N):
        mu = _mobius(N // d)
        if mu == 0:
            continue
        factor = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _poly_mul(num, factor)
        else:
            den = _poly_mul(den, factor)
    return tuple(_poly_divexact(num, den))


# -- the field ----------------------------------------------------------------


class _FieldData:
    __slots__ = ("N", "degree", "phi", "tail", "units", "generators")

    def __init__(self, N):
        self.N = N
        self.phi = cyclotomic_poly(N)
        self.degree = len(self.phi) - 1
        # x^d = -sum(tail) modulo Phi_N; only nonzero terms kept
        self.tail = tuple((j, c) for j, c in enumerate(self.phi[:-1]) if c)
        self.units = tuple(t for t in range(1, N + 1) if math.gcd(t, N) == 1)
        self.generators = _unit_generators(N, self.units)


def _unit_generators(N, units):
    gens, subgroup = [], {1 % N}
    for t in units:
        if t % N in subgroup:
            continue
        gens.append(t)
        frontier = list(subgroup)
        while frontier:
            nxt = []
            for s in frontier:
                for g in gens:
                    v = s * g % N
                    if v not in subgroup:
                        subgroup.add(v)
                        nxt.append(v)
            frontier = nxt
    return tuple(gens)


@lru_cache(maxsize=None)
def _field_data(N):
    return _FieldData(N)


def _reduce(coeffs, data):
    """Reduce an integer coefficient list modulo Phi_N in place; returns length-d list."""
    d = data.degree
    tail = data.tail
    for k in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[k]
        if c:
            base = k - d
            for j, pj in tail:
                coeffs[base + j] -= c * pj
    del coeffs[d:]
    if len(coeffs) < d:
        coeffs.extend([0] * (d - len(coeffs)))
    return coeffs


@dataclass(frozen=True)
class CycloField:
    """The cyclotomic field Q(zeta_N)."""

    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"field order must be positive, got {self.N}")

    @property
    def _data(self):
        return _field_data(self.N)

    @property
    def degree(self) -> int:
        return self._data.degree

    @property
    def phi(self) -> tuple[int, ...]:
        return self._data.phi

    def __call__(self, value) -> CycloElem:
        """Coerce an int, Fraction or CycloElem of this field."""
        if isinstance(value, CycloElem):
            if value.field != self:
                raise FieldMismatch(f"element of Q(zeta_{value.field.N}) is not in Q(zeta_{self.N})")
            return value
        q = Fraction(value)
        num = [0] * self.degree
        num[0] = q.numerator
        return CycloElem._make(self, num, q.denominator)

    def element(self, coeffs: Iterable) -> CycloElem:
        """Element from rational power-basis coefficients (any length; reduced mod Phi_N)."""
        fr = [Fraction(c) for c in coeffs]
        if not fr:
            return self.zero
        den = math.lcm(*(c.denominator for c in fr))
        num = [c.numerator * (den // c.denominator) for c in fr]
        return CycloElem._make(self, _reduce(num, self._data), den)

    @property
    def zero(self) -> CycloElem:
        return self(0)

    @property
    def one(self) -> CycloElem:
        return self(1)

    def zeta(self, k: int = 1) -> CycloElem:
        return root_of_unity(self, k)

    def __repr__(self):
        return f"CycloField({self.N})"


def root_of_unity(field: CycloField, k: int) -> CycloElem:
    """Canonical form of zeta_N^k."""
    e = k % field.N
    num = [0] * (e + 1)
    num[e] = 1
    return CycloElem._make(field, _reduce(num, field._data), 1)


# -- elements -----------------------------------------------------------------


class CycloElem:
    """Immutable element of Q(zeta_N) in canonical power-basis form."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: CycloField, coeffs: Sequence):
        other = field.element(coeffs)
        self.field = field
        self.num = other.num
        self.den = other.den
        self._hash = None

    @classmethod
    def _make(cls, field, num, den):
        g = math.gcd(den, *num)
        if den < 0:
            g = -g
        obj = object.__new__(cls)
        obj.field = field
        if g != 1:
            obj.num = tuple(c // g for c in num)
            obj.den = den // g
        else:
            obj.num = tuple(num)
            obj.den = den
        obj._hash = None
        return obj

    # structure
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def _coerce(self, other):
        if isinstance(other, CycloElem):
            if other.field != self.field:
                raise FieldMismatch(f"Q(zeta_{self.field.N}) vs Q(zeta_{other.field.N})")
            return other
        if isinstance(other, (int, Rational)):
            return self.field(other)
        return NotImplemented

    # ring operations
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return CycloElem._make(self.field, [a + b for a, b in zip(self.num, other.num)], self.den)
        da, db = self.den, other.den
        return CycloElem._make(self.field, [a * db + b * da for a, b in zip(self.num, other.num)], da * db)

    __radd__ = __add__

    def __neg__(self):
        return CycloElem._make(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_rational():
            c = other.num[0]
            return CycloElem._make(self.field, [a * c for a in self.num], self.den * other.den)
        if self.is_rational():
            c = self.num[0]
            return CycloElem._make(self.field, [b * c for b in other.num], self.den * other.den)
        prod = _reduce(_poly_mul(self.num, other.num), self.field._data)
        return CycloElem._make(self.field, prod, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> CycloElem:
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        return _inverse(self)

    def galois(self, t: int) -> CycloElem:
        return galois(self, t)

    def conj(self) -> CycloElem:
        """Complex conjugate, i.e. the automorphism zeta -> zeta^-1."""
        return galois(self, -1)

    # comparison / hashing
    def __eq__(self, other):
        if isinstance(other, CycloElem):
            return self.field == other.field and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Rational)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.N, self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return embed_complex(self)

    def __repr__(self):
        return f"CycloElem(N={self.field.N}, {serialize(self)})"

    def __str__(self):
        return serialize(self)


@lru_cache(maxsize=65536)
def _inverse(a: CycloElem) -> CycloElem:
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero in cyclotomic field")
    if a.is_rational():
        return a.field(1 / a.to_fraction())
    # Fold the Galois orbit one generator at a time: afterwards `norm` is
    # fixed by every automorphism (so rational) and a * cofactor == norm.
    data = a.field._data
    norm, cofactor = a, a.field.one
    for g in data.generators:
        conj = galois(norm, g)
        partial = a.field.one
        while conj != norm:
            partial = partial * conj
            conj = galois(conj, g)
        if partial != a.field.one:
            cofactor = cofactor * partial
            norm = norm * partial
    return cofactor * (1 / norm.to_fraction())


def galois(a: CycloElem, t: int) -> CycloElem:
    """Apply the automorphism zeta_N -> zeta_N^t."""
    N = a.field.N
    t %= N
    if math.gcd(t, N) != 1:
        raise ValueError(f"galois exponent {t} is not a unit mod {N}")
    if t == 1 or a.is_rational():
        return a
    out = [0] * N
    for k, c in enumerate(a.num):
        if c:
            out[k * t % N] += c
    return CycloElem._make(a.field, _reduce(out, a.field._data), a.den)


def embed_complex(a: CycloElem, digits: int = 15) -> complex:
    """Evaluate at zeta_N = exp(2 pi i / N). digits > 15 switches to mpmath."""
    if digits < 15:
        raise ValueError("digits must be at least 15")
    N = a.field.N
    if digits == 15:
        total = 0j
        for k, c in enumerate(a.num):
            if c:
                total += c * cmath.exp(2j * math.pi * k / N)
        return total / a.den
    import mpmath

    with mpmath.workdps(digits + 5):
        total = mpmath.mpc(0)
        for k, c in enumerate(a.num):
            if c:
                total += c * mpmath.expjpi(mpmath.mpf(2 * k) / N)
        total /= a.den
        return complex(total)


# -- subring membership -------------------------------------------------------


class Membership(NamedTuple):
    """Outcome of a subring membership test; truthy iff a member.

    On success `coeffs` holds the coordinates over zeta_m. On refusal
    `reason` says why and either `automorphism` (the first t that moves the
    element) or `coeffs` (the solved, non-integral coordinates) is filled.
    """

    member: bool
    coeffs: tuple[Fraction, ...] | None = None
    reason: str = ""
    automorphism: int | None = None

    def __bool__(self):
        return self.member


def _bareiss_inverse(rows):
    """Fraction-free Gauss-Jordan on an integer square matrix.

    Returns (d, X) with rows @ X == d * Id and X integral; d is +-det.
    """
    n = len(rows)
    m = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[k], m[piv] = m[piv], m[k]
        row_k = m[k]
        pk = row_k[k]
        for i in range(n):
            if i == k:
                continue
            row_i = m[i]
            mik = row_i[k]
            for j in range(2 * n):
                row_i[j] = (pk * row_i[j] - mik * row_k[j]) // prev
        prev = pk
    d = prev
    X = [row[n:] for row in m]
    for i in range(n):
        for j in range(n):
            if sum(rows[i][k] * X[k][j] for k in range(n)) != (d if i == j else 0):
                raise ArithmeticError("fraction-free elimination failed self-check")
    return d, X


class _SubfieldBasis:
    """Cached data to express elements of Q(zeta_N) over the power basis of zeta_m."""

    def __init__(self, field, m):
        self.field = field
        self.m = m
        step = field.N // m
        self.dim = _field_data(m).degree
        self.columns = [root_of_unity(field, step * j) for j in range(self.dim)]
        # columns share denominator 1
        mat = [[col.num[i] for col in self.columns] for i in range(field.degree)]
        self.pivot_rows = _independent_rows(mat, self.dim)
        square = [mat[i] for i in self.pivot_rows]
        self.det, self.adj = _bareiss_inverse(square)
        self.fixers = tuple(t for t in field._data.units if t % m == 1 % m and t != 1)

    def solve(self, a):
        rhs = [a.num[i] for i in self.pivot_rows]
        scale = self.det * a.den
        return tuple(Fraction(sum(x * y for x, y in zip(row, rhs)), scale) for row in self.adj)

    def expand(self, coeffs):
        total = self.field.zero
        for c, col in zip(coeffs, self.columns):
            if c:
                total = total + col * c
        return total


def _independent_rows(mat, rank):
    chosen, basis = [], []
    for i, row in enumerate(mat):
        v = [Fraction(x) for x in row]
        for piv_col, b in basis:
            if v[piv_col]:
                f = v[piv_col] / b[piv_col]
                v = [x - f * y for x, y in zip(v, b)]
        lead = next((j for j, x in enumerate(v) if x), None)
        if lead is not None:
            basis.append((lead, v))
            chosen.append(i)
            if len(chosen) == rank:
                return chosen
    raise ArithmeticError("power basis of subfield is rank deficient")


@lru_cache(maxsize=None)
def _subfield_basis(field, m):
    return _SubfieldBasis(field, m)


def in_subring(a: CycloElem, m: int, integral: bool = True) -> Membership:
    """Decide whether a lies in Q(zeta_m) (integral=False) or Z[zeta_m] (integral=True)."""
    N = a.field.N
    if m < 1 or N % m:
        raise ValueError(f"m={m} does not divide N={N}")
    basis = _subfield_basis(a.field, m)
    for t in basis.fixers:
        if galois(a, t) != a:
            return Membership(False, reason=f"moved by zeta -> zeta^{t}", automorphism=t)
    coeffs = basis.solve(a)
    if basis.expand(coeffs) != a:
        return Membership(False, coeffs=coeffs, reason="solved coordinates do not reproduce the element")
    if integral:
        for j, c in enumerate(coeffs):
            if c.denominator != 1:
                return Membership(False, coeffs=coeffs, reason=f"coefficient {j} = {c} is not an integer")
    return Membership(True, coeffs=coeffs)


def sqrt_p_element(p: int, field: CycloField) -> CycloElem:
    """The positive real square root of an odd prime p as an element of the field."""
    N = field.N
    if p % 2 == 0 or N % p or N % 4:
        raise ValueError(f"need odd p | N and 4 | N (p={p}, N={N})")
    step = N // p
    g = field.zero
    for ell in range(p):
        g = g + root_of_unity(field, step * (ell * ell % p))
    if p % 4 == 3:
        g = -root_of_unity(field, N // 4) * g
    return g


# -- serialization --------------------------------------------------------------


def serialize(a: CycloElem) -> str:
    """Exact text form: '<num>/<den>*z^<k>' terms in ascending k joined by '+'; zero is '0'."""
    out = []
    for k, c in enumerate(a.num):
        if c:
            q = Fraction(c, a.den)
            out.append(f"{q.numerator}/{q.denominator}*z^{k}")
    return "+".join(out) if out else "0"


def parse(text: str, field: CycloField) -> CycloElem:
    """Inverse of serialize (accepts any exponent; reduces mod Phi_N)."""
    text = text.strip()
    if text == "0":
        return field.zero
    coeffs: dict[int, Fraction] = {}
    for term in text.split("+"):
        frac, _, power = term.partition("*z^")
        if not power:
            raise ValueError(f"malformed term {term!r}")
        k = int(power) % field.N
        coeffs[k] = coeffs.get(k, Fraction(0)) + Fraction(frac)
    dense = [Fraction(0)] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        dense[k] = c
    return field.element(dense)
