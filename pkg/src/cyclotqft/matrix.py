"""Dense matrices over a cyclotomic field, with exact elimination."""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .cyclo import CycloElem, CycloField, FieldMismatch, parse, serialize

__all__ = ["CycloMatrix", "SingularMatrix", "dump_matrices", "load_matrices"]


class SingularMatrix(ZeroDivisionError):
    pass


def _weight(e: CycloElem) -> int:
    # pivot preference: fewest nonzero power-basis terms keeps intermediate entries small
    return sum(1 for c in e.num if c)


class CycloMatrix:
    """Immutable rows x cols matrix whose entries share one CycloField."""

    __slots__ = ("field", "rows", "cols", "_data", "_hash")

    def __init__(self, field: CycloField, data: Iterable[Iterable]):
        grid = tuple(tuple(field(x) for x in row) for row in data)
        if not grid or not grid[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(grid[0])
        if any(len(r) != width for r in grid):
            raise ValueError("ragged rows")
        self.field = field
        self.rows = len(grid)
        self.cols = width
        self._data = grid
        self._hash = None

    @classmethod
    def _wrap(cls, field, grid):
        obj = object.__new__(cls)
        obj.field = field
        obj.rows = len(grid)
        obj.cols = len(grid[0])
        obj._data = grid
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def from_function(cls, field: CycloField, rows: int, cols: int, fn: Callable[[int, int], object]) -> CycloMatrix:
        return cls(field, [[fn(i, j) for j in range(cols)] for i in range(rows)])

    @classmethod
    def zeros(cls, field: CycloField, rows: int, cols: int | None = None) -> CycloMatrix:
        cols = rows if cols is None else cols
        z = field.zero
        return cls._wrap(field, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: CycloField, n: int) -> CycloMatrix:
        return cls.diag(field, [1] * n)

    @classmethod
    def diag(cls, field: CycloField, entries: Sequence) -> CycloMatrix:
        n = len(entries)
        z = field.zero
        return cls._wrap(
            field, tuple(tuple(field(entries[i]) if i == j else z for j in range(n)) for i in range(n))
        )

    @classmethod
    def block_diag(cls, *blocks: CycloMatrix) -> CycloMatrix:
        field = blocks[0].field
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        grid = [[field.zero] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            if b.field != field:
                raise FieldMismatch("blocks from different fields")
            for i in range(b.rows):
                for j in range(b.cols):
                    grid[r0 + i][c0 + j] = b._data[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls._wrap(field, tuple(map(tuple, grid)))

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[CycloElem, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[CycloElem, ...]:
        return tuple(r[j] for r in self._data)

    def entries(self) -> Iterable[tuple[int, int, CycloElem]]:
        for i, r in enumerate(self._data):
            for j, x in enumerate(r):
                yield i, j, x

    def tolist(self) -> list[list[CycloElem]]:
        return [list(r) for r in self._data]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> CycloMatrix:
        return CycloMatrix._wrap(self.field, tuple(tuple(self._data[i][j] for j in cols) for i in rows))

    # arithmetic
    def _check(self, other):
        if not isinstance(other, CycloMatrix):
            return False
        if other.field != self.field:
            raise FieldMismatch(f"Q(zeta_{self.field.N}) vs Q(zeta_{other.field.N})")
        return True

    def __matmul__(self, other: CycloMatrix) -> CycloMatrix:
        if not self._check(other):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        sparse_rows = [[(j, x) for j, x in enumerate(r) if x] for r in other._data]
        zero = self.field.zero
        out = []
        for r in self._data:
            acc = [None] * other.cols
            for k, a in enumerate(r):
                if not a:
                    continue
                for j, b in sparse_rows[k]:
                    t = a * b
                    acc[j] = t if acc[j] is None else acc[j] + t
            out.append(tuple(zero if x is None else x for x in acc))
        return CycloMatrix._wrap(self.field, tuple(out))

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return CycloMatrix._wrap(
            self.field, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data))
        )

    def __neg__(self):
        return self.map(lambda x: -x)

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, CycloMatrix):
            return NotImplemented
        s = self.field(scalar)
        return self.map(lambda x: x * s if x else x)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> CycloMatrix:
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloMatrix.identity(self.field, self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def map(self, fn: Callable[[CycloElem], CycloElem]) -> CycloMatrix:
        return CycloMatrix._wrap(self.field, tuple(tuple(fn(x) for x in r) for r in self._data))

    @property
    def T(self) -> CycloMatrix:
        return CycloMatrix._wrap(self.field, tuple(zip(*self._data)))

    def conj(self) -> CycloMatrix:
        return self.map(lambda x: x.conj())

    def galois(self, t: int) -> CycloMatrix:
        return self.map(lambda x: x.galois(t))

    # elimination
    def inverse(self) -> CycloMatrix:
        """Gauss-Jordan over the field, choosing the sparsest available pivot."""
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of non-square matrix")
        one, zero = self.field.one, self.field.zero
        a = [list(r) for r in self._data]
        b = [[one if i == j else zero for j in range(n)] for i in range(n)]
        for k in range(n):
            candidates = [i for i in range(k, n) if a[i][k]]
            if not candidates:
                raise SingularMatrix("matrix is singular")
            piv = min(candidates, key=lambda i: _weight(a[i][k]))
            a[k], a[piv] = a[piv], a[k]
            b[k], b[piv] = b[piv], b[k]
            inv = a[k][k].inverse()
            if inv != one:
                a[k] = [x * inv if x else x for x in a[k]]
                b[k] = [x * inv if x else x for x in b[k]]
            ak, bk = a[k], b[k]
            for i in range(n):
                f = a[i][k]
                if i == k or not f:
                    continue
                a[i] = [x - f * y if y else x for x, y in zip(a[i], ak)]
                b[i] = [x - f * y if y else x for x, y in zip(b[i], bk)]
        return CycloMatrix._wrap(self.field, tuple(map(tuple, b)))

    def det(self) -> CycloElem:
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of non-square matrix")
        a = [list(r) for r in self._data]
        det = self.field.one
        for k in range(n):
            candidates = [i for i in range(k, n) if a[i][k]]
            if not candidates:
                return self.field.zero
            piv = min(candidates, key=lambda i: _weight(a[i][k]))
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            pk = a[k][k]
            det = det * pk
            inv = pk.inverse()
            for i in range(k + 1, n):
                f = a[i][k]
                if f:
                    f = f * inv
                    a[i] = [x - f * y if y else x for x, y in zip(a[i], a[k])]
        return det

    def scalar_ratio(self, other: CycloMatrix) -> CycloElem | None:
        """Return c with self == c * other, or None when no such scalar exists."""
        self._check(other)
        if self.shape != other.shape:
            return None
        c = None
        for (i, j, x) in other.entries():
            if x:
                c = self._data[i][j] / x
                break
        if c is None:
            return None
        return c if self == other * c else None

    # predicates
    def is_diagonal(self) -> bool:
        return all(not x for i, j, x in self.entries() if i != j)

    def is_zero(self) -> bool:
        return all(not x for _, _, x in self.entries())

    def is_monomial(self) -> bool:
        """Exactly one nonzero entry in each row and each column."""
        if self.rows != self.cols:
            return False
        if any(sum(1 for x in r if x) != 1 for r in self._data):
            return False
        return all(sum(1 for r in self._data if r[j]) == 1 for j in range(self.cols))

    def __eq__(self, other):
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        return self.field == other.field and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._data)
        return self._hash

    def __repr__(self):
        return f"CycloMatrix(N={self.field.N}, {self.rows}x{self.cols})"

    def to_complex(self):
        import numpy as np

        return np.array([[complex(x) for x in r] for r in self._data])

    # serialization
    def dump(self) -> str:
        lines = [f"N={self.field.N} rows={self.rows} cols={self.cols}"]
        lines.extend(serialize(x) for r in self._data for x in r)
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> CycloMatrix:
        (mat,) = load_matrices(text)
        return mat


def dump_matrices(mats: Iterable[CycloMatrix]) -> str:
    return "".join(m.dump() for m in mats)


def load_matrices(text: str) -> list[CycloMatrix]:
    """Parse one or more concatenated matrix dumps."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    out, pos = [], 0
    while pos < len(lines):
        header = dict(kv.split("=") for kv in lines[pos].split())
        N, rows, cols = int(header["N"]), int(header["rows"]), int(header["cols"])
        field = CycloField(N)
        body = lines[pos + 1 : pos + 1 + rows * cols]
        if len(body) != rows * cols:
            raise ValueError("truncated matrix dump")
        elems = [parse(s, field) for s in body]
        out.append(CycloMatrix._wrap(field, tuple(tuple(elems[i * cols : (i + 1) * cols]) for i in range(rows))))
        pos += 1 + rows * cols
    return out
