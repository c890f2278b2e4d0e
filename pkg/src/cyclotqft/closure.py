"""Finite projective images by breadth-first closure over exactly canonicalized matrices."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .matrix import CycloMatrix
from .numtheory import ambient_field

__all__ = [
    "DEFAULT_CAP",
    "ProjMatrix",
    "ClosureResult",
    "canonicalize",
    "bfs_closure",
    "h1_image",
    "h2_image",
    "full_image",
    "image",
]

DEFAULT_CAP = 10**6


@dataclass(frozen=True, eq=False)
class ProjMatrix:
    """A matrix up to a nonzero scalar, represented by its normalized form."""

    matrix: CycloMatrix
    canonical: CycloMatrix
    key: tuple = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, ProjMatrix) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def serialized(self) -> str:
        return self.canonical.dump()


def canonicalize(M: CycloMatrix) -> ProjMatrix:
    """Scale M so its first nonzero entry (row-major) is exactly 1."""
    lead = next((x for _, _, x in M.entries() if x), None)
    if lead is None:
        raise ValueError("cannot canonicalize the zero matrix")
    canon = M if lead == 1 else M * lead.inverse()
    key = tuple((x.num, x.den) for _, _, x in canon.entries())
    return ProjMatrix(M, canon, key)


@dataclass(frozen=True)
class ClosureResult:
    generator_count: int
    order: int | None
    cap: int
    cap_exceeded: bool
    digest: str | None
    elements: tuple[ProjMatrix, ...] = field(repr=False, default=())

    def to_dict(self) -> dict:
        return {
            "generators": self.generator_count,
            "order": self.order,
            "cap": self.cap,
            "cap_exceeded": self.cap_exceeded,
            "cayley_digest": self.digest,
        }


def bfs_closure(generators: Sequence[ProjMatrix | CycloMatrix], cap: int = DEFAULT_CAP) -> ClosureResult:
    """Enumerate the projective group generated by `generators` (and their inverses).

    Stops with cap_exceeded once more than `cap` distinct elements are seen.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    gens = [g if isinstance(g, ProjMatrix) else canonicalize(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    steps = []
    for g in gens:
        steps.append(g.canonical)
        steps.append(g.canonical.inverse())
    n = gens[0].canonical.rows
    ident = canonicalize(CycloMatrix.identity(gens[0].canonical.field, n))
    seen = {ident.key: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in steps:
                h = canonicalize(g.canonical @ s)
                if h.key not in seen:
                    seen[h.key] = h
                    nxt.append(h)
                    if len(seen) > cap:
                        return ClosureResult(len(gens), None, cap, True, None)
        frontier = nxt
    elements = tuple(sorted(seen.values(), key=lambda e: e.serialized()))
    return ClosureResult(len(gens), len(elements), cap, False, _cayley_digest(elements, gens), elements)


def _cayley_digest(elements, gens) -> str:
    """sha256 of the right-multiplication table by each generator, in sorted element order."""
    index = {e.key: i for i, e in enumerate(elements)}
    table = [[index[canonicalize(e.canonical @ g.canonical).key] for g in gens] for e in elements]
    return hashlib.sha256(json.dumps(table, separators=(",", ":")).encode()).hexdigest()


@lru_cache(maxsize=None)
def h1_image(p: int, cap: int = DEFAULT_CAP) -> tuple[ClosureResult, bool]:
    """Closure of the 3x3 H1 blocks; second value is True iff every element is monomial
    with root-of-unity entries."""
    from .integrality import split_check

    w = split_check(p)
    res = bfs_closure([w.h1_sigma, w.h1_tau], cap)
    N = ambient_field(p).N
    ok = all(
        e.canonical.is_monomial() and all(x**N == 1 for _, _, x in e.canonical.entries() if x)
        for e in res.elements
    )
    return res, ok


@lru_cache(maxsize=None)
def h2_image(p: int, cap: int = DEFAULT_CAP) -> ClosureResult:
    from .integrality import sprime_tprime

    return bfs_closure(sprime_tprime(p), cap)


@lru_cache(maxsize=None)
def full_image(p: int, cap: int = DEFAULT_CAP) -> ClosureResult:
    """Closure of the whole representation, run in the block-diagonal split basis."""
    from .integrality import split_generators

    return bfs_closure(split_generators(p), cap)


def image(p: int, space: str, cap: int = DEFAULT_CAP) -> ClosureResult:
    if space == "h1":
        return h1_image(p, cap)[0]
    if space == "h2":
        return h2_image(p, cap)
    if space == "full":
        return full_image(p, cap)
    raise ValueError(f"unknown space {space!r}")
