"""Exact cyclotomic arithmetic for the genus-one SL(2,Z) representation of SO(p)_2."""

__version__ = "0.1.0"

from .cyclo import CycloElem, CycloField, embed_complex, in_subring, parse, serialize  # noqa: E402
from .matrix import CycloMatrix  # noqa: E402

__all__ = [
    "__version__",
    "CycloElem",
    "CycloField",
    "CycloMatrix",
    "embed_complex",
    "in_subring",
    "parse",
    "serialize",
]
