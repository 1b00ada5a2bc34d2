"""Basis symbols and finite formal linear combinations.

The basis has two families of symbols, L_r and M_r, indexed by signed
integers.  The canonical total order puts every L before every M and
sorts each family by index; tuple comparison on (family, index) gives
exactly that order since "L" < "M".

An Element is a finite formal linear combination of basis symbols with
Scalar coefficients, stored sparsely.  Zero coefficients are never stored.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import IndexOverflowError
from .scalars import Scalar, ZERO, ONE

# Indices are kept within the signed 64-bit range so that index sums in
# structure constants stay machine-checked rather than silently huge.
MAX_INDEX = 2**63 - 1


class BasisSymbol(NamedTuple):
    family: str  # "L" or "M"
    index: int

    def __str__(self):
        return f"{self.family}_{self.index}"


def check_index(i):
    if not -MAX_INDEX <= i <= MAX_INDEX:
        raise IndexOverflowError(f"basis index {i} out of range")
    return i


def L(i):
    return BasisSymbol("L", check_index(i))


def M(i):
    return BasisSymbol("M", check_index(i))


def parse_symbol(text):
    """Parse "L_3" / "M_-2" back into a BasisSymbol."""
    fam, _, idx = text.partition("_")
    if fam not in ("L", "M") or not idx:
        raise ValueError(f"bad basis symbol: {text!r}")
    return BasisSymbol(fam, check_index(int(idx)))


class Element:
    """Immutable sparse linear combination of basis symbols."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        pruned = {}
        if terms:
            for sym, coeff in terms.items():
                if coeff:
                    pruned[sym] = coeff
        object.__setattr__(self, "terms", pruned)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    @staticmethod
    def zero():
        return _ZERO_ELEMENT

    @staticmethod
    def basis(sym):
        return Element({sym: ONE})

    @staticmethod
    def from_terms(*pairs):
        acc = {}
        for sym, coeff in pairs:
            if not isinstance(coeff, Scalar):
                coeff = Scalar(coeff)
            _accumulate(acc, sym, coeff)
        return Element(acc)

    # -- queries ------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, sym):
        return self.terms.get(sym, ZERO)

    def support(self):
        return sorted(self.terms)

    def sorted_terms(self):
        return [(sym, self.terms[sym]) for sym in sorted(self.terms)]

    def leading_symbol(self):
        """Smallest symbol in the canonical order; None for the zero element."""
        return min(self.terms) if self.terms else None

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        acc = dict(self.terms)
        for sym, coeff in other.terms.items():
            _accumulate(acc, sym, coeff)
        return Element(acc)

    def __sub__(self, other):
        acc = dict(self.terms)
        for sym, coeff in other.terms.items():
            _accumulate(acc, sym, -coeff)
        return Element(acc)

    def __neg__(self):
        return Element({sym: -coeff for sym, coeff in self.terms.items()})

    def scale(self, scalar):
        if not scalar:
            return _ZERO_ELEMENT
        return Element({sym: coeff * scalar for sym, coeff in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for sym, coeff in self.sorted_terms():
            parts.append(f"({coeff})*{sym}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Element<{self}>"


_ZERO_ELEMENT = Element()


def _accumulate(acc, sym, coeff):
    cur = acc.get(sym)
    if cur is None:
        if coeff:
            acc[sym] = coeff
    else:
        cur = cur + coeff
        if cur:
            acc[sym] = cur
        else:
            del acc[sym]


def combine(a, x, b, y):
    """a*x + b*y with zero terms pruned."""
    acc = {}
    if a:
        for sym, coeff in x.terms.items():
            _accumulate(acc, sym, a * coeff)
    if b:
        for sym, coeff in y.terms.items():
            _accumulate(acc, sym, b * coeff)
    return Element(acc)
