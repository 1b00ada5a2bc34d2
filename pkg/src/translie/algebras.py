"""Closed-form bracket, product, and operator definitions.

The commutative product on the base algebra multiplies within each basis
family by adding indices and annihilates mixed pairs:

    L_r * L_s = L_{r+s},   M_r * M_s = M_{r+s},   L_r * M_s = 0.

Three ternary brackets are provided, each stated on canonically ordered
basis triples and extended to arbitrary orderings by total antisymmetry
(sort the arguments, multiply by the permutation sign; repeated symbols
give 0):

  a-omega-delta-omega-form   [L_r,L_s,M_t] = (s-r) L_{r+s-t}
                             [L_r,M_s,M_t] = (t-s) M_{s+t-r}
  a-omega-delta              [L_r,L_s,M_t] = (s-r) L_{r+s+t}
                             [L_r,M_s,M_t] = (s-t) M_{r+s+t}
  a-f-k                      [L_r,L_s,M_t] = f(M_t) (r-s) L_{r+s+k}
                             [L_r,M_s,M_t] = 0

All-L and all-M triples vanish in every bracket.  The a-f-k bracket is
parameterized by an integer shift k and a nonzero linear functional f that
vanishes on the whole L family and has finite support on the M family.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .elements import BasisSymbol, Element, L, M, check_index
from .errors import DomainError
from .scalars import Scalar, ZERO, ONE, from_int

A_OMEGA_DELTA = "a-omega-delta"
OMEGA_FORM = "a-omega-delta-omega-form"
AFK = "a-f-k"


@dataclass(frozen=True)
class FiniteFunctional:
    """Linear map with value 0 on every L_r and finite support on the M_r."""

    values: tuple  # sorted tuple of (index, Scalar) pairs, all nonzero

    @staticmethod
    def from_map(mapping):
        items = []
        for idx, val in mapping.items():
            if not isinstance(val, Scalar):
                val = Scalar(val)
            if val:
                items.append((int(idx), val))
        return FiniteFunctional(tuple(sorted(items)))

    def m_value(self, index):
        for idx, val in self.values:
            if idx == index:
                return val
        return ZERO

    @property
    def support(self):
        return [idx for idx, _ in self.values]

    def is_zero(self):
        return not self.values

    def evaluate(self, element):
        """Sum of coefficient * f(M_index) over the element's M terms."""
        total = ZERO
        for sym, coeff in element.terms.items():
            if sym.family == "M":
                fv = self.m_value(sym.index)
                if fv:
                    total = total + coeff * fv
        return total

    def as_dict(self):
        return dict(self.values)


def functional(mapping):
    return FiniteFunctional.from_map(mapping)


def _sort3(a, b, c):
    """Sort three distinct symbols into canonical order; returns (tuple, sign)."""
    sign = 1
    if b < a:
        a, b = b, a
        sign = -sign
    if c < b:
        b, c = c, b
        sign = -sign
    if b < a:
        a, b = b, a
        sign = -sign
    return a, b, c, sign


@dataclass(frozen=True)
class BracketDef:
    kind: str
    k: int = 0
    f: FiniteFunctional | None = None

    def terms(self, x, y, z):
        """Bracket of three basis symbols as a list of (Scalar, symbol) terms."""
        if x == y or y == z or x == z:
            return []
        a, b, c, sign = _sort3(x, y, z)
        fa, fb, fc = a.family, b.family, c.family
        kind = self.kind
        if kind == A_OMEGA_DELTA:
            if fa == "L" and fb == "L" and fc == "M":
                return [(from_int(sign * (b.index - a.index)),
                         L(a.index + b.index + c.index))]
            if fa == "L" and fb == "M":
                return [(from_int(sign * (b.index - c.index)),
                         M(a.index + b.index + c.index))]
            return []
        if kind == OMEGA_FORM:
            if fa == "L" and fb == "L" and fc == "M":
                return [(from_int(sign * (b.index - a.index)),
                         L(a.index + b.index - c.index))]
            if fa == "L" and fb == "M":
                return [(from_int(sign * (c.index - b.index)),
                         M(b.index + c.index - a.index))]
            return []
        if kind == AFK:
            if fa == "L" and fb == "L" and fc == "M":
                fv = self.f.m_value(c.index)
                if not fv:
                    return []
                coeff = fv.scale_int(sign * (a.index - b.index))
                return [(coeff, L(a.index + b.index + self.k))]
            return []
        raise ValueError(f"unknown bracket kind {kind!r}")


def a_omega_delta():
    return BracketDef(A_OMEGA_DELTA)


def omega_form():
    return BracketDef(OMEGA_FORM)


def afk(k, f):
    if f.is_zero():
        raise ValueError("the a-f-k bracket requires a nonzero functional")
    return BracketDef(AFK, k=check_index(k), f=f)


def bracket_eval(bdef, x, y, z):
    """Trilinear extension of the bracket to arbitrary Elements."""
    acc = {}
    for sx, cx in x.terms.items():
        for sy, cy in y.terms.items():
            cxy = cx * cy
            if not cxy:
                continue
            for sz, cz in z.terms.items():
                coeff = cxy * cz
                if not coeff:
                    continue
                for base, sym in bdef.terms(sx, sy, sz):
                    cur = acc.get(sym)
                    val = coeff * base
                    if cur is None:
                        if val:
                            acc[sym] = val
                    else:
                        cur = cur + val
                        if cur:
                            acc[sym] = cur
                        else:
                            del acc[sym]
    return Element(acc)


ALGEBRA_A = "algebra-a"
ZERO_PRODUCT = "zero"
TP_FAMILY = "tp-family"


@dataclass(frozen=True)
class ProductDef:
    kind: str
    params: object = None  # TPParams for kind "tp-family"

    def terms(self, x, y):
        """Product of two basis symbols as a list of (Scalar, symbol) terms."""
        kind = self.kind
        if kind == ALGEBRA_A:
            if x.family != y.family:
                return []
            sym = BasisSymbol(x.family, check_index(x.index + y.index))
            return [(ONE, sym)]
        if kind == ZERO_PRODUCT:
            return []
        if kind == TP_FAMILY:
            return self.params.product_terms(x, y)
        raise ValueError(f"unknown product kind {kind!r}")


def algebra_a():
    return ProductDef(ALGEBRA_A)


def zero_product():
    return ProductDef(ZERO_PRODUCT)


def product_eval(pdef, x, y):
    """Bilinear extension of the product to arbitrary Elements."""
    acc = {}
    for sx, cx in x.terms.items():
        for sy, cy in y.terms.items():
            coeff = cx * cy
            if not coeff:
                continue
            for base, sym in pdef.terms(sx, sy):
                cur = acc.get(sym)
                val = coeff * base
                if cur is None:
                    if val:
                        acc[sym] = val
                else:
                    cur = cur + val
                    if cur:
                        acc[sym] = cur
                    else:
                        del acc[sym]
    return Element(acc)


INDEX_SCALING = "index-scaling"
FAMILY_SWAP = "family-swap"
SCALED_L_SHIFT = "scaled-l-shift"
UNIFORM_SHIFT = "uniform-shift"
SCALAR_MULTIPLE = "scalar"
CUSTOM = "custom"


@dataclass(frozen=True)
class LinearOperator:
    kind: str
    k: int = 0
    factor: Scalar = ONE
    table: dict | None = field(default=None, compare=False)

    def terms(self, sym):
        kind = self.kind
        if kind == INDEX_SCALING:
            if sym.index == 0:
                return []
            return [(from_int(sym.index), sym)]
        if kind == FAMILY_SWAP:
            fam = "M" if sym.family == "L" else "L"
            return [(ONE, BasisSymbol(fam, check_index(-sym.index)))]
        if kind == SCALED_L_SHIFT:
            if sym.family != "L" or sym.index == 0:
                return []
            return [(from_int(sym.index), L(sym.index + self.k))]
        if kind == UNIFORM_SHIFT:
            return [(ONE, BasisSymbol(sym.family, check_index(sym.index + self.k)))]
        if kind == SCALAR_MULTIPLE:
            if not self.factor:
                return []
            return [(self.factor, sym)]
        if kind == CUSTOM:
            image = self.table.get(sym)
            if image is None:
                raise DomainError(f"operator not defined at {sym}")
            return [(coeff, s) for s, coeff in image.terms.items()]
        raise ValueError(f"unknown operator kind {kind!r}")

    def apply(self, element):
        acc = {}
        for sym, coeff in element.terms.items():
            for base, out in self.terms(sym):
                cur = acc.get(out)
                val = coeff * base
                if cur is None:
                    if val:
                        acc[out] = val
                else:
                    cur = cur + val
                    if cur:
                        acc[out] = cur
                    else:
                        del acc[out]
        return Element(acc)


def index_scaling():
    """Multiplies every basis symbol by its own index (a product derivation)."""
    return LinearOperator(INDEX_SCALING)


def family_swap():
    """Swaps the L and M families while negating indices (an involution)."""
    return LinearOperator(FAMILY_SWAP)


def scaled_l_shift(k):
    """L_r -> r * L_{r+k}, annihilating the M family (a product derivation)."""
    return LinearOperator(SCALED_L_SHIFT, k=check_index(k))


def uniform_shift(k):
    """L_r -> L_{r+k} and M_r -> M_{r+k}."""
    return LinearOperator(UNIFORM_SHIFT, k=check_index(k))


def scalar_multiple(c):
    if not isinstance(c, Scalar):
        c = Scalar(c)
    return LinearOperator(SCALAR_MULTIPLE, factor=c)


def custom_operator(table):
    """Operator given by an explicit symbol -> Element table.

    Application outside the table's key set raises DomainError.
    """
    return LinearOperator(CUSTOM, table=dict(table))


def operator_apply(op, element):
    return op.apply(element)


def relabel_m_negation(element):
    """Fix every L term and send each M_r term to M_{-r}."""
    acc = {}
    for sym, coeff in element.terms.items():
        if sym.family == "M":
            sym = M(-sym.index)
        cur = acc.get(sym)
        acc[sym] = coeff if cur is None else cur + coeff
    return Element(acc)


def derived_lie_bracket(k, u, v):
    """Binary bracket induced by the scaled L shift: d(u)*v - d(v)*u.

    Antisymmetric by construction; restricted to the L family it acts as
    [L_r, L_s] = (r-s) L_{r+s+k} and it annihilates anything involving M.
    Provided as an auxiliary check only; nothing downstream consumes it.
    """
    d = scaled_l_shift(k)
    prod = algebra_a()
    return product_eval(prod, d.apply(u), v) - product_eval(prod, d.apply(v), u)
