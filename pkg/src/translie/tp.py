"""Induced commutative products on the functional-bracket algebra.

A product family is determined by a scalar alpha, a finitely supported
sequence c_p, and a finitely supported symmetric array d_{i,j,q}:

    L_i * L_j = 0
    L_i * M_j = alpha f(M_j) L_i
    M_i * M_j = f(M_i) f(M_j) sum_p c_p L_p  +  sum_q d_{i,j,q} M_q

Validation checks three constraint families over the finite closure of
the parameter supports: symmetry of d in its first two slots, weighted
q-sums of d matching alpha f(M_i) f(M_j), and the exchange identity that
makes the product associative.  Finite quantification is complete because
every term outside the support closure vanishes identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebras import ProductDef, TP_FAMILY, custom_operator, product_eval
from .checks import window
from .elements import Element, L, M
from .errors import InvalidParamsError
from .scalars import Scalar, ZERO

POISSON_AND_TRANSPOSED = "poisson-and-transposed"
TRANSPOSED_ONLY = "transposed-only"


def _scalar(v):
    return v if isinstance(v, Scalar) else Scalar(v)


class TPParams:
    """Product family parameters; immutable after construction."""

    __slots__ = ("alpha", "c", "d", "f", "k", "_pairs")

    def __init__(self, alpha, c, d, f, k):
        object.__setattr__(self, "alpha", _scalar(alpha))
        object.__setattr__(
            self, "c", {int(p): _scalar(v) for p, v in c.items() if _scalar(v)}
        )
        clean = {}
        pairs = {}
        for (i, j, q), v in d.items():
            v = _scalar(v)
            if v:
                key = (int(i), int(j), int(q))
                clean[key] = v
                pairs.setdefault(key[:2], {})[key[2]] = v
        object.__setattr__(self, "d", clean)
        object.__setattr__(self, "_pairs", pairs)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "k", int(k))

    def __setattr__(self, name, value):
        raise AttributeError("TPParams is immutable")

    def d_value(self, i, j, q):
        return self.d.get((i, j, q), ZERO)

    def support_indices(self):
        idx = set(self.f.support)
        idx.update(self.c)
        for i, j, q in self.d:
            idx.update((i, j, q))
        return sorted(idx) if idx else [0]

    def product_terms(self, x, y):
        """Product of two basis symbols as (Scalar, symbol) terms."""
        if x.family == "L" and y.family == "L":
            return []
        if x.family == "M" and y.family == "M":
            out = []
            cf = self.f.m_value(x.index) * self.f.m_value(y.index)
            if cf:
                for p, cp in self.c.items():
                    val = cf * cp
                    if val:
                        out.append((val, L(p)))
            row = self._pairs.get((x.index, y.index))
            if row:
                for q, dv in row.items():
                    out.append((dv, M(q)))
            return out
        if x.family == "M":
            x, y = y, x
        coeff = self.alpha * self.f.m_value(y.index)
        if not coeff:
            return []
        return [(coeff, x)]


@dataclass
class TPValidationReport:
    """Witnesses for each violated constraint family; valid when all empty."""

    eq_symmetry_violations: list = field(default_factory=list)
    eq_weighted_sum_violations: list = field(default_factory=list)
    eq_exchange_violations: list = field(default_factory=list)

    @property
    def is_valid(self):
        return not (
            self.eq_symmetry_violations
            or self.eq_weighted_sum_violations
            or self.eq_exchange_violations
        )


def validate_params(params):
    """Check symmetry, weighted-sum, and exchange laws over the support closure."""
    report = TPValidationReport()
    idx = params.support_indices()
    f = params.f

    for i in idx:
        for j in idx:
            if i > j:
                continue
            for q in idx:
                residual = params.d_value(i, j, q) - params.d_value(j, i, q)
                if residual:
                    report.eq_symmetry_violations.append(((i, j, q), residual))

    for i in idx:
        for j in idx:
            total = ZERO
            for q in idx:
                fq = f.m_value(q)
                if fq:
                    total = total + fq * params.d_value(i, j, q)
            residual = total - params.alpha * f.m_value(i) * f.m_value(j)
            if residual:
                report.eq_weighted_sum_violations.append(((i, j), residual))

    for r in idx:
        for s in idx:
            for t in idx:
                for p in idx:
                    total = ZERO
                    for q in idx:
                        total = total + params.d_value(r, s, q) * params.d_value(q, t, p)
                        total = total - params.d_value(s, t, q) * params.d_value(q, r, p)
                    if total:
                        report.eq_exchange_violations.append(((r, s, t, p), total))
    return report


def build_example_family(f, d_seq, c, k):
    """Rank-one d array: d_{i,j,p} = d_p f(M_i) f(M_j), alpha = sum f(M_q) d_q.

    Always passes validation: symmetry and the exchange identity hold
    because the array factors through the functional, and the weighted-sum
    law reduces to the definition of alpha.
    """
    d_seq = {int(p): _scalar(v) for p, v in d_seq.items() if _scalar(v)}
    alpha = ZERO
    for q, dv in d_seq.items():
        alpha = alpha + f.m_value(q) * dv
    d = {}
    for i in f.support:
        fi = f.m_value(i)
        for j in f.support:
            w = fi * f.m_value(j)
            for p, dv in d_seq.items():
                val = dv * w
                if val:
                    d[(i, j, p)] = val
    return TPParams(alpha=alpha, c=c, d=d, f=f, k=k)


def tp_product(params):
    """ProductDef for validated parameters; invalid ones raise InvalidParamsError."""
    report = validate_params(params)
    if not report.is_valid:
        raise InvalidParamsError("product parameters failed validation", report)
    return ProductDef(TP_FAMILY, params=params)


def classify_poisson(params):
    """The product also satisfies the classical Leibniz law iff alpha = 0 and c = 0."""
    report = validate_params(params)
    if not report.is_valid:
        raise InvalidParamsError("product parameters failed validation", report)
    if not params.alpha and not params.c:
        return POISSON_AND_TRANSPOSED
    return TRANSPOSED_ONLY


def support_closure_window(params):
    """Smallest window holding the supports, their pairwise product images,
    and their bracket images, padded by the bracket shift."""
    base = set(params.support_indices())
    sums = {a + b for a in base for b in base}
    shifted = {a + params.k for a in sums}
    closure = base | sums | shifted
    pad = abs(params.k)
    return window(min(closure) - pad, max(closure) + pad)


def left_multiplication_operator(pdef, element, index_window):
    """Multiplication by a fixed element, tabulated over a symbol window."""
    table = {}
    for i in index_window.indices():
        for sym in (L(i), M(i)):
            table[sym] = product_eval(pdef, element, Element.basis(sym))
    return custom_operator(table)


def poisson_violation_witness(bdef, pdef, w):
    """First basis 4-tuple violating the classical Leibniz law, or None.

    Scans 4-tuples in canonical order and stops at the first violation, so
    products that are far from the classical law stay cheap to refute.
    """
    import itertools

    from .checks import Violation, window_symbols

    syms = window_symbols(w)
    for x, y, u, v in itertools.product(syms, repeat=4):
        lhs = {}
        for cp, sp in pdef.terms(u, v):
            for cb, sb in bdef.terms(x, y, sp):
                val = cp * cb
                if val:
                    lhs[sb] = lhs.get(sb, ZERO) + val
        rhs = {}
        for cb, sb in bdef.terms(x, y, v):
            for cp, sp in pdef.terms(u, sb):
                val = cb * cp
                if val:
                    rhs[sp] = rhs.get(sp, ZERO) + val
        for cb, sb in bdef.terms(x, y, u):
            for cp, sp in pdef.terms(sb, v):
                val = cb * cp
                if val:
                    rhs[sp] = rhs.get(sp, ZERO) + val
        lhs_el = Element(lhs)
        rhs_el = Element(rhs)
        residual = lhs_el - rhs_el
        if residual:
            return Violation(inputs=(x, y, u, v), lhs=lhs_el, rhs=rhs_el, residual=residual)
    return None
