"""Law checkers over finite index windows.

Every checker quantifies a law exhaustively over the basis symbols of a
window, or over seeded random samples from a wider index range, and
returns a CheckReport with exact residual witnesses for every violation.
Exhaustive runs refuse to start when the case count exceeds the budget
instead of silently sampling.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import NamedTuple

from .algebras import a_omega_delta, algebra_a, bracket_eval, omega_form, relabel_m_negation
from .elements import BasisSymbol, Element, L, M
from .errors import BudgetExceededError
from .scalars import from_int

DEFAULT_EXHAUSTIVE_CAP = 2_000_000
DEFAULT_SAMPLES = 10_000

_THIRD = from_int(1) / from_int(3)


class Window(NamedTuple):
    lo: int
    hi: int

    def __str__(self):
        return f"[{self.lo},{self.hi}]"

    def indices(self):
        return range(self.lo, self.hi + 1)

    def contains(self, index):
        return self.lo <= index <= self.hi

    @property
    def size(self):
        return self.hi - self.lo + 1


def window(lo, hi):
    if lo > hi:
        raise ValueError(f"window lower bound {lo} exceeds upper bound {hi}")
    return Window(int(lo), int(hi))


DEFAULT_RANDOM_WINDOW = Window(-20, 20)


def window_symbols(w):
    """All basis symbols of a window in canonical order (L family first)."""
    return [L(i) for i in w.indices()] + [M(i) for i in w.indices()]


@dataclass(frozen=True)
class Violation:
    inputs: tuple
    lhs: Element
    rhs: Element
    residual: Element


@dataclass
class CheckReport:
    law: str
    mode: str
    cases_run: int
    violations: list = field(default_factory=list)
    seed: int | None = None

    @property
    def passed(self):
        return not self.violations

    def sort_violations(self):
        self.violations.sort(key=lambda v: v.inputs)
        return self


def _add_terms(acc, scale, terms):
    for base, sym in terms:
        val = scale * base
        cur = acc.get(sym)
        if cur is None:
            if val:
                acc[sym] = val
        else:
            cur = cur + val
            if cur:
                acc[sym] = cur
            else:
                del acc[sym]


def _diff(lhs, rhs):
    out = dict(lhs)
    for sym, coeff in rhs.items():
        cur = out.get(sym)
        if cur is None:
            out[sym] = -coeff
        else:
            cur = cur - coeff
            if cur:
                out[sym] = cur
            else:
                del out[sym]
    return out


def _check_budget(mode, total, budget):
    if mode == "exhaustive":
        cap = DEFAULT_EXHAUSTIVE_CAP if budget is None else budget
        if total > cap:
            raise BudgetExceededError(
                f"exhaustive run needs {total} cases, budget is {cap}"
            )
        return total
    if mode == "randomized":
        return DEFAULT_SAMPLES if budget is None else budget
    raise ValueError(f"unknown mode {mode!r}")


def _random_symbol(rng, sample_window):
    fam = "L" if rng.random() < 0.5 else "M"
    return BasisSymbol(fam, rng.randint(sample_window.lo, sample_window.hi))


def _tuple_stream(w, arity, mode, cases, rng, sample_window):
    if mode == "exhaustive":
        return itertools.product(window_symbols(w), repeat=arity)
    return (
        tuple(_random_symbol(rng, sample_window) for _ in range(arity))
        for _ in range(cases)
    )


# ---------------------------------------------------------------------------
# ternary bracket axioms


def check_skew_symmetry(bdef, w):
    """Each transposition of arguments negates the bracket, on all triples."""
    report = CheckReport(law="skew-symmetry", mode="exhaustive", cases_run=0)
    syms = window_symbols(w)
    for x, y, z in itertools.product(syms, repeat=3):
        report.cases_run += 1
        base = {}
        _add_terms(base, from_int(1), bdef.terms(x, y, z))
        for swapped in ((y, x, z), (z, y, x), (x, z, y)):
            other = {}
            _add_terms(other, from_int(1), bdef.terms(*swapped))
            residual = dict(base)
            for sym, coeff in other.items():
                cur = residual.get(sym)
                if cur is None:
                    residual[sym] = coeff
                else:
                    cur = cur + coeff
                    if cur:
                        residual[sym] = cur
                    else:
                        del residual[sym]
            if residual:
                report.violations.append(
                    Violation(
                        inputs=(x, y, z, *swapped),
                        lhs=Element(base),
                        rhs=Element({s: -c for s, c in other.items()}),
                        residual=Element(residual),
                    )
                )
    return report.sort_violations()


def check_fundamental_identity(
    bdef, w, mode="exhaustive", budget=None, seed=0, sample_window=DEFAULT_RANDOM_WINDOW
):
    """[x,y,[u,v,t]] = [[x,y,u],v,t] + [u,[x,y,v],t] + [u,v,[x,y,t]]."""
    syms_count = 2 * w.size
    cases = _check_budget(mode, syms_count**5, budget)
    rng = random.Random(seed)
    report = CheckReport(
        law="fundamental-identity",
        mode=mode,
        cases_run=0,
        seed=seed if mode == "randomized" else None,
    )
    for x, y, u, v, t in _tuple_stream(w, 5, mode, cases, rng, sample_window):
        report.cases_run += 1
        lhs = {}
        for c0, s0 in bdef.terms(u, v, t):
            _add_terms(lhs, c0, bdef.terms(x, y, s0))
        rhs = {}
        for c0, s0 in bdef.terms(x, y, u):
            _add_terms(rhs, c0, bdef.terms(s0, v, t))
        for c0, s0 in bdef.terms(x, y, v):
            _add_terms(rhs, c0, bdef.terms(u, s0, t))
        for c0, s0 in bdef.terms(x, y, t):
            _add_terms(rhs, c0, bdef.terms(u, v, s0))
        residual = _diff(lhs, rhs)
        if residual:
            report.violations.append(
                Violation(
                    inputs=(x, y, u, v, t),
                    lhs=Element(lhs),
                    rhs=Element(rhs),
                    residual=Element(residual),
                )
            )
    return report.sort_violations()


# ---------------------------------------------------------------------------
# operator laws


def check_one_third_derivation(
    bdef, op, w, mode="exhaustive", budget=None, seed=0,
    sample_window=DEFAULT_RANDOM_WINDOW,
):
    """3 op([x,y,z]) = [op(x),y,z] + [x,op(y),z] + [x,y,op(z)] on basis triples."""
    syms_count = 2 * w.size
    cases = _check_budget(mode, syms_count**3, budget)
    rng = random.Random(seed)
    report = CheckReport(
        law="one-third-derivation",
        mode=mode,
        cases_run=0,
        seed=seed if mode == "randomized" else None,
    )
    for x, y, z in _tuple_stream(w, 3, mode, cases, rng, sample_window):
        report.cases_run += 1
        lhs3 = {}
        for c0, s0 in bdef.terms(x, y, z):
            _add_terms(lhs3, c0.scale_int(3), op.terms(s0))
        rhs = {}
        for c0, s0 in op.terms(x):
            _add_terms(rhs, c0, bdef.terms(s0, y, z))
        for c0, s0 in op.terms(y):
            _add_terms(rhs, c0, bdef.terms(x, s0, z))
        for c0, s0 in op.terms(z):
            _add_terms(rhs, c0, bdef.terms(x, y, s0))
        residual3 = _diff(lhs3, rhs)
        if residual3:
            report.violations.append(
                Violation(
                    inputs=(x, y, z),
                    lhs=Element({s: c * _THIRD for s, c in lhs3.items()}),
                    rhs=Element({s: c * _THIRD for s, c in rhs.items()}),
                    residual=Element({s: c * _THIRD for s, c in residual3.items()}),
                )
            )
    return report.sort_violations()


def check_derivation(op, w):
    """Product rule op(x*y) = op(x)*y + x*op(y) in the base algebra."""
    prod = algebra_a()
    report = CheckReport(law="product-derivation-rule", mode="exhaustive", cases_run=0)
    syms = window_symbols(w)
    for x, y in itertools.product(syms, repeat=2):
        report.cases_run += 1
        lhs = {}
        for c0, s0 in prod.terms(x, y):
            _add_terms(lhs, c0, op.terms(s0))
        rhs = {}
        for c0, s0 in op.terms(x):
            _add_terms(rhs, c0, prod.terms(s0, y))
        for c0, s0 in op.terms(y):
            _add_terms(rhs, c0, prod.terms(x, s0))
        residual = _diff(lhs, rhs)
        if residual:
            report.violations.append(
                Violation(
                    inputs=(x, y),
                    lhs=Element(lhs),
                    rhs=Element(rhs),
                    residual=Element(residual),
                )
            )
    return report.sort_violations()


def check_involutive_morphism(op, w):
    """op is a self-inverse algebra morphism: op(op(x)) = x, op(x*y) = op(x)*op(y)."""
    prod = algebra_a()
    report = CheckReport(law="involutive-morphism", mode="exhaustive", cases_run=0)
    syms = window_symbols(w)
    one = from_int(1)
    for x in syms:
        report.cases_run += 1
        twice = {}
        for c0, s0 in op.terms(x):
            _add_terms(twice, c0, op.terms(s0))
        residual = _diff(twice, {x: one})
        if residual:
            report.violations.append(
                Violation(
                    inputs=(x,),
                    lhs=Element(twice),
                    rhs=Element.basis(x),
                    residual=Element(residual),
                )
            )
    for x, y in itertools.product(syms, repeat=2):
        report.cases_run += 1
        lhs = {}
        for c0, s0 in prod.terms(x, y):
            _add_terms(lhs, c0, op.terms(s0))
        rhs = {}
        for cx, sx in op.terms(x):
            for cy, sy in op.terms(y):
                _add_terms(rhs, cx * cy, prod.terms(sx, sy))
        residual = _diff(lhs, rhs)
        if residual:
            report.violations.append(
                Violation(
                    inputs=(x, y),
                    lhs=Element(lhs),
                    rhs=Element(rhs),
                    residual=Element(residual),
                )
            )
    return report.sort_violations()


def check_relabel_intertwining(w):
    """M-index negation carries the unshifted bracket to the shifted one.

    relabel([x,y,z]_omega-form) = [relabel(x), relabel(y), relabel(z)]
    for all basis triples of the window.
    """
    source = omega_form()
    target = a_omega_delta()
    report = CheckReport(law="relabel-intertwining", mode="exhaustive", cases_run=0)
    syms = window_symbols(w)
    for x, y, z in itertools.product(syms, repeat=3):
        report.cases_run += 1
        lhs = relabel_m_negation(
            bracket_eval(source, Element.basis(x), Element.basis(y), Element.basis(z))
        )
        rhs = bracket_eval(
            target,
            relabel_m_negation(Element.basis(x)),
            relabel_m_negation(Element.basis(y)),
            relabel_m_negation(Element.basis(z)),
        )
        residual = lhs - rhs
        if residual:
            report.violations.append(
                Violation(inputs=(x, y, z), lhs=lhs, rhs=rhs, residual=residual)
            )
    return report.sort_violations()


# ---------------------------------------------------------------------------
# bracket/product compatibility laws


def check_tp_compatibility(
    bdef, pdef, w, mode="exhaustive", budget=None, seed=0,
    sample_window=DEFAULT_RANDOM_WINDOW,
):
    """3 u*[x,y,z] = [x*u,y,z] + [x,y*u,z] + [x,y,z*u] on basis 4-tuples."""
    syms_count = 2 * w.size
    cases = _check_budget(mode, syms_count**4, budget)
    rng = random.Random(seed)
    report = CheckReport(
        law="transposed-leibniz",
        mode=mode,
        cases_run=0,
        seed=seed if mode == "randomized" else None,
    )
    for u, x, y, z in _tuple_stream(w, 4, mode, cases, rng, sample_window):
        report.cases_run += 1
        lhs = {}
        for cb, sb in bdef.terms(x, y, z):
            _add_terms(lhs, cb.scale_int(3), pdef.terms(u, sb))
        rhs = {}
        for cp, sp in pdef.terms(x, u):
            _add_terms(rhs, cp, bdef.terms(sp, y, z))
        for cp, sp in pdef.terms(y, u):
            _add_terms(rhs, cp, bdef.terms(x, sp, z))
        for cp, sp in pdef.terms(z, u):
            _add_terms(rhs, cp, bdef.terms(x, y, sp))
        residual = _diff(lhs, rhs)
        if residual:
            report.violations.append(
                Violation(
                    inputs=(u, x, y, z),
                    lhs=Element(lhs),
                    rhs=Element(rhs),
                    residual=Element(residual),
                )
            )
    return report.sort_violations()


def check_poisson_compatibility(
    bdef, pdef, w, mode="exhaustive", budget=None, seed=0,
    sample_window=DEFAULT_RANDOM_WINDOW,
):
    """[x,y,u*v] = u*[x,y,v] + [x,y,u]*v on basis 4-tuples."""
    syms_count = 2 * w.size
    cases = _check_budget(mode, syms_count**4, budget)
    rng = random.Random(seed)
    report = CheckReport(
        law="poisson-leibniz",
        mode=mode,
        cases_run=0,
        seed=seed if mode == "randomized" else None,
    )
    for x, y, u, v in _tuple_stream(w, 4, mode, cases, rng, sample_window):
        report.cases_run += 1
        lhs = {}
        for cp, sp in pdef.terms(u, v):
            _add_terms(lhs, cp, bdef.terms(x, y, sp))
        rhs = {}
        for cb, sb in bdef.terms(x, y, v):
            _add_terms(rhs, cb, pdef.terms(u, sb))
        for cb, sb in bdef.terms(x, y, u):
            _add_terms(rhs, cb, pdef.terms(sb, v))
        residual = _diff(lhs, rhs)
        if residual:
            report.violations.append(
                Violation(
                    inputs=(x, y, u, v),
                    lhs=Element(lhs),
                    rhs=Element(rhs),
                    residual=Element(residual),
                )
            )
    return report.sort_violations()


def check_commutative_associative(
    pdef, w, mode="exhaustive", budget=None, seed=0,
    sample_window=DEFAULT_RANDOM_WINDOW,
):
    """x*y = y*x on pairs and (x*y)*z = x*(y*z) on triples."""
    syms_count = 2 * w.size
    total = syms_count**2 + syms_count**3
    cases = _check_budget(mode, total, budget)
    rng = random.Random(seed)
    report = CheckReport(
        law="commutative-associative",
        mode=mode,
        cases_run=0,
        seed=seed if mode == "randomized" else None,
    )

    if mode == "exhaustive":
        syms = window_symbols(w)
        pairs = itertools.product(syms, repeat=2)
        triples = itertools.product(syms, repeat=3)
    else:
        pairs = (
            (_random_symbol(rng, sample_window), _random_symbol(rng, sample_window))
            for _ in range(cases)
        )
        triples = (
            tuple(_random_symbol(rng, sample_window) for _ in range(3))
            for _ in range(cases)
        )

    for x, y in pairs:
        report.cases_run += 1
        lhs = {}
        _add_terms(lhs, from_int(1), pdef.terms(x, y))
        rhs = {}
        _add_terms(rhs, from_int(1), pdef.terms(y, x))
        residual = _diff(lhs, rhs)
        if residual:
            report.violations.append(
                Violation(
                    inputs=(x, y),
                    lhs=Element(lhs),
                    rhs=Element(rhs),
                    residual=Element(residual),
                )
            )
    for x, y, z in triples:
        report.cases_run += 1
        lhs = {}
        for c0, s0 in pdef.terms(x, y):
            _add_terms(lhs, c0, pdef.terms(s0, z))
        rhs = {}
        for c0, s0 in pdef.terms(y, z):
            _add_terms(rhs, c0, pdef.terms(x, s0))
        residual = _diff(lhs, rhs)
        if residual:
            report.violations.append(
                Violation(
                    inputs=(x, y, z),
                    lhs=Element(lhs),
                    rhs=Element(rhs),
                    residual=Element(residual),
                )
            )
    return report.sort_violations()


# ---------------------------------------------------------------------------
# generator closure


class ClosureResult(NamedTuple):
    spanned: bool
    rounds_used: int
    missing: list


def generator_closure(bdef, gens, w, max_rounds=16, margin=None):
    """Close the span of the generators under the bracket, round by round.

    Each round brackets triples of the current reduced span basis that
    touch at least one element added in the previous round.  Bracket
    results whose support escapes the window padded by `margin` (default:
    the window width) are dropped; everything else is kept for later
    bracketing even when it lies outside the target window.  `spanned` is
    true once every basis symbol of the window reduces to zero against the
    span, tested by exact row reduction.

    Raises BudgetExceededError when max_rounds elapse while the span is
    still growing short of the target.
    """
    if not gens:
        raise ValueError("generator_closure requires at least one generator")
    if margin is None:
        margin = w.size
    extended = Window(w.lo - margin, w.hi + margin)
    targets = window_symbols(w)

    rows = {}  # leading symbol -> monic Element

    def reduce(elem):
        cur = dict(elem.terms)
        while cur:
            lead = min(cur)
            row = rows.get(lead)
            if row is None:
                return cur
            factor = cur[lead]
            for sym, coeff in row.terms.items():
                val = factor * coeff
                have = cur.get(sym)
                if have is None:
                    cur[sym] = -val
                else:
                    have = have - val
                    if have:
                        cur[sym] = have
                    else:
                        del cur[sym]
        return cur

    def insert(elem):
        rem = reduce(elem)
        if not rem:
            return False
        lead = min(rem)
        inv = rem[lead]
        rows[lead] = Element({s: c / inv for s, c in rem.items()})
        return True

    def in_extended(elem):
        return all(extended.contains(sym.index) for sym in elem.terms)

    def spanned_now():
        return all(not reduce(Element.basis(t)) for t in targets)

    for g in gens:
        insert(g)
    added = list(rows.values())

    if spanned_now():
        return ClosureResult(True, 0, [])

    old_start = 0
    rounds_used = 0
    for round_no in range(1, max_rounds + 1):
        rounds_used = round_no
        snapshot = added
        n = len(snapshot)
        candidates = []
        for i, j, k in itertools.combinations(range(n), 3):
            if k < old_start:
                continue
            br = bracket_eval(bdef, snapshot[i], snapshot[j], snapshot[k])
            if br and in_extended(br):
                candidates.append(br)
        old_start = n
        grew = False
        for cand in candidates:
            if insert(cand):
                grew = True
        added = list(rows.values())
        if spanned_now():
            return ClosureResult(True, rounds_used, [])
        if not grew:
            return ClosureResult(
                False, rounds_used, [t for t in targets if reduce(Element.basis(t))]
            )
    raise BudgetExceededError(
        f"generator closure still growing after {max_rounds} rounds"
    )
