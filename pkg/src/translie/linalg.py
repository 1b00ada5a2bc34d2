"""Exact nullspace computation for sparse homogeneous systems.

Rows are sparse maps column -> Scalar over an ordered list of named
unknowns.  Elimination is exact Gaussian elimination over the Gaussian
rationals: forward reduction keeps pivot rows sparse, a final
back-substitution produces fully reduced pivot rows, and the nullspace
basis is read off the free columns.  Output is deterministic: pivots are
chosen at the smallest column index and basis vectors are normalized so
their first nonzero coordinate is 1.

Systems whose coefficients are all real run through a fraction-free
integer elimination (rows are homogeneous, so each can be scaled to a
primitive integer row); the result is identical to the rational path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from .errors import UnknownNotFoundError
from .scalars import Scalar, ZERO, ONE


class UnknownId(NamedTuple):
    name: str
    subs: tuple

    def __str__(self):
        return f"{self.name}[{','.join(str(s) for s in self.subs)}]"


def unknown(name, *subs):
    if not 1 <= len(subs) <= 3:
        raise ValueError("unknowns carry between one and three subscripts")
    return UnknownId(name, tuple(int(s) for s in subs))


@dataclass
class ConstraintSystem:
    """Homogeneous linear system: rows of Scalar coefficients, rhs = 0."""

    unknowns: list = field(default_factory=list)
    rows: list = field(default_factory=list)  # list[dict[int, Scalar]]
    provenance: list = field(default_factory=list)
    _index: dict = field(default_factory=dict, repr=False)

    def register(self, uid):
        idx = self._index.get(uid)
        if idx is None:
            idx = len(self.unknowns)
            self._index[uid] = idx
            self.unknowns.append(uid)
        return idx

    def column_of(self, uid):
        try:
            return self._index[uid]
        except KeyError:
            raise UnknownNotFoundError(f"unregistered unknown {uid}") from None

    def add_row(self, coeffs, provenance=""):
        """coeffs: map UnknownId -> Scalar; zero coefficients are dropped."""
        row = {}
        for uid, coeff in coeffs.items():
            if coeff:
                row[self.column_of(uid)] = coeff
        if row:
            self.rows.append(row)
            self.provenance.append(provenance)
        return row

    @property
    def num_unknowns(self):
        return len(self.unknowns)


@dataclass
class SolutionSpace:
    """Exact basis of a nullspace, indexed by the system's unknowns."""

    unknowns: list
    basis: list  # list[list[Scalar]], dense vectors

    @property
    def dimension(self):
        return len(self.basis)

    def coefficient(self, vector_index, uid):
        try:
            col = self.unknowns.index(uid)
        except ValueError:
            raise UnknownNotFoundError(f"unknown {uid} not in solution space") from None
        return self.basis[vector_index][col]

    def vector_as_dict(self, vector_index, skip_zero=True):
        vec = self.basis[vector_index]
        return {
            uid: coeff
            for uid, coeff in zip(self.unknowns, vec)
            if coeff or not skip_zero
        }

    def verify_against(self, system):
        """Substitute every basis vector into every row; exact zero required."""
        col_map = [system.column_of(uid) for uid in self.unknowns]
        for vec in self.basis:
            by_col = {col_map[i]: coeff for i, coeff in enumerate(vec) if coeff}
            for row in system.rows:
                total = ZERO
                for col, coeff in row.items():
                    v = by_col.get(col)
                    if v is not None:
                        total = total + coeff * v
                if total:
                    return False
        return True


def residual_rows(system, assignment):
    """Row indices not exactly annihilated by an assignment.

    assignment: map UnknownId -> Scalar; unknowns not mentioned are zero.
    """
    vec = {}
    for uid, val in assignment.items():
        if val:
            vec[system.column_of(uid)] = val
    bad = []
    for idx, row in enumerate(system.rows):
        total = ZERO
        for col, coeff in row.items():
            v = vec.get(col)
            if v is not None:
                total = total + coeff * v
        if total:
            bad.append(idx)
    return bad


# ---------------------------------------------------------------------------
# elimination cores


def _all_real(rows):
    for row in rows:
        for v in row.values():
            if v.im:
                return False
    return True


def _int_row(row):
    """Scale a real row to a primitive integer row with positive lead."""
    lcm = 1
    for v in row.values():
        den = v.re.denominator
        lcm = lcm * den // gcd(lcm, den)
    out = {}
    g = 0
    for col, v in row.items():
        iv = int(v.re * lcm)
        out[col] = iv
        g = gcd(g, iv)
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    if out[min(out)] < 0:
        out = {c: -v for c, v in out.items()}
    return out


def rank(rows):
    """Rank of a list of sparse Scalar rows (non-destructive)."""
    pivots = {}
    for row in rows:
        reduced, lead = _reduce_row(row, pivots)
        if lead is not None:
            inv = reduced[lead]
            pivots[lead] = {c: v / inv for c, v in reduced.items()}
    return len(pivots)


def _reduce_row(row, pivots):
    """Forward reduction over any exact field type (Scalar or Fraction)."""
    row = dict(row)
    while row:
        lead = min(row)
        pivot = pivots.get(lead)
        if pivot is None:
            return row, lead
        factor = row[lead]
        for col, coeff in pivot.items():
            cur = row.get(col)
            if cur is None:
                val = -factor * coeff
                if val:
                    row[col] = val
            else:
                val = cur - factor * coeff
                if val:
                    row[col] = val
                else:
                    del row[col]
    return row, None


def _back_substitute(pivots):
    """Turn monic echelon pivot rows into reduced row echelon form."""
    for lead in sorted(pivots, reverse=True):
        prow = pivots[lead]
        for other_lead, other in pivots.items():
            if other_lead >= lead:
                continue
            factor = other.get(lead)
            if factor is None:
                continue
            for col, coeff in prow.items():
                cur = other.get(col)
                if cur is None:
                    val = -factor * coeff
                    if val:
                        other[col] = val
                else:
                    val = cur - factor * coeff
                    if val:
                        other[col] = val
                    else:
                        del other[col]


def nullspace(system, verify=True):
    """Exact basis of {v : Av = 0} for a homogeneous ConstraintSystem.

    dimension = num_unknowns - rank(A) by construction; when verify is
    set, every basis vector is substituted back into every row.
    """
    n = system.num_unknowns
    if _all_real(system.rows):
        pivots = _eliminate_int(system.rows)
        basis = _extract_basis(n, pivots, Fraction(0), Fraction(1))
        basis = [[Scalar(v) for v in vec] for vec in basis]
    else:
        pivots = _eliminate_scalar(system.rows)
        basis = _extract_basis(n, pivots, ZERO, ONE)

    space = SolutionSpace(unknowns=list(system.unknowns), basis=basis)
    if verify and not space.verify_against(system):
        raise AssertionError("nullspace verification failed: residual row found")
    return space


def _eliminate_int(rows):
    """Duplicate-free fraction-free elimination; returns monic Fraction RREF."""
    seen = set()
    pivots_int = {}
    for raw in rows:
        if not raw:
            continue
        row = _int_row(raw)
        key = tuple(sorted(row.items()))
        if key in seen:
            continue
        seen.add(key)

        # forward reduction: row := b*row - a*pivot, content-normalized
        while row:
            lead = min(row)
            pivot = pivots_int.get(lead)
            if pivot is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if g > 1:
                    row = {c: v // g for c, v in row.items()}
                if row[lead] < 0:
                    row = {c: -v for c, v in row.items()}
                pivots_int[lead] = row
                break
            a = row[lead]
            b = pivot[lead]
            if b != 1:
                for col in row:
                    row[col] *= b
            for col, v in pivot.items():
                av = a * v
                cur = row.get(col)
                if cur is None:
                    row[col] = -av
                else:
                    cur -= av
                    if cur:
                        row[col] = cur
                    else:
                        del row[col]
            if row:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if g > 1:
                    row = {c: v // g for c, v in row.items()}

    pivots = {}
    for lead, row in pivots_int.items():
        b = row[lead]
        pivots[lead] = {c: Fraction(v, b) for c, v in row.items()}
    _back_substitute(pivots)
    return pivots


def _eliminate_scalar(rows):
    """Scalar-field elimination for systems with imaginary coefficients."""
    seen = set()
    pivots = {}
    for row in rows:
        if not row:
            continue
        cols = sorted(row)
        lead_val = row[cols[0]]
        key = tuple((c, (s.re, s.im)) for c, s in ((c, row[c] / lead_val) for c in cols))
        if key in seen:
            continue
        seen.add(key)
        reduced, lead = _reduce_row(row, pivots)
        if lead is not None:
            inv = reduced[lead]
            pivots[lead] = {c: v / inv for c, v in reduced.items()}
    _back_substitute(pivots)
    return pivots


def _extract_basis(n, pivots, zero, one):
    basis = []
    for j in range(n):
        if j in pivots:
            continue
        vec = [zero] * n
        vec[j] = one
        for lead, prow in pivots.items():
            coeff = prow.get(j)
            if coeff:
                vec[lead] = -coeff
        basis.append(_normalize(vec, one))
    return basis


def _normalize(vec, one):
    for coeff in vec:
        if coeff:
            if coeff == one:
                return vec
            return [v / coeff for v in vec]
    return vec


def project_solution(space, keep):
    """Coordinate projection of a solution space, re-reduced to a basis.

    keep: iterable of UnknownId; must be a subset of space.unknowns.  The
    kept coordinates stay in their original order.
    """
    keep = set(keep)
    missing = keep.difference(space.unknowns)
    if missing:
        raise UnknownNotFoundError(f"unknowns not in space: {sorted(map(str, missing))}")
    cols = [i for i, uid in enumerate(space.unknowns) if uid in keep]
    kept_unknowns = [space.unknowns[i] for i in cols]

    pivots = {}
    for vec in space.basis:
        row = {j: vec[col] for j, col in enumerate(cols) if vec[col]}
        reduced, lead = _reduce_row(row, pivots)
        if lead is not None:
            inv = reduced[lead]
            pivots[lead] = {c: v / inv for c, v in reduced.items()}
    _back_substitute(pivots)

    basis = []
    for lead in sorted(pivots):
        prow = pivots[lead]
        vec = [ZERO] * len(cols)
        for col, coeff in prow.items():
            vec[col] = coeff
        basis.append(_normalize(vec, ONE))
    return SolutionSpace(unknowns=kept_unknowns, basis=basis)
