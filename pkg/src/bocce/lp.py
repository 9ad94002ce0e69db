"""Small dense linear programs, solved by a two-phase tableau simplex.

Two arithmetic modes share one code path. ``RATIONAL`` runs over exact
rationals (gmpy2 ``mpq``) and returns :class:`fractions.Fraction` values;
``Float(eps)`` runs over doubles with ``eps`` as the zero tolerance. Rational
mode pivots by Bland's smallest-index rule, which cannot cycle; Float mode
uses the largest-coefficient rule with a fallback to Bland's rule after a
run of degenerate pivots.
Either way the pivot sequence, and so the returned vertex, is a
deterministic function of the input.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from gmpy2 import mpq

INF = math.inf


@dataclass(frozen=True)
class Rational:
    def __str__(self):
        return "rational"


@dataclass(frozen=True)
class Float:
    eps: float = 1e-9

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("Float mode needs eps > 0")

    def __str__(self):
        return "float" if self.eps == 1e-9 else f"float:{self.eps:g}"


ArithmeticMode = Union[Rational, Float]
RATIONAL = Rational()
FLOAT = Float()


def parse_mode(text: str) -> ArithmeticMode:
    """``rational``, ``float`` or ``float:<eps>``."""
    text = text.strip().lower()
    if text in ("rational", "exact"):
        return RATIONAL
    if text == "float":
        return FLOAT
    if text.startswith("float:"):
        return Float(float(text[6:]))
    raise ValueError(f"unknown arithmetic mode {text!r}")


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


LE, GE, EQ = "<=", ">=", "="


@dataclass
class Constraint:
    coeffs: Sequence
    rel: str
    rhs: object = 0


@dataclass
class LinearProgram:
    """maximize ``objective . x`` subject to ``constraints`` and bounds.

    ``objective=None`` asks only for feasibility. Bounds default to
    ``0 <= x_j < inf``; use ``-INF``/``INF`` for free directions.
    """

    n_vars: int
    constraints: list = field(default_factory=list)
    objective: Optional[Sequence] = None
    lower: Optional[Sequence] = None
    upper: Optional[Sequence] = None

    def __post_init__(self):
        if self.lower is None:
            self.lower = [0] * self.n_vars
        if self.upper is None:
            self.upper = [INF] * self.n_vars
        self.validate()

    def validate(self):
        n = self.n_vars
        if n < 1:
            raise ValueError("a linear program needs at least one variable")
        if self.objective is not None and len(self.objective) != n:
            raise ValueError(f"objective has length {len(self.objective)}, expected {n}")
        if len(self.lower) != n or len(self.upper) != n:
            raise ValueError("bound vectors must have one entry per variable")
        for j, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            if lo == INF or hi == -INF or lo > hi:
                raise ValueError(f"inconsistent bounds for x{j}: [{lo}, {hi}]")
        for i, c in enumerate(self.constraints):
            if len(c.coeffs) != n:
                raise ValueError(f"constraint {i} has {len(c.coeffs)} coefficients, expected {n}")
            if c.rel not in (LE, GE, EQ):
                raise ValueError(f"constraint {i}: unknown relation {c.rel!r}")

    def add(self, coeffs, rel, rhs=0):
        self.constraints.append(Constraint(list(coeffs), rel, rhs))
        return self


@dataclass
class LpOutcome:
    status: Status
    x: Optional[tuple] = None
    value: object = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


class _Tableau:
    """Standard-form tableau for max c.x, Ax = b (b >= 0), x >= 0."""

    STALL = 25

    def __init__(self, rows, rhs, eps, zero, start, bland=True):
        """``start[i]`` names a column that is the i-th unit vector, or None;
        rows without one get a phase-one artificial (columns n, n+1, ...)."""
        self.bland = bland
        self.eps = eps
        self.zero = zero
        self.n = n = len(rows[0])
        need = [i for i, col in enumerate(start) if col is None]
        k = len(need)
        self.T = []
        self.basis = list(start)
        for i, (row, b) in enumerate(zip(rows, rhs)):
            self.T.append(list(row) + [zero] * k + [b])
        for a, i in enumerate(need):
            self.T[i][n + a] = zero + 1
            self.basis[i] = n + a
        self.width = n + k

    def pivot(self, r, s):
        T = self.T
        prow = T[r]
        piv = prow[s]
        if piv != 1:
            prow = [v / piv for v in prow]
            T[r] = prow
        nz = [(j, v) for j, v in enumerate(prow) if v != 0]
        for i, row in enumerate(T):
            if i == r:
                continue
            f = row[s]
            if f != 0:
                for j, v in nz:
                    row[j] -= f * v
        obj = self.obj
        f = obj[s]
        if f != 0:
            for j, v in nz:
                obj[j] -= f * v
        self.basis[r] = s

    def run(self, allowed):
        """Simplex iterations on the current objective row.

        Returns ``True`` at optimality, ``False`` if unbounded.
        """
        T, eps, basis = self.T, self.eps, self.basis
        stall = self.STALL if self.bland else 0
        while True:
            obj = self.obj
            s = -1
            if stall >= self.STALL:
                for j in range(allowed):
                    if obj[j] > eps:
                        s = j
                        break
            else:
                top = eps
                for j in range(allowed):
                    if obj[j] > top:
                        s, top = j, obj[j]
            if s < 0:
                return True
            r = -1
            best = None
            for i, row in enumerate(T):
                a = row[s]
                if a > eps:
                    ratio = row[-1] / a
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and basis[i] < basis[r])
                    ):
                        best, r = ratio, i
            if r < 0:
                return False
            if not self.bland:
                stall = stall + 1 if best <= eps else 0
            self.pivot(r, s)

    def set_objective(self, c):
        """Reduced-cost row for maximizing ``c . x`` at the current basis;
        the last entry holds minus the objective value."""
        obj = list(c) + [self.zero] * (self.width + 1 - len(c))
        for i, bi in enumerate(self.basis):
            cb = c[bi] if bi < len(c) else self.zero
            if cb != 0:
                row = self.T[i]
                for j, v in enumerate(row):
                    if v != 0:
                        obj[j] -= cb * v
        self.obj = obj

    def phase_one(self):
        n = self.n
        if self.width == n:
            return True
        c = [self.zero] * n + [self.zero - 1] * (self.width - n)
        self.set_objective(c)
        self.run(self.width)
        residual = self.obj[-1]  # = sum of artificials at optimum
        if residual > self.eps:
            return False
        self._expel_artificials()
        return True

    def _expel_artificials(self):
        n, eps = self.n, self.eps
        keep = []
        for i in range(len(self.T)):
            if self.basis[i] >= n:
                row = self.T[i]
                s = next((j for j in range(n) if abs(row[j]) > eps), -1)
                if s < 0:
                    continue  # redundant equality
                self.pivot(i, s)
            keep.append(i)
        self.T = [self.T[i][:n] + [self.T[i][-1]] for i in keep]
        self.basis = [self.basis[i] for i in keep]
        self.width = n

    def solution(self):
        x = [self.zero] * self.n
        for i, bi in enumerate(self.basis):
            x[bi] = self.T[i][-1]
        return x


def _to_number(v, exact):
    if exact:
        if isinstance(v, Fraction):
            return mpq(v.numerator, v.denominator)
        return mpq(v)
    return float(v)


def _from_number(v, exact):
    if exact:
        return Fraction(int(v.numerator), int(v.denominator))
    return float(v)


def solve(lp: LinearProgram, mode: ArithmeticMode = FLOAT) -> LpOutcome:
    lp.validate()
    exact = isinstance(mode, Rational)
    eps = 0 if exact else mode.eps
    zero = mpq(0) if exact else 0.0
    num = lambda v: _to_number(v, exact)  # noqa: E731
    n = lp.n_vars

    # original x_j = offset_j + sum_k sign * s_k over its standard columns
    cols = []
    offset = []
    bound_rows = []  # (original variable, rel, bound) handled as constraints
    k = 0
    for j, (lo, hi) in enumerate(zip(lp.lower, lp.upper)):
        if lo < 0 < hi:
            # straddles zero: split, keep finite bounds as rows so that the
            # all-slack basis stays feasible
            offset.append(zero)
            cols.append([(k, 1), (k + 1, -1)])
            k += 2
            if lo != -INF:
                bound_rows.append((j, GE, lo))
            if hi != INF:
                bound_rows.append((j, LE, hi))
        elif lo != -INF:
            offset.append(num(lo))
            cols.append([(k, 1)])
            k += 1
            if hi != INF:
                bound_rows.append((j, LE, hi))
        else:
            offset.append(num(hi))
            cols.append([(k, -1)])
            k += 1
    n_struct = k

    def mapped(coeffs, rhs):
        row = [zero] * n_struct
        rhs = num(rhs)
        for j, a in enumerate(coeffs):
            if a != 0:
                a = num(a)
                rhs -= a * offset[j]
                for col, sg in cols[j]:
                    row[col] += a if sg > 0 else -a
        return row, rhs

    raw = [mapped(c.coeffs, c.rhs) + (c.rel,) for c in lp.constraints]
    for j, rel, bound in bound_rows:
        e = [0] * n
        e[j] = 1
        raw.append(mapped(e, bound) + (rel,))

    n_slack = sum(1 for *_, rel in raw if rel != EQ)
    total = n_struct + n_slack
    rows, rhs, start = [], [], []
    sk = n_struct
    for row, b, rel in raw:
        full = row + [zero] * n_slack
        unit = None
        if rel != EQ:
            full[sk] = zero + (1 if rel == LE else -1)
            unit = sk
            sk += 1
        if b < 0:
            full = [-v for v in full]
            b = -b
        if unit is not None and full[unit] != 1:
            unit = None
        rows.append(full)
        rhs.append(b)
        start.append(unit)

    if not rows:
        # only sign constraints on s: the origin of s-space is feasible
        x0 = [zero] * total
        tab = None
    else:
        tab = _Tableau(rows, rhs, eps, zero, start, bland=exact)
        if not tab.phase_one():
            return LpOutcome(Status.INFEASIBLE)

    c_std = [zero] * total
    if lp.objective is not None:
        for j, cj in enumerate(lp.objective):
            cj = num(cj)
            for col, sg in cols[j]:
                c_std[col] += cj if sg > 0 else -cj
        if tab is None:
            if any(v > eps for v in c_std):
                return LpOutcome(Status.UNBOUNDED)
        else:
            tab.set_objective(c_std)
            if not tab.run(total):
                return LpOutcome(Status.UNBOUNDED)
    s = x0 if tab is None else tab.solution()

    x = []
    for j in range(n):
        v = offset[j]
        for col, sg in cols[j]:
            v = v + s[col] if sg > 0 else v - s[col]
        x.append(v)
    value = zero
    if lp.objective is not None:
        for cj, xj in zip(lp.objective, x):
            value += num(cj) * xj
    return LpOutcome(
        Status.OPTIMAL,
        tuple(_from_number(v, exact) for v in x),
        _from_number(value, exact),
    )


def feasible(lp: LinearProgram, mode: ArithmeticMode = FLOAT) -> bool:
    probe = LinearProgram(lp.n_vars, lp.constraints, None, lp.lower, lp.upper)
    return solve(probe, mode).status is Status.OPTIMAL


def max_violation(lp: LinearProgram, x) -> object:
    """Largest amount by which ``x`` breaks a constraint or bound (0 if none).

    Plain re-substitution, independent of the solver; exact when ``x`` and
    the program data are rationals.
    """
    worst = 0
    for c in lp.constraints:
        lhs = sum(a * v for a, v in zip(c.coeffs, x))
        if c.rel == LE:
            gap = lhs - c.rhs
        elif c.rel == GE:
            gap = c.rhs - lhs
        else:
            gap = abs(lhs - c.rhs)
        worst = max(worst, gap)
    for v, lo, hi in zip(x, lp.lower, lp.upper):
        if lo != -INF:
            worst = max(worst, lo - v)
        if hi != INF:
            worst = max(worst, v - hi)
    return worst
