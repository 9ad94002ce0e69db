"""LP-backed geometric oracles.

Every oracle answers an existence question (is the origin in a convex hull,
is there a separating half-space, does a system have a positive solution).
In Rational mode the answer is exact. In Float mode an answer is only given
when a witness for it was found: a feasible point for the primal system, or
a positive margin for its theorem-of-the-alternative partner. When neither
LP produces a witness the configuration sits within tolerance of the
boundary between the two events, and the oracle returns :data:`DEGENERATE`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import NamedTuple

from . import exact
from .lp import EQ, GE, INF, LE, FLOAT, LinearProgram, Rational, feasible, solve

MAX_REGION_POINTS = 20


class _Degenerate:
    __slots__ = ()

    def __repr__(self):
        return "DEGENERATE"

    def __bool__(self):
        raise TypeError("a degenerate verdict has no truth value")


DEGENERATE = _Degenerate()


class DegenerateVerdict(ArithmeticError):
    """A float-mode oracle could not separate the two outcomes."""


def _eps(mode):
    return 0 if isinstance(mode, Rational) else mode.eps


def _points(cloud, mode=None):
    if isinstance(mode, Rational):
        # binary floats convert exactly
        return [[Fraction(v) for v in p] for p in cloud]
    return [list(p) for p in cloud]


def rows_of(A):
    rows = [list(r) for r in A]
    if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix must be a non-empty rectangular list of rows")
    return rows


def columns_of(A):
    rows = rows_of(A)
    return [list(c) for c in zip(*rows)]


def _hull_lp(points):
    n, d = len(points), len(points[0])
    lp = LinearProgram(n)
    lp.add([1] * n, EQ, 1)
    for k in range(d):
        lp.add([z[k] for z in points], EQ, 0)
    return lp


def separation_witness(points, mode=FLOAT, through=()):
    """max delta s.t. <v, z_i> >= delta for all i, |v_j| <= 1, delta >= 0.

    Returns ``(delta, v)``. ``through`` lists vectors h with the extra
    requirement <v, h> = 0.
    """
    d = len(points[0])
    lp = LinearProgram(
        d + 1,
        objective=[0] * d + [1],
        lower=[-1] * d + [0],
        upper=[1] * d + [INF],
    )
    for z in points:
        lp.add(list(z) + [-1], GE, 0)
    for h in through:
        lp.add(list(h) + [0], EQ, 0)
    out = solve(lp, mode)
    return out.value, out.x[:d]


def separation_margin(points, mode=FLOAT, through=()):
    return separation_witness(points, mode, through)[0]


def _witnessed(mode, primary, alternative):
    """Resolve a yes/no question from two mutually exclusive witness searches.

    ``primary()`` and ``alternative()`` each report whether a witness for
    their side exists. Exact mode trusts ``primary`` outright.
    """
    if primary():
        return True
    if isinstance(mode, Rational) or alternative():
        return False
    return DEGENERATE


def origin_in_hull(cloud, mode=FLOAT):
    pts = _points(cloud)
    if not pts:
        raise ValueError("empty point cloud")
    return _witnessed(
        mode,
        lambda: feasible(_hull_lp(pts), mode),
        lambda: separation_margin(pts, mode) > _eps(mode),
    )


def in_common_halfspace(cloud, mode=FLOAT):
    """True iff some open half-space {x : <v, x> > 0} holds every point."""
    pts = _points(cloud)
    if not pts:
        raise ValueError("empty point cloud")
    return _witnessed(
        mode,
        lambda: separation_margin(pts, mode) > _eps(mode),
        lambda: feasible(_hull_lp(pts), mode),
    )


def homogeneous_positive_solution(A, mode=FLOAT):
    """Does Ax = 0 have a solution x >= 0, x != 0?"""
    return origin_in_hull(columns_of(A), mode)


def inhomogeneous_positive_solution(A, b, mode=FLOAT):
    """Does Ax = b have a solution x >= 0 (for b != 0)?"""
    rows = rows_of(A)
    m, n = len(rows), len(rows[0])
    b = list(b)
    if len(b) != m:
        raise ValueError(f"b has length {len(b)}, expected {m}")
    if all(v == 0 for v in b):
        raise ValueError("b must be nonzero; use homogeneous_positive_solution")

    def primal():
        lp = LinearProgram(n)
        for row, bi in zip(rows, b):
            lp.add(row, EQ, bi)
        return feasible(lp, mode)

    def farkas():
        # y with A^T y <= 0 and <b, y> > 0
        lp = LinearProgram(m, objective=b, lower=[-1] * m, upper=[1] * m)
        for j in range(n):
            lp.add([r[j] for r in rows], LE, 0)
        return solve(lp, mode).value > _eps(mode)

    return _witnessed(mode, primal, farkas)


def _positive_in_row_space(rows, mode):
    m, n = len(rows), len(rows[0])
    cols = [[r[j] for r in rows] for j in range(n)]
    lp = LinearProgram(m, lower=[-INF] * m)
    for c in cols:
        lp.add(c, GE, 0)
    lp.add([sum(c[i] for c in cols) for i in range(m)], EQ, 1)
    return feasible(lp, mode)


def _strictly_positive_in_row_space(rows, mode):
    m, n = len(rows), len(rows[0])
    lp = LinearProgram(m, lower=[-INF] * m)
    for j in range(n):
        lp.add([r[j] for r in rows], GE, 1)
    return feasible(lp, mode)


def _strictly_positive_in_null_space(rows, mode):
    # Ax = 0 with x >= 1 (strict positivity up to scaling)
    n = len(rows[0])
    lp = LinearProgram(n, lower=[1] * n)
    for r in rows:
        lp.add(r, EQ, 0)
    return feasible(lp, mode)


def subspace_contains_positive(A, strict=False, mode=FLOAT):
    """Does the row space of ``A`` contain a positive vector?

    Positive means nonnegative and nonzero; with ``strict=True`` every
    component must be positive.
    """
    rows = rows_of(A)
    if strict:
        return _witnessed(
            mode,
            lambda: _strictly_positive_in_row_space(rows, mode),
            lambda: feasible(_hull_lp(columns_of(rows)), mode),
        )
    return _witnessed(
        mode,
        lambda: _positive_in_row_space(rows, mode),
        lambda: _strictly_positive_in_null_space(rows, mode),
    )


def null_space_contains_positive(A, strict=False, mode=FLOAT):
    """Positive vector in {x : Ax = 0}, by direct LP on the null space."""
    rows = rows_of(A)
    if strict:
        return _witnessed(
            mode,
            lambda: _strictly_positive_in_null_space(rows, mode),
            lambda: _positive_in_row_space(rows, mode),
        )
    return homogeneous_positive_solution(rows, mode)


def positive_io(A, mode=FLOAT):
    """Is there x >= 0 with Ax > 0 componentwise (tested as Ax >= 1)?"""
    rows = rows_of(A)
    m, n = len(rows), len(rows[0])

    def primal():
        lp = LinearProgram(n)
        for r in rows:
            lp.add(r, GE, 1)
        return feasible(lp, mode)

    def ville():
        # y >= 0, sum y = 1, A^T y <= 0
        lp = LinearProgram(m)
        lp.add([1] * m, EQ, 1)
        for j in range(n):
            lp.add([r[j] for r in rows], LE, 0)
        return feasible(lp, mode)

    return _witnessed(mode, primal, ville)


SignVector = tuple


@dataclass
class RegionCensus:
    region_count: int
    feasible_signs: list
    generic: bool


def _flip(points, signs):
    return [[s * v for v in z] for s, z in zip(signs, points)]


def _check_size(n, allow_large):
    if n > MAX_REGION_POINTS and not allow_large:
        raise ValueError(
            f"{n} hyperplanes means 2**{n} LPs; pass allow_large=True to insist"
        )


def _separating_vector(points, mode, through=()):
    """A v with all <v, z_i> > 0 (and <v, h> = 0 for h in ``through``), or None."""
    margin, v = separation_witness(points, mode, through)
    if isinstance(mode, Rational):
        return v if margin > 0 else None
    if margin > mode.eps:
        return v
    if through:
        # no alternative LP is set up for the restricted problem
        return None
    if feasible(_hull_lp(points), mode):
        return None
    raise DegenerateVerdict("separation verdict within tolerance of the boundary")


def _dot(v, z):
    return sum(a * b for a, b in zip(v, z))


def _sign_vectors(points, mode, prune, symmetric):
    """Feasible sign vectors of the arrangement with normals ``points``."""
    n = len(points)
    heads = [(1,)] if symmetric else [(1,), (-1,)]
    found = []
    if not prune:
        for head in heads:
            for tail in product((1, -1), repeat=n - 1):
                eps = head + tail
                if _separating_vector(_flip(points, eps), mode) is not None:
                    found.append(eps)
    else:
        # Depth-first over sign prefixes. An infeasible prefix has no
        # feasible extension; a feasible one carries its separating vector v,
        # which already certifies the child whose new sign agrees with v.
        tol = _eps(mode)
        stack = [(h, [h[0] * x for x in points[0]]) for h in reversed(heads)]
        while stack:
            prefix, v = stack.pop()
            k = len(prefix)
            if k == n:
                found.append(prefix)
                continue
            z = points[k]
            children = []
            for s in (1, -1):
                child = prefix + (s,)
                if s * _dot(v, z) > tol:
                    children.append((child, v))
                else:
                    w = _separating_vector(_flip(points[: k + 1], child), mode)
                    if w is not None:
                        children.append((child, w))
            stack.extend(reversed(children))
    if symmetric:
        found += [tuple(-s for s in eps) for eps in found]
    return sorted(found)


def count_regions(normals, mode=FLOAT, *, allow_large=False, prune=True, symmetric=True):
    """Count regions of the central arrangement {<x, z_i> = 0} in R^d.

    Region <-> sign vector eps with all eps_i z_i in a common open
    half-space. ``prune`` skips extensions of infeasible prefixes and
    ``symmetric`` evaluates only eps_1 = +1, mirroring the rest through
    eps -> -eps; turning both off gives the plain 2**n sweep.
    """
    pts = _points(normals, mode)
    n, d = len(pts), len(pts[0])
    _check_size(n, allow_large)
    signs = _sign_vectors(pts, mode, prune, symmetric)
    return RegionCensus(len(signs), signs, len(signs) == exact.regions(n, d))


class SplitCounts(NamedTuple):
    tau1: int
    tau2: int
    generic: bool


def split_counts(normals, h, mode=FLOAT, *, allow_large=False):
    """Split the regions of an arrangement by whether a new hyperplane cuts them.

    ``tau1`` counts regions of the arrangement given by ``normals`` that
    meet the hyperplane {<x, h> = 0} in their interior, ``tau2`` the rest.
    ``generic`` is False when either arrangement (without or with ``h``)
    falls short of the general-position count, in which case the usual
    relations between tau1, tau2 and the region counts need not hold.
    """
    pts = _points(normals, mode)
    h = _points([h], mode)[0]
    n, d = len(pts) + 1, len(pts[0])
    if len(pts) < 1:
        raise ValueError("need at least one existing hyperplane")
    if len(h) != d:
        raise ValueError("h has the wrong dimension")
    _check_size(n, allow_large)
    before = count_regions(pts, mode)
    after = count_regions(pts + [h], mode)
    tau1 = sum(
        1
        for eps in before.feasible_signs
        if _separating_vector(_flip(pts, eps), mode, through=[h]) is not None
    )
    return SplitCounts(tau1, before.region_count - tau1, before.generic and after.generic)


def null_space_basis(A):
    """Exact basis of {x : Ax = 0} by reduced row echelon form over Fractions.

    Returned as a list of basis vectors (possibly empty).
    """
    R = [[Fraction(v) for v in r] for r in rows_of(A)]
    m, n = len(R), len(R[0])
    pivots = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, m) if R[i][col] != 0), None)
        if piv is None:
            continue
        R[row], R[piv] = R[piv], R[row]
        p = R[row][col]
        R[row] = [v / p for v in R[row]]
        for i in range(m):
            if i != row and R[i][col] != 0:
                f = R[i][col]
                R[i] = [a - f * b for a, b in zip(R[i], R[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        x = [Fraction(0)] * n
        x[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -R[i][free]
        basis.append(x)
    return basis
