"""Two-person zero-sum matrix games.

The column player pays the row player ``A[i][j]``. Games are solved with the
usual pair of linear programs, one per player; a game favors the row player
when its value is positive.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .geometry import DEGENERATE, DegenerateVerdict, rows_of
from .lp import EQ, FLOAT, GE, INF, LE, LinearProgram, Rational, solve

MAX_FLIP_SIZE = 16


@dataclass(frozen=True)
class GameSolution:
    value: object
    row_strategy: tuple
    col_strategy: tuple


@dataclass(frozen=True)
class SignFlip:
    row_signs: tuple
    col_signs: tuple

    def __post_init__(self):
        object.__setattr__(self, "row_signs", tuple(self.row_signs))
        object.__setattr__(self, "col_signs", tuple(self.col_signs))
        if any(s not in (1, -1) for s in self.row_signs + self.col_signs):
            raise ValueError("sign flips must be +1 or -1")


def _matrix(A, mode):
    rows = rows_of(A)
    if isinstance(mode, Rational):
        rows = [[Fraction(v) for v in r] for r in rows]
    return rows


def _row_program(rows):
    # variables p_1..p_m, v; maximize v
    m, n = len(rows), len(rows[0])
    lp = LinearProgram(m + 1, objective=[0] * m + [1], lower=[0] * m + [-INF])
    for j in range(n):
        lp.add([r[j] for r in rows] + [-1], GE, 0)
    lp.add([1] * m + [0], EQ, 1)
    return lp


def _col_program(rows):
    # variables q_1..q_n, w; minimize w
    m, n = len(rows), len(rows[0])
    lp = LinearProgram(n + 1, objective=[0] * n + [-1], lower=[0] * n + [-INF])
    for r in rows:
        lp.add(list(r) + [-1], LE, 0)
    lp.add([1] * n + [0], EQ, 1)
    return lp


def game_value(A, mode=FLOAT):
    rows = _matrix(A, mode)
    return solve(_row_program(rows), mode).value


def solve_game(A, mode=FLOAT) -> GameSolution:
    """Value and optimal mixed strategies of the game with payoff matrix ``A``.

    The row player's program gives the value and ``p*``; ``q*`` comes from
    the column player's program, solved separately.
    """
    rows = _matrix(A, mode)
    m = len(rows)
    row = solve(_row_program(rows), mode)
    col = solve(_col_program(rows), mode)
    return GameSolution(row.value, row.x[:m], col.x[:-1])


def certificate_gaps(A, sol: GameSolution):
    """``(min_j (p*A)_j - v, max_i (Aq*)_i - v)``; both are zero for an
    optimal solution. Plain matrix arithmetic, no LP involved."""
    rows = rows_of(A)
    m, n = len(rows), len(rows[0])
    p, q, v = sol.row_strategy, sol.col_strategy, sol.value
    if isinstance(v, Fraction):
        rows = [[Fraction(a) for a in r] for r in rows]
    guaranteed = min(sum(p[i] * rows[i][j] for i in range(m)) for j in range(n))
    conceded = max(sum(rows[i][j] * q[j] for j in range(n)) for i in range(m))
    return guaranteed - v, conceded - v


def row_player_favored(A, mode=FLOAT):
    v = game_value(A, mode)
    if isinstance(mode, Rational):
        return v > 0
    if v > mode.eps:
        return True
    if v < -mode.eps:
        return False
    return DEGENERATE


def apply_sign_flips(A, flip: SignFlip):
    """``C A D`` for the diagonal sign matrices C = diag(c), D = diag(d)."""
    rows = rows_of(A)
    c, d = flip.row_signs, flip.col_signs
    if len(c) != len(rows) or len(d) != len(rows[0]):
        raise ValueError(
            f"flip of shape {len(c)}x{len(d)} does not match a {len(rows)}x{len(rows[0])} matrix"
        )
    return [[ci * a * dj for a, dj in zip(r, d)] for ci, r in zip(c, rows)]


def _sign(v):
    return 1 if v > 0 else -1


def witness_signs(A, x) -> SignFlip:
    """Sign flip under which ``x`` (made positive) beats every column.

    With c_i = sign(x_i) and d_j = sign(<x, z_j>), the vector |x| has a
    positive inner product with each column of CAD, so CAD favors the row
    player.
    """
    rows = rows_of(A)
    x = list(x)
    if len(x) != len(rows):
        raise ValueError("x must have one entry per row")
    if any(v == 0 for v in x):
        raise ValueError("x has a zero coordinate")
    products = [sum(xi * r[j] for xi, r in zip(x, rows)) for j in range(len(rows[0]))]
    if any(v == 0 for v in products):
        raise ValueError("x is orthogonal to a column of A")
    return SignFlip([_sign(v) for v in x], [_sign(v) for v in products])


def favorable_flip_count(A, mode=FLOAT, *, symmetric=True, allow_large=False):
    """Number of sign flips (C, D) for which CAD has positive value.

    ``(C, D)`` and ``(-C, -D)`` give the same matrix, so by default only
    flips with c_1 = +1 are solved and the count doubled.
    """
    rows = _matrix(A, mode)
    m, n = len(rows), len(rows[0])
    if m + n > MAX_FLIP_SIZE and not allow_large:
        raise ValueError(f"2**{m + n} game solves; pass allow_large=True to insist")
    if any(v == 0 for r in rows for v in r):
        raise ValueError("favorable_flip_count needs a matrix without zero entries")
    heads = [(1,)] if symmetric else [(1,), (-1,)]
    count = 0
    for head in heads:
        for rest in product((1, -1), repeat=m - 1):
            for d in product((1, -1), repeat=n):
                flip = SignFlip(head + rest, d)
                verdict = row_player_favored(apply_sign_flips(rows, flip), mode)
                if verdict is DEGENERATE:
                    raise DegenerateVerdict(
                        f"game value within tolerance of 0 under flip {flip}; rerun in rational mode"
                    )
                count += verdict
    return 2 * count if symmetric else count
