from fractions import Fraction

import numpy as np
import pytest

from bocce.exact import regions
from bocce.geometry import DEGENERATE, DegenerateVerdict, positive_io
from bocce.games import (
    SignFlip,
    apply_sign_flips,
    certificate_gaps,
    favorable_flip_count,
    game_value,
    row_player_favored,
    solve_game,
    witness_signs,
)
from bocce.lp import FLOAT, RATIONAL

MODES = [RATIONAL, FLOAT]


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize(
    "A,value",
    [([[1]], 1), ([[1, -1], [-1, 1]], 0), ([[2, -1], [-1, 1]], Fraction(1, 5)), ([[1, 2, 3]], 1),
     ([[3], [1], [-2]], 3)],
)
def test_game_value_examples(mode, A, value):
    assert game_value(A, mode) == pytest.approx(value, abs=1e-12)


def test_matching_pennies_strategies():
    sol = solve_game([[1, -1], [-1, 1]], RATIONAL)
    assert sol.value == 0
    assert sol.row_strategy == (Fraction(1, 2), Fraction(1, 2))
    assert sol.col_strategy == (Fraction(1, 2), Fraction(1, 2))


def test_closed_form_2x2():
    sol = solve_game([[2, -1], [-1, 1]], RATIONAL)
    assert sol.row_strategy == (Fraction(2, 5), Fraction(3, 5))
    assert sol.col_strategy == (Fraction(2, 5), Fraction(3, 5))


@pytest.mark.parametrize("seed", range(60))
def test_value_certificates(seed):
    rng = np.random.default_rng(seed)
    m, n = rng.integers(1, 6, size=2)
    A = rng.standard_normal((m, n)).tolist()
    assert certificate_gaps(A, solve_game(A, RATIONAL)) == (0, 0)
    lo, hi = certificate_gaps(A, solve_game(A, FLOAT))
    assert abs(lo) <= 10 * FLOAT.eps and abs(hi) <= 10 * FLOAT.eps


@pytest.mark.parametrize("seed", range(30))
def test_no_strategy_beats_the_value(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((3, 4))
    v = game_value(A.tolist(), RATIONAL)
    for p in rng.dirichlet(np.ones(3), size=50):
        assert (p @ A).min() <= float(v) + 1e-12


@pytest.mark.parametrize(
    "A,want", [([[1]], True), ([[-1, -2]], False), ([[1, -1], [-1, 1]], False)]
)
def test_row_player_favored_rational(A, want):
    assert row_player_favored(A, RATIONAL) is want


def test_tie_is_degenerate_in_float_mode():
    assert row_player_favored([[1, -1], [-1, 1]], FLOAT) is DEGENERATE
    assert row_player_favored([[1]], FLOAT) is True


@pytest.mark.parametrize("seed", range(50))
def test_favored_iff_positive_vector_beats_every_column(seed):
    rng = np.random.default_rng(seed)
    m, n = rng.integers(1, 5, size=2)
    A = rng.standard_normal((m, n)).tolist()
    At = [list(c) for c in zip(*A)]
    assert row_player_favored(A, RATIONAL) == positive_io(At, RATIONAL)


def test_apply_sign_flips():
    A = [[1, 2], [3, 4]]
    assert apply_sign_flips(A, SignFlip((1, 1), (1, 1))) == A
    assert apply_sign_flips([[5]], SignFlip((-1,), (-1,))) == [[5]]
    assert apply_sign_flips(A, SignFlip((1, -1), (1, 1))) == [[1, 2], [-3, -4]]
    with pytest.raises(ValueError):
        apply_sign_flips(A, SignFlip((1,), (1, 1)))
    with pytest.raises(ValueError):
        SignFlip((2,), (1,))


def test_witness_signs():
    flip = witness_signs([[-1]], [1])
    assert flip == SignFlip((1,), (-1,))
    assert apply_sign_flips([[-1]], flip) == [[1]]
    flip = witness_signs([[1, -1]], [1])
    assert apply_sign_flips([[1, -1]], flip) == [[1, 1]]
    assert game_value([[1, 1]], RATIONAL) == 1
    with pytest.raises(ValueError):
        witness_signs([[1, 2], [3, 4]], [0, 1])


@pytest.mark.parametrize("seed", range(20))
def test_witness_flip_favors_row(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((3, 4)).tolist()
    x = rng.standard_normal(3).tolist()
    assert row_player_favored(apply_sign_flips(A, witness_signs(A, x)), RATIONAL)


@pytest.mark.parametrize("a", [3, -0.5])
def test_flip_count_1x1(a):
    assert favorable_flip_count([[a]], RATIONAL) == 2 == regions(2, 1)


@pytest.mark.parametrize("shape", [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)])
@pytest.mark.parametrize("seed", range(3))
def test_flip_count_matches_region_count(shape, seed):
    rng = np.random.default_rng(seed)
    m, n = shape
    A = rng.standard_normal((m, n)).tolist()
    assert favorable_flip_count(A, RATIONAL) == regions(m + n, m)
    assert favorable_flip_count(A, FLOAT, symmetric=False) == regions(m + n, m)


def test_flip_count_rejects_zero_entries_and_ties():
    with pytest.raises(ValueError):
        favorable_flip_count([[1, 0]])
    with pytest.raises(DegenerateVerdict):
        favorable_flip_count([[1, -1], [-1, 1]], FLOAT)
    with pytest.raises(ValueError):
        favorable_flip_count(np.ones((8, 9)).tolist())


def test_flip_invariance_is_distributional():
    # the favored rate of A and of C A D agree over an ensemble (4 sigma)
    rng = np.random.default_rng(2024)
    flip = SignFlip((1, -1), (-1, 1, 1, -1))
    trials = 10_000
    plain = flipped = 0
    for _ in range(trials):
        A = rng.standard_normal((2, 4)).tolist()
        plain += row_player_favored(A, FLOAT)
        flipped += row_player_favored(apply_sign_flips(A, flip), FLOAT)
    p = 3 / 16
    sigma = np.sqrt(2 * p * (1 - p) / trials)
    assert abs(plain - flipped) / trials <= 4 * sigma
