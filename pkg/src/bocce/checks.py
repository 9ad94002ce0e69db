"""End-to-end consistency checks, shared by ``bocce verify`` and the
acceptance tests.

Each check returns a :class:`CheckResult`; sizes are parameters so the CLI
can run a quick pass while the test suite runs the full one.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exact, games, geometry, montecarlo
from .exact import Scenario, p_exact, regions, regions_by_recurrence
from .lp import FLOAT, RATIONAL

# published three-decimal values of p(n, 3) for n = 1..13
TABLE1_PRINTED = (
    "1.0", "1.0", "1.0", ".875", ".686", ".500", ".344",
    ".227", ".145", ".090", ".055", ".033", ".019",
)
TABLE1_KNOWN_MISPRINT = 5


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(name, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    return CheckResult(name, ok, detail, time.perf_counter() - t0)


def random_rational(rng, num=10**6, den=10**3) -> Fraction:
    while True:
        a = int(rng.integers(-num, num + 1))
        if a:
            return Fraction(a, int(rng.integers(1, den + 1)))


def random_rational_matrix(rng, m, n):
    return [[random_rational(rng) for _ in range(n)] for _ in range(m)]


def round_half_up(x: Fraction, places: int) -> Fraction:
    scale = 10**places
    return Fraction(int(x * scale + Fraction(1, 2)), scale)


# 1 -----------------------------------------------------------------------


def exact_formulas(nmax=40, dlow=-5, dhigh=45, special_max=30):
    def run():
        bad = []
        for n in range(1, nmax + 1):
            for d in range(1, nmax + 1):
                if regions(n, d) != regions_by_recurrence(n, d):
                    bad.append(f"r({n},{d})")
            for d in range(dlow, dhigh + 1):
                if p_exact(n, d) + p_exact(n, n - d) != 1:
                    bad.append(f"complement({n},{d})")
        for n in range(1, special_max + 1):
            if p_exact(n, 1) != Fraction(1, 2 ** (n - 1)):
                bad.append(f"p({n},1)")
            if p_exact(n, 2) != Fraction(n, 2 ** (n - 1)):
                bad.append(f"p({n},2)")
            if p_exact(n + 1, n) != 1 - Fraction(1, 2**n):
                bad.append(f"p({n + 1},{n})")
        return not bad, "all identities exact" if not bad else f"failures: {bad[:5]}"

    return _timed("exact formula suite", run)


# 2 -----------------------------------------------------------------------


def table1_rows():
    """``(n, exact, rounded, printed, note)`` for each n in the p(n, 3) table."""
    rows = []
    for n, printed in enumerate(TABLE1_PRINTED, start=1):
        p = p_exact(n, 3)
        rounded = round_half_up(p, 3)
        note = ""
        if round_half_up(Fraction(printed), 3) != rounded:
            note = f"printed {printed}; exact {p} = {float(p)}"
        rows.append((n, p, rounded, printed, note))
    return rows


def table1_reproduction():
    def run():
        rows = table1_rows()
        mismatched = [n for n, *_, note in rows if note]
        ok = mismatched == [TABLE1_KNOWN_MISPRINT] and p_exact(5, 3) == Fraction(11, 16)
        return ok, f"{len(rows) - len(mismatched)}/13 rows match; flagged n={mismatched}"

    return _timed("p(n,3) table reproduction", run)


# 3 -----------------------------------------------------------------------


def region_census(configs=50, n_range=range(2, 11), d_range=range(2, 5), seed=3):
    def run():
        rng = np.random.default_rng(seed)
        misses = []
        total = 0
        for n in n_range:
            for d in d_range:
                for _ in range(configs):
                    census = geometry.count_regions(rng.standard_normal((n, d)).tolist(), RATIONAL)
                    total += 1
                    if census.region_count != regions(n, d):
                        misses.append((n, d, census.region_count))
        flat = geometry.count_regions([(1, 0, 0), (0, 1, 0), (1, 1, 0)], RATIONAL)
        ok = not misses and flat.region_count == 6 and not flat.generic
        detail = f"{total} random arrangements, {len(misses)} misses; coplanar triple -> {flat.region_count} regions"
        return ok, detail

    return _timed("region-count oracle agreement", run)


# 4 -----------------------------------------------------------------------


def split_recurrence(configs=20, max_n=8, dims=(2, 3), seed=4):
    def run():
        rng = np.random.default_rng(seed)
        bad = []
        for k in range(configs):
            n = int(rng.integers(2, max_n + 1))
            d = dims[k % len(dims)]
            pts = rng.standard_normal((n, d)).tolist()
            t1, t2, generic = geometry.split_counts(pts[:-1], pts[-1], RATIONAL)
            want = (regions(n - 1, d), regions(n, d), regions(n - 1, d - 1))
            if not generic or (t1 + t2, 2 * t1 + t2, t1) != want:
                bad.append((n, d, t1, t2))
        return not bad, f"{configs} configurations, failures: {bad}"

    return _timed("recurrence via split counts", run)


# 5 -----------------------------------------------------------------------


def gordan_exclusivity(count=1000, shapes=((2, 5), (3, 5), (3, 7)), seed=5):
    def run():
        rng = np.random.default_rng(seed)
        bad = 0
        for m, n in shapes:
            for _ in range(count):
                A = random_rational_matrix(rng, m, n)
                row = geometry.subspace_contains_positive(A, strict=False, mode=RATIONAL)
                basis = geometry.null_space_basis(A)
                null = bool(basis) and geometry.subspace_contains_positive(
                    basis, strict=False, mode=RATIONAL
                )
                bad += row == null
        return bad == 0, f"{count} matrices per shape {list(shapes)}, {bad} violations"

    return _timed("Gordan exclusivity", run)


# 6 -----------------------------------------------------------------------


def hull_duality(count=1000, max_n=8, max_d=4, seed=6):
    def run():
        rng = np.random.default_rng(seed)
        bad = 0
        for _ in range(count):
            n = int(rng.integers(1, max_n + 1))
            d = int(rng.integers(1, max_d + 1))
            cloud = random_rational_matrix(rng, n, d)
            inside = geometry.origin_in_hull(cloud, RATIONAL)
            apart = geometry.in_common_halfspace(cloud, RATIONAL)
            bad += inside == apart
        return bad == 0, f"{count} clouds, {bad} violations"

    return _timed("hull/separation duality", run)


# 7 -----------------------------------------------------------------------


def grid_search_value_2x2(A, steps=10_000):
    """max over p in [0, 1] of min_j (p, 1-p) A e_j, by a coarse grid plus a
    fine grid around the best coarse point."""
    A = np.asarray(A, dtype=float)

    def best(lo, hi):
        p = np.linspace(lo, hi, steps + 1)
        payoff = np.minimum(p * A[0, 0] + (1 - p) * A[1, 0], p * A[0, 1] + (1 - p) * A[1, 1])
        i = int(np.argmax(payoff))
        return p[i], payoff[i]

    p0, _ = best(0.0, 1.0)
    h = 1.0 / steps
    return best(max(0.0, p0 - h), min(1.0, p0 + h))[1]


def closed_form_value_2x2(A):
    """Value of a 2x2 game: the saddle value if one exists, else
    (ad - bc) / (a + d - b - c)."""
    (a, b), (c, d) = A
    lower = max(min(a, b), min(c, d))
    upper = min(max(a, c), max(b, d))
    if lower == upper:
        return lower
    return (a * d - b * c) / (a + d - b - c)


def game_certificates(count=1000, max_m=5, max_n=5, float_tol=1e-8, grid_games=200, seed=7):
    def run():
        rng = np.random.default_rng(seed)
        worst_float = 0.0
        exact_bad = 0
        for _ in range(count):
            m = int(rng.integers(1, max_m + 1))
            n = int(rng.integers(1, max_n + 1))
            A = rng.standard_normal((m, n)).tolist()
            gaps = games.certificate_gaps(A, games.solve_game(A, RATIONAL))
            exact_bad += gaps != (0, 0)
            gaps = games.certificate_gaps(A, games.solve_game(A, FLOAT))
            worst_float = max(worst_float, abs(gaps[0]), abs(gaps[1]))
        grid_worst = 0.0
        for _ in range(grid_games):
            A = rng.standard_normal((2, 2)).tolist()
            v = games.solve_game(A, RATIONAL).value
            grid_worst = max(
                grid_worst,
                abs(float(v) - grid_search_value_2x2(A)),
                abs(float(v) - closed_form_value_2x2(A)),
            )
        ok = exact_bad == 0 and worst_float <= float_tol and grid_worst <= 1e-6
        detail = (
            f"{count} games: {exact_bad} inexact rational certificates, "
            f"max float gap {worst_float:.2e}; 2x2 grid/closed-form max diff {grid_worst:.2e}"
        )
        return ok, detail

    return _timed("game certificate suite", run)


# 8 -----------------------------------------------------------------------


def flip_counts(per_shape=25, shapes=((1, 1), (1, 2), (2, 2), (2, 3), (3, 3)), seed=8):
    def run():
        rng = np.random.default_rng(seed)
        bad = []
        for m, n in shapes:
            want = regions(m + n, m)
            for _ in range(per_shape):
                A = rng.standard_normal((m, n)).tolist()
                got = games.favorable_flip_count(A, RATIONAL)
                if got != want:
                    bad.append((m, n, got, want))
        return not bad, f"{per_shape} matrices per shape {list(shapes)}, misses: {bad}"

    return _timed("exhaustive flip count", run)


# 9 -----------------------------------------------------------------------


def monte_carlo_cells():
    """``(label, config kwargs)`` for the Monte Carlo comparison grid."""
    S = Scenario
    cells = [("bocce(8,2)", dict(scenario=S.bocce(8, 2)))]
    cells += [(f"bocce({n},3)", dict(scenario=S.bocce(n, 3))) for n in (4, 6, 8, 13)]
    cells += [
        ("bocce-fixed-first(8,2)", dict(scenario=S.bocce_fixed_first(8, 2))),
        ("homogeneous(1,2)", dict(scenario=S.homogeneous(1, 2))),
        ("inhomogeneous(1,2) b=e1", dict(scenario=S.inhomogeneous(1, 2))),
        ("inhomogeneous(1,2) b=random", dict(scenario=S.inhomogeneous(1, 2), random_b=True)),
    ]
    cells += [(f"subspace(10,{m})", dict(scenario=S.subspace(10, m))) for m in (3, 5, 7)]
    cells += [(f"game({m},{n})", dict(scenario=S.game(m, n))) for m, n in ((1, 3), (2, 2), (2, 4))]
    cells.append(("positive-io(1,3)", dict(scenario=S.positive_io(1, 3))))
    return cells


def monte_carlo_grid(trials=100_000, seed=2024, level=0.999, workers=1, report=None):
    def run():
        failed = []
        lines = []
        for label, kw in monte_carlo_cells():
            cfg = montecarlo.ExperimentConfig(
                trials=trials, master_seed=seed, confidence_level=level, **kw
            )
            reports = montecarlo.estimate_with_retry(cfg, workers)
            last = reports[-1]
            retry = " (after reseed)" if len(reports) > 1 else ""
            lines.append(
                f"{label}: {last.estimate:.5f} vs {last.exact_reference} "
                f"[{last.ci_low:.5f}, {last.ci_high:.5f}]{retry}"
            )
            if report is not None:
                report.extend(reports)
            if not last.covers_exact:
                failed.append(label)
        detail = f"{len(lines)} cells at {trials} trials; failed: {failed}"
        return not failed, detail + "\n    " + "\n    ".join(lines)

    return _timed("Monte Carlo vs exact grid", run)


# 10 ----------------------------------------------------------------------


def least_m_fit(ns=(3, 5, 8), trials=10_000, seed=2024, alpha=1e-3, workers=1):
    def run():
        parts = []
        failed = []
        for n in ns:
            res = montecarlo.least_m_histogram(n, trials, seed, workers=workers)
            if res.p_value <= alpha:
                res = montecarlo.least_m_histogram(n, trials, seed + 1, workers=workers)
            parts.append(f"n={n}: chi2={res.chi2:.2f} p={res.p_value:.3f}")
            if res.p_value <= alpha:
                failed.append(n)
        return not failed, "; ".join(parts)

    return _timed("least-m distribution", run)


# 11 ----------------------------------------------------------------------


def reproducibility(trials=2000, seed=11, workers=2):
    def run():
        diffs = []
        for label, kw in monte_carlo_cells():
            cfg = montecarlo.ExperimentConfig(trials=trials, master_seed=seed, **kw)
            a = montecarlo.estimate(cfg).to_json()
            b = montecarlo.estimate(cfg).to_json()
            c = montecarlo.estimate(cfg, workers=workers).to_json()
            if not a == b == c:
                diffs.append(label)
        for n in (3, 5):
            a = montecarlo.least_m_histogram(n, trials // 4, seed).to_dict()
            b = montecarlo.least_m_histogram(n, trials // 4, seed, workers=workers).to_dict()
            if a != b:
                diffs.append(f"least-m({n})")
        return not diffs, f"serial x2 and {workers}-worker runs byte-identical; differing: {diffs}"

    return _timed("reproducibility", run)


def quick_suite(seed=2024):
    """Reduced sizes; runs in well under a minute."""
    return [
        exact_formulas(),
        table1_reproduction(),
        region_census(configs=2, n_range=range(2, 8)),
        split_recurrence(configs=5),
        gordan_exclusivity(count=30),
        hull_duality(count=100),
        game_certificates(count=100, grid_games=20),
        flip_counts(per_shape=2),
        monte_carlo_grid(trials=3000, seed=seed),
        least_m_fit(trials=1000, seed=seed),
        reproducibility(trials=200, workers=2),
    ]


def full_suite(seed=2024, workers=1):
    return [
        exact_formulas(),
        table1_reproduction(),
        region_census(),
        split_recurrence(),
        gordan_exclusivity(),
        hull_duality(),
        game_certificates(),
        flip_counts(),
        monte_carlo_grid(seed=seed, workers=workers),
        least_m_fit(seed=seed, workers=workers),
        reproducibility(),
    ]
