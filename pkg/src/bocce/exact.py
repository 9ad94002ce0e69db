"""Closed-form region counts and hemisphere probabilities in exact arithmetic.

``regions(n, d)`` is the number of regions cut out of R^d by ``n`` hyperplanes
through the origin in general position, and ``p_exact(n, d) = regions(n, d) / 2**n``
is the probability that ``n`` independent origin-symmetric random points in R^d
all lie in some open half-space.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb


class ExactProbability(Fraction):
    """A reduced rational number in ``[0, 1]``."""

    def __new__(cls, numerator=0, denominator=None):
        self = super().__new__(cls, numerator, denominator)
        if not 0 <= self <= 1:
            raise ValueError(f"probability out of range: {self}")
        return self

    def __repr__(self):
        return f"ExactProbability({self.numerator}, {self.denominator})"


def binom(n: int, k: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def _check_nd(n: int, d: int) -> None:
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")


def regions(n: int, d: int) -> int:
    """Number of regions of ``n`` generic central hyperplanes in R^d."""
    _check_nd(n, d)
    return 2 * sum(binom(n - 1, j) for j in range(d))


@lru_cache(maxsize=None)
def _regions_rec(n: int, d: int) -> int:
    if n <= d:
        return 2**n
    if d == 2:
        return 2 * n
    if d == 1:
        # one dimension: every hyperplane is the origin itself
        return 2
    return _regions_rec(n - 1, d) + _regions_rec(n - 1, d - 1)


def regions_by_recurrence(n: int, d: int) -> int:
    """Same count as :func:`regions`, from r(n,d) = r(n-1,d) + r(n-1,d-1) only.

    Boundary values are r(n, 2) = 2n and r(n, d) = 2**n for n <= d, plus
    r(n, 1) = 2, which the recurrence reaches from d = 2 via r(n-1, 1).
    """
    _check_nd(n, d)
    return _regions_rec(n, d)


def p_exact(n: int, d: int) -> ExactProbability:
    """Probability that n random symmetric points in R^d lie in a half-space.

    Any integer ``d`` is accepted: the value is 0 for ``d <= 0`` and 1 for
    ``d >= n``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if d <= 0:
        return ExactProbability(0)
    return ExactProbability(regions(n, d), 2**n)


class Kind(enum.Enum):
    BOCCE = "bocce"
    BOCCE_FIXED_FIRST = "bocce-fixed-first"
    HOMOGENEOUS_POSITIVE = "homogeneous"
    INHOMOGENEOUS_POSITIVE = "inhomogeneous"
    SUBSPACE_POSITIVE = "subspace"
    GAME_ROW_FAVOR = "game"
    POSITIVE_IO = "positive-io"


# dimension parameter names per kind, in the order they are written
_DIMS = {
    Kind.BOCCE: ("n", "d"),
    Kind.BOCCE_FIXED_FIRST: ("n", "d"),
    Kind.HOMOGENEOUS_POSITIVE: ("m", "n"),
    Kind.INHOMOGENEOUS_POSITIVE: ("m", "n"),
    Kind.SUBSPACE_POSITIVE: ("n", "m"),
    Kind.GAME_ROW_FAVOR: ("m", "n"),
    Kind.POSITIVE_IO: ("m", "n"),
}


@dataclass(frozen=True)
class Scenario:
    """A random experiment together with its integer size parameters.

    Bocce kinds use ``n`` points in dimension ``d``; the matrix kinds use an
    ``m x n`` matrix (``d`` unused).
    """

    kind: Kind
    n: int
    d: int = 0
    m: int = 0

    def __post_init__(self):
        for name in _DIMS[self.kind]:
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{self.kind.value}: {name} must be a positive integer, got {value!r}")
        if self.kind in (Kind.HOMOGENEOUS_POSITIVE, Kind.INHOMOGENEOUS_POSITIVE) and not self.n > self.m:
            raise ValueError(f"{self.kind.value}: need n > m, got m={self.m}, n={self.n}")

    @classmethod
    def bocce(cls, n, d):
        return cls(Kind.BOCCE, n=n, d=d)

    @classmethod
    def bocce_fixed_first(cls, n, d):
        return cls(Kind.BOCCE_FIXED_FIRST, n=n, d=d)

    @classmethod
    def homogeneous(cls, m, n):
        return cls(Kind.HOMOGENEOUS_POSITIVE, n=n, m=m)

    @classmethod
    def inhomogeneous(cls, m, n):
        return cls(Kind.INHOMOGENEOUS_POSITIVE, n=n, m=m)

    @classmethod
    def subspace(cls, n, m):
        return cls(Kind.SUBSPACE_POSITIVE, n=n, m=m)

    @classmethod
    def game(cls, m, n):
        return cls(Kind.GAME_ROW_FAVOR, n=n, m=m)

    @classmethod
    def positive_io(cls, m, n):
        return cls(Kind.POSITIVE_IO, n=n, m=m)

    @classmethod
    def from_dims(cls, kind: Kind, **dims):
        extra = set(dims) - set(_DIMS[kind])
        if extra:
            raise ValueError(f"{kind.value}: unexpected parameters {sorted(extra)}")
        missing = set(_DIMS[kind]) - set(dims)
        if missing:
            raise ValueError(f"{kind.value}: missing parameters {sorted(missing)}")
        return cls(kind, **dims)

    @property
    def dims(self) -> dict:
        return {name: getattr(self, name) for name in _DIMS[self.kind]}

    def __str__(self):
        args = ", ".join(f"{k}={v}" for k, v in self.dims.items())
        return f"{self.kind.value}({args})"


def scenario_probability(s: Scenario) -> ExactProbability:
    k, n, d, m = s.kind, s.n, s.d, s.m
    if k in (Kind.BOCCE, Kind.BOCCE_FIXED_FIRST):
        return p_exact(n, d)
    if k is Kind.HOMOGENEOUS_POSITIVE:
        return p_exact(n, n - m)
    if k is Kind.INHOMOGENEOUS_POSITIVE:
        return p_exact(n + 1, n + 1 - m)
    if k is Kind.SUBSPACE_POSITIVE:
        return p_exact(n, m)
    if k is Kind.GAME_ROW_FAVOR:
        return p_exact(m + n, m)
    if k is Kind.POSITIVE_IO:
        return p_exact(n + m, n)
    raise ValueError(f"unknown scenario kind {k!r}")


def step_distribution(n: int) -> list[ExactProbability]:
    """Law of the least m for which the span of m random vectors in R^n
    contains a positive vector; entry ``m - 1`` is C(n-1, m-1) / 2**(n-1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return [ExactProbability(binom(n - 1, m - 1), 2 ** (n - 1)) for m in range(1, n + 1)]
