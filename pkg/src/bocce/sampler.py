"""Reproducible origin-symmetric random points.

Each Monte Carlo trial gets its own generator, derived from
``(master_seed, trial_index)`` by hashing rather than by advancing a shared
stream, so a trial's points do not depend on which worker ran it or in what
order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class StdNormal:
    def sample(self, rng, d, size=None):
        return rng.standard_normal(d if size is None else (size, d))

    def __str__(self):
        return "normal"


@dataclass(frozen=True)
class UniformCube:
    c: float = 1.0

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError("cube half-width must be positive")

    def sample(self, rng, d, size=None):
        return rng.uniform(-self.c, self.c, d if size is None else (size, d))

    def __str__(self):
        return f"cube:{self.c:g}"


@dataclass(frozen=True)
class UniformSphere:
    def sample(self, rng, d, size=None):
        z = rng.standard_normal(d if size is None else (size, d))
        norm = np.linalg.norm(z, axis=-1, keepdims=size is not None)
        # a zero draw gives inf/nan here and is rejected by the caller
        with np.errstate(divide="ignore", invalid="ignore"):
            return z / norm

    def __str__(self):
        return "sphere"


@dataclass(frozen=True)
class FixedPoint:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if not self.coords or all(v == 0 for v in self.coords):
            raise ValueError("a fixed point must be a nonzero vector")

    def sample(self, rng, d, size=None):
        if len(self.coords) != d:
            raise ValueError(f"fixed point has dimension {len(self.coords)}, expected {d}")
        return np.array(self.coords, dtype=float)

    def __str__(self):
        return "fixed:" + ",".join(f"{v:g}" for v in self.coords)


DistributionSpec = Union[StdNormal, UniformCube, UniformSphere, FixedPoint]


def parse_distribution(text: str) -> DistributionSpec:
    """Parse ``normal``, ``cube:<c>``, ``sphere`` or ``fixed:<x1,...,xd>``."""
    kind, _, arg = text.strip().partition(":")
    kind = kind.lower()
    if kind == "normal" and not arg:
        return StdNormal()
    if kind == "sphere" and not arg:
        return UniformSphere()
    if kind == "cube":
        return UniformCube(float(arg) if arg else 1.0)
    if kind == "fixed" and arg:
        return FixedPoint(tuple(float(v) for v in arg.split(",")))
    raise ValueError(f"unknown distribution {text!r}")


@dataclass(frozen=True)
class CloudSpec:
    """Per-point distributions for ``n = len(dists)`` points in R^d."""

    d: int
    dists: tuple

    def __post_init__(self):
        object.__setattr__(self, "dists", tuple(self.dists))
        if self.d < 1 or not self.dists:
            raise ValueError("a cloud needs d >= 1 and at least one point")
        for dist in self.dists:
            if isinstance(dist, FixedPoint) and len(dist.coords) != self.d:
                raise ValueError("fixed point dimension does not match d")

    @classmethod
    def iid(cls, n: int, d: int, dist: DistributionSpec = StdNormal()):
        return cls(d, (dist,) * n)

    @property
    def n(self):
        return len(self.dists)


@dataclass(frozen=True)
class PointCloud:
    d: int
    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        for p in pts:
            if len(p) != self.d:
                raise ValueError(f"point {p} does not have dimension {self.d}")
            if all(v == 0 for v in p):
                raise ValueError("point clouds may not contain the origin")

    @classmethod
    def of(cls, points: Sequence[Sequence]):
        points = [tuple(p) for p in points]
        return cls(len(points[0]), points)

    @property
    def n(self):
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]


def trial_rng(master_seed: int, trial_index: int, attempt: int = 0) -> np.random.Generator:
    """Independent generator for one trial (and one redraw ``attempt``).

    Seed and indices are mixed by numpy's ``SeedSequence`` hash; the stream
    for a given triple never depends on any other trial.
    """
    if trial_index < 0 or attempt < 0:
        raise ValueError("trial index and attempt must be nonnegative")
    key = (trial_index,) if attempt == 0 else (trial_index, attempt)
    seq = np.random.SeedSequence(master_seed & MASK64, spawn_key=key)
    return np.random.Generator(np.random.PCG64(seq))


def _usable(z) -> bool:
    return bool(np.all(np.isfinite(z))) and bool(np.any(z != 0))


def sample_cloud(spec: CloudSpec, rng: np.random.Generator) -> PointCloud:
    d = spec.d
    first = spec.dists[0]
    if not isinstance(first, FixedPoint) and all(x == first for x in spec.dists):
        block = first.sample(rng, d, size=spec.n)
        if np.isfinite(block).all() and (block != 0).any(axis=1).all():
            return PointCloud(d, block.tolist())
        # rare: redraw just the offending rows, in order
        rows = []
        for z in block:
            while not _usable(z):
                z = first.sample(rng, d)
            rows.append(z.tolist())
        return PointCloud(d, rows)
    rows = []
    for dist in spec.dists:
        if isinstance(dist, FixedPoint):
            rows.append(list(dist.coords))
            continue
        z = dist.sample(rng, d)
        while not _usable(z):
            z = dist.sample(rng, d)
        rows.append(z.tolist())
    return PointCloud(d, rows)
