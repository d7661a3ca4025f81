"""Seeded, forkable randomness and the truncated exponential law.

Every stream is a PCG64 generator seeded from ``SeedSequence(seed,
spawn_key=labels)``, so a stream is fully determined by the root seed and
its label path, independent of which other streams were drawn from.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np


def _label_key(label) -> int:
    if isinstance(label, (int, np.integer)):
        if label < 0:
            raise ValueError("integer labels must be non-negative")
        return int(label)
    digest = hashlib.blake2b(str(label).encode(), digest_size=8).digest()
    # keep tags disjoint from small integer labels
    return int.from_bytes(digest, "little") | (1 << 63)


class Rng:
    """A labelled substream of a root seed."""

    def __init__(self, seed: int, labels: tuple = ()):
        self.seed = int(seed)
        self.labels = tuple(labels)
        ss = np.random.SeedSequence(self.seed, spawn_key=tuple(_label_key(x) for x in self.labels))
        self._gen = np.random.Generator(np.random.PCG64(ss))

    def fork(self, *labels) -> "Rng":
        """Independent child stream; forking never advances this stream."""
        return Rng(self.seed, self.labels + labels)

    def uniform(self, size=None):
        """Uniform draws in ``[0, 1)``."""
        return self._gen.random(size)

    def integers(self, low, high=None, size=None):
        return self._gen.integers(low, high, size=size)

    def permutation(self, n):
        return self._gen.permutation(n)

    @property
    def generator(self) -> np.random.Generator:
        return self._gen

    def describe(self) -> dict:
        return {"seed": self.seed, "labels": [x if isinstance(x, int) else str(x) for x in self.labels]}

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed}, labels={self.labels})"


@dataclass(frozen=True)
class TexpParams:
    """Exponential law with rate ``lam`` conditioned on ``[theta1, theta2]``."""

    lam: float
    theta1: float = 0.0
    theta2: float = 1.0

    def __post_init__(self):
        if not self.lam > 0 or not math.isfinite(self.lam):
            raise ValueError(f"rate must be positive and finite, got {self.lam}")
        if not 0 <= self.theta1 < self.theta2:
            raise ValueError(f"need 0 <= theta1 < theta2, got [{self.theta1}, {self.theta2}]")


def texp_density(p: TexpParams, y: float) -> float:
    if y < p.theta1 or y > p.theta2:
        return 0.0
    z = math.exp(-p.lam * p.theta1) - math.exp(-p.lam * p.theta2)
    return p.lam * math.exp(-p.lam * y) / z


def texp_cdf(p: TexpParams, y):
    y = np.clip(np.asarray(y, dtype=float), p.theta1, p.theta2)
    a = math.exp(-p.lam * p.theta1)
    return (a - np.exp(-p.lam * y)) / (a - math.exp(-p.lam * p.theta2))


def texp_quantile(p: TexpParams, u):
    """Inverse CDF; maps ``u`` in ``[0, 1]`` onto ``[theta1, theta2]``."""
    a = math.exp(-p.lam * p.theta1)
    b = math.exp(-p.lam * p.theta2)
    y = -np.log(a - np.asarray(u, dtype=float) * (a - b)) / p.lam
    return np.clip(y, p.theta1, p.theta2)


def texp_sample(p: TexpParams, rng: Rng, size=None):
    """One uniform draw per sample, pushed through the inverse CDF."""
    y = texp_quantile(p, rng.uniform(size))
    return float(y) if size is None else y
