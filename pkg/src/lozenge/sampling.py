"""Random admissible specs for sweeps and property tests."""

from __future__ import annotations

import random

from .regions import LSpec, SnowflakeSpec, SpecError, build_snowflake, flip_spec

CLASSES = ("any", "r", "v", "rv")


def random_labels(rng: random.Random, n: int, p: float = 0.35) -> frozenset[int]:
    return frozenset(k for k in range(1, n + 1) if rng.random() < p)


def _draw(rng: random.Random, n: int, x: int, cls: str) -> SnowflakeSpec:
    rl = lambda: random_labels(rng, n)
    if cls == "r":
        a1, a2, b1, b2 = rl(), rl(), rl(), rl()
        return SnowflakeSpec(n, x, (a1, a2) * 3, (b1, b2) * 3)
    if cls == "v":
        A = [rl() for _ in range(6)]
        B = [A[0], A[5], A[4], A[3], A[2], A[1]]
        return SnowflakeSpec(n, x, A, B)
    if cls == "rv":
        s1, s2 = rl(), rl()
        return SnowflakeSpec(n, x, (s1, s2) * 3, (s1, s2) * 3)
    return SnowflakeSpec(n, x, [rl() for _ in range(6)], [rl() for _ in range(6)])


def random_snowflake(
    rng: random.Random,
    n_max: int,
    x_max: int,
    cls: str = "any",
    balanced: bool = True,
    n_min: int = 1,
) -> SnowflakeSpec:
    """A flippable spec whose regions build without collisions.

    ``balanced`` rejects specs whose hole counts already rule out a tiling.
    """
    if cls not in CLASSES:
        raise ValueError(f"class must be one of {CLASSES}")
    while True:
        n = rng.randint(n_min, n_max)
        x = rng.randint(0, x_max)
        try:
            s = _draw(rng, n, x, cls)
            build_snowflake(s)
            build_snowflake(flip_spec(s))
        except SpecError:
            continue
        if balanced and s.odd_count != s.even_count:
            continue
        return s


def random_lspec(rng: random.Random, n_max: int, x_max: int, balanced: bool = True) -> LSpec:
    """An LSpec meeting the lemma hypothesis whose plain and barred regions both build."""
    while True:
        n = rng.randint(1, n_max)
        x = rng.randint(0, x_max)
        s = LSpec(n, x, *(random_labels(rng, n, 0.4) for _ in range(4)))
        if not s.lemma_hypothesis():
            continue
        if s.collides() or s.bar().collides():
            continue
        if balanced and len(s.P) + len(s.Q) != len(s.R) + len(s.S):
            continue
        return s
