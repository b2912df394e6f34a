"""Random family generators for tests and statistical spot checks.

Every generator takes an explicit random.Random so callers own the seed
and runs stay reproducible.
"""

from __future__ import annotations

import random

from .families import Family, check_ground
from .sperner import TraceSpernerState


def random_subfamily(rng: random.Random, n: int, count: int) -> Family:
    """Uniformly sample count distinct subsets of [n]."""
    check_ground(n)
    if not 0 <= count <= 1 << n:
        raise ValueError(f"count must be in 0..{1 << n}, got {count!r}")
    return Family.of(n, rng.sample(range(1 << n), count))


def random_antichain(rng: random.Random, n: int) -> Family:
    """Greedy antichain over a shuffled subset order; maximal by construction."""
    check_ground(n)
    masks = list(range(1 << n))
    rng.shuffle(masks)
    kept: list[int] = []
    for m in masks:
        if all(m & f != m and m & f != f for f in kept):
            kept.append(m)
    return Family.of(n, kept)


def random_trace_sperner_family(
    rng: random.Random,
    n: int,
    k: int,
    l: int,
    *,
    size_range: tuple[int, int] | None = None,
    max_members: int | None = None,
) -> Family:
    """Greedy l-trace k-Sperner family over a shuffled candidate order.

    size_range restricts candidate subset sizes inclusively, for corpora
    that must satisfy extra size hypotheses.  Without max_members the
    result is maximal within the candidate pool.
    """
    check_ground(n)
    if max_members is not None and max_members < 0:
        raise ValueError(f"max_members must be nonnegative, got {max_members!r}")
    candidates = list(range(1 << n))
    if size_range is not None:
        lo, hi = size_range
        candidates = [m for m in candidates if lo <= m.bit_count() <= hi]
    rng.shuffle(candidates)
    state = TraceSpernerState(n, k, l)
    kept: list[int] = []
    for m in candidates:
        if max_members is not None and len(kept) >= max_members:
            break
        if state.fits(m):
            state.add(m)
            kept.append(m)
    return Family.of(n, kept)
