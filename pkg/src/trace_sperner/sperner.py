"""Chain structure of set families and the windowed Sperner property.

A family is k-Sperner when it contains no chain of k+1 sets nested by
strict inclusion.  The windowed variant restricts every member to an
l-element window of the ground set first and asks the same of the trace
family; a family passing that test for every window is here called
l-trace k-Sperner.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .families import Family, elements_of, mask_of


def _up_lengths(members: tuple[int, ...]) -> list[int]:
    """Longest-chain lengths upward from each member.

    up[i] counts the sets of the longest inclusion chain whose least set is
    members[i].  Input must be in storage order.  Two interchangeable ways
    to fill the table: compare all pairs, or walk each member's supersets
    inside the universe and probe a hash table.  Picks whichever a cheap
    operation-count estimate says is smaller; banded families with many
    members of near-universe size make the second path dramatically
    cheaper.
    """
    m = len(members)
    if m == 0:
        return []
    universe = 0
    for v in members:
        universe |= v
    u = universe.bit_count()
    pair_cost = m * m // 2
    superset_cost = sum(1 << (u - v.bit_count()) for v in members)
    up = [1] * m
    if superset_cost < pair_cost:
        table: dict[int, int] = {}
        for i in range(m - 1, -1, -1):
            v = members[i]
            rest = universe & ~v
            best = 0
            sub = rest
            while sub:
                got = table.get(v | sub)
                if got is not None and got > best:
                    best = got
                sub = (sub - 1) & rest
            up[i] = best + 1
            table[v] = best + 1
    else:
        for i in range(m - 1, -1, -1):
            v = members[i]
            best = 0
            for j in range(i + 1, m):
                if v & members[j] == v and up[j] > best:
                    best = up[j]
            up[i] = best + 1
    return up


def _least_chain(members: tuple[int, ...], up: list[int], length: int) -> tuple[int, ...]:
    """Lexicographically least chain of `length` sets, as storage-order picks.

    Greedy: at each step take the earliest member extending the chain so
    far that still has enough room above it.  up[j] >= need guarantees a
    continuation exists, so the scan never dead-ends.
    """
    chain: list[int] = []
    prev = -1
    prev_mask = 0
    for need in range(length, 0, -1):
        for j in range(prev + 1, len(members)):
            v = members[j]
            if up[j] >= need and (not chain or (prev_mask & v == prev_mask and v != prev_mask)):
                chain.append(v)
                prev = j
                prev_mask = v
                break
        else:
            raise AssertionError("chain extraction dead-ended")
    return tuple(chain)


def longest_chain(fam: Family) -> tuple[int, tuple[int, ...]]:
    """Length of the longest inclusion chain in the family, with a witness.

    The witness is the lexicographically least such chain in storage order.
    Empty family gives (0, ()).
    """
    up = _up_lengths(fam.members)
    if not up:
        return 0, ()
    best = max(up)
    return best, _least_chain(fam.members, up, best)


def is_k_sperner(fam: Family, k: int) -> tuple[bool, tuple[int, ...] | None]:
    """Whether no k+1 members form an inclusion chain; witness chain if they do."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    up = _up_lengths(fam.members)
    if not up or max(up) <= k:
        return True, None
    return False, _least_chain(fam.members, up, k + 1)


@dataclass(frozen=True)
class TraceViolation:
    """A window whose trace family contains a too-long chain.

    window is the offending l-subset of the ground set as a mask; chain
    holds k+1 distinct traces nested by strict inclusion, ascending.
    """

    window: int
    chain: tuple[int, ...]

    def describe(self) -> str:
        win = ",".join(map(str, elements_of(self.window)))
        links = " < ".join("{" + ",".join(map(str, elements_of(t))) + "}" for t in self.chain)
        return f"window {{{win}}}: {links}"


def is_l_trace_k_sperner(
    fam: Family, l: int, k: int
) -> tuple[bool, TraceViolation | None]:
    """Decide whether every l-window trace of the family is k-Sperner.

    Windows are scanned in ascending element order and the first failure is
    returned, so the witness is deterministic.  l = 0 has the single empty
    window, whose trace family has at most one set, so it always passes.
    """
    if not isinstance(l, int) or isinstance(l, bool) or not 0 <= l <= fam.n:
        raise ValueError(f"window size l must be in 0..{fam.n}, got {l!r}")
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    for window_elems in itertools.combinations(range(1, fam.n + 1), l):
        window = mask_of(window_elems, fam.n)
        traces = tuple(sorted({m & window for m in fam.members}, key=lambda t: (t.bit_count(), t)))
        up = _up_lengths(traces)
        if up and max(up) >= k + 1:
            return False, TraceViolation(window, _least_chain(traces, up, k + 1))
    return True, None


def lym_sum(fam: Family) -> Fraction:
    """Sum of 1/binomial(n, |F|) over the members, exactly."""
    total = Fraction(0)
    for m in fam.members:
        total += Fraction(1, comb(fam.n, m.bit_count()))
    return total


class TraceSpernerState:
    """Incremental membership test against the l-trace k-Sperner property.

    Tracks a multiset of member masks.  fits(mask) answers whether the mask
    can join without creating a k+1 trace chain in any window, in time
    proportional to windows times present traces rather than a fresh check
    of the whole family.  add/remove do no checking of their own.

    Per window the state keeps trace multiplicities plus lazily rebuilt
    chain-height tables; the tables only go stale when a window's trace
    *set* changes, which repeated adds of an already-present trace never do.
    """

    def __init__(self, n: int, k: int, l: int) -> None:
        if not isinstance(l, int) or isinstance(l, bool) or not 0 <= l <= n:
            raise ValueError(f"window size l must be in 0..{n}, got {l!r}")
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise ValueError(f"k must be a positive integer, got {k!r}")
        self.n = n
        self.k = k
        self.l = l
        self.windows = tuple(
            mask_of(c, n) for c in itertools.combinations(range(1, n + 1), l)
        )
        self._counts: list[dict[int, int]] = [dict() for _ in self.windows]
        # parallel lazy caches; None = stale
        self._down: list[dict[int, int] | None] = [None] * len(self.windows)
        self._up: list[dict[int, int] | None] = [None] * len(self.windows)
        self.size = 0

    def _heights(self, wi: int) -> tuple[dict[int, int], dict[int, int]]:
        down = self._down[wi]
        up = self._up[wi]
        if down is not None and up is not None:
            return down, up
        traces = sorted(self._counts[wi], key=lambda t: (t.bit_count(), t))
        down = {}
        for i, t in enumerate(traces):
            best = 0
            for s in traces[:i]:
                if s & t == s and down[s] > best:
                    best = down[s]
            down[t] = best + 1
        up = {}
        for i in range(len(traces) - 1, -1, -1):
            t = traces[i]
            best = 0
            for s in traces[i + 1 :]:
                if t & s == t and up[s] > best:
                    best = up[s]
            up[t] = best + 1
        self._down[wi] = down
        self._up[wi] = up
        return down, up

    def fits(self, mask: int) -> bool:
        """True when adding mask keeps every window's trace family k-Sperner."""
        for wi, window in enumerate(self.windows):
            t = mask & window
            if t in self._counts[wi]:
                continue
            down, up = self._heights(wi)
            below = 1
            above = 1
            for s, d in down.items():
                if s & t == s and s != t and d + 1 > below:
                    below = d + 1
            for s, u in up.items():
                if t & s == t and s != t and u + 1 > above:
                    above = u + 1
            if below + above >= self.k + 2:
                return False
        return True

    def add(self, mask: int) -> None:
        for wi, window in enumerate(self.windows):
            t = mask & window
            counts = self._counts[wi]
            if t in counts:
                counts[t] += 1
            else:
                counts[t] = 1
                self._down[wi] = None
                self._up[wi] = None
        self.size += 1

    def remove(self, mask: int) -> None:
        for wi, window in enumerate(self.windows):
            t = mask & window
            counts = self._counts[wi]
            c = counts[t]
            if c == 1:
                del counts[t]
                self._down[wi] = None
                self._up[wi] = None
            else:
                counts[t] = c - 1
        self.size -= 1
