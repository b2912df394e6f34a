"""Bitmask set families over a small ground set.

Ground sets are [n] = {1, ..., n} with n <= 20.  A subset of [n] is an n-bit
integer mask: bit i-1 is set iff element i belongs to the subset.  A family
is a deduplicated tuple of masks kept in storage order, ascending by
(popcount, numeric value).  Every value here is immutable and every function
is pure.

The JSON interchange format for a family is

    {"n": <int>, "sets": [[elements ascending], ...]}

with the sets sorted by (size, lexicographic element order).  Unknown keys
are ignored on input, so reports may embed extra metadata next to a family.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

MAX_GROUND = 20

# canonical_form minimises over all n! relabelings; past 8 the factorial is
# no longer a sane interactive cost
CANONICAL_CAP = 8


class CapacityError(RuntimeError):
    """An exact operation was asked to run past its hard size cap."""


class PreconditionError(ValueError):
    """A verification was invoked outside its stated hypotheses."""


def check_ground(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= MAX_GROUND:
        raise ValueError(
            f"ground set size must be an integer in 1..{MAX_GROUND}, got {n!r}"
        )


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(elements: Iterable[int], n: int | None = None) -> int:
    """Mask for a collection of elements; duplicates are an error."""
    mask = 0
    for e in elements:
        if not isinstance(e, int) or isinstance(e, bool) or e < 1:
            raise ValueError(f"element {e!r} is not a positive integer")
        if n is not None and e > n:
            raise ValueError(f"element {e} exceeds ground set size {n}")
        bit = 1 << (e - 1)
        if mask & bit:
            raise ValueError(f"duplicate element {e}")
        mask |= bit
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def storage_key(mask: int) -> tuple[int, int]:
    return (mask.bit_count(), mask)


def trace_set(mask: int, window: int) -> int:
    """Restriction of one set to a window of the ground set."""
    return mask & window


@dataclass(frozen=True, order=True)
class Family:
    """A set family over [n], members in storage order.

    Construct through :meth:`of` or :meth:`from_sets`; the raw constructor
    insists the member tuple is already deduplicated and storage ordered.
    """

    n: int
    members: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        check_ground(self.n)
        top = 1 << self.n
        prev = None
        for m in self.members:
            if not isinstance(m, int) or isinstance(m, bool) or not 0 <= m < top:
                raise ValueError(f"mask {m!r} invalid for ground set [{self.n}]")
            key = storage_key(m)
            if prev is not None and key <= prev:
                raise ValueError("members must be strictly increasing in storage order")
            prev = key

    @classmethod
    def of(cls, n: int, masks: Iterable[int]) -> "Family":
        return cls(n, tuple(sorted(set(masks), key=storage_key)))

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "Family":
        return cls.of(n, (mask_of(s, n) for s in sets))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: object) -> bool:
        return mask in self.members

    def sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(elements_of(m) for m in self.members)

    def sizes(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self.members)


def trace_family(fam: Family, window: int) -> Family:
    """Family of traces on a window; members collapsing together deduplicate."""
    if not 0 <= window < (1 << fam.n):
        raise ValueError(f"window {window!r} invalid for ground set [{fam.n}]")
    return Family.of(fam.n, (m & window for m in fam.members))


def complement_family(fam: Family) -> Family:
    top = full_mask(fam.n)
    return Family.of(fam.n, (top ^ m for m in fam.members))


def check_permutation(perm: tuple[int, ...], n: int) -> None:
    if tuple(sorted(perm)) != tuple(range(1, n + 1)):
        raise ValueError(f"{perm!r} is not a permutation of 1..{n}")


def identity_permutation(n: int) -> tuple[int, ...]:
    check_ground(n)
    return tuple(range(1, n + 1))


def relabel_mask(mask: int, perm: tuple[int, ...]) -> int:
    out = 0
    i = 1
    while mask:
        if mask & 1:
            out |= 1 << (perm[i - 1] - 1)
        mask >>= 1
        i += 1
    return out


def relabel_family(fam: Family, perm: tuple[int, ...]) -> Family:
    check_permutation(perm, fam.n)
    return Family.of(fam.n, (relabel_mask(m, perm) for m in fam.members))


def canonical_form(fam: Family) -> Family:
    """Least relabeling of the family.

    Minimum is over all n! ground-set relabelings, comparing member tuples
    in storage order.  Exhaustive by design, hence the hard cap on n.
    """
    if fam.n > CANONICAL_CAP:
        raise CapacityError(
            f"canonical_form enumerates all {fam.n}! relabelings; capped at n <= {CANONICAL_CAP}"
        )
    best = None
    members = fam.members
    for perm in itertools.permutations(range(1, fam.n + 1)):
        relabeled = tuple(sorted((relabel_mask(m, perm) for m in members), key=storage_key))
        if best is None or relabeled < best:
            best = relabeled
    return Family(fam.n, best if best is not None else ())


def family_to_jsonable(fam: Family) -> dict:
    listed = sorted(fam.sets(), key=lambda s: (len(s), s))
    return {"n": fam.n, "sets": [list(s) for s in listed]}


def family_from_jsonable(obj: object) -> Family:
    if not isinstance(obj, dict):
        raise ValueError("family document must be a JSON object")
    if "n" not in obj or "sets" not in obj:
        raise ValueError('family document needs "n" and "sets" keys')
    n = obj["n"]
    check_ground(n)
    raw = obj["sets"]
    if not isinstance(raw, list) or not all(isinstance(s, list) for s in raw):
        raise ValueError('"sets" must be a list of element lists')
    masks = [mask_of(s, n) for s in raw]
    if len(set(masks)) != len(masks):
        raise ValueError("duplicate sets in family input")
    return Family.of(n, masks)


def load_family(path: str | Path) -> Family:
    with open(path, "r", encoding="utf-8") as fh:
        return family_from_jsonable(json.load(fh))


def dump_family(fam: Family, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(family_to_jsonable(fam), fh, indent=2)
        fh.write("\n")
