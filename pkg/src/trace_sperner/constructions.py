"""Layer-band families and the binomial sums giving their sizes.

A band is the family of all subsets whose sizes fall in a run of
consecutive layers.  Bands of width d sit at the heart of windowed Sperner
extremal questions: any family whose member sizes pairwise differ by less
than d is l-trace k-Sperner whenever k - l >= d, and the centered bands
below are the conjectured extremal witnesses.
"""

from __future__ import annotations

import itertools
from math import comb

from .families import Family, PreconditionError, check_ground, mask_of


def sum_largest_binomials(n: int, m: int) -> int:
    """Sum of the m largest binomial coefficients C(n, i).

    Equals sum_{i=1}^{m} C(n, (n-m)//2 + i).  m may run up to n+1, where
    the sum covers every layer and the value is 2**n.
    """
    check_ground(n)
    if not isinstance(m, int) or isinstance(m, bool) or not 0 <= m <= n + 1:
        raise ValueError(f"layer count m must be in 0..{n + 1}, got {m!r}")
    base = (n - m) // 2
    return sum(comb(n, base + i) for i in range(1, m + 1))


def layer_family(n: int, size: int) -> Family:
    """All subsets of [n] with the given size."""
    check_ground(n)
    if not 0 <= size <= n:
        raise ValueError(f"layer size must be in 0..{n}, got {size!r}")
    masks = (mask_of(c, n) for c in itertools.combinations(range(1, n + 1), size))
    return Family.of(n, masks)


def band_family(n: int, lo: int, hi: int) -> Family:
    """All subsets of [n] whose size lies in lo..hi inclusive."""
    check_ground(n)
    if not 0 <= lo <= hi <= n:
        raise ValueError(f"need 0 <= lo <= hi <= {n}, got lo={lo!r} hi={hi!r}")
    masks = []
    for size in range(lo, hi + 1):
        masks.extend(
            mask_of(c, n) for c in itertools.combinations(range(1, n + 1), size)
        )
    return Family.of(n, masks)


def middle_band_family(n: int, k: int, l: int) -> Family:
    """Centered band of k-l consecutive layers, sizes (n-d)//2 + 1 .. (n-d)//2 + d.

    Here l counts omitted elements: with d = k - l the band is
    (n-l)-trace k-Sperner, because a trace onto an (n-l)-window shrinks a
    member by at most l, so trace sizes span at most (d - 1) + l = k - 1
    values and no chain of k + 1 distinct traces fits.  The band has
    sum_largest_binomials(n, d) members and is the standard witness for
    the lower bound on the extremal size at window size n - l.
    """
    check_ground(n)
    if not isinstance(k, int) or not isinstance(l, int) or l < 1 or k <= l or k > n:
        raise ValueError(f"need 1 <= l < k <= n, got n={n!r} k={k!r} l={l!r}")
    d = k - l
    lo = (n - d) // 2 + 1
    return band_family(n, lo, lo + d - 1)


def middle_band_family_low(n: int, k: int, l: int) -> Family:
    """The centered band shifted down one layer, sizes (n-d)//2 .. (n-d)//2 + d - 1.

    Only defined when n - (k - l) is even; the shifted band then has exactly
    the same size as middle_band_family by the symmetry C(n, i) = C(n, n-i),
    and is (n-l)-trace k-Sperner for the same size-span reason.  For odd
    n - (k - l) the shifted band is strictly smaller, so it is not a second
    extremal witness and this function refuses to build it.
    """
    check_ground(n)
    if not isinstance(k, int) or not isinstance(l, int) or l < 1 or k <= l or k > n:
        raise ValueError(f"need 1 <= l < k <= n, got n={n!r} k={k!r} l={l!r}")
    d = k - l
    if (n - d) % 2 != 0:
        raise PreconditionError(
            f"shifted band needs n-(k-l) even, got n={n} k-l={d}"
        )
    lo = (n - d) // 2
    return band_family(n, lo, lo + d - 1)


def erdos_family(n: int, k: int, variant: str = "upper") -> Family:
    """Band of the k largest layers, the classical maximum k-Sperner family.

    Size is sum_largest_binomials(n, k).  The upper variant takes layers
    (n-k)//2 + 1 .. (n-k)//2 + k.  When n + k is even the reflected band one
    layer lower ties it exactly; that is the lower variant, refused when
    n + k is odd because the tie breaks.
    """
    check_ground(n)
    if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= n:
        raise ValueError(f"band width k must be in 1..{n}, got {k!r}")
    if variant == "upper":
        lo = (n - k) // 2 + 1
    elif variant == "lower":
        if (n + k) % 2 != 0:
            raise PreconditionError(
                f"lower band ties the maximum only for n+k even, got n={n} k={k}"
            )
        lo = (n - k) // 2
    else:
        raise ValueError(f'variant must be "upper" or "lower", got {variant!r}')
    return band_family(n, lo, lo + k - 1)


def pairwise_size_gap_below(fam: Family, d: int) -> bool:
    """Whether all member sizes pairwise differ by less than d.

    Families with this shape are (n-l)-trace k-Sperner whenever
    k - l >= d, by the size-span argument.  Vacuously true with fewer
    than two members.
    """
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ValueError(f"gap bound d must be a positive integer, got {d!r}")
    if len(fam.members) <= 1:
        return True
    sizes = fam.sizes()
    return max(sizes) - min(sizes) < d
