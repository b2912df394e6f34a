"""Maximal-chain censuses and the charge-counting machinery behind them.

A maximal chain in 2^[n] is a flag emptyset = V_0 < V_1 < ... < V_n = [n],
identified with the permutation of [n] listing the elements in the order
added.  The census of a family splits the n! maximal chains by how many
members each one meets.  Relative to a chain budget k the census collapses
to three numbers: chains meeting at most k-2 members (c_minus), exactly
k-1 (c), and exactly k (c_plus).

Two independent engines compute the census: census_direct walks every
permutation, census_ie enumerates inclusion chains inside the family and
sieves.  Their agreement is a strong correctness check and is wired into
the command line.

The remainder of the module builds, for each k-chain of members, families
of maximal chains obtained by trading one bottom element for one new top
element (shifted copies), counts them in closed form, marks the charged
subset, and verifies the facts that make c_minus >= c_plus work: charged
chains meet few members, and no maximal chain is charged too often.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Iterator

from .families import (
    CapacityError,
    Family,
    PreconditionError,
    check_ground,
    elements_of,
    full_mask,
)
from .sperner import is_l_trace_k_sperner, lym_sum

DIRECT_CAP = 10
IE_CHAIN_CAP = 2_000_000

# chain-set verification materialises maximal chains; factorial growth
VERIFY_CAP = 8


def _check_k(k: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")


@dataclass
class CensusResult:
    """Census of maximal chains by number of family members met.

    counts maps j to the number of maximal chains meeting exactly j members;
    zero classes are omitted.  k only enters through the derived split:
    c_minus counts chains meeting fewer than k - 1 members, c exactly k - 1,
    c_plus exactly k.  Chains meeting more than k members fall in no bucket,
    so c_minus + c + c_plus = n! exactly when no such chain exists.
    """

    n: int
    k: int
    counts: dict[int, int]

    @property
    def c_minus(self) -> int:
        return sum(v for j, v in self.counts.items() if j <= self.k - 2)

    @property
    def c(self) -> int:
        return self.counts.get(self.k - 1, 0)

    @property
    def c_plus(self) -> int:
        return self.counts.get(self.k, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "counts": {str(j): self.counts[j] for j in sorted(self.counts)},
            "c_minus": self.c_minus,
            "c": self.c,
            "c_plus": self.c_plus,
            "total": self.total,
        }


def census_direct(fam: Family, k: int) -> CensusResult:
    """Census by walking all n! permutations.  Definitional but factorial."""
    _check_k(k)
    n = fam.n
    if n > DIRECT_CAP:
        raise CapacityError(f"direct census walks {n}! permutations; capped at n <= {DIRECT_CAP}")
    members = frozenset(fam.members)
    base = (0 in members) + (full_mask(n) in members)
    counts: Counter[int] = Counter()
    bits = [1 << i for i in range(n)]
    last = n - 1
    for perm in itertools.permutations(bits):
        v = 0
        c = base
        for b in perm[:last]:
            v |= b
            if v in members:
                c += 1
        counts[c] += 1
    return CensusResult(n, k, dict(counts))


def _proper_successors(members: tuple[int, ...]) -> list[list[int]]:
    succ: list[list[int]] = [[] for _ in members]
    for i, a in enumerate(members):
        row = succ[i]
        for j in range(i + 1, len(members)):
            b = members[j]
            if a & b == a and a != b:
                row.append(j)
    return succ


def census_ie(fam: Family, k: int) -> CensusResult:
    """Census by chain enumeration inside the family plus sieving.

    For every inclusion chain of t members, the maximal chains through all
    of it number (n - topsize)! times the product of factorials of the size
    gaps (the gap from the empty set included).  Summing these over all
    t-chains gives S_t, and alternating binomial sums of the S_t recover
    the exact census.  Cost scales with the number of inclusion chains in
    the family, not with n!.
    """
    _check_k(k)
    n = fam.n
    members = fam.members
    succ = _proper_successors(members)
    sizes = [m.bit_count() for m in members]
    fact = [factorial(i) for i in range(n + 1)]
    s_by_len: Counter[int] = Counter()
    s_by_len[0] = fact[n]
    budget = IE_CHAIN_CAP

    def descend(i: int, depth: int, partial: int) -> None:
        nonlocal budget
        budget -= 1
        if budget < 0:
            raise CapacityError(
                f"family has more than {IE_CHAIN_CAP} inclusion chains"
            )
        s_by_len[depth] += partial * fact[n - sizes[i]]
        for j in succ[i]:
            descend(j, depth + 1, partial * fact[sizes[j] - sizes[i]])

    for i in range(len(members)):
        descend(i, 1, fact[sizes[i]])

    tmax = max(s_by_len)
    counts: dict[int, int] = {}
    for j in range(tmax + 1):
        v = sum(
            (-1) ** (t - j) * comb(t, j) * s_by_len[t] for t in range(j, tmax + 1)
        )
        if v:
            counts[j] = v
    return CensusResult(n, k, counts)


def chain_meet_count(perm: tuple[int, ...], members: frozenset[int] | set[int]) -> int:
    """How many of the given masks occur among the permutation's prefixes.

    All n+1 prefixes count, the empty set and the full set included.
    """
    c = 1 if 0 in members else 0
    v = 0
    for e in perm:
        v |= 1 << (e - 1)
        if v in members:
            c += 1
    return c


def chain_contains_all(perm: tuple[int, ...], required: Iterable[int]) -> bool:
    """Whether every given mask is a prefix of the permutation."""
    prefixes = {0}
    v = 0
    for e in perm:
        v |= 1 << (e - 1)
        prefixes.add(v)
    return all(r in prefixes for r in required)


def maximal_chains_containing(n: int, required: Iterable[int]) -> Iterator[tuple[int, ...]]:
    """All maximal chains through the given sets, as permutations of [n].

    Built segment by segment: between consecutive required sets the added
    elements may appear in any order, so the output count is the product of
    the factorials of the segment sizes.  The input must form an inclusion
    chain or ValueError is raised; requiring the empty set is vacuous and
    ignored.  With no requirements at all this yields every permutation.
    """
    check_ground(n)
    masks = sorted(set(required))
    masks.sort(key=lambda m: (m.bit_count(), m))
    if masks and masks[0] == 0:
        masks = masks[1:]
    top = full_mask(n)
    segments: list[tuple[int, ...]] = []
    prev = 0
    for m in masks:
        if not 0 <= m <= top:
            raise ValueError(f"mask {m!r} invalid for ground set [{n}]")
        if prev & m != prev or prev == m:
            raise ValueError("required sets do not form an inclusion chain")
        segments.append(elements_of(m & ~prev))
        prev = m
    segments.append(elements_of(top & ~prev))
    for parts in itertools.product(*(itertools.permutations(seg) for seg in segments)):
        out: tuple[int, ...] = ()
        for p in parts:
            out += p
        yield out


def chain_extension_count(n: int, sets: Iterable[int]) -> int:
    """Number of maximal chains through all the given nested sets, in closed form."""
    check_ground(n)
    masks = sorted(set(sets), key=lambda m: (m.bit_count(), m))
    prev = 0
    out = 1
    for m in masks:
        if prev & m != prev or (prev == m and m != 0):
            raise ValueError("sets do not form an inclusion chain")
        out *= factorial(m.bit_count() - prev.bit_count())
        prev = m
    return out * factorial(n - prev.bit_count())


@dataclass(frozen=True)
class KChain:
    """An inclusion chain of k family members, ascending.

    kind is "tight" when every gap between consecutive sets is one element,
    else "jump"; jump_pos is then the 1-based index of the last set before
    the first wide gap.  The gap below the smallest set never matters for
    the kind.
    """

    n: int
    sets: tuple[int, ...]

    def __post_init__(self) -> None:
        check_ground(self.n)
        if not self.sets:
            raise ValueError("chain needs at least one set")
        top = full_mask(self.n)
        prev = None
        for m in self.sets:
            if not isinstance(m, int) or not 0 <= m <= top:
                raise ValueError(f"mask {m!r} invalid for ground set [{self.n}]")
            if prev is not None and (prev & m != prev or prev == m):
                raise ValueError("sets do not form a strict inclusion chain")
            prev = m

    @property
    def k(self) -> int:
        return len(self.sets)

    @property
    def gaps(self) -> tuple[int, ...]:
        """Size steps along the chain, the step up from the empty set first."""
        sizes = [m.bit_count() for m in self.sets]
        return tuple(b - a for a, b in zip([0] + sizes, sizes))

    @property
    def jump_pos(self) -> int | None:
        gaps = self.gaps
        for i in range(1, len(gaps)):
            if gaps[i] >= 2:
                return i
        return None

    @property
    def kind(self) -> str:
        return "tight" if self.jump_pos is None else "jump"

    @property
    def first_size(self) -> int:
        return self.sets[0].bit_count()

    @property
    def top_size(self) -> int:
        return self.sets[-1].bit_count()

    def describe(self) -> str:
        links = " < ".join(
            "{" + ",".join(map(str, elements_of(m))) + "}" for m in self.sets
        )
        tag = self.kind if self.jump_pos is None else f"{self.kind}@{self.jump_pos}"
        return f"{links} [{tag}]"


def enumerate_k_chains(fam: Family, k: int) -> list[KChain]:
    """All inclusion chains of exactly k members, in storage-index order."""
    _check_k(k)
    members = fam.members
    succ = _proper_successors(members)
    out: list[KChain] = []
    stack: list[int] = []

    def descend(i: int) -> None:
        stack.append(i)
        if len(stack) == k:
            out.append(KChain(fam.n, tuple(members[j] for j in stack)))
        else:
            for j in succ[i]:
                descend(j)
        stack.pop()

    for i in range(len(members)):
        descend(i)
    return out


def c_plus_from_chains(fam: Family, k: int) -> int:
    """Sum over all k-chains of their maximal-chain extension counts.

    Equals the census c_plus whenever no maximal chain meets the family in
    more than k sets, because each such chain then contains at most one
    k-chain.
    """
    return sum(
        chain_extension_count(fam.n, chain.sets) for chain in enumerate_k_chains(fam, k)
    )


@dataclass(frozen=True)
class ShiftedCopy:
    """One shifted image of a k-chain: drop x throughout, adjoin z on top.

    required lists the nested sets every maximal chain of this copy's
    bundle must pass through.  For jump chains the wide gap is additionally
    filled one element at a time in the ordering `order`.
    """

    chain: KChain
    x: int
    z: int
    order: tuple[int, ...] | None
    required: tuple[int, ...]


def shifted_copies_tight(chain: KChain) -> Iterator[ShiftedCopy]:
    """Shifted copies of a tight chain, one per (x in bottom, z outside top).

    Required sets are (F_i - x) + z for every i plus F_k + z: a run of k+1
    sets with consecutive sizes, so each copy's bundle holds exactly
    |F_1|! (n - |F_k| - 1)! maximal chains.
    """
    if chain.kind != "tight":
        raise ValueError("chain is not tight")
    n = chain.n
    bottom, top = chain.sets[0], chain.sets[-1]
    for x in elements_of(bottom):
        xbit = 1 << (x - 1)
        for z in elements_of(full_mask(n) & ~top):
            zbit = 1 << (z - 1)
            req = tuple((m & ~xbit) | zbit for m in chain.sets) + (top | zbit,)
            yield ShiftedCopy(chain, x, z, None, req)


def shifted_copies_jump(chain: KChain) -> Iterator[ShiftedCopy]:
    """Shifted copies of a jump chain, one per (x, z, ordering of the gap).

    With the first wide gap after position l and gap elements y_1..y_m in
    the chosen order, the required sets come in three runs: F_i - x for
    i <= l, then a consecutive run that restores x right after y_1 enters
    and climbs the gap one y at a time, stopping one short so that z
    replaces y_m at size |F_{l+1}|, and finally F_j + z for j > l.  The
    swaps keep each run nested in the next.
    """
    l = chain.jump_pos
    if l is None:
        raise ValueError("chain is not a jump chain")
    n = chain.n
    sets = chain.sets
    bottom, top = sets[0], sets[-1]
    gap = sets[l] & ~sets[l - 1]
    for x in elements_of(bottom):
        xbit = 1 << (x - 1)
        for z in elements_of(full_mask(n) & ~top):
            zbit = 1 << (z - 1)
            for order in itertools.permutations(elements_of(gap)):
                req = [m & ~xbit for m in sets[:l]]
                req.append((sets[l - 1] & ~xbit) | (1 << (order[0] - 1)))
                v = sets[l - 1] | (1 << (order[0] - 1))
                req.append(v)
                for y in order[1:-1]:
                    v |= 1 << (y - 1)
                    req.append(v)
                req.append((sets[l] & ~(1 << (order[-1] - 1))) | zbit)
                req.extend(m | zbit for m in sets[l:])
                yield ShiftedCopy(chain, x, z, order, tuple(req))


def shifted_copies(chain: KChain) -> Iterator[ShiftedCopy]:
    if chain.kind == "tight":
        return shifted_copies_tight(chain)
    return shifted_copies_jump(chain)


def shifted_chain_count_formula(chain: KChain) -> int:
    """Closed form for the total maximal chains across all shifted copies.

    Tight: |F_1| (n - |F_k|)! times the product of gap factorials.  Jump:
    the same without the |F_1| factor.  Copies are pairwise disjoint, so
    this is a straight sum.  Chains reaching the full set admit no new top
    element, and jump chains with an empty bottom admit no dropped one;
    both have no copies at all.
    """
    n = chain.n
    if chain.top_size == n:
        return 0
    base = factorial(n - chain.top_size)
    for g in chain.gaps:
        base *= factorial(g)
    if chain.kind == "tight":
        return chain.first_size * base
    if chain.first_size == 0:
        return 0
    return base


def is_charged(copy: ShiftedCopy, perm: tuple[int, ...]) -> bool:
    """Whether a maximal chain of this copy's bundle carries charge.

    For jump copies every bundle member is charged.  For tight copies only
    those whose permutation places z among the first |F_1| - 2 positions;
    chains of bottom size two or less charge nothing.
    """
    if copy.chain.kind == "jump":
        return True
    return perm.index(copy.z) + 1 <= copy.chain.first_size - 2


def charged_chains(copy: ShiftedCopy) -> Iterator[tuple[int, ...]]:
    """The charged maximal chains of one shifted copy."""
    for perm in maximal_chains_containing(copy.chain.n, copy.required):
        if is_charged(copy, perm):
            yield perm


def charged_chain_count_formula(chain: KChain) -> int:
    """Closed form for the total charged chains across all shifted copies.

    Tight: max(|F_1| - 2, 0) (n - |F_k|)! times the product of gap
    factorials; jump: every shifted chain is charged.
    """
    if chain.kind == "jump":
        return shifted_chain_count_formula(chain)
    n = chain.n
    if chain.top_size == n:
        return 0
    base = factorial(n - chain.top_size)
    for g in chain.gaps:
        base *= factorial(g)
    return max(chain.first_size - 2, 0) * base


def _check_verify_capacity(fam: Family) -> None:
    if fam.n > VERIFY_CAP:
        raise CapacityError(
            f"chain-set verification materialises maximal chains; capped at n <= {VERIFY_CAP}"
        )


def _require_trace_property(fam: Family, k: int) -> None:
    if fam.n < 2:
        raise PreconditionError("windowed hypotheses need a ground set of at least 2")
    ok, violation = is_l_trace_k_sperner(fam, fam.n - 1, k)
    if not ok:
        raise PreconditionError(
            f"family is not {fam.n - 1}-trace {k}-Sperner: {violation.describe()}"
        )


@dataclass
class OverlapReport:
    """Outcome of checking how often shifted chains meet the family.

    Every maximal chain in every shifted copy's bundle must meet the family
    in at most k - 2 sets, jump chains with the wide gap right above the
    bottom set excepted.  witness, when the bound fails, holds the copy,
    the permutation, and its meet count.
    """

    n: int
    k: int
    bound: int
    chains_checked: int
    copies_checked: int
    maximal_chains_checked: int
    max_meet: int
    holds: bool
    witness: tuple[ShiftedCopy, tuple[int, ...], int] | None


def verify_chain_set_overlap(fam: Family, k: int) -> OverlapReport:
    """Check that shifted chains of every eligible k-chain meet few members.

    Eligible means tight, or jump with the wide gap strictly above the
    bottom set.  Requires k >= 2 (the bound k - 2 is meaningless below)
    and the family to be (n-1)-trace k-Sperner.
    """
    _check_k(k)
    if k < 2:
        raise PreconditionError("overlap bound k - 2 needs k >= 2")
    _check_verify_capacity(fam)
    _require_trace_property(fam, k)
    members = frozenset(fam.members)
    bound = k - 2
    chains = enumerate_k_chains(fam, k)
    copies_checked = 0
    chains_checked = 0
    maximal_checked = 0
    max_meet = 0
    for chain in chains:
        if chain.kind == "jump" and chain.jump_pos == 1:
            continue
        chains_checked += 1
        for copy in shifted_copies(chain):
            copies_checked += 1
            for perm in maximal_chains_containing(fam.n, copy.required):
                maximal_checked += 1
                meet = chain_meet_count(perm, members)
                if meet > max_meet:
                    max_meet = meet
                if meet > bound:
                    return OverlapReport(
                        fam.n, k, bound, chains_checked, copies_checked,
                        maximal_checked, max_meet, False, (copy, perm, meet),
                    )
    return OverlapReport(
        fam.n, k, bound, chains_checked, copies_checked,
        maximal_checked, max_meet, True, None,
    )


@dataclass
class ChargeRow:
    """Charge bookkeeping for one k-chain.

    charged_multiplicity: the most charges any of this chain's charged
    maximal chains receives in total, from all k-chains together; zero
    when the chain charges nothing.  containing_multiplicity: the most
    charges received by any maximal chain that passes through the k sets
    themselves.  Chains through the sets are never charged by their own
    chain, so the two readings genuinely differ and both are reported.
    charged_count and extension_count are the bundle sizes behind them.
    """

    chain: KChain
    charged_count: int
    extension_count: int
    charged_multiplicity: int
    containing_multiplicity: int


def chain_charge_multiplicities(fam: Family, k: int) -> list[ChargeRow]:
    """Per-chain charge multiplicities, materialised exactly.

    Builds every charged maximal chain of every k-chain, counts how often
    each permutation is charged, and reports per chain the worst case over
    its own charged chains (charged_multiplicity) and over the chains
    through its own sets (containing_multiplicity).
    """
    _check_k(k)
    _check_verify_capacity(fam)
    chains = enumerate_k_chains(fam, k)
    charged_per_chain: list[list[tuple[int, ...]]] = []
    charge_count: Counter[tuple[int, ...]] = Counter()
    for chain in chains:
        mine: list[tuple[int, ...]] = []
        for copy in shifted_copies(chain):
            for perm in charged_chains(copy):
                mine.append(perm)
                charge_count[perm] += 1
        charged_per_chain.append(mine)
    # multiplicities are global, so rows can only be built once every
    # chain has deposited its charges
    rows: list[ChargeRow] = []
    for chain, charged in zip(chains, charged_per_chain):
        containing = list(maximal_chains_containing(fam.n, chain.sets))
        rows.append(
            ChargeRow(
                chain=chain,
                charged_count=len(charged),
                extension_count=len(containing),
                charged_multiplicity=max((charge_count[p] for p in charged), default=0),
                containing_multiplicity=max(charge_count[p] for p in containing),
            )
        )
    return rows


@dataclass
class MultiplicityReport:
    """Charge multiplicity bounds over all k-chains of a family.

    holds asserts the charged reading's bounds: tight chains at most 2,
    jump chains exactly 1.  The containing-multiplicity column is reported
    for comparison only and takes no part in holds.
    """

    n: int
    k: int
    rows: list[ChargeRow]
    holds: bool
    witness: ChargeRow | None


def _check_counting_hypotheses(fam: Family, k: int) -> None:
    """Shared hypotheses of the counting facts: k >= 2, member sizes in
    4..n-1, and the (n-1)-trace k-Sperner property."""
    _check_k(k)
    if k < 2:
        raise PreconditionError("counting facts need k >= 2")
    bad = [m for m in fam.members if not 4 <= m.bit_count() <= fam.n - 1]
    if bad:
        raise PreconditionError(
            f"member sizes must lie in 4..{fam.n - 1}; "
            f"offending size {bad[0].bit_count()}"
        )
    _require_trace_property(fam, k)


def verify_charge_multiplicity(fam: Family, k: int) -> MultiplicityReport:
    """Check the charge multiplicity bounds: tight at most 2, jump exactly 1.

    Requires only the trace property.  A chain that charges nothing (no
    valid (x, z) pair, or a tight bottom too small for any starred chain)
    is vacuous for the jump equality and trivially inside the tight bound.
    """
    _check_k(k)
    _check_verify_capacity(fam)
    _require_trace_property(fam, k)
    rows = chain_charge_multiplicities(fam, k)
    witness = None
    for row in rows:
        if row.chain.kind == "tight":
            ok = row.charged_multiplicity <= 2
        else:
            ok = row.charged_count == 0 or row.charged_multiplicity == 1
        if not ok:
            witness = row
            break
    return MultiplicityReport(fam.n, k, rows, witness is None, witness)


@dataclass
class CensusInequalityReport:
    """Outcome of the chain-census balance check c_minus >= c_plus.

    strict_expected marks families containing a tight k-chain with bottom
    size at least 5; for those the inequality should be strict, recorded
    in strict_holds (None when not expected).
    """

    n: int
    k: int
    c_minus: int
    c: int
    c_plus: int
    holds: bool
    strict_expected: bool
    strict_holds: bool | None


def verify_census_inequality(fam: Family, k: int) -> CensusInequalityReport:
    """Check c_minus >= c_plus under the counting hypotheses.

    Uses the chain-enumeration census engine, so it scales with the number
    of inclusion chains in the family rather than n!.
    """
    _check_counting_hypotheses(fam, k)
    census = census_ie(fam, k)
    strict_expected = any(
        chain.kind == "tight" and chain.first_size >= 5
        for chain in enumerate_k_chains(fam, k)
    )
    c_minus, c_plus = census.c_minus, census.c_plus
    return CensusInequalityReport(
        n=fam.n,
        k=k,
        c_minus=c_minus,
        c=census.c,
        c_plus=c_plus,
        holds=c_minus >= c_plus,
        strict_expected=strict_expected,
        strict_holds=(c_minus > c_plus) if strict_expected else None,
    )


@dataclass
class LymReport:
    """Outcome of the binomial-weight bound sum 1/C(n,|F|) <= k - 1."""

    n: int
    k: int
    value: Fraction
    bound: int
    holds: bool


def verify_lym_bound(fam: Family, k: int) -> LymReport:
    """Check the exact binomial-weight sum against k - 1.

    Same hypotheses as the census balance check; the bound follows from it
    by averaging over maximal chains.
    """
    _check_counting_hypotheses(fam, k)
    value = lym_sum(fam)
    return LymReport(fam.n, k, value, k - 1, value <= k - 1)
