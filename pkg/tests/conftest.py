"""Shared fixtures: the acceptance recorder, a definitional reference
checker kept independent of the library internals, and the family corpora
the chain-set and inequality tests run over."""

from __future__ import annotations

import itertools
from contextlib import contextmanager

import pytest
from hypothesis import settings, strategies as st

from trace_sperner.constructions import band_family, middle_band_family
from trace_sperner.families import Family, elements_of

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


@st.composite
def families(draw, min_n=1, max_n=5, max_members=12):
    n = draw(st.integers(min_n, max_n))
    masks = draw(st.frozensets(st.integers(0, (1 << n) - 1), max_size=max_members))
    return Family.of(n, masks)

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log():
    @contextmanager
    def record(number: int, title: str):
        detail: list[str] = []
        try:
            yield detail
        except BaseException:
            ACCEPTANCE_LINES.append(f"criterion {number:2d} FAIL  {title}")
            raise
        summary = f"criterion {number:2d} PASS  {title}"
        ACCEPTANCE_LINES.append(summary)
        for extra in detail:
            ACCEPTANCE_LINES.append(f"             .     {extra}")

    return record


def reference_is_l_trace_k_sperner(fam: Family, l: int, k: int) -> bool:
    """Definitional check via frozensets, no bitmasks and no height DP.

    Every window of l elements is tried; a violation is any k+1 distinct
    traces forming a strict inclusion chain.  Exponential in the trace
    count, so callers keep families small.
    """
    ground = range(1, fam.n + 1)
    member_sets = [frozenset(elements_of(m)) for m in fam.members]
    for window in itertools.combinations(ground, l):
        w = frozenset(window)
        traces = sorted({s & w for s in member_sets}, key=len)
        for combo in itertools.combinations(traces, k + 1):
            if all(combo[i] < combo[i + 1] for i in range(k)):
                return False
    return True


def chain_formula_corpus() -> list[tuple[Family, int]]:
    """Families paired with a chain length k, for the closed-form counts.

    The trace property is irrelevant here; the corpus deliberately mixes
    tight and jump chains, empty bottoms, and full tops at n <= 6.
    """
    rich = Family.from_sets(5, [[1], [1, 2], [1, 2, 3], [4], [4, 5], [2, 4]])
    return [
        (rich, 2),
        (rich, 3),
        (Family.from_sets(6, [[1, 2, 3], [1, 2, 3, 4]]), 2),
        (Family.from_sets(5, [[1, 2], [1, 2, 3, 4]]), 2),
        (Family.from_sets(6, [[1, 2], [1, 2, 3], [1, 2, 3, 4, 5]]), 3),
        (Family.from_sets(4, [[], [1, 2], [1, 2, 3]]), 2),
        (Family.from_sets(4, [[], [1, 2], [1, 2, 3]]), 3),
        (Family.from_sets(5, [[1, 2, 3, 4], [1, 2, 3, 4, 5]]), 2),
        (middle_band_family(5, 3, 1), 2),
    ]


def conforming_corpus() -> list[tuple[Family, int]]:
    """Families satisfying the windowed trace property, with their k.

    Used by the overlap and multiplicity verifications, which require the
    property but not the size hypotheses; n stays at most 7.
    """
    return [
        (Family.from_sets(6, [[1, 2, 3], [1, 2, 3, 4]]), 2),
        (Family.from_sets(5, [[1, 2], [1, 2, 3, 4]]), 2),
        (Family.from_sets(7, [[1, 2, 3, 4], [1, 2, 3, 4, 5], [1, 2, 3, 4, 5, 6]]), 3),
        (Family.from_sets(7, [[1, 2, 3], [1, 2, 3, 4], [1, 2, 3, 4, 5, 6]]), 3),
        (Family.from_sets(7, [[1, 2, 3, 4, 5], [1, 2, 3, 4, 5, 6]]), 2),
        (middle_band_family(6, 3, 1), 3),
    ]


def counting_corpus() -> list[tuple[Family, int]]:
    """Families satisfying the counting hypotheses: member sizes in
    4..n-1 and the windowed trace property, at n between 6 and 9."""
    return [
        (band_family(6, 4, 5), 3),
        (Family.from_sets(7, [[1, 2, 3, 4], [1, 2, 3, 4, 5], [1, 2, 3, 4, 5, 6]]), 3),
        (Family.from_sets(8, [[1, 2, 3, 4, 5], [1, 2, 3, 4, 5, 6]]), 2),
        (band_family(8, 5, 6), 3),
        (band_family(9, 4, 5), 3),
        (Family.from_sets(9, [[1, 2, 3, 4, 5], [1, 2, 3, 4, 5, 6]]), 2),
    ]
