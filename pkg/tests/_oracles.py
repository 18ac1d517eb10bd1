"""Independent brute-force oracles used to freeze expected test values.

Everything here works on plain dicts and loops, deliberately avoiding
the package's own data structures, so that a test comparing the two is
a genuine cross-check rather than a tautology.
"""

from __future__ import annotations

import math
from itertools import combinations

# Literal gate pmfs, written out by hand.
XOR_PMF = {(0, 0, 0): 0.25, (0, 1, 1): 0.25, (1, 0, 1): 0.25, (1, 1, 0): 0.25}
AND_PMF = {(0, 0, 0): 0.25, (0, 1, 0): 0.25, (1, 0, 0): 0.25, (1, 1, 1): 0.25}
COPY_PMF = {(0, 0, 0): 0.5, (1, 1, 1): 0.5}
TWO_COINS_COPY_PMF = {(0, 0, 0): 0.25, (0, 1, 1): 0.25, (1, 0, 2): 0.25, (1, 1, 3): 0.25}


def three_pair_pmf() -> dict[tuple[int, int, int], float]:
    """Three variables, each the pair of two out of three hidden fair bits."""
    pmf = {}
    for a in (0, 1):
        for b in (0, 1):
            for c in (0, 1):
                pmf[(2 * a + b, 2 * b + c, 2 * c + a)] = 1 / 8
    return pmf


def oracle_marginal(pmf: dict, idx) -> dict:
    out: dict = {}
    for outcome, p in pmf.items():
        key = tuple(outcome[i] for i in idx)
        out[key] = out.get(key, 0.0) + p
    return out


def oracle_entropy(pmf: dict, idx) -> float:
    return -sum(p * math.log2(p) for p in oracle_marginal(pmf, idx).values() if p > 0)


def oracle_mi(pmf: dict, a, b) -> float:
    union = tuple(sorted(set(a) | set(b)))
    return oracle_entropy(pmf, a) + oracle_entropy(pmf, b) - oracle_entropy(pmf, union)


def oracle_interaction(pmf: dict, groups) -> float:
    """Alternating entropy sum over unions of chosen groups."""
    total = 0.0
    for k in range(1, len(groups) + 1):
        for chosen in combinations(groups, k):
            union = tuple(sorted({i for g in chosen for i in g}))
            total += (-1.0) ** (k - 1) * oracle_entropy(pmf, union)
    return total


def oracle_interval(pmf: dict) -> tuple[float, float]:
    """Feasible triple-intersection range from raw entropies."""
    i12 = oracle_mi(pmf, (0,), (1,))
    i13 = oracle_mi(pmf, (0,), (2,))
    i23 = oracle_mi(pmf, (1,), (2,))
    i3 = oracle_interaction(pmf, [(0,), (1,), (2,)])
    return max(0.0, i3), min(i12, i13, i23)


def brute_leq(a_brackets, b_brackets) -> bool:
    """The order definition written as explicit nested loops."""
    for bb in b_brackets:
        found = False
        for aa in a_brackets:
            if set(aa).issubset(set(bb)):
                found = True
        if not found:
            return False
    return True
