from __future__ import annotations

import math
from itertools import combinations, permutations

import pytest

import infatom as ia
from infatom.lattice import Antichain
from infatom.terms import eval_term, reduce_antichain

from _oracles import oracle_interval, oracle_entropy, oracle_mi, oracle_interaction


# ---------------------------------------------------------------------------
# eval_term dispatch
# ---------------------------------------------------------------------------


def test_single_bracket_is_joint_entropy(xor):
    tv = eval_term(xor, Antichain.of([1]))
    assert tv.is_exact and tv.value == pytest.approx(1.0, abs=1e-12)
    tv = eval_term(xor, Antichain.of([1, 2]))
    assert tv.value == pytest.approx(2.0, abs=1e-12)


def test_xor_pair_bracket_reduces_by_function_rule(xor):
    tv = eval_term(xor, Antichain.parse("{1,2}{3}"))
    assert tv.is_exact
    assert tv.value == pytest.approx(1.0, abs=1e-12)
    assert any(step.startswith("R2") for step in tv.trace)


def test_xor_singletons_vanish_by_independence(xor):
    tv = eval_term(xor, Antichain.parse("{1}{2}{3}"))
    assert tv.is_exact and tv.value == 0.0
    assert any(step.startswith("R1") for step in tv.trace)


def test_and_singletons_vanish_by_independence(and_table):
    tv = eval_term(and_table, Antichain.parse("{1}{2}{3}"))
    assert tv.is_exact and tv.value == 0.0


def test_copies_triple_reduces_to_entropy(copies):
    tv = eval_term(copies, Antichain.parse("{1}{2}{3}"))
    assert tv.is_exact and tv.value == pytest.approx(1.0, abs=1e-12)


def test_generic_triple_is_interval_with_oracle_bounds():
    t = ia.random_table("interval-oracle", [2, 2, 2])
    tv = eval_term(t, Antichain.parse("{1}{2}{3}"))
    assert not tv.is_exact
    lo, hi = oracle_interval(t.pmf())
    assert tv.bounds[0] == pytest.approx(lo, abs=1e-12)
    assert tv.bounds[1] == pytest.approx(hi, abs=1e-12)
    assert tv.bounds[0] <= tv.bounds[1] + 1e-9
    assert tv.bounds[0] >= -1e-9


def test_two_brackets_equal_mutual_information():
    for seed in range(5):
        t = ia.random_table(f"pairmi:{seed}", [2, 2, 2])
        for a, b in (([1], [2]), ([1], [2, 3]), ([1, 3], [2])):
            tv = eval_term(t, Antichain.of(a, b))
            mi = ia.mutual_information(t, [i - 1 for i in a], [i - 1 for i in b])
            assert tv.is_exact
            assert tv.value == pytest.approx(mi, abs=1e-12)


def test_union_dominates_parts_at_measure_level():
    # The pair term {i,j}{k} can never carry less than either single-source
    # mutual information.
    for seed in range(20):
        t = ia.random_table(f"subdist:{seed}", [2, 2, 2])
        for i, j, k in permutations((1, 2, 3)):
            if i > j:
                continue
            tv = eval_term(t, Antichain.of([i, j], [k]))
            lower = max(
                ia.mutual_information(t, [i - 1], [k - 1]),
                ia.mutual_information(t, [j - 1], [k - 1]),
            )
            assert tv.value >= lower - 1e-9


def test_interval_lower_bound_tracks_positive_coinformation():
    for seed in range(30):
        t = ia.random_table(f"pos-i3:{seed}", [2, 2, 2])
        i3 = ia.interaction_information(t, [[0], [1], [2]])
        tv = eval_term(t, Antichain.parse("{1}{2}{3}"))
        if tv.is_exact:
            assert tv.value >= max(0.0, i3) - 1e-9
        else:
            assert tv.bounds[0] >= max(0.0, i3) - 1e-12


def test_four_bracket_interval_bounds():
    t = ia.random_table("four", [2, 2, 2, 2])
    tv = eval_term(t, Antichain.parse("{1}{2}{3}{4}"))
    if not tv.is_exact:
        assert tv.bounds[0] == 0.0
        pair_mis = [
            ia.mutual_information(t, [i], [j]) for i, j in combinations(range(4), 2)
        ]
        assert tv.bounds[1] <= min(pair_mis) + 1e-12


def test_eval_term_rejects_foreign_indices(xor):
    with pytest.raises(ia.AntichainError):
        eval_term(xor, Antichain.parse("{1}{4}"))


# ---------------------------------------------------------------------------
# Reduction confluence
# ---------------------------------------------------------------------------


def _reduce_alternative(table, a, eps_det=1e-9):
    """Same rules, opposite priorities: function rule first, pairs scanned
    in reverse.  Used to probe order independence of the outcome."""
    brackets = [frozenset(i - 1 for i in b) for b in a.brackets]
    while len(brackets) >= 2:
        dropped = False
        for i in reversed(range(len(brackets))):
            for j in reversed(range(len(brackets))):
                if i == j:
                    continue
                h_cond = ia.entropy(table, brackets[i] | brackets[j]) - ia.entropy(
                    table, brackets[j]
                )
                if h_cond <= eps_det:
                    del brackets[j]
                    dropped = True
                    break
            if dropped:
                break
        if not dropped:
            break
    for x, y in combinations(brackets, 2):
        if ia.mutual_information(table, x, y) <= eps_det:
            return None
    return [sorted(i + 1 for i in b) for b in brackets]


def _value_of(table, a):
    tv = eval_term(table, a)
    return ("exact", round(tv.value, 10)) if tv.is_exact else (
        "interval",
        round(tv.bounds[0], 10),
        round(tv.bounds[1], 10),
    )


def test_reduction_is_confluent_on_gate_corpus():
    corpus = [
        ia.xor_gate(),
        ia.parity_gate(4),
        ia.and_gate(),
        ia.copy_gate(),
        ia.two_coins_copy_gate(),
    ]
    for table in corpus:
        for a in ia.enumerate_antichains(table.n).elements:
            alt = _reduce_alternative(table, a)
            if alt is None:
                alt_value = ("exact", 0.0)
            elif len(alt) == 1:
                alt_value = ("exact", round(ia.entropy(table, [i - 1 for i in alt[0]]), 10))
            elif len(alt) == 2:
                alt_value = (
                    "exact",
                    round(
                        ia.mutual_information(
                            table, [i - 1 for i in alt[0]], [i - 1 for i in alt[1]]
                        ),
                        10,
                    ),
                )
            else:
                groups = [[i - 1 for i in b] for b in alt]
                lo = max(0.0, ia.interaction_information(table, groups)) if len(alt) == 3 else 0.0
                hi = min(
                    ia.mutual_information(table, x, y) for x, y in combinations(groups, 2)
                )
                alt_value = ("interval", round(lo, 10), round(hi, 10))
            assert _value_of(table, a) == alt_value, str(a)


# ---------------------------------------------------------------------------
# Distributivity gap and the 3-variable identity
# ---------------------------------------------------------------------------


def test_delta_h_xor(xor):
    assert ia.delta_H(xor, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_delta_h_copies(copies):
    assert ia.delta_H(copies, 1.0) == pytest.approx(0.0, abs=1e-12)


def test_delta_h_two_coins_copy(two_coins):
    assert ia.delta_H(two_coins, 0.0) == pytest.approx(0.0, abs=1e-12)


def test_delta_h_rejects_infeasible(xor):
    with pytest.raises(ia.InfeasibleRedundancy):
        ia.delta_H(xor, 0.5)
    with pytest.raises(ia.InfeasibleRedundancy):
        ia.delta_H(xor, -0.5)


def test_delta_h_wrong_arity():
    t = ia.random_table("arity", [2, 2])
    with pytest.raises(ia.WrongArity):
        ia.delta_H(t, 0.0)


def test_delta_h_invariant_under_variable_permutations():
    base = ia.random_table("perm", [2, 3, 2])
    lo, _hi = ia.redundancy_bounds(base)
    values = []
    for perm in permutations(range(3)):
        pmf = {tuple(o[i] for i in perm): p for o, p in base.pmf().items()}
        t = ia.ProbTable.from_pmf(("A", "B", "C"), pmf)
        values.append(ia.delta_H(t, lo))
    assert max(values) - min(values) <= 1e-12


def test_delta_h_nonnegative_on_random_tables():
    for seed in range(50):
        t = ia.random_table(f"dh:{seed}", [2, 2, 2])
        lo, hi = ia.redundancy_bounds(t)
        assert ia.delta_H(t, lo) >= -1e-9
        assert ia.delta_H(t, hi) >= -1e-9


def test_inclusion_exclusion3_xor(xor):
    assert ia.check_inclusion_exclusion3(xor, 0.0) == pytest.approx(0.0, abs=1e-12)


def test_inclusion_exclusion3_residual_vanishes_on_random_tables():
    # Both sides evaluated independently from the raw pmf as the oracle.
    worst = 0.0
    for seed in range(1000):
        t = ia.random_table(f"ie3:{seed}", [2, 2, 2])
        pmf = t.pmf()
        lo, hi = oracle_interval(pmf)
        u = (seed * 0.6180339887498949) % 1.0
        r = lo + u * (hi - lo)
        residual = ia.check_inclusion_exclusion3(t, r)
        worst = max(worst, abs(residual))
        i3 = oracle_interaction(pmf, [(0,), (1,), (2,)])
        direct = oracle_entropy(pmf, (0, 1, 2)) - (
            oracle_entropy(pmf, (0,))
            + oracle_entropy(pmf, (1,))
            + oracle_entropy(pmf, (2,))
            - oracle_mi(pmf, (0,), (1,))
            - oracle_mi(pmf, (0,), (2,))
            - oracle_mi(pmf, (1,), (2,))
            + r
            - (r - i3)
        )
        assert residual == pytest.approx(direct, abs=1e-12)
    assert worst < 1e-9


def test_term_value_shape():
    tv = ia.TermValue.exact(1.5, ("R2(a<=b)",))
    assert tv.kind == "exact" and tv.bounds == (1.5, 1.5)
    tv = ia.TermValue.interval(0.0, 1.0)
    assert tv.kind == "interval" and tv.value is None
    assert math.isfinite(tv.bounds[1])
