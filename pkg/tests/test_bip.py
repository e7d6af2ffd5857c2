"""Solver checks against an exhaustive subset-enumeration oracle."""

import random
from fractions import Fraction

import pytest

from vizlint import Assignment, InfeasibleError, solve


def oracle_best(groups, scores):
    """Max objective over all 2^n candidate subsets, None if infeasible.

    A subset is feasible when every group contains exactly one selected
    class. The objective counts each selected class once per group that
    lists it.
    """
    classes = sorted({c for _, cands in groups for c in cands})
    occurrence = {
        c: sum(c in set(cands) for _, cands in groups) for c in classes
    }
    best = None
    for bits in range(1 << len(classes)):
        chosen = {classes[i] for i in range(len(classes)) if bits >> i & 1}
        if not all(
            sum(c in chosen for c in set(cands)) == 1 for _, cands in groups
        ):
            continue
        value = sum(scores[c] * occurrence[c] for c in chosen)
        if best is None or value > best:
            best = value
    return best


def check_assignment(groups, scores, result: Assignment):
    selected = set(result.selected)
    total = 0
    for label, cands in groups:
        inside = [c for c in dict.fromkeys(cands) if c in selected]
        assert inside == [result.per_group[label]], label
        total += scores[result.per_group[label]]
    assert total == result.objective


def random_instance(rng: random.Random):
    n_classes = rng.randint(2, 12)
    classes = [f"c{i}" for i in range(n_classes)]
    scores = {c: Fraction(rng.randint(-100, 200), 100) for c in classes}
    groups = []
    for gi in range(rng.randint(1, 6)):
        size = rng.randint(1, min(4, n_classes))
        groups.append((f"g{gi}", rng.sample(classes, size)))
    return groups, scores


def test_matches_exhaustive_oracle_on_100_random_instances():
    rng = random.Random(8823)
    feasible = infeasible = 0
    for _ in range(100):
        groups, scores = random_instance(rng)
        expected = oracle_best(groups, scores)
        if expected is None:
            with pytest.raises(InfeasibleError):
                solve(groups, scores)
            infeasible += 1
            continue
        result = solve(groups, scores)
        assert result.objective == expected
        check_assignment(groups, scores, result)
        feasible += 1
    assert feasible + infeasible == 100
    assert feasible > 0 and infeasible > 0


def test_shared_candidate_counts_once_per_group():
    groups = [("g1", ["a", "b"]), ("g2", ["a", "c"])]
    scores = {
        "a": Fraction(1, 2),
        "b": Fraction(2, 5),
        "c": Fraction(3, 10),
    }
    result = solve(groups, scores)
    assert result.selected == ("a",)
    assert result.objective == Fraction(1, 1)
    assert result.per_group == {"g1": "a", "g2": "a"}


def test_ties_resolve_to_first_candidate_in_group_order():
    groups = [("g1", ["a", "b"])]
    scores = {"a": Fraction(1, 2), "b": Fraction(1, 2)}
    assert solve(groups, scores).selected == ("a",)


def test_negative_scores_still_require_full_cover():
    # exactly-one is a constraint, not an option: a lone negative
    # candidate must still be taken
    groups = [("g1", ["a"])]
    scores = {"a": Fraction(-1, 2)}
    result = solve(groups, scores)
    assert result.selected == ("a",)
    assert result.objective == Fraction(-1, 2)


def test_infeasible_chain_names_blocked_group():
    # a must cover g1 and g2; g3 then needs b, which would double-cover g2
    groups = [("g1", ["a"]), ("g2", ["a", "b"]), ("g3", ["b"])]
    scores = {"a": Fraction(1), "b": Fraction(1)}
    with pytest.raises(InfeasibleError) as err:
        solve(groups, scores)
    assert "g3" in err.value.groups
    assert err.value.groups[0] == "g3"


def test_empty_groups_yield_empty_assignment():
    result = solve([], {})
    assert result == Assignment((), 0, {})


def test_empty_candidate_list_rejected():
    with pytest.raises(ValueError):
        solve([("g1", [])], {})


def test_unscored_candidate_rejected():
    with pytest.raises(ValueError):
        solve([("g1", ["a"])], {})
