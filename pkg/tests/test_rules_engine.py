"""Rule file parsing, validation errors, evaluation, and the
brute-force oracle comparison."""

import random

import pytest

from naive_eval import naive_lint
from vizlint.facts import Fact, FactBase
from vizlint.rules import (
    LintError,
    RuleSemanticError,
    RuleSyntaxError,
    Violation,
    explain,
    lint,
    load_default_catalog,
    parse_rules,
)
from vizlint.spec_model import AGGREGATES, CHANNELS, MARKS, STACKS, TYPES

MINIMAL = """
%! version 1

%@category I1
%@describe Do not bin and aggregate together
%@action REMOVE_BIN(C)
%@action REMOVE_AGGREGATE(C)
hard(bin_and_aggregate, C) :- bin(E, _), aggregate(E, _), channel(E, C).
"""


def facts(*items) -> FactBase:
    return FactBase(Fact(p, tuple(a)) for p, a in items)


def test_parse_minimal_catalog():
    catalog = parse_rules(MINIMAL)
    assert [r.id for r in catalog.rules] == ["bin_and_aggregate"]
    rule = catalog.rules[0]
    assert rule.category == "I1"
    assert rule.head_params == ("C",)
    assert [str(a) for a in rule.actions] == ["REMOVE_BIN(C)", "REMOVE_AGGREGATE(C)"]


def test_lint_minimal_catalog():
    catalog = parse_rules(MINIMAL)
    base = facts(
        ("encoding", ["e0"]),
        ("bin", ["e0", 10]),
        ("aggregate", ["e0", "mean"]),
        ("channel", ["e0", "y"]),
    )
    got = lint(base, catalog)
    assert [v.key() for v in got] == ["bin_and_aggregate(C=y)"]


def test_no_duplicate_violations_for_multiple_derivations():
    text = MINIMAL + """
%@category I1
%@describe Aggregated channel
%@action REMOVE_AGGREGATE(C)
hard(agg, C) :- aggregate(E, _), channel(E, C).
"""
    catalog = parse_rules(text)
    base = facts(
        ("channel", ["e0", "y"]),
        ("aggregate", ["e0", "mean"]),
        ("channel", ["e1", "y"]),
        ("aggregate", ["e1", "sum"]),
    )
    got = [v.key() for v in lint(base, catalog)]
    # two encodings derive the same binding; one violation survives
    assert got.count("agg(C=y)") == 1


def test_syntax_error_carries_position():
    with pytest.raises(RuleSyntaxError) as err:
        parse_rules("hard(broken, C) :- channel(E, C\n")
    assert "line 1" in str(err.value)


def test_unknown_predicate_rejected():
    bad = MINIMAL.replace("bin(E, _)", "binned(E, _)")
    with pytest.raises(RuleSemanticError, match="binned"):
        parse_rules(bad)


def test_duplicate_rule_id_rejected():
    with pytest.raises(RuleSemanticError, match="duplicate"):
        parse_rules(MINIMAL + MINIMAL.replace("%! version 1", ""))


def test_unsafe_head_variable_rejected():
    text = """
%@category I1
%@describe Unsafe
%@action REMOVE_CHANNEL(C)
hard(unsafe, C) :- not log(E).
"""
    with pytest.raises(RuleSemanticError):
        parse_rules(text)


def test_negation_cycle_rejected():
    text = """
p(X) :- channel(X, _), not q(X).
q(X) :- channel(X, _), not p(X).
"""
    with pytest.raises(RuleSemanticError, match="strat"):
        parse_rules(text)


def test_annotations_on_aux_rule_rejected():
    text = """
%@category I1
%@describe Annotated helper
aux(X) :- channel(X, _).
"""
    with pytest.raises(RuleSemanticError):
        parse_rules(text)


def test_missing_annotations_rejected():
    with pytest.raises(RuleSemanticError):
        parse_rules("hard(bare, C) :- channel(E, C).\n")


def test_arity_mismatch_rejected():
    bad = MINIMAL + "\nextra(X) :- channel(X).\n"
    with pytest.raises(RuleSemanticError, match="arity"):
        parse_rules(bad)


def test_comparison_on_unbound_variable_rejected():
    text = """
%@category I1
%@describe Unbound compare
%@action REMOVE_CHANNEL(C)
hard(cmp, C) :- channel(E, C), N > 3.
"""
    with pytest.raises(RuleSemanticError):
        parse_rules(text)


def test_ordering_comparison_on_symbols_is_false():
    text = """
%@category I1
%@describe Orders cardinalities
%@action REMOVE_CHANNEL(C)
hard(big, C) :- channel(E, C), field(E, F), cardinality(F, N), N > 5.
"""
    catalog = parse_rules(text)
    base = facts(
        ("channel", ["e0", "x"]),
        ("field", ["e0", "f"]),
        ("cardinality", ["f", "many"]),
    )
    assert lint(base, catalog) == ()
    base = facts(
        ("channel", ["e0", "x"]),
        ("field", ["e0", "f"]),
        ("cardinality", ["f", 9]),
    )
    assert [v.key() for v in lint(base, catalog)] == ["big(C=x)"]


def test_default_catalog_shape(catalog):
    assert len(catalog.rules) == 41
    ids = [r.id for r in catalog.rules]
    assert len(set(ids)) == 41
    assert all(r.category in ("I1", "I2", "I3", "I4") for r in catalog.rules)
    assert all(1 <= len(r.actions) <= 5 for r in catalog.rules)
    # catalog is ordered by issue group
    cats = [r.category for r in catalog.rules]
    assert cats == sorted(cats, key=("I1", "I2", "I3", "I4").index)


def test_explain_renders_bindings(catalog):
    violation = Violation("bin_and_aggregate", (("C", "y"),))
    assert explain(violation, catalog) == (
        "Use both binning and aggregation on the data at the same time"
        " is illegal (channel y)"
    )


def test_explain_without_params(catalog):
    violation = Violation("count_on_x_and_y", ())
    assert explain(violation, catalog) == (
        "x-axis and y-axis cannot perform count aggregation simultaneously"
    )


def test_explain_unknown_rule(catalog):
    with pytest.raises(LintError):
        explain(Violation("no_such_rule", ()), catalog)


# --- randomized comparison against the brute-force evaluator ---------------


def random_fact_base(rng: random.Random) -> FactBase:
    out = []
    n_enc = rng.randint(0, 3)
    fields = [f"f{i}" for i in range(rng.randint(1, 3))]
    if rng.random() < 0.85:
        out.append(Fact("mark", (rng.choice(MARKS),)))
    else:
        out.append(Fact("raw_mark", ("pont",)))
    for i in range(n_enc):
        e = f"e{i}"
        out.append(Fact("encoding", (e,)))
        if rng.random() < 0.9:
            out.append(Fact("channel", (e, rng.choice(CHANNELS))))
        else:
            out.append(Fact("raw_channel", (e, "colour")))
        if rng.random() < 0.7:
            out.append(Fact("field", (e, rng.choice(fields))))
        elif rng.random() < 0.2:
            out.append(Fact("unknown_field", (e, "ghost")))
        if rng.random() < 0.6:
            out.append(Fact("type", (e, rng.choice(TYPES))))
        if rng.random() < 0.4:
            out.append(Fact("aggregate", (e, rng.choice(AGGREGATES))))
        if rng.random() < 0.25:
            out.append(Fact("bin", (e, rng.choice([10, "default"]))))
        if rng.random() < 0.2:
            out.append(Fact("log", (e,)))
        if rng.random() < 0.2:
            out.append(Fact(rng.choice(["zero", "no_zero"]), (e,)))
        if rng.random() < 0.25:
            out.append(Fact("stack", (e, rng.choice(STACKS[:3]))))
        if rng.random() < 0.1:
            out.append(Fact("raw_stack", (e, "stacked")))
    for f in fields:
        if rng.random() < 0.8:
            out.append(Fact("fieldtype", (f, rng.choice(TYPES))))
        if rng.random() < 0.6:
            out.append(Fact("cardinality", (f, rng.randint(1, 40))))
        if rng.random() < 0.3:
            out.append(Fact("has_nonpositive", (f,)))
    rng.shuffle(out)
    return FactBase(out[:30])


def test_engine_matches_naive_evaluator_200_trials():
    catalog = load_default_catalog()
    rng = random.Random(20240817)
    mismatches = []
    for trial in range(200):
        base = random_fact_base(rng)
        assert len(base) <= 30
        engine = {(v.rule_id, v.bindings) for v in lint(base, catalog)}
        oracle = naive_lint(catalog, base)
        if engine != oracle:
            mismatches.append((trial, engine ^ oracle, base.to_text()))
    assert not mismatches, mismatches[:3]
