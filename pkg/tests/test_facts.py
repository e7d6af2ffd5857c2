"""Fact extraction: vocabulary, suppression behavior, size bound."""

from hypothesis import given, strategies as st

from vizlint.facts import FACT_PREDICATES, Fact, extract_facts, fact_count_bound
from vizlint.profiling import profile_dataset
from vizlint.spec_model import CHANNELS, MARKS, parse_spec_dict


def keys(facts):
    return {(f.predicate, f.args) for f in facts}


def test_every_emitted_predicate_is_in_the_vocabulary(cars):
    spec = parse_spec_dict(
        {
            "mark": "pont",
            "encoding": {
                "x": {"field": "Horsepower", "type": "quant", "bin": {"maxbins": -1}},
                "colour": {"field": "Nope", "aggregate": "avg", "stack": "stck"},
                "y": {"field": "Miles_per_Gallon", "type": "quantitative",
                      "scale": {"type": "log"}},
            },
        }
    )
    for f in extract_facts(spec, cars):
        assert f.predicate in FACT_PREDICATES
        assert len(f.args) == FACT_PREDICATES[f.predicate]


def test_valid_spec_extraction_content(cars):
    spec = parse_spec_dict(
        {
            "mark": "bar",
            "encoding": {
                "x": {"field": "Origin", "type": "nominal"},
                "y": {"field": "Horsepower", "type": "quantitative",
                      "aggregate": "mean", "stack": "zero",
                      "scale": {"zero": False}},
            },
        }
    )
    got = keys(extract_facts(spec, cars))
    assert ("mark", ("bar",)) in got
    assert ("channel", ("e0", "x")) in got
    assert ("field", ("e1", "Horsepower")) in got
    assert ("aggregate", ("e1", "mean")) in got
    assert ("stack", ("e1", "zero")) in got
    assert ("no_zero", ("e1",)) in got
    assert ("fieldtype", ("Horsepower", "quantitative")) in got
    assert ("cardinality", ("Origin", 3)) in got


def test_raw_mark_suppresses_mark():
    spec = parse_spec_dict({"mark": "pont", "encoding": {}})
    got = keys(extract_facts(spec))
    assert ("raw_mark", ("pont",)) in got
    assert not any(p == "mark" for p, _ in got)


def test_raw_channel_suppresses_channel():
    spec = parse_spec_dict({"mark": "point", "encoding": {"colour": {"field": "a"}}})
    got = keys(extract_facts(spec))
    assert ("raw_channel", ("e0", "colour")) in got
    assert not any(p == "channel" for p, _ in got)


def test_unknown_field_replaces_field(cars):
    spec = parse_spec_dict(
        {"mark": "point", "encoding": {"x": {"field": "Horsepwr"}}}
    )
    got = keys(extract_facts(spec, cars))
    assert ("unknown_field", ("e0", "Horsepwr")) in got
    assert not any(p == "field" for p, _ in got)
    # without a profile the same spec emits a plain field fact
    got = keys(extract_facts(spec))
    assert ("field", ("e0", "Horsepwr")) in got


def test_zero_state_suppressed_under_log():
    spec = parse_spec_dict(
        {
            "mark": "point",
            "encoding": {"y": {"field": "a", "scale": {"type": "log", "zero": True}}},
        }
    )
    got = keys(extract_facts(spec))
    assert ("log", ("e0",)) in got
    assert not any(p in ("zero", "no_zero") for p, _ in got)


def test_invalid_bin_becomes_raw_bin():
    spec = parse_spec_dict(
        {"mark": "point", "encoding": {"x": {"field": "a", "bin": {"maxbins": 0}}}}
    )
    got = keys(extract_facts(spec))
    assert ("raw_bin", ("e0", 0)) in got
    assert not any(p == "bin" for p, _ in got)


def test_bare_bin_uses_default_sentinel():
    spec = parse_spec_dict({"mark": "point", "encoding": {"x": {"field": "a", "bin": True}}})
    assert ("bin", ("e0", "default")) in keys(extract_facts(spec))


def test_stack_none_emits_no_stack_fact():
    spec = parse_spec_dict(
        {"mark": "bar", "encoding": {"y": {"field": "a", "stack": None}}}
    )
    assert not any(f.predicate == "stack" for f in extract_facts(spec))


def test_fact_base_deduplicates():
    base = extract_facts(parse_spec_dict({"mark": "point", "encoding": {}}))
    n = len(base)
    base.add(Fact("mark", ("point",)))
    assert len(base) == n


_channels = st.lists(st.sampled_from(CHANNELS), min_size=0, max_size=6, unique=True)


@given(
    mark=st.sampled_from(MARKS + ("pont",)),
    channels=_channels,
    with_field=st.booleans(),
)
def test_fact_count_within_bound_property(mark, channels, with_field):
    encoding = {
        ch: ({"field": f"f{i}", "type": "quantitative", "aggregate": "mean",
              "bin": True, "stack": "zero", "scale": {"type": "log", "zero": True}}
             if with_field else {"aggregate": "count"})
        for i, ch in enumerate(channels)
    }
    spec = parse_spec_dict({"mark": mark, "encoding": encoding})
    rows = [{f"f{i}": v for i in range(len(channels))} for v in (1, 2, -3)]
    profile = profile_dataset(rows) if channels and with_field else None
    assert len(extract_facts(spec, profile)) <= fact_count_bound(spec)
