"""Repair planning: turn violations into an optimal set of spec edits.

Pipeline per pass: instantiate each violation's repair templates into
concrete actions, score every distinct action by simulating it and
re-linting, widen candidate lists with cross-solving actions, solve the
exactly-one selection program, apply the winners, and re-lint.

Scoring uses exact rational arithmetic; weights and costs from the
config file are converted through their decimal string form so results
are reproducible to the last digit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any, Iterable

from . import bip
from .actions import (
    Action,
    ActionError,
    TABLE1,
    action_sort_key,
    apply_action,
    edit_distance,
    nearest_token,
)
from .facts import extract_facts
from .profiling import DatasetProfile
from .rules import ActionTemplate, RuleCatalog, Violation, lint, load_default_catalog
from .spec_model import (
    AGGREGATES,
    CHANNELS,
    MARKS,
    STACKS,
    TYPES,
    ChartSpec,
    DiffEntry,
    VizlintError,
    diff_specs,
    diff_to_json,
    spec_to_dict,
)


class FixError(VizlintError):
    pass


def _frac(value: Any) -> Fraction:
    # exact decimal reading; float reprs round-trip through str
    return value if isinstance(value, Fraction) else Fraction(str(value))


@dataclass(frozen=True)
class Weights:
    w: Fraction = Fraction("0.05")
    alpha: Fraction = Fraction("0.8")
    beta: Fraction = Fraction("0.2")


@dataclass(frozen=True)
class FixConfig:
    weights: Weights = field(default_factory=Weights)
    costs: dict[str, Fraction] = field(default_factory=dict)
    bin_default: int = 10
    max_passes: int = 1

    def cost_of(self, action_name: str) -> Fraction:
        try:
            return self.costs[action_name]
        except KeyError:
            raise FixError(f"no cost configured for action {action_name}") from None


@lru_cache(maxsize=1)
def _default_config_text() -> str:
    return resources.files("vizlint").joinpath("catalog/costs.json").read_text()


def load_config(overrides: dict | None = None) -> FixConfig:
    """Built-in weights and costs, optionally overridden per key."""
    base = json.loads(_default_config_text())
    data = dict(base)
    if overrides:
        for key in ("weights", "costs"):
            if key in overrides:
                merged = dict(base.get(key, {}))
                merged.update(overrides[key])
                data[key] = merged
        for key in ("bin_default", "max_passes"):
            if key in overrides:
                data[key] = overrides[key]
    weights = Weights(
        w=_frac(data["weights"]["w"]),
        alpha=_frac(data["weights"]["alpha"]),
        beta=_frac(data["weights"]["beta"]),
    )
    costs = {name: _frac(v) for name, v in data["costs"].items()}
    missing = [name for name in TABLE1 if name not in costs]
    if missing:
        raise FixError(f"cost table is missing actions: {', '.join(missing)}")
    return FixConfig(
        weights=weights,
        costs=costs,
        bin_default=int(data["bin_default"]),
        max_passes=int(data["max_passes"]),
    )


@dataclass(frozen=True)
class ScoredAction:
    action: Action
    reward_plus: Fraction
    reward_minus: Fraction
    reward: Fraction
    cost: Fraction
    score: Fraction
    solved: frozenset[Violation]
    introduced: frozenset[Violation]

    def to_json(self) -> dict:
        out = self.action.to_json()
        out.update(
            reward=float(self.reward),
            cost=float(self.cost),
            score=float(self.score),
        )
        return out


@dataclass(frozen=True)
class FixPlan:
    selected: tuple[ScoredAction, ...]
    objective: Fraction
    per_rule: dict[str, str]
    revised_spec: ChartSpec
    residuals: tuple[Violation, ...]
    unfixable: tuple[Violation, ...]
    alternatives: dict[str, tuple[ScoredAction, ...]]
    diff: tuple[DiffEntry, ...]
    skipped: tuple[Action, ...] = ()

    @property
    def selected_actions(self) -> tuple[Action, ...]:
        return tuple(s.action for s in self.selected)

    def to_json(self) -> dict:
        return {
            "selected": [s.to_json() for s in self.selected],
            "objective": float(self.objective),
            "per_rule": dict(self.per_rule),
            "revised_spec": spec_to_dict(self.revised_spec),
            "residuals": [v.to_json() for v in self.residuals],
            "unfixable": [v.to_json() for v in self.unfixable],
            "alternatives": {
                key: [s.to_json() for s in ranked]
                for key, ranked in self.alternatives.items()
            },
            "diff": diff_to_json(self.diff),
            "skipped": [a.to_json() for a in self.skipped],
        }


# --- template instantiation -------------------------------------------------

_FIELD_TYPE_ARGS = frozenset(["quantitative", "nominal", "ordinal", "temporal"])


def _columns(profile: DatasetProfile | None, type_filter: str | None) -> list[str]:
    if profile is None:
        return []
    return [
        c.name
        for c in profile.columns
        if type_filter is None or c.type == type_filter
    ]


def _resolve_target(arg: str, bindings: dict[str, Any]) -> str:
    # a head parameter resolves to its bound value, anything else is literal
    value = bindings.get(arg, arg)
    return str(value)


def _current_encoding(spec: ChartSpec, channel: str):
    return spec.encoding_for(channel)


def _instantiate_template(
    template: ActionTemplate,
    violation: Violation,
    spec: ChartSpec,
    profile: DatasetProfile | None,
    config: FixConfig,
) -> list[Action]:
    bindings = dict(violation.bindings)
    name = template.name

    def enc(channel: str):
        return _current_encoding(spec, channel)

    if name in ("CHANGE_MARK", "CORRECT_MARK"):
        current = spec.mark.canonical
        if name == "CORRECT_MARK":
            if current is not None:
                return []
            return [Action(name, None, nearest_token(str(spec.mark.raw), MARKS))]
        arg = template.args[0]
        marks = [m for m in MARKS if m != current] if arg == "*" else [arg]
        return [Action(name, None, m) for m in marks if m != current]

    if name == "ADD_CHANNEL":
        channel = _resolve_target(template.args[0], bindings)
        if enc(channel) is not None:
            return []
        filt = template.args[1] if template.args[1] in _FIELD_TYPE_ARGS else None
        cols = _columns(profile, filt)
        return [Action(name, channel, col) for col in cols]

    if name == "REMOVE_BIN" and template.args[0] == "*":
        # one candidate per binned encoding, in declaration order
        return [
            Action(name, e.channel_key())
            for e in spec.encodings
            if e.bin is not None
        ]

    # every remaining action targets an existing encoding
    channel = _resolve_target(template.args[0], bindings)
    encoding = enc(channel)
    if encoding is None:
        return []

    if name == "CHANGE_CHANNEL":
        occupied = spec.occupied_channels()
        arg = template.args[1]
        targets = [c for c in CHANNELS if c not in occupied] if arg == "*" else [arg]
        return [
            Action(name, channel, t)
            for t in targets
            if t != channel and t not in occupied
        ]

    if name == "CORRECT_CHANNEL":
        free = [c for c in sorted(CHANNELS) if c not in spec.occupied_channels()]
        if not free:
            return []
        best = min(free, key=lambda c: edit_distance(channel, c))
        return [Action(name, channel, best)]

    if name in ("ADD_FIELD", "CHANGE_FIELD"):
        if name == "ADD_FIELD" and encoding.field is not None:
            return []
        if name == "CHANGE_FIELD" and encoding.field is None:
            return []
        filt = template.args[1] if template.args[1] in _FIELD_TYPE_ARGS else None
        cols = [c for c in _columns(profile, filt) if c != encoding.field]
        if violation.rule_id == "unknown_field" and "F" in bindings:
            raw = str(bindings["F"])
            order = {c: i for i, c in enumerate(cols)}
            cols.sort(key=lambda c: (edit_distance(raw, c), order[c]))
        return [Action(name, channel, col) for col in cols]

    if name == "REMOVE_FIELD":
        return [] if encoding.field is None else [Action(name, channel)]

    if name == "CHANGE_TYPE":
        current = encoding.type.canonical if encoding.type else None
        if template.args[1] == "data":
            if profile is None or encoding.field is None:
                return []
            col = profile.get(encoding.field)
            if col is None or col.type == current:
                return []
            return [Action(name, channel, col.type)]
        types = [t for t in TYPES if t != current] if template.args[1] == "*" else [template.args[1]]
        return [Action(name, channel, t) for t in types]

    if name == "CORRECT_TYPE":
        if encoding.type is None or encoding.type.canonical is not None:
            return []
        if profile is not None and encoding.field is not None:
            col = profile.get(encoding.field)
            if col is not None:
                return [Action(name, channel, col.type)]
        return [Action(name, channel, nearest_token(encoding.type.raw, TYPES))]

    if name == "BIN":
        return [] if encoding.bin is not None else [Action(name, channel)]

    if name == "REMOVE_BIN":
        return [] if encoding.bin is None else [Action(name, channel)]

    if name == "CORRECT_BIN":
        if encoding.bin is None or encoding.bin.valid:
            return []
        return [Action(name, channel, config.bin_default)]

    if name == "AGGREGATE":
        if encoding.aggregate is not None:
            return []
        return [Action(name, channel, template.args[1])]

    if name == "CHANGE_AGGREGATE":
        if encoding.aggregate is None:
            return []
        current = encoding.aggregate.canonical
        arg = template.args[1]
        if arg == "*":
            values = [a for a in AGGREGATES if a != current]
        else:
            values = [arg] if arg != current else []
        return [Action(name, channel, v) for v in values]

    if name == "CORRECT_AGGREGATE":
        if encoding.aggregate is None or encoding.aggregate.canonical is not None:
            return []
        return [Action(name, channel, nearest_token(encoding.aggregate.raw, AGGREGATES))]

    if name == "REMOVE_AGGREGATE":
        return [] if encoding.aggregate is None else [Action(name, channel)]

    if name == "STACK":
        if encoding.stack is not None and encoding.stack.canonical is not None:
            return []
        values = [s for s in STACKS if s != "none"]
        if encoding.stack is not None:
            raw = encoding.stack.raw if isinstance(encoding.stack.raw, str) else ""
            order = {v: i for i, v in enumerate(values)}
            values.sort(key=lambda v: (edit_distance(raw, v), order[v]))
        elif template.args[1] != "*":
            values = [template.args[1]]
        return [Action(name, channel, v) for v in values]

    if name == "REMOVE_STACK":
        return [] if encoding.stack is None else [Action(name, channel)]

    if name == "LOG":
        return [] if encoding.log else [Action(name, channel)]

    if name == "REMOVE_LOG":
        return [Action(name, channel)] if encoding.log else []

    if name == "ZERO":
        return [] if encoding.zero is True else [Action(name, channel)]

    if name == "REMOVE_ZERO":
        return [Action(name, channel)] if encoding.zero is not None else []

    if name == "REMOVE_CHANNEL":
        return [Action(name, channel)]

    raise FixError(f"template for unknown action {name}")


def instantiate_candidates(
    spec: ChartSpec,
    violations: Iterable[Violation],
    profile: DatasetProfile | None,
    catalog: RuleCatalog,
    config: FixConfig,
) -> dict[Violation, list[Action]]:
    """Expand each violation's repair templates into concrete actions."""
    out: dict[Violation, list[Action]] = {}
    for violation in violations:
        rule = catalog.rule(violation.rule_id)
        seen: set[Action] = set()
        actions: list[Action] = []
        for template in rule.actions:
            for action in _instantiate_template(template, violation, spec, profile, config):
                if action not in seen:
                    seen.add(action)
                    actions.append(action)
        out[violation] = actions
    return out


# --- scoring ----------------------------------------------------------------


def score_sets(
    before: frozenset,
    after: frozenset,
    cost: Fraction,
    weights: Weights,
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Exact (reward_plus, reward_minus, reward, score) for one transition.

    reward_plus is the fraction of the original violations solved;
    reward_minus the fraction of the resulting set that is new, zero
    when nothing remains.
    """
    solved = before - after
    introduced = after - before
    reward_plus = Fraction(len(solved), len(before)) if before else Fraction(0)
    reward_minus = Fraction(len(introduced), len(after)) if after else Fraction(0)
    reward = reward_plus - weights.w * reward_minus
    score = weights.alpha * reward - weights.beta * cost
    return reward_plus, reward_minus, reward, score


def score_action(
    action: Action,
    spec: ChartSpec,
    baseline: frozenset[Violation],
    profile: DatasetProfile | None,
    catalog: RuleCatalog,
    config: FixConfig,
) -> ScoredAction | None:
    """Simulate one action and measure its effect; None when inapplicable."""
    try:
        revised = apply_action(spec, action)
    except ActionError:
        return None
    after = frozenset(lint(extract_facts(revised, profile), catalog))
    cost = config.cost_of(action.name)
    reward_plus, reward_minus, reward, score = score_sets(
        baseline, after, cost, config.weights
    )
    return ScoredAction(
        action=action,
        reward_plus=reward_plus,
        reward_minus=reward_minus,
        reward=reward,
        cost=cost,
        score=score,
        solved=baseline - after,
        introduced=after - baseline,
    )


def expand_candidates(
    candidates: dict[Violation, list[Action]],
    scored: dict[Action, ScoredAction],
) -> dict[Violation, list[Action]]:
    """Widen candidate lists with actions that happen to solve them too."""
    out = {v: list(actions) for v, actions in candidates.items()}
    scanned: set[Action] = set()
    for actions in candidates.values():
        for action in actions:
            if action in scanned or action not in scored:
                continue
            scanned.add(action)
            for solved_violation in scored[action].solved:
                if solved_violation in out and action not in out[solved_violation]:
                    out[solved_violation].append(action)
    return out


# --- planning ---------------------------------------------------------------


def _class_id(action: Action) -> str:
    return f"{action.name}|{action.channel!r}|{action.value!r}"


def _single_pass(
    spec: ChartSpec,
    violations: tuple[Violation, ...],
    profile: DatasetProfile | None,
    catalog: RuleCatalog,
    config: FixConfig,
) -> tuple[tuple[ScoredAction, ...], Fraction, dict[str, str], dict[str, tuple[ScoredAction, ...]], tuple[Violation, ...], ChartSpec, tuple[Action, ...]]:
    baseline = frozenset(violations)
    candidates = instantiate_candidates(spec, violations, profile, catalog, config)

    scored: dict[Action, ScoredAction] = {}
    for actions in candidates.values():
        for action in actions:
            if action not in scored:
                result = score_action(action, spec, baseline, profile, catalog, config)
                if result is not None:
                    scored[action] = result
    # drop candidates that failed to apply
    candidates = {
        v: [a for a in actions if a in scored] for v, actions in candidates.items()
    }
    candidates = expand_candidates(candidates, scored)

    unfixable = tuple(v for v in violations if not candidates[v])
    solvable = [v for v in violations if candidates[v]]

    alternatives = {
        v.key(): tuple(
            sorted((scored[a] for a in candidates[v]), key=lambda s: s.score, reverse=True)
        )
        for v in violations
    }

    if not solvable:
        return ((), Fraction(0), {}, alternatives, unfixable, spec, ())

    groups = [(v.key(), [_class_id(a) for a in candidates[v]]) for v in solvable]
    scores = {}
    class_to_action: dict[str, Action] = {}
    for v in solvable:
        for a in candidates[v]:
            cid = _class_id(a)
            scores[cid] = scored[a].score
            class_to_action[cid] = a

    assignment = bip.solve(groups, scores)

    chosen = sorted(
        {class_to_action[cid] for cid in assignment.selected},
        key=action_sort_key,
    )
    revised = spec
    applied: list[ScoredAction] = []
    skipped: list[Action] = []
    for action in chosen:
        try:
            revised = apply_action(revised, action)
            applied.append(scored[action])
        except ActionError:
            # a prior edit in this plan consumed the target
            skipped.append(action)
    per_rule = {
        label: str(class_to_action[cid]) for label, cid in assignment.per_group.items()
    }
    return (
        tuple(applied),
        assignment.objective,
        per_rule,
        alternatives,
        unfixable,
        revised,
        tuple(skipped),
    )


def fix(
    spec: ChartSpec,
    profile: DatasetProfile | None = None,
    catalog: RuleCatalog | None = None,
    config: FixConfig | None = None,
) -> FixPlan:
    """Plan and apply the optimal repair for every detected violation."""
    if catalog is None:
        catalog = load_default_catalog()
    if config is None:
        config = load_config()

    violations = lint(extract_facts(spec, profile), catalog)
    if not violations:
        return FixPlan(
            selected=(),
            objective=Fraction(0),
            per_rule={},
            revised_spec=spec,
            residuals=(),
            unfixable=(),
            alternatives={},
            diff=(),
        )

    selected: list[ScoredAction] = []
    objective = Fraction(0)
    per_rule: dict[str, str] = {}
    alternatives: dict[str, tuple[ScoredAction, ...]] = {}
    unfixable: tuple[Violation, ...] = ()
    skipped: list[Action] = []
    current = spec
    remaining = violations

    for _ in range(max(1, config.max_passes)):
        if not remaining:
            break
        acts, obj, per, alts, unfix, revised, skip = _single_pass(
            current, remaining, profile, catalog, config
        )
        selected.extend(acts)
        objective += obj
        per_rule.update(per)
        for key, ranked in alts.items():
            alternatives.setdefault(key, ranked)
        unfixable = unfix
        skipped.extend(skip)
        if revised == current and not acts:
            break
        current = revised
        remaining = lint(extract_facts(current, profile), catalog)

    residuals = lint(extract_facts(current, profile), catalog)
    return FixPlan(
        selected=tuple(selected),
        objective=objective,
        per_rule=per_rule,
        revised_spec=current,
        residuals=residuals,
        unfixable=unfixable,
        alternatives=alternatives,
        diff=diff_specs(spec, current),
        skipped=tuple(skipped),
    )
