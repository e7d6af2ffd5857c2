"""Exact solver for the action-selection binary integer program.

Each violation forms a group that must be covered by exactly one of its
candidate actions. Identical actions proposed by different groups
collapse into one decision (the equivalence constraint), so selecting a
shared action covers every group that lists it, and its objective
contribution counts once per covered group.

The search is branch-and-bound over groups in order, trying candidates
in listed order with strict improvement, which makes the returned
optimum the lexicographically smallest one by (group order, candidate
order).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from .spec_model import VizlintError


class InfeasibleError(VizlintError):
    """No assignment satisfies the exactly-one constraints."""

    def __init__(self, message: str, groups: tuple[str, ...] = ()):
        super().__init__(message)
        self.groups = groups


@dataclass(frozen=True)
class Assignment:
    selected: tuple[str, ...]
    objective: Any
    per_group: dict[str, str]


def solve(
    groups: Sequence[tuple[str, Sequence[str]]],
    scores: Mapping[str, Any],
) -> Assignment:
    """Maximize total score over the groups' exactly-one cover.

    groups: (label, candidate class ids) pairs, in priority order.
    scores: per-class score; any mutually comparable numeric works.
    Raises InfeasibleError when the constraints cannot be met and
    ValueError on an empty candidate list.
    """
    if not groups:
        return Assignment((), 0, {})
    for label, cands in groups:
        if not cands:
            raise ValueError(f"group {label!r} has no candidates")
        for c in cands:
            if c not in scores:
                raise ValueError(f"candidate {c!r} of group {label!r} has no score")

    n = len(groups)
    # which groups each class appears in; occurrence = len of that list
    class_groups: dict[str, list[int]] = {}
    for gi, (_, cands) in enumerate(groups):
        seen_local: set[str] = set()
        for c in cands:
            if c in seen_local:
                continue
            seen_local.add(c)
            class_groups.setdefault(c, []).append(gi)

    # optimistic per-group and suffix bounds
    best_in_group = [max(scores[c] for c in cands) for _, cands in groups]
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + best_in_group[i]

    cover = [0] * n
    assigned: list[str | None] = [None] * n
    chosen: list[str] = []
    best: dict[str, Any] = {}
    deepest_fail = -1
    fail_conflicts: set[str] = set()

    def select(c: str) -> bool:
        for g in class_groups[c]:
            if cover[g] == 1:
                return False
        for g in class_groups[c]:
            cover[g] += 1
            assigned[g] = c
        chosen.append(c)
        return True

    def unselect(c: str) -> None:
        chosen.pop()
        for g in class_groups[c]:
            cover[g] -= 1
            if cover[g] == 0:
                assigned[g] = None

    def dfs(i: int, value: Any) -> None:
        nonlocal deepest_fail
        if i == n:
            if not best or value > best["value"]:
                best["value"] = value
                best["chosen"] = list(chosen)
                best["assigned"] = list(assigned)
            return
        if best and value + suffix[i] <= best["value"]:
            return
        if cover[i] == 1:
            dfs(i + 1, value)
            return
        advanced = False
        for c in groups[i][1]:
            if not select(c):
                if i > deepest_fail:
                    deepest_fail = i
                    fail_conflicts.clear()
                if i == deepest_fail:
                    fail_conflicts.update(
                        groups[g][0] for g in class_groups[c] if cover[g] == 1
                    )
                continue
            advanced = True
            dfs(i + 1, value + scores[c] * len(class_groups[c]))
            unselect(c)
        if not advanced and i > deepest_fail:
            deepest_fail = i
            fail_conflicts.clear()

    dfs(0, 0)

    if not best:
        label = groups[deepest_fail][0] if deepest_fail >= 0 else groups[0][0]
        conflicts = tuple(sorted(fail_conflicts))
        detail = f" (conflicts with {', '.join(conflicts)})" if conflicts else ""
        raise InfeasibleError(
            f"no feasible assignment: every candidate of group {label!r} "
            f"is blocked{detail}",
            groups=(label, *conflicts),
        )

    order: list[str] = []
    for c in best["chosen"]:
        if c not in order:
            order.append(c)
    per_group = {groups[g][0]: best["assigned"][g] for g in range(n)}
    return Assignment(tuple(order), best["value"], per_group)
