"""Brute-force reference evaluator for rule catalogs.

Enumerates every total assignment of each rule's variables over the
constants in the fact store and checks the body literal by literal.
No join ordering and no stratified semi-naive machinery: the only
concessions to speed are hashed fact lookups and precompiled literal
checks, neither of which changes which assignments are examined.
"""

from itertools import product

from vizlint.rules import Atom, Comparison, Const, Var, Wildcard


def _constants(store):
    out = set()
    for _, args in store:
        out.update(args)
    return sorted(out, key=repr)


def _rule_vars(body):
    seen = []
    for lit in body:
        terms = lit.args if isinstance(lit, Atom) else (lit.left, lit.right)
        for t in terms:
            if isinstance(t, Var) and t.name not in seen:
                seen.append(t.name)
    return seen


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _compile_term(term, index):
    if isinstance(term, Var):
        i = index[term.name]
        return lambda values: values[i]
    if isinstance(term, Const):
        v = term.value
        return lambda values: v
    return None  # wildcard


def _compile_body(body, names):
    """List of check(values, store_set, by_pred) -> bool, one per literal."""
    index = {n: i for i, n in enumerate(names)}
    checks = []
    for lit in body:
        if isinstance(lit, Comparison):
            left = _compile_term(lit.left, index)
            right = _compile_term(lit.right, index)
            op = lit.op

            def cmp_check(values, _s, _b, left=left, right=right, op=op):
                l, r = left(values), right(values)
                if op == "=":
                    return l == r
                if op == "!=":
                    return l != r
                if not (_is_int(l) and _is_int(r)):
                    return False
                if op == "<":
                    return l < r
                if op == "<=":
                    return l <= r
                if op == ">":
                    return l > r
                return l >= r

            checks.append(cmp_check)
            continue

        getters = [_compile_term(t, index) for t in lit.args]
        pred, negated = lit.predicate, lit.negated
        if all(g is not None for g in getters):

            def exact_check(values, store_set, _b, pred=pred, getters=getters, negated=negated):
                hit = (pred, tuple(g(values) for g in getters)) in store_set
                return hit != negated

            checks.append(exact_check)
        else:

            def scan_check(values, _s, by_pred, pred=pred, getters=getters, negated=negated):
                wanted = [None if g is None else g(values) for g in getters]
                for args in by_pred.get(pred, ()):
                    if len(args) == len(wanted) and all(
                        w is None or w == a for w, a in zip(wanted, args)
                    ):
                        return not negated
                return negated

            checks.append(scan_check)
    return checks


def _positive_preds(body):
    return [lit.predicate for lit in body if isinstance(lit, Atom) and not lit.negated]


def _derive(body, names, head_builder, store_set, by_pred, universe):
    if any(p not in by_pred for p in _positive_preds(body)):
        return set()
    checks = _compile_body(body, names)
    out = set()
    for values in product(universe, repeat=len(names)):
        if all(check(values, store_set, by_pred) for check in checks):
            out.add(head_builder(values, {n: v for n, v in zip(names, values)}))
    return out


def _aux_levels(aux_rules):
    level = {}
    for rule in aux_rules:
        level.setdefault(rule.predicate, 0)
    changed = True
    while changed:
        changed = False
        for rule in aux_rules:
            for lit in rule.body:
                if not isinstance(lit, Atom) or lit.predicate not in level:
                    continue
                need = level[lit.predicate] + (1 if lit.negated else 0)
                if need > level[rule.predicate]:
                    level[rule.predicate] = need
                    changed = True
    return level


def _resolve_head(term, binding):
    if isinstance(term, Var):
        return binding[term.name]
    return term.value


def naive_lint(catalog, facts):
    """(rule_id, bindings) pairs derived by exhaustive grounding."""
    store = {(f.predicate, f.args) for f in facts}
    store |= set(catalog.helper_facts)

    def refresh():
        by_pred = {}
        for pred, args in store:
            by_pred.setdefault(pred, []).append(args)
        return by_pred, _constants(store)

    levels = _aux_levels(catalog.aux_rules)
    for lvl in sorted(set(levels.values())):
        rules_here = [r for r in catalog.aux_rules if levels[r.predicate] == lvl]
        while True:
            by_pred, universe = refresh()
            new = set()
            for rule in rules_here:
                heads = _derive(
                    rule.body,
                    _rule_vars(rule.body),
                    lambda vs, b, r=rule: (
                        r.predicate,
                        tuple(_resolve_head(t, b) for t in r.head_args),
                    ),
                    store,
                    by_pred,
                    universe,
                )
                new |= heads - store
            if not new:
                break
            store |= new

    by_pred, universe = refresh()
    found = set()
    for rule in catalog.rules:
        found |= _derive(
            rule.body,
            _rule_vars(rule.body),
            lambda vs, b, r=rule: (r.id, tuple((p, b[p]) for p in r.head_params)),
            store,
            by_pred,
            universe,
        )
    return found
