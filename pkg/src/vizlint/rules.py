"""Rule catalog parsing and bottom-up evaluation over ground facts.

Rule files are plain text, one clause per statement:

    hard(rule_id, Params...) :- literal, literal, ... .
    helper(Args...) :- ... .        auxiliary predicate, usable in bodies
    helper(const).                  helper fact
    some_flag :- channel(_, color). zero-arity predicates are allowed

Literals are atoms, negated atoms ("not atom(...)"), or comparisons
(=, !=, <, <=, >, >=). Ordering comparisons only hold between integers.
Rules whose head predicate is "hard" are lint rules; each must be
preceded by annotation lines:

    %@category I1            one of I1 I2 I3 I4
    %@describe message text
    %@action TEMPLATE        one to five repair templates

Other directives: "%! predicates name/arity ..." extends the fact
vocabulary, "%! version x" tags the file. "%" starts a comment.

Evaluation is stratified: negation may only reach predicates in a
strictly lower stratum, which parse_rules enforces, so the model is
unique and evaluation order cannot change the result.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Any, Iterator

from .actions import TABLE1
from .facts import FACT_PREDICATES, FactBase
from .spec_model import VizlintError

CATEGORIES = ("I1", "I2", "I3", "I4")


class RuleSyntaxError(VizlintError):
    def __init__(self, message: str, line: int, column: int | None = None):
        self.line = line
        self.column = column
        at = f"line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(f"{message} ({at})")


class RuleSemanticError(VizlintError):
    pass


class LintError(VizlintError):
    pass


# --- terms and literals ----------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: Any


@dataclass(frozen=True)
class Wildcard:
    pass


Term = Var | Const | Wildcard


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[Term, ...]
    negated: bool = False


@dataclass(frozen=True)
class Comparison:
    op: str
    left: Term
    right: Term


Literal = Atom | Comparison


# template arity per action name: how many slots the rule file must give
_TEMPLATE_ARITY = {
    "CHANGE_MARK": 1,
    "ADD_CHANNEL": 2,
    "CHANGE_CHANNEL": 2,
    "REMOVE_CHANNEL": 1,
    "ADD_FIELD": 2,
    "CHANGE_FIELD": 2,
    "REMOVE_FIELD": 1,
    "CHANGE_TYPE": 2,
    "BIN": 1,
    "REMOVE_BIN": 1,
    "AGGREGATE": 2,
    "CHANGE_AGGREGATE": 2,
    "REMOVE_AGGREGATE": 1,
    "STACK": 2,
    "REMOVE_STACK": 1,
    "LOG": 1,
    "REMOVE_LOG": 1,
    "ZERO": 1,
    "REMOVE_ZERO": 1,
    "CORRECT_MARK": 0,
    "CORRECT_CHANNEL": 1,
    "CORRECT_TYPE": 1,
    "CORRECT_AGGREGATE": 1,
    "CORRECT_BIN": 1,
}


@dataclass(frozen=True)
class ActionTemplate:
    name: str
    args: tuple[str, ...]

    def __str__(self) -> str:
        return self.name if not self.args else f"{self.name}({', '.join(self.args)})"


@dataclass(frozen=True)
class LintRule:
    index: int
    id: str
    category: str
    description: str
    head_params: tuple[str, ...]
    body: tuple[Literal, ...]
    actions: tuple[ActionTemplate, ...]


@dataclass(frozen=True)
class AuxRule:
    predicate: str
    head_args: tuple[Term, ...]
    body: tuple[Literal, ...]


@dataclass(frozen=True)
class RuleCatalog:
    rules: tuple[LintRule, ...]
    aux_rules: tuple[AuxRule, ...]
    helper_facts: tuple[tuple[str, tuple[Any, ...]], ...]
    predicates: dict[str, int]
    version: str | None = None

    def rule(self, rule_id: str) -> LintRule:
        for r in self.rules:
            if r.id == rule_id:
                return r
        raise LintError(f"unknown rule id {rule_id!r}")

    def to_json(self) -> list[dict]:
        return [
            {
                "id": r.id,
                "category": r.category,
                "description": r.description,
                "actions": [str(a) for a in r.actions],
            }
            for r in self.rules
        ]


# --- tokenizer -------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<WS>\s+)
  | (?P<IF>:-)
  | (?P<CMP>!=|<=|>=|=|<|>)
  | (?P<INT>-?\d+)
  | (?P<STR>"(?:[^"\\]|\\.)*")
  | (?P<VAR>[A-Z][A-Za-z0-9_]*)
  | (?P<IDENT>[a-z][A-Za-z0-9_]*)
  | (?P<LP>\()
  | (?P<RP>\))
  | (?P<COMMA>,)
  | (?P<DOT>\.)
  | (?P<UNDER>_)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: str
    line: int
    col: int


def _strip_comment(line: str) -> str:
    in_string = False
    i = 0
    while i < len(line):
        ch = line[i]
        if ch == '"':
            in_string = not in_string
        elif ch == "\\" and in_string:
            i += 1
        elif ch == "%" and not in_string:
            return line[:i]
        i += 1
    return line


def _tokenize(lines: list[tuple[int, str]]) -> list[_Tok]:
    toks: list[_Tok] = []
    for lineno, text in lines:
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                raise RuleSyntaxError(f"unexpected character {text[pos]!r}", lineno, pos + 1)
            pos = m.end()
            kind = m.lastgroup or ""
            if kind == "WS":
                continue
            toks.append(_Tok(kind, m.group(), lineno, m.start() + 1))
    return toks


# --- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.pos = 0

    def peek(self) -> _Tok | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            last = self.toks[-1] if self.toks else _Tok("", "", 1, 1)
            raise RuleSyntaxError("unexpected end of file", last.line, last.col)
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Tok:
        tok = self.next()
        if tok.kind != kind:
            raise RuleSyntaxError(f"expected {kind}, got {tok.value!r}", tok.line, tok.col)
        return tok

    def parse_term(self) -> Term:
        tok = self.next()
        if tok.kind == "VAR":
            return Var(tok.value)
        if tok.kind == "IDENT":
            return Const(tok.value)
        if tok.kind == "INT":
            return Const(int(tok.value))
        if tok.kind == "STR":
            return Const(_unquote(tok.value))
        if tok.kind == "UNDER":
            return Wildcard()
        raise RuleSyntaxError(f"expected a term, got {tok.value!r}", tok.line, tok.col)

    def parse_atom(self, name: _Tok, negated: bool) -> Atom:
        args: list[Term] = []
        nxt = self.peek()
        if nxt is not None and nxt.kind == "LP":
            self.next()
            args.append(self.parse_term())
            while True:
                tok = self.next()
                if tok.kind == "RP":
                    break
                if tok.kind != "COMMA":
                    raise RuleSyntaxError(f"expected , or ), got {tok.value!r}", tok.line, tok.col)
                args.append(self.parse_term())
        return Atom(name.value, tuple(args), negated)

    def parse_literal(self) -> Literal:
        tok = self.peek()
        if tok is not None and tok.kind == "IDENT" and tok.value == "not":
            self.next()
            name = self.expect("IDENT")
            return self.parse_atom(name, negated=True)
        if tok is not None and tok.kind == "IDENT":
            after = self.toks[self.pos + 1] if self.pos + 1 < len(self.toks) else None
            if after is not None and after.kind == "LP":
                name = self.next()
                return self.parse_atom(name, negated=False)
            if after is None or after.kind not in ("CMP",):
                name = self.next()
                return Atom(name.value, (), negated=False)
        left = self.parse_term()
        op_tok = self.next()
        if op_tok.kind != "CMP":
            raise RuleSyntaxError(
                f"expected a comparison operator, got {op_tok.value!r}", op_tok.line, op_tok.col
            )
        right = self.parse_term()
        return Comparison(op_tok.value, left, right)

    def parse_statement(self) -> tuple[Atom, tuple[Literal, ...], int]:
        head_tok = self.expect("IDENT")
        head = self.parse_atom(head_tok, negated=False)
        tok = self.next()
        body: list[Literal] = []
        if tok.kind == "IF":
            body.append(self.parse_literal())
            while True:
                tok = self.next()
                if tok.kind == "DOT":
                    break
                if tok.kind != "COMMA":
                    raise RuleSyntaxError(f"expected , or ., got {tok.value!r}", tok.line, tok.col)
                body.append(self.parse_literal())
        elif tok.kind != "DOT":
            raise RuleSyntaxError(f"expected :- or ., got {tok.value!r}", tok.line, tok.col)
        return head, tuple(body), head_tok.line


def _unquote(text: str) -> str:
    out = []
    i = 1
    while i < len(text) - 1:
        ch = text[i]
        if ch == "\\" and i + 1 < len(text) - 1:
            i += 1
            ch = text[i]
        out.append(ch)
        i += 1
    return "".join(out)


def _parse_template(payload: str, line: int) -> ActionTemplate:
    m = re.match(r"^([A-Z_]+)\s*(?:\((.*)\))?\s*$", payload.strip())
    if m is None:
        raise RuleSyntaxError(f"malformed action template {payload!r}", line)
    name = m.group(1)
    if name not in TABLE1:
        raise RuleSyntaxError(f"unknown action {name!r} in template", line)
    raw_args = m.group(2)
    args = tuple(a.strip() for a in raw_args.split(",")) if raw_args else ()
    if len(args) != _TEMPLATE_ARITY[name]:
        raise RuleSyntaxError(
            f"action {name} takes {_TEMPLATE_ARITY[name]} argument(s), got {len(args)}", line
        )
    return ActionTemplate(name, args)


def parse_rules(text: str) -> RuleCatalog:
    """Parse rule-file text into a validated catalog.

    Raises RuleSyntaxError on malformed input and RuleSemanticError on
    duplicate ids, unknown predicates, unsafe variables, or cyclic
    negation.
    """
    code_lines: list[tuple[int, str]] = []
    directives: list[tuple[int, str, str]] = []  # (line, kind, payload)
    version: str | None = None
    predicates = dict(FACT_PREDICATES)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("%!"):
            payload = stripped[2:].strip()
            if payload.startswith("version"):
                version = payload[len("version"):].strip()
            elif payload.startswith("predicates"):
                for decl in payload[len("predicates"):].split():
                    if "/" not in decl:
                        raise RuleSyntaxError(f"bad predicate declaration {decl!r}", lineno)
                    name, _, arity = decl.partition("/")
                    predicates[name] = int(arity)
            else:
                raise RuleSyntaxError(f"unknown directive {stripped!r}", lineno)
            continue
        if stripped.startswith("%@"):
            m = re.match(r"^%@(\w+)\s*(.*)$", stripped)
            if m is None:
                raise RuleSyntaxError(f"malformed annotation {stripped!r}", lineno)
            directives.append((lineno, m.group(1), m.group(2).strip()))
            continue
        code = _strip_comment(raw)
        if code.strip():
            code_lines.append((lineno, code))

    parser = _Parser(_tokenize(code_lines))
    statements: list[tuple[Atom, tuple[Literal, ...], int]] = []
    while parser.peek() is not None:
        statements.append(parser.parse_statement())

    # attach annotation blocks to the next statement by line order
    rules: list[LintRule] = []
    aux_rules: list[AuxRule] = []
    helper_facts: list[tuple[str, tuple[Any, ...]]] = []
    seen_ids: set[str] = set()
    di = 0

    for head, body, line in statements:
        block: dict[str, Any] = {"actions": []}
        while di < len(directives) and directives[di][0] < line:
            d_line, kind, payload = directives[di]
            di += 1
            if kind == "category":
                if payload not in CATEGORIES:
                    raise RuleSyntaxError(f"category must be one of {CATEGORIES}", d_line)
                block["category"] = payload
            elif kind == "describe":
                block["description"] = payload
            elif kind == "action":
                block["actions"].append(_parse_template(payload, d_line))
            elif kind == "rule":
                pass  # optional name marker, the head carries the id
            else:
                raise RuleSyntaxError(f"unknown annotation %@{kind}", d_line)

        if head.predicate == "hard":
            if not head.args:
                raise RuleSemanticError(f"hard rule at line {line} has no rule id")
            id_term = head.args[0]
            if not isinstance(id_term, Const) or not isinstance(id_term.value, str):
                raise RuleSemanticError(f"rule id at line {line} must be a constant symbol")
            rule_id = id_term.value
            if rule_id in seen_ids:
                raise RuleSemanticError(f"duplicate rule id {rule_id!r}")
            seen_ids.add(rule_id)
            params: list[str] = []
            for term in head.args[1:]:
                if not isinstance(term, Var):
                    raise RuleSemanticError(
                        f"rule {rule_id}: head parameters must be variables"
                    )
                params.append(term.name)
            if "category" not in block:
                raise RuleSemanticError(f"rule {rule_id} has no %@category annotation")
            if "description" not in block:
                raise RuleSemanticError(f"rule {rule_id} has no %@describe annotation")
            if not 1 <= len(block["actions"]) <= 5:
                raise RuleSemanticError(f"rule {rule_id} needs between 1 and 5 %@action templates")
            rules.append(
                LintRule(
                    index=len(rules),
                    id=rule_id,
                    category=block["category"],
                    description=block["description"],
                    head_params=tuple(params),
                    body=body,
                    actions=tuple(block["actions"]),
                )
            )
        else:
            if block.get("category") or block.get("description") or block["actions"]:
                raise RuleSemanticError(
                    f"annotations before line {line} must precede a hard() rule"
                )
            if head.predicate in FACT_PREDICATES:
                raise RuleSemanticError(
                    f"predicate {head.predicate!r} at line {line} is part of the fact "
                    "vocabulary and cannot be redefined"
                )
            if body:
                aux_rules.append(AuxRule(head.predicate, head.args, body))
            else:
                values = []
                for term in head.args:
                    if not isinstance(term, Const):
                        raise RuleSemanticError(
                            f"fact {head.predicate} at line {line} must be ground"
                        )
                    values.append(term.value)
                helper_facts.append((head.predicate, tuple(values)))

    catalog = RuleCatalog(
        rules=tuple(rules),
        aux_rules=tuple(aux_rules),
        helper_facts=tuple(helper_facts),
        predicates=predicates,
        version=version,
    )
    _validate(catalog)
    return catalog


def _validate(catalog: RuleCatalog) -> None:
    arities: dict[str, int] = dict(catalog.predicates)

    def note_arity(pred: str, arity: int, where: str) -> None:
        if pred in arities and arities[pred] != arity:
            raise RuleSemanticError(
                f"{where}: predicate {pred} used with arity {arity}, expected {arities[pred]}"
            )
        arities.setdefault(pred, arity)

    for pred, args in catalog.helper_facts:
        note_arity(pred, len(args), f"fact {pred}")
    for aux in catalog.aux_rules:
        note_arity(aux.predicate, len(aux.head_args), f"rule {aux.predicate}")

    derivable = {aux.predicate for aux in catalog.aux_rules}
    derivable |= {pred for pred, _ in catalog.helper_facts}

    def check_body(name: str, head_vars: set[str], body: tuple[Literal, ...]) -> None:
        bound: set[str] = set()
        for lit in body:
            if isinstance(lit, Atom) and not lit.negated:
                if lit.predicate == "hard":
                    raise RuleSemanticError(f"rule {name}: hard() cannot appear in a body")
                if lit.predicate not in arities:
                    raise RuleSemanticError(
                        f"rule {name}: unknown predicate {lit.predicate!r}"
                    )
                note_arity(lit.predicate, len(lit.args), f"rule {name}")
                for term in lit.args:
                    if isinstance(term, Var):
                        bound.add(term.name)
        for lit in body:
            if isinstance(lit, Atom) and lit.negated:
                if lit.predicate not in arities:
                    raise RuleSemanticError(
                        f"rule {name}: unknown predicate {lit.predicate!r}"
                    )
                note_arity(lit.predicate, len(lit.args), f"rule {name}")
                loose = [t.name for t in lit.args if isinstance(t, Var) and t.name not in bound]
                if loose:
                    raise RuleSemanticError(
                        f"rule {name}: variable {loose[0]} in negated literal is not bound "
                        "by a positive literal"
                    )
            elif isinstance(lit, Comparison):
                for term in (lit.left, lit.right):
                    if isinstance(term, Wildcard):
                        raise RuleSemanticError(f"rule {name}: comparisons cannot use _")
                    if isinstance(term, Var) and term.name not in bound:
                        raise RuleSemanticError(
                            f"rule {name}: variable {term.name} in comparison is not bound "
                            "by a positive literal"
                        )
        unbound = head_vars - bound
        if unbound:
            raise RuleSemanticError(
                f"rule {name}: head variable {sorted(unbound)[0]} is not bound by a "
                "positive literal (range restriction)"
            )

    for rule in catalog.rules:
        check_body(rule.id, set(rule.head_params), rule.body)
    for aux in catalog.aux_rules:
        head_vars = {t.name for t in aux.head_args if isinstance(t, Var)}
        if any(isinstance(t, Wildcard) for t in aux.head_args):
            raise RuleSemanticError(f"rule {aux.predicate}: head cannot use _")
        check_body(aux.predicate, head_vars, aux.body)

    _stratify(catalog)


def _stratify(catalog: RuleCatalog) -> dict[str, int]:
    """Assign strata; negation must not be cyclic."""
    strata: dict[str, int] = {}
    rules_by_head: list[tuple[str, tuple[Literal, ...]]] = [
        (aux.predicate, aux.body) for aux in catalog.aux_rules
    ] + [("hard", rule.body) for rule in catalog.rules]

    preds = {head for head, _ in rules_by_head}
    for pred in preds:
        strata[pred] = 0
    limit = len(preds) + 2
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        if rounds > limit + 2:
            raise RuleSemanticError("rules are cyclically negated and cannot be stratified")
        for head, body in rules_by_head:
            level = strata.get(head, 0)
            for lit in body:
                if isinstance(lit, Atom):
                    dep = strata.get(lit.predicate, 0)
                    need = dep + 1 if lit.negated else dep
                    if need > level:
                        level = need
            if level > limit:
                raise RuleSemanticError("rules are cyclically negated and cannot be stratified")
            if strata.get(head, 0) != level:
                strata[head] = level
                changed = True
    return strata


# --- evaluation ------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    rule_id: str
    bindings: tuple[tuple[str, Any], ...]
    category: str = ""
    message: str = ""
    spec_path: str = ""

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Violation):
            return NotImplemented
        return self.rule_id == other.rule_id and self.bindings == other.bindings

    def __hash__(self) -> int:
        return hash((self.rule_id, self.bindings))

    def key(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.bindings)
        return f"{self.rule_id}({inner})"

    def to_json(self) -> dict:
        return {
            "rule_id": self.rule_id,
            "category": self.category,
            "bindings": {k: v for k, v in self.bindings},
            "message": self.message,
            "spec_path": self.spec_path,
        }


_PARAM_NOUN = {
    "C": "channel", "C2": "channel", "C3": "channel",
    "F": "field", "F2": "field",
    "M": "mark", "A": "aggregate", "T": "type",
    "N": "count", "S": "value", "V": "value",
}


def render_message(rule: LintRule, bindings: tuple[tuple[str, Any], ...]) -> str:
    message = rule.description
    suffix = ", ".join(f"{_PARAM_NOUN.get(k, k.lower())} {v}" for k, v in bindings)
    return f"{message} ({suffix})" if suffix else message


_MARK_SCOPED_RULES = frozenset(
    ["invalid_mark", "missing_x_or_y", "continuous_axis_required", "text_mark_needs_text_channel"]
)


def violation_path(rule_id: str, bindings: dict[str, Any]) -> str:
    if "C" in bindings:
        return f"/encoding/{bindings['C']}"
    if rule_id == "invalid_channel" and "S" in bindings:
        return f"/encoding/{bindings['S']}"
    if "M" in bindings or rule_id in _MARK_SCOPED_RULES:
        return "/mark"
    return ""


_Store = dict[str, set[tuple]]


def _match(args: tuple[Term, ...], values: tuple, env: dict[str, Any]) -> dict[str, Any] | None:
    out = env
    for term, value in zip(args, values):
        if isinstance(term, Wildcard):
            continue
        if isinstance(term, Const):
            if term.value != value:
                return None
        else:
            bound = out.get(term.name, _UNSET)
            if bound is _UNSET:
                if out is env:
                    out = dict(env)
                out[term.name] = value
            elif bound != value:
                return None
    return out


_UNSET = object()


def _resolve(term: Term, env: dict[str, Any]) -> Any:
    return env[term.name] if isinstance(term, Var) else term.value  # type: ignore[union-attr]


def _holds(cmp: Comparison, env: dict[str, Any]) -> bool:
    left = _resolve(cmp.left, env)
    right = _resolve(cmp.right, env)
    if cmp.op == "=":
        return left == right
    if cmp.op == "!=":
        return left != right
    if not isinstance(left, int) or not isinstance(right, int):
        return False
    return {"<": left < right, "<=": left <= right, ">": left > right, ">=": left >= right}[cmp.op]


def _negation_holds(atom: Atom, store: _Store, env: dict[str, Any]) -> bool:
    for values in store.get(atom.predicate, ()):
        if len(values) != len(atom.args):
            continue
        if _match(atom.args, values, env) is not None:
            return False
    return True


def _solve(body: tuple[Literal, ...], store: _Store) -> Iterator[dict[str, Any]]:
    positives = [l for l in body if isinstance(l, Atom) and not l.negated]
    comparisons = [l for l in body if isinstance(l, Comparison)]
    negations = [l for l in body if isinstance(l, Atom) and l.negated]
    ordered: list[Literal] = positives + comparisons + negations

    def step(i: int, env: dict[str, Any]) -> Iterator[dict[str, Any]]:
        if i == len(ordered):
            yield env
            return
        lit = ordered[i]
        if isinstance(lit, Comparison):
            if _holds(lit, env):
                yield from step(i + 1, env)
            return
        if lit.negated:
            if _negation_holds(lit, store, env):
                yield from step(i + 1, env)
            return
        for values in store.get(lit.predicate, ()):
            if len(values) != len(lit.args):
                continue
            env2 = _match(lit.args, values, env)
            if env2 is not None:
                yield from step(i + 1, env2)

    yield from step(0, {})


def _evaluate_aux(catalog: RuleCatalog, store: _Store) -> None:
    strata = _stratify(catalog)
    by_stratum: dict[int, list[AuxRule]] = {}
    for aux in catalog.aux_rules:
        by_stratum.setdefault(strata[aux.predicate], []).append(aux)
    for level in sorted(by_stratum):
        changed = True
        while changed:
            changed = False
            for aux in by_stratum[level]:
                derived = store.setdefault(aux.predicate, set())
                for env in _solve(aux.body, store):
                    values = tuple(_resolve(t, env) for t in aux.head_args)
                    if values not in derived:
                        derived.add(values)
                        changed = True


def lint(facts: FactBase, catalog: RuleCatalog) -> tuple[Violation, ...]:
    """Evaluate every catalog rule against the facts.

    Returns violations sorted by catalog order then bindings; the same
    head bindings derived twice collapse into one violation.
    """
    store: _Store = {}
    for f in facts:
        store.setdefault(f.predicate, set()).add(f.args)
    for pred, args in catalog.helper_facts:
        store.setdefault(pred, set()).add(args)

    _evaluate_aux(catalog, store)

    out: list[Violation] = []
    seen: set[tuple[str, tuple]] = set()
    for rule in catalog.rules:
        for env in _solve(rule.body, store):
            bindings = tuple((p, env[p]) for p in rule.head_params)
            key = (rule.id, bindings)
            if key in seen:
                continue
            seen.add(key)
            out.append(
                Violation(
                    rule_id=rule.id,
                    bindings=bindings,
                    category=rule.category,
                    message=render_message(rule, bindings),
                    spec_path=violation_path(rule.id, dict(bindings)),
                )
            )
    out.sort(key=lambda v: (catalog.rule(v.rule_id).index, tuple(str(x) for _, x in v.bindings)))
    return tuple(out)


def explain(violation: Violation, catalog: RuleCatalog) -> str:
    """Human-readable message for a violation; unknown rule ids raise."""
    rule = catalog.rule(violation.rule_id)
    return render_message(rule, violation.bindings)


@lru_cache(maxsize=4)
def _load_text(name: str) -> str:
    return resources.files("vizlint").joinpath(name).read_text()


def load_default_catalog() -> RuleCatalog:
    return parse_rules(_load_text("catalog/rules.lp"))
