"""Compile primitive requirements into MTL or CTL formulas.

The pipeline runs in five steps: attach time semantics to each component,
aggregate each component tree, combine triggers and conditions into the
preconditions, wrap each side in its scope, then join the sides with an
implication. Every temporal shape comes from :data:`RULES`, the indexed mapping
table (rows 1-25); the target logic only selects the template column.

Properties a target cannot express are dropped and recorded rather than
failing: MTL drops hidden constraints, CTL drops every time bound.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

from .errors import ContractError, RCMError
from .model import (
    Component,
    ComponentTree,
    Coord,
    EndupKind,
    Leaf,
    PrimitiveRequirement,
    Relation,
    Scope,
    TimeSpec,
    component_code,
    hidden_constraints,
    iter_predicates,
    leaves,
    property_profile,
    sort_codes,
    validate_primitive,
    RELATION_OPS,
    TIME_SUFFIX,
)
from .tl import (
    A,
    And,
    Atom,
    Exists,
    F,
    Formula,
    G,
    Implies,
    Not,
    Or,
    TimeBound,
    Until,
    WeakUntil,
)


class Target(enum.Enum):
    MTL = "MTL"
    CTL = "CTL"

    @classmethod
    def parse(cls, value) -> "Target":
        if isinstance(value, cls):
            return value
        return cls(str(value).upper())


class Completeness(enum.Enum):
    FULL = "Full"
    PARTIAL = "Partial"


class Slot(enum.Enum):
    PRE_ELAPSED = "pre_elapsed_time"
    VALID = "valid_time"
    IN_BETWEEN = "in_between_time"


# -- rule table ---------------------------------------------------------------

Template = Callable[..., Formula]


@dataclass(frozen=True)
class Rule:
    index: int
    prop: str
    version: str
    applicable: str
    mtl: Template | None
    ctl: Template | None

    def template(self, target: Target) -> Template | None:
        return self.mtl if target is Target.MTL else self.ctl


def _before_ctl(p, s):
    return A(WeakUntil(Or(A(F(Or(p, s))), A(G(Not(s)))), s))


_RELATION_ORDER = (
    Relation.EXACTLY, Relation.AT_MOST, Relation.AT_LEAST,
    Relation.LESS_THAN, Relation.GREATER_THAN,
)
_RELATION_WORDS = {
    Relation.EXACTLY: "", Relation.AT_MOST: "at-most ", Relation.AT_LEAST: "at-least ",
    Relation.LESS_THAN: "less-than ", Relation.GREATER_THAN: "greater-than ",
}


def _time_rules() -> list[Rule]:
    rules = []
    groups = [
        (10, "Pre-elapsed-time", "after", "Condition/Action",
         lambda p, bound: F(p, bound)),
        (15, "Valid-time", "for", "Condition/Trigger/Action",
         lambda p, bound: G(p, bound)),
        (20, "In-between-time", "every", "Action/Trigger",
         lambda p, bound: G(F(p, bound))),
    ]
    for base, prop_name, word, applicable, build in groups:
        for offset, rel in enumerate(_RELATION_ORDER):
            rules.append(Rule(
                base + offset, prop_name, f"{word} {_RELATION_WORDS[rel]}c time", applicable,
                lambda p, bound, _b=build: _b(p, bound), None,
            ))
    return rules


RULES: dict[int, Rule] = {r.index: r for r in [
    Rule(1, "Action", "A: do something", "", lambda p: p, lambda p: p),
    Rule(2, "Pre-condition: Condition", "If S", "Action",
         lambda p, s: G(Implies(s, p)), lambda p, s: A(G(Implies(s, p)))),
    Rule(3, "Pre-condition: Trigger", "When S", "Action",
         lambda p, s: G(Implies(s, p)), lambda p, s: A(G(Implies(s, p)))),
    Rule(4, "Pre-condition: Conditions and triggers", "When S, IF Q", "Action",
         lambda p, s, q: G(Implies(And(s, q), p)), lambda p, s, q: A(G(Implies(And(s, q), p)))),
    Rule(5, "Req-Scope: StartUP", "After S", "Precondition/Action",
         lambda p, s: G(Implies(s, F(p))), lambda p, s: A(G(Implies(s, A(G(A(F(p)))))))),
    Rule(6, "Req-Scope: EndUP", "Before S", "Precondition/Action",
         lambda p, s: Implies(F(s), Until(F(Or(p, s)), s)), _before_ctl),
    Rule(7, "Req-Scope: EndUP", "Until S", "Precondition/Action",
         lambda p, s: Until(F(p), s), lambda p, s: A(Until(A(F(p)), s))),
    Rule(8, "Req-Scope: StartUP and EndUP", "After Q & Before S", "Precondition/Action",
         lambda p, s, q: G(Implies(And(And(q, Not(s)), F(s)), Until(F(Or(p, s)), s))),
         lambda p, s, q: A(G(Implies(And(q, Not(s)), _before_ctl(p, s))))),
    Rule(9, "Req-Scope: StartUP and EndUP", "After Q Until S / While Z", "Precondition/Action",
         lambda p, s, q: G(Implies(And(q, Not(s)), F(Until(p, s)))),
         lambda p, s, q: A(G(Implies(And(q, Not(s)), A(WeakUntil(A(F(Or(p, s))), s)))))),
    *_time_rules(),
    Rule(25, "Hidden-Constraint", "Whose S", "Any component",
         None, lambda p, s: A(G(Exists(s, p)))),
]}

TIME_RULE_BASE = {Slot.PRE_ELAPSED: 10, Slot.VALID: 15, Slot.IN_BETWEEN: 20}


def time_rule_index(slot: Slot, relation: Relation) -> int:
    return TIME_RULE_BASE[slot] + _RELATION_ORDER.index(relation)


def scope_rule_index(scope: Scope) -> int:
    if scope.endup is None:
        return 5
    if scope.startup is None:
        return 6 if scope.endup_kind is EndupKind.BEFORE else 7
    return 8 if scope.endup_kind is EndupKind.BEFORE else 9


# -- results ------------------------------------------------------------------


@dataclass(frozen=True)
class Dropped:
    prop: str
    rule: int
    reason: str


@dataclass(frozen=True)
class TransformResult:
    formula: Formula
    target: Target
    dropped: tuple[Dropped, ...] = ()

    @property
    def completeness(self) -> Completeness:
        return Completeness.PARTIAL if self.dropped else Completeness.FULL

    def render(self, ascii_only: bool = False) -> str:
        from .tl import render

        return render(self.formula, self.target.value, ascii_only)


class UnboundPredicateError(RCMError):
    def __init__(self, path: str):
        self.path = path
        super().__init__(f"predicate at {path} has no formal semantics; bind it first")


_CTL_TIME_REASON = "time bound not expressible in CTL"
_MTL_HIDDEN_REASON = "existential hidden constraint needs branching time; not expressible in MTL"

# Composition order for several time sub-components on one component.
_SLOT_ORDER = (Slot.VALID, Slot.PRE_ELAPSED, Slot.IN_BETWEEN)


# -- step 1 ---------------------------------------------------------------------


def attach_time_semantics(base: Formula, t: TimeSpec, slot: Slot) -> Formula:
    op = t.formal_op or RELATION_OPS[t.relation]
    bound = TimeBound(op, t.value, t.unit)
    rule = RULES[time_rule_index(slot, t.relation)]
    return rule.mtl(base, bound)


def component_formula(comp: Component, target: Target, code: str,
                      dropped: list[Dropped] | None = None) -> Formula:
    core = comp.core
    f: Formula = Atom(core.formal, core.negated)
    for slot in _SLOT_ORDER:
        t = getattr(comp, slot.value)
        if t is None:
            continue
        if target is Target.MTL:
            f = attach_time_semantics(f, t, slot)
        elif dropped is not None:
            dropped.append(Dropped(
                f"{code}-{TIME_SUFFIX[slot.value]}", time_rule_index(slot, t.relation), _CTL_TIME_REASON,
            ))
    return f


# -- step 2 ---------------------------------------------------------------------


def aggregate_tree(tree: ComponentTree, prepared: dict[Component, Formula]) -> Formula:
    if isinstance(tree, Leaf):
        try:
            return prepared[tree.component]
        except KeyError:
            raise RCMError(f"no prepared formula for component {tree.component!r}") from None
    left = aggregate_tree(tree.left, prepared)
    right = aggregate_tree(tree.right, prepared)
    return And(left, right) if tree.relation is Coord.AND else Or(left, right)


# -- step 3 ---------------------------------------------------------------------


def prepare_preconditions(triggers: Formula | None, conditions: Formula | None) -> Formula | None:
    if triggers is not None and conditions is not None:
        return And(triggers, conditions)
    return triggers if triggers is not None else conditions


# -- step 4 ---------------------------------------------------------------------


def apply_scope(side: Formula, scope: Scope | None, target, *, pre: bool = True,
                dropped: list[Dropped] | None = None) -> Formula:
    """Wrap ``side`` in the temporal template of ``scope`` (rows 5-9)."""
    if scope is None:
        return side
    target = Target.parse(target)
    prefix = "pre_scope" if pre else "action_scope"
    startup = endup = None
    if scope.startup is not None:
        code = component_code(f"{prefix}.startup", scope.startup)
        startup = component_formula(scope.startup, target, code, dropped)
    if scope.endup is not None:
        code = component_code(f"{prefix}.endup", scope.endup)
        endup = component_formula(scope.endup, target, code, dropped)
    rule = RULES[scope_rule_index(scope)]
    tmpl = rule.template(target)
    if rule.index == 5:
        return tmpl(side, startup)
    if rule.index in (6, 7):
        return tmpl(side, endup)
    return tmpl(side, endup, startup)


# -- step 5 ---------------------------------------------------------------------


def _check_bound(pr: PrimitiveRequirement) -> None:
    for path, comp in pr.components():
        if not comp.core.is_bound:
            raise UnboundPredicateError(path)


def transform(pr: PrimitiveRequirement, target, wrap_factual: bool = False) -> TransformResult:
    target = Target.parse(target)
    if not validate_primitive(pr).passed:
        raise ContractError("transform requires a valid primitive requirement")
    _check_bound(pr)

    dropped: list[Dropped] = []
    aggregated: dict[str, Formula | None] = {}
    for name in ("triggers", "conditions", "actions"):
        tree = getattr(pr, name)
        if tree is None:
            aggregated[name] = None
            continue
        prepared = {}
        for path, comp in leaves(tree, name):
            prepared[comp] = component_formula(comp, target, component_code(path, comp), dropped)
        aggregated[name] = aggregate_tree(tree, prepared)

    pre = prepare_preconditions(aggregated["triggers"], aggregated["conditions"])
    lhs = None
    if pre is not None:
        lhs = apply_scope(pre, pr.pre_scope, target, pre=True, dropped=dropped)
    rhs = apply_scope(aggregated["actions"], pr.action_scope, target, pre=False, dropped=dropped)
    if pre is None and pr.pre_scope is not None:
        rhs = apply_scope(rhs, pr.pre_scope, target, pre=True, dropped=dropped)

    core = Implies(lhs, rhs) if lhs is not None else rhs
    bounds = [h.formal for _, comp in pr.components() for h in hidden_constraints(comp.core)]

    if target is Target.MTL:
        if bounds:
            dropped.append(Dropped("Hidden", 25, _MTL_HIDDEN_REASON))
        formula = G(core) if (lhs is not None or bounds or wrap_factual) else core
    else:
        if bounds:
            body = core
            for b in reversed(bounds):
                body = Exists(b, body)
            formula = A(G(body))
        elif lhs is not None or wrap_factual:
            formula = A(G(core))
        else:
            formula = core
    return TransformResult(formula, target, tuple(dropped))


# -- capability report -----------------------------------------------------------


@dataclass(frozen=True)
class Capability:
    prop: str
    supported: bool
    rule: int


def _property_rules(pr: PrimitiveRequirement) -> dict[str, int]:
    rules: dict[str, int] = {}
    has_t = pr.triggers is not None
    has_c = pr.conditions is not None
    for path, comp in pr.components():
        code = component_code(path, comp)
        if code == "A":
            rules.setdefault("A", 1)
        elif code in ("C", "T"):
            rules.setdefault(code, 4 if has_t and has_c else (2 if code == "C" else 3))
        else:
            scope = pr.pre_scope if path.startswith("pre_scope") else pr.action_scope
            rules.setdefault(code, scope_rule_index(scope))
        for slot_name, t in comp.times():
            rules.setdefault(f"{code}-{TIME_SUFFIX[slot_name]}",
                             time_rule_index(Slot(slot_name), t.relation))
    if any(True for p in iter_predicates(pr) for _ in hidden_constraints(p)):
        rules["Hidden"] = 25
    return rules


def supports(code: str, target) -> bool:
    target = Target.parse(target)
    if target is Target.MTL:
        return code != "Hidden"
    return not code.endswith(("-vt", "-pt", "-rt"))


def capability_report(pr: PrimitiveRequirement, target) -> list[Capability]:
    target = Target.parse(target)
    profile = property_profile(pr)
    rules = _property_rules(pr)
    return [Capability(code, supports(code, target), rules[code]) for code in sort_codes(profile)]


def instantiate_rule(index: int, target, p: Formula, s: Formula | None = None,
                     q: Formula | None = None, bound: TimeBound | None = None) -> Formula:
    """Fill row ``index``'s template for ``target`` with the given placeholders."""
    target = Target.parse(target)
    tmpl = RULES[index].template(target)
    if tmpl is None:
        raise ValueError(f"rule {index} has no {target.value} template")
    if index == 1:
        return tmpl(p)
    if index in (2, 3, 5, 6, 7):
        return tmpl(p, s)
    if index in (4, 8, 9):
        return tmpl(p, s, q)
    if index == 25:
        return tmpl(p, s.formal if isinstance(s, Atom) else s)
    return tmpl(p, bound)
