"""Requirement capturing model: domain types, validation and property profiling.

A :class:`Requirement` holds one or more :class:`PrimitiveRequirement` values,
each built from component trees (conditions, triggers, actions) plus optional
pre-conditional and action scopes. All values are frozen dataclasses; source
spans ride along for diagnostics but never take part in equality.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Union

from .errors import ContractError, EligibilityError, EmptyPredicateError


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError("span start after end")


def _span():
    return field(default=None, compare=False, repr=False)


class Kind(enum.Enum):
    CONDITION = "condition"
    TRIGGER = "trigger"
    ACTION = "action"
    SCOPE_STARTUP = "scope_startup"
    SCOPE_ENDUP = "scope_endup"


class Relation(enum.Enum):
    EXACTLY = "exactly"
    AT_MOST = "at_most"
    AT_LEAST = "at_least"
    LESS_THAN = "less_than"
    GREATER_THAN = "greater_than"


RELATION_OPS = {
    Relation.EXACTLY: "=",
    Relation.AT_MOST: "<=",
    Relation.AT_LEAST: ">=",
    Relation.LESS_THAN: "<",
    Relation.GREATER_THAN: ">",
}


class EndupKind(enum.Enum):
    BEFORE = "before"
    UNTIL = "until"


class Coord(enum.Enum):
    AND = "and"
    OR = "or"


class Severity(enum.Enum):
    FAIL = "fail"
    WARNING = "warning"
    INFO = "info"


class Status(enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"


# -- formal semantics ---------------------------------------------------------

COMPARISON_OPS = ("=", "!=", "<", ">", "<=", ">=")


class Format(enum.Enum):
    PROCESS = "process"
    RELATIONAL_PLAIN = "relational"
    RELATIONAL_AGGREGATED = "aggregated"


@dataclass(frozen=True)
class Process:
    name: str
    args: tuple[str, ...] = ()

    format = Format.PROCESS


@dataclass(frozen=True)
class Relational:
    lhs: str
    op: str
    rhs: str

    format = Format.RELATIONAL_PLAIN

    def __post_init__(self):
        if self.op not in COMPARISON_OPS:
            raise ValueError(f"unknown comparison operator {self.op!r}")


@dataclass(frozen=True)
class AggregatedRelational:
    """``lhs op func(args)``, e.g. ``fuel_level < min(Thr1, Thr2)``."""

    lhs: str
    op: str
    func: str
    args: tuple[str, ...]

    format = Format.RELATIONAL_AGGREGATED

    def __post_init__(self):
        if self.op not in COMPARISON_OPS:
            raise ValueError(f"unknown comparison operator {self.op!r}")


FormalSemantics = Union[Process, Relational, AggregatedRelational]


# -- predicates and time -------------------------------------------------------


@dataclass(frozen=True)
class Operand:
    text: str
    hidden_constraint: "Predicate | None" = None


@dataclass(frozen=True)
class Predicate:
    operands: tuple[Operand, ...]
    operator: str = ""
    negated: bool = False
    formal: FormalSemantics | None = None
    artificial: bool = False
    span: SourceSpan | None = _span()

    @property
    def is_bound(self) -> bool:
        return self.formal is not None and all(
            h.is_bound for h in hidden_constraints(self)
        )


@dataclass(frozen=True)
class TimeSpec:
    value: Fraction
    unit: str
    relation: Relation = Relation.EXACTLY
    formal_op: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value < 0:
            raise ValueError("time value must be non-negative")
        if self.formal_op is not None and self.formal_op != RELATION_OPS[self.relation]:
            raise ValueError(
                f"formal operator {self.formal_op!r} does not match {self.relation.value}"
            )


# -- components and trees ------------------------------------------------------

TIME_SLOTS = ("valid_time", "pre_elapsed_time", "in_between_time")

# Which component kinds may carry each time sub-component.
ELIGIBILITY = {
    "valid_time": frozenset(Kind),
    "pre_elapsed_time": frozenset({Kind.CONDITION, Kind.ACTION}),
    "in_between_time": frozenset({Kind.TRIGGER, Kind.ACTION}),
}

SLOT_LABELS = {
    "valid_time": "valid-time",
    "pre_elapsed_time": "pre-elapsed-time",
    "in_between_time": "in-between-time",
}


@dataclass(frozen=True)
class Component:
    kind: Kind
    core: Predicate
    valid_time: TimeSpec | None = None
    pre_elapsed_time: TimeSpec | None = None
    in_between_time: TimeSpec | None = None
    span: SourceSpan | None = _span()

    def times(self) -> Iterator[tuple[str, TimeSpec]]:
        for slot in TIME_SLOTS:
            t = getattr(self, slot)
            if t is not None:
                yield slot, t


@dataclass(frozen=True)
class Leaf:
    component: Component


@dataclass(frozen=True)
class Node:
    relation: Coord
    left: "ComponentTree"
    right: "ComponentTree"
    span: SourceSpan | None = _span()


ComponentTree = Union[Leaf, Node]


def leaves(tree: ComponentTree | None, path: str = "") -> Iterator[tuple[str, Component]]:
    """Yield ``(path, component)`` for every leaf, left to right."""
    if tree is None:
        return
    if isinstance(tree, Leaf):
        yield path, tree.component
    else:
        yield from leaves(tree.left, f"{path}.left")
        yield from leaves(tree.right, f"{path}.right")


@dataclass(frozen=True)
class Scope:
    startup: Component | None = None
    endup: Component | None = None
    endup_kind: EndupKind | None = None
    span: SourceSpan | None = _span()

    def __post_init__(self):
        if self.startup is None and self.endup is None:
            raise ValueError("scope needs a startup or an endup component")
        if (self.endup is None) != (self.endup_kind is None):
            raise ValueError("endup_kind must be given exactly when endup is present")


@dataclass(frozen=True)
class PrimitiveRequirement:
    actions: ComponentTree | None
    conditions: ComponentTree | None = None
    triggers: ComponentTree | None = None
    pre_scope: Scope | None = None
    action_scope: Scope | None = None
    span: SourceSpan | None = _span()

    def components(self) -> Iterator[tuple[str, Component]]:
        """Every component with its path, in a fixed traversal order."""
        for name in ("pre_scope", "action_scope"):
            scope = getattr(self, name)
            if scope is not None:
                if scope.startup is not None:
                    yield f"{name}.startup", scope.startup
                if scope.endup is not None:
                    yield f"{name}.endup", scope.endup
        for name in ("triggers", "conditions", "actions"):
            yield from leaves(getattr(self, name), name)

    @property
    def is_factual(self) -> bool:
        return (
            self.conditions is None
            and self.triggers is None
            and self.pre_scope is None
            and self.action_scope is None
        )


@dataclass(frozen=True)
class Requirement:
    id: str
    primitives: tuple[PrimitiveRequirement, ...]
    span: SourceSpan | None = _span()

    def __post_init__(self):
        object.__setattr__(self, "primitives", tuple(self.primitives))
        if not self.primitives:
            raise ValueError("a requirement needs at least one primitive requirement")


# -- hidden constraints --------------------------------------------------------


def hidden_constraints(p: Predicate) -> Iterator[Predicate]:
    """Hidden constraints attached to ``p``'s operands, outermost first, depth-first."""
    for op in p.operands:
        h = op.hidden_constraint
        if h is not None:
            yield h
            yield from hidden_constraints(h)


def iter_predicates(pr: PrimitiveRequirement) -> Iterator[Predicate]:
    for _, comp in pr.components():
        yield comp.core
        yield from hidden_constraints(comp.core)


# -- validation ----------------------------------------------------------------


@dataclass(frozen=True)
class Issue:
    severity: Severity
    code: str
    message: str
    path: str


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = ()

    @property
    def status(self) -> Status:
        if any(i.severity is Severity.FAIL for i in self.issues):
            return Status.FAIL
        return Status.PASS

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def failures(self) -> list[Issue]:
        return [i for i in self.issues if i.severity is Severity.FAIL]


_TREE_KINDS = {
    "conditions": Kind.CONDITION,
    "triggers": Kind.TRIGGER,
    "actions": Kind.ACTION,
}


def eligibility_issues(comp: Component, path: str) -> list[Issue]:
    out = []
    for slot, _ in comp.times():
        if comp.kind not in ELIGIBILITY[slot]:
            out.append(Issue(
                Severity.FAIL,
                "ineligible-subcomponent",
                f"{SLOT_LABELS[slot]} ineligible on {comp.kind.value.replace('_', '-')}",
                f"{path}.{slot}",
            ))
    return out


def validate_primitive(pr: PrimitiveRequirement) -> ValidationReport:
    issues: list[Issue] = []

    if not any(True for _ in leaves(pr.actions)):
        issues.append(Issue(Severity.FAIL, "missing-action", "missing mandatory action", "actions"))

    for name, kind in _TREE_KINDS.items():
        for path, comp in leaves(getattr(pr, name), name):
            if comp.kind is not kind:
                issues.append(Issue(
                    Severity.FAIL,
                    "kind-mismatch",
                    f"{comp.kind.value} component inside the {name} tree",
                    path,
                ))

    for name in ("pre_scope", "action_scope"):
        scope = getattr(pr, name)
        if scope is None:
            continue
        for part, kind in (("startup", Kind.SCOPE_STARTUP), ("endup", Kind.SCOPE_ENDUP)):
            comp = getattr(scope, part)
            if comp is not None and comp.kind is not kind:
                issues.append(Issue(
                    Severity.FAIL,
                    "kind-mismatch",
                    f"{comp.kind.value} component used as scope {part}",
                    f"{name}.{part}",
                ))

    for path, comp in pr.components():
        issues.extend(eligibility_issues(comp, path))

    if pr.pre_scope is not None and pr.conditions is None and pr.triggers is None:
        issues.append(Issue(
            Severity.WARNING,
            "scope-without-preconditions",
            "pre-conditional scope without conditions or triggers; applied to the actions",
            "pre_scope",
        ))

    if pr.is_factual and pr.actions is not None:
        issues.append(Issue(Severity.INFO, "factual-rule", "action-only primitive (factual rule)", "actions"))

    return ValidationReport(tuple(issues))


def check_eligibility(pr: PrimitiveRequirement) -> None:
    """Raise :class:`EligibilityError` when any sub-component sits on an ineligible kind."""
    bad = []
    for path, comp in pr.components():
        bad.extend(eligibility_issues(comp, path))
    if bad:
        raise EligibilityError(bad)


# -- property profiling --------------------------------------------------------

PROPERTY_CODES = (
    "A", "A-vt", "A-rt", "A-pt",
    "C", "C-vt", "C-pt",
    "T", "T-vt", "T-rt",
    "SP", "SP-vt", "EP", "EP-vt",
    "SA", "SA-vt", "EA", "EA-vt",
    "Hidden",
)

TIME_SUFFIX = {"valid_time": "vt", "pre_elapsed_time": "pt", "in_between_time": "rt"}

PropertyProfile = frozenset


def component_code(pr_path: str, comp: Component) -> str:
    """Base property code of a component located at ``pr_path``."""
    if comp.kind is Kind.CONDITION:
        return "C"
    if comp.kind is Kind.TRIGGER:
        return "T"
    if comp.kind is Kind.ACTION:
        return "A"
    pre = pr_path.startswith("pre_scope")
    if comp.kind is Kind.SCOPE_STARTUP:
        return "SP" if pre else "SA"
    return "EP" if pre else "EA"


def property_profile(pr: PrimitiveRequirement) -> frozenset[str]:
    if not validate_primitive(pr).passed:
        raise ContractError("property_profile requires a valid primitive requirement")
    codes = set()
    for path, comp in pr.components():
        base = component_code(path, comp)
        codes.add(base)
        for slot, _ in comp.times():
            codes.add(f"{base}-{TIME_SUFFIX[slot]}")
    if any(True for p in iter_predicates(pr) for _ in hidden_constraints(p)):
        codes.add("Hidden")
    return frozenset(codes)


def sort_codes(codes) -> list[str]:
    order = {c: i for i, c in enumerate(PROPERTY_CODES)}
    return sorted(codes, key=order.__getitem__)


# -- completeness correction ---------------------------------------------------

ARTIFICIAL_OPERATOR = "equals"
ARTIFICIAL_OPERAND = "true"


def complete_predicate(p: Predicate) -> Predicate:
    """Give a bare nominal predicate ("sailing termination") an ``equals true`` tail.

    Only operator-less single-operand predicates are relational-incomplete;
    anything else comes back unchanged.
    """
    if not p.operands:
        raise EmptyPredicateError()
    if len(p.operands) == 1 and not p.operator:
        return replace(
            p,
            operands=p.operands + (Operand(ARTIFICIAL_OPERAND),),
            operator=ARTIFICIAL_OPERATOR,
            artificial=True,
        )
    return p
