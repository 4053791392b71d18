"""Canonical JSON serialization of requirements.

The document mirrors the object graph field for field with a fixed key order,
so :func:`dump_canonical` is deterministic and ``load_canonical(dump_canonical(r)) == r``.
Time values are written as exact fractions (``"3/2"``). Source spans are not
serialized. The JSON Schema ships as ``data/canonical.schema.json`` and is
enforced on every load.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import fastjsonschema

from .errors import SchemaError
from .model import (
    AggregatedRelational,
    Component,
    ComponentTree,
    Coord,
    EndupKind,
    Kind,
    Leaf,
    Node,
    Operand,
    Predicate,
    PrimitiveRequirement,
    Process,
    Relation,
    Relational,
    Requirement,
    Scope,
    TimeSpec,
    check_eligibility,
)


@lru_cache(maxsize=1)
def canonical_schema() -> dict:
    text = resources.files("rcmforge").joinpath("data/canonical.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


@lru_cache(maxsize=1)
def _validator():
    return fastjsonschema.compile(canonical_schema())


# -- dump -----------------------------------------------------------------------


def _formal(f) -> dict | None:
    match f:
        case None:
            return None
        case Process(name, args):
            return {"format": "process", "name": name, "args": list(args)}
        case Relational(lhs, op, rhs):
            return {"format": "relational", "lhs": lhs, "op": op, "rhs": rhs}
        case AggregatedRelational(lhs, op, func, args):
            return {"format": "aggregated", "lhs": lhs, "op": op, "func": func, "args": list(args)}
    raise TypeError(f"not formal semantics: {f!r}")


def _predicate(p: Predicate) -> dict:
    return {
        "operands": [
            {"text": o.text,
             "hidden_constraint": None if o.hidden_constraint is None else _predicate(o.hidden_constraint)}
            for o in p.operands
        ],
        "operator": p.operator,
        "negated": p.negated,
        "artificial": p.artificial,
        "formal": _formal(p.formal),
    }


def _time(t: TimeSpec | None) -> dict | None:
    if t is None:
        return None
    return {"value": str(t.value), "unit": t.unit, "relation": t.relation.value, "formal_op": t.formal_op}


def _component(c: Component | None) -> dict | None:
    if c is None:
        return None
    return {
        "kind": c.kind.value,
        "core": _predicate(c.core),
        "valid_time": _time(c.valid_time),
        "pre_elapsed_time": _time(c.pre_elapsed_time),
        "in_between_time": _time(c.in_between_time),
    }


def _tree(t: ComponentTree | None) -> dict | None:
    if t is None:
        return None
    if isinstance(t, Leaf):
        return {"leaf": _component(t.component)}
    return {"relation": t.relation.value, "left": _tree(t.left), "right": _tree(t.right)}


def _scope(s: Scope | None) -> dict | None:
    if s is None:
        return None
    return {
        "startup": _component(s.startup),
        "endup": _component(s.endup),
        "endup_kind": None if s.endup_kind is None else s.endup_kind.value,
    }


def to_document(r: Requirement) -> dict:
    return {
        "id": r.id,
        "primitives": [
            {
                "conditions": _tree(pr.conditions),
                "triggers": _tree(pr.triggers),
                "actions": _tree(pr.actions),
                "pre_scope": _scope(pr.pre_scope),
                "action_scope": _scope(pr.action_scope),
            }
            for pr in r.primitives
        ],
    }


def dump_canonical(r: Requirement) -> str:
    return json.dumps(to_document(r), indent=2, ensure_ascii=False) + "\n"


# -- load -----------------------------------------------------------------------


def _pointer(path) -> str:
    # fastjsonschema paths start with the root name "data"
    return "".join(f"/{p}" for p in path[1:])


def _load_formal(d):
    if d is None:
        return None
    match d["format"]:
        case "process":
            return Process(d["name"], tuple(d["args"]))
        case "relational":
            return Relational(d["lhs"], d["op"], d["rhs"])
        case "aggregated":
            return AggregatedRelational(d["lhs"], d["op"], d["func"], tuple(d["args"]))


def _load_predicate(d) -> Predicate:
    return Predicate(
        tuple(
            Operand(o["text"], None if o["hidden_constraint"] is None else _load_predicate(o["hidden_constraint"]))
            for o in d["operands"]
        ),
        d["operator"],
        d["negated"],
        _load_formal(d["formal"]),
        d["artificial"],
    )


def _load_time(d):
    if d is None:
        return None
    return TimeSpec(Fraction(d["value"]), d["unit"], Relation(d["relation"]), d["formal_op"])


def _load_component(d):
    if d is None:
        return None
    return Component(
        Kind(d["kind"]),
        _load_predicate(d["core"]),
        _load_time(d["valid_time"]),
        _load_time(d["pre_elapsed_time"]),
        _load_time(d["in_between_time"]),
    )


def _load_tree(d):
    if d is None:
        return None
    if "leaf" in d:
        return Leaf(_load_component(d["leaf"]))
    return Node(Coord(d["relation"]), _load_tree(d["left"]), _load_tree(d["right"]))


def _load_scope(d):
    if d is None:
        return None
    kind = None if d["endup_kind"] is None else EndupKind(d["endup_kind"])
    return Scope(_load_component(d["startup"]), _load_component(d["endup"]), kind)


def from_document(doc) -> Requirement:
    """Build a requirement from an already-decoded document, enforcing the schema."""
    try:
        _validator()(doc)
    except fastjsonschema.JsonSchemaValueException as err:
        raise SchemaError(_pointer(err.path), err.message) from None
    primitives = []
    for i, p in enumerate(doc["primitives"]):
        try:
            pr = PrimitiveRequirement(
                actions=_load_tree(p["actions"]),
                conditions=_load_tree(p["conditions"]),
                triggers=_load_tree(p["triggers"]),
                pre_scope=_load_scope(p["pre_scope"]),
                action_scope=_load_scope(p["action_scope"]),
            )
        except ValueError as exc:
            raise SchemaError(f"/primitives/{i}", str(exc)) from None
        check_eligibility(pr)
        primitives.append(pr)
    return Requirement(doc["id"], tuple(primitives))


def load_canonical(text: str) -> Requirement:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"invalid JSON: {exc}") from None
    return from_document(doc)
