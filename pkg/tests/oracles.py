"""Independent reference implementations used to cross-check the library.

These deliberately avoid the library's own traversal helpers: the profile
walker descends the dataclass graph generically, the subset oracle compares
plain lists, and the infix printer formats trees without the TL renderer.
"""

from __future__ import annotations

import dataclasses

from rcmforge.model import Component, Kind, Leaf, Node, Predicate


def walk_profile(pr) -> set[str]:
    """Property codes of a primitive, found by brute-force traversal of every field."""
    codes: set[str] = set()
    base_for_kind = {Kind.CONDITION: "C", Kind.TRIGGER: "T", Kind.ACTION: "A"}
    suffix = {"valid_time": "vt", "pre_elapsed_time": "pt", "in_between_time": "rt"}

    def visit(obj, trail: tuple[str, ...]):
        if isinstance(obj, Component):
            if obj.kind in base_for_kind:
                base = base_for_kind[obj.kind]
            else:
                side = "P" if "pre_scope" in trail else "A"
                base = ("S" if obj.kind is Kind.SCOPE_STARTUP else "E") + side
            codes.add(base)
            for name, short in suffix.items():
                if getattr(obj, name) is not None:
                    codes.add(f"{base}-{short}")
        if isinstance(obj, Predicate) and "hidden_constraint" in trail:
            codes.add("Hidden")
        if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
            for f in dataclasses.fields(obj):
                visit(getattr(obj, f.name), trail + (f.name,))
        elif isinstance(obj, tuple):
            for x in obj:
                visit(x, trail)

    visit(pr, ())
    return codes


def subset_covers(rows: list[list[str]], profile) -> bool:
    for row in rows:
        ok = True
        for code in profile:
            if code not in row:
                ok = False
                break
        if ok:
            return True
    return False


def infix(tree, show) -> str:
    """Fully parenthesised infix text of a component tree."""
    if isinstance(tree, Leaf):
        return show(tree.component)
    sym = "&" if tree.relation.value == "and" else "|"
    return f"({infix(tree.left, show)} {sym} {infix(tree.right, show)})"


def count_nodes(tree) -> dict[str, int]:
    counts = {"leaf": 0, "and": 0, "or": 0}
    stack = [tree]
    while stack:
        t = stack.pop()
        if isinstance(t, Node):
            counts[t.relation.value] += 1
            stack += [t.left, t.right]
        else:
            counts["leaf"] += 1
    return counts


def substitute(template: str, operands: list[str]) -> str:
    """Textual ``$n`` substitution, highest index first so $10 never collides with $1."""
    out = template
    for i in range(len(operands), 0, -1):
        out = out.replace(f"${i}", "_".join(operands[i - 1].split()))
    return out
