"""Temporal-logic formula AST shared by the MTL and CTL targets.

One AST covers both logics; :func:`mtl_valid` and :func:`ctl_valid` decide
whether a formula belongs to a target, and the renderers refuse formulas that
do not. Rendering is ASCII (``->``, ``&``, ``|``, ``!``, ``U``, ``W``) except
for the existential glyph, which has an ``exists`` fallback.

Parenthesisation rules, shared by both renderers:

* ``&`` and ``|`` always carry their own parentheses, except as the direct
  argument of a unary temporal operator whose parentheses already enclose them.
* ``->``, ``U``, ``W`` and the existential antecedent are parenthesised only
  when they appear as an operand of another connective.
* A relational atom (``x = 1``) is parenthesised when it is an operand of a
  connective; bare propositions and process atoms are not.

CTL additionally parenthesises both sides of an implication, matching
``AG((S) -> (P))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotExpressibleError
from .model import AggregatedRelational, FormalSemantics, Process, Relational


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class TimeBound:
    op: str
    value: Fraction
    unit: str = ""

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value < 0:
            raise ValueError("time bound must be non-negative")
        if self.op not in ("=", "<=", ">=", "<", ">"):
            raise ValueError(f"bad time bound operator {self.op!r}")


@dataclass(frozen=True)
class Atom(Formula):
    formal: FormalSemantics
    negated: bool = False


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class G(Formula):
    body: Formula
    bound: TimeBound | None = None


@dataclass(frozen=True)
class F(Formula):
    body: Formula
    bound: TimeBound | None = None


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class WeakUntil(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class A(Formula):
    """Universal path quantifier."""

    body: Formula


@dataclass(frozen=True)
class E(Formula):
    """Existential path quantifier."""

    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    """Existential antecedent ``(exists bound) -> (body)`` used for hidden constraints."""

    bound: FormalSemantics
    body: Formula


def prop(name: str) -> Atom:
    """A bare proposition, e.g. the ``S``/``Q``/``P`` placeholders of the rule table."""
    return Atom(Process(name))


_BINARY = (And, Or, Implies, Until, WeakUntil)
_PATH = (G, F, Until, WeakUntil)


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Atom):
        return ()
    if isinstance(f, _BINARY):
        return (f.left, f.right)
    return (f.body,)


def walk(f: Formula):
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


# -- validity -----------------------------------------------------------------


def mtl_violation(f: Formula) -> str | None:
    for node in walk(f):
        if isinstance(node, (A, E, WeakUntil, Exists)):
            return type(node).__name__
    return None


def ctl_violation(f: Formula) -> str | None:
    def visit(node: Formula, under_quantifier: bool) -> str | None:
        if isinstance(node, (G, F)) and node.bound is not None:
            return f"time bound t{node.bound.op}{format_number(node.bound.value)}"
        if isinstance(node, _PATH) and not under_quantifier:
            return f"{type(node).__name__} outside a path quantifier"
        if isinstance(node, (A, E)) and not isinstance(node.body, _PATH):
            return f"path quantifier over a state formula"
        quantified = isinstance(node, (A, E))
        for child in children(node):
            err = visit(child, quantified)
            if err:
                return err
        return None

    return visit(f, False)


def mtl_valid(f: Formula) -> bool:
    return mtl_violation(f) is None


def ctl_valid(f: Formula) -> bool:
    return ctl_violation(f) is None


# -- rendering ----------------------------------------------------------------


def format_number(value) -> str:
    """Integers plainly, terminating fractions as decimals, anything else as ``n/d``."""
    v = Fraction(value)
    if v.denominator == 1:
        return str(v.numerator)
    d = v.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d != 1:
        return f"{v.numerator}/{v.denominator}"
    digits = 0
    scaled = v
    while scaled.denominator != 1:
        scaled *= 10
        digits += 1
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def render_formal(fs: FormalSemantics) -> str:
    if isinstance(fs, Process):
        return f"{fs.name}({', '.join(fs.args)})" if fs.args else fs.name
    if isinstance(fs, Relational):
        return f"{fs.lhs} {fs.op} {fs.rhs}"
    if isinstance(fs, AggregatedRelational):
        return f"{fs.lhs} {fs.op} {fs.func}({', '.join(fs.args)})"
    raise TypeError(f"not formal semantics: {fs!r}")


def _is_plain(fs: FormalSemantics) -> bool:
    return isinstance(fs, Process)


def _bound(b: TimeBound | None) -> str:
    return "" if b is None else f"[t{b.op}{format_number(b.value)}]"


class _Renderer:
    def __init__(self, ctl: bool, ascii_only: bool):
        self.ctl = ctl
        self.exists = "exists" if ascii_only else "∃"

    def atom(self, a: Atom, operand: bool) -> str:
        text = render_formal(a.formal)
        if a.negated:
            return f"!{text}" if _is_plain(a.formal) else f"!({text})"
        if operand and not _is_plain(a.formal):
            return f"({text})"
        return text

    def side(self, f: Formula) -> str:
        """Implication side under CTL: always visibly parenthesised."""
        if isinstance(f, (And, Or)):
            return self.r(f, operand=True)
        return f"({self.r(f, operand=False)})"

    def r(self, f: Formula, operand: bool = False, unary_arg: bool = False) -> str:
        match f:
            case Atom():
                return self.atom(f, operand)
            case Not(body):
                return "!" + self.r(body, operand=True)
            case And(left, right) | Or(left, right):
                sym = "&" if isinstance(f, And) else "|"
                text = f"{self.r(left, operand=True)} {sym} {self.r(right, operand=True)}"
                return text if unary_arg else f"({text})"
            case Implies(left, right):
                if self.ctl:
                    text = f"{self.side(left)} -> {self.side(right)}"
                else:
                    text = f"{self.r(left, operand=True)} -> {self.r(right, operand=True)}"
                return f"({text})" if operand else text
            case Exists(bound, body):
                text = f"({self.exists} {render_formal(bound)}) -> {self.side(body)}"
                return f"({text})" if operand else text
            case G(body, bound) | F(body, bound):
                name = "G" if isinstance(f, G) else "F"
                return f"{name}{_bound(bound)}({self.r(body, unary_arg=True)})"
            case Until(left, right) | WeakUntil(left, right):
                sym = "U" if isinstance(f, Until) else "W"
                text = f"{self.r(left, operand=True)} {sym} {self.r(right, operand=True)}"
                return f"({text})" if operand else text
            case A(body) | E(body):
                q = "A" if isinstance(f, A) else "E"
                match body:
                    case G(inner, None) | F(inner, None):
                        op = "G" if isinstance(body, G) else "F"
                        return f"{q}{op}({self.r(inner, unary_arg=True)})"
                    case Until(left, right) | WeakUntil(left, right):
                        sym = "U" if isinstance(body, Until) else "W"
                        return f"{q}[{self.r(left, operand=True)} {sym} {self.r(right, operand=True)}]"
                return f"{q}({self.r(body, unary_arg=True)})"
        raise TypeError(f"not a formula: {f!r}")


def render_mtl(f: Formula, ascii_only: bool = False) -> str:
    bad = mtl_violation(f)
    if bad:
        raise NotExpressibleError("MTL", bad)
    return _Renderer(ctl=False, ascii_only=ascii_only).r(f)


def render_ctl(f: Formula, ascii_only: bool = False) -> str:
    bad = ctl_violation(f)
    if bad:
        raise NotExpressibleError("CTL", bad)
    return _Renderer(ctl=True, ascii_only=ascii_only).r(f)


def render(f: Formula, target: str, ascii_only: bool = False) -> str:
    if target.upper() == "MTL":
        return render_mtl(f, ascii_only)
    if target.upper() == "CTL":
        return render_ctl(f, ascii_only)
    raise ValueError(f"unknown target {target!r}")
