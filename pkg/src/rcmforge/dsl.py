"""Structured requirement DSL: parser and pretty-printer.

Grammar::

    requirement := "req" STRING "{" primitive+ "}"
    primitive   := "pr" "{" clause+ "}"
    clause      := scope | cond | trig | act
    scope       := ("scope-pre" | "scope-act") (("after" | "before" | "until" | "while") pred)+
    cond        := "if" predtree
    trig        := "when" predtree
    act         := "do" predtree
    predtree    := pred | predtree ("and" | "or") predtree | "(" predtree ")"
    pred        := WORDS time*
    time        := ("for" | "within" | "after-delay" | "every") REL? NUMBER UNIT
    REL         := "at-most" | "at-least" | "less-than" | "greater-than"

``and`` binds tighter than ``or``. Predicate words are split into operands and
an operator by looking up each word's lemma in the frame database. A quoted
string is a single opaque operand token. A bracket group ``[that ...]`` or
``[whose ...]`` placed right after an operand attaches a hidden constraint to
it, and groups may nest. Parsing completes and binds every predicate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import DSLSyntaxError, UnboundFrameError
from .frames import (
    COPULAS,
    MODALS,
    FrameDatabase,
    bind_predicate,
    bind_time,
    default_frames,
    lemma_candidates,
    lookup_operator,
)
from .model import (
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
    Relation,
    Requirement,
    Scope,
    SourceSpan,
    TimeSpec,
    check_eligibility,
    complete_predicate,
)
from .tl import format_number

CLAUSE_WORDS = ("scope-pre", "scope-act", "if", "when", "do")
SCOPE_WORDS = ("after", "before", "until", "while")
TIME_WORDS = {
    "for": ("valid_time", Relation.EXACTLY),
    "within": ("pre_elapsed_time", Relation.AT_MOST),
    "after-delay": ("pre_elapsed_time", Relation.EXACTLY),
    "every": ("in_between_time", Relation.EXACTLY),
}
REL_WORDS = {
    "at-most": Relation.AT_MOST,
    "at-least": Relation.AT_LEAST,
    "less-than": Relation.LESS_THAN,
    "greater-than": Relation.GREATER_THAN,
}
STOP_WORDS = frozenset({"and", "or", "pr", "req", *CLAUSE_WORDS, *SCOPE_WORDS, *TIME_WORDS})
HIDDEN_WORDS = ("that", "whose")
_SPECIAL = set('{}()[]"#')
_NUMBER = re.compile(r"^\d+(\.\d+)?(/\d+)?$")


# -- lexer ----------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # word, string, call, punct, eof
    value: str
    span: SourceSpan


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.line_start = 0

    def span(self, start: int, end: int) -> SourceSpan:
        # line/column of ``start``; start is always on the current or an earlier line
        line = self.text.count("\n", 0, start) + 1
        col = start - (self.text.rfind("\n", 0, start) + 1) + 1
        return SourceSpan(line, col, start, end)

    def tokens(self) -> list[Token]:
        out = []
        text, n = self.text, len(self.text)
        i = 0
        while i < n:
            c = text[i]
            if c.isspace():
                i += 1
            elif c == "#":
                while i < n and text[i] != "\n":
                    i += 1
            elif c in "{}()[]":
                out.append(Token("punct", c, self.span(i, i + 1)))
                i += 1
            elif c == '"':
                j = text.find('"', i + 1)
                if j < 0:
                    raise DSLSyntaxError("unterminated string", self.span(i, n), ['"'])
                out.append(Token("string", text[i + 1:j], self.span(i, j + 1)))
                i = j + 1
            else:
                j = i
                while j < n and not text[j].isspace() and text[j] not in _SPECIAL:
                    j += 1
                if j < n and text[j] == "(":
                    depth, k = 0, j
                    while k < n:
                        if text[k] == "(":
                            depth += 1
                        elif text[k] == ")":
                            depth -= 1
                            if depth == 0:
                                break
                        k += 1
                    if k >= n:
                        raise DSLSyntaxError("unbalanced parentheses in call", self.span(i, n), [")"])
                    out.append(Token("call", text[i:k + 1], self.span(i, k + 1)))
                    i = k + 1
                else:
                    out.append(Token("word", text[i:j], self.span(i, j)))
                    i = j
        out.append(Token("eof", "", self.span(n, n)))
        return out


# -- predicate splitting ---------------------------------------------------------------


@dataclass
class _Item:
    text: str
    atomic: bool
    span: SourceSpan
    hidden: tuple | None = None  # (kind, items, span)


def _merge(a: SourceSpan, b: SourceSpan) -> SourceSpan:
    return SourceSpan(a.line, a.column, a.start, b.end)


def _segments(items: list[_Item]) -> list[list[_Item]]:
    segs: list[list[_Item]] = [[]]
    for it in items:
        if not it.atomic and it.text.lower() == "to":
            if it.hidden is not None:
                raise DSLSyntaxError("hidden constraint after 'to'", it.span, ["operand"])
            segs.append([])
        else:
            segs[-1].append(it)
    return [s for s in segs if s]


class _PredicateBuilder:
    def __init__(self, db: FrameDatabase):
        self.db = db

    def operand(self, items: list[_Item]) -> Operand:
        for it in items[:-1]:
            if it.hidden is not None:
                raise DSLSyntaxError("hidden constraint must follow its operand", it.hidden[2], ["operator"])
        text = " ".join(it.text for it in items)
        last = items[-1]
        hidden = None
        if last.hidden is not None:
            kind, inner, span = last.hidden
            if kind == "that":
                owner = _Item(text, True, _merge(items[0].span, last.span))
                inner = [owner, *inner]
            hidden = self.build(inner, span)
        return Operand(text, hidden)

    def _option(self, items, i, j):
        subject = items[:i]
        rest = _segments(items[j:])
        arity = (1 if subject else 0) + len(rest)
        return arity, subject, rest

    def build(self, items: list[_Item], span: SourceSpan) -> Predicate:
        negated = False
        kept = []
        for it in items:
            low = it.text.lower()
            if not it.atomic and low in MODALS | {"not"}:
                if it.hidden is not None:
                    raise DSLSyntaxError(f"hidden constraint attached to {it.text!r}", it.span, ["operand"])
                if low == "not":
                    negated = not negated
                continue
            kept.append(it)
        if not kept:
            raise DSLSyntaxError("expected predicate", span, ["predicate"])

        mismatch = None
        for i, it in enumerate(kept):
            if it.atomic or it.hidden is not None:
                continue
            nxt = kept[i + 1] if i + 1 < len(kept) and not kept[i + 1].atomic else None
            hit = lookup_operator(it.text, nxt.text if nxt else None, self.db)
            if hit is None:
                continue
            lemma, particle = hit
            j = i + 1 + particle
            options = []
            if lemma == "be" and j < len(kept) and not kept[j].atomic:
                k = kept[j + 1] if j + 1 < len(kept) and not kept[j + 1].atomic else None
                hit2 = lookup_operator(kept[j].text, k.text if k else None, self.db)
                end2 = j + 1 + (hit2[1] if hit2 else 0)
                # "is less-than 5", "is set to 1"; a bare participle ("is terminated") is a state
                if hit2 is not None and hit2[0] != "be" and end2 < len(kept):
                    options.append((hit2[0], end2))
            options.append((lemma, j))
            for lem, end in options:
                arity, subject, rest = self._option(kept, i, end)
                if self.db.get(lem, arity) is not None:
                    if any(x.hidden is not None for x in kept[i:end - 1]):
                        raise DSLSyntaxError("hidden constraint on operator", kept[i].span, ["operand"])
                    if kept[end - 1].hidden is not None:
                        raise DSLSyntaxError("hidden constraint on operator", kept[end - 1].span, ["operand"])
                    operands = []
                    if subject:
                        operands.append(self.operand(subject))
                    operands.extend(self.operand(seg) for seg in rest)
                    operator = " ".join(x.text for x in kept[i:end])
                    p = Predicate(tuple(operands), operator, negated, span=span)
                    return complete_predicate(p)
                if mismatch is None:
                    mismatch = (lem, arity)
        if mismatch is not None:
            raise UnboundFrameError(*mismatch)
        p = Predicate((self.operand(kept),), "", negated, span=span)
        return complete_predicate(p)


# -- parser --------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, db: FrameDatabase):
        self.toks = _Lexer(text).tokens()
        self.i = 0
        self.db = db
        self.builder = _PredicateBuilder(db)

    # token helpers
    def peek(self, offset: int = 0) -> Token:
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def advance(self) -> Token:
        tok = self.toks[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def is_word(self, *values: str) -> bool:
        tok = self.peek()
        return tok.kind == "word" and tok.value in values

    def is_punct(self, value: str) -> bool:
        tok = self.peek()
        return tok.kind == "punct" and tok.value == value

    def fail(self, message: str, expected) -> DSLSyntaxError:
        return DSLSyntaxError(message, self.peek().span, expected)

    def expect_word(self, value: str) -> Token:
        if not self.is_word(value):
            raise self.fail(f"expected '{value}'", [value])
        return self.advance()

    def expect_punct(self, value: str) -> Token:
        if not self.is_punct(value):
            raise self.fail(f"expected '{value}'", [value])
        return self.advance()

    # grammar
    def requirements(self) -> list[Requirement]:
        out = [self.requirement()]
        while self.peek().kind != "eof":
            out.append(self.requirement())
        return out

    def requirement(self) -> Requirement:
        start = self.expect_word("req")
        tok = self.peek()
        if tok.kind != "string":
            raise self.fail("expected requirement id string", ["STRING"])
        self.advance()
        self.expect_punct("{")
        prims = [self.primitive()]
        while self.is_word("pr"):
            prims.append(self.primitive())
        end = self.expect_punct("}")
        return Requirement(tok.value, tuple(prims), span=_merge(start.span, end.span))

    def primitive(self) -> PrimitiveRequirement:
        start = self.expect_word("pr")
        self.expect_punct("{")
        fields: dict[str, object] = {}
        if not self.is_word(*CLAUSE_WORDS):
            raise self.fail("expected clause", list(CLAUSE_WORDS))
        while self.is_word(*CLAUSE_WORDS):
            word = self.peek()
            name, value = self.clause()
            if name in fields:
                raise DSLSyntaxError(f"duplicate '{word.value}' clause", word.span, ["}"])
            fields[name] = value
        end = self.expect_punct("}")
        pr = PrimitiveRequirement(
            actions=fields.get("actions"),
            conditions=fields.get("conditions"),
            triggers=fields.get("triggers"),
            pre_scope=fields.get("pre_scope"),
            action_scope=fields.get("action_scope"),
            span=_merge(start.span, end.span),
        )
        check_eligibility(pr)
        return pr

    def clause(self) -> tuple[str, object]:
        word = self.advance().value
        if word in ("scope-pre", "scope-act"):
            return ("pre_scope" if word == "scope-pre" else "action_scope"), self.scope()
        kind, name = {
            "if": (Kind.CONDITION, "conditions"),
            "when": (Kind.TRIGGER, "triggers"),
            "do": (Kind.ACTION, "actions"),
        }[word]
        return name, self.tree_or(kind)

    def scope(self) -> Scope:
        start = self.peek()
        if not self.is_word(*SCOPE_WORDS):
            raise self.fail("expected scope boundary", list(SCOPE_WORDS))
        parts: dict[str, Token] = {}
        startup = endup = endup_kind = None
        while self.is_word(*SCOPE_WORDS):
            tok = self.advance()
            slot = "startup" if tok.value == "after" else "endup" if tok.value != "while" else "both"
            clash = ("startup", "endup") if slot == "both" else (slot,)
            if any(c in parts for c in clash) or "both" in parts:
                raise DSLSyntaxError(f"conflicting scope boundary '{tok.value}'", tok.span, ["}"])
            parts[slot] = tok
            if slot == "both":
                comp = self.component(Kind.SCOPE_STARTUP)
                startup = comp
                endup = Component(
                    Kind.SCOPE_ENDUP,
                    replace(comp.core, negated=not comp.core.negated),
                    span=comp.span,
                )
                endup_kind = EndupKind.UNTIL
            elif slot == "startup":
                startup = self.component(Kind.SCOPE_STARTUP)
            else:
                endup = self.component(Kind.SCOPE_ENDUP)
                endup_kind = EndupKind.BEFORE if tok.value == "before" else EndupKind.UNTIL
        end = self.toks[self.i - 1]
        return Scope(startup, endup, endup_kind, span=_merge(start.span, end.span))

    def tree_or(self, kind: Kind) -> ComponentTree:
        left = self.tree_and(kind)
        while self.is_word("or"):
            self.advance()
            right = self.tree_and(kind)
            left = Node(Coord.OR, left, right, span=_merge(_tree_span(left), _tree_span(right)))
        return left

    def tree_and(self, kind: Kind) -> ComponentTree:
        left = self.tree_atom(kind)
        while self.is_word("and"):
            self.advance()
            right = self.tree_atom(kind)
            left = Node(Coord.AND, left, right, span=_merge(_tree_span(left), _tree_span(right)))
        return left

    def tree_atom(self, kind: Kind) -> ComponentTree:
        if self.is_punct("("):
            self.advance()
            tree = self.tree_or(kind)
            self.expect_punct(")")
            return tree
        return Leaf(self.component(kind))

    def items(self, inside_brackets: bool = False) -> list[_Item]:
        items: list[_Item] = []
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                break
            if tok.kind == "punct":
                if tok.value == "[":
                    if not items:
                        raise self.fail("hidden constraint without operand", ["operand"])
                    if items[-1].hidden is not None:
                        raise self.fail("operand already has a hidden constraint", ["operator"])
                    items[-1].hidden = self.hidden()
                    continue
                break
            if tok.kind == "word" and not inside_brackets and tok.value in STOP_WORDS:
                break
            self.advance()
            items.append(_Item(tok.value, tok.kind != "word", tok.span))
        return items

    def hidden(self) -> tuple:
        open_tok = self.expect_punct("[")
        if not self.is_word(*HIDDEN_WORDS):
            raise self.fail("expected 'that' or 'whose'", list(HIDDEN_WORDS))
        kind = self.advance().value
        inner = self.items(inside_brackets=True)
        close = self.expect_punct("]")
        if not inner:
            raise DSLSyntaxError("empty hidden constraint", close.span, ["predicate"])
        return (kind, inner, _merge(open_tok.span, close.span))

    def component(self, kind: Kind) -> Component:
        start = self.peek()
        items = self.items()
        if not items:
            raise self.fail("expected predicate", ["predicate"])
        pspan = _merge(items[0].span, items[-1].span)
        core = bind_predicate(self.builder.build(items, pspan), self.db)
        times: dict[str, TimeSpec] = {}
        while self.is_word(*TIME_WORDS):
            tok = self.advance()
            slot, rel = TIME_WORDS[tok.value]
            if slot in times:
                raise DSLSyntaxError(f"second {slot.replace('_', '-')} on one component", tok.span, ["and", "or"])
            if self.is_word(*REL_WORDS):
                rel = REL_WORDS[self.advance().value]
            num = self.peek()
            if num.kind != "word" or not _NUMBER.match(num.value):
                raise self.fail("expected number", ["NUMBER"])
            self.advance()
            unit = self.peek()
            if unit.kind != "word" or unit.value in STOP_WORDS:
                raise self.fail("expected time unit", ["UNIT"])
            self.advance()
            times[slot] = bind_time(TimeSpec(Fraction(num.value), unit.value, rel))
        end = self.toks[self.i - 1]
        return Component(kind, core, span=_merge(start.span, end.span), **times)


def _tree_span(tree: ComponentTree) -> SourceSpan:
    return tree.component.span if isinstance(tree, Leaf) else tree.span


def parse_dsl(text: str, db: FrameDatabase | None = None) -> Requirement:
    """Parse exactly one ``req`` block."""
    parser = _Parser(text, db if db is not None else default_frames())
    req = parser.requirement()
    if parser.peek().kind != "eof":
        raise parser.fail("expected end of input", ["EOF"])
    return req


def parse_corpus(text: str, db: FrameDatabase | None = None) -> list[Requirement]:
    """Parse one or more ``req`` blocks from a single source text."""
    return _Parser(text, db if db is not None else default_frames()).requirements()


# -- pretty-printer -----------------------------------------------------------------

_REL_TEXT = {v: k for k, v in REL_WORDS.items()}
_RESERVED = STOP_WORDS | MODALS | COPULAS | {"to", "not", *HIDDEN_WORDS, *REL_WORDS}


def _needs_quotes(text: str, db: FrameDatabase) -> bool:
    if text != " ".join(text.split()) or any(c in _SPECIAL for c in text):
        return True
    for w in text.split():
        low = w.lower()
        if low in _RESERVED:
            return True
        for c in lemma_candidates(w):
            if db.has_lemma(c) or db.has_lemma(f"{c}_to") or db.has_lemma(f"{c}_from"):
                return True
    return False


class _Printer:
    def __init__(self, db: FrameDatabase):
        self.db = db

    def operand(self, o: Operand) -> str:
        if not o.text or '"' in o.text:
            raise ValueError(f"operand {o.text!r} cannot be written in the DSL")
        text = f'"{o.text}"' if _needs_quotes(o.text, self.db) else o.text
        h = o.hidden_constraint
        if h is None:
            return text
        if h.operator and not h.artificial and h.operands[0].text == o.text \
                and h.operands[0].hidden_constraint is None:
            body = " ".join(["not"] * h.negated + [h.operator] + self._tail(h.operands[1:]))
            return f"{text} [that {body}]"
        return f"{text} [whose {self.predicate(h)}]"

    def _tail(self, operands) -> list[str]:
        return [" to ".join(self.operand(o) for o in operands)] if operands else []

    def predicate(self, p: Predicate) -> str:
        words = ["not"] if p.negated else []
        if p.artificial or not p.operator:
            words.append(self.operand(p.operands[0]))
        else:
            words += [self.operand(p.operands[0]), p.operator, *self._tail(p.operands[1:])]
        return " ".join(words)

    def component(self, c: Component) -> str:
        parts = [self.predicate(c.core)]
        for word, slot in (("for", "valid_time"), ("after-delay", "pre_elapsed_time"),
                           ("every", "in_between_time")):
            t = getattr(c, slot)
            if t is None:
                continue
            rel = _REL_TEXT.get(t.relation)
            parts += [word, *([rel] if rel else []), format_number(t.value), t.unit]
        return " ".join(parts)

    def tree(self, t: ComponentTree) -> str:
        if isinstance(t, Leaf):
            return self.component(t.component)

        def sub(x):
            return f"({self.tree(x)})" if isinstance(x, Node) else self.tree(x)

        return f"{sub(t.left)} {t.relation.value} {sub(t.right)}"

    def scope(self, s: Scope) -> str:
        if (s.startup is not None and s.endup is not None and s.endup_kind is EndupKind.UNTIL
                and s.startup.core == replace(s.endup.core, negated=not s.endup.core.negated)
                and not any(True for _ in s.endup.times())):
            return f"while {self.component(s.startup)}"
        parts = []
        if s.startup is not None:
            parts.append(f"after {self.component(s.startup)}")
        if s.endup is not None:
            parts.append(f"{s.endup_kind.value} {self.component(s.endup)}")
        return " ".join(parts)

    def primitive(self, pr: PrimitiveRequirement, indent: str) -> list[str]:
        lines = [f"{indent}pr {{"]
        inner = indent + "  "
        if pr.pre_scope is not None:
            lines.append(f"{inner}scope-pre {self.scope(pr.pre_scope)}")
        if pr.action_scope is not None:
            lines.append(f"{inner}scope-act {self.scope(pr.action_scope)}")
        for word, name in (("when", "triggers"), ("if", "conditions"), ("do", "actions")):
            tree = getattr(pr, name)
            if tree is not None:
                lines.append(f"{inner}{word} {self.tree(tree)}")
        lines.append(f"{indent}}}")
        return lines


def render_dsl(req: Requirement, db: FrameDatabase | None = None) -> str:
    """Print ``req`` as DSL text that parses back to an equal requirement."""
    if '"' in req.id:
        raise ValueError("requirement id cannot contain '\"'")
    printer = _Printer(db if db is not None else default_frames())
    lines = [f'req "{req.id}" {{']
    for pr in req.primitives:
        lines += printer.primitive(pr, "  ")
    lines.append("}")
    return "\n".join(lines) + "\n"
