"""Verb-frame database: binds semi-formal predicates and time phrases to formal semantics.

Frames are keyed by operator lemma and arity (``exceed/2``). The on-disk format
is one frame per line, tab separated::

    lemma<TAB>arity<TAB>format<TAB>template

with ``#`` comments. ``format`` is ``relational`` (template ``$1 > $2``) or
``process`` (template ``send($1, $3, $2)``).
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, replace
from importlib import resources
from types import MappingProxyType
from typing import Iterator

from .errors import DuplicateFrameError, FrameFileError, UnboundFrameError
from .model import (
    RELATION_OPS,
    AggregatedRelational,
    FormalSemantics,
    Predicate,
    Process,
    Relational,
    TimeSpec,
)

ENV_VAR = "RCMFORGE_FRAMES"

COPULAS = frozenset({"is", "are", "be", "was", "were", "been", "being"})
MODALS = frozenset({"shall", "should", "must", "will"})
PARTICLES = ("to", "from")

_PLACEHOLDER = re.compile(r"^\$(\d+)$")
_RELATIONAL = re.compile(r"^(\S+)\s*(!=|<=|>=|=|<|>)\s*(\S+)$")
_CALL = re.compile(r"^([A-Za-z_][\w-]*)\((.*)\)$", re.S)


@dataclass(frozen=True)
class VerbFrame:
    lemma: str
    arity: int
    template: FormalSemantics

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("frame arity must be positive")
        for slot in _template_terms(self.template):
            m = _PLACEHOLDER.match(slot)
            if m and not 1 <= int(m.group(1)) <= self.arity:
                raise ValueError(f"placeholder {slot} out of range for {self.lemma}/{self.arity}")

    @property
    def key(self) -> tuple[str, int]:
        return (self.lemma, self.arity)


def _template_terms(t: FormalSemantics) -> list[str]:
    if isinstance(t, Process):
        return list(t.args)
    if isinstance(t, Relational):
        return [t.lhs, t.rhs]
    return [t.lhs, *t.args]


class FrameDatabase:
    """Immutable lemma/arity -> frame map. Use :func:`register_frame` to extend."""

    __slots__ = ("_frames", "_lemmas")

    def __init__(self, frames=()):
        table: dict[tuple[str, int], VerbFrame] = {}
        for f in frames:
            if f.key in table:
                raise DuplicateFrameError(*f.key)
            table[f.key] = f
        self._frames = MappingProxyType(table)
        self._lemmas = frozenset(lemma for lemma, _ in table)

    def get(self, lemma: str, arity: int) -> VerbFrame | None:
        return self._frames.get((lemma, arity))

    def has_lemma(self, lemma: str) -> bool:
        return lemma in self._lemmas

    def arities(self, lemma: str) -> set[int]:
        return {a for (lem, a) in self._frames if lem == lemma}

    def __contains__(self, key) -> bool:
        return key in self._frames

    def __iter__(self) -> Iterator[VerbFrame]:
        return iter(self._frames.values())

    def __len__(self) -> int:
        return len(self._frames)

    def __eq__(self, other) -> bool:
        return isinstance(other, FrameDatabase) and dict(self._frames) == dict(other._frames)

    def __hash__(self):
        return hash(frozenset(self._frames.items()))

    def __repr__(self) -> str:
        return f"FrameDatabase({len(self)} frames)"


def register_frame(db: FrameDatabase, frame: VerbFrame, replace: bool = False) -> FrameDatabase:
    if frame.key in db and not replace:
        raise DuplicateFrameError(*frame.key)
    frames = [f for f in db if f.key != frame.key]
    frames.append(frame)
    return FrameDatabase(frames)


# -- file format ----------------------------------------------------------------


def parse_template(fmt: str, template: str) -> FormalSemantics:
    template = template.strip()
    if fmt == "relational":
        m = _RELATIONAL.match(template)
        if not m:
            raise ValueError(f"bad relational template {template!r}")
        return Relational(m.group(1), m.group(2), m.group(3))
    if fmt == "process":
        m = _CALL.match(template)
        if not m:
            raise ValueError(f"bad process template {template!r}")
        args = tuple(a.strip() for a in m.group(2).split(",") if a.strip())
        return Process(m.group(1), args)
    raise ValueError(f"unknown frame format {fmt!r}")


def format_template(t: FormalSemantics) -> tuple[str, str]:
    if isinstance(t, Process):
        return "process", f"{t.name}({', '.join(t.args)})"
    if isinstance(t, Relational):
        return "relational", f"{t.lhs} {t.op} {t.rhs}"
    raise ValueError("aggregated templates are not stored in frame files")


def loads_frames(text: str, source: str = "<string>") -> FrameDatabase:
    db = FrameDatabase()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) != 4:
            raise FrameFileError(source, lineno, f"expected 4 tab-separated columns, got {len(cols)}")
        lemma, arity, fmt, template = (c.strip() for c in cols)
        try:
            frame = VerbFrame(lemma, int(arity), parse_template(fmt, template))
            db = register_frame(db, frame)
        except (ValueError, DuplicateFrameError) as exc:
            raise FrameFileError(source, lineno, str(exc)) from None
    return db


def load_frames(path) -> FrameDatabase:
    with open(path, encoding="utf-8") as fh:
        return loads_frames(fh.read(), str(path))


def dumps_frames(db: FrameDatabase) -> str:
    lines = ["# lemma\tarity\tformat\ttemplate"]
    for f in sorted(db, key=lambda f: f.key):
        fmt, tmpl = format_template(f.template)
        lines.append(f"{f.lemma}\t{f.arity}\t{fmt}\t{tmpl}")
    return "\n".join(lines) + "\n"


def builtin_frames() -> FrameDatabase:
    text = resources.files("rcmforge").joinpath("data/frames.tsv").read_text(encoding="utf-8")
    return loads_frames(text, "frames.tsv")


def default_frames() -> FrameDatabase:
    """The frame database named by ``$RCMFORGE_FRAMES``, else the built-in seed."""
    path = os.environ.get(ENV_VAR)
    return load_frames(path) if path else builtin_frames()


# -- lemmatisation ------------------------------------------------------------------


def lemma_candidates(word: str) -> list[str]:
    """Plausible base forms for an inflected operator word, most literal first."""
    w = word.lower().replace("-", "_")
    out = [w]
    if w.endswith("ies") or w.endswith("ied"):
        out.append(w[:-3] + "y")
    if w.endswith("es") or w.endswith("ed"):
        out.append(w[:-2])
    if w.endswith("s") or w.endswith("d"):
        out.append(w[:-1])
    if w.endswith("ing"):
        out += [w[:-3], w[:-3] + "e"]
    return out


def lookup_operator(word: str, following: str | None, db: FrameDatabase) -> tuple[str, bool] | None:
    """Resolve ``word`` (plus an optional particle) to a frame lemma.

    Returns ``(lemma, consumed_particle)`` or ``None`` when no frame uses it.
    """
    if word.lower() in COPULAS:
        return ("be", False) if db.has_lemma("be") else None
    cands = lemma_candidates(word)
    if following is not None and following.lower() in PARTICLES:
        for c in cands:
            joined = f"{c}_{following.lower()}"
            if db.has_lemma(joined):
                return joined, True
    for c in cands:
        if db.has_lemma(c):
            return c, False
    return None


def operator_lemma(operator: str, db: FrameDatabase) -> str:
    words = [w for w in operator.split() if w.lower() not in MODALS]
    if not words:
        return ""
    if len(words) > 1 and words[0].lower() in COPULAS:
        words = words[1:]
    following = words[1] if len(words) > 1 else None
    hit = lookup_operator(words[0], following, db)
    if hit is not None:
        return hit[0]
    return lemma_candidates(words[0])[0]


# -- binding ------------------------------------------------------------------------


def term(text: str) -> str:
    """Formal identifier for an operand's surface text."""
    return "_".join(text.split())


def _call_parts(text: str) -> tuple[str, tuple[str, ...]] | None:
    m = _CALL.match(text.strip())
    if not m:
        return None
    args = tuple(term(a) for a in m.group(2).split(",") if a.strip())
    return (m.group(1), args) if args else None


def _instantiate(template: FormalSemantics, p: Predicate) -> FormalSemantics:
    def sub(slot: str) -> str:
        m = _PLACEHOLDER.match(slot)
        return term(p.operands[int(m.group(1)) - 1].text) if m else slot

    if isinstance(template, Process):
        return Process(template.name, tuple(sub(a) for a in template.args))
    if isinstance(template, Relational):
        m = _PLACEHOLDER.match(template.rhs)
        if m:
            call = _call_parts(p.operands[int(m.group(1)) - 1].text)
            if call is not None:
                return AggregatedRelational(sub(template.lhs), template.op, call[0], call[1])
        return Relational(sub(template.lhs), template.op, sub(template.rhs))
    return AggregatedRelational(sub(template.lhs), template.op, template.func,
                                tuple(sub(a) for a in template.args))


def bind_predicate(p: Predicate, db: FrameDatabase) -> Predicate:
    """Populate ``p.formal`` (and that of any hidden constraint) from the frame database."""
    lemma = operator_lemma(p.operator, db)
    frame = db.get(lemma, len(p.operands))
    if frame is None:
        raise UnboundFrameError(lemma or "<none>", len(p.operands))
    operands = tuple(
        replace(o, hidden_constraint=bind_predicate(o.hidden_constraint, db))
        if o.hidden_constraint is not None else o
        for o in p.operands
    )
    p = replace(p, operands=operands)
    return replace(p, formal=_instantiate(frame.template, p))


def bind_time(t: TimeSpec) -> TimeSpec:
    return replace(t, formal_op=RELATION_OPS[t.relation])

