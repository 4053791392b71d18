"""Random DSL sources for law-style tests.

The generator writes DSL text (not model objects), so every requirement it
yields went through the real parser and is frame-bound. Vocabulary is chosen so
that no subject or value word collides with a frame lemma.
"""

from __future__ import annotations

import random

SUBJECTS = ["the valve", "pump", "X", "the door", "sensor A", "the tank level", "mode", "Y_2", "the lamp"]
VALUES = ["ON", "OFF", "TRUE", "3", "low", "high", "0.5"]
UNITS = ["s", "ms", "minutes"]
RELS = ["", "at-most ", "at-least ", "less-than ", "greater-than "]
NUMBERS = ["0", "1", "2", "10", "1.5", "3/4"]

# time keyword -> kinds that may carry it
TIME_KINDS = {
    "for": {"if", "when", "do", "scope"},
    "within": {"if", "do"},
    "after-delay": {"if", "do"},
    "every": {"when", "do"},
}


class Gen:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def pick(self, xs):
        return self.rng.choice(xs)

    def chance(self, p: float) -> bool:
        return self.rng.random() < p

    def subject(self, depth: int = 0) -> str:
        s = self.pick(SUBJECTS)
        if depth < 2 and self.chance(0.12):
            if self.chance(0.5):
                s += f" [that is {self.pick(['above', 'below', 'less-than'])} {self.pick(VALUES)}]"
            else:
                s += f" [whose {self.predicate(depth + 1)}]"
        return s

    def predicate(self, depth: int = 0) -> str:
        s, v = self.subject(depth), self.pick(VALUES)
        form = self.rng.randrange(8)
        text = [
            f"{s} is {v}",
            f"{s} exceeds {v}",
            f"{s} is less-than {v}",
            f"{s} turns to {v}",
            f"{s} terminates",
            f"{s} sends {v} to {self.pick(SUBJECTS)}",
            f"{s}",
            f"{s} below min(Thr1, Thr2)",
        ][form]
        if self.chance(0.15):
            text = "not " + text
        return text

    def times(self, kind: str) -> str:
        words = [w for w, kinds in TIME_KINDS.items() if kind in kinds]
        out = []
        slots_used = set()
        for w in self.rng.sample(words, len(words)):
            slot = "pre" if w in ("within", "after-delay") else w
            if slot in slots_used or not self.chance(0.25):
                continue
            slots_used.add(slot)
            rel = "" if w == "within" else self.pick(RELS)
            out.append(f" {w} {rel}{self.pick(NUMBERS)} {self.pick(UNITS)}")
        return "".join(out)

    def component(self, kind: str) -> str:
        return self.predicate() + self.times(kind)

    def tree(self, kind: str, depth: int = 0) -> str:
        if depth >= 2 or self.chance(0.6):
            leaf = self.component(kind)
            return f"({leaf})" if self.chance(0.1) else leaf
        op = self.pick(["and", "or"])
        left, right = self.tree(kind, depth + 1), self.tree(kind, depth + 1)
        text = f"{left} {op} {right}"
        return f"({text})" if self.chance(0.5) else text

    def scope(self) -> str:
        shape = self.rng.randrange(6)
        c = lambda: self.component("scope")  # noqa: E731
        return [
            f"after {c()}",
            f"before {c()}",
            f"until {c()}",
            f"after {c()} before {c()}",
            f"after {c()} until {c()}",
            f"while {c()}",
        ][shape]

    def primitive(self) -> str:
        clauses = []
        if self.chance(0.3):
            clauses.append(f"scope-pre {self.scope()}")
        if self.chance(0.3):
            clauses.append(f"scope-act {self.scope()}")
        if self.chance(0.5):
            clauses.append(f"when {self.tree('when')}")
        if self.chance(0.5):
            clauses.append(f"if {self.tree('if')}")
        clauses.append(f"do {self.tree('do')}")
        self.rng.shuffle(clauses)
        return "  pr {\n" + "".join(f"    {c}\n" for c in clauses) + "  }\n"

    def requirement(self, ident: str) -> str:
        body = "".join(self.primitive() for _ in range(self.rng.randint(1, 3)))
        return f'req "{ident}" {{\n{body}}}\n'


def random_sources(n: int, seed: int = 0) -> list[str]:
    g = Gen(seed)
    return [g.requirement(f"R{i}") for i in range(n)]
