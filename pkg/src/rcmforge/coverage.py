"""Which legacy template approaches can represent a requirement, and corpus statistics.

An approach is a list of *formats*, each the set of property codes one of its
templates accepts. A profile is covered when some format is a superset of it;
ordering and wording restrictions of the concrete templates are not modelled.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .errors import RCMError, RegistryError
from .model import (
    PROPERTY_CODES,
    PrimitiveRequirement,
    ValidationReport,
    property_profile,
    sort_codes,
    validate_primitive,
)

RCM_CODE = "RCM"


@dataclass(frozen=True)
class Approach:
    code: str
    name: str
    formats: tuple[frozenset[str], ...]
    citation: str = ""

    def __post_init__(self):
        object.__setattr__(self, "formats", tuple(frozenset(f) for f in self.formats))


# A virtual approach that places no restriction on the included properties.
RCM = Approach(RCM_CODE, "Requirement Capturing Model", (frozenset(PROPERTY_CODES),))


def covers(a: Approach, profile) -> bool:
    p = frozenset(profile)
    return any(p <= row for row in a.formats)


# -- registry -------------------------------------------------------------------


def loads_registry(text: str, source: str = "<string>") -> list[Approach]:
    """Parse ``code<TAB>name<TAB>row[<TAB>citation]`` lines; repeated codes add formats."""
    order: list[str] = []
    names: dict[str, str] = {}
    citations: dict[str, str] = {}
    rows: dict[str, list[frozenset[str]]] = {}
    known = set(PROPERTY_CODES)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        cols = [c.strip() for c in line.split("\t")]
        if len(cols) not in (3, 4):
            raise RegistryError(source, lineno, f"expected 3 or 4 tab-separated columns, got {len(cols)}")
        code, name, row = cols[:3]
        if not code:
            raise RegistryError(source, lineno, "empty approach code")
        props = [c.strip() for c in row.split(",") if c.strip()]
        unknown = [c for c in props if c not in known]
        if unknown:
            raise RegistryError(source, lineno, f"unknown property code(s): {', '.join(unknown)}")
        if not props:
            raise RegistryError(source, lineno, "empty format row")
        if code not in rows:
            order.append(code)
            names[code] = name
            rows[code] = []
        elif names[code] != name:
            raise RegistryError(source, lineno, f"approach {code} renamed from {names[code]!r} to {name!r}")
        if len(cols) == 4 and cols[3]:
            citations[code] = cols[3]
        rows[code].append(frozenset(props))
    return [Approach(c, names[c], tuple(rows[c]), citations.get(c, "")) for c in order]


def load_registry(path) -> list[Approach]:
    with open(path, encoding="utf-8") as fh:
        return loads_registry(fh.read(), str(path))


def builtin_approaches() -> list[Approach]:
    text = resources.files("rcmforge").joinpath("data/approaches.tsv").read_text(encoding="utf-8")
    return loads_registry(text, "approaches.tsv")


# -- corpus statistics -------------------------------------------------------------


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    primitive: PrimitiveRequirement


@dataclass(frozen=True)
class CoverageStats:
    approaches: tuple[Approach, ...]  # RCM last
    labels: tuple[str, ...]
    profiles: tuple[frozenset[str], ...]
    matrix: tuple[tuple[bool, ...], ...]  # [requirement][approach]
    invalid: tuple[tuple[str, ValidationReport], ...] = ()

    @property
    def size(self) -> int:
        return len(self.profiles)

    def covered_count(self, code: str) -> int:
        j = [a.code for a in self.approaches].index(code)
        return sum(row[j] for row in self.matrix)

    def percentage(self, code: str) -> Fraction:
        if not self.size:
            return Fraction(0)
        return Fraction(100 * self.covered_count(code), self.size)

    def uncovered_by_all(self) -> list[str]:
        """Requirements no legacy approach (RCM excluded) can represent."""
        return [
            label for label, row in zip(self.labels, self.matrix)
            if not any(hit for a, hit in zip(self.approaches, row) if a.code != RCM_CODE)
        ]

    def property_frequency(self) -> dict[str, int]:
        counts = Counter(c for p in self.profiles for c in p)
        return {c: counts[c] for c in PROPERTY_CODES}

    def histogram(self) -> dict[int, Fraction]:
        return complexity_histogram(self.profiles)


def _entries(corpus) -> list[CorpusEntry]:
    out = []
    for i, item in enumerate(corpus):
        if isinstance(item, CorpusEntry):
            out.append(item)
        else:
            out.append(CorpusEntry(f"#{i + 1}", item))
    return out


def coverage_matrix(corpus, approaches=None) -> CoverageStats:
    """Evaluate every valid primitive against every approach, plus RCM itself.

    ``corpus`` holds primitives or :class:`CorpusEntry` values. Invalid members
    are excluded from the matrix and listed in ``invalid``.
    """
    approaches = list(builtin_approaches() if approaches is None else approaches)
    if any(a.code == RCM_CODE for a in approaches):
        raise RCMError(f"approach code {RCM_CODE!r} is reserved")
    approaches.append(RCM)
    labels, profiles, rows, invalid = [], [], [], []
    for entry in _entries(corpus):
        report = validate_primitive(entry.primitive)
        if not report.passed:
            invalid.append((entry.label, report))
            continue
        profile = property_profile(entry.primitive)
        labels.append(entry.label)
        profiles.append(profile)
        rows.append(tuple(covers(a, profile) for a in approaches))
    return CoverageStats(tuple(approaches), tuple(labels), tuple(profiles), tuple(rows), tuple(invalid))


def complexity_histogram(profiles) -> dict[int, Fraction]:
    """Share (in percent) of requirements per number of properties, keyed by count."""
    profiles = [p if isinstance(p, frozenset) else property_profile(p) for p in profiles]
    if not profiles:
        return {}
    counts = Counter(len(p) for p in profiles)
    return {k: Fraction(100 * counts[k], len(profiles)) for k in sorted(counts)}


# -- reports ------------------------------------------------------------------------


def _pct(x: Fraction) -> str:
    return f"{float(x):.1f}%"


def format_text(stats: CoverageStats) -> str:
    lines = [f"corpus: {stats.size} requirement(s)"]
    for label, report in stats.invalid:
        msgs = "; ".join(i.message for i in report.failures())
        lines.append(f"invalid: {label}: {msgs}")
    lines.append("")
    lines.append("approach  covered  percent  name")
    for a in stats.approaches:
        n = stats.covered_count(a.code)
        lines.append(f"{a.code:<8}  {n:>7}  {_pct(stats.percentage(a.code)):>7}  {a.name}")
    lines.append("")
    uncovered = stats.uncovered_by_all()
    lines.append(f"uncovered by all approaches: {len(uncovered)}")
    lines += [f"  {label}" for label in uncovered]
    lines.append("")
    lines.append("property frequency:")
    for code, n in stats.property_frequency().items():
        lines.append(f"  {code:<7} {n}")
    lines.append("")
    lines.append("properties per requirement:")
    for k, share in stats.histogram().items():
        lines.append(f"  {k:>2}  {_pct(share)}")
    return "\n".join(lines) + "\n"


def format_csv(stats: CoverageStats) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["requirement", "profile", *(a.code for a in stats.approaches)])
    for label, profile, row in zip(stats.labels, stats.profiles, stats.matrix):
        w.writerow([label, " ".join(sort_codes(profile)), *(int(x) for x in row)])
    return buf.getvalue()
