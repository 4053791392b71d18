"""Which legacy requirement templates can say what the corpus says?

Loads the bundled fixture corpus, profiles every primitive requirement, and
checks each profile against the built-in registry of fifteen template
approaches. The reference model itself is added as a virtual approach that
accepts every property.

    python3 demos/02_template_coverage.py
"""

from rcmforge.coverage import CorpusEntry, builtin_approaches, coverage_matrix, covers
from rcmforge.fixtures import load_fixtures
from rcmforge.frames import builtin_frames
from rcmforge.model import sort_codes


def main() -> None:
    corpus = load_fixtures(builtin_frames())
    entries = [
        CorpusEntry(name if len(r.primitives) == 1 else f"{name}.pr{i}", pr)
        for name, r in sorted(corpus.items())
        for i, pr in enumerate(r.primitives, 1)
    ]
    stats = coverage_matrix(entries)
    print(f"{stats.size} primitive requirements from {len(corpus)} fixtures\n")

    width = max(len(a.name) for a in stats.approaches)
    for a in stats.approaches:
        pct = float(stats.percentage(a.code))
        bar = "#" * round(pct / 5)
        print(f"{a.code:>4}  {a.name:<{width}}  {pct:5.1f}%  {bar}")

    print("\nnot representable by any single template approach:")
    for label in stats.uncovered_by_all():
        profile = stats.profiles[stats.labels.index(label)]
        print(f"  {label:<22} {{{', '.join(sort_codes(profile))}}}")

    # A closer look at one profile: which format row comes nearest?
    target = frozenset({"C", "SP", "A", "A-vt", "A-rt"})
    print(f"\nclosest formats for {{{', '.join(sort_codes(target))}}}:")
    best = sorted(
        ((len(target - row), a.code, row) for a in builtin_approaches() for row in a.formats),
        key=lambda t: (t[0], t[1]),
    )[:3]
    for missing, code, row in best:
        print(f"  {code:>4} misses {sorted(target - row)}  (row {{{', '.join(sort_codes(row))}}})")
    assert not any(covers(a, target) for a in builtin_approaches())

    print("\nproperties per requirement:")
    for k, share in stats.histogram().items():
        print(f"  {k:>2}  {float(share):5.1f}%")


if __name__ == "__main__":
    main()
