import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import subset_covers
from rcmforge.coverage import (
    RCM,
    Approach,
    CorpusEntry,
    builtin_approaches,
    complexity_histogram,
    coverage_matrix,
    covers,
    format_csv,
    format_text,
    loads_registry,
)
from rcmforge.errors import RCMError, RegistryError
from rcmforge.model import PROPERTY_CODES, PrimitiveRequirement, property_profile


@pytest.fixture(scope="module")
def approaches():
    return {a.code: a for a in builtin_approaches()}


@pytest.fixture(scope="module")
def stats(corpus):
    entries = [CorpusEntry(f"{name}.{i}", pr) for name, r in sorted(corpus.items())
               for i, pr in enumerate(r.primitives, 1)]
    return coverage_matrix(entries)


def test_registry_shape(approaches):
    assert list(approaches) == [f"A{i}" for i in range(1, 16)]
    assert sum(len(a.formats) for a in approaches.values()) == 29
    assert [len(approaches[c].formats) for c in ("A1", "A2", "A9", "A13")] == [2, 3, 1, 6]


def test_ears_and_ace_rows(approaches):
    assert set(approaches["A2"].formats) == {
        frozenset({"A", "C", "T"}), frozenset({"A", "C", "SP"}), frozenset({"A", "T", "SP"})}
    assert approaches["A9"].formats == (frozenset({"A", "C", "Hidden"}),)
    assert approaches["A2"].name == "EARS"


def test_covers_examples(approaches):
    ears = approaches["A2"]
    assert covers(ears, {"A", "C", "T"})
    assert covers(ears, {"A", "SP"})
    assert not covers(ears, {"A", "T", "SP", "C"})
    assert covers(approaches["A9"], {"A", "Hidden"})


def test_action_alone_is_covered_by_every_approach(approaches):
    assert all(covers(a, {"A"}) for a in approaches.values())


def test_rcm_covers_everything():
    assert covers(RCM, set(PROPERTY_CODES))


def test_fixture_corpus_spans_all_codes(stats):
    assert stats.size >= 25
    assert set().union(*stats.profiles) == set(PROPERTY_CODES)


def test_rcm_coverage_is_total(stats):
    assert stats.percentage("RCM") == 100
    assert stats.approaches[-1] is RCM


def test_no_single_approach_covers_the_corpus(stats):
    for a in stats.approaches[:-1]:
        assert stats.covered_count(a.code) < stats.size, a.code


def test_five_property_profile_uncovered(approaches, corpus):
    profile = {"C", "SP", "A", "A-vt", "A-rt"}
    assert property_profile(corpus["deceleration_after"].primitives[0]) == profile
    assert not any(covers(a, profile) for a in approaches.values())


def test_uncovered_by_all(stats):
    uncovered = stats.uncovered_by_all()
    assert "deceleration_after.1" in uncovered
    assert "deceleration_before.1" in uncovered
    assert "monitor_mode.1" not in uncovered


def test_covers_matches_subset_oracle_on_random_profiles(approaches):
    rng = random.Random(7)
    rows = {code: [sorted(f) for f in a.formats] for code, a in approaches.items()}
    for _ in range(2000):
        profile = {c for c in PROPERTY_CODES if rng.random() < 0.2} | {"A"}
        for code, a in approaches.items():
            assert covers(a, profile) == subset_covers(rows[code], profile)


profiles = st.sets(st.sampled_from(PROPERTY_CODES))


@given(profiles, profiles)
def test_coverage_is_monotone(p, extra):
    for a in builtin_approaches():
        if covers(a, p | extra):
            assert covers(a, p)


def test_histogram(corpus):
    six = property_profile(corpus["six_properties"].primitives[0])
    assert complexity_histogram([six]) == {6: 100}
    one = property_profile(corpus["monitor_mode"].primitives[0])
    hist = complexity_histogram([six, one, one, six])
    assert hist == {1: 50, 6: 50}
    assert complexity_histogram([]) == {}


def test_histogram_sums_to_100(stats):
    assert sum(stats.histogram().values()) == 100
    assert all(isinstance(v, Fraction) for v in stats.histogram().values())


def test_property_frequency(stats):
    freq = stats.property_frequency()
    assert list(freq) == list(PROPERTY_CODES)
    assert freq["A"] == stats.size


def test_invalid_primitives_are_excluded():
    s = coverage_matrix([PrimitiveRequirement(actions=None)])
    assert s.size == 0 and len(s.invalid) == 1
    assert s.percentage("RCM") == 0


def test_rcm_code_is_reserved():
    with pytest.raises(RCMError, match="reserved"):
        coverage_matrix([], [Approach("RCM", "x", ({"A"},))])


def test_custom_registry():
    text = "# custom\nX1\tOnly actions\tA\nX1\tOnly actions\tA,C\t[cite]\nX2\tTriggers\tA,T\n"
    reg = loads_registry(text)
    assert [a.code for a in reg] == ["X1", "X2"]
    assert reg[0].formats == (frozenset({"A"}), frozenset({"A", "C"}))
    assert reg[0].citation == "[cite]"


@pytest.mark.parametrize("text,line,message", [
    ("X1\tname\n", 1, "columns"),
    ("X1\tname\tA\nX1\tname\tA,Q\n", 2, "unknown property"),
    ("X1\tname\t,\n", 1, "empty format"),
    ("X1\tname\tA\nX1\tother\tA\n", 2, "renamed"),
])
def test_registry_errors(text, line, message):
    with pytest.raises(RegistryError, match=message) as exc:
        loads_registry(text, "reg.tsv")
    assert exc.value.line == line


def test_csv_report(stats):
    lines = format_csv(stats).splitlines()
    assert lines[0].split(",") == ["requirement", "profile", *(f"A{i}" for i in range(1, 16)), "RCM"]
    assert len(lines) == stats.size + 1
    assert all(line.endswith(",1") for line in lines[1:])


def test_text_report(stats):
    text = format_text(stats)
    assert f"corpus: {stats.size} requirement(s)" in text
    assert "RCM" in text and "100.0%" in text
