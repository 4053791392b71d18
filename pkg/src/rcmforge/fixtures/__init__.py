"""Bundled requirement corpus: one ``.req`` DSL file per requirement, named after its id."""

from __future__ import annotations

from importlib import resources

from ..dsl import parse_dsl
from ..model import Requirement


def fixture_names() -> list[str]:
    files = resources.files(__name__).iterdir()
    return sorted(f.name[:-4] for f in files if f.name.endswith(".req"))


def fixture_text(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.req").read_text(encoding="utf-8")


def load_fixture(name: str, db=None) -> Requirement:
    return parse_dsl(fixture_text(name), db)


def load_fixtures(db=None) -> dict[str, Requirement]:
    return {name: load_fixture(name, db) for name in fixture_names()}
