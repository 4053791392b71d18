import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rcmforge.fixtures import load_fixtures  # noqa: E402
from rcmforge.frames import builtin_frames  # noqa: E402


@pytest.fixture(autouse=True)
def _no_frame_override(monkeypatch):
    monkeypatch.delenv("RCMFORGE_FRAMES", raising=False)


@pytest.fixture(scope="session")
def db():
    return builtin_frames()


@pytest.fixture(scope="session")
def corpus():
    return load_fixtures(builtin_frames())


@pytest.fixture(scope="session")
def primitives(corpus):
    return [pr for r in corpus.values() for pr in r.primitives]
