import os
from pathlib import Path

import pytest

from syllogist.dsl import Lexicon, load_lexicon
from syllogist.numbers import Fuzzy, TrapezoidalQuantifier
from syllogist.settings import get_settings

FIXTURES = Path(__file__).parent / "fixtures"

MOST = TrapezoidalQuantifier.from_points([0.7, 0.8, 0.9, 1.0])


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    if os.environ.get("SYLLOGIST_SLOW_TESTS") == "1":
        return
    skip = pytest.mark.skip(reason="set SYLLOGIST_SLOW_TESTS=1 to run full-size checks")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch: pytest.MonkeyPatch):
    for name in list(os.environ):
        if name.startswith("SYLLOGIST_") and name != "SYLLOGIST_SLOW_TESTS":
            monkeypatch.delenv(name)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture
def lexicon_path() -> Path:
    return FIXTURES / "lexicon.json"


@pytest.fixture
def lexicon(lexicon_path: Path) -> Lexicon:
    return load_lexicon(lexicon_path)


@pytest.fixture
def most() -> Fuzzy:
    return Fuzzy(trapezoid=MOST, label="most")
