import json
from pathlib import Path

import pytest

from vizlint import load_default_catalog, profile_dataset

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
CORPUS = Path(__file__).resolve().parent / "corpus"


@pytest.fixture(scope="session")
def cars():
    return profile_dataset(DATA / "cars.json")


@pytest.fixture(scope="session")
def weather():
    return profile_dataset(DATA / "seattle-weather.csv")


@pytest.fixture(scope="session")
def airports():
    return profile_dataset(DATA / "airports.csv")


@pytest.fixture(scope="session")
def profiles(cars, weather, airports):
    return {"cars": cars, "seattle-weather": weather, "airports": airports}


@pytest.fixture(scope="session")
def catalog():
    return load_default_catalog()


def load_corpus() -> list[dict]:
    fixtures = []
    for path in sorted(CORPUS.glob("*.json")):
        fixture = json.loads(path.read_text())
        fixture["id"] = path.stem
        fixtures.append(fixture)
    return fixtures


CORPUS_FIXTURES = load_corpus()
