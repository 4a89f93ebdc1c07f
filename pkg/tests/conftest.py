import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from src.core.config import RepairConfig
from src.core.lexicon import Lexicon, read_lexicon

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

settings.register_profile("ci", suppress_health_check=(HealthCheck.too_slow,), deadline=None)
if os.environ.get("CI"):
    settings.load_profile("ci")


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def no_es() -> Lexicon:
    return read_lexicon(str(FIXTURES / "no-es.lex"))


@pytest.fixture(scope="session")
def en_fr() -> Lexicon:
    return read_lexicon(str(FIXTURES / "en-fr.lex"))


@pytest.fixture(scope="session")
def lexicons(no_es: Lexicon, en_fr: Lexicon) -> dict:
    return {"no-es": no_es, "en-fr": en_fr}


@pytest.fixture(scope="session")
def config() -> RepairConfig:
    return RepairConfig()
