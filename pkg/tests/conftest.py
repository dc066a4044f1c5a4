import pytest

from pir_analytics.config import Settings, get_settings
from pir_analytics.ingest import load_fixture
from pir_analytics.models import Phase, StatLine


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    for name in ("PIR_DEGENERATE_VALUE", "PIR_TABLE_DECIMALS", "PIR_LOG_LEVEL", "NO_COLOR"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(scope="session")
def fixture_records():
    return load_fixture()


@pytest.fixture
def settings():
    return Settings(_env_file=None)


@pytest.fixture
def make_line():
    def _make(player="P", season="2000-01", phase=Phase.REGULAR, games=10, **stats):
        return StatLine(player=player, season=season, phase=phase, games=games, **stats)

    return _make


@pytest.fixture
def best_and_worst(make_line):
    """Two records where one is at the top of every positive and the bottom of every negative"""
    best = make_line(season="2000-01", points=30, rebounds=10, assists=10, steals=3, blocks_made=2,
                     fg_missed=5, ft_missed=1, turnovers=1, fouls_committed=1)
    worst = make_line(season="2001-02", points=10, rebounds=2, assists=1, steals=0.5, blocks_made=0,
                      fg_missed=12, ft_missed=4, turnovers=4, fouls_committed=5)
    return best, worst
