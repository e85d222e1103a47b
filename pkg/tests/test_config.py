from src.config.settings import Defaults
from src.config.workers import cpu_count, ordered_map, resolve_workers


def _square(x):
    return x * x


def test_defaults():
    assert Defaults.get_default("bins") == 4096
    assert Defaults.get_default("n") == 10 ** 6
    assert Defaults.get_default("missing") is None


def test_resolve_workers():
    assert resolve_workers(serial=True) == 1
    assert resolve_workers(3) == 3
    assert resolve_workers(None) == cpu_count() >= 1


def test_ordered_map_keeps_order():
    items = [3, 1, 2, 5]
    assert ordered_map(_square, items) == [9, 1, 4, 25]
    assert ordered_map(_square, items, workers=2) == [9, 1, 4, 25]
