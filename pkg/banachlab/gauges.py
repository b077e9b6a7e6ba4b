import math
from typing import Callable, Dict

from banachlab.errors import SpaceSemanticError

GAUGE_CHECK_LENGTH = 64

GAUGES: Dict[str, Callable[[int], float]] = {}


def register_gauge(name: str, gauge: Callable[[int], float]):
    values = [gauge(length) for length in range(1, GAUGE_CHECK_LENGTH + 1)]
    if any(value < 1 for value in values):
        raise SpaceSemanticError(f"gauge '{name}' takes values below 1")
    if any(later < earlier for earlier, later in zip(values[1:], values[2:])):
        raise SpaceSemanticError(f"gauge '{name}' is not nondecreasing from l=2")
    GAUGES[name] = gauge


def get_gauge(name: str) -> Callable[[int], float]:
    gauge = GAUGES.get(name)
    if gauge is None:
        raise SpaceSemanticError(f"unknown gauge '{name}', registered: {', '.join(sorted(GAUGES))}")
    return gauge


def log2_gauge(length: int) -> float:
    return math.log2(1 + length)


def sqrt_gauge(length: int) -> float:
    return math.sqrt(1 + length)


register_gauge("log2", log2_gauge)
register_gauge("sqrt", sqrt_gauge)
