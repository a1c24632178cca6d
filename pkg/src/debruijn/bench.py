"""Streaming throughput measurement and the linear-cost fit."""

from __future__ import annotations

import itertools
import math
import time
from collections import deque
from dataclasses import dataclass, asdict

from .generator import stream_bits
from .rules import RuleSpec, successor_rule


@dataclass(frozen=True)
class BenchPoint:
    n: int
    bits: int
    ns_per_bit: float

    def to_json(self) -> dict:
        return asdict(self)


def measure_stream_ns(spec: RuleSpec, bits: int, repeats: int = 3) -> float:
    """Best-of-``repeats`` nanoseconds per streamed bit."""
    best = math.inf
    for _ in range(repeats):
        rule = successor_rule(spec)
        source = stream_bits(rule)
        sink = deque(maxlen=0)
        start = time.perf_counter_ns()
        sink.extend(itertools.islice(source, bits))
        elapsed = time.perf_counter_ns() - start
        best = min(best, elapsed / bits)
    return best


def run_bench(
    family: str,
    orders: list[int],
    bits: int,
    params: dict | None = None,
    repeats: int = 3,
) -> list[BenchPoint]:
    points = []
    for n in orders:
        spec = RuleSpec(n, family, dict(params or {}))
        points.append(BenchPoint(n, bits, measure_stream_ns(spec, bits, repeats)))
    return points


def fit_linear(xs: list[float], ys: list[float]) -> tuple[float, float, float]:
    """Least-squares a + b*x fit; returns (a, b, relative rms residual).

    The residual is the rms of the fit errors divided by the rms of the data,
    so a value well below 1 means the points are explained by a straight line.
    """
    count = len(xs)
    if count < 2:
        raise ValueError("need at least two points to fit")
    mean_x = sum(xs) / count
    mean_y = sum(ys) / count
    sxx = sum((x - mean_x) ** 2 for x in xs)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    slope = sxy / sxx if sxx else 0.0
    intercept = mean_y - slope * mean_x
    ss_res = sum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum(y * y for y in ys)
    residual = math.sqrt(ss_res / ss_tot) if ss_tot else 0.0
    return intercept, slope, residual
