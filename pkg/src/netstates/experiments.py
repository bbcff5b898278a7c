"""Model-comparison harness: can a distance measure tell two graph models apart?

For models A and B, sample many independent graph pairs for the three
comparisons A-A, B-B and A-B, and report the mean and standard deviation of
the distance in each, scaled so the A-B mean is 1. A measure discriminates
the models when both within-model means sit well below the cross-model mean.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import IO, Sequence

import numpy as np

from .distances import Measure, graph_distance
from .generators import GeneratorConfig

COMPARISONS = ("within_a", "within_b", "cross")


@dataclass(frozen=True)
class ComparisonStats:
    """Sample moments of the distance over independently generated pairs."""

    mean: float
    std: float
    count: int

    @property
    def standard_error(self) -> float:
        return self.std / math.sqrt(self.count)


@dataclass
class ExperimentReport:
    measure: Measure
    model_a: str
    model_b: str
    pairs: int
    seed: int
    within_a: ComparisonStats
    within_b: ComparisonStats
    cross: ComparisonStats

    @property
    def scale(self) -> float:
        """Cross-model mean; dividing by it pins the scaled cross mean to 1."""
        return self.cross.mean

    def stats(self, comparison: str) -> ComparisonStats:
        if comparison not in COMPARISONS:
            raise ValueError(f"unknown comparison {comparison!r}")
        return getattr(self, comparison)

    def scaled_mean(self, comparison: str) -> float:
        if self.scale == 0.0:
            raise ValueError("cross-model mean distance is zero; scaling undefined")
        return self.stats(comparison).mean / self.scale

    def separation_z(self, comparison: str) -> float:
        """(cross mean - within mean) in units of the pooled standard error."""
        within = self.stats(comparison)
        pooled = math.sqrt(within.standard_error**2 + self.cross.standard_error**2)
        if pooled == 0.0:
            return math.inf if self.cross.mean != within.mean else 0.0
        return (self.cross.mean - within.mean) / pooled

    def to_dict(self) -> dict:
        out = {
            "measure": self.measure.to_dict(),
            "model_a": self.model_a,
            "model_b": self.model_b,
            "pairs": self.pairs,
            "seed": self.seed,
            "scale": self.scale,
        }
        for name in COMPARISONS:
            s = self.stats(name)
            out[name] = {
                "mean": s.mean,
                "std": s.std,
                "count": s.count,
                "scaled_mean": s.mean / self.scale if self.scale else None,
            }
        return out


def write_report_json(reports: "ExperimentReport | Sequence[ExperimentReport]", stream: IO[str]) -> None:
    if isinstance(reports, ExperimentReport):
        reports = [reports]
    json.dump([r.to_dict() for r in reports], stream, sort_keys=True, indent=2)
    stream.write("\n")


def _stats(values: np.ndarray) -> ComparisonStats:
    return ComparisonStats(
        mean=float(values.mean()), std=float(values.std(ddof=1)), count=len(values)
    )


def run_model_comparison(
    model_a: GeneratorConfig,
    model_b: GeneratorConfig,
    measure: Measure | Sequence[Measure],
    pairs: int,
    seed: int = 0,
) -> ExperimentReport | list[ExperimentReport]:
    """Sample `pairs` graph pairs per comparison and summarize the distances.

    Passing a sequence of measures evaluates every measure on the same
    sampled graphs (one report each), which is far cheaper than separate
    runs. Deterministic for a fixed seed: graph sampling is independent of
    the measure list.
    """
    if pairs < 2:
        raise ValueError("need at least 2 pairs per comparison")
    if model_a.n != model_b.n:
        raise ValueError("models must produce equal node counts")
    measures = [measure] if isinstance(measure, Measure) else list(measure)
    if not measures:
        raise ValueError("no measure given")

    rng = np.random.default_rng(seed)
    results: dict[str, np.ndarray] = {}
    for name, (cfg1, cfg2) in (
        ("within_a", (model_a, model_a)),
        ("within_b", (model_b, model_b)),
        ("cross", (model_a, model_b)),
    ):
        values = np.empty((len(measures), pairs))
        for p in range(pairs):
            s1, s2 = rng.integers(2**63, size=2)
            try:
                g1 = cfg1.sample(int(s1))
            except Exception as exc:
                raise RuntimeError(f"model {cfg1.describe()} failed: {exc}") from exc
            try:
                g2 = cfg2.sample(int(s2))
            except Exception as exc:
                raise RuntimeError(f"model {cfg2.describe()} failed: {exc}") from exc
            for mi, m in enumerate(measures):
                values[mi, p] = graph_distance(g1, g2, m)
        results[name] = values

    reports = [
        ExperimentReport(
            measure=m,
            model_a=model_a.describe(),
            model_b=model_b.describe(),
            pairs=pairs,
            seed=seed,
            within_a=_stats(results["within_a"][mi]),
            within_b=_stats(results["within_b"][mi]),
            cross=_stats(results["cross"][mi]),
        )
        for mi, m in enumerate(measures)
    ]
    return reports[0] if isinstance(measure, Measure) else reports
