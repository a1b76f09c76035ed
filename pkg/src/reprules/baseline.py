"""Threshold-based selection used as the comparison point for RAR."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ParameterError
from .measures import Measure, RelationalTable, get_measure
from .miner import Rule, as_fraction


@dataclass(frozen=True)
class ThresholdVector:
    measures: tuple[Measure, ...]
    values: tuple[Fraction, ...]

    def as_dict(self) -> dict[str, Fraction]:
        return {m.name: v for m, v in zip(self.measures, self.values)}

    @classmethod
    def from_mapping(cls, t: RelationalTable, mapping: Mapping[str, object]) -> "ThresholdVector":
        """Thresholds for the columns of ``t`` from a ``{measure: value}`` mapping."""
        given = {get_measure(k).name: as_fraction(v) for k, v in mapping.items()}
        missing = [m.name for m in t.measures if m.name not in given]
        if missing:
            raise ParameterError(f"no threshold given for {', '.join(missing)}")
        return cls(t.measures, tuple(given[m.name] for m in t.measures))


def thresholds_from_rr(t: RelationalTable, rr: Iterable[Rule]) -> ThresholdVector:
    """Per-measure minimum (least preferred value) over ``rr``."""
    rows = [t.vector(r) for r in rr]
    if not rows:
        raise ParameterError("thresholds need at least one representative rule")
    eps = []
    for j, m in enumerate(t.measures):
        col = [row[j] for row in rows]
        eps.append(min(col) if m.direction > 0 else max(col))
    return ThresholdVector(t.measures, tuple(eps))


def tb_rules(t: RelationalTable, eps: ThresholdVector) -> list[Rule]:
    """Rules meeting every threshold (inclusive), in table order."""
    if [m.name for m in eps.measures] != [m.name for m in t.measures]:
        raise ParameterError("threshold measures do not match the table columns")
    dirs = [m.direction for m in t.measures]
    return [r for r, row in zip(t.rules, t.values)
            if all(v * d >= e * d for v, e, d in zip(row, eps.values, dirs))]


def gain(tb: Sequence | int, rr: Sequence | int) -> float:
    """Reduction factor ``|TB| / |RR|``."""
    n_tb = tb if isinstance(tb, int) else len(tb)
    n_rr = rr if isinstance(rr, int) else len(rr)
    if n_rr == 0:
        raise ParameterError("gain is undefined for an empty representative set")
    return n_tb / n_rr


def summarize_gains(rows: Sequence[tuple[int, int]]) -> dict[str, float]:
    """Aggregate ``(|TB|, |RR|)`` pairs over several datasets.

    Reports both the mean of per-dataset gains and the ratio of the mean
    sizes, since the two generally differ.
    """
    if not rows:
        raise ParameterError("no rows to summarize")
    gains = [gain(tb, rr) for tb, rr in rows]
    mean_tb = sum(tb for tb, _ in rows) / len(rows)
    mean_rr = sum(rr for _, rr in rows) / len(rows)
    return {
        "mean_gain": sum(gains) / len(gains),
        "ratio_of_means": mean_tb / mean_rr,
        "mean_tb": mean_tb,
        "mean_rr": mean_rr,
    }
