"""Dominance between rules and the brute-force reference sets built on it.

The all-pairs routines here define ground truth for the RAR search.  They
work on the per-column rank matrix of a table, which orders rules exactly as
the underlying rational values do.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .measures import Measure, RelationalTable, get_measure
from .miner import Rule


class ValueDominance(enum.Enum):
    STRICTLY_DOMINATES = "strictly_dominates"
    DOMINATES = "dominates"
    NEITHER = "neither"


class Outcome(enum.Enum):
    STRICTLY_DOMINATES = "strictly_dominates"
    STRICTLY_DOMINATED = "strictly_dominated"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable_by_dominance"

    def mirror(self) -> "Outcome":
        return _MIRROR[self]


_MIRROR = {
    Outcome.STRICTLY_DOMINATES: Outcome.STRICTLY_DOMINATED,
    Outcome.STRICTLY_DOMINATED: Outcome.STRICTLY_DOMINATES,
    Outcome.EQUIVALENT: Outcome.EQUIVALENT,
    Outcome.INCOMPARABLE: Outcome.INCOMPARABLE,
}


@dataclass
class ComparisonCounter:
    """Number of rule-pair dominance tests performed."""

    count: int = 0

    def add(self, n: int) -> None:
        self.count += int(n)


def value_dominates(x, y, m: str | Measure) -> ValueDominance:
    d = get_measure(m).direction
    x, y = x * d, y * d
    if x > y:
        return ValueDominance.STRICTLY_DOMINATES
    if x == y:
        return ValueDominance.DOMINATES
    return ValueDominance.NEITHER


def compare_vectors(a: Sequence, b: Sequence, measures: Sequence[Measure] | None = None) -> Outcome:
    """Dominance outcome of ``a`` against ``b`` (both oriented by ``measures``)."""
    dirs = [1] * len(a) if measures is None else [m.direction for m in measures]
    better = worse = False
    for x, y, d in zip(a, b, dirs):
        if x * d > y * d:
            better = True
        elif x * d < y * d:
            worse = True
        if better and worse:
            return Outcome.INCOMPARABLE
    if better:
        return Outcome.STRICTLY_DOMINATES
    if worse:
        return Outcome.STRICTLY_DOMINATED
    return Outcome.EQUIVALENT


def compare_rules(t: RelationalTable, r: Rule | int, r2: Rule | int) -> Outcome:
    return compare_vectors(t.vector(r), t.vector(r2), t.measures)


def strictly_dominates(t: RelationalTable, r: Rule | int, r2: Rule | int) -> bool:
    return compare_rules(t, r, r2) is Outcome.STRICTLY_DOMINATES


def comparable(r: Rule, r2: Rule) -> bool:
    """Semantic comparability: one rule's premise and conclusion are both
    contained in the other's."""
    p, c, p2, c2 = map(frozenset, (r.premise, r.conclusion, r2.premise, r2.conclusion))
    return (p <= p2 and c <= c2) or (p2 <= p and c2 <= c)


# -- vectorised helpers ------------------------------------------------------

def item_masks(rules: Sequence[Rule]) -> tuple[np.ndarray, np.ndarray]:
    """Premise and conclusion bitmasks as numpy arrays (uint64 when they fit)."""
    def mask(itemset: Iterable[int]) -> int:
        m = 0
        for i in itemset:
            m |= 1 << i
        return m

    prem = [mask(r.premise) for r in rules]
    conc = [mask(r.conclusion) for r in rules]
    widest = max((x.bit_length() for x in prem + conc), default=0)
    dtype = np.uint64 if widest <= 64 else object
    return np.array(prem, dtype=dtype), np.array(conc, dtype=dtype)


def comparable_mask(prem: np.ndarray, conc: np.ndarray, i: int, idx: np.ndarray) -> np.ndarray:
    """``comparable(rule_i, rule_j)`` for every ``j`` in ``idx``."""
    pi, ci = prem[i], conc[i]
    pj, cj = prem[idx], conc[idx]
    zero = pj.dtype.type(0) if pj.dtype != object else 0
    down = ((pi & ~pj) == zero) & ((ci & ~cj) == zero)  # rule_i inside rule_j
    up = ((pj & ~pi) == zero) & ((cj & ~ci) == zero)
    return np.asarray(down | up, dtype=bool)


def dominated_by(ranks: np.ndarray, i: int, idx: np.ndarray) -> np.ndarray:
    """Which rules of ``idx`` rule ``i`` strictly dominates."""
    rows = ranks[idx]
    ri = ranks[i]
    return np.all(rows <= ri, axis=1) & np.any(rows < ri, axis=1)


def dominators_exist(ranks: np.ndarray, counter: ComparisonCounter | None = None) -> np.ndarray:
    """Boolean vector: is row ``i`` strictly dominated by any other row?"""
    n, k = ranks.shape
    cols = [np.ascontiguousarray(ranks[:, j], dtype=np.int32) for j in range(k)]
    block = max(1, 8_000_000 // max(1, n))
    out = np.zeros(n, dtype=bool)
    for start in range(0, n, block):
        stop = min(n, start + block)
        # ge[a, b]: row b is >= row start+a everywhere; gt: > somewhere
        ge = cols[0][None, :] >= cols[0][start:stop, None]
        gt = cols[0][None, :] > cols[0][start:stop, None]
        for c in cols[1:]:
            mine = c[start:stop, None]
            ge &= c[None, :] >= mine
            gt |= c[None, :] > mine
        out[start:stop] = np.any(ge & gt, axis=1)
    if counter is not None:
        counter.add(n * (n - 1))
    return out


# -- reference sets ----------------------------------------------------------

def skyline_mask(t: RelationalTable, counter: ComparisonCounter | None = None) -> np.ndarray:
    if not t.rules:
        return np.zeros(0, dtype=bool)
    return ~dominators_exist(t.ranks, counter)


def skyline_naive(t: RelationalTable, counter: ComparisonCounter | None = None) -> list[Rule]:
    """Rules no other rule strictly dominates, in table order."""
    mask = skyline_mask(t, counter)
    return [r for r, keep in zip(t.rules, mask) if keep]


def icomp(t: RelationalTable, r: Rule | int) -> list[Rule]:
    """Rules strictly dominated by ``r`` but not comparable with it."""
    i = t.index(r)
    rule = t.rules[i]
    everyone = np.arange(len(t))
    dom = dominated_by(t.ranks, i, everyone)
    return [t.rules[j] for j in np.flatnonzero(dom) if not comparable(rule, t.rules[j])]


def representative_mask(t: RelationalTable, counter: ComparisonCounter | None = None,
                        sky_mask: np.ndarray | None = None) -> np.ndarray:
    """Mask form of :func:`representative_oracle`.

    A precomputed ``sky_mask`` may be passed to skip the skyline pass; the
    counter is then charged as if the pass had run.
    """
    n = len(t)
    keep = np.ones(n, dtype=bool)
    if n == 0:
        return keep
    if sky_mask is None:
        sky_mask = skyline_mask(t, counter)
    elif counter is not None:
        counter.add(n * (n - 1))
    sky = np.flatnonzero(sky_mask)
    prem, conc = item_masks(t.rules)
    everyone = np.arange(n)
    for s in sky:
        dom = dominated_by(t.ranks, s, everyone)
        hit = np.flatnonzero(dom)
        if len(hit):
            keep[hit[comparable_mask(prem, conc, s, hit)]] = False
        if counter is not None:
            counter.add(n - 1)
    return keep


def representative_oracle(t: RelationalTable, counter: ComparisonCounter | None = None,
                          sky_mask: np.ndarray | None = None) -> list[Rule]:
    """Rules not strictly dominated by any comparable skyline rule."""
    mask = representative_mask(t, counter, sky_mask)
    return [r for r, keep in zip(t.rules, mask) if keep]


def dominance_matrix(t: RelationalTable) -> np.ndarray:
    """``D[i, j]`` is true when rule ``i`` strictly dominates rule ``j``."""
    ranks = t.ranks
    ge = np.all(ranks[:, None, :] >= ranks[None, :, :], axis=2)
    gt = np.any(ranks[:, None, :] > ranks[None, :, :], axis=2)
    return ge & gt

