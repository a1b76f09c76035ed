"""Level-wise Apriori mining and exhaustive rule generation."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import IO, Sequence, Union

from .dataset import Itemset, TransactionDataset
from .errors import ParameterError


@dataclass(frozen=True)
class Rule:
    """An association rule ``premise -> conclusion`` over item ids."""

    id: int
    premise: Itemset
    conclusion: Itemset

    def __post_init__(self) -> None:
        if not self.premise or not self.conclusion:
            raise ValueError("premise and conclusion must be non-empty")
        if set(self.premise) & set(self.conclusion):
            raise ValueError("premise and conclusion must be disjoint")

    @property
    def items(self) -> Itemset:
        return tuple(sorted(self.premise + self.conclusion))


def as_fraction(value: Union[Fraction, float, int, str]) -> Fraction:
    """Exact rational for a user-supplied number; floats go through ``str``
    so that ``0.1`` means one tenth rather than its binary approximation."""
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def mine_frequent(ds: TransactionDataset, min_freq) -> list[tuple[Itemset, int]]:
    """All itemsets whose relative support is at least ``min_freq``.

    Output is ordered by size, then lexicographically by item ids.
    """
    min_freq = as_fraction(min_freq)
    if not 0 < min_freq <= 1:
        raise ParameterError(f"min_freq must lie in (0, 1], got {min_freq}")
    n = ds.transaction_count
    # supp / n >= min_freq  <=>  supp * den >= num * n
    num, den = min_freq.numerator, min_freq.denominator

    def frequent(count: int) -> bool:
        return count * den >= num * n

    level: dict[Itemset, int] = {}
    for i in range(ds.item_count):
        cover = ds.tid_bitmap(i)
        if frequent(cover.bit_count()):
            level[(i,)] = cover

    result: list[tuple[Itemset, int]] = []
    while level:
        result.extend((x, cover.bit_count()) for x, cover in sorted(level.items()))
        level = _next_level(level, frequent)
    return result


def _next_level(level: dict[Itemset, int], frequent) -> dict[Itemset, int]:
    keys = sorted(level)
    nxt: dict[Itemset, int] = {}
    # join itemsets sharing their first k-1 items
    start = 0
    while start < len(keys):
        prefix = keys[start][:-1]
        end = start
        while end < len(keys) and keys[end][:-1] == prefix:
            end += 1
        block = keys[start:end]
        for a in range(len(block)):
            x = block[a]
            for b in range(a + 1, len(block)):
                cand = x + (block[b][-1],)
                if any(cand[:j] + cand[j + 1:] not in level for j in range(len(cand) - 2)):
                    continue  # downward closure
                cover = level[x] & level[block[b]]
                if frequent(cover.bit_count()):
                    nxt[cand] = cover
        start = end
    return nxt


def generate_rules(frequent: Sequence[tuple[Itemset, int]]) -> list[Rule]:
    """Every split ``X -> Z \\ X`` of every frequent itemset ``Z`` with ``|Z| >= 2``.

    Rules are numbered from 1 in the order (|Z|, |X|, X, Y), which lists
    short rules first and keeps premises of one itemset grouped by size.
    """
    splits = []
    for z, _ in frequent:
        if len(z) < 2:
            continue
        for size in range(1, len(z)):
            for x in combinations(z, size):
                y = tuple(i for i in z if i not in x)
                splits.append((len(z), size, x, y))
    splits.sort()
    return [Rule(k, x, y) for k, (_, _, x, y) in enumerate(splits, start=1)]


def mine_rules(ds: TransactionDataset, min_freq) -> list[Rule]:
    return generate_rules(mine_frequent(ds, min_freq))


def write_rules_csv(rules: Sequence[Rule], labels: Sequence[str], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["id", "premise", "conclusion"])
    for r in rules:
        writer.writerow([
            r.id,
            " ".join(labels[i] for i in r.premise),
            " ".join(labels[i] for i in r.conclusion),
        ])
