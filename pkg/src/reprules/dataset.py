"""Transaction datasets in basket format and exact support counting.

A basket file holds one transaction per line as whitespace separated item
tokens.  Blank lines and lines starting with ``#`` are skipped.  Tokens are
interned to dense integer ids in order of first appearance.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable, Sequence, Union

from .errors import DomainError, EmptyDatasetError, InputError

Itemset = tuple[int, ...]

Source = Union[str, os.PathLike, IO[bytes], IO[str]]


@dataclass(frozen=True)
class Item:
    id: int
    label: str


@dataclass(frozen=True)
class Transaction:
    tid: int
    items: Itemset


class TransactionDataset:
    """Immutable collection of transactions with a vertical tid index.

    Each item keeps its tid-list as an integer bitmap (bit ``t`` set when
    transaction ``t`` contains the item), so the support of an itemset is
    the popcount of the AND of its members' bitmaps.
    """

    def __init__(self, transactions: Sequence[Sequence[int]], labels: Sequence[str]):
        self._labels = tuple(labels)
        self._ids = {label: i for i, label in enumerate(self._labels)}
        if len(self._ids) != len(self._labels):
            raise ValueError("item labels must be unique")
        bitmaps = [0] * len(self._labels)
        txs = []
        for tid, items in enumerate(transactions):
            canon = tuple(sorted(set(items)))
            if not canon:
                raise ValueError(f"transaction {tid} is empty")
            for i in canon:
                if not 0 <= i < len(self._labels):
                    raise DomainError(f"unknown item id {i} in transaction {tid}")
                bitmaps[i] |= 1 << tid
            txs.append(Transaction(tid, canon))
        self._transactions = tuple(txs)
        self._bitmaps = tuple(bitmaps)
        self._all = (1 << len(txs)) - 1
        self._support_cache: dict[Itemset, int] = {}

    @classmethod
    def from_baskets(cls, baskets: Iterable[Iterable[str]]) -> "TransactionDataset":
        """Build a dataset from token lists, interning labels by first appearance."""
        ids: dict[str, int] = {}
        rows = []
        for basket in baskets:
            row = []
            for token in basket:
                if token not in ids:
                    ids[token] = len(ids)
                row.append(ids[token])
            if row:
                rows.append(row)
        return cls(rows, list(ids))

    # -- accessors -------------------------------------------------------

    @property
    def transactions(self) -> tuple[Transaction, ...]:
        return self._transactions

    @property
    def transaction_count(self) -> int:
        return len(self._transactions)

    def __len__(self) -> int:
        return len(self._transactions)

    @property
    def item_count(self) -> int:
        return len(self._labels)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def items(self) -> list[Item]:
        return [Item(i, label) for i, label in enumerate(self._labels)]

    def item_id(self, label: str) -> int:
        try:
            return self._ids[label]
        except KeyError:
            raise DomainError(f"unknown item {label!r}") from None

    def itemset(self, labels: Iterable[str]) -> Itemset:
        """Canonical itemset (sorted ids) for a collection of labels."""
        return tuple(sorted({self.item_id(label) for label in labels}))

    def render(self, itemset: Iterable[int]) -> str:
        return " ".join(self._labels[i] for i in itemset)

    @property
    def tid_lists(self) -> list[frozenset[int]]:
        return [frozenset(_bits(b)) for b in self._bitmaps]

    def tid_bitmap(self, item: int) -> int:
        if not 0 <= item < len(self._bitmaps):
            raise DomainError(f"unknown item id {item}")
        return self._bitmaps[item]

    # -- support ---------------------------------------------------------

    def cover(self, itemset: Iterable[int]) -> int:
        """Bitmap of the transactions containing every item of ``itemset``."""
        mask = self._all
        for i in itemset:
            mask &= self.tid_bitmap(i)
            if not mask:
                break
        return mask

    def support(self, itemset: Iterable[int]) -> int:
        key = tuple(sorted(set(itemset)))
        hit = self._support_cache.get(key)
        if hit is None:
            hit = self.cover(key).bit_count()
            self._support_cache[key] = hit
        return hit


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def support(ds: TransactionDataset, x: Iterable[int]) -> int:
    """Number of transactions of ``ds`` containing every item of ``x``."""
    return ds.support(x)


def dataset_stats(ds: TransactionDataset) -> tuple[int, int, Fraction]:
    """Return ``(item_count, transaction_count, average transaction size)``."""
    occurrences = sum(len(t.items) for t in ds.transactions)
    return ds.item_count, ds.transaction_count, Fraction(occurrences, ds.transaction_count)


def parse_basket_lines(lines: Iterable[str]) -> list[list[str]]:
    baskets = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        baskets.append(line.split())
    return baskets


def load_basket(source: Source) -> TransactionDataset:
    """Read a basket file from a path or an open (binary or text) stream."""
    try:
        if isinstance(source, (str, os.PathLike)):
            with open(source, "rb") as fh:
                raw = fh.read()
        else:
            raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read basket input: {exc}") from exc
    baskets = parse_basket_lines(io.StringIO(text))
    if not baskets:
        raise EmptyDatasetError("basket input contains no transactions")
    return TransactionDataset.from_baskets(baskets)


def write_basket(baskets: Iterable[Iterable[str]], fh: IO[str]) -> None:
    for basket in baskets:
        fh.write(" ".join(basket) + "\n")
