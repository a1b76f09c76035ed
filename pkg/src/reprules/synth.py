"""Seeded synthetic basket generator for differential and scale testing."""

from __future__ import annotations

import random


def item_labels(n_items: int) -> list[str]:
    width = len(str(max(n_items - 1, 0)))
    return [f"i{k:0{width}d}" for k in range(n_items)]


def generate_baskets(n_items: int, n_transactions: int, density: float,
                     seed: int) -> tuple[list[list[str]], int]:
    """Bernoulli baskets: each item joins each transaction with probability ``density``.

    Returns ``(baskets, n_empty)``; empty transactions are left out and only
    counted, since the basket format cannot represent them.
    """
    if n_items < 1 or n_transactions < 1:
        raise ValueError("need at least one item and one transaction")
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    labels = item_labels(n_items)
    baskets, empty = [], 0
    for _ in range(n_transactions):
        row = [lab for lab in labels if rng.random() < density]
        if row:
            baskets.append(row)
        else:
            empty += 1
    return baskets, empty
