from __future__ import annotations

import io
from fractions import Fraction
from pathlib import Path

import pytest

from reprules.dataset import TransactionDataset, load_basket
from reprules.measures import RelationalTable, build_table, read_table_csv
from reprules.miner import mine_rules

DATA = Path(__file__).parent / "data"

# Running example: rules r1..r14 as (premise, conclusion) labels
EXAMPLE_RULES = {
    1: ("a", "d"), 2: ("b", "c"), 3: ("b", "d"), 4: ("c", "b"), 5: ("c", "d"),
    6: ("d", "a"), 7: ("d", "b"), 8: ("d", "c"), 9: ("b", "cd"), 10: ("c", "bd"),
    11: ("d", "bc"), 12: ("bc", "d"), 13: ("bd", "c"), 14: ("cd", "b"),
}

# Freq, Conf, Pearl exactly as printed in the running example's table
PRINTED = {
    1: ("0.20", "0.66", "0.02"), 2: ("0.20", "0.66", "0.05"), 3: ("0.20", "0.66", "0.02"),
    4: ("0.20", "0.40", "0.05"), 5: ("0.20", "0.40", "0.10"), 6: ("0.20", "0.33", "0.02"),
    7: ("0.20", "0.33", "0.01"), 8: ("0.20", "0.33", "0.10"), 9: ("0.10", "0.33", "0.03"),
    10: ("0.10", "0.20", "0.00"), 11: ("0.10", "0.16", "0.02"), 12: ("0.10", "0.50", "0.02"),
    13: ("0.10", "0.50", "0.00"), 14: ("0.10", "0.50", "0.04"),
}


def example_names(table: RelationalTable) -> dict[int, object]:
    """Map running-example rule numbers to the rules of ``table`` by their item labels."""
    by_labels = {
        (frozenset(table.labels[i] for i in r.premise), frozenset(table.labels[i] for i in r.conclusion)): r
        for r in table.rules
    }
    return {k: by_labels[(frozenset(p), frozenset(c))] for k, (p, c) in EXAMPLE_RULES.items()}


def names_of(rules, names: dict) -> set[int]:
    back = {r.id: k for k, r in names.items()}
    return {back[r.id] for r in rules}


@pytest.fixture(scope="session")
def basket_path() -> Path:
    return DATA / "table1a.basket"


@pytest.fixture(scope="session")
def ds(basket_path) -> TransactionDataset:
    return load_basket(basket_path)


@pytest.fixture(scope="session")
def table(ds) -> RelationalTable:
    return build_table(ds, mine_rules(ds, Fraction(1, 10)), ["freq", "conf", "pearl"])


@pytest.fixture(scope="session")
def names(table) -> dict:
    return example_names(table)


@pytest.fixture(scope="session")
def printed_table() -> RelationalTable:
    lines = ["id,premise,conclusion,frequency,confidence,pearl"]
    for k, (p, c) in EXAMPLE_RULES.items():
        lines.append(",".join([str(k), " ".join(p), " ".join(c), *PRINTED[k]]))
    return read_table_csv(io.StringIO("\n".join(lines) + "\n"))


def letter(ds: TransactionDataset, labels: str) -> tuple[int, ...]:
    return ds.itemset(labels)


# -- acceptance summary ------------------------------------------------------

_CRITERIA: dict[int, bool] = {}
_SESSION: dict[str, float] = {}
_SUITE_BUDGET = 60.0


def pytest_sessionstart(session):
    import time

    _SESSION["start"] = time.perf_counter()


def pytest_runtest_logreport(report):
    import re

    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_", report.nodeid)
    if not m or (report.when != "call" and not report.failed):
        return
    n = int(m.group(1))
    _CRITERIA[n] = _CRITERIA.get(n, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    import time

    if not _CRITERIA:
        return
    from test_acceptance import TITLES

    elapsed = time.perf_counter() - _SESSION.get("start", time.perf_counter())
    terminalreporter.section("acceptance criteria")
    for n in sorted(TITLES):
        if n not in _CRITERIA:
            continue
        ok = _CRITERIA[n]
        note = ""
        if n == 7:
            # the criterion also bounds the whole suite's runtime
            ok = ok and elapsed < _SUITE_BUDGET
            note = f" (suite {elapsed:.1f} s)"
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {TITLES[n]}{note}")
