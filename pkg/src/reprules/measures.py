"""Interestingness measures and the rules x measures relational table.

All values are exact :class:`~fractions.Fraction` objects computed from
support counts.  Dominance and similarity are evaluated on these exact
values; floats appear only when rendering.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import IO, Callable, Iterable, Sequence

import numpy as np

from .dataset import TransactionDataset
from .errors import DomainError, InputError, ParameterError
from .miner import Rule

log = logging.getLogger(__name__)

# (P(XY), P(X), P(Y)) -> value
Formula = Callable[[Fraction, Fraction, Fraction], Fraction]


@dataclass(frozen=True)
class Measure:
    name: str
    short: str
    formula: Formula = field(repr=False, compare=False)
    domain: tuple[str, str] = ("0", "1")
    direction: int = 1  # +1 higher is preferred, -1 lower is preferred

    def __call__(self, pxy: Fraction, px: Fraction, py: Fraction) -> Fraction:
        return self.formula(pxy, px, py)


def _frequency(pxy, px, py):
    return pxy


def _confidence(pxy, px, py):
    return pxy / px


def _recall(pxy, px, py):
    return pxy / py


def _pearl(pxy, px, py):
    return px * abs(pxy / px - py)


def _loevinger(pxy, px, py):
    conf = pxy / px
    if py == 1:
        log.debug("loevinger undefined for P(Y)=1; clamped")
        return Fraction(1) if conf == 1 else Fraction(0)
    return (conf - py) / (1 - py)


def _zhang(pxy, px, py):
    denom = max(pxy * (1 - py), py * (px - pxy))
    if denom == 0:
        log.debug("zhang denominator is zero; clamped to 0")
        return Fraction(0)
    return (pxy - px * py) / denom


MEASURES: dict[str, Measure] = {
    m.name: m
    for m in (
        Measure("frequency", "freq", _frequency),
        Measure("confidence", "conf", _confidence),
        Measure("recall", "recall", _recall),
        Measure("pearl", "pearl", _pearl),
        Measure("loevinger", "loev", _loevinger, domain=("-inf", "1")),
        Measure("zhang", "zhang", _zhang, domain=("-1", "1")),
    )
}
_ALIASES = {m.short: m for m in MEASURES.values()} | MEASURES


def get_measure(name: str | Measure) -> Measure:
    if isinstance(name, Measure):
        return name
    try:
        return _ALIASES[name.strip().lower()]
    except KeyError:
        valid = ", ".join(sorted(_ALIASES))
        raise ParameterError(f"unknown measure {name!r}; valid names: {valid}") from None


def parse_measures(text: str | Iterable[str]) -> list[Measure]:
    names = text.split(",") if isinstance(text, str) else list(text)
    measures = [get_measure(n) for n in names if str(n).strip()]
    if not measures:
        raise ParameterError("at least one measure is required")
    if len({m.name for m in measures}) != len(measures):
        raise ParameterError("measures must be distinct")
    return measures


def evaluate(ds: TransactionDataset, r: Rule, m: str | Measure) -> Fraction:
    """Value of measure ``m`` for rule ``r`` on dataset ``ds``."""
    m = get_measure(m)
    n = ds.transaction_count
    sx = ds.support(r.premise)
    if sx == 0:
        raise ParameterError(f"rule {r.id} has a premise with zero support")
    return m(Fraction(ds.support(r.items), n), Fraction(sx, n), Fraction(ds.support(r.conclusion), n))


@dataclass(frozen=True)
class RelationalTable:
    """Rules as objects, measures as attributes, exact values as cells."""

    rules: tuple[Rule, ...]
    measures: tuple[Measure, ...]
    values: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...] = ()
    normalized: bool = False

    def __post_init__(self) -> None:
        if len(self.values) != len(self.rules):
            raise ParameterError("one value row per rule is required")
        k = len(self.measures)
        if any(len(row) != k for row in self.values):
            raise ParameterError("every row needs one value per measure")

    def __len__(self) -> int:
        return len(self.rules)

    @cached_property
    def _index(self) -> dict[int, int]:
        return {r.id: i for i, r in enumerate(self.rules)}

    def index(self, rule: Rule | int) -> int:
        rid = rule if isinstance(rule, int) else rule.id
        try:
            return self._index[rid]
        except KeyError:
            raise DomainError(f"rule {rid} is not in the table") from None

    def rule(self, rule_id: int) -> Rule:
        return self.rules[self.index(rule_id)]

    def vector(self, rule: Rule | int) -> tuple[Fraction, ...]:
        return self.values[self.index(rule)]

    def column(self, j: int) -> list[Fraction]:
        return [row[j] for row in self.values]

    @cached_property
    def distinct(self) -> tuple[tuple[list[Fraction], np.ndarray], ...]:
        """Per column: the distinct values in ascending order and each row's position among them."""
        out = []
        for j in range(len(self.measures)):
            seen: dict[tuple[int, int], int] = {}
            firsts: list[Fraction] = []
            codes = np.empty(len(self.rules), dtype=np.int64)
            for i, row in enumerate(self.values):
                v = row[j]
                key = (v.numerator, v.denominator)
                c = seen.get(key)
                if c is None:
                    c = seen[key] = len(firsts)
                    firsts.append(v)
                codes[i] = c
            order = sorted(range(len(firsts)), key=firsts.__getitem__)
            pos = np.empty(len(firsts), dtype=np.int64)
            pos[order] = np.arange(len(firsts))
            out.append(([firsts[u] for u in order], pos[codes]))
        return tuple(out)

    @cached_property
    def lows(self) -> tuple[Fraction, ...]:
        return tuple(vals[0] for vals, _ in self.distinct) if self.rules else ()

    @cached_property
    def highs(self) -> tuple[Fraction, ...]:
        return tuple(vals[-1] for vals, _ in self.distinct) if self.rules else ()

    @cached_property
    def ranks(self) -> np.ndarray:
        """Dense per-column ranks of the preference-oriented values.

        Rank order equals value order (ties included), so dominance computed
        on ranks is identical to dominance on the exact values.
        """
        out = np.zeros((len(self.rules), len(self.measures)), dtype=np.int64)
        for j, (m, (vals, pos)) in enumerate(zip(self.measures, self.distinct)):
            out[:, j] = pos if m.direction > 0 else len(vals) - 1 - pos
        return out

    def as_floats(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.values], dtype=float)

    def render(self, itemset: Iterable[int]) -> str:
        return " ".join(self.labels[i] for i in itemset) if self.labels else " ".join(map(str, itemset))

    def subset(self, rules: Iterable[Rule]) -> "RelationalTable":
        idx = sorted(self.index(r) for r in rules)
        return replace(self, rules=tuple(self.rules[i] for i in idx),
                       values=tuple(self.values[i] for i in idx))

    def select_measures(self, measures: Sequence[str | Measure]) -> "RelationalTable":
        wanted = [get_measure(m) for m in measures]
        names = [m.name for m in self.measures]
        cols = []
        for m in wanted:
            if m.name not in names:
                raise ParameterError(f"measure {m.name!r} is not a column of the table")
            cols.append(names.index(m.name))
        return replace(self, measures=tuple(wanted),
                       values=tuple(tuple(row[j] for j in cols) for row in self.values))


def build_table(ds: TransactionDataset, rules: Sequence[Rule],
                measures: Sequence[str | Measure]) -> RelationalTable:
    if not rules:
        raise ParameterError("cannot build a table without rules")
    if not measures:
        raise ParameterError("cannot build a table without measures")
    ms = tuple(get_measure(m) for m in measures)
    n = ds.transaction_count
    rows = []
    # many rules share a support triple, and the measures only see those
    by_counts: dict[tuple[int, int, int], tuple[Fraction, ...]] = {}
    for r in rules:
        key = (ds.support(r.items), ds.support(r.premise), ds.support(r.conclusion))
        row = by_counts.get(key)
        if row is None:
            pxy, px, py = (Fraction(c, n) for c in key)
            row = by_counts[key] = tuple(m(pxy, px, py) for m in ms)
        rows.append(row)
    return RelationalTable(tuple(rules), ms, tuple(rows), labels=ds.labels)


def normalize(t: RelationalTable) -> RelationalTable:
    """Min-max rescale every column onto [0, 1]; constant columns become 0."""
    if t.normalized:
        raise ParameterError("table is already normalized")
    if not t.rules:
        return replace(t, normalized=True)
    cols = []
    for vals, pos in t.distinct:
        lo, span = vals[0], vals[-1] - vals[0]
        scaled = [(v - lo) / span for v in vals] if span else [Fraction(0)] * len(vals)
        cols.append([scaled[p] for p in pos.tolist()])
    return replace(t, values=tuple(zip(*cols)), normalized=True)


def shares_domain(t: RelationalTable) -> bool:
    """True when every measure of ``t`` is declared on the same interval."""
    return len({m.domain for m in t.measures}) <= 1


def reference_rule(t: RelationalTable) -> tuple[Fraction, ...]:
    """Fictitious vector holding the most preferred value of every column."""
    if not t.rules:
        raise ParameterError("reference rule of an empty table is undefined")
    return tuple(hi if m.direction > 0 else lo
                 for m, lo, hi in zip(t.measures, t.lows, t.highs))


def deg_sim(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """Mean absolute difference of two measure vectors."""
    if len(a) != len(b) or not a:
        raise ParameterError("deg_sim needs two non-empty vectors of equal length")
    return sum((abs(x - y) for x, y in zip(a, b)), Fraction(0)) / len(a)


def deg_sims(t: RelationalTable, ref: Sequence[Fraction]) -> list[Fraction]:
    """``deg_sim(ref, row)`` for every row of ``t``, sharing work across repeated values."""
    if len(ref) != len(t.measures) or not ref:
        raise ParameterError("reference vector does not match the table columns")
    parts = []
    for r, (vals, pos) in zip(ref, t.distinct):
        dist = [abs(v - r) for v in vals]
        parts.append([dist[p] for p in pos.tolist()])
    k = len(ref)
    return [sum(terms, Fraction(0)) / k for terms in zip(*parts)]


# -- CSV interface ---------------------------------------------------------

def format_value(v: Fraction) -> str:
    return repr(float(v))


def write_table_csv(t: RelationalTable, fh: IO[str], rules: Iterable[Rule] | None = None) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["id", "premise", "conclusion", *(m.name for m in t.measures)])
    chosen = t.rules if rules is None else sorted(rules, key=t.index)
    for r in chosen:
        writer.writerow([r.id, t.render(r.premise), t.render(r.conclusion),
                         *(format_value(v) for v in t.vector(r))])


def read_table_csv(fh: IO[str]) -> RelationalTable:
    """Inverse of :func:`write_table_csv`; item labels are re-interned."""
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        raise InputError("table CSV is empty") from None
    if header[:3] != ["id", "premise", "conclusion"] or len(header) < 4:
        raise InputError("table CSV must start with id,premise,conclusion and measure columns")
    measures = tuple(get_measure(name) for name in header[3:])
    ids: dict[str, int] = {}

    def intern(field_: str) -> tuple[int, ...]:
        out = set()
        for tok in field_.split():
            out.add(ids.setdefault(tok, len(ids)))
        return tuple(sorted(out))

    rules, rows = [], []
    for lineno, rec in enumerate(reader, start=2):
        if not rec:
            continue
        if len(rec) != len(header):
            raise InputError(f"line {lineno}: expected {len(header)} fields, got {len(rec)}")
        try:
            rules.append(Rule(int(rec[0]), intern(rec[1]), intern(rec[2])))
            rows.append(tuple(Fraction(v) for v in rec[3:]))
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from exc
    if not rules:
        raise InputError("table CSV contains no rules")
    return RelationalTable(tuple(rules), measures, tuple(rows), labels=tuple(ids))
