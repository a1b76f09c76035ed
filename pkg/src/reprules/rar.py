"""Representative rule discovery by reference-rule ordering (RAR).

Candidates are visited by increasing mean distance to the reference rule,
so a candidate is always visited before any rule that dominates it.  Each
representative taken from an undominated space splits that space three
ways: rules it strictly dominates and is comparable with are dropped, rules
it strictly dominates but is not comparable with wait in ``Incomp``, and the
rest form the new space of rules that beat it on at least one measure.

Two modes are provided.  The default keeps exactly the rules not strictly
dominated by any comparable undominated rule.  ``faithful=True`` replays the
published pseudocode literally: every selected rule purges ``Incomp`` and
rules equivalent to a selected rule fall out of the search.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .dominance import ComparisonCounter, comparable_mask, dominated_by, item_masks
from .errors import ParameterError
from .measures import RelationalTable, deg_sims, reference_rule, shares_domain
from .miner import Rule

SPACE, INCOMP, SELECTED, DROPPED = 0, 1, 2, 3


@dataclass
class UndominatedSpace:
    """Per-measure candidate sets of one owner rule.

    ``subspaces[i]`` holds the candidates the owner does not strictly
    dominate and that beat it on measure ``i``.  ``retained`` holds
    candidates equivalent to the owner, which beat it nowhere and so sit in
    no ``subspaces[i]``.
    """

    owner: Rule | None
    subspaces: list[frozenset[Rule]]
    retained: frozenset[Rule] = frozenset()

    def members(self) -> list[Rule]:
        seen: set[Rule] = set(self.retained)
        for s in self.subspaces:
            seen |= s
        return sorted(seen, key=lambda r: r.id)

    def __len__(self) -> int:
        return len(self.members())


@dataclass(frozen=True)
class TraceStep:
    step: int
    chosen_rule_id: int
    degsim: Fraction
    source: str
    rr_size: int
    incomp_size: int
    candidates_remaining: int
    discarded: tuple[int, ...] = ()
    to_incomp: tuple[int, ...] = ()
    purged: tuple[int, ...] = ()

    def to_json(self) -> str:
        d = asdict(self)
        d["degsim"] = float(self.degsim)
        d["discarded"], d["to_incomp"], d["purged"] = map(list, (self.discarded, self.to_incomp, self.purged))
        return json.dumps(d)


@dataclass
class RarResult:
    rules: list[Rule]
    trace: list[TraceStep]
    comparisons: int
    spaces: dict[int, UndominatedSpace] = field(default_factory=dict)


def _check_scale(t: RelationalTable) -> None:
    if not t.normalized and not shares_domain(t):
        names = ", ".join(f"{m.name}{list(m.domain)}" for m in t.measures)
        raise ParameterError(f"normalize the table first: measure domains differ ({names})")


def _split(ranks, prem, conc, owner: int, members: np.ndarray):
    """Index-level three-way split of ``members`` against ``owner``."""
    dom = dominated_by(ranks, owner, members)
    dominated = members[dom]
    comp = comparable_mask(prem, conc, owner, dominated) if len(dominated) else np.zeros(0, bool)
    rest = members[~dom]
    rest = rest[rest != owner]
    exceeds = ranks[rest] > ranks[owner]
    return dominated[comp], dominated[~comp], rest, exceeds


def _space_from(t: RelationalTable, owner: int, rest, exceeds, keep_equivalents: bool) -> UndominatedSpace:
    subs = [frozenset(t.rules[j] for j in rest[exceeds[:, i]]) for i in range(exceeds.shape[1])]
    retained = frozenset(t.rules[j] for j in rest[~exceeds.any(axis=1)]) if keep_equivalents else frozenset()
    return UndominatedSpace(t.rules[owner], subs, retained)


def undominated_space(t: RelationalTable, owner: Rule | int,
                      candidates: Iterable[Rule] | None = None) -> UndominatedSpace:
    """Undominated space of ``owner`` over ``candidates`` (all rules by default)."""
    i = t.index(owner)
    idx = np.arange(len(t)) if candidates is None else np.array(sorted(t.index(r) for r in candidates), dtype=np.int64)
    ranks = t.ranks
    rest = idx[~dominated_by(ranks, i, idx)] if len(idx) else idx
    rest = rest[rest != i]
    return _space_from(t, i, rest, ranks[rest] > ranks[i], keep_equivalents=False)


def partition_subspace(owner: Rule | int, candidates: Iterable[Rule], t: RelationalTable,
                       counter: ComparisonCounter | None = None, keep_equivalents: bool = True,
                       ) -> tuple[set[Rule], set[Rule], UndominatedSpace]:
    """Split ``candidates`` against a freshly selected representative.

    Returns ``(discarded, to_incomp, new_space)``.
    """
    i = t.index(owner)
    members = np.array(sorted({t.index(r) for r in candidates} - {i}), dtype=np.int64)
    prem, conc = item_masks(t.rules)
    if counter is not None:
        counter.add(len(members))
    drop, wait, rest, exceeds = _split(t.ranks, prem, conc, i, members)
    space = _space_from(t, i, rest, exceeds.reshape(len(rest), len(t.measures)), keep_equivalents)
    return {t.rules[j] for j in drop}, {t.rules[j] for j in wait}, space


def run_rar(t: RelationalTable, faithful: bool = False, counter: ComparisonCounter | None = None,
            keep_spaces: bool = False) -> RarResult:
    """Run the search and return representatives in discovery order with a trace."""
    _check_scale(t)
    counter = counter if counter is not None else ComparisonCounter()
    start_count = counter.count
    n = len(t)
    if n == 0:
        return RarResult([], [], 0)
    ranks = t.ranks
    prem, conc = item_masks(t.rules)
    ref = reference_rule(t)
    sims = deg_sims(t, ref)
    order = sorted(range(n), key=lambda i: (sims[i], t.rules[i].id))

    status = np.full(n, SPACE, dtype=np.int8)
    space_of = np.zeros(n, dtype=np.int64)
    spaces: dict[int, np.ndarray] = {0: np.arange(n)}
    next_space = 1
    n_space, n_incomp = n, 0
    selected: list[Rule] = []
    trace: list[TraceStep] = []
    kept_spaces: dict[int, UndominatedSpace] = {}
    ids = lambda arr: tuple(t.rules[j].id for j in arr)  # noqa: E731

    pos = 0
    while True:
        while pos < n and status[order[pos]] >= SELECTED:
            pos += 1
        if pos == n:
            break
        star = order[pos]
        from_incomp = status[star] == INCOMP
        status[star] = SELECTED
        if from_incomp:
            n_incomp -= 1
        else:
            n_space -= 1
        selected.append(t.rules[star])

        purged = np.zeros(0, dtype=np.int64)
        # only undominated rules may eliminate; a rule taken from a space is
        # undominated because all of its dominators share its space and sort first
        if n_incomp and (faithful or not from_incomp):
            inc = np.flatnonzero(status == INCOMP)
            counter.add(len(inc))
            hit = inc[dominated_by(ranks, star, inc)]
            if len(hit):
                purged = hit[comparable_mask(prem, conc, star, hit)]
                status[purged] = DROPPED
                n_incomp -= len(purged)

        drop = wait = np.zeros(0, dtype=np.int64)
        if not from_incomp:
            members = spaces.pop(int(space_of[star]))
            members = members[status[members] == SPACE]
            counter.add(len(members))
            drop, wait, rest, exceeds = _split(ranks, prem, conc, star, members)
            status[drop] = DROPPED
            status[wait] = INCOMP
            n_space -= len(drop) + len(wait)
            n_incomp += len(wait)
            beats = exceeds.any(axis=1)
            if faithful:
                lost = rest[~beats]
                status[lost] = DROPPED
                n_space -= len(lost)
                rest = rest[beats]
            if keep_spaces:
                kept_spaces[t.rules[star].id] = _space_from(t, star, rest, exceeds[beats] if faithful else exceeds,
                                                            keep_equivalents=not faithful)
            if len(rest):
                spaces[next_space] = rest
                space_of[rest] = next_space
                next_space += 1

        trace.append(TraceStep(
            step=len(trace) + 1,
            chosen_rule_id=t.rules[star].id,
            degsim=sims[star],
            source="incomp" if from_incomp else "space",
            rr_size=len(selected),
            incomp_size=n_incomp,
            candidates_remaining=n_space + n_incomp,
            discarded=ids(drop),
            to_incomp=ids(wait),
            purged=ids(purged),
        ))
    return RarResult(selected, trace, counter.count - start_count, kept_spaces)


def rar(t: RelationalTable, faithful: bool = False, counter: ComparisonCounter | None = None) -> list[Rule]:
    """Representative rules of ``t`` in discovery order."""
    return run_rar(t, faithful, counter).rules


def rar_trace(t: RelationalTable, faithful: bool = False) -> list[TraceStep]:
    return run_rar(t, faithful).trace


def write_trace(trace: Iterable[TraceStep], fh) -> None:
    for step in trace:
        fh.write(step.to_json() + "\n")
