"""Run one or more selection modes over a table and collect the results."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .baseline import ThresholdVector, gain, tb_rules, thresholds_from_rr
from .dominance import ComparisonCounter, representative_oracle, skyline_mask
from .errors import ParameterError
from .measures import RelationalTable, normalize
from .miner import Rule
from .rar import RarResult, run_rar

MODES = ("rar", "skyline", "oracle", "tb", "all")


@dataclass
class SelectionReport:
    mode: str
    measures: list[str]
    all_rules: int
    faithful_alg1: bool = False
    sky: Optional[list[Rule]] = None
    rr: Optional[list[Rule]] = None
    tb: Optional[list[Rule]] = None
    thresholds: Optional[ThresholdVector] = None
    rar_result: Optional[RarResult] = None
    comparisons: dict[str, int] = field(default_factory=dict)
    timing: dict[str, float] = field(default_factory=dict)
    dataset: Optional[dict] = None
    min_freq: Optional[Fraction] = None
    rar_matches_oracle: Optional[bool] = None
    ordering_ok: Optional[bool] = None

    @property
    def gain(self) -> Optional[float]:
        if self.tb is None or not self.rr:
            return None
        return gain(self.tb, self.rr)

    @property
    def primary(self) -> list[Rule]:
        """The rule set a mode is about: Sky for skyline, TB for tb, RR otherwise."""
        if self.mode == "skyline":
            return self.sky or []
        if self.mode == "tb":
            return self.tb or []
        return self.rr or []

    def counts(self) -> dict[str, Optional[int]]:
        size = lambda xs: None if xs is None else len(xs)  # noqa: E731
        return {"all_rules": self.all_rules, "tb_rules": size(self.tb),
                "rr_rules": size(self.rr), "sky_rules": size(self.sky)}

    def to_dict(self, with_timing: bool = False) -> dict:
        ids = lambda xs: None if xs is None else [r.id for r in xs]  # noqa: E731
        out = {
            "mode": self.mode,
            "measures": self.measures,
            "faithful_alg1": self.faithful_alg1,
            "min_freq": None if self.min_freq is None else str(self.min_freq),
            "dataset": self.dataset,
            **self.counts(),
            "gain": self.gain,
            "thresholds": None if self.thresholds is None
            else {k: float(v) for k, v in self.thresholds.as_dict().items()},
            "rar_matches_oracle": self.rar_matches_oracle,
            "ordering_ok": self.ordering_ok,
            "comparisons": self.comparisons,
            "selected": {"sky": ids(self.sky), "rr": ids(self.rr), "tb": ids(self.tb)},
        }
        if with_timing:
            out["timing"] = {k: round(v, 6) for k, v in self.timing.items()}
        return out

    def to_json(self, with_timing: bool = False) -> str:
        return json.dumps(self.to_dict(with_timing), indent=2) + "\n"


def run_selection(t: RelationalTable, mode: str = "all", faithful: bool = False,
                  thresholds: ThresholdVector | None = None) -> SelectionReport:
    """Compute the sets requested by ``mode`` on table ``t``.

    Dominance-based modes run on the min-max normalized table (same
    dominance, comparable scales); thresholds and TB use the raw values.
    """
    if mode not in MODES:
        raise ParameterError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    rep = SelectionReport(mode, [m.name for m in t.measures], len(t), faithful_alg1=faithful)
    work = t if t.normalized else normalize(t)

    def timed(name, fn):
        start = time.perf_counter()
        value = fn()
        rep.timing[name] = time.perf_counter() - start
        return value

    sky_mask = None
    if mode in ("skyline", "all"):
        counter = ComparisonCounter()
        sky_mask = timed("skyline", lambda: skyline_mask(work, counter))
        rep.sky = [r for r, keep in zip(t.rules, sky_mask) if keep]
        rep.comparisons["skyline"] = counter.count
    oracle = None
    if mode in ("oracle", "all"):
        counter = ComparisonCounter()
        oracle = timed("oracle", lambda: representative_oracle(work, counter, sky_mask))
        rep.comparisons["oracle"] = counter.count
        rep.rr = oracle
    if mode in ("rar", "all") or (mode == "tb" and thresholds is None):
        result = timed("rar", lambda: run_rar(work, faithful))
        rep.rar_result = result
        rep.rr = result.rules
        rep.comparisons["rar"] = result.comparisons
    if oracle is not None and rep.rar_result is not None:
        rep.rar_matches_oracle = {r.id for r in oracle} == {r.id for r in rep.rr}
    if mode in ("tb", "all"):
        eps = thresholds if thresholds is not None else thresholds_from_rr(t, rep.rr)
        rep.thresholds = eps
        rep.tb = timed("tb", lambda: tb_rules(t, eps))
    if mode == "all":
        tb_ids = {r.id for r in rep.tb}
        rep.ordering_ok = len(rep.sky) <= len(rep.rr) and (
            thresholds is not None or all(r.id in tb_ids for r in rep.rr))
        # the literal pseudocode may drop skyline twins, so only the default mode must hold
        if not faithful and not rep.ordering_ok:
            raise AssertionError("expected |Sky| <= |RR| and RR within TB")
    return rep
