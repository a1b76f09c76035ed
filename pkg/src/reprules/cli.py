"""Command line interface: ``reprules mine | select | synth``.

Exit codes: 0 success, 2 usage or parameter error, 3 input/output error.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import IO, Optional, Sequence

from .baseline import ThresholdVector
from .dataset import TransactionDataset, dataset_stats, load_basket, write_basket
from .errors import InputError, ParameterError, ReprulesError
from .measures import Measure, RelationalTable, build_table, parse_measures, read_table_csv, write_table_csv
from .miner import as_fraction, mine_rules
from .rar import write_trace
from .report import MODES, run_selection
from .synth import generate_baskets

log = logging.getLogger("reprules")

EXIT_USAGE = 2
EXIT_IO = 3
DEFAULT_MEASURES = "freq,conf,pearl"
TABLE_HEADER = "id,premise,conclusion"


@dataclass
class RunConfig:
    input: Optional[Path]
    min_freq: Fraction
    measures: list[Measure]
    mode: str = "all"
    seed: Optional[int] = None
    out: Optional[Path] = None
    report: Optional[Path] = None
    faithful_alg1: bool = False

    def __post_init__(self) -> None:
        if not self.measures:
            raise ParameterError("measures must not be empty")
        if not 0 < self.min_freq <= 1:
            raise ParameterError(f"--min-freq must lie in (0, 1], got {self.min_freq}")


def _open_out(path: Optional[Path]) -> IO[str]:
    if path is None or str(path) == "-":
        return sys.stdout
    path.parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", encoding="utf-8", newline="")


def _write(path: Optional[Path], text: str) -> None:
    fh = _open_out(path)
    try:
        fh.write(text)
    finally:
        if fh is not sys.stdout:
            fh.close()


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _stats_dict(ds: TransactionDataset) -> dict:
    items, txs, avg = dataset_stats(ds)
    return {"items": items, "transactions": txs, "avg_transaction_size": f"{float(avg):.2f}"}


def _mine_table(cfg: RunConfig) -> tuple[Optional[RelationalTable], TransactionDataset]:
    ds = load_basket(cfg.input)
    rules = mine_rules(ds, cfg.min_freq)
    items, txs, avg = dataset_stats(ds)
    print(f"items={items} transactions={txs} avg_size={float(avg):.2f} "
          f"min_freq={cfg.min_freq} rules={len(rules)}", file=sys.stderr)
    if not rules:
        log.warning("no rule reaches min_freq=%s", cfg.min_freq)
        return None, ds
    return build_table(ds, rules, cfg.measures), ds


def cmd_mine(cfg: RunConfig) -> int:
    table, _ = _mine_table(cfg)
    buf = io.StringIO()
    if table is None:
        buf.write(",".join([TABLE_HEADER, *(m.name for m in cfg.measures)]) + "\n")
    else:
        write_table_csv(table, buf)
    _write(cfg.out, buf.getvalue())
    return 0


def cmd_select(cfg: RunConfig, thresholds_path: Optional[Path] = None, trace_path: Optional[Path] = None,
               figures: bool = True, timing: bool = False) -> int:
    text = _read_text(cfg.input)
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    dataset = None
    min_freq = None
    if first.startswith(TABLE_HEADER):
        table = read_table_csv(io.StringIO(text)).select_measures(cfg.measures)
    else:
        table, ds = _mine_table(cfg)
        dataset, min_freq = _stats_dict(ds), cfg.min_freq
        if table is None:
            raise ParameterError("no rules to select from; lower --min-freq")
    eps = None
    if thresholds_path is not None:
        try:
            mapping = json.loads(_read_text(thresholds_path))
        except json.JSONDecodeError as exc:
            raise InputError(f"{thresholds_path}: {exc}") from exc
        eps = ThresholdVector.from_mapping(table, mapping)

    rep = run_selection(table, cfg.mode, cfg.faithful_alg1, eps)
    rep.dataset, rep.min_freq = dataset, min_freq

    _write(cfg.report, rep.to_json(with_timing=timing))
    if cfg.out is not None:
        buf = io.StringIO()
        write_table_csv(table, buf, rep.primary)
        _write(cfg.out, buf.getvalue())
    if trace_path is not None and rep.rar_result is not None:
        buf = io.StringIO()
        write_trace(rep.rar_result.trace, buf)
        _write(trace_path, buf.getvalue())
    if figures and cfg.report is not None and str(cfg.report) != "-":
        from .plotting import plot_counts, plot_selection

        stem = cfg.report.with_suffix("")
        plot_selection(table, f"{stem}_scatter.png", rep.sky, rep.rr, rep.tb)
        plot_counts(rep.counts(), f"{stem}_counts.png")
    return 0


def cmd_synth(n_items: int, n_transactions: int, density: float, seed: int, out: Optional[Path]) -> int:
    try:
        baskets, empty = generate_baskets(n_items, n_transactions, density, seed)
    except ValueError as exc:
        raise ParameterError(str(exc)) from exc
    if empty:
        log.warning("%d empty transactions suppressed", empty)
    buf = io.StringIO()
    buf.write(f"# synth items={n_items} transactions={n_transactions} density={density} seed={seed}\n")
    write_basket(baskets, buf)
    _write(out, buf.getvalue())
    return 0


# -- argument parsing --------------------------------------------------------

def _min_freq(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _existing(text: str) -> Path:
    path = Path(text)
    if not path.is_file():
        raise argparse.ArgumentTypeError(f"no such file: {text}")
    return path


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reprules", description="Mine association rules and select representative ones.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", required=True, type=_existing, help="basket file (or rules table CSV for select)")
        sp.add_argument("--min-freq", type=_min_freq, default=Fraction(1, 10), help="minimum frequency in (0, 1]")
        sp.add_argument("--measures", default=DEFAULT_MEASURES,
                        help="comma list of freq,conf,recall,pearl,loev,zhang")
        sp.add_argument("--out", type=Path, help="output CSV (default stdout for mine)")

    mine = sub.add_parser("mine", help="mine rules and write the measure table as CSV")
    common(mine)

    sel = sub.add_parser("select", help="run skyline / representative / threshold selection")
    common(sel)
    sel.add_argument("--mode", choices=MODES, default="all")
    sel.add_argument("--report", type=Path, help="JSON report path (default stdout)")
    sel.add_argument("--thresholds", type=_existing, help="JSON {measure: value} for the tb mode")
    sel.add_argument("--trace", type=Path, help="write the RAR iteration log as JSON lines")
    sel.add_argument("--faithful-alg1", action="store_true", help="replay the literal RAR pseudocode")
    sel.add_argument("--no-figures", action="store_true", help="skip the PNG figures next to --report")
    sel.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")
    sel.add_argument("--seed", type=int, help="accepted for symmetry with synth; unused")

    syn = sub.add_parser("synth", help="write a seeded synthetic basket file")
    syn.add_argument("--seed", type=int, required=True)
    syn.add_argument("--items", type=int, default=20)
    syn.add_argument("--transactions", type=int, default=500)
    syn.add_argument("--density", type=float, default=0.3)
    syn.add_argument("--out", type=Path)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        if args.command == "synth":
            return cmd_synth(args.items, args.transactions, args.density, args.seed, args.out)
        cfg = RunConfig(
            input=args.input,
            min_freq=args.min_freq,
            measures=parse_measures(args.measures),
            mode=getattr(args, "mode", "all"),
            seed=getattr(args, "seed", None),
            out=args.out,
            report=getattr(args, "report", None),
            faithful_alg1=getattr(args, "faithful_alg1", False),
        )
        if args.command == "mine":
            return cmd_mine(cfg)
        return cmd_select(cfg, args.thresholds, args.trace, figures=not args.no_figures, timing=args.timing)
    except ParameterError as exc:
        print(f"reprules: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, OSError) as exc:
        print(f"reprules: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ReprulesError as exc:
        print(f"reprules: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
