"""Representative association rules: mining, multi-measure dominance and
semantic comparability, with a threshold baseline for comparison."""

from .baseline import ThresholdVector, gain, summarize_gains, tb_rules, thresholds_from_rr
from .dataset import TransactionDataset, dataset_stats, load_basket, support
from .dominance import (
    ComparisonCounter,
    Outcome,
    ValueDominance,
    comparable,
    compare_rules,
    icomp,
    representative_oracle,
    skyline_naive,
    value_dominates,
)
from .errors import DomainError, EmptyDatasetError, InputError, ParameterError, ReprulesError
from .measures import (
    MEASURES,
    RelationalTable,
    build_table,
    deg_sim,
    deg_sims,
    evaluate,
    normalize,
    read_table_csv,
    reference_rule,
    write_table_csv,
)
from .miner import Rule, generate_rules, mine_frequent, mine_rules
from .rar import UndominatedSpace, partition_subspace, rar, rar_trace, run_rar, undominated_space

__version__ = "0.1.0"
