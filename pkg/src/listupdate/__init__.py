"""Online list update: algorithms, offline optima, advice and lower-bound families."""
from .core import (
    FULL,
    PARTIAL,
    CapacityError,
    CostLedger,
    CostModel,
    ListState,
    ListUpdateError,
    RequestSequence,
    access,
    free_move,
    kendall_tau,
    paid_rearrange,
)
from .algorithms import make_algorithm, simulate
from .offline import opt_dp, opt_subset_transfer_dp, pair_opt, partition_phases
from .advice import AdviceTape, Selector, advice_lower_bound, best3_follower, best3_oracle
from .analysis import factoring_check, potential_audit, project, run

__version__ = "0.1.0"
