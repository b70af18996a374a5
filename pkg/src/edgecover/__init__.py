"""Belief propagation for minimum-cost edge cover on random complete graphs.

Submodules:

* :mod:`edgecover.graphs`  -- seeded random instances, covers, instance I/O
* :mod:`edgecover.bp`      -- min-sum message passing and cover extraction
* :mod:`edgecover.exact`   -- exact small-instance oracles
* :mod:`edgecover.pwit`    -- truncated Poisson weighted infinite trees
* :mod:`edgecover.rde`     -- Lambert W, fixed-point law, population dynamics
* :mod:`edgecover.harness` -- seeded experiments and reports
"""

from edgecover.graphs import (
    EdgeCover,
    InvalidInstanceError,
    MalformedCoverError,
    WeightedGraph,
    rescale,
    sample_bipartite,
    sample_complete,
    validate_cover,
)
from edgecover.bp import BpTrace, MessageState, bp_decide, bp_init, bp_run, bp_step
from edgecover.exact import (
    OracleResult,
    SizeLimitError,
    enumerate_cover,
    exact_cover_decompose,
    exact_cover_dp,
)
from edgecover.rde import Constants, fstar_tail, lambert_w, limit_constants, t_iterate

__version__ = "0.1.0"

__all__ = [
    "BpTrace",
    "Constants",
    "EdgeCover",
    "InvalidInstanceError",
    "MalformedCoverError",
    "MessageState",
    "OracleResult",
    "SizeLimitError",
    "WeightedGraph",
    "bp_decide",
    "bp_init",
    "bp_run",
    "bp_step",
    "enumerate_cover",
    "exact_cover_decompose",
    "exact_cover_dp",
    "fstar_tail",
    "lambert_w",
    "limit_constants",
    "rescale",
    "sample_bipartite",
    "sample_complete",
    "t_iterate",
    "validate_cover",
]
