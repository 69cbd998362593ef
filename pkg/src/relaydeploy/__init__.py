"""Two-phase relay deployment for 3-D wireless sensor backbones.

A minimum-spanning-tree phase connects the base station and cluster heads
with first-phase relays; a DE, GSA or ABC optimizer then chooses where the
remaining relays go so that average hop distance is small while algebraic
connectivity stays in a target band.
"""
from ._kernels import BACKEND, HAVE_NUMBA
from .deployment import (
    AugmentationTable, Backbone, CandidateSet, GridSpec, SeedLayout,
    enumerate_candidates, mst_backbone, rn_chain, update_laplacian,
)
from .energy import EnergyParams, LifetimeReport, lifetime_report, relay_multipliers
from .errors import (
    CombinatorialBudgetError, ConfigurationError, DisconnectedGraphError, DomainError,
    RelayDeployError, SpectralError,
)
from .graph_core import (
    BackboneGraph, SpectralSummary, average_distance, build_laplacian, fiedler_value,
    spectral_summary, wiener_bfs, wiener_spectral,
)
from .harness import (
    ExperimentPlan, ResultRow, RunRecord, StatsSummary, emit_csv, emit_plot_data,
    read_csv, run_plan, summarize,
)
from .objective import Fitness, ObjectiveContext, PlacementProblem, evaluate, exhaustive_best, repair
from .optimizers import KINDS, OptimizerConfig, RunTrace, optimize

__version__ = "0.1.0"
