"""Three-qubit Freudenthal triple system, rank classifier and the parity game."""

from .errors import AmbiguousRank, MalformedFile, NotNormalized, NotUnitary, OrderingViolation
from .fts import (
    apply_local_sl,
    bilinear_form,
    gamma,
    hyperdeterminant,
    permute_qubits,
    quartic_form,
    quartic_norm,
    triple_product_diagonal,
    triple_product_full,
    upsilon,
)
from .game import GameReport, LocalStrategy, classical_value, quantum_win_probability
from .rank_classifier import RankCertificate, TolerancePolicy, classify, random_state_of_rank
from .strategy_opt import OptimizationResult, RankOrderingReport, optimize, ordering_demo

__version__ = "0.1.0"
