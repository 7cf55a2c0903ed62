"""Ranking mechanisms in which no agent's own ranking affects its output position,
plus verifiers for the axioms they claim."""

from .axioms import AxiomReport, check_impartiality, check_individual_full_rank, check_monotonicity, check_unanimity, check_weak_unanimity
from .blocking import BlockingMechanism, blocking_mechanism
from .descriptors import MechanismDescriptor
from .perms import Permutation, RankingProfile
from .tricolor import TricolorMechanism, tricolor_mechanism

__all__ = [
    "AxiomReport",
    "BlockingMechanism",
    "MechanismDescriptor",
    "Permutation",
    "RankingProfile",
    "TricolorMechanism",
    "blocking_mechanism",
    "check_impartiality",
    "check_individual_full_rank",
    "check_monotonicity",
    "check_unanimity",
    "check_weak_unanimity",
    "tricolor_mechanism",
]
