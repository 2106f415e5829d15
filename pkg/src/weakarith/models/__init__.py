"""Model constructions: the localized polynomial ring, series integer parts, the extension chain."""

from .chain import (
    ChainElement,
    ChainError,
    ChainState,
    DivisibilityError,
    InvariantBreach,
    ModulusOutOfRange,
    PreconditionError,
    RatFunc,
    ResidueInfeasible,
    chain_f_step,
    chain_init,
    chain_residue_extend,
    chain_zhat_step,
    register_prime,
)
from .mb import MBConfig, MBElement, Rejection, mb_admit, mb_arith, mb_compare, random_element
from .shepherdson import ShepElement, shep_admit

__all__ = [
    "ChainElement",
    "ChainError",
    "ChainState",
    "DivisibilityError",
    "InvariantBreach",
    "ModulusOutOfRange",
    "PreconditionError",
    "RatFunc",
    "ResidueInfeasible",
    "chain_f_step",
    "chain_init",
    "chain_residue_extend",
    "chain_zhat_step",
    "register_prime",
    "MBConfig",
    "MBElement",
    "Rejection",
    "mb_admit",
    "mb_arith",
    "mb_compare",
    "random_element",
    "ShepElement",
    "shep_admit",
]
