"""Exact and numerical checks for weak intersection numbers, explicit
C(K)-valued martingales and rotundity moduli on finite models of C(K)."""

__version__ = "0.1.0"

from .families import (FamilyError, GroundSpace, IndexReport, SetFamily, gamma_k,
                       gamma_profile, index_report, l_index, win, win_tilde)
from .functions import (Measure, NormSpec, norm_eval, norm_sq, truncate_decompose,
                        urysohn_indicator, vector)
from .intersection import kelley_number_rep, max_min_measure, verify_duality
from .martingales import (Filtration, Martingale, MartingaleError, a_upper_bound,
                          build_lemma_martingale, check_energy_gain,
                          check_norm_square_monotone, compose_proposition_martingale,
                          validate_martingale, walsh_paley_structure)
from .modulus import ModulusQuery, pur_chain_check, ui_membership, ured_modulus_estimate

__all__ = [
    "__version__",
    "FamilyError",
    "GroundSpace",
    "IndexReport",
    "SetFamily",
    "gamma_k",
    "gamma_profile",
    "index_report",
    "l_index",
    "win",
    "win_tilde",
    "Measure",
    "NormSpec",
    "norm_eval",
    "norm_sq",
    "truncate_decompose",
    "urysohn_indicator",
    "vector",
    "kelley_number_rep",
    "max_min_measure",
    "verify_duality",
    "Filtration",
    "Martingale",
    "MartingaleError",
    "a_upper_bound",
    "build_lemma_martingale",
    "check_energy_gain",
    "check_norm_square_monotone",
    "compose_proposition_martingale",
    "validate_martingale",
    "walsh_paley_structure",
    "ModulusQuery",
    "pur_chain_check",
    "ui_membership",
    "ured_modulus_estimate",
]
