"""Certificates and solvers for genuine and strong quantum nonlocality of
small sets of orthogonal multipartite pure states."""
from .bipart import Bipartition, enumerate_bipartitions, flatten, pair_to_bipartition
from .model import (
    StateSet,
    StateVector,
    Theorem2Coefficients,
    gen_bell_triple,
    gen_eq2,
    gen_eq3,
    gen_example1,
    gen_example2,
    gen_ghosh_set,
    gen_theorem1,
    gen_theorem2,
    is_genuinely_entangled,
    load_state_set,
    save_state_set,
)
from .oplm import lemma1_combiner, oplm_space, toplm_verdict
from .qcore import partial_transpose, psd_project
from .sdp import DiscriminationInstance, PovmCandidate, SdpOptions, ppt_value, ppt_value_for_split, solve_ppt
from .sdp import trace_bound_check, validate_povm
from .witness import certify_all, check_theorem2_condition, lemma2_certificate

__version__ = "0.1.0"

__all__ = [
    "Bipartition", "DiscriminationInstance", "PovmCandidate", "SdpOptions", "StateSet", "StateVector",
    "Theorem2Coefficients", "certify_all", "check_theorem2_condition", "enumerate_bipartitions", "flatten",
    "gen_bell_triple", "gen_eq2", "gen_eq3", "gen_example1", "gen_example2", "gen_ghosh_set", "gen_theorem1",
    "gen_theorem2", "is_genuinely_entangled", "lemma1_combiner", "lemma2_certificate", "load_state_set",
    "oplm_space", "pair_to_bipartition", "partial_transpose", "ppt_value", "ppt_value_for_split", "psd_project",
    "save_state_set", "solve_ppt", "toplm_verdict", "trace_bound_check", "validate_povm",
]
