"""Maps between finite posets written as nested differences of monotone factors.

Submodules: :mod:`~approxforms.poset`, :mod:`~approxforms.connectives`,
:mod:`~approxforms.decompose`, :mod:`~approxforms.boolean_inf`,
:mod:`~approxforms.lefebvre` and the command line in :mod:`~approxforms.cli`.
"""
from .boolean_inf import InfChain, TruthTable, inf_eval, inf_synthesize, is_monotone_tt, minimal_inf_length
from .connectives import AxiomReport, ConnectiveSet, boolean_dual, chain_primal, verify_axioms
from .decompose import (FactorChain, ThetaFunction, decompose, decompose_dual, fold, pad_to, support,
                        theta_decompose)
from .errors import ApproxError
from .poset import (EvalMap, NonMonotonicityReport, Poset, boolean_cube, build_poset, check_monotone,
                    induced_order)

__version__ = "0.1.0"

__all__ = [
    "ApproxError", "AxiomReport", "ConnectiveSet", "EvalMap", "FactorChain", "InfChain",
    "NonMonotonicityReport", "Poset", "ThetaFunction", "TruthTable", "boolean_cube", "boolean_dual",
    "build_poset", "chain_primal", "check_monotone", "decompose", "decompose_dual", "fold",
    "induced_order", "inf_eval", "inf_synthesize", "is_monotone_tt", "minimal_inf_length", "pad_to",
    "support", "theta_decompose", "verify_axioms",
]
