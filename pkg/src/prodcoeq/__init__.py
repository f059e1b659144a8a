"""Finite universal algebra toolkit for coequalizers, products and property (P).

The main entry points are re-exported here; see the submodules for the rest.
"""
from .algebra import (FiniteAlgebra, Homomorphism, PullbackAlgebra, Signature, homomorphisms,
                      identity, is_homomorphism, kernel_congruence, product, pullback, quotient,
                      subalgebra, subalgebra_generated, trivial, zero_map)
from .checks import Verdict, egg_box_check, local_egg_box_check, shifting_lemma_check, weak_shifting_check
from .clone import clone_slice, find_majority, find_malcev, find_subtraction
from .coeq import (ParallelPair, check_P_instance, check_P_zero_trick, coequalizer, cokernel,
                   compose_coequalizers_check, is_normal_epi)
from .congruence import DerivationTrace, all_congruences, congruence_generated, principal_congruence
from .decide import (Decision, PWitness, decide_local_NP, decide_P, extract_terms, verify_local_terms,
                     verify_P_terms)
from .errors import (AlgebraError, CapExceededError, NotHomomorphismError, NotPointedError,
                     SignatureMismatch, TermError)
from .free import FreeAlgebra, free_algebra
from .points import (Point, PointMorphism, check_local_P_instance, pt_coequalizer, pt_product,
                     pt_product_violations)
from .relations import Congruence, Partition
from .terms import App, Term, Var, eval_term

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
