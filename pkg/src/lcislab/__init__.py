"""LCIS solvers, separator sequences, gadget reductions and their exact checks."""
from .errors import (GadgetContractError, InstanceTooLarge, LcisError,
                     ParameterError, ShapeError, UnsupportedArity)
from .gadgets import (X, Y, CombineParams, Combiner, combine, combine_k,
                      coordinate_gadget, grouped_gadget, vector_gadget,
                      vector_gadget_k)
from .harness import Report, bench, verify_lemma
from .instances import (BranchingProgram, KOVInstance, OVInstance, bp_eval,
                        bp_sat_bruteforce, gen_bp, gen_kov, gen_ov,
                        k_min_product, min_inner_product)
from .reductions import (ReductionOutput, bpsat_to_lcis, kov_to_klcis,
                         kov_to_klcwis, lcs_to_lcis, ov_to_lcis,
                         ov_to_lcis_unbalanced, reachability_gadgets)
from .separators import (SeparatorFamily, SeparatorPair, hat, inflate,
                         inflate_weak, separator_family, separator_pair)
from .seqcore import (AlphabetSpan, BlockedSeq, reverse_negate, shift,
                      span_of)
from .solvers import (STRICT, WEAK, SolveResult, check_witness, lcis_approx,
                      lcis_dp2, lcis_dpk, lcis_matching_pairs, lcis_oracle,
                      lcs_bruteforce, lis_length)

__version__ = "0.1.0"
