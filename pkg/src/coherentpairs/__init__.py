"""Exact-arithmetic computations with moment functionals and coherent pairs.

Everything runs over arbitrary-precision rationals: classical moment
functionals and their modification calculus, monic orthogonal polynomial
sequences with three-term recurrences, Sobolev inner products and bases,
the coefficient relations of extended generalized coherent pairs, and
companion functionals defined by a degree-2 identity A(x) v = D(x) u.
"""

from .errors import (CoherentPairsError, ConfigError, DegenerateNorm,
                     DivisionByZeroCoefficient, InconsistentStructure,
                     InvalidParameter, NotStronglyClassical,
                     QuasiDefiniteViolation, SingularMkSystem,
                     SobolevDegeneracy, UnderdeterminedInitials, ZeroM2)
from .scalars import Rat, format_rational, parse_rational, rat
from .polynomials import Poly
from .functionals import (ClassicalFamily, MomentFunctional, pearson_check,
                          strongly_classical_companion)
from .mops import (FLIP, STD, Mops, RecurrencePair, antiderivative_sequence,
                   derivative_sequence, from_orthogonality, generate, inner,
                   recurrence)
from .sobolev import (CoherenceReport, SobolevBasis, SobolevLinkData,
                      check_generalized_coherence, extended_coeffs,
                      fit_linear_relation, generate_sobolev, link_from_formula,
                      sobolev_inner)
from .coherence import (CASE_I_1_I, CASE_II_1_I, REDUCED_TWO_TERM,
                        TRIVIAL_R_EQ_Q, CaseSolution, CaseVerdict,
                        CoherenceData, StructureCoeffs, classify,
                        degenerate_check, fit_relation, make_nonzero_a_dataset,
                        make_nonzero_a_dataset_for, make_zero_a_dataset,
                        polys_from_recurrence, reconstruct_partner, solve_case1,
                        solve_case2, solve_case3, solve_case4, solve_case_ii,
                        structure_coeffs)
from .companion import (CompanionFunctional, CompanionSpec,
                        classify_modification, companion_from_ad,
                        delta_decomposition, solve_mk, verify_companion)

__version__ = "0.1.0"
