"""Exact Heisenberg-double toolkit: pentagon-type operator identities,
bialgebra reconstruction from pentagon solutions, Drinfeld R-matrices,
and graded checks of the generalized quantum dilogarithm."""

from .bialgebra import (AdjointRep, StructureConstants, adjoint_rep,
                        builtin_constants, canonical_element,
                        check_associativity, check_coassociativity,
                        check_compatibility, check_heisenberg_relations,
                        check_tilde_relations, cyclic_table, group_algebra,
                        symmetric3_table, tilde_rep)
from .drinfeld import (DoubleGenerators, SMatrixFamily,
                       check_double_consistency, drinfeld_generators,
                       r_matrix, r_matrix_from_generators, s_family,
                       s_primes_from_reps)
from .errors import (CrossInvertibilityError, DimensionMismatchError,
                     FieldMismatchError, InconsistentSystemError,
                     ReconstructionError, ScalarParseError, SchemaError,
                     SingularMatrixError)
from .formal import (FockVector, NormalOrderedAlgebra, NormalOrderedElement,
                     apply_exp_pair, center_check, q_factorial,
                     verify_dilog_identity, weyl_pentagon_check)
from .reconstruction import (ReconstructionResult, dimension, dual_matrices,
                             factorize, reconstruct, structure_constants,
                             validate)
from .relations import (Placed, apply_script, check_drinfeld_relations,
                        check_fg_relations, check_mixed_pentagons,
                        check_mixed_permutation, check_pentagon,
                        check_reversed_pentagon, check_script_identity,
                        check_yang_baxter, materialize_script,
                        operators_equal_report)
from .report import RelationId, VerificationReport, Witness
from .scalars import (FIELD_Q, FIELD_QQ, QVAR, RationalFunction, ScalarField,
                      field_by_tag, format_scalar, parse_scalar)
from .serialize import (constants_from_json, constants_to_json,
                        load_constants, load_operator, operator_from_json,
                        operator_to_json, save_constants, save_operator)
from .tensor import (LegPlacement, Operator, apply_to_vector, invert,
                     place_on_legs, reshuffle, swap_operator)

__version__ = "0.1.0"
