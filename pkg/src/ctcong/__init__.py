"""Constant-term sequences, Lucas-type congruences, and linear p-schemes."""

from .errors import (CtcongError, DimensionMismatch, HypothesisViolation,
                     MemoryCapExceeded, ParseError, StateExplosion)
from .laurent import (LaurentPoly, Modulus, add, cartier, coeff_at,
                      constant_term, frobenius_substitute, mul, pow_,
                      reduce_mod, reflect)
from .parsing import ExprSource, parse, to_canonical_string
from .polytope import (NewtonPolytope, interior_integral_points,
                       newton_polytope, origin_only_interior,
                       support_in_unit_box)
from .report import CongruenceReport
from .sequences import (CtSpec, SequenceWindow, cross_check, ct_sequence,
                        oracle_abelian_squares, oracle_apery,
                        oracle_catalan, oracle_central_binomial,
                        oracle_central_trinomial, oracle_D,
                        oracle_lambda_family, oracle_S, oracle_zagierE,
                        oracle_zagierE_shift, s_window_mod)
from .congruences import (CatalanDigitSplit, DigitExpansion, GlcData,
                          catalan_digit_formula, catalan_digit_split,
                          catalan_mod3, catalan_mod5, catalan_step,
                          catalan_via_step, digits, dwork_verify, glc_data,
                          glc_simple_verify, glc_verify, kronecker_mod_p,
                          lucas_predict, lucas_verify,
                          never_divisible_primes, s_mod5,
                          shift_combination_check, trinomial_pm1,
                          trinomial_pm1_x, univariate_glc)
from .schemes import (LinearPScheme, evaluate, from_lucas_table,
                      is_single_state_reducible, scheme_from_json,
                      scheme_to_json, synthesize, two_state_from_glc,
                      verify)

__version__ = "0.1.0"
