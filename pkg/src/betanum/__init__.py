"""Exact beta-numeration for d(1) = p q^omega.

beta is the larger root of x^2 - (p+1)x + (p-q) with p > q >= 1.  Numbers
are kept exactly as elements of Z[beta] scaled by powers of beta; no
floating point enters any decision.
"""
from ._backend import NAME as BACKEND
from .digits import (DigitString, NotAdmissible, evaluate, format_digits, fp, is_admissible,
                     normalize_rewrite, parse_digits)
from .expansion import (DEFAULT_BUDGET, BudgetExceeded, EventuallyPeriodic, Finite,
                        NegativeInput, greedy_expand, is_beta_integer)
from .ring import (FinElem, NotDivisible, Params, RingElem, beta_divide, fin_add, fin_cmp,
                   fin_sub, fin_times_beta_pow, ring_add, ring_mul, ring_sign)
from .words import (balance_scan, beta_integer_from_prefix, d_sequence, structure_checks,
                    substitute, suffix_form_check, u_prefix, w_n)
from .zbeta import (AdditionReport, SearchReport, add, add_beta_power, enumerate_beta_integers,
                    lemmaF_expansion, lower_bound_witness, lplus_search, subtract_check,
                    successor)

__all__ = [
    "BACKEND", "DigitString", "NotAdmissible", "evaluate", "format_digits", "fp",
    "is_admissible", "normalize_rewrite", "parse_digits", "DEFAULT_BUDGET", "BudgetExceeded",
    "EventuallyPeriodic", "Finite", "NegativeInput", "greedy_expand", "is_beta_integer",
    "FinElem", "NotDivisible", "Params", "RingElem", "beta_divide", "fin_add", "fin_cmp",
    "fin_sub", "fin_times_beta_pow", "ring_add", "ring_mul", "ring_sign", "balance_scan",
    "beta_integer_from_prefix", "d_sequence", "structure_checks", "substitute",
    "suffix_form_check", "u_prefix", "w_n", "AdditionReport", "SearchReport", "add",
    "add_beta_power", "enumerate_beta_integers", "lemmaF_expansion", "lower_bound_witness",
    "lplus_search", "subtract_check", "successor",
]
