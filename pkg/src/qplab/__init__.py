"""Exact experiments with restricted partition functions p_A(n).

p_A(n) counts the partitions of n with parts drawn from a multiset A. It is a
quasi-polynomial in n, and this package recovers it exactly, evaluates Turán
and Laguerre type inequalities on it per residue class, and scans the raw
sequence for violations.
"""

from .algebra import (Polynomial, binomial, determinant, generalized_binomial,
                      hankel_is_hyperbolic, hankel_matrix, is_positive_semidefinite,
                      newton_sums, poly_gcd, stirling2, sturm_chain, sturm_real_root_count)
from .asymptotics import (HypothesisWarning, almkvist_hypothesis, almkvist_main_term,
                          guaranteed_rows, sigma, sigma_closed_forms)
from .cache import SeriesCache
from .inequalities import (InequalityProfile, LimitProfile, ScanResult, expression_quasipolynomial,
                           form_for, generalized_laguerre, inequality_profile, is_hyperbolic,
                           jensen_poly, laguerre_expression, limit_profile, limit_target,
                           r_log_concave_check, threshold_scan, turan_expression)
from .partitions import (Multiset, PartitionSeries, brute_force_count, check_series,
                         gcd_condition, gcd_condition_enumerated, series, series_values)
from .quasipoly import (CoefficientTable, InsufficientData, NotQuasiPolynomial, QuasiPolynomial,
                        partition_quasipolynomial, recover)

__version__ = "0.1.0"
