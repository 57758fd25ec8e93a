"""polyenum: enumerate the monomials of a polynomial given as a black box.

The hidden polynomial is accessed only through an evaluation oracle; the
library recovers its monomials one by one, with explicit bounds on the
number of oracle calls between consecutive outputs and on the probability
of error.  Everything is exact rational arithmetic.
"""

from .arith import (
    RandomStream,
    UniPoly,
    ceil_log2,
    interpolate_univariate,
    leading_coefficient_if_degree,
    uniform_int,
)
from .sparsepoly import Monomial, SparsePolynomial, support_of
from .blackbox import (
    BlackBox,
    OracleStats,
    collapse_to_univariate,
    restrict,
    strip_constant,
    subtract,
)
from .algorithms import (
    ConfigurationError,
    EnumerationSink,
    EnumeratorConfig,
    ErrorBudget,
    InconsistentOracleError,
    another_monomial,
    coefficient_of_support,
    default_algorithm,
    enumerate_amplified,
    enumerate_degree2,
    enumerate_incremental,
    enumerate_multilinear,
    find_monomial,
    find_monomial_degree2,
    has_monomial_between,
    has_monomial_between_onecall,
    iter_algorithm,
    iter_degree2,
    iter_incremental,
    iter_multilinear,
    probably_nonzero,
    recover_monomial,
)
from .families import (
    AffineMatrix,
    Digraph,
    Hypergraph3,
    OrientedGraph,
    arborescence_blackbox,
    cycle_cover_blackbox,
    determinant,
    explicit_blackbox,
    hypertree_blackbox,
    matching_blackbox,
    pfaffian,
)
from .harness import (
    MetricsReport,
    ResourceLimitError,
    brute_force_interpolate,
    brute_force_structures,
    degree2_gap_call_bound,
    find_monomial_call_bound,
    incremental_gap_call_bound,
    multilinear_gap_call_bound,
    run_with_metrics,
)

__version__ = "0.1.0"
