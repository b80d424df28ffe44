"""Skew-information entropies, lambda-entropies and subadditivity checks."""

from .entropy import von_neumann_entropy, wy_entropy, wyd_entropy
from .errors import (ConvergenceError, DimensionMismatchError, NotHermitianError, NotPositiveError,
                     QuadratureError, SkewnumError)
from .inequalities import (BipartiteInstance, GapReport, TripartiteInstance, concavity_probe,
                           embed_sa_as_ssa, sa_gap, skew_entropy, ssa_gap, von_neumann_sa_gap)
from .linalg import EigenDecomposition, apply_spectral_function, commutator, eigh, hermitian
from .metric import c_lambda, f_lambda, lambda_entropy, mu_p_density, wyd_via_quadrature
from .quadrature import QuadratureConfig
from .search import SearchConfig, p_sweep, random_instance, search_sa_violation
from .tensor import MultipartiteOperator, kron, local_sum, partial_trace

__version__ = "0.1.0"
