"""Permutations built from d-cycles: the counts H_d(n), their residues, valuations and polynomials."""
from .arith import bernoulli, binomial, falling_factorial, nu_p
from .errors import (BudgetExceeded, InternalConsistencyError, InvalidParameter, InvalidPrime,
                     TheoremViolation)
from .poly import Poly, PolyMatrix, bareiss_det
from .report import VerifyReport
from .seq import GEngine, SeqEngine, g, h, h_closed, h_oracle, h_poly_oracle

__version__ = "0.1.0"
