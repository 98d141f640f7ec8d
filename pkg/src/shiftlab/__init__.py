"""Numerical laboratory for the compression of the shift to ``span{alpha + beta z, z^2, z^3, ...}``."""

from .errors import (DomainError, InconclusiveTruncation, InternalInconsistency, RootFindingFailure,
                     RootMismatch, ShiftLabError, ThetaVanishesAtAbBar, TruncationOverflow,
                     UnknownSuite, UnsupportedSelector, ZeroPolynomial, ZeroVector)
from .inner import InnerFunction, evaluate, inner_part_of_polynomial, same_up_to_constant, taylor_coeffs
from .series import CoeffSeries, cauchy_kernel_series, divide_by_linear, inner_product, mul_series
from .shift import (AbCoords, OpMatrix, ParamPair, apply, apply_adjoint, hyponormality_check,
                    kernel_adjoint, matrix, power_on_f0, unitary_equivalence)
from .subspaces import (SubspaceModel, build_subspace, cyclic_generator, inner_part_from_generator,
                        solve_g, verify_invariance)
from .wandering import (Counterexample, NotPossible, WanderingWitness, WspReport, cubic_root,
                        find_counterexample, full_space_krylov_oracle, full_space_wsp, h5_witness,
                        subspace_krylov_oracle, thresholds, wsp_decision, wsp_inequality_lhs)

__version__ = "0.1.0"
