"""Monte Carlo study of how two-qubit gates create and move entanglement."""

from .errors import (BinOverflow, DimensionMismatch, EmptyReference,
                     EntpowerError, InvariantViolation, NonPositiveWidth,
                     NotHermitian, NotPSD, NotUnitary, OutOfRange)
from .gates import (GateSpec, canonical_gate, check_lambda_domain, cnot,
                    embed_gate, local_gate, swap, u_theta,
                    verify_local_equivalence)
from .histogram import Histogram, width_half_height
from .linalg import (hermitian_eig, is_hermitian, is_psd, is_unitary, kron,
                     matrix_sqrt_psd, partial_trace, partial_transpose, purity)
from .measures import (concurrence, dw_residual, entanglement_of_formation,
                       eof_from_concurrence, pure_state_entanglement,
                       tangle_one_vs_rest, von_neumann_entropy)
from .metrics import bures_distance, hs_distance, separable_ball_contains
from .sampling import (RngStream, haar_product_pure, haar_pure_state,
                       haar_unitary, product_measure_mixed, separable_mixed_2q,
                       uniform_simplex)
from .experiments import (ExperimentReport, cnot_mixed_distance,
                          delta_e_distribution, dw_distribution,
                          entangling_power, multiqubit_delta_e, power_law_fit,
                          perturbation_sweep, random_pair_distribution,
                          run_parallel)

__version__ = "0.1.0"
