"""Numerical tolerances used across the package.

Every module and test references these named constants rather than
inlining literals, so a tolerance change propagates consistently.
"""

HERMITIAN_TOL = 1e-10       # max-abs deviation allowed in A - A^dagger
UNITARY_TOL = 1e-10         # max-abs deviation allowed in U^dagger U - I
GATE_UNITARY_TOL = 1e-12    # gate constructors must be unitary to this level
PSD_TOL = 1e-9              # eigenvalues in (-PSD_TOL, 0) are clamped; below is an error
EIG_RESIDUAL_TOL = 1e-10    # reconstruction residual of the Hermitian eigensolver
EIG_ZERO_REL_FLOOR = 1e-14  # eigenvalues below this fraction of the largest are exact zeros
SQRT_RESIDUAL_TOL = 1e-8    # matrix_sqrt_psd(a) @ matrix_sqrt_psd(a) vs a
TRACE_TOL = 1e-12           # trace preservation under partial trace
UNIT_TRACE_TOL = 1e-10      # how far a density matrix trace may sit from 1
NORM_TOL = 1e-12            # state-vector normalization
PPT_TOL = 1e-9              # min eigenvalue of a partial transpose counted as non-negative
INVOLUTION_TOL = 1e-14      # double partial transpose vs identity

MEASURE_CLAMP_TOL = 1e-10   # entanglement values in [-tol, 0) or (1, 1+tol] clamp to [0, 1]
DW_CLAMP_TOL = 1e-9         # wider clamp for the three-term residual tangle
EOF_ENTROPY_XCHECK_TOL = 1e-8  # EoF vs reduced-entropy agreement on pure states

PHASE_EQUAL_TOL = 1e-12     # matrix equality modulo one global phase

DISTANCE_SYM_TOL = 1e-9     # metric symmetry / identity-of-indiscernibles slack
BURES_EIG_ABS_FLOOR = 1e-14  # sandwich eigenvalues below this are exact zeros (unit-trace scale)
DISTANCE_ZERO_SNAP = 1e-14  # squared distances below this report exactly 0
SEPARABLE_BALL_TOL = 1e-12  # slack on the purity <= 1/3 ball test

PURITY_CONSERVATION_TOL = 1e-12  # |Tr rho^2 - Tr (U rho U^dag)^2| per sample
DELTA_E_RANGE_TOL = 1e-9    # histogram samples may exceed the range by at most this
DENSITY_NORM_TOL = 1e-9     # histogram density must integrate to 1 within this
