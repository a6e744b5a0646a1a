"""Numerical tolerances and solver defaults used across the package.

Every cutoff lives here so the same knob is used wherever the same kind of
decision is made (support membership, eigenvalue degeneracy, ...).
"""

# Largest total matrix dimension an algebra may have.
MAX_TOTAL_DIM = 16

# Hermiticity: constructors symmetrize (a + a*)/2 and reject inputs whose
# anti-Hermitian part exceeds this.
HERMITIZE_REJECT = 1e-9

# Rank / image decisions: eigenvalues below this count as zero wherever an
# image-inclusion or support question is asked.
SUPPORT_CUTOFF = 1e-10

# State validation: eigenvalues in [-STATE_NEG_CLAMP, 0) are clamped to 0,
# anything more negative is rejected; |trace - 1| must stay below this too.
STATE_TOL = 1e-12

# Projectors: ||p^2 - p|| tolerance.
PROJECTOR_TOL = 1e-12

# Divided differences switch to f' when eigenvalues are closer than this.
DIVIDED_DIFF_DEGENERACY = 1e-12

# Spectral gap below which eigenvalues are merged into one maximal projector.
MAX_EIG_GAP = 1e-9

# Exposed-face membership: |<rho,u> - mu_+(u)| tolerance.
FACE_VALUE_TOL = 1e-10

# Orthonormalization (modified Gram-Schmidt) rank tolerance.
GRAM_SCHMIDT_TOL = 1e-12

# Projection solver.
SOLVER_TOL = 1e-10
PARAM_CAP = 80.0
MAX_ITER = 500
ARMIJO_C1 = 1e-4
ARMIJO_MAX_HALVINGS = 60

# Reverse-information membership.
RI_EPS = 1e-3
RI_PARAM_CAP = 200.0

# Boundary sweeps.
SWEEP_ANGLES = 720
SWEEP_MIN_ANGLES = 64
KINK_ANGLE_TOL = 1e-6
TRANSITION_ANGLE_TOL = 1e-10
