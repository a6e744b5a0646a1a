"""States, relative entropy, and projecting onto an exponential family.

The running algebra is Mat(2,C) + C: a qubit block plus a classical bit.
An exponential family is the image of a linear parameter space under the
trace-normalized exponential; projecting a state onto it minimizes relative
entropy, and the minimizer matches the state's moments along the tangent
directions.
"""

import numpy as np

from qexpfam import (
    entropy_distance,
    hs_inner,
    mean_value_projection,
    project_to_family,
    relative_entropy,
    tracial_state,
    vn_entropy,
)
from qexpfam import cone
from qexpfam.sampling import random_state

algebra = cone.ALGEBRA
family = cone.staffelberg_family()
rng = np.random.default_rng(1)

print("algebra: blocks", algebra.block_dims, "- total dimension", algebra.dim)
print("family tangent dimension:", family.dim)

rho = random_state(algebra, rng, invertible=True)
print("\nrandom invertible state, entropy", round(vn_entropy(rho), 6))

result = project_to_family(rho, family)
print("projection attained:", result.attained)
print("entropy distance:", result.distance)
print("relative entropy to the projection:",
      relative_entropy(rho, result.sigma_star))

moments_rho = mean_value_projection(rho.element, family)
moments_sig = mean_value_projection(result.sigma_star.element, family)
print("moment match (should be ~1e-10):",
      np.abs(moments_rho - moments_sig).max())

print("\northogonality of rho - sigma* against the tangent basis:")
for i, v in enumerate(family.basis):
    print(f"  <rho - sigma*, v{i+1}> =",
          hs_inner(rho.element - result.sigma_star.element, v))

print("\nthe tracial state is the member at parameter zero:")
d, attained = entropy_distance(tracial_state(algebra), family)
print("distance of the tracial state:", d, "(attained:", str(attained) + ")")
