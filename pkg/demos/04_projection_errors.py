# %% [markdown]
# # Projection errors of sample functions
#
# Projections use Gauss-Legendre sums in 40-digit arithmetic, so errors far
# below double-precision round-off are still measured accurately.

# %%
import numpy as np

from legproj import endpoint_derivative, get_function, project
from legproj.projection import error_seminorm, error_trace, interpolant, sobolev_seminorm

for name in ("exp", "sin3", "runge"):
    f = get_function(name)
    errs = [error_seminorm(f, p, 0) for p in (4, 8, 12, 16, 20)]
    print(f"{name:6s}", " ".join(f"{e:.2e}" for e in errs))

# %% [markdown]
# Runge's function converges only geometrically with a slow rate: its poles at
# +-i/5 are close to the interval.

# %%
f = get_function("runge")
print(project(f, 10).coeffs[:6])
print([f"{error_trace(f, p, 1, 1):.2e}" for p in (10, 20, 40)])

# %% [markdown]
# The interpolant matches derivatives at -1, and for p >= 2k-1 also at +1.

# %%
f = get_function("exp")
g = interpolant(f, 6, 2)
print([float(endpoint_derivative(g, i, s) - f.eval(i, s)) for i in (0, 1) for s in (-1, 1)])
print(sobolev_seminorm(f, 3), np.sqrt((np.e**2 - np.e**-2) / 2))
