# %% [markdown]
# # Measured errors against a-priori bounds
#
# `check_bound` returns lhs, rhs and their ratio, where lhs is the squared
# error and rhs the squared bound. Each measurement is repeated with doubled
# quadrature order.

# %%
from legproj import check_bound, get_function, sharpness_case, q_poly, q_norm_sq
from legproj.bound_checker import main_proof_scale, main_scale

f = get_function("exp")
for kind, s, nu in [("L2_PROJ", 2, 0), ("TRACE_HOUSTON", 1, 0), ("TRACE_MAIN", 1, 1), ("TRACE_MAIN_PROOF", 1, 1)]:
    r = check_bound(f, 6, s, nu, kind)
    print(f"{kind:17s} ratio {r.ratio:.3g} pass {r.passed}")

# %% [markdown]
# The trace estimate is attained by u with u^(nu+1) = q_{p,nu}.

# %%
u, gap = sharpness_case(4, 2)
print(gap)

# %% [markdown]
# For that u the squared trace error is ||q||^4 and |u|_{nu+1}^2 = ||q||^2. With
# the factor (p-nu-s)!/(p+nu+s)! the bound would be below the attained value
# for nu >= 1. With (p-nu-s)!/(p-nu+s)! it is met with equality at s = 0.

# %%
p, nu = 4, 2
n2 = q_norm_sq(q_poly(p, nu))
print("attained", n2**2)
print("(p+nu+s)! form", main_scale(p, 0, nu) * n2)
print("(p-nu+s)! form", main_proof_scale(p, 0, nu) * n2)
