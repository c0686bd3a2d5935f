# %% [markdown]
# # Boundary-adapted polynomials q_{p,nu}
#
# q_{p,nu} equals 1 at x=1, 0 at x=-1, has vanishing derivatives of order
# 1..nu at both ends, and lives in the Legendre band p-nu .. p+nu+1. Each order
# is added by solving a 2x2 rational system.

# %%
from legproj import q_poly, q_norm_sq
from legproj.qfamily import alpha_beta_closed, growth_scan, interface_defects, wz_closed, wz_sum

q = q_poly(2, 1)
print(q.series.to_text(), end="")
print(q_norm_sq(q))
print(interface_defects(q))

# %% [markdown]
# The solved coefficients agree with their closed form.

# %%
print(q_poly(5, 3).coefficients[-1], alpha_beta_closed(5, 3))

# %% [markdown]
# The endpoint-difference sum has a closed form that vanishes for even nu.

# %%
for nu in range(1, 6):
    print(nu, wz_sum(9, nu), wz_closed(9, nu))

# %% [markdown]
# ||q_{p,nu}||^2 grows like p^(2nu-1).

# %%
for nu in range(4):
    rows = growth_scan(nu, range(max(nu, 1), 101))
    print(nu, max(r for *_, r in rows), rows[-1][2])
