# %% [markdown]
# # Integrated Legendre polynomials
#
# `psi(i, n)` is the n-fold primitive of L_i that vanishes with its first n-1
# derivatives at -1. It is built by a three-term relation and stays in the
# band of Legendre indices i-n .. i+n.

# %%
from legproj import psi, series_antiderivative, legendre
from legproj.integrated_legendre import certify_psi_inner, psi_inner_closed, psi_norm_sq_closed

print(psi(1, 1))
print(psi(4, 2))
print(psi(4, 2) == series_antiderivative(legendre(4), 2))

# %% [markdown]
# Inner products between primitives whose indices are 2k apart have a closed
# form, and vanish once k exceeds n.

# %%
for k in range(5):
    print(k, psi_inner_closed(4, k, 2))

# %% [markdown]
# Certify the closed form against direct exact inner products over a grid.

# %%
rows = list(certify_psi_inner(p_max=20, n_max=5))
print(len(rows), "cases;", sum(c != d for *_, c, d in rows), "mismatches")
print(psi_norm_sq_closed(1, 1))
