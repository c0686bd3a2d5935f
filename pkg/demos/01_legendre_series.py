# %% [markdown]
# # Exact Legendre-series arithmetic
#
# A polynomial is stored by its coefficients in the Legendre basis, as
# `Fraction` values. Differentiation, integration and inner products never round.

# %%
from fractions import Fraction

from legproj import LegendreSeries, legendre, series_derivative, series_antiderivative
from legproj import endpoint_derivative, series_inner_product, series_eval

a = legendre(0) + legendre(1) * Fraction(1, 2) - legendre(3) * 3
print(a)

# %% [markdown]
# Orthogonality makes the inner product a weighted dot product of coefficients.

# %%
print(series_inner_product(a, a))
print(series_inner_product(legendre(2), legendre(3)))

# %% [markdown]
# The primitive anchored at -1 and the derivative undo each other exactly.

# %%
F = series_antiderivative(a)
print(F)
print(series_derivative(F) == a, endpoint_derivative(F, 0, -1))

# %% [markdown]
# Endpoint derivatives come from a closed form per basis term; evaluation in
# double precision agrees.

# %%
print(endpoint_derivative(a, 2, 1), series_eval(series_derivative(a, 2), 1.0))

# %% [markdown]
# The text format is one `index<TAB>num/den` line per nonzero coefficient.

# %%
print(a.to_text(), end="")
assert LegendreSeries.from_text(a.to_text()) == a
