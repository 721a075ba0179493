# coding: utf-8

# # Exact q-series and the eta function

# A `QSeries` stores exact rational coefficients on a lattice of exponents n/N
# together with the order O(q^order) below which every coefficient is known.

# In[1]:

from fractions import Fraction

from wronskforms import QSeries, eta_power, euler_product_power, mul, invert, ramanujan_derive


# Euler's product is the pentagonal sum. Only exponents l(3l-1)/2 survive.

# In[2]:

print(euler_product_power(1, 30))


# Its cube is Jacobi's sum of (-1)^n (2n+1) q^(n(n+1)/2).

# In[3]:

print(euler_product_power(3, 30))


# eta^r carries the fractional prefactor q^(r/24). The order travels with the series.

# In[4]:

eta = eta_power(1, 10)
print(eta)
print("order:", eta.order, "lattice:", eta.lattice_den)


# Products and inverses keep track of how far the result can be trusted.

# In[5]:

a = QSeries.from_exponents({0: 1, 1: -1}, 12)
inv = invert(a)
print(inv)
print(mul(a, inv))


# `ramanujan_derive` applies q d/dq. On Delta = eta^24 it multiplies by E2.

# In[6]:

from wronskforms import eisenstein

delta = eta_power(24, 12)
print(ramanujan_derive(delta) == mul(eisenstein(2, 12), delta))
