# coding: utf-8

# # Congruences modulo p = 2k + 3

# In[1]:

from wronskforms import (
    check_f_integrality,
    check_hasse_conjecture,
    check_jacobi_moment_congruence,
    check_theta_congruence,
    p_valuation,
)


# Each check returns a report. Assertions must hold; evidence is only logged.

# In[2]:

for k in (1, 2, 4, 5):
    p = 2 * k + 3
    print(k, p,
          check_theta_congruence(k, 30).holds,
          check_jacobi_moment_congruence(p, 30).holds,
          check_f_integrality(k, 30).holds)


# The leading coefficient of the first row has valuation exactly 1 at p.

# In[3]:

rep = check_f_integrality(5, 30)
print(rep.details["a0"], p_valuation(rep.details["a0"], 13))


# F = 1 mod p, the Hasse-invariant statement, is tested as evidence.

# In[4]:

rep = check_hasse_conjecture(4, 30)
print(rep.kind, rep.holds)
