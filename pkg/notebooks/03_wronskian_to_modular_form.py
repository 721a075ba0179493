# coding: utf-8

# # From a Wronskian to a modular form

# For a family of characters W is the modular Wronskian and F = W'/W.
# F is a holomorphic modular form of weight 2(dim).

# In[1]:

from wronskforms import Family, check_zero_location, decompose, eta_exponent, f_form, verify_eta_closed_form


# The Wronskian of the level-k characters is a power of eta.

# In[2]:

for k in (1, 2, 3):
    fam = Family.affine(k)
    print(k, "eta exponent:", eta_exponent(fam), verify_eta_closed_form(fam, 30))


# F factors as Delta^t E4^delta E6^epsilon G(j).

# In[3]:

res = f_form(Family.affine(5), terms=40)
dec = decompose(res.normalized_f, res.f_weight)
print("weight", res.f_weight, "t", dec.t, "delta", dec.delta, "epsilon", dec.epsilon)
print("G =", dec.g)


# The zeros of G, isolated by Sturm sequences and correctly rounded.

# In[4]:

rep = check_zero_location(dec.g)
print([x for _, x in rep.roots], rep.all_in_0_1728)


# At level 6 the form vanishes identically.

# In[5]:

print(f_form(Family.affine(6), terms=30).vanishes)


# The same for Virasoro models. (2, 27) is one of the vanishing cases.

# In[6]:

for m in ((2, 5), (3, 4), (2, 27)):
    print(m, f_form(Family.virasoro(*m), terms=30).vanishes)
