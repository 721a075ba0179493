# coding: utf-8

# # Characters and almost linear dependences

# In[1]:

from wronskforms import (
    affine_char,
    classify_vanishing_affine,
    integral_power_modules,
    verify_affine_identity,
    verify_virasoro_identity,
    virasoro_char,
)


# Level-k characters of the affine algebra at index i, and a Virasoro minimal model character.

# In[2]:

print(affine_char(1, 1, 6))
print(affine_char(2, 3, 6))
print(virasoro_char(2, 5, 1, 1, 6))


# At levels 6 and 16 several characters carry integral powers of q.
# That is what lets a non-trivial combination collapse to a constant.

# In[3]:

print(classify_vanishing_affine(5).vanishes)
for k in (6, 16):
    print(k, classify_vanishing_affine(k).vanishes, integral_power_modules("affine", k))


# The constant found by solving the linear system, with the signs it used.

# In[4]:

for i in (2, 3):
    rep = verify_affine_identity(i, 60)
    print(i, rep.holds, rep.constant, rep.reading, rep.signs)


# The Virasoro analogue has constant 1.

# In[5]:

rep = verify_virasoro_identity(1, 3, 60)
print(rep.holds, rep.constant, rep.indices)
