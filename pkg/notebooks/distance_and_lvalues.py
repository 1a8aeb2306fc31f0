
# coding: utf-8

# # Distance to small-conductor characters and L(s_y, chi)

# The distance D(chi, psi; y)^2 = sum over p <= y of (1 - Re chi(p) conj psi(p)) / p measures how much chi "pretends" to be psi. Here we find the nearest character of small conductor and compare the distance to the trivial character with log |log y / L(1 + 1/log y, chi)|.

# In[1]:

import math

from charsum.characters import parse_label, primitive_characters, trivial
from charsum.lseries import EULER_PRODUCT, l_value, lemma3_defect, s_of_y
from charsum.metric import default_max_cond, distance, nearest_character


# In[2]:

d = distance(parse_label("3:1"), trivial(), 10)
d.dist_sq, d.dist


# ## Nearest character

# With the default cap the search for q = 10007 only looks at conductor <= 2, so the trivial character is the only candidate. Raising the cap shows which small characters chi leans towards.

# In[3]:

chi = parse_label("10007:5")
print("default cap:", default_max_cond(chi.modulus))
for cap in (2, 12, 40):
    xi, rep = nearest_character(chi, cap, False, 10**4)
    print(cap, xi.label, round(rep.dist_sq, 4))


# ## Two ways to get L(s, chi)

# The summation route is cheap at any s > 1; the Euler product needs primes up to a cutoff that explodes as s approaches 1.

# In[4]:

chi = parse_label("4:1")
for s in (3.0, 2.0):
    a = l_value(chi, s, tol=0.9e-8, method=EULER_PRODUCT)
    b = l_value(chi, s, tol=1e-11)
    print(s, a.value.real, b.value.real, "primes up to", a.terms)


# In[5]:

try:
    l_value(chi, 1.1, tol=1e-8, method=EULER_PRODUCT)
except ArithmeticError as exc:
    print(exc)


# ## The defect

# For each y, the largest |D(chi,1;y)^2 - log|log y / L(s_y, chi)|| over primitive characters with q <= 60. It stays well inside 1 and drifts down slowly as y grows.

# In[6]:

chars = [c for q in range(3, 61) for c in primitive_characters(q)]
for y in (10, 100, 1000, 10**4):
    worst = max(abs(lemma3_defect(c, y)) for c in chars)
    print(f"y={y:<6} s_y={s_of_y(y):.4f}  max |defect| {worst:.4f}")
