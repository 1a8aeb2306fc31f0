
# coding: utf-8

# # Characters and their partial sums

# A character mod q is stored as a vector of exponents against fixed generators of the unit group. This notebook builds a few, checks the basic identities by hand and looks at how large the partial sums get compared with sqrt(q) log q.

# In[1]:

import math

import numpy as np

from charsum.characters import conductor, enumerate_characters, parity, parse_label, primitive_characters, unit_group
from charsum.charsums import prefix_profile, pv_ratio


# ## The unit group and its generators

# In[2]:

for q in (5, 8, 24, 45):
    s = unit_group(q)
    print(q, "phi =", s.phi, "generators:", s.generators)


# Labels are "q:e1,...,er". The quadratic character mod 5 is the square of the generator of order 4, so its exponent is 2.

# In[3]:

chi = parse_label("5:2")
[complex(chi(n)) for n in range(1, 6)]


# ## Conductors

# Every character mod 24 together with its conductor and parity:

# In[4]:

for c in enumerate_characters(24):
    print(f"{c.label:>10}  conductor {conductor(c):>2}  parity {parity(c):+d}")


# ## Partial sums

# S(x) = sum of chi(n) for n <= x. For the quadratic character mod 7 it walks 1, 2, 1, 2, 1, 0, 0.

# In[5]:

p = prefix_profile(parse_label("7:3"))
p.prefix.real, p.max_abs, p.argmax


# Now the largest normalised maximum, max|S| / (sqrt(q) log q), per modulus over the primitive characters. Small moduli dominate, as expected: log q is the generous part of the estimate.

# In[6]:

rows = []
for q in range(3, 400):
    prim = primitive_characters(q)
    if prim:
        rows.append((q, max(pv_ratio(c) for c in prim)))
rows = np.array(rows)
top = rows[np.argsort(-rows[:, 1])[:8]]
for q, r in top:
    print(int(q), round(r, 4))


# In[7]:

# crude trend: mean of the per-modulus maxima in dyadic blocks
for lo in (3, 16, 32, 64, 128, 256):
    sel = (rows[:, 0] >= lo) & (rows[:, 0] < 2 * lo)
    print(f"[{lo}, {2 * lo})  mean {rows[sel, 1].mean():.4f}")
