
# coding: utf-8

# # How far the bounds are from the truth

# Each bound calculator drops its unknown absolute constant, so only ratios empirical / bound mean anything. This notebook puts a handful of characters next to their bound reports and then follows the smooth-modulus savings factor along primorials.

# In[1]:

import math

from charsum import bounds
from charsum.characters import primitive_characters
from charsum.numtheory import arith_stats, primorial
from charsum.report import build_bound_report


# In[2]:

for q in (101, 105, 1024, 3003):
    chi = primitive_characters(q)[0]
    r = build_bound_report(chi)
    t1 = r.theorem1.ratio
    print(
        f"{r.label:>12}  max|S| {r.max_abs:8.3f}  pv {r.pv_ratio:.3f}"
        f"  /thm1 {t1 if t1 is None else round(t1, 4)}  /thmA {r.theoremA_upper.ratio:.4f}"
        f"  thm2 applicable {r.theorem2.applicable}"
    )


# ## Savings factor along primorials

# theorem1_bound / (sqrt(q) log q) with P and d taken from q itself. It creeps up until about the product of the first dozen primes and only then starts to fall; the decay is very slow, so at desk scale the bracket never drops below 1.

# In[3]:

for k in range(5, 31, 2):
    q = primorial(k)
    st = arith_stats(q)
    f = bounds.theorem1_bound(q, st.largest_prime_factor, st.num_divisors) / (math.sqrt(q) * math.log(q))
    print(k, f"{f:.5f}")


# ## Choosing k

# In[4]:

for lq in (1e2, 1e4, 1e6, 1e10):
    print(lq, [bounds.choose_k_log(lq, lp, lp) for lp in (0.0, 1.0, 10.0, 100.0)])
