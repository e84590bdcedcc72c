"""
Decreasing rearrangements and Lorentz norms on weighted atoms
=============================================================

The L^{p,q} norm of a function on a measure space only sees the decay
profile of its decreasing rearrangement f*.  Here we rearrange a small
weighted function by hand, compare the two independent norm routes the
library ships, and exercise the product (Holder) and embedding
inequalities with their sharp constants.
"""

from __future__ import annotations

import math

import numpy as np

from tflab import (
    MeasuredFunction,
    distribution,
    embedding_check,
    holder_check,
    lorentz_norm,
    lorentz_norm_via_distribution,
    rearrangement,
)

# -- a function on five atoms with unequal weights ---------------------------------------

f = MeasuredFunction(
    ids=range(5),
    weights=[0.5, 2.0, 1.0, 0.25, 1.5],
    values=[3.0, -1.0, 2.0, 5.0, 1.0],
)
print(f"total measure {f.total_measure:.2f}")

star = rearrangement(f)
print("rearrangement plateaus (right endpoints, heights):")
for b, v in zip(star.breaks, star.values):
    print(f"  up to t = {b:5.2f}: f*(t) = {v:.1f}")

# the distribution function counts measure above each level
for alpha in (0.5, 1.5, 2.5, 4.0):
    print(f"  measure(|f| > {alpha}) = {distribution(f, alpha):.2f}")

# -- two routes to the same norm ---------------------------------------------------------

for p, q in ((1, 1), (2, 2), (2, 1), (3, math.inf), ("5/2", 2)):
    a = lorentz_norm(f, p, q)
    b = lorentz_norm_via_distribution(f, p, q)
    print(f"||f||_({p},{q}) = {a:.10f}   distribution route {b:.10f}")

# -- sharp-constant inequalities ----------------------------------------------------------

rng = np.random.default_rng(7)
w = rng.uniform(0.2, 2.0, 8)
u = MeasuredFunction(range(8), w, rng.standard_normal(8))
v = MeasuredFunction(range(8), w, rng.standard_normal(8))

# pointwise products: ||uv||_{p,q} <= p' ||u||_{p1,q1} ||v||_{p2,q2}
lhs, rhs, ok = holder_check(u, v, 3, 2, 6, 4)
print(f"product bound: {lhs:.6f} <= {rhs:.6f}  ({ok})")

# second-index monotonicity: ||u||_{p,r} <= (q/p)^(1/q - 1/r) ||u||_{p,q} for q <= r
lhs, rhs, ok = embedding_check(u, 2, 1, 4)
print(f"embedding bound: {lhs:.6f} <= {rhs:.6f}  ({ok})")
