"""
A concentration uncertainty principle for spectrograms
======================================================

If a spectrogram holds a fraction eps of its total energy on a region
Omega, then Omega cannot be too small: chaining the Lorentz bound for
V_g f against the norm of an indicator yields an explicit lower bound
on the measure of Omega.  This script measures how tight that bound is
for concentrated and for spread-out regions.
"""

from __future__ import annotations

import numpy as np

from tflab import FiniteAbelianGroup, GroupFunction, stft, uncertainty_check

g = FiniteAbelianGroup([12])
rng = np.random.default_rng(5)
f = GroupFunction(g, rng.standard_normal(12) + 1j * rng.standard_normal(12))
win = GroupFunction(g, np.exp(-0.5 * (np.arange(12) - 6.0) ** 2 / 4.0))

v = stft(f, win)
energy = np.abs(v.values) ** 2
cell = g.haar_weight * g.dual_weight

# -- take Omega = the smallest region holding 80% of the energy ---------------------------

order = np.argsort(energy, axis=None)[::-1]
total = energy.sum()
cum = np.cumsum(energy.reshape(-1)[order])
count = int(np.searchsorted(cum, 0.8 * total) + 1)
omega = [tuple(divmod(int(i), g.size)) for i in order[:count]]
print(f"80% of the energy sits on {count} of {g.size * g.size} cells")

eps, lhs, rhs, bound, holds = uncertainty_check(f, win, omega, q=4)
measure = count * cell
print(f"captured fraction eps = {eps / (total * cell):.4f} of ||V||_2^2")
print(f"chain: sqrt(eps) = {lhs:.6f} <= {rhs:.6f} ({holds})")
print(f"measure lower bound {bound:.6f} vs actual mu(Omega) = {measure:.6f}")

# -- the bound weakens as the same energy spreads out --------------------------------------

for k in (count, (count + order.size) // 2, order.size):
    omega = [tuple(divmod(int(i), g.size)) for i in order[:k]]
    eps, lhs, rhs, bound, holds = uncertainty_check(f, win, omega, q=4)
    ratio = bound / (k * cell)
    print(f"|Omega| = {k:3d} cells: bound/actual = {ratio:.4f}, chain holds = {holds}")
