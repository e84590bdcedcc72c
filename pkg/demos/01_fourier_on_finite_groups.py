"""
Characters and the Fourier transform on a finite abelian group
==============================================================

A product of cyclic groups Z_{n1} x ... x Z_{nk} carries a discrete
"Haar" measure (every point gets the same weight) and a dual group of
the same shape whose points act as characters.  This script builds a
small group, inspects its characters, and checks the Fourier identities
that the rest of the library leans on.
"""

from __future__ import annotations

import numpy as np

from tflab import FiniteAbelianGroup, GroupFunction, fourier, fourier_fft

# -- the group Z_4 x Z_3 with unit mass per point -------------------------------------

g = FiniteAbelianGroup([4, 3])
print(f"group of size {g.size}, rank {g.rank}, atom weight {g.haar_weight}")
print(f"dual atom weight 1/(w*|G|) = {g.dual_weight}")

# characters are exact roots of unity: the table is unitary up to scaling
chi = g.character_table
gram = chi.conj().T @ chi / g.size
print("character table unitary:", np.allclose(gram, np.eye(g.size)))

# the bicharacter law <x+y, xi> = <x, xi><y, xi> at a random triple
rng = np.random.default_rng(0)
x, y, xi = (int(rng.integers(g.size)) for _ in range(3))
lhs = g.character(g.add_index[x, y], xi)
rhs = g.character(x, xi) * g.character(y, xi)
print(f"bicharacter law at ({x}, {y}; {xi}):", np.isclose(lhs, rhs))

# -- Fourier inversion and Plancherel ---------------------------------------------------

f = GroupFunction(g, rng.standard_normal(g.size) + 1j * rng.standard_normal(g.size))
fhat = fourier(f)

print(f"||f||_2 = {f.l2_norm():.12f}")
print(f"||f^||_2 = {fhat.l2_norm():.12f}   (Plancherel)")

# the direct O(|G|^2) transform agrees with the FFT route
fhat_fast = fourier_fft(f)
print("direct vs FFT:", np.max(np.abs(fhat.values - fhat_fast.values)) < 1e-12)

# a delta spreads flat across the dual; a constant piles onto the trivial character
delta = GroupFunction.delta(g)
print("delta -> flat modulus:", np.allclose(np.abs(fourier(delta).values), g.haar_weight))
const = GroupFunction.constant(g, 1.0)
chat = fourier(const).values
print("constant -> single dual atom:", np.count_nonzero(np.abs(chat) > 1e-12) == 1)
