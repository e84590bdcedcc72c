"""
STFT, Wigner distributions, and Weyl operators
==============================================

Time-frequency analysis samples a signal jointly in position and
frequency.  On a finite abelian group the short-time Fourier transform
V_g f lives on G x G^, is an isometry up to the window's energy, and is
bounded pointwise.  A one-parameter family of Wigner distributions
interpolates between the two Rihaczek forms, and each member represents
Weyl operators by duality.
"""

from __future__ import annotations

import math

import numpy as np

from tflab import (
    FiniteAbelianGroup,
    GroupEndomorphism,
    GroupFunction,
    conjugate_rihaczek,
    rihaczek,
    stft,
    stft_lebesgue_bound_check,
    tf_pairing,
    weyl_apply,
    weyl_operator,
    wigner_factorization_check,
    wigner_tau,
)

g = FiniteAbelianGroup([9])
rng = np.random.default_rng(3)
f = GroupFunction(g, rng.standard_normal(9) + 1j * rng.standard_normal(9))
win = GroupFunction(g, rng.standard_normal(9) + 1j * rng.standard_normal(9))

# -- the STFT is an isometry and pointwise bounded ---------------------------------------

v = stft(f, win)
print(f"||V_g f||_2 = {v.l2_norm():.10f}")
print(f"||f||_2 ||g||_2 = {f.l2_norm() * win.l2_norm():.10f}")

holds, ratio = stft_lebesgue_bound_check(f, win, 2, math.inf)
print(f"sup bound ||V||_inf <= ||f||_2 ||g||_2: ratio {ratio:.4f} ({holds})")

# -- Wigner family: tau = 0 and tau = I are the Rihaczek forms ---------------------------

zero = GroupEndomorphism(g, [[0]])
ident = GroupEndomorphism.identity(g)
print(
    "tau=0 matches Rihaczek:",
    np.max(np.abs(wigner_tau(f, win, zero).values - rihaczek(f, win).values)) < 1e-12,
)
print(
    "tau=I matches conjugate Rihaczek:",
    np.max(
        np.abs(wigner_tau(f, win, ident).values - conjugate_rihaczek(f, win).values)
    )
    < 1e-12,
)

# an invertible interior tau factors through the STFT after a dilation
tau = GroupEndomorphism(g, [[2]])
print(f"factorization defect at tau=2: {wigner_factorization_check(f, win, tau):.2e}")

# -- Weyl quantization: <K_phi f, h> = <phi, W_tau(f, h)> --------------------------------

phi = stft(f, win)  # any array on G x G^ serves as a symbol
k = weyl_operator(phi, tau)
h = GroupFunction(g, rng.standard_normal(9) + 1j * rng.standard_normal(9))
lhs = weyl_apply(k, f).inner(h)
rhs = tf_pairing(phi, wigner_tau(f, h, tau))
print(f"duality: <Kf, h> = {lhs:.8f}")
print(f"         <phi, W> = {rhs:.8f}")
