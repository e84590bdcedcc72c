"""Fourier transform, STFT, tau-Wigner transforms, and tau-Weyl operators.

All transforms are dense linear algebra against the cached character table,
with the Haar weights written out explicitly so that measure-scaling tests
exercise real code paths.  Direct summation is the primary route everywhere;
fast per-factor transforms and brute-force inner-product evaluations are
provided separately as cross-checks, never silently substituted.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .exponents import ExponentLike, as_float, conjugate, is_inf, parse_exponent
from .groups import ElementLike, FiniteAbelianGroup, GroupEndomorphism
from .lorentz import MeasuredFunction, lorentz_norm

__all__ = [
    "GroupFunction",
    "TFArray",
    "fourier",
    "fourier_fft",
    "tf_shift",
    "stft",
    "stft_via_inner_products",
    "stft_lebesgue_bound_check",
    "wigner_tau",
    "rihaczek",
    "conjugate_rihaczek",
    "a_tau",
    "stft_dilate",
    "wigner_factorization_check",
    "tf_pairing",
    "weyl_operator",
    "weyl_operator_pointmass",
    "weyl_apply",
    "hausdorff_young_check",
]


class GroupFunction:
    """A dense complex function on a finite abelian group."""

    def __init__(self, group: FiniteAbelianGroup, values: Sequence[complex]):
        self.group = group
        self.values = np.asarray(values, dtype=np.complex128)
        if self.values.shape != (group.size,):
            raise ValueError(
                f"expected {group.size} values for {group!r}, "
                f"got shape {self.values.shape}"
            )

    @classmethod
    def delta(
        cls, group: FiniteAbelianGroup, at: ElementLike = 0
    ) -> "GroupFunction":
        values = np.zeros(group.size, dtype=np.complex128)
        values[group.index(at)] = 1.0
        return cls(group, values)

    @classmethod
    def constant(cls, group: FiniteAbelianGroup, c: complex = 1.0) -> "GroupFunction":
        return cls(group, np.full(group.size, c, dtype=np.complex128))

    def __repr__(self) -> str:
        return f"GroupFunction({self.group!r})"

    def __call__(self, x: ElementLike) -> complex:
        return complex(self.values[self.group.index(x)])

    def inner(self, other: "GroupFunction") -> complex:
        """<f, g> = haar_weight * sum f(x) conj(g(x))."""
        self._check_group(other)
        return complex(
            self.group.haar_weight * np.vdot(other.values, self.values)
        )

    def l2_norm(self) -> float:
        return math.sqrt(
            self.group.haar_weight * float(np.sum(np.abs(self.values) ** 2))
        )

    def lebesgue_norm(self, p: ExponentLike) -> float:
        p = parse_exponent(p)
        mags = np.abs(self.values)
        if is_inf(p):
            return float(mags.max()) if mags.size else 0.0
        pf = as_float(p)
        if pf <= 0:
            raise ValueError(f"exponent p must be positive, got {p}")
        return float(
            (self.group.haar_weight * np.sum(mags**pf)) ** (1.0 / pf)
        )

    def lorentz_norm(self, p: ExponentLike, q: ExponentLike) -> float:
        return lorentz_norm(self.to_measured(), p, q)

    def to_measured(self, domain: Optional[str] = None) -> MeasuredFunction:
        g = self.group
        if domain is None:
            domain = "x".join(str(n) for n in g.orders)
        return MeasuredFunction(
            np.arange(g.size), np.full(g.size, g.haar_weight), self.values, domain
        )

    def _check_group(self, other: "GroupFunction") -> None:
        if self.group != other.group:
            raise ValueError("functions live on different groups")


class TFArray:
    """A complex function on G x G^, stored x-major as a (|G|, |G|) array.

    Every atom of the product carries weight haar_weight(G) * haar_weight(G^),
    which equals 1/|G| at any measure scale by the Plancherel normalization.
    """

    def __init__(self, group: FiniteAbelianGroup, values: np.ndarray):
        self.group = group
        self.values = np.asarray(values, dtype=np.complex128)
        if self.values.shape != (group.size, group.size):
            raise ValueError(
                f"expected shape {(group.size, group.size)}, "
                f"got {self.values.shape}"
            )

    @property
    def atom_weight(self) -> float:
        return self.group.haar_weight * self.group.dual_weight

    def __repr__(self) -> str:
        return f"TFArray({self.group!r})"

    def l2_norm(self) -> float:
        return math.sqrt(self.atom_weight * float(np.sum(np.abs(self.values) ** 2)))

    def lebesgue_norm(self, q: ExponentLike) -> float:
        q = parse_exponent(q)
        mags = np.abs(self.values)
        if is_inf(q):
            return float(mags.max())
        qf = as_float(q)
        if qf <= 0:
            raise ValueError(f"exponent q must be positive, got {q}")
        return float((self.atom_weight * np.sum(mags**qf)) ** (1.0 / qf))

    def lorentz_norm(self, p: ExponentLike, q: ExponentLike) -> float:
        return lorentz_norm(self.to_measured(), p, q)

    def to_measured(self) -> MeasuredFunction:
        g = self.group
        n = g.size * g.size
        spec = "x".join(str(m) for m in g.orders)
        return MeasuredFunction(
            np.arange(n),
            np.full(n, self.atom_weight),
            self.values.ravel(),
            f"{spec}*dual",
        )


# -- Fourier ---------------------------------------------------------------


def fourier(f: GroupFunction) -> GroupFunction:
    """f^(xi) = haar_weight * sum_x f(x) conj<x, xi>, on the dual group."""
    g = f.group
    out = g.haar_weight * (f.values @ np.conj(g.character_table))
    return GroupFunction(g.dual, out)


def fourier_fft(f: GroupFunction) -> GroupFunction:
    """Per-factor fast transform; bit-compatible with fourier within 1e-12."""
    g = f.group
    grid = f.values.reshape(g.orders)
    out = g.haar_weight * np.fft.fftn(grid).ravel()
    return GroupFunction(g.dual, out)


def tf_shift(f: GroupFunction, x: ElementLike, xi: ElementLike) -> GroupFunction:
    """pi(x, xi) f = M_xi T_x f, i.e. y -> <y, xi> f(y - x)."""
    g = f.group
    ix = g.index(x)
    ixi = g.index(xi)
    translated = f.values[g.sub_index[:, ix]]
    return GroupFunction(g, g.character_table[:, ixi] * translated)


# -- STFT --------------------------------------------------------------------


def stft(f: GroupFunction, g: GroupFunction) -> TFArray:
    """V_g f(x, xi) = <f, pi(x, xi) g>, evaluated as [f * conj(T_x g)]^(xi)."""
    f._check_group(g)
    grp = f.group
    # H[x, y] = f(y) * conj g(y - x)
    window = np.conj(g.values[grp.sub_index.T])  # [x, y] -> g(y - x)
    h = f.values[None, :] * window
    values = grp.haar_weight * (h @ np.conj(grp.character_table))
    return TFArray(grp, values)


def stft_via_inner_products(f: GroupFunction, g: GroupFunction) -> TFArray:
    """Brute-force oracle: V_g f(x, xi) = <f, pi(x, xi) g> entry by entry."""
    f._check_group(g)
    grp = f.group
    values = np.empty((grp.size, grp.size), dtype=np.complex128)
    for ix in range(grp.size):
        for ixi in range(grp.size):
            values[ix, ixi] = f.inner(tf_shift(g, ix, ixi))
    return TFArray(grp, values)


def stft_lebesgue_bound_check(
    f: GroupFunction,
    g: GroupFunction,
    p: ExponentLike,
    q: ExponentLike,
) -> Tuple[bool, float]:
    """||V_g f||_{L^q(G x G^)} <= ||f||_{p'} ||g||_p with constant 1.

    Requires q in [2, inf] and p in [q', q].  Returns (holds, lhs/rhs ratio);
    the ratio is 0 when both sides vanish.
    """
    p = parse_exponent(p)
    q = parse_exponent(q)
    if not is_inf(q) and q < 2:
        raise ValueError(f"q must lie in [2, inf], got {q}")
    qc = conjugate(q)
    below_q = is_inf(q) or (not is_inf(p) and p <= q)
    if not (below_q and qc <= p):
        raise ValueError(f"p must lie in [q', q] = [{qc}, {q}], got {p}")
    lhs = stft(f, g).lebesgue_norm(q)
    rhs = f.lebesgue_norm(conjugate(p)) * g.lebesgue_norm(p)
    if rhs == 0:
        return (lhs == 0, 0.0)
    ratio = lhs / rhs
    return (ratio <= 1 + 1e-12, ratio)


# -- tau-Wigner ---------------------------------------------------------------


def wigner_tau(
    f: GroupFunction, g: GroupFunction, tau: GroupEndomorphism
) -> TFArray:
    """W_tau(f,g)(x,xi) = w * sum_y f(x + tau y) conj g(x - (I-tau) y) conj<y,xi>."""
    f._check_group(g)
    grp = f.group
    if tau.group.orders != grp.orders:
        raise ValueError("endomorphism acts on a different group")
    tau_perm = tau.permutation
    one_minus = GroupEndomorphism.identity(tau.group) - tau
    om_perm = one_minus.permutation
    # A[x, y] = f(x + tau y) * conj g(x - (I - tau) y)
    left = f.values[grp.add_index[:, tau_perm]]
    right = np.conj(g.values[grp.sub_index[:, om_perm]])
    a = left * right
    values = grp.haar_weight * (a @ np.conj(grp.character_table))
    return TFArray(grp, values)


def rihaczek(f: GroupFunction, g: GroupFunction) -> TFArray:
    """Closed form of W_tau at tau = 0: f(x) conj<x, xi> conj g^(xi)."""
    f._check_group(g)
    grp = f.group
    ghat = fourier(g).values
    values = (
        f.values[:, None] * np.conj(grp.character_table) * np.conj(ghat)[None, :]
    )
    return TFArray(grp, values)


def conjugate_rihaczek(f: GroupFunction, g: GroupFunction) -> TFArray:
    """Closed form of W_tau at tau = I: conj g(x) <x, xi> f^(xi)."""
    f._check_group(g)
    grp = f.group
    fhat = fourier(f).values
    values = (
        np.conj(g.values)[:, None] * grp.character_table * fhat[None, :]
    )
    return TFArray(grp, values)


# -- dilations and the Wigner-STFT factorization ------------------------------


def a_tau(g: GroupFunction, tau: GroupEndomorphism) -> GroupFunction:
    """A_tau g = g o (I - tau^{-1}); needs tau and I - tau^{-1} invertible."""
    grp = g.group
    if tau.group.orders != grp.orders:
        raise ValueError("endomorphism acts on a different group")
    if not tau.is_automorphism:
        raise ValueError("a_tau requires tau to be an automorphism")
    comp = GroupEndomorphism.identity(tau.group) - tau.inverse
    if not comp.is_automorphism:
        raise ValueError("a_tau requires I - tau^{-1} to be an automorphism")
    return GroupFunction(grp, g.values[comp.permutation])


def stft_dilate(vgf: TFArray, tau: GroupEndomorphism) -> TFArray:
    """Relabel V(x, xi) -> V((I-tau)^{-1} x, (tau^{-1})* xi).

    A bijective change of coordinates on G x G^; every rearrangement-based
    quantity is preserved exactly.
    """
    grp = vgf.group
    if tau.group.orders != grp.orders:
        raise ValueError("endomorphism acts on a different group")
    if not tau.is_automorphism:
        raise ValueError("stft_dilate requires tau to be an automorphism")
    one_minus = GroupEndomorphism.identity(tau.group) - tau
    if not one_minus.is_automorphism:
        raise ValueError("stft_dilate requires I - tau to be an automorphism")
    x_perm = one_minus.inverse.permutation
    xi_perm = tau.inverse.dual().permutation
    return TFArray(grp, vgf.values[np.ix_(x_perm, xi_perm)])


def wigner_factorization_check(
    f: GroupFunction, g: GroupFunction, tau: GroupEndomorphism
) -> float:
    """Max |W_tau(f,g) - Delta^{-1} <x,(tau^{-1})* xi> V^tau_{A_tau g} f|.

    Requires tau, I - tau, and I - tau^{-1} to all be automorphisms.  Both
    sides are evaluated independently on every (x, xi).
    """
    grp = f.group
    lhs = wigner_tau(f, g, tau).values
    dilated = stft_dilate(stft(f, a_tau(g, tau)), tau)
    inv_dual_perm = tau.inverse.dual().permutation
    phase = grp.character_table[:, inv_dual_perm]  # [x, xi] -> <x, (tau^{-1})* xi>
    delta = tau.modulus()
    rhs = (1.0 / delta) * phase * dilated.values
    return float(np.max(np.abs(lhs - rhs)))


# -- tau-Weyl operators --------------------------------------------------------


def tf_pairing(phi: TFArray, psi: TFArray) -> complex:
    """The bilinear pairing <phi, psi> = sum of atom_weight * phi * psi.

    The Weyl duality below needs the second factor unconjugated: pairing the
    symbol sesquilinearly against W_tau(f, g) would be antilinear in f while
    <K f, g> is linear in f, so no operator could satisfy it.
    """
    if phi.group != psi.group:
        raise ValueError("arrays live on different groups")
    return complex(phi.atom_weight * np.sum(phi.values * psi.values))


def weyl_operator(phi: TFArray, tau: GroupEndomorphism) -> np.ndarray:
    """Matrix K of the operator defined by <K f, g>_{L^2} = <phi, W_tau(f, g)>.

    The right-hand pairing is the bilinear one (tf_pairing).  Applying the
    identity to point masses f = delta_b, g = delta_a gives the closed form
    K[a, b] = (1/|G|) * sum_xi phi(b - tau(b-a), xi) conj<b-a, xi>,
    assembled here with one matrix product.
    """
    grp = phi.group
    if tau.group.orders != grp.orders:
        raise ValueError("endomorphism acts on a different group")
    # S[x, d] = sum_xi phi(x, xi) conj<d, xi>
    s = phi.values @ np.conj(grp.character_table)
    a_idx, b_idx = np.meshgrid(
        np.arange(grp.size), np.arange(grp.size), indexing="ij"
    )
    d_idx = grp.sub_index[b_idx, a_idx]
    x_idx = grp.sub_index[b_idx, tau.permutation[d_idx]]
    return s[x_idx, d_idx] / grp.size


def weyl_operator_pointmass(phi: TFArray, tau: GroupEndomorphism) -> np.ndarray:
    """Literal assembly oracle: pair phi with W_tau(delta_b, delta_a) directly."""
    grp = phi.group
    n = grp.size
    k = np.empty((n, n), dtype=np.complex128)
    w = grp.haar_weight
    for b in range(n):
        fb = GroupFunction.delta(grp, b)
        for a in range(n):
            wig = wigner_tau(fb, GroupFunction.delta(grp, a), tau)
            k[a, b] = tf_pairing(phi, wig) / w
    return k


def weyl_apply(k: np.ndarray, f: GroupFunction) -> GroupFunction:
    return GroupFunction(f.group, k @ f.values)


# -- Hausdorff-Young on Lorentz spaces ----------------------------------------


def hausdorff_young_check(
    f: GroupFunction, p: ExponentLike, q: ExponentLike
) -> Tuple[float, float, float]:
    """||f^||_{L^{p',q}(G^)} vs ||f||_{L^{p,q}(G)} for p in (1, 2).

    The constant is not pinned by theory at this generality; returns
    (lhs, rhs, lhs/rhs) so harnesses can record it empirically.
    """
    p = parse_exponent(p)
    if is_inf(p) or not 1 < p < 2:
        raise ValueError(f"p must lie in (1, 2), got {p}")
    lhs = fourier(f).lorentz_norm(conjugate(p), q)
    rhs = f.lorentz_norm(p, q)
    ratio = lhs / rhs if rhs else (0.0 if lhs == 0 else math.inf)
    return lhs, rhs, ratio
