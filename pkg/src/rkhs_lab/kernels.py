"""Diagonal reproducing kernels on the disc and annulus.

A series kernel is K(z, w) = sum_n a_n z^n conj(w)^n over a finite index
window.  Closed-form kernels carry callables for evaluation and for the
two-point mixed derivatives d^p/dz^p d^q/dwbar^q K(z, w), which is what the
tilde transform, normalization and Mobius pullback need.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Optional

import numpy as np

from .errors import (
    CenterOutsideDisc,
    KernelVanishesNearCenter,
    PointOutsideDomain,
    TruncationTailTooLarge,
    UnsupportedJetOrder,
)

DISC_DIAGONAL = "disc_diagonal"
ANNULUS_LAURENT = "annulus_laurent"

#: admissibility margin keeping geometric truncation tails below ~1e-12
BOUNDARY_MARGIN = 0.02
DEFAULT_N_MAX = 200
TAIL_RTOL = 1e-12


@dataclass(frozen=True)
class SeriesKernel:
    """Diagonal power/Laurent kernel with a finite truncation window.

    ``ns`` is the contiguous array of exponents, ``coeffs`` the matching
    coefficients.  ``signed`` marks series (such as tilde transforms) that
    are allowed to carry non-positive coefficients.
    """

    kind: str
    ns: np.ndarray
    coeffs: np.ndarray
    inner_radius: Optional[float] = None
    signed: bool = False

    def __post_init__(self):
        ns = np.asarray(self.ns, dtype=int)
        coeffs = np.asarray(self.coeffs, dtype=float)
        object.__setattr__(self, "ns", ns)
        object.__setattr__(self, "coeffs", coeffs)
        if ns.size == 0:
            raise ValueError("truncation window is empty")
        if ns.size != coeffs.size:
            raise ValueError("ns and coeffs length mismatch")
        if not np.all(np.diff(ns) == 1):
            raise ValueError("exponent window must be contiguous")
        if self.kind == DISC_DIAGONAL:
            if ns[0] != 0:
                raise ValueError("disc kernels start at n = 0")
        elif self.kind == ANNULUS_LAURENT:
            if self.inner_radius is None or not (0.0 < self.inner_radius < 1.0):
                raise ValueError("annulus kernel needs inner_radius in (0, 1)")
        else:
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if not self.signed and not np.all(coeffs > 0.0):
            raise ValueError("coefficients must be positive (use signed=True otherwise)")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")

    @property
    def n_min(self) -> int:
        return int(self.ns[0])

    @property
    def n_max(self) -> int:
        return int(self.ns[-1])

    @property
    def all_nonnegative(self) -> bool:
        return bool(np.all(self.coeffs >= 0.0))

    @classmethod
    def disc(cls, coeffs) -> "SeriesKernel":
        coeffs = np.asarray(coeffs, dtype=float)
        return cls(DISC_DIAGONAL, np.arange(coeffs.size), coeffs)

    @classmethod
    def disc_rule(cls, rule: Callable[[np.ndarray], np.ndarray], n_max: int = DEFAULT_N_MAX) -> "SeriesKernel":
        ns = np.arange(n_max + 1)
        return cls(DISC_DIAGONAL, ns, np.asarray(rule(ns), dtype=float))

    @classmethod
    def geometric(cls, n_max: int = DEFAULT_N_MAX) -> "SeriesKernel":
        """Szego-type kernel a_n = 1 (unnormalized 1/(1 - z wbar))."""
        return cls.disc(np.ones(n_max + 1))

    @classmethod
    def bergman(cls, n_max: int = DEFAULT_N_MAX) -> "SeriesKernel":
        """Bergman-type kernel a_n = n + 1 (unnormalized (1 - z wbar)^-2)."""
        return cls.disc(np.arange(1.0, n_max + 2.0))

    @classmethod
    def annulus(cls, ns, coeffs, inner_radius: float, signed: bool = False) -> "SeriesKernel":
        return cls(ANNULUS_LAURENT, np.asarray(ns, dtype=int), np.asarray(coeffs, dtype=float),
                   inner_radius=inner_radius, signed=signed)


@dataclass(frozen=True)
class ClosedFormKernel:
    """Kernel given by callables.

    ``deriv_evaluator(z, w, p, q)`` returns d^p_z d^q_wbar K(z, w) for
    p, q <= 2; kernels built by :func:`normalize_at` and
    :func:`mobius_pullback` always carry it.  Higher jet orders are refused
    rather than silently finite-differenced.
    """

    evaluator: Callable[[complex, complex], complex]
    deriv_evaluator: Optional[Callable[[complex, complex, int, int], complex]] = None
    jet_evaluator: Optional[Callable[[complex, int, int], complex]] = None
    domain: str = "disc"
    inner_radius: Optional[float] = None


@dataclass(frozen=True)
class KernelJet:
    """Mixed derivatives J[p, q] = d^p d^qbar K(w, w), 0 <= p, q <= order."""

    center: complex
    order: int
    values: np.ndarray


# ---------------------------------------------------------------------------
# admissibility and series internals

def check_point(kernel, z: complex) -> None:
    r = abs(z)
    if isinstance(kernel, SeriesKernel):
        domain = "annulus" if kernel.kind == ANNULUS_LAURENT else "disc"
        inner = kernel.inner_radius
    else:
        domain = kernel.domain
        inner = kernel.inner_radius
    if not np.isfinite(r):
        raise PointOutsideDomain(f"point {z} is not finite")
    if r > 1.0 - BOUNDARY_MARGIN:
        raise PointOutsideDomain(f"|z| = {r:.4f} too close to the unit circle")
    if domain == "annulus" and r < inner + BOUNDARY_MARGIN:
        raise PointOutsideDomain(f"|z| = {r:.4f} too close to inner circle r = {inner}")


def _falling(n: np.ndarray, k: int) -> np.ndarray:
    out = np.ones_like(n, dtype=float)
    for i in range(k):
        out = out * (n - i)
    return out


def _powers(x: complex, exps: np.ndarray) -> np.ndarray:
    if x == 0:
        return (exps == 0).astype(complex)
    return np.power(complex(x), exps)


def _series_deriv2(kernel: SeriesKernel, z: complex, w: complex, p: int, q: int) -> complex:
    coef = kernel.coeffs * _falling(kernel.ns, p) * _falling(kernel.ns, q)
    mask = coef != 0.0
    if not np.any(mask):
        return 0j
    nn = kernel.ns[mask]
    zp = _powers(z, nn - p)
    wq = _powers(np.conjugate(w), nn - q)
    return complex(np.sum(coef[mask] * zp * wq))


def _sustained_growth(a: np.ndarray, window: int = 20) -> tuple[float, float]:
    """Growth rate and geometric-envelope value at the end of the trailing window.

    Robust to single-coefficient dips and zeros (common in signed tilde
    series): the envelope max_i a_i growth^(end-i) replaces the literal last
    term, so a_end+k <= envelope * growth^k for the window-consistent rate.
    """
    w = min(window, a.size)
    tail = a[-w:]
    if float(tail.max()) == 0.0:
        return 0.0, 0.0
    nz = np.nonzero(tail)[0]
    if nz.size < 2 or nz[-1] == nz[0]:
        growth = 1.0
    else:
        lag = int(nz[-1] - nz[0])
        growth = float((tail[nz[-1]] / tail[nz[0]]) ** (1.0 / lag))
    idx = np.arange(tail.size)
    with np.errstate(over="ignore"):
        envelope = float(np.max(tail * growth ** (tail.size - 1 - idx)))
    return growth, envelope


def _series_tail_bound(kernel: SeriesKernel, z: complex, w: complex) -> float:
    """Geometric bound on the dropped tail of the coefficient series."""
    rho = abs(z * np.conjugate(w))
    a = np.abs(kernel.coeffs)
    bound = 0.0
    # outer end of the window
    if rho > 0 or kernel.n_max == 0:
        growth, env = _sustained_growth(a[::1])
        t_last = env * rho ** kernel.n_max
        if t_last > 0.0:
            ratio = rho * growth
            bound += t_last * ratio / (1.0 - ratio) if ratio < 1.0 else np.inf
    # inner end, only relevant for Laurent windows
    if kernel.n_min < 0 and rho > 0:
        growth, env = _sustained_growth(a[::-1])
        t_first = env * rho ** kernel.n_min
        if t_first > 0.0:
            ratio = growth / rho
            bound += t_first * ratio / (1.0 - ratio) if ratio < 1.0 else np.inf
    return bound


# ---------------------------------------------------------------------------
# public operations

def eval_kernel(kernel, z: complex, w: complex) -> complex:
    """Evaluate K(z, w); Hermitian in (z, w) by construction."""
    check_point(kernel, z)
    check_point(kernel, w)
    if isinstance(kernel, SeriesKernel):
        val = _series_deriv2(kernel, z, w, 0, 0)
        tail = _series_tail_bound(kernel, z, w)
        if tail > TAIL_RTOL * max(abs(val), 1e-300):
            raise TruncationTailTooLarge(
                f"tail bound {tail:.3e} exceeds {TAIL_RTOL:.0e} * |K| at z={z}, w={w}")
        return val
    return complex(kernel.evaluator(z, w))


def deriv2(kernel, z: complex, w: complex, p: int, q: int) -> complex:
    """Two-point mixed derivative d^p_z d^q_wbar K(z, w)."""
    if isinstance(kernel, SeriesKernel):
        return _series_deriv2(kernel, z, w, p, q)
    if p == 0 and q == 0:
        return complex(kernel.evaluator(z, w))
    if kernel.deriv_evaluator is None:
        raise UnsupportedJetOrder("closed-form kernel has no two-point derivative evaluator")
    if p > 2 or q > 2:
        raise UnsupportedJetOrder(f"closed-form kernels support p, q <= 2, got ({p}, {q})")
    return complex(kernel.deriv_evaluator(z, w, p, q))


def mixed_deriv(kernel, w: complex, p: int, q: int) -> complex:
    """Diagonal mixed derivative d^p d^qbar K(w, w)."""
    if isinstance(kernel, SeriesKernel):
        return _series_deriv2(kernel, w, w, p, q)
    if p == 0 and q == 0:
        return complex(kernel.evaluator(w, w))
    if p > 2 or q > 2:
        raise UnsupportedJetOrder(f"closed-form kernels support p, q <= 2, got ({p}, {q})")
    if kernel.jet_evaluator is not None:
        return complex(kernel.jet_evaluator(w, p, q))
    if kernel.deriv_evaluator is not None:
        return complex(kernel.deriv_evaluator(w, w, p, q))
    raise UnsupportedJetOrder("closed-form kernel has no jet evaluator")


def jet(kernel, w: complex, order: int) -> KernelJet:
    """Matrix of diagonal mixed derivatives up to the given order."""
    if order < 1:
        raise ValueError("jet order must be >= 1")
    J = np.empty((order + 1, order + 1), dtype=complex)
    for p in range(order + 1):
        for q in range(p, order + 1):
            J[p, q] = mixed_deriv(kernel, w, p, q)
            J[q, p] = np.conjugate(J[p, q])
    return KernelJet(center=complex(w), order=order, values=J)


def tilde_kernel(kernel: SeriesKernel) -> SeriesKernel:
    """Coefficients of (1 - z wbar) K(z, w): b_0 = a_0, b_n = a_n - a_{n-1}.

    The result may have non-positive coefficients; it is returned as a
    signed series and ``all_nonnegative`` acts as the contractivity flag.
    """
    if kernel.kind != DISC_DIAGONAL:
        raise ValueError("tilde transform is defined for disc diagonal kernels")
    a = kernel.coeffs
    b = np.empty_like(a)
    b[0] = a[0]
    b[1:] = a[1:] - a[:-1]
    return SeriesKernel(DISC_DIAGONAL, kernel.ns.copy(), b, signed=True)


def normalize_at(kernel, zeta: complex) -> ClosedFormKernel:
    """Kernel normalized at zeta: L(z, zeta) = 1 near zeta, L(zeta, zeta) = 1."""
    check_point(kernel, zeta)
    # the kernel must not vanish near the center; sample two small circles
    for radius in (0.05, 0.1):
        for k in range(10):
            pt = zeta + radius * np.exp(2j * np.pi * k / 10)
            if abs(eval_kernel(kernel, pt, zeta)) < 1e-13:
                raise KernelVanishesNearCenter(
                    f"K(z, {zeta}) vanishes at z = {pt}")
    c = eval_kernel(kernel, zeta, zeta)

    def f_derivs(z: complex):
        # derivatives of f(z) = 1 / K(z, zeta) up to order 2
        u0 = deriv2(kernel, z, zeta, 0, 0)
        u1 = deriv2(kernel, z, zeta, 1, 0)
        u2 = deriv2(kernel, z, zeta, 2, 0)
        return (1.0 / u0, -u1 / u0 ** 2, (2.0 * u1 ** 2 - u0 * u2) / u0 ** 3)

    def evaluator(z: complex, w: complex) -> complex:
        kz = deriv2(kernel, z, zeta, 0, 0)
        kw = deriv2(kernel, w, zeta, 0, 0)
        return c * deriv2(kernel, z, w, 0, 0) / (kz * np.conjugate(kw))

    def deriv_evaluator(z: complex, w: complex, p: int, q: int) -> complex:
        if p > 2 or q > 2:
            raise UnsupportedJetOrder(f"normalized kernel supports p, q <= 2, got ({p}, {q})")
        fz = f_derivs(z)
        fw = f_derivs(w)
        total = 0j
        for i in range(p + 1):
            for j in range(q + 1):
                total += (comb(p, i) * comb(q, j) * fz[p - i]
                          * deriv2(kernel, z, w, i, j) * np.conjugate(fw[q - j]))
        return c * total

    domain = kernel.domain if isinstance(kernel, ClosedFormKernel) else (
        "annulus" if kernel.kind == ANNULUS_LAURENT else "disc")
    inner = kernel.inner_radius
    return ClosedFormKernel(evaluator=evaluator, deriv_evaluator=deriv_evaluator,
                            domain=domain, inner_radius=inner)


def mobius_pullback(kernel, a: complex) -> ClosedFormKernel:
    """Kernel L(z, w) = K(phi_a^-1(z), phi_a^-1(w)), phi_a(z) = (z-a)/(1-abar z)."""
    if abs(a) >= 1.0:
        raise CenterOutsideDisc(f"|a| = {abs(a):.4f} >= 1")
    if isinstance(kernel, SeriesKernel):
        if kernel.kind != DISC_DIAGONAL:
            raise ValueError("Mobius pullback is defined for disc kernels")
    elif kernel.domain != "disc":
        raise ValueError("Mobius pullback is defined for disc kernels")
    ab = np.conjugate(a)
    s = 1.0 - abs(a) ** 2

    def psi(z):
        return (z + a) / (1.0 + ab * z)

    def psi1(z):
        return s / (1.0 + ab * z) ** 2

    def psi2(z):
        return -2.0 * ab * s / (1.0 + ab * z) ** 3

    def evaluator(z: complex, w: complex) -> complex:
        return deriv2(kernel, psi(z), psi(w), 0, 0)

    def deriv_evaluator(z: complex, w: complex, p: int, q: int) -> complex:
        if p > 2 or q > 2:
            raise UnsupportedJetOrder(f"pullback kernel supports p, q <= 2, got ({p}, {q})")
        # chain rule: holomorphic factor in z, antiholomorphic in w
        hol = {0: [(1.0 + 0j, 0)],
               1: [(psi1(z), 1)],
               2: [(psi2(z), 1), (psi1(z) ** 2, 2)]}[p]
        anti = {0: [(1.0 + 0j, 0)],
                1: [(np.conjugate(psi1(w)), 1)],
                2: [(np.conjugate(psi2(w)), 1), (np.conjugate(psi1(w)) ** 2, 2)]}[q]
        zz, ww = psi(z), psi(w)
        total = 0j
        for cz, i in hol:
            for cw, j in anti:
                total += cz * cw * deriv2(kernel, zz, ww, i, j)
        return total

    return ClosedFormKernel(evaluator=evaluator, deriv_evaluator=deriv_evaluator,
                            domain="disc")


def mobius_map(a: complex, z: complex) -> complex:
    """phi_a(z) = (z - a) / (1 - abar z)."""
    return (z - a) / (1.0 - np.conjugate(a) * z)


def mobius_deriv(a: complex, z: complex) -> complex:
    """phi_a'(z) = (1 - |a|^2) / (1 - abar z)^2."""
    return (1.0 - abs(a) ** 2) / (1.0 - np.conjugate(a) * z) ** 2
