"""Extremality machinery: the F_K functional, shift classification, and the
numerical replay of the uniqueness argument for curvature-extremal contractions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels as kc
from .curvature import curvature_scalar
from .errors import NotAContraction
from .positivity import (WeightSequence, as_weights, contraction_check,
                         hyponormal_check)

FK_RTOL = 1e-9  # |fk| <= FK_RTOL * Ktilde(z, z)^2 counts as curvature equality
WEIGHT_TOL = 1e-8
DEFAULT_TRUNCATION = 150

CLASS_EXTREMAL_EVERYWHERE = "ExtremalEverywhere"
CLASS_EXTREMAL_AT_ZERO = "ExtremalAtZeroOnly"
CLASS_NOT_EXTREMAL = "NotExtremal"


@dataclass(frozen=True)
class ExtremalityReport:
    point: complex
    curvature: float
    extremal_bound: float
    fk_value: float
    classification: str
    equivalent_to_backward_shift: bool


@dataclass(frozen=True)
class StepResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class PipelineReport:
    steps: list
    failed_step: Optional[str]
    assumptions: list = field(default_factory=lambda: ["polynomial-density"])
    truncation: int = DEFAULT_TRUNCATION

    @property
    def passed(self) -> bool:
        return self.failed_step is None


def _require_contraction(kernel: kc.SeriesKernel) -> None:
    # coefficient test only: authoritative for diagonal kernels and cheap
    b = kc.tilde_kernel(kernel).coeffs
    scale = max(1.0, float(np.abs(b).max()))
    if not np.all(b >= -1e-10 * scale):
        raise NotAContraction("kernel coefficients must be non-decreasing")


def fk_value(kernel: kc.SeriesKernel, zeta: complex) -> float:
    """Ktilde(z, z)^2 * dd-bar log Ktilde at zeta; zero iff curvature equality.

    Equals the Gram determinant of (Ktilde_zeta, dbar Ktilde_zeta), hence
    non-negative for contractions.
    """
    _require_contraction(kernel)
    kt = kc.tilde_kernel(kernel)
    J = kc.jet(kt, zeta, 1).values
    return float(J[0, 0].real * J[1, 1].real - abs(J[0, 1]) ** 2)


def dependence_test(kernel: kc.SeriesKernel, zeta: complex, tol: float = FK_RTOL) -> bool:
    """Cauchy-Schwarz equality on the tilde jet: the two jet vectors are dependent."""
    _require_contraction(kernel)
    kt = kc.tilde_kernel(kernel)
    J = kc.jet(kt, zeta, 1).values
    minor = J[0, 0].real * J[1, 1].real - abs(J[0, 1]) ** 2
    return minor <= tol * max(J[0, 0].real * J[1, 1].real, J[0, 0].real ** 2)


def _fk_is_zero(kernel: kc.SeriesKernel, zeta: complex,
                rtol: float = FK_RTOL) -> tuple[float, bool]:
    kt = kc.tilde_kernel(kernel)
    J = kc.jet(kt, zeta, 1).values
    fk = float(J[0, 0].real * J[1, 1].real - abs(J[0, 1]) ** 2)
    return fk, abs(fk) <= rtol * max(J[0, 0].real ** 2, 1e-300)


def classify_shift(ws, zeta: complex, rtol: float = FK_RTOL) -> ExtremalityReport:
    """Trichotomy for contractive diagonal shifts at a point.

    Equality at zeta != 0 forces the backward shift; equality only at 0 is
    possible for non-hyponormal weights (the negative answer to the
    uniqueness question at the origin).
    """
    ws = as_weights(ws)
    kernel = ws.kernel()
    _require_contraction(kernel)
    fk, at_point = _fk_is_zero(kernel, zeta, rtol)
    weights_all_one = bool(np.all(np.abs(ws.weights - 1.0) <= WEIGHT_TOL))
    curv = curvature_scalar(kernel, zeta)
    bound = -(1.0 - abs(zeta) ** 2) ** -2
    if not at_point:
        classification = CLASS_NOT_EXTREMAL
        equivalent = False
    elif zeta != 0:
        # equality away from the origin propagates everywhere
        classification = CLASS_EXTREMAL_EVERYWHERE
        equivalent = weights_all_one
    else:
        # equality at 0 alone; hyponormality (or directly w_n = 1) upgrades it
        if weights_all_one or hyponormal_check(ws).passed:
            classification = CLASS_EXTREMAL_EVERYWHERE
            equivalent = True
        else:
            classification = CLASS_EXTREMAL_AT_ZERO
            equivalent = False
    return ExtremalityReport(point=complex(zeta), curvature=curv, extremal_bound=bound,
                             fk_value=fk, classification=classification,
                             equivalent_to_backward_shift=equivalent)


# ---------------------------------------------------------------------------
# series plumbing for the conjugated pipeline

def _series_inverse(u: np.ndarray) -> np.ndarray:
    """Power-series inverse v with (u * v) = 1 + O(z^len)."""
    v = np.zeros_like(u, dtype=complex)
    v[0] = 1.0 / u[0]
    for k in range(1, u.size):
        v[k] = -np.dot(u[1:k + 1], v[k - 1::-1]) / u[0]
    return v


def normalized_pullback_coeffs(kernel: kc.SeriesKernel, zeta: complex,
                               truncation: int = DEFAULT_TRUNCATION) -> np.ndarray:
    """Taylor coefficients C[i, j] of the kernel of phi_zeta(T), normalized at 0.

    L(z, w) = sum C[i, j] z^i conj(w)^j with L(z, 0) = 1; C is also the Gram
    matrix of the jet vectors V_j = dbar^j L(., 0) / j!.
    """
    size = truncation + 1
    a = kernel.coeffs
    if zeta == 0:
        C = np.zeros((size, size), dtype=complex)
        k = min(size, a.size)
        C[np.arange(k), np.arange(k)] = a[:k] / a[0]
        return C
    c = np.conjugate(zeta)
    # psi = inverse of the conjugated automorphism: psi(z) = (z + c) / (1 + zeta z)
    geom = np.power(-zeta, np.arange(size))
    psi = np.convolve([c, 1.0], geom)[:size]
    C = np.zeros((size, size), dtype=complex)
    p = np.zeros(size, dtype=complex)
    p[0] = 1.0  # psi^0
    for n in range(a.size):
        if n > 0:
            p = np.convolve(p, psi)[:size]
        C += a[n] * np.outer(p, p.conj())
    # normalize at 0: divide by f(z) = L(z, 0) on both slots, scale to 1 at 0
    u = C[:, 0].copy()
    v = _series_inverse(u)
    F = np.zeros((size, size), dtype=complex)
    for i in range(size):
        F[i, :i + 1] = v[i::-1]
    return u[0].real * (F @ C @ F.conj().T)


def _psd_min_eig(M: np.ndarray) -> float:
    H = (M + M.conj().T) / 2.0
    return float(np.linalg.eigvalsh(H).min())


def uniqueness_pipeline_check(ws, zeta: complex = 0.0,
                              truncation: int = DEFAULT_TRUNCATION) -> PipelineReport:
    """Replay the uniqueness argument step by step on a diagonal model.

    Conjugates the shift so the equality point moves to the origin, checks
    contractivity, the 2-hypercontraction inequality, curvature equality at
    0, the jet-vector norms, and the Gram-decrease chain that forces the
    monomials to be orthonormal.  Polynomial density is recorded as an
    assumption, never verified.
    """
    ws = as_weights(ws)
    kernel = ws.kernel()
    if zeta != 0:
        # coefficients of psi^n spread over indices >= n (1-|zeta|)/(1+|zeta|);
        # beyond that fraction of the window the truncated sum is unreliable
        edge = (1.0 - abs(zeta)) / (1.0 + abs(zeta))
        truncation = min(truncation, max(10, int(0.7 * kernel.n_max * edge)))
    steps: list[StepResult] = []

    def run(name: str, passed: bool, detail: str = "") -> bool:
        steps.append(StepResult(name=name, passed=passed, detail=detail))
        return passed

    ok = run("contraction", contraction_check(kernel).passed,
             "tilde coefficients non-negative")
    if ok:
        inv = 1.0 / ws.coeffs
        expr = inv[:-2] - 2.0 * inv[1:-1] + inv[2:]
        worst = float(expr.min()) if expr.size else 0.0
        ok = run("two-hypercontraction", worst >= -1e-10,
                 f"min of 1/a_n - 2/a_(n+1) + 1/a_(n+2) = {worst:.3e}")
    if ok:
        C = normalized_pullback_coeffs(kernel, zeta, truncation)
        curv0 = -(C[1, 1].real - abs(C[0, 1]) ** 2)
        ok = run("curvature-equality-at-zero", abs(curv0 + 1.0) <= 1e-8,
                 f"curvature at 0 after conjugation = {curv0:.12f}")
    if ok:
        ok = run("jet-vector-norms", abs(C[0, 0].real - 1.0) <= 1e-10
                 and abs(C[1, 1].real - 1.0) <= 1e-8,
                 f"|V0|^2 = {C[0, 0].real:.12f}, |V1|^2 = {C[1, 1].real:.12f}")
    if ok:
        cond = np.linalg.cond(C)
        if cond > 1e10:
            ok = run("monomial-gram", False,
                     f"coefficient matrix condition {cond:.2e} defeats inversion")
        else:
            G = np.linalg.inv(C)
            k = truncation - 1
            dec = _psd_min_eig(G[:k, :k] - G[1:k + 1, 1:k + 1])
            ok = run("gram-decrease-chain", dec >= -1e-9,
                     f"min eig of G_v - G_Av = {dec:.3e}")
            if ok:
                norms = np.abs(np.diag(G).real - 1.0).max()
                off = float(np.abs(G - np.diag(np.diag(G))).max())
                ok = run("monomial-orthonormality", norms <= 1e-8 and off <= 1e-8,
                         f"max |norm-1| = {norms:.3e}, max off-diagonal = {off:.3e}")
    failed = next((s.name for s in steps if not s.passed), None)
    return PipelineReport(steps=steps, failed_step=failed, truncation=truncation)
