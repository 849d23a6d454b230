"""Matrix-exponential group side: local group law, kernels, Cauchy bounds.

Floating point (binary64) lives on this side of the package; the algebra
side stays exact and the two meet in the matrix-coefficient functionals.
``matrix_exp`` wraps the scaling-and-squaring implementation in SciPy, which
carries a backward error bound well below 1e-13 for the shipped sizes
(<= 16).  The checks here quantify how well ``exp(R(x)) exp(R(y))`` matches
``exp(R(x*y))`` for the truncated BCH product, that matrix-coefficient
kernels ``(g, h) -> phi(g h^-1)`` are positive semidefinite, the factorial
derivative bounds of analytic kernels, and the reconstruction of matrix
coefficients from a truncated GNS model.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
import scipy.linalg

from .errors import RepresentationError
from .gns import functional_from_rep, gns_build
from .lie_structure import GVector, bch_in_g
from .scalars import Scalar

__all__ = [
    "matrix_exp",
    "GroupSample",
    "sample_group",
    "matrix_coefficient",
    "KernelReport",
    "pd_kernel_check",
    "CauchyReport",
    "cauchy_estimate_check",
    "HomOrderReport",
    "local_hom_check",
    "ExtensionReport",
    "extension_demo",
    "extension_demo_table",
]

_UNITARY_TOL = 1e-10
_NOISE_FLOOR = 1e-12


def matrix_exp(A):
    """Matrix exponential via scaling and squaring; rejects non-finite input."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matrix_exp needs a square matrix")
    if not np.all(np.isfinite(A.view(float))):
        raise ValueError("matrix_exp needs finite entries")
    return scipy.linalg.expm(A)


def unitarity_residual(U):
    return float(np.linalg.norm(U.conj().T @ U - np.eye(U.shape[0])))


@dataclass
class GroupSample:
    """Group elements ``exp(R(x_1)) .. exp(R(x_k))`` tagged with their words."""

    rep: object
    elements: List[np.ndarray]
    words: List[Tuple[GVector, ...]]

    def __len__(self):
        return len(self.elements)


def _quantized_vector(spec, rng, max_norm):
    """Random rational vector with seminorm <= max_norm (exact coefficients)."""
    coeffs = [Fraction(int(rng.integers(-4096, 4097)), 4096) for _ in range(spec.dim)]
    x = GVector(spec, [Scalar(c) for c in coeffs])
    p = x.seminorm()
    bound = Fraction(max_norm)
    if p > bound:
        x = x.scale(Scalar(bound / p))
    return x


def sample_group(rep, count, seed=0, max_factors=3, max_norm=1):
    """Sample ``count`` elements as products of <= max_factors exponentials.

    Generating vectors are quantized rationals with seminorm <= max_norm, so
    runs are reproducible bit-for-bit for a fixed seed.  For skew-hermitian
    representations every element is checked to be unitary to 1e-10.
    """
    rng = np.random.default_rng(seed)
    elements, words = [], []
    for _ in range(count):
        k = int(rng.integers(1, max_factors + 1))
        xs = tuple(_quantized_vector(rep.spec, rng, max_norm) for _ in range(k))
        g = np.eye(rep.dim_V, dtype=complex)
        for x in xs:
            g = g @ matrix_exp(rep.matrix_of(x))
        if rep.skew_hermitian:
            resid = unitarity_residual(g)
            if resid > _UNITARY_TOL:
                raise RepresentationError(
                    f"sampled element not unitary: residual {resid:.3e}"
                )
        elements.append(g)
        words.append(xs)
    return GroupSample(rep, elements, words)


def matrix_coefficient(sample):
    """Values ``phi(g) = <g v, v>`` for each sampled element."""
    v = sample.rep.cyclic_array()
    return [complex(np.vdot(v, g @ v)) for g in sample.elements]


@dataclass(frozen=True)
class KernelReport:
    ok: bool
    size: int
    min_eigenvalue: float
    tol: float

    def __str__(self):
        status = "PASS" if self.ok else "FAIL"
        return (
            f"pd kernel ({self.size} elements): {status}, "
            f"min eigenvalue {self.min_eigenvalue:.3e} >= -{self.tol:.1e}"
        )


def pd_kernel_check(sample, tol=_UNITARY_TOL):
    """Check that ``K_ij = phi(g_i g_j^-1)`` is PSD on the sample.

    Since ``K_ij = <g_j^-1 v, g_i^-1 v>`` for unitary elements, the kernel
    is a Gram matrix and PASS is mathematically guaranteed; a FAIL flags a
    numerical or implementation error.  Rejects non-unitary samples.
    """
    for g in sample.elements:
        if unitarity_residual(g) > _UNITARY_TOL:
            raise RepresentationError("pd_kernel_check needs a unitary sample")
    v = sample.rep.cyclic_array()
    n = len(sample.elements)
    K = np.zeros((n, n), dtype=complex)
    for j, gj in enumerate(sample.elements):
        for i, gi in enumerate(sample.elements):
            K[i, j] = np.vdot(v, gi @ gj.conj().T @ v)
    vals = np.linalg.eigvalsh((K + K.conj().T) / 2)
    min_eig = float(vals[0])
    return KernelReport(min_eig >= -tol, n, min_eig, tol)


@dataclass(frozen=True)
class CauchyReport:
    """Factorial derivative bounds ``||R(x)^n v|| <= sqrt(C) n! r^-n``."""

    ok: bool
    C: float
    r: float
    rows: Tuple[Tuple[int, float, float], ...]  # (n, lhs, bound)

    def __str__(self):
        status = "PASS" if self.ok else "FAIL"
        return f"cauchy bounds (r={self.r}, C={self.C:.6g}): {status}"


def cauchy_estimate_check(rep, x, r=1.0, n_max=12, grid=8, safety=1.05):
    """Verify the derivative bounds of the analytic kernel along ``exp(tR(x))v``.

    ``C`` is the max of ``|<exp(z1 R) v, exp(conj(z2) R) v>|`` over a
    ``grid x grid`` set of boundary points ``|z1| = |z2| = r`` times a 1.05
    safety factor.  A larger C only weakens the bound, so the finite grid
    keeps the check conservative.  Requires a skew-hermitian representation.
    """
    if not rep.skew_hermitian:
        raise RepresentationError("cauchy_estimate_check needs a skew-hermitian rep")
    rep.validate()
    R = rep.matrix_of(x)
    v = rep.cyclic_array()
    r = float(r)
    C = 0.0
    for a in range(grid):
        z1 = r * np.exp(2j * np.pi * a / grid)
        e1v = matrix_exp(z1 * R) @ v
        for b in range(grid):
            z2 = r * np.exp(2j * np.pi * b / grid)
            e2v = matrix_exp(np.conj(z2) * R) @ v
            C = max(C, abs(complex(np.vdot(e2v, e1v))))
    C *= safety
    rows = []
    ok = True
    w = v.copy()
    fact = 1.0
    for n in range(n_max + 1):
        if n:
            w = R @ w
            fact *= n
        lhs = float(np.linalg.norm(w))
        bound = np.sqrt(C) * fact * r ** (-n)
        rows.append((n, lhs, float(bound)))
        if lhs > bound:
            ok = False
    return CauchyReport(ok, C, r, tuple(rows))


@dataclass(frozen=True)
class HomOrderReport:
    """Convergence-order fit for the truncated local group law."""

    ok: bool
    degree: int
    scales: Tuple[float, ...]
    residuals: Tuple[float, ...]
    slope: Optional[float]
    exact: bool

    def __str__(self):
        status = "PASS" if self.ok else "FAIL"
        if self.exact:
            return f"local group law (N={self.degree}): {status} (exact)"
        return f"local group law (N={self.degree}): {status}, slope {self.slope:.3f}"


def local_hom_check(rep, x, y, N, scales, min_slope=None, noise_floor=_NOISE_FLOOR):
    """Fit the order of ``exp(R(rx)) exp(R(ry)) - exp(R((rx) * (ry)))``.

    Scales must be exact rationals so the truncated BCH product is computed
    exactly before the single float conversion.  PASS iff the fitted log-log
    slope reaches ``N + 0.5`` (the defect should be order ``N + 1``) or all
    residuals sit below the noise floor, which happens exactly when the
    truncation is exact (nilpotent algebras of class <= N).
    """
    rep.validate()
    min_slope = (N + 0.5) if min_slope is None else min_slope
    residuals = []
    for s in scales:
        s = Fraction(s)
        xs = x.scale(Scalar(s))
        ys = y.scale(Scalar(s))
        lhs = matrix_exp(rep.matrix_of(xs)) @ matrix_exp(rep.matrix_of(ys))
        rhs = matrix_exp(rep.matrix_of(bch_in_g(xs, ys, N)))
        residuals.append(float(np.linalg.norm(lhs - rhs)))
    if max(residuals) <= noise_floor:
        return HomOrderReport(True, N, tuple(float(Fraction(s)) for s in scales),
                              tuple(residuals), None, True)
    pairs = [
        (float(np.log(float(Fraction(s)))), float(np.log(e)))
        for s, e in zip(scales, residuals)
        if e > 0
    ]
    if len(pairs) < 2:
        return HomOrderReport(False, N, tuple(float(Fraction(s)) for s in scales),
                              tuple(residuals), None, False)
    xs_log = np.array([p[0] for p in pairs])
    ys_log = np.array([p[1] for p in pairs])
    slope = float(np.polyfit(xs_log, ys_log, 1)[0])
    return HomOrderReport(slope >= min_slope, N,
                          tuple(float(Fraction(s)) for s in scales),
                          tuple(residuals), slope, False)


@dataclass(frozen=True)
class ExtensionReport:
    """Reconstruction error of matrix coefficients from truncated GNS models.

    ``deviations[d]`` is the max over probes of ``|phi_tilde - phi|`` where
    ``phi_tilde(exp x) = <exp(A_d(x)) [1], [1]>`` uses the projected GNS
    operator at degree d.  The error must not increase as d grows.
    """

    degrees: Tuple[int, ...]
    deviations: Tuple[float, ...]
    ranks: Tuple[int, ...]

    @property
    def non_increasing(self):
        return all(
            b <= a for a, b in zip(self.deviations, self.deviations[1:])
        )

    @property
    def final_deviation(self):
        return self.deviations[-1]

    def __str__(self):
        pairs = ", ".join(
            f"d={d}: {e:.3e}" for d, e in zip(self.degrees, self.deviations)
        )
        trend = "non-increasing" if self.non_increasing else "INCREASING"
        return f"extension demo [{pairs}] ({trend})"


def _gns_coefficient(model, x):
    A = model.operator(x, pad=True)
    return complex(model.vacuum.conj() @ (matrix_exp(A) @ model.vacuum))


def extension_demo(rep, degrees, probes):
    """Reconstruct ``phi(exp x) = <exp(R(x)) v, v>`` from truncated GNS models.

    For each degree d the functional table of the representation at degree
    2d is the local germ; its GNS model exponentiates the projected
    generator matrices.  The max deviation over the probes must not grow
    with d.
    """
    rep.validate()
    if not rep.skew_hermitian:
        raise RepresentationError("extension_demo needs a skew-hermitian rep")
    v = rep.cyclic_array()
    truth = [
        complex(np.vdot(v, matrix_exp(rep.matrix_of(x)) @ v)) for x in probes
    ]
    degrees = tuple(degrees)
    deviations = []
    ranks = []
    for d in degrees:
        lam = functional_from_rep(rep, 2 * d)
        model = gns_build(lam, d)
        worst = 0.0
        for x, phi in zip(probes, truth):
            approx = _gns_coefficient(model, x)
            worst = max(worst, abs(approx - phi))
        deviations.append(worst)
        ranks.append(model.quotient_rank)
    return ExtensionReport(degrees, tuple(deviations), tuple(ranks))


def extension_demo_table(lam, degrees, times, truth_fn):
    """One-dimensional variant driven by an exact moment table.

    For g = R there is no finite matrix model; the functional table itself
    is the germ and ``truth_fn`` supplies the closed-form function being
    reconstructed, e.g. ``exp(-t^2/2)`` for the Gaussian moments.
    """
    if lam.spec.dim != 1:
        raise ValueError("table-driven demo is for one-dimensional g")
    degrees = tuple(degrees)
    deviations = []
    ranks = []
    for d in degrees:
        if 2 * d > lam.max_degree:
            raise ValueError(
                f"functional degree {lam.max_degree} too small for degree {d}"
            )
        model = gns_build(lam, d)
        worst = 0.0
        for t in times:
            x = GVector(lam.spec, [Scalar(Fraction(t))])
            approx = _gns_coefficient(model, x)
            worst = max(worst, abs(approx - truth_fn(float(Fraction(t)))))
        deviations.append(worst)
        ranks.append(model.quotient_rank)
    return ExtensionReport(degrees, tuple(deviations), tuple(ranks))
