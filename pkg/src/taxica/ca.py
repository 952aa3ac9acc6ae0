"""Classical correspondence analysis.

CA decomposes the independence residuals of a contingency table under the
chi-square metric. The pipeline is: form the Pearson residual matrix
S = Dr^{-1/2} (P - r c') Dc^{-1/2}, eigendecompose the smaller of S'S or SS',
turn eigenvectors into principal coordinates, and carry the other side over
with the barycentric transition formulas. Row coordinates f and column
coordinates g satisfy, per axis with dispersion sigma:

    f' Dr 1 = g' Dc 1 = 0          (centering)
    f' Dr f = g' Dc g = sigma^2    (weighted L2 norms)

and distinct axes are Dr- / Dc-orthogonal.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NumericalError, ValidationError
from .table import CorrespondenceModel

__all__ = ["Axis", "Decomposition", "pearson_residuals", "symmetric_eigen", "ca_decompose"]

#: Axes whose dispersion falls below this fraction of the leading one are
#: treated as numerical zeros and discarded.
RANK_CUTOFF = 1e-12


@dataclass(frozen=True, eq=False)
class Axis:
    """One principal axis: coordinates, dispersion and normed axis vectors.

    For CA, u = g/sigma and v = f/sigma are the standard coordinates; for
    TCA, u and v are the +-1 sign vectors the axis was built from.
    """

    f: np.ndarray
    g: np.ndarray
    sigma: float
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self) -> None:
        for arr in (self.f, self.g, self.u, self.v):
            arr.setflags(write=False)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Axes of a CA or TCA decomposition of one correspondence model.

    Axes appear in extraction order: nonincreasing dispersion for CA, and
    deflation order for TCA (typically, but provably not always, monotone:
    the optimum over a deflated residual can exceed the previous axis).
    ``residuals`` (TCA only) stores the residual matrix each axis was
    extracted from; ``solutions`` (TCA only) stores per-axis solver metadata.
    ``is_full_rank`` tells whether every numerically nonzero axis is present,
    which is what the data reconstruction identity requires.
    """

    method: str  # "CA" or "TCA"
    axes: tuple[Axis, ...]
    rank_used: int
    model: CorrespondenceModel
    is_full_rank: bool = True
    residuals: Optional[tuple[np.ndarray, ...]] = None
    solutions: Optional[tuple] = None

    @property
    def sigmas(self) -> np.ndarray:
        return np.array([axis.sigma for axis in self.axes])

    def __repr__(self) -> str:
        return f"Decomposition({self.method}, rank={self.rank_used})"


def pearson_residuals(model: CorrespondenceModel) -> np.ndarray:
    """Matrix of Pearson residuals, S = Dr^{-1/2} (P - r c') Dc^{-1/2}."""
    return model.R0 / np.sqrt(np.outer(model.r, model.c))


def symmetric_eigen(A, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric PSD matrix, sorted descending.

    Cyclic Jacobi rotations, capped at 100 sweeps; raises
    :class:`NumericalError` if the off-diagonal mass has not vanished by then
    or if any eigenpair misses the residual contract ||A x - lam x|| <=
    tol * ||A||. Round-off eigenvalues in [-tol * ||A||, 0) are clamped to 0;
    anything more negative is rejected as not PSD. Returns ``(lam, V)`` with
    unit-norm eigenvectors in the columns of ``V``.

    Implemented with plain elementwise updates so results are bit-identical
    regardless of BLAS threading.
    """
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValidationError("matrix must be square")
    n = A.shape[0]
    if n == 0:
        return np.empty(0), np.empty((0, 0))
    if np.max(np.abs(A - A.T)) > 1e-12:
        raise ValidationError("matrix is not symmetric within 1e-12")

    a = 0.5 * (A + A.T)
    V = np.eye(n)
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return np.zeros(n), V

    converged = False
    for _ in range(100):
        off = np.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
        if off <= 1e-14 * norm:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-18 * norm:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) if theta != 0 else 1.0
                t = t / (abs(theta) + np.sqrt(1.0 + theta * theta))
                cth = 1.0 / np.sqrt(1.0 + t * t)
                sth = t * cth
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = cth * rp - sth * rq
                a[q, :] = sth * rp + cth * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = cth * cp - sth * cq
                a[:, q] = sth * cp + cth * cq
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = cth * vp - sth * vq
                V[:, q] = sth * vp + cth * vq
    if not converged:
        off = np.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
        if off > 1e-14 * norm:
            raise NumericalError("Jacobi eigensolver did not converge within 100 sweeps")

    lam = np.diag(a).copy()
    order = np.argsort(-lam, kind="stable")
    lam = lam[order]
    V = V[:, order]

    if lam[-1] < -tol * norm:
        raise NumericalError(f"matrix is not PSD: eigenvalue {lam[-1]:.3e}")
    residual = np.max(np.abs(A @ V - V * lam))
    if residual > tol * norm:
        raise NumericalError(
            f"eigenpair residual {residual:.3e} exceeds {tol:g} * ||A||"
        )
    return np.clip(lam, 0.0, None), V


def _orient(g: np.ndarray, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Make the largest-magnitude column coordinate positive (ties: lowest
    # index, via argmax); flipping one side flips both.
    if g[int(np.argmax(np.abs(g)))] < 0:
        return -g, -f
    return g, f


def ca_decompose(model: CorrespondenceModel, max_axes: Optional[int] = None) -> Decomposition:
    """Correspondence analysis of a model, strongest axes first.

    Eigendecomposes the smaller of S'S and SS' and recovers the other side's
    principal coordinates through the transition formulas (the barycentric
    relations between row and column scores). Axes with dispersion below
    ``RANK_CUTOFF`` times the leading dispersion are dropped, as are axes
    indistinguishable from rank-deficiency noise at working precision
    (eigenvalues below dim * eps relative to the leading one, whose
    eigenvectors would mix with the structural null space). ``max_axes``
    defaults to the maximal possible rank, min(I, J) - 1.
    """
    I, J = model.shape
    k_max = min(I, J) - 1
    if max_axes is None:
        k = k_max
    else:
        if not 1 <= max_axes <= k_max:
            raise ValidationError(
                f"max_axes={max_axes} out of range 1..{k_max} for a {I}x{J} table"
            )
        k = max_axes

    S = pearson_residuals(model)
    r, c, P = model.r, model.c, model.P

    if J <= I:
        lam, X = symmetric_eigen(S.T @ S)
        trivial = np.sqrt(c)
    else:
        lam, X = symmetric_eigen(S @ S.T)
        trivial = np.sqrt(r)
    sigma = np.sqrt(lam)
    # The weight direction is an exact null vector of S; residual null-space
    # contamination of near-zero axes gets amplified by 1/sigma^2 in the
    # transition identities, so project it out analytically.
    trivial = trivial / np.linalg.norm(trivial)
    X = X - np.outer(trivial, trivial @ X)
    norms = np.linalg.norm(X, axis=0)
    X = X / np.where(norms > 0, norms, 1.0)

    noise_floor = np.sqrt(max(I, J) * np.finfo(np.float64).eps)
    cutoff = max(RANK_CUTOFF, noise_floor)
    n_nonzero = 0
    for a in range(min(k_max, sigma.size)):
        if sigma.size == 0 or sigma[0] == 0.0 or sigma[a] < cutoff * sigma[0]:
            break
        n_nonzero += 1
    n_keep = min(k, n_nonzero)

    axes = []
    for a in range(n_keep):
        s_a = float(sigma[a])
        x = X[:, a]
        if J <= I:
            g = s_a * x / np.sqrt(c)
            f = (P @ g) / r / s_a
        else:
            f = s_a * x / np.sqrt(r)
            g = (P.T @ f) / c / s_a
        g, f = _orient(g, f)
        axes.append(Axis(f=f, g=g, sigma=s_a, u=g / s_a, v=f / s_a))

    return Decomposition(
        method="CA",
        axes=tuple(axes),
        rank_used=len(axes),
        model=model,
        is_full_rank=(n_keep == n_nonzero),
    )
