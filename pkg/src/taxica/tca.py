"""Taxicab correspondence analysis: L1 principal axes of the residual matrix.

Each taxicab axis is a +-1 sign vector u maximizing ||R u||_1 over the
residual correspondence matrix R. That objective equals max_{u,v} v' R u over
sign vectors on both sides, and also four times the cut norm of R (the
largest absolute submatrix sum), which is what makes the dispersion split
into four equal quadrant sums. Finding the maximizer is a Grothendieck-type
combinatorial problem: small sides are enumerated exactly, large ones use a
multi-start alternating ascent.

Per axis with dispersion sigma, the principal coordinates satisfy the
weighted L1 norms sum_i r_i |f_i| = sum_j c_j |g_j| = sigma, and their
positive and negative halves each carry exactly sigma/2 (equivariability).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .ca import RANK_CUTOFF, Axis, Decomposition
from .errors import ValidationError
from .table import CorrespondenceModel

__all__ = [
    "TcaAxisSolution",
    "tca_axis_exact",
    "tca_axis_iterative",
    "tca_decompose",
    "cut_norm_bruteforce",
    "diagonal_sigma1",
]

#: Largest min(I, J) for which an axis is solved by exact enumeration.
EXACT_THRESHOLD = 20

#: Dimension cap for the cut-norm oracle (2^min(I,J) subset sums).
CUT_NORM_MAX_DIM = 15

#: Length cap for the diagonal subset-sum enumeration.
DIAGONAL_MAX_LEN = 25

_ENUM_CHUNK = 1 << 14


def sign_vector(x: np.ndarray) -> np.ndarray:
    """Componentwise sign with the deterministic tie rule sign(0) = +1."""
    return np.where(np.asarray(x) < 0, -1.0, 1.0)


@dataclass(frozen=True, eq=False)
class TcaAxisSolution:
    """One solved taxicab axis.

    ``objective`` is ||R u||_1, the axis dispersion. ``v`` is sign(R u) with
    zeros mapped to +1. ``starts_tried`` counts enumerated candidates for the
    exact solver and restarts for the iterative one.
    """

    u: np.ndarray
    v: np.ndarray
    objective: float
    solver: str  # "exact" or "iterative"
    starts_tried: int
    converged: bool

    def __post_init__(self) -> None:
        self.u.setflags(write=False)
        self.v.setflags(write=False)


def _sign_chunk(start: int, stop: int, dim: int) -> np.ndarray:
    """Columns start..stop-1 of the half-sphere sign matrix, lex order.

    Candidate m encodes components 2..dim: bit (dim-1-j) of m gives component
    j, 0 meaning +1, so ascending m is ascending lexicographic order with
    +1 < -1 and the first component pinned to +1.
    """
    ms = np.arange(start, stop, dtype=np.int64)
    signs = np.empty((dim, ms.size))
    signs[0, :] = 1.0
    for j in range(1, dim):
        signs[j, :] = 1.0 - 2.0 * ((ms >> (dim - 1 - j)) & 1)
    return signs


def _enumerate_best(R: np.ndarray) -> tuple[float, np.ndarray, int]:
    """Maximize ||R w||_1 over sign vectors w with w[0] = +1.

    Returns (objective, w, candidates). The first strict maximum in lex order
    wins ties, so the result is the lexicographically smallest maximizer
    under +1 < -1.
    """
    dim = R.shape[1]
    total = 1 << (dim - 1) if dim > 1 else 1
    best_obj = -np.inf
    best_w = None
    for start in range(0, total, _ENUM_CHUNK):
        stop = min(start + _ENUM_CHUNK, total)
        signs = _sign_chunk(start, stop, dim)
        objs = np.abs(R @ signs).sum(axis=0)
        i = int(np.argmax(objs))
        if objs[i] > best_obj:
            best_obj = float(objs[i])
            best_w = signs[:, i].copy()
    return best_obj, best_w, total


def tca_axis_exact(R, exact_threshold: int = EXACT_THRESHOLD) -> TcaAxisSolution:
    """Exact taxicab axis of R by enumerating signs on the smaller dimension.

    The objective is symmetric under global sign flips, so only the
    half-sphere with first component +1 is enumerated; ties resolve to the
    lexicographically smallest sign vector (+1 before -1). Enumerating the
    row side instead of the column side is sound because
    max_u ||R u||_1 = max_{u,v} v' R u = max_v ||R' v||_1.
    """
    R = np.asarray(R, dtype=np.float64)
    I, J = R.shape
    if min(I, J) > exact_threshold:
        raise ValidationError(
            f"min(I, J) = {min(I, J)} exceeds the exact enumeration threshold "
            f"{exact_threshold}; use tca_axis_iterative"
        )
    if J <= I:
        _, u, tried = _enumerate_best(R)
    else:
        _, v_enum, tried = _enumerate_best(R.T)
        u = sign_vector(R.T @ v_enum)
    v = sign_vector(R @ u)
    objective = float(np.abs(R @ u).sum())
    return TcaAxisSolution(
        u=u, v=v, objective=objective, solver="exact", starts_tried=tried, converged=True
    )


def _lex_key(u: np.ndarray) -> tuple[int, ...]:
    return tuple(0 if s > 0 else 1 for s in u)


def tca_axis_iterative(R) -> TcaAxisSolution:
    """Heuristic taxicab axis by alternating sign ascent from every column.

    Each start j seeds v = sign(R e_j) and alternates u = sign(R' v),
    v = sign(R u); the objective never decreases and the state space is
    finite, so every start stops once a sign pair repeats. The best fixed
    point over all J starts is returned, ties going to the lexicographically
    smallest u. The result is a lower bound for the exact objective.
    """
    R = np.asarray(R, dtype=np.float64)
    I, J = R.shape
    best: tuple[float, tuple[int, ...], np.ndarray] | None = None
    for j in range(J):
        v = sign_vector(R[:, j])
        seen: set[bytes] = set()
        while True:
            u = sign_vector(R.T @ v)
            v = sign_vector(R @ u)
            state = u.tobytes() + v.tobytes()
            if state in seen:
                break
            seen.add(state)
        objective = float(np.abs(R @ u).sum())
        key = (-objective, _lex_key(u))
        if best is None or key < (-best[0], best[1]):
            best = (objective, _lex_key(u), u)
    objective, _, u = best
    v = sign_vector(R @ u)
    return TcaAxisSolution(
        u=u, v=v, objective=objective, solver="iterative", starts_tried=J, converged=True
    )


def tca_decompose(
    model: CorrespondenceModel,
    max_axes: Optional[int] = None,
    exact_threshold: int = EXACT_THRESHOLD,
) -> Decomposition:
    """Taxicab correspondence analysis by residual deflation.

    Per axis alpha, solve for the sign vector u on the current residual R,
    set f = Dr^{-1} R u, v = sign(f), g = Dc^{-1} R' v and
    sigma = sum_i r_i |f_i|, then deflate R by the rank-one term
    Dr f g' Dc / sigma. The axis solver is exact while min(I, J) is at most
    ``exact_threshold`` and the multi-start ascent beyond. Deflation stops
    early once sigma falls below ``RANK_CUTOFF`` times the first dispersion.
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

    r, c = model.r, model.c
    exact = min(I, J) <= exact_threshold
    R = model.R0.copy()

    axes: list[Axis] = []
    residuals: list[np.ndarray] = []
    solutions: list[TcaAxisSolution] = []
    sigma_1 = None
    exhausted = False
    for _ in range(k):
        sol = tca_axis_exact(R, exact_threshold) if exact else tca_axis_iterative(R)
        sigma = sol.objective
        if sigma_1 is None:
            sigma_1 = sigma
        if sigma_1 == 0.0 or sigma < RANK_CUTOFF * sigma_1:
            exhausted = True
            break
        f = (R @ sol.u) / r
        g = (R.T @ sol.v) / c
        axes.append(Axis(f=f, g=g, sigma=sigma, u=sol.u, v=sol.v))
        residuals.append(R)
        solutions.append(sol)
        R = R - np.outer(r * f, c * g) / sigma

    for mat in residuals:
        mat.setflags(write=False)
    return Decomposition(
        method="TCA",
        axes=tuple(axes),
        rank_used=len(axes),
        model=model,
        is_full_rank=exhausted or len(axes) == k_max,
        residuals=tuple(residuals),
        solutions=tuple(solutions),
    )


def cut_norm_bruteforce(R, max_dim: int = CUT_NORM_MAX_DIM) -> float:
    """Cut norm of R: the largest |sum of R over S x T| over index subsets.

    Enumerates all subsets T of the smaller dimension; for fixed T the best S
    simply collects the positive (or the negative) partial sums, so the whole
    search is exact at 2^min(I,J) candidates instead of 2^(I+J).
    """
    R = np.asarray(R, dtype=np.float64)
    I, J = R.shape
    if min(I, J) > max_dim:
        raise ValidationError(
            f"cut norm enumeration limited to min(I, J) <= {max_dim}, got {min(I, J)}"
        )
    M = R if J <= I else R.T
    dim = M.shape[1]
    best = 0.0
    for start in range(0, 1 << dim, _ENUM_CHUNK):
        ms = np.arange(start, min(start + _ENUM_CHUNK, 1 << dim), dtype=np.int64)
        members = ((ms[None, :] >> np.arange(dim)[:, None]) & 1).astype(np.float64)
        sums = M @ members
        pos = np.where(sums > 0, sums, 0.0).sum(axis=0)
        neg = np.where(sums < 0, -sums, 0.0).sum(axis=0)
        best = max(best, float(pos.max()), float(neg.max()))
    return best


def _subset_sums(values: np.ndarray) -> np.ndarray:
    sums = np.zeros(1)
    for x in values:
        sums = np.concatenate([sums, sums + x])
    return sums


def diagonal_sigma1(p, max_len: int = DIAGONAL_MAX_LEN) -> float:
    """First taxicab dispersion of a diagonal table with cell masses p.

    For a diagonal correspondence matrix the axis objective reduces to a
    subset-sum form: sigma_1 = max over subsets S of 4 s (1 - s) with
    s = sum of p over S. It equals 1 exactly when some subset of the masses
    sums to one half. Solved by meet-in-the-middle enumeration; the achievable
    s nearest one half is optimal because 4 s (1 - s) peaks there.
    """
    p = np.asarray(p, dtype=np.float64).ravel()
    if p.size == 0 or np.any(p <= 0):
        raise ValidationError("masses must be strictly positive")
    if abs(float(p.sum()) - 1.0) > 1e-9:
        raise ValidationError(f"masses must sum to 1, got {float(p.sum()):.12g}")
    if p.size > max_len:
        raise ValidationError(
            f"subset enumeration limited to {max_len} masses, got {p.size}"
        )
    half = p.size // 2
    sums_a = _subset_sums(p[:half])
    sums_b = np.sort(_subset_sums(p[half:]))
    idx = np.searchsorted(sums_b, 0.5 - sums_a)
    best = 0.0
    for shift in (0, -1):
        j = np.clip(idx + shift, 0, sums_b.size - 1)
        s = sums_a + sums_b[j]
        best = max(best, float(np.max(4.0 * s * (1.0 - s))))
    return best
