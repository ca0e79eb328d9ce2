"""Cluster-wise color transfer toward one target color combination.

Three steps per combination:

1. :func:`solve_shifts` picks one Lab displacement per cluster, as close to
   the target color as possible while every pixel of the cluster stays
   inside the Lab box.
2. :func:`apply_shifts` translates each pixel by its cluster's displacement.
3. :func:`preserve_gradient` reconstructs an image that follows the shifted
   colors but keeps the input's gradients (screened Poisson equation).

:func:`transfer_single_color` is the single-color baseline used for
comparison: a global translation of the image mean onto the dominant color.
"""

from dataclasses import dataclass
import warnings

import numpy as np
from scipy import fft

from .colorspace import LAB_MAX, LAB_MIN, as_lab_image

DEFAULT_LAMBDA = 20.0


class ConvergenceWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class ShiftSolution:
    deltas: np.ndarray             # (3, 3), row k is the shift of cluster k
    achieved_targets: np.ndarray   # (3, 3), means + deltas
    objective: float
    infeasible: np.ndarray         # (3, 3) bool, empty feasible interval


@dataclass(frozen=True)
class TransferCandidate:
    combination_index: int         # 1-based position in the scheme
    intermediate: np.ndarray
    output: np.ndarray
    shifts: ShiftSolution


def shift_objective(means, weights, deltas, targets):
    """Weighted squared distance between shifted centers and targets."""
    sq = np.sum((np.asarray(means) + deltas - np.asarray(targets)) ** 2, axis=1)
    return float(np.dot(weights, sq))


def feasible_intervals(bounds_min, bounds_max, lab_min=LAB_MIN, lab_max=LAB_MAX):
    """Per cluster and dimension, the range of shifts keeping the cluster in the box."""
    lo = np.asarray(lab_min) - np.asarray(bounds_min)
    hi = np.asarray(lab_max) - np.asarray(bounds_max)
    return lo, hi


def _snap_into_box(deltas, bmin, bmax, lab_min, lab_max, skip):
    """Move shifts by a few ulps so ``bounds + delta`` stays in the box in floating point.

    Clamping computes ``lab_max - bmax`` with rounding, and adding ``bmax``
    back can land one ulp outside. Float addition is monotone, so once the
    extreme pixels are inside, every pixel of the cluster is.
    """
    deltas = deltas.copy()
    for _ in range(8):
        over = ~skip & (bmax + deltas > lab_max)
        under = ~skip & (bmin + deltas < lab_min)
        if not (over.any() or under.any()):
            break
        deltas[over] = np.nextafter(deltas[over], -np.inf)
        deltas[under] = np.nextafter(deltas[under], np.inf)
    return deltas


def solve_box_shifts(means, weights, bounds_min, bounds_max, targets,
                     lab_min=LAB_MIN, lab_max=LAB_MAX):
    """Minimize the weighted distance of shifted centers to ``targets``.

    Both constraints on a cluster (its minimum and its maximum stay inside
    the box after shifting) reduce to one interval per dimension, and the
    objective is a sum of independent 1-D parabolas, so clamping the
    unconstrained optimum into that interval is exact. Each weight only
    scales its cluster's term, it does not move the minimizer.
    """
    means = np.asarray(means, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64)
    lo, hi = feasible_intervals(bounds_min, bounds_max, lab_min, lab_max)
    infeasible = lo > hi
    deltas = np.clip(targets - means, lo, hi)
    deltas[infeasible] = 0.0
    deltas = _snap_into_box(deltas, np.asarray(bounds_min, dtype=np.float64),
                            np.asarray(bounds_max, dtype=np.float64),
                            np.asarray(lab_min, dtype=np.float64),
                            np.asarray(lab_max, dtype=np.float64), infeasible)
    if infeasible.any():
        warnings.warn("cluster range exceeds the Lab box on "
                      f"{int(infeasible.sum())} axis/axes; those shifts set to 0",
                      RuntimeWarning, stacklevel=2)
    return ShiftSolution(deltas, means + deltas,
                         shift_objective(means, weights, deltas, targets), infeasible)


def solve_shifts(model, target, lab_min=LAB_MIN, lab_max=LAB_MAX):
    """Cluster shifts of ``model`` toward a :class:`ColorCombination`."""
    targets = target.as_array() if hasattr(target, "as_array") else target
    return solve_box_shifts(model.means, model.weights, model.bounds_min,
                            model.bounds_max, targets, lab_min, lab_max)


def apply_shifts(img, model, shifts):
    """Translate every pixel by the shift of its (hard-assigned) cluster."""
    img = as_lab_image(img)
    if model.assignments.shape != img.shape[:2]:
        raise ValueError("cluster assignments do not match the image size")
    return img + shifts.deltas[model.assignments]


# -- screened Poisson --------------------------------------------------------

def forward_gradients(u):
    """Forward differences along x (columns) and y (rows); zero at the far edge."""
    gx = np.zeros_like(u)
    gy = np.zeros_like(u)
    gx[:, :-1] = u[:, 1:] - u[:, :-1]
    gy[:-1] = u[1:] - u[:-1]
    return gx, gy


def neg_laplacian(u):
    """D^T D u for forward differences with replicate (Neumann) boundaries.

    Works on (H, W) or (H, W, C) arrays; channels are independent.
    """
    out = np.zeros_like(u)
    dx = u[:, 1:] - u[:, :-1]
    dy = u[1:] - u[:-1]
    out[:, :-1] -= dx
    out[:, 1:] += dx
    out[:-1] -= dy
    out[1:] += dy
    return out


def screened_poisson_rhs(input_img, intermediate, lam):
    return intermediate + lam * neg_laplacian(input_img)


def screened_poisson_apply(u, lam):
    return u + lam * neg_laplacian(u)


def gradient_mismatch(output, input_img):
    """Sum of squared differences between the gradients of two images."""
    ox, oy = forward_gradients(np.asarray(output, dtype=np.float64))
    ix, iy = forward_gradients(np.asarray(input_img, dtype=np.float64))
    return float(np.sum((ox - ix) ** 2) + np.sum((oy - iy) ** 2))


def gradient_energy(output, input_img, intermediate, lam):
    """Data term plus ``lam`` times the gradient-mismatch term."""
    data = float(np.sum((np.asarray(output) - intermediate) ** 2))
    return data + lam * gradient_mismatch(output, input_img)


def _channel_sum(a, b):
    # reduce over pixels only, so each channel gets its own scalar
    return np.einsum("ij...,ij...->...", a, b)


def dct_preconditioner(shape, lam):
    """Exact inverse of ``I + lam * D^T D`` applied in the DCT-II basis.

    With replicate boundaries the 1-D operator ``D^T D`` has eigenvalues
    ``2 - 2 cos(pi k / n)`` on the DCT-II basis, so the 2-D operator is
    diagonal there.
    """
    h, w = shape[:2]
    ey = 2.0 - 2.0 * np.cos(np.pi * np.arange(h) / h)
    ex = 2.0 - 2.0 * np.cos(np.pi * np.arange(w) / w)
    eig = 1.0 + lam * (ey[:, None] + ex[None, :])
    if len(shape) == 3:
        eig = eig[..., None]

    def solve(r):
        return fft.idctn(fft.dctn(r, type=2, axes=(0, 1), norm="ortho") / eig,
                         type=2, axes=(0, 1), norm="ortho")

    return solve


def conjugate_gradient(rhs, lam, x0, tol=1e-9, max_iter=10_000, precondition=True):
    """Solve ``(I + lam * D^T D) x = rhs`` channel by channel.

    All channels iterate together, each with its own step sizes; a channel
    stops updating once ``||r|| <= tol * ||rhs||``. With ``precondition``
    the DCT preconditioner is used, which usually converges in one or two
    steps; without it this is plain CG.

    Returns
    -------
    x, rel_residual, iterations
        ``rel_residual`` and ``iterations`` have one entry per channel.
    """
    squeeze = rhs.ndim == 2
    if squeeze:
        rhs, x0 = rhs[..., None], x0[..., None]
    minv = dct_preconditioner(rhs.shape, lam) if precondition else (lambda v: v)
    x = x0.astype(np.float64, copy=True)
    r = rhs - screened_poisson_apply(x, lam)
    bnorm = np.sqrt(_channel_sum(rhs, rhs))
    bnorm = np.where(bnorm > 0, bnorm, 1.0)
    active = np.sqrt(_channel_sum(r, r)) > tol * bnorm
    iters = np.zeros(rhs.shape[-1], dtype=int)
    z = minv(r)
    rz = _channel_sum(r, z)
    p = z.copy()
    for _ in range(max_iter):
        if not active.any():
            break
        ap = screened_poisson_apply(p, lam)
        pap = _channel_sum(p, ap)
        alpha = np.where(active, rz / np.where(pap > 0, pap, 1.0), 0.0)
        x += alpha * p
        r -= alpha * ap
        iters += active
        active = active & (np.sqrt(_channel_sum(r, r)) > tol * bnorm)
        if not active.any():
            break
        z = minv(r)
        rz_new = _channel_sum(r, z)
        beta = np.where(active, rz_new / np.where(rz > 0, rz, 1.0), 0.0)
        p = np.where(active, z + beta * p, p)
        rz = np.where(active, rz_new, rz)
    # report the true residual, not the recursively updated one
    r = rhs - screened_poisson_apply(x, lam)
    rel = np.sqrt(_channel_sum(r, r)) / bnorm
    if squeeze:
        x = x[..., 0]
    return x, rel, iters


def preserve_gradient(input_img, intermediate, lam=DEFAULT_LAMBDA, tol=1e-9,
                      max_iter=10_000, precondition=True, return_info=False):
    """Gradient-preserving reconstruction of ``intermediate``.

    Minimizes, per Lab channel,
    ``sum (O - I')^2 + lam * sum |grad O - grad I|^2``
    whose normal equations are ``O + lam * D^T D O = I' + lam * D^T D I``
    (``D`` = forward differences, Neumann boundaries). Solved by conjugate
    gradients started at ``I'`` (DCT-preconditioned unless
    ``precondition=False``).

    A :class:`ConvergenceWarning` naming the achieved relative residual is
    issued if ``max_iter`` is hit; the current iterate is still returned.
    With ``return_info=True`` the result is ``(output, rel_residual, iters)``.
    """
    input_img = as_lab_image(input_img)
    intermediate = as_lab_image(intermediate)
    if input_img.shape != intermediate.shape:
        raise ValueError(f"shape mismatch: {input_img.shape} vs {intermediate.shape}")
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if lam == 0:
        out, rel, iters = intermediate.copy(), np.zeros(3), np.zeros(3, dtype=int)
    else:
        rhs = screened_poisson_rhs(input_img, intermediate, lam)
        out, rel, iters = conjugate_gradient(rhs, lam, intermediate, tol, max_iter,
                                             precondition)
        if np.any(rel > tol):
            warnings.warn(f"screened Poisson solve stopped at relative residual {rel.max():.3g}",
                          ConvergenceWarning, stacklevel=2)
    if return_info:
        return out, rel, iters
    return out


def transfer_combination(img, model, target, combination_index=1, lam=DEFAULT_LAMBDA):
    """Run shift solve, pixel update and gradient reconstruction for one target."""
    shifts = solve_shifts(model, target)
    intermediate = apply_shifts(img, model, shifts)
    output = preserve_gradient(img, intermediate, lam)
    return TransferCandidate(combination_index, intermediate, output, shifts)


def transfer_single_color(img, target):
    """Translate the whole image so its mean lands on the dominant color.

    The result is not clipped to the Lab box; out-of-range colors are only
    clamped when encoding to sRGB.
    """
    img = as_lab_image(img)
    dominant = target.dominant if hasattr(target, "dominant") else np.asarray(target)[0]
    return img + (np.asarray(dominant, dtype=np.float64) - img.reshape(-1, 3).mean(axis=0))
