"""Three-component Gaussian mixture over CIELAB pixels, fitted by EM.

Components are returned heaviest first, so component 0 is the dominant
color, 1 the subordinate and 2 the accent. Cluster labels are 0-based.
"""

from dataclasses import dataclass, field
import warnings

import numpy as np
from sklearn.cluster import KMeans

from .colorspace import as_lab_image
from .scheme import MainColors

N_COMPONENTS = 3
REG_COVAR = 1e-4
MIN_WEIGHT = 1e-6
_CHUNK = 1 << 18


class DegenerateImageError(ValueError):
    """The image has fewer distinct colors than mixture components."""


@dataclass(frozen=True)
class ClusterModel:
    weights: np.ndarray            # (3,)
    means: np.ndarray              # (3, 3)
    covariances: np.ndarray        # (3, 3, 3)
    assignments: np.ndarray        # (H, W) int, values in {0, 1, 2}
    bounds_min: np.ndarray         # (3, 3) per-cluster per-dimension minimum
    bounds_max: np.ndarray         # (3, 3)
    log_likelihood: list = field(default_factory=list)
    converged: bool = True
    degenerate: bool = False

    @property
    def n_iter(self):
        return len(self.log_likelihood)

    def counts(self):
        return np.bincount(self.assignments.ravel(), minlength=N_COMPONENTS)


def _log_gauss(X, means, covs):
    """Per-component log density, shape (n, 3)."""
    n, d = X.shape
    out = np.empty((n, len(means)))
    for k, (mu, cov) in enumerate(zip(means, covs)):
        chol = np.linalg.cholesky(cov)
        z = np.linalg.solve(chol, (X - mu).T)
        logdet = 2.0 * np.sum(np.log(np.diag(chol)))
        out[:, k] = -0.5 * (np.sum(z * z, axis=0) + logdet + d * np.log(2 * np.pi))
    return out


def _e_step(X, weights, means, covs):
    """Return (responsibilities, mean per-point log-likelihood)."""
    logp = _log_gauss(X, means, covs) + np.log(weights)
    top = logp.max(axis=1, keepdims=True)
    lse = top[:, 0] + np.log(np.sum(np.exp(logp - top), axis=1))
    resp = np.exp(logp - lse[:, None])
    return resp, float(np.mean(lse))


def _m_step(X, resp, reg):
    nk = resp.sum(axis=0)
    weights = nk / nk.sum()
    safe = np.maximum(nk, np.finfo(float).tiny)
    means = (resp.T @ X) / safe[:, None]
    covs = np.empty((len(nk), X.shape[1], X.shape[1]))
    for k in range(len(nk)):
        diff = X - means[k]
        covs[k] = (resp[:, k, None] * diff).T @ diff / safe[k]
        covs[k].flat[::X.shape[1] + 1] += reg
    return weights, means, covs


def _rescue_empty(X, resp, weights, means, covs, reg):
    """Re-seed components whose weight collapsed below MIN_WEIGHT."""
    empty = np.flatnonzero(weights < MIN_WEIGHT)
    if not len(empty):
        return weights, means, covs
    weights, means, covs = weights.copy(), means.copy(), covs.copy()
    order = np.argsort(resp.max(axis=1), kind="stable")
    spread = np.cov(X, rowvar=False) + reg * np.eye(X.shape[1])
    for slot, k in enumerate(empty):
        means[k] = X[order[slot]]
        covs[k] = spread
        weights[k] = 1.0 / len(X)
    return weights / weights.sum(), means, covs


def _cluster_bounds(X, labels, means):
    lo, hi = means.copy(), means.copy()
    for k in range(len(means)):
        members = X[labels == k]
        if len(members):
            lo[k] = members.min(axis=0)
            hi[k] = members.max(axis=0)
    return lo, hi


def _assign(X, weights, means, covs):
    labels = np.empty(len(X), dtype=np.intp)
    logw = np.log(weights)
    for start in range(0, len(X), _CHUNK):
        part = X[start:start + _CHUNK]
        labels[start:start + _CHUNK] = np.argmax(_log_gauss(part, means, covs) + logw, axis=1)
    return labels


def _n_distinct(X):
    """Number of distinct rows, saturating at 3."""
    differs = np.any(X != X[0], axis=1)
    if not differs.any():
        return 1
    second = X[np.argmax(differs)]
    return 3 if np.any(differs & np.any(X != second, axis=1)) else 2


def fit_em(img, seed=0, max_iter=100, tol=1e-6, sample_cap=100_000, reg_covar=REG_COVAR):
    """Fit a 3-component full-covariance GMM to the pixels of a Lab image.

    Initialization is k-means (k-means++ seeding, ``seed``) on a uniform
    subsample of at most ``sample_cap`` pixels. EM runs on that subsample
    until the mean per-pixel log-likelihood improves by less than ``tol``
    or ``max_iter`` iterations have run. Hard assignments and cluster bounds
    are then computed over all pixels.

    Raises
    ------
    DegenerateImageError
        Fewer than three distinct colors in the image.
    """
    img = as_lab_image(img)
    h, w, _ = img.shape
    X = img.reshape(-1, 3)
    if _n_distinct(X) < N_COMPONENTS:
        raise DegenerateImageError("image has fewer than 3 distinct colors")

    rng = np.random.default_rng(seed)
    sample = X
    if len(X) > sample_cap:
        sample = X[np.sort(rng.choice(len(X), sample_cap, replace=False))]
        if _n_distinct(sample) < N_COMPONENTS:
            sample = X

    km = KMeans(N_COMPONENTS, init="k-means++", n_init=1, random_state=seed).fit(sample)
    resp = np.eye(N_COMPONENTS)[km.labels_]
    weights, means, covs = _m_step(sample, resp, reg_covar)
    weights, means, covs = _rescue_empty(sample, resp, weights, means, covs, reg_covar)

    history = []
    converged = False
    for _ in range(max_iter):
        resp, ll = _e_step(sample, weights, means, covs)
        if history and ll - history[-1] < tol:
            history.append(ll)
            converged = True
            break
        history.append(ll)
        weights, means, covs = _m_step(sample, resp, reg_covar)
        weights, means, covs = _rescue_empty(sample, resp, weights, means, covs, reg_covar)
    if not converged:
        warnings.warn(f"EM stopped after {max_iter} iterations without converging",
                      RuntimeWarning, stacklevel=2)

    order = np.argsort(-weights, kind="stable")
    weights, means, covs = weights[order], means[order], covs[order]
    labels = _assign(X, weights, means, covs)
    lo, hi = _cluster_bounds(X, labels, means)
    return ClusterModel(weights, means, covs, labels.reshape(h, w), lo, hi,
                        history, converged)


def fallback_model(img, reg_covar=REG_COVAR):
    """Model for images with fewer than three distinct colors.

    The distinct colors (most frequent first) are cycled over the three
    slots; each color's pixel share is split evenly among its slots, and its
    pixels are assigned to its first slot.
    """
    img = as_lab_image(img)
    h, w, _ = img.shape
    X = img.reshape(-1, 3)
    colors, inverse, counts = np.unique(X, axis=0, return_inverse=True, return_counts=True)
    inverse = inverse.ravel()
    rank = np.argsort(-counts, kind="stable")
    slots = [rank[i % len(rank)] for i in range(N_COMPONENTS)]
    share = {c: slots.count(c) for c in set(slots)}
    weights = np.array([counts[c] / len(X) / share[c] for c in slots])
    means = colors[slots].astype(np.float64)
    covs = np.repeat(reg_covar * np.eye(3)[None], N_COMPONENTS, axis=0)
    order = np.argsort(-weights, kind="stable")
    weights, means = weights[order], means[order]
    slots = [slots[i] for i in order]
    first_slot = {c: slots.index(c) for c in set(slots)}
    labels = np.array([first_slot[c] for c in range(len(colors))])[inverse]
    lo, hi = _cluster_bounds(X, labels, means)
    return ClusterModel(weights, means, covs, labels.reshape(h, w), lo, hi,
                        [], True, degenerate=True)


def fit_or_fallback(img, seed=0, **opts):
    """``fit_em``, falling back to :func:`fallback_model` on degenerate images."""
    try:
        return fit_em(img, seed=seed, **opts)
    except DegenerateImageError:
        return fallback_model(img)


def extract_main_colors(model):
    """Component means and weights as :class:`MainColors`, heaviest first."""
    order = np.argsort(-np.asarray(model.weights), kind="stable")
    weights = np.asarray(model.weights, dtype=np.float64)[order]
    return MainColors(np.asarray(model.means, dtype=np.float64)[order], weights / weights.sum())
