"""Asymmetric least squares (expectile) building blocks.

The tau-expectile of a sample minimizes the asymmetrically weighted squared
error: residuals at or below zero get weight (1 - tau), residuals above zero
get weight tau. The linear solver iterates weighted least squares until the
residual-sign partition stabilizes, which happens after finitely many steps
because there are finitely many partitions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DataError, SingularSystemError

# Designs whose 2-norm condition number exceeds this are treated as singular.
COND_LIMIT = 1e12


def check_tau(tau: float) -> float:
    """Validate an asymmetry level, returning it as a float in (0, 1)."""
    tau = float(tau)
    if not np.isfinite(tau) or not 0.0 < tau < 1.0:
        raise ConfigError(f"tau must lie strictly between 0 and 1, got {tau!r}")
    return tau


@dataclass(frozen=True)
class Dataset:
    """A regression sample: response ``y``, threshold covariate ``x``, extras ``z``.

    ``y`` and ``x`` are length-n vectors; ``z`` is an n-by-p matrix (p may be
    zero). All entries must be finite.
    """

    y: np.ndarray
    x: np.ndarray
    z: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        y = np.atleast_1d(np.asarray(self.y, dtype=float))
        x = np.atleast_1d(np.asarray(self.x, dtype=float))
        if y.ndim != 1 or x.ndim != 1:
            raise DataError("y and x must be one-dimensional")
        if self.z is None:
            z = np.empty((y.size, 0))
        else:
            z = np.asarray(self.z, dtype=float)
            if z.ndim == 1:
                z = z[:, None]
            if z.ndim != 2:
                raise DataError("z must be a vector or a 2-D matrix")
        n = y.size
        if n < 1:
            raise DataError("dataset must contain at least one observation")
        if x.size != n or z.shape[0] != n:
            raise DataError(
                f"row counts differ: y has {n}, x has {x.size}, z has {z.shape[0]}"
            )
        for name, arr in (("y", y), ("x", x), ("z", z)):
            if not np.all(np.isfinite(arr)):
                bad = np.argwhere(~np.isfinite(arr)).ravel()[0]
                raise DataError(f"non-finite value in {name} (first at index {int(bad)})")
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)

    @property
    def n(self) -> int:
        return self.y.size

    @property
    def p(self) -> int:
        return self.z.shape[1]


@dataclass(frozen=True)
class LinearFit:
    """Result of a linear expectile fit.

    ``objective`` is the mean asymmetric squared loss at ``alpha``.
    ``converged`` is False only when the iteration cap was hit; callers should
    not treat such a fit as a minimizer.
    """

    alpha: np.ndarray
    converged: bool
    iterations: int
    objective: float
    residuals: np.ndarray


def asymmetric_loss(u, tau: float):
    """Asymmetric squared error: (1-tau)*u^2 for u <= 0, tau*u^2 for u > 0."""
    tau = check_tau(tau)
    u = np.asarray(u, dtype=float)
    return np.where(u <= 0.0, 1.0 - tau, tau) * u * u


def expectile_weight(u, tau: float):
    """|tau - I(u <= 0)|: the weight attached to a residual of sign u."""
    tau = check_tau(tau)
    u = np.asarray(u, dtype=float)
    return np.where(u <= 0.0, 1.0 - tau, tau)


def fit_linear_expectile(
    design: np.ndarray,
    y: np.ndarray,
    tau: float,
    *,
    max_iter: int = 100,
    tol: float = 1e-10,
) -> LinearFit:
    """Minimize the asymmetric least-squares objective over linear coefficients.

    Parameters
    ----------
    design : (n, k) array
        Full-column-rank design matrix.
    y : (n,) array
        Response vector.
    tau : float
        Asymmetry level in (0, 1).
    max_iter, tol
        Iteration cap and coefficient-change tolerance for the reweighting
        loop. The loop also stops as soon as the residual-sign partition is a
        fixed point, which is an exact optimality certificate.

    Returns
    -------
    LinearFit
        Coefficients, convergence flag, iteration count, mean loss, residuals.

    Raises
    ------
    SingularSystemError
        If the design is rank deficient (condition number above 1e12) or has
        fewer rows than columns.
    """
    tau = check_tau(tau)
    design = np.asarray(design, dtype=float)
    y = np.asarray(y, dtype=float).ravel()
    if design.ndim != 2 or design.shape[0] != y.size:
        raise DataError("design must be 2-D with one row per observation")
    n, k = design.shape
    if n < k:
        raise SingularSystemError(f"underdetermined system: {n} rows < {k} columns")
    if np.linalg.cond(design) > COND_LIMIT:
        raise SingularSystemError("design matrix is rank deficient or near-singular")

    # Least-squares warm start (the tau = 0.5 solution up to a constant weight).
    alpha = np.linalg.lstsq(design, y, rcond=None)[0]
    converged = False
    iterations = 0
    seen: set[bytes] = set()
    for _ in range(max_iter):
        iterations += 1
        resid = y - design @ alpha
        neg = resid <= 0.0
        key = neg.tobytes()
        sw = np.sqrt(np.where(neg, 1.0 - tau, tau))
        new_alpha = np.linalg.lstsq(design * sw[:, None], y * sw, rcond=None)[0]
        delta = float(np.max(np.abs(new_alpha - alpha)))
        alpha = new_alpha
        new_neg = (y - design @ alpha) <= 0.0
        if np.array_equal(new_neg, neg) or delta < tol:
            converged = True
            break
        if key in seen:
            # Partition cycle: only possible through exact zero-residual ties,
            # where the cycling iterates share the same objective value.
            converged = True
            break
        seen.add(key)

    resid = y - design @ alpha
    objective = float(np.mean(np.where(resid <= 0.0, 1.0 - tau, tau) * resid**2))
    return LinearFit(
        alpha=alpha,
        converged=converged,
        iterations=iterations,
        objective=objective,
        residuals=resid,
    )


def scalar_expectile(sample, tau: float) -> float:
    """The tau-expectile of a sample (its mean when tau = 0.5)."""
    tau = check_tau(tau)
    sample = np.asarray(sample, dtype=float).ravel()
    if sample.size == 0:
        raise DataError("cannot take the expectile of an empty sample")
    if not np.all(np.isfinite(sample)):
        raise DataError("sample contains non-finite values")
    fit = fit_linear_expectile(np.ones((sample.size, 1)), sample, tau)
    return float(fit.alpha[0])
