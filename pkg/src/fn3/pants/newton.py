from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

log = logging.getLogger(__name__)

ARMIJO = 1e-4
MAX_BACKTRACK = 30


@dataclass
class NewtonResult:
    z: np.ndarray
    residual: float
    iterations: int
    converged: bool


def damped_newton(
    residual: Callable[[np.ndarray], np.ndarray],
    jacobian: Callable[[np.ndarray], np.ndarray],
    z0: np.ndarray,
    tol: float,
    max_iter: int = 60,
    min_iter: int = 0,
) -> NewtonResult:
    """Damped complex Newton iteration for a square or rank-deficient system.

    Steps come from a least-squares solve, so a positive dimensional
    solution set does not stall the iteration; each step is backtracked
    until the squared residual satisfies the Armijo condition. At least
    ``min_iter`` steps are taken even from a start already within ``tol``;
    a line search that stalls there keeps the start as converged.
    """
    z = np.asarray(z0, dtype=complex).copy()
    f = residual(z)
    norm = float(np.linalg.norm(f))
    for it in range(max_iter):
        if not np.isfinite(norm):
            return NewtonResult(z, norm, it, False)
        if norm <= tol and it >= min_iter:
            return NewtonResult(z, norm, it, True)

        step, *_ = np.linalg.lstsq(jacobian(z), -f, rcond=None)
        t = 1.0
        for _ in range(MAX_BACKTRACK):
            trial = z + t * step
            f_trial = residual(trial)
            norm_trial = float(np.linalg.norm(f_trial))
            if np.isfinite(norm_trial) and norm_trial**2 <= (1.0 - 2.0 * ARMIJO * t) * norm**2:
                break
            t /= 2.0
        else:
            log.debug("newton: line search failed at iteration %d, |F| = %.3e", it, norm)
            return NewtonResult(z, norm, it, norm <= tol)

        z, f, norm = trial, f_trial, norm_trial
        log.debug("newton: iteration %d, |F| = %.3e, damping %.3g", it, norm, t)

    return NewtonResult(z, norm, max_iter, norm <= tol)
