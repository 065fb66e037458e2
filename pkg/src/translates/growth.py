"""Least-squares fits of ``v(n) = c n^beta (log n)^alpha``."""

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["GrowthFit", "fit_growth"]


@dataclass(frozen=True)
class GrowthFit:
    """Fitted ``(c, beta, alpha)`` with the RMS residual of ``log v``.

    ``fixed`` names the exponents held at prescribed values.
    """

    points: tuple
    c: float
    beta: float
    alpha: float
    residual: float
    fixed: tuple = ()

    def predict(self, n):
        return self.c * n ** self.beta * math.log(n) ** self.alpha

    def as_dict(self):
        return {
            "points": [[n, v] for n, v in self.points],
            "model": "c * n^beta * (log n)^alpha",
            "c": self.c,
            "beta": self.beta,
            "alpha": self.alpha,
            "residual": self.residual,
            "fixed": list(self.fixed),
        }


def fit_growth(points, beta=None, alpha=None):
    """Regress ``log v`` on ``[1, log n, log log n]``.

    Passing ``beta`` or ``alpha`` fixes that exponent and fits the rest.
    Needs at least 4 points with ``n >= 3`` and positive values.
    """
    pts = sorted((int(n), float(v)) for n, v in points)
    if len(pts) < 4:
        raise ValueError(f"need at least 4 points, got {len(pts)}")
    if any(n < 3 for n, _ in pts):
        raise ValueError("every n must be >= 3 so that log log n is defined")
    if any(not v > 0 for _, v in pts):
        raise ValueError("values must be positive")
    n = np.array([p[0] for p in pts], dtype=float)
    y = np.log([p[1] for p in pts])
    ln = np.log(n)
    lln = np.log(ln)
    cols, names = [np.ones_like(n)], ["logc"]
    if beta is None:
        cols.append(ln)
        names.append("beta")
    else:
        y = y - beta * ln
    if alpha is None:
        cols.append(lln)
        names.append("alpha")
    else:
        y = y - alpha * lln
    A = np.column_stack(cols)
    if np.linalg.matrix_rank(A) < A.shape[1]:
        raise ValueError("degenerate design matrix")
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    est = dict(zip(names, coef))
    resid = y - A @ coef
    fixed = tuple(name for name, val in (("beta", beta), ("alpha", alpha)) if val is not None)
    return GrowthFit(
        tuple(pts),
        float(math.exp(est["logc"])),
        float(est.get("beta", beta)),
        float(est.get("alpha", alpha)),
        float(math.sqrt(np.mean(resid ** 2))),
        fixed,
    )
