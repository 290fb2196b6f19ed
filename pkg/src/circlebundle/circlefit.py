"""Least-squares circle fitting for point clouds in R^n."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

LINE_CURVATURE = 1e-10


class FitError(ValueError):
    pass


@dataclass(frozen=True)
class CircleFit:
    """Best circle (or line) through a point cloud.

    For a line ``center`` is None, ``radius`` is inf and the curve is
    ``base + s * direction``.
    """

    center: Optional[np.ndarray]
    radius: float
    plane: np.ndarray  # 2 x n orthonormal basis of the fitted plane
    base: np.ndarray
    direction: Optional[np.ndarray]
    residual: float

    @property
    def is_line(self):
        return self.center is None

    def distance(self, p) -> float:
        p = np.asarray(p, dtype=float)
        if self.is_line:
            d = p - self.base
            return float(np.linalg.norm(d - np.dot(d, self.direction) * self.direction))
        d = p - self.center
        inplane = self.plane.T @ (self.plane @ d)
        out = d - inplane
        return float(np.hypot(np.linalg.norm(inplane) - self.radius, np.linalg.norm(out)))


def _algebraic_fit(uv):
    """Fit a(u^2+v^2) + b u + c v + d = 0 by the smallest singular vector."""
    u, v = uv[:, 0], uv[:, 1]
    design = np.column_stack([u * u + v * v, u, v, np.ones_like(u)])
    _, _, vt = np.linalg.svd(design)
    return vt[-1]


def fit_circle(points, line_curvature: float = LINE_CURVATURE) -> CircleFit:
    """Fit a circle to points in R^n.

    The points are centered, the best 2-plane is taken from the SVD, an
    algebraic circle fit is done in-plane and refined by one Gauss-Newton
    step on the geometric distances.  Fits with curvature below
    ``line_curvature`` are reported as lines.
    """
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[0] < 5:
        raise FitError("need at least 5 points")
    if P.shape[1] < 2:
        raise FitError("points must live in dimension >= 2")
    centroid = P.mean(axis=0)
    Q = P - centroid
    _, s, vt = np.linalg.svd(Q, full_matrices=False)
    if s[0] <= 1e-14 * max(1.0, np.abs(P).max()):
        raise FitError("points are all coincident")
    plane = vt[:2]
    scale = s[0] / np.sqrt(P.shape[0])
    uv = (Q @ plane.T) / scale

    a, b, c, d = _algebraic_fit(uv)
    disc = b * b + c * c - 4 * a * d
    curvature = 2 * abs(a) / np.sqrt(max(disc, 1e-300)) / scale
    if curvature < line_curvature:
        direction = plane[0]
        fit = CircleFit(None, np.inf, plane, centroid, direction, 0.0)
        return _with_residual(fit, P)

    cu, cv = -b / (2 * a), -c / (2 * a)
    r = np.sqrt(disc) / (2 * abs(a))
    # one Gauss-Newton pass on geometric residuals |p - c| - r
    du, dv = uv[:, 0] - cu, uv[:, 1] - cv
    dist = np.hypot(du, dv)
    jac = np.column_stack([-du / dist, -dv / dist, -np.ones_like(dist)])
    step, *_ = np.linalg.lstsq(jac, -(dist - r), rcond=None)
    cu, cv, r = cu + step[0], cv + step[1], r + step[2]

    center = centroid + scale * (cu * plane[0] + cv * plane[1])
    fit = CircleFit(center, float(abs(r) * scale), plane, centroid, None, 0.0)
    return _with_residual(fit, P)


def _with_residual(fit: CircleFit, P) -> CircleFit:
    res = max(fit.distance(p) for p in P)
    return CircleFit(fit.center, fit.radius, fit.plane, fit.base, fit.direction, res)
