"""Finite-difference residuals of u_t = L^2 u on (x, y) grids and
convergence-order studies.

All stencils are second-order central.  The field is sampled from the
analytic u on the grid plus two ghost layers on every side, so residuals
are reported on every grid node and need no boundary closure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from ..exprcore import DomainError, Expr, as_expr, differentiate, lambdify, substitute
from ..operator import COEFFICIENT_KEYS, SurfaceOperator

GHOST = 2
STENCIL_ORDERS = {k: 2 for k in COEFFICIENT_KEYS}


@dataclass(frozen=True)
class Grid:
    """Uniform nodes x0..x1 (nx points) by ny points of y in [0, 2 pi)."""

    x0: float
    x1: float
    nx: int
    ny: int

    def __post_init__(self):
        if self.nx < 9 or self.ny < 9:
            raise ValueError("grids need at least 9 points per direction")
        if not self.x1 > self.x0:
            raise ValueError("x1 must exceed x0")

    @property
    def hx(self) -> float:
        return (self.x1 - self.x0) / (self.nx - 1)

    @property
    def hy(self) -> float:
        return 2 * math.pi / self.ny

    def x(self, ghost: int = 0) -> np.ndarray:
        return self.x0 + self.hx * np.arange(-ghost, self.nx + ghost)

    def y(self, ghost: int = 0) -> np.ndarray:
        return self.hy * np.arange(-ghost, self.ny + ghost)

    def refine(self) -> "Grid":
        return Grid(self.x0, self.x1, 2 * self.nx - 1, 2 * self.ny - 1)

    def to_dict(self) -> dict:
        return {"x0": self.x0, "x1": self.x1, "nx": self.nx, "ny": self.ny, "hx": self.hx, "hy": self.hy}


@dataclass(frozen=True)
class ResidualReport:
    max_norm: float
    l2_norm: float
    t: float
    grid: Grid
    scale: float = 1.0
    stencil_orders: Mapping = field(default_factory=lambda: dict(STENCIL_ORDERS))
    u_t: str = "analytic"

    def to_dict(self) -> dict:
        return {
            "max_norm": self.max_norm,
            "l2_norm": self.l2_norm,
            "t": self.t,
            "grid": self.grid.to_dict(),
            "stencil_orders": dict(self.stencil_orders),
            "u_t": self.u_t,
            "rounding_floor": self.rounding_floor(),
        }

    def rounding_floor(self, safety: float = 1e3) -> float:
        """Residual size explained by double rounding in the order-4 stencils."""
        h = min(self.grid.hx, self.grid.hy)
        return float(safety * np.finfo(float).eps * max(self.scale, 1.0) / h**4)


def _dx(a: np.ndarray, h: float, axis: int) -> np.ndarray:
    """Central first difference; drops one layer on each side of ``axis``."""
    s = [slice(None)] * a.ndim
    lo, hi = list(s), list(s)
    lo[axis], hi[axis] = slice(0, -2), slice(2, None)
    return (a[tuple(hi)] - a[tuple(lo)]) / (2 * h)


def _d2(a: np.ndarray, h: float, axis: int) -> np.ndarray:
    n = a.shape[axis]
    take = lambda i, k: np.take(a, np.arange(i, n - k), axis=axis)  # noqa: E731
    return (take(2, 0) - 2 * take(1, 1) + take(0, 2)) / h**2


def _d3(a: np.ndarray, h: float, axis: int) -> np.ndarray:
    n = a.shape[axis]
    t = lambda i: np.take(a, np.arange(i, n - 4 + i), axis=axis)  # noqa: E731
    return (t(4) - 2 * t(3) + 2 * t(1) - t(0)) / (2 * h**3)


def _d4(a: np.ndarray, h: float, axis: int) -> np.ndarray:
    n = a.shape[axis]
    t = lambda i: np.take(a, np.arange(i, n - 4 + i), axis=axis)  # noqa: E731
    return (t(4) - 4 * t(3) + 6 * t(2) - 4 * t(1) + t(0)) / h**4


def _crop(a: np.ndarray, cx: int, cy: int) -> np.ndarray:
    """Strip ``cx`` layers in x and ``cy`` in y."""
    return a[cx: a.shape[0] - cx or None, cy: a.shape[1] - cy or None]


def stencil_derivatives(values: np.ndarray, hx: float, hy: float) -> dict:
    """Derivative coordinates of L^2 u from samples with two ghost layers.

    ``values`` has shape (nx + 4, ny + 4); every returned array has shape
    (nx, ny).
    """
    uyy = _d2(values, hy, 1)                     # (nx+4, ny+2)
    return {
        "u_x": _crop(_dx(values, hx, 0), 1, 2),
        "u_xx": _crop(_d2(values, hx, 0), 1, 2),
        "u_xxx": _crop(_d3(values, hx, 0), 0, 2),
        "u_xxxx": _crop(_d4(values, hx, 0), 0, 2),
        "u_yy": _crop(uyy, 2, 1),
        "u_xyy": _crop(_dx(uyy, hx, 0), 1, 1),
        "u_xxyy": _crop(_d2(uyy, hx, 0), 1, 1),
        "u_yyyy": _crop(_d4(values, hy, 1), 2, 0),
    }


def _field_fn(u, params: Mapping | None):
    """Vectorized u(x, y, t) from an expression (or a callable as given)."""
    if callable(u) and not isinstance(u, Expr):
        return u, None
    e = substitute(as_expr(u), dict(params or {}))
    stray = e.free_symbols - {"x", "y", "t"}
    if stray:
        raise ValueError(f"u has unbound symbols {sorted(stray)}")
    return lambdify(e, ("x", "y", "t")), e


def _sample(fn, X, Y, t) -> np.ndarray:
    with np.errstate(all="ignore"):
        v = np.broadcast_to(np.asarray(fn(X, Y, t), dtype=float), X.shape)
    if not np.all(np.isfinite(v)):
        bad = np.argwhere(~np.isfinite(v))[0]
        raise DomainError(f"u is not finite at x={X[tuple(bad)]:.6g}, y={Y[tuple(bad)]:.6g}")
    return v


def _coefficient_arrays(op: SurfaceOperator, x: np.ndarray, params: Mapping | None) -> dict:
    out = {}
    for k, c in op.expected_coefficients().items():
        c = substitute(c, dict(params or {}))
        stray = c.free_symbols - {"x"}
        if stray:
            raise ValueError(f"profile has unbound symbols {sorted(stray)}")
        with np.errstate(all="ignore"):
            v = np.broadcast_to(np.asarray(lambdify(c, ("x",))(x), dtype=float), x.shape)
        if not np.all(np.isfinite(v)):
            raise DomainError(f"coefficient of {k} is not finite on the grid")
        out[k] = v
    return out


def fd_biharmonic(f, u, grid: Grid, t: float = 0.0, params: Mapping | None = None) -> np.ndarray:
    """Discrete L^2 u on the grid nodes."""
    op = SurfaceOperator(as_expr(f))
    fn, _ = _field_fn(u, params)
    X, Y = np.meshgrid(grid.x(GHOST), grid.y(GHOST), indexing="ij")
    ders = stencil_derivatives(_sample(fn, X, Y, t), grid.hx, grid.hy)
    coef = _coefficient_arrays(op, grid.x()[:, None], params)
    return sum(coef[k] * ders[k] for k in COEFFICIENT_KEYS)


def _norms(r: np.ndarray, grid: Grid) -> tuple:
    return float(np.max(np.abs(r))), float(np.sqrt(grid.hx * grid.hy * np.sum(r * r)))


def fd_residual(f, u, grid: Grid, t: float = 0.0, params: Mapping | None = None) -> ResidualReport:
    """Max and 2-norm of u_t - L^2 u over the grid nodes at time ``t``.

    u_t is exact when ``u`` is an expression; for a callable it is a central
    difference with step hx^2.
    """
    fn, e = _field_fn(u, params)
    X, Y = np.meshgrid(grid.x(), grid.y(), indexing="ij")
    if e is not None:
        ut = _sample(lambdify(differentiate(e, "t"), ("x", "y", "t")), X, Y, t)
        how = "analytic"
    else:
        ht = grid.hx**2
        ut = (_sample(fn, X, Y, t + ht) - _sample(fn, X, Y, t - ht)) / (2 * ht)
        how = "central difference"
    r = ut - fd_biharmonic(f, fn if e is None else e, grid, t, params)
    mx, l2 = _norms(r, grid)
    scale = float(np.max(np.abs(_sample(fn, X, Y, t))))
    return ResidualReport(mx, l2, float(t), grid, scale, u_t=how)


def fd_operator_error(f, u, grid: Grid, t: float = 0.0, params: Mapping | None = None) -> ResidualReport:
    """Discrete minus analytic L^2 u for an arbitrary expression u."""
    op = SurfaceOperator(as_expr(f))
    e = substitute(as_expr(u), dict(params or {}))
    exact = substitute(op.biharmonic_apply(e), dict(params or {}))
    X, Y = np.meshgrid(grid.x(), grid.y(), indexing="ij")
    r = fd_biharmonic(f, e, grid, t, params) - _sample(lambdify(exact, ("x", "y", "t")), X, Y, t)
    mx, l2 = _norms(r, grid)
    scale = float(np.max(np.abs(_sample(lambdify(e, ("x", "y", "t")), X, Y, t))))
    return ResidualReport(mx, l2, float(t), grid, scale, u_t="not used")


@dataclass(frozen=True)
class ConvergenceStudy:
    h: tuple
    norms: tuple
    order: float | str
    monotone: bool
    floors: tuple

    @property
    def exact(self) -> bool:
        return self.order == "exact"

    def table(self) -> list:
        rows = []
        for i, (h, n) in enumerate(zip(self.h, self.norms)):
            local = None
            if i and n > 0 and self.norms[i - 1] > 0:
                local = math.log(self.norms[i - 1] / n) / math.log(self.h[i - 1] / h)
            rows.append({"h": h, "max_norm": n, "rounding_floor": self.floors[i], "local_order": local})
        return rows

    def to_dict(self) -> dict:
        return {"order": self.order, "monotone": self.monotone, "table": self.table()}


def convergence_order(f, u, grids: Sequence[Grid], t: float = 0.0, params: Mapping | None = None,
                      measure: Callable = fd_residual) -> ConvergenceStudy:
    """Least-squares slope of log max-residual against log hx.

    When every residual sits below its grid's rounding floor the order is
    reported as ``"exact"``.  ``monotone`` is False when a refinement fails to
    reduce the residual.
    """
    grids = list(grids)
    if len(grids) < 3:
        raise ValueError("a convergence study needs at least three grids")
    for g0, g1 in zip(grids, grids[1:]):
        if not math.isclose(g0.hx / g1.hx, 2.0, rel_tol=1e-9):
            raise ValueError("successive grids must halve hx")
    reports = [measure(f, u, g, t, params) for g in grids]
    norms = [r.max_norm for r in reports]
    floors = tuple(r.rounding_floor() for r in reports)
    hs = [g.hx for g in grids]
    if all(n <= fl for n, fl in zip(norms, floors)):
        return ConvergenceStudy(tuple(hs), tuple(norms), "exact", True, floors)
    monotone = all(b < a for a, b in zip(norms, norms[1:]))
    slope = float(np.polyfit(np.log(hs), np.log(np.maximum(norms, 1e-300)), 1)[0])
    return ConvergenceStudy(tuple(hs), tuple(norms), slope, monotone, floors)


def refinement(grid: Grid, levels: int = 3) -> list:
    out = [grid]
    for _ in range(levels - 1):
        out.append(out[-1].refine())
    return out
