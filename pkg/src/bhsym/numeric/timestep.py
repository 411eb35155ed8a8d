"""Backward-Euler integration of the dissipative flow u_t = -L^2 u.

Space is cell-centred in x with reflecting (zero-flux) ends and periodic in
y.  L is discretized in conservative form, (1/w) d_x(w d_x u) + w^-2 d_yy u
with w = e^f, which is self-adjoint for the area weight w.  After the
similarity transform by sqrt(w) each step is a symmetric positive definite
solve, done with Jacobi-preconditioned conjugate gradients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator, cg

from ..exprcore import as_expr, lambdify, substitute
from .fd import Grid


class LinearSolveError(RuntimeError):
    """Conjugate gradients did not reach the requested tolerance."""


@dataclass(frozen=True)
class StepHistory:
    x: np.ndarray
    y: np.ndarray
    fields: np.ndarray       # (steps + 1, nx, ny)
    norms: np.ndarray        # weighted discrete 2-norm per step
    dt: float
    iterations: tuple

    def non_increasing(self, slack: float = 1e-12) -> bool:
        d = np.diff(self.norms)
        return bool(np.all(d <= slack * max(1.0, float(self.norms[0]))))


def cell_centres(grid: Grid) -> np.ndarray:
    h = (grid.x1 - grid.x0) / grid.nx
    return grid.x0 + h * (np.arange(grid.nx) + 0.5)


def _profile(f, x: np.ndarray, params) -> np.ndarray:
    e = substitute(as_expr(f), dict(params or {}))
    with np.errstate(all="ignore"):
        v = np.broadcast_to(np.asarray(lambdify(e, ("x",))(x), dtype=float), x.shape)
    if not np.all(np.isfinite(v)):
        raise ValueError("profile is not finite on the grid")
    return v


def laplacian_matrix(f, grid: Grid, params=None):
    """Sparse discrete L on the cell-centred grid and the area weights."""
    nx, ny = grid.nx, grid.ny
    hx = (grid.x1 - grid.x0) / nx
    hy = 2 * math.pi / ny
    xc = cell_centres(grid)
    w = np.exp(_profile(f, xc, params))
    wf = np.exp(_profile(f, np.concatenate(([grid.x0], 0.5 * (xc[1:] + xc[:-1]), [grid.x1])), params))
    wf[0] = wf[-1] = 0.0                      # zero flux through the ends
    main = -(wf[:-1] + wf[1:]) / (w * hx**2)
    lower = wf[1:-1] / (w[1:] * hx**2)
    upper = wf[1:-1] / (w[:-1] * hx**2)
    Lx = sp.diags([lower, main, upper], [-1, 0, 1], format="csr")
    e = np.ones(ny)
    Dyy = sp.diags([e[:-1], -2 * e, e[:-1]], [-1, 0, 1], format="lil")
    Dyy[0, ny - 1] = Dyy[ny - 1, 0] = 1.0
    Dyy = Dyy.tocsr() / hy**2
    L = sp.kron(Lx, sp.identity(ny)) + sp.kron(sp.diags(w**-2), Dyy)
    return L.tocsr(), np.repeat(w, ny)


def time_step_dissipative(f, u0, grid: Grid, dt: float, steps: int, params=None,
                          tol: float = 1e-10, maxiter: int = 10_000) -> StepHistory:
    """March u_t = -L^2 u by backward Euler; ``u0`` is an expression in x, y
    or an (nx, ny) array on the cell-centred grid."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    if steps < 0:
        raise ValueError("steps must be non-negative")
    xc, yc = cell_centres(grid), grid.y()
    if isinstance(u0, np.ndarray):
        u = np.array(u0, dtype=float)
        if u.shape != (grid.nx, grid.ny):
            raise ValueError("u0 array must have shape (nx, ny)")
    else:
        X, Y = np.meshgrid(xc, yc, indexing="ij")
        e = substitute(as_expr(u0), dict(params or {}))
        u = np.broadcast_to(np.asarray(lambdify(e, ("x", "y"))(X, Y), dtype=float), X.shape).copy()
    L, weight = laplacian_matrix(f, grid, params)
    s = np.sqrt(weight)
    S = sp.diags(s) @ L @ sp.diags(1 / s)
    S = 0.5 * (S + S.T)                        # symmetric up to rounding already
    A = (sp.identity(S.shape[0]) + dt * (S @ S)).tocsr()
    jacobi = 1.0 / A.diagonal()
    M = LinearOperator(A.shape, matvec=lambda r: jacobi * r)
    v = s * u.ravel()
    fields, norms, iters = [u.copy()], [float(np.linalg.norm(v))], []
    for n in range(steps):
        count = [0]

        def tick(_):
            count[0] += 1

        v_new, info = cg(A, v, x0=v, rtol=tol, atol=0.0, maxiter=maxiter, M=M, callback=tick)
        if info != 0:
            raise LinearSolveError(f"conjugate gradients failed at step {n + 1} (info={info})")
        v = v_new
        fields.append((v / s).reshape(grid.nx, grid.ny))
        norms.append(float(np.linalg.norm(v)))
        iters.append(count[0])
    return StepHistory(xc, yc, np.array(fields), np.array(norms), float(dt), tuple(iters))
