"""Numeric integration of the translation-reduced ODE

    psi'''' + (f''' + f' f'') psi' + (2 f'' + f'^2) psi'' + 2 f' psi''' = -c1/a

as a first-order system with the Dormand-Prince 5(4) pair from scipy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.integrate import solve_ivp

from ..exprcore import as_expr, as_float, differentiate, lambdify


class ODEIntegrationError(RuntimeError):
    """The integrator stopped early, typically from step-size underflow."""


@dataclass(frozen=True)
class ODESolution:
    eta: np.ndarray
    values: np.ndarray       # rows: psi, psi', psi'', psi'''
    steps: int

    @property
    def psi(self) -> np.ndarray:
        return self.values[0]

    def max_error(self, exact) -> float:
        """Largest |psi - exact| over the samples; ``exact`` is an expression in h."""
        fn = lambdify(as_expr(exact), ("h",))
        ref = np.broadcast_to(np.asarray(fn(self.eta), dtype=float), self.eta.shape)
        return float(np.max(np.abs(self.psi - ref)))


def _profile_derivatives(f) -> list:
    d = as_expr(f)
    out = []
    for _ in range(3):
        d = differentiate(d, "x")
        out.append(lambdify(d, ("x",)))
    return out


def initial_values(psi, eta0: float, var: str = "h") -> tuple:
    """(psi, psi', psi'', psi''') at ``eta0`` for an expression psi."""
    e = as_expr(psi)
    out = []
    for _ in range(4):
        out.append(as_float(e, {var: eta0}) if e.free_symbols else as_float(e))
        e = differentiate(e, var)
    return tuple(out)


def integrate_reduced_ode(f, c1: float, a: float, eta0: float, initial: Sequence[float],
                          span: float = 1.0, tol: float = 1e-10, samples: int = 101) -> ODESolution:
    """Integrate from ``eta0`` to ``eta0 + span`` with local error per step
    bounded by ``tol``; returns ``samples`` evenly spaced values."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if a == 0:
        raise ValueError("a must be nonzero")
    if len(initial) != 4:
        raise ValueError("four initial values are required")
    f1, f2, f3 = _profile_derivatives(f)
    forcing = -float(c1) / float(a)

    def rhs(x, y):
        p1, p2, p3 = f1(x), f2(x), f3(x)
        d4 = forcing - (p3 + p1 * p2) * y[1] - (2 * p2 + p1 * p1) * y[2] - 2 * p1 * y[3]
        return np.array([y[1], y[2], y[3], d4], dtype=float)

    t_eval = np.linspace(eta0, eta0 + span, samples)
    with np.errstate(all="ignore"):
        sol = solve_ivp(rhs, (eta0, eta0 + span), np.asarray(initial, dtype=float), method="RK45",
                        t_eval=t_eval, rtol=tol, atol=tol)
    if sol.status != 0 or not np.all(np.isfinite(sol.y)):
        raise ODEIntegrationError(f"integration stopped at eta={sol.t[-1] if sol.t.size else eta0}: {sol.message}")
    return ODESolution(sol.t, sol.y, int(sol.nfev))

