"""Adaptive Simpson quadrature with an explicit subinterval budget."""

from __future__ import annotations

import math
from typing import Callable

from ..exprcore import Expr, compile_expr
from ..exprcore.expr import DomainError


class QuadratureError(RuntimeError):
    """Subdivision budget exhausted or the integrand is not finite."""


MAX_SUBINTERVALS = 1_000_000
MAX_DEPTH = 60


def simpson(fn: Callable[[float], float], lo: float, hi: float, tol: float = 1e-10,
            max_subintervals: int = MAX_SUBINTERVALS) -> float:
    """Integrate ``fn`` over [lo, hi] to absolute error ``tol``.

    Each panel is accepted once |S2 - S1| <= 15 tol_panel, with the
    tolerance split in half at every bisection; the Richardson-corrected
    value S2 + (S2 - S1)/15 is returned.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if lo == hi:
        return 0.0
    sign = 1.0
    if hi < lo:
        lo, hi, sign = hi, lo, -1.0

    def ev(x):
        v = fn(x)
        if not math.isfinite(v):
            raise QuadratureError(f"integrand not finite at {x!r}")
        return v

    fa, fb = _endpoint(ev, lo, hi), _endpoint(ev, hi, lo)
    mid = 0.5 * (lo + hi)
    fm = ev(mid)
    whole = (hi - lo) * (fa + 4 * fm + fb) / 6
    total = 0.0
    used = 1
    # explicit stack keeps deep refinement off the Python call stack
    stack = [(lo, hi, fa, fm, fb, whole, tol, 0)]
    while stack:
        a, b, fa, fm, fb, s, eps, depth = stack.pop()
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = ev(lm), ev(rm)
        left = (m - a) * (fa + 4 * flm + fm) / 6
        right = (b - m) * (fm + 4 * frm + fb) / 6
        delta = left + right - s
        if abs(delta) <= 15 * eps or depth >= MAX_DEPTH or m in (a, b):
            if depth >= MAX_DEPTH and abs(delta) > 15 * eps:
                raise QuadratureError(f"subdivision cap exceeded: depth limit reached near x={m!r}")
            total += left + right + delta / 15
            continue
        used += 1
        if used > max_subintervals:
            raise QuadratureError(f"subinterval cap {max_subintervals} exceeded near x={m!r}")
        stack.append((m, b, fm, frm, fb, right, eps / 2, depth + 1))
        stack.append((a, m, fa, flm, fm, left, eps / 2, depth + 1))
    return sign * total


def _endpoint(ev, x, other):
    """Value at an endpoint; a singular endpoint is sampled just inside."""
    try:
        return ev(x)
    except (QuadratureError, DomainError, ZeroDivisionError, ValueError):
        return ev(x + (other - x) * 1e-12)


def adaptive_quadrature(e: Expr, symbol: str, lo: float, hi: float, tol: float = 1e-10,
                        params: dict | None = None, max_subintervals: int = MAX_SUBINTERVALS) -> float:
    """Integrate the expression ``e`` in ``symbol`` over [lo, hi]."""
    params = dict(params or {})
    names = sorted(e.free_symbols)
    extra = [n for n in names if n != symbol and n not in params]
    if extra:
        raise KeyError(f"unbound symbols: {extra}")
    fn = compile_expr(e, names, "float")
    pos = names.index(symbol) if symbol in names else None
    values = [float(params.get(n, 0.0)) for n in names]

    def call(x):
        if pos is not None:
            values[pos] = x
        try:
            return float(fn(*values))
        except (DomainError, OverflowError, ZeroDivisionError) as err:
            raise DomainError(f"integrand undefined at {symbol}={x!r}: {err}") from None

    return simpson(call, float(lo), float(hi), tol, max_subintervals)


__all__ = ["QuadratureError", "simpson", "adaptive_quadrature", "MAX_SUBINTERVALS"]
