"""Numeric evaluation by compiling expression DAGs to straight-line Python.

Three backends share one code generator: ``mpmath`` (arbitrary precision,
used by zero tests), ``float`` (``math`` module scalars) and ``numpy``
(vectorized, used on grids).  Shared subtrees are computed once.
"""

from __future__ import annotations

import math
import weakref
from typing import Mapping, Sequence

import mpmath
import numpy as np

from .expr import ADD, CONST, MUL, POW, SYM, DomainError, Expr


class _Fail(Exception):
    def __init__(self, index: int, what: str):
        self.index = index
        self.what = what


def _mp_helpers():
    mp = mpmath.mp

    def ln(x, i):
        if x <= 0:
            raise _Fail(i, "ln of non-positive argument")
        return mp.log(x)

    def ipow(x, n, i):
        if x == 0:
            raise _Fail(i, "division by zero")
        return x**n

    def fpow(x, p, q, i):
        if x < 0 or (x == 0 and p < 0):
            raise _Fail(i, "fractional power of negative argument" if x < 0 else "division by zero")
        return mp.power(x, mpmath.mpf(p) / q)

    def coth(x, i):
        if x == 0:
            raise _Fail(i, "coth of zero")
        return mp.coth(x)

    def const(p, q):
        return mpmath.mpf(p) / q

    return {
        "_exp": mp.exp, "_ln": ln, "_sin": mp.sin, "_cos": mp.cos, "_sinh": mp.sinh,
        "_cosh": mp.cosh, "_tanh": mp.tanh, "_coth": coth, "_ipow": ipow, "_fpow": fpow,
        "_C": const, "_abs": abs,
    }


def _float_helpers():
    def ln(x, i):
        if x <= 0:
            raise _Fail(i, "ln of non-positive argument")
        return math.log(x)

    def ipow(x, n, i):
        if x == 0:
            raise _Fail(i, "division by zero")
        return x**n

    def fpow(x, p, q, i):
        if x < 0 or (x == 0 and p < 0):
            raise _Fail(i, "fractional power of negative argument" if x < 0 else "division by zero")
        return x ** (p / q)

    def coth(x, i):
        if x == 0:
            raise _Fail(i, "coth of zero")
        return 1.0 / math.tanh(x)

    def exp(x):
        try:
            return math.exp(x)
        except OverflowError:
            return math.inf

    return {
        "_exp": exp, "_ln": ln, "_sin": math.sin, "_cos": math.cos, "_sinh": math.sinh,
        "_cosh": math.cosh, "_tanh": math.tanh, "_coth": coth, "_ipow": ipow, "_fpow": fpow,
        "_C": lambda p, q: p / q, "_abs": abs,
    }


def _numpy_helpers():
    def ln(x, i):
        return np.log(x)

    def ipow(x, n, i):
        return np.power(np.asarray(x, dtype=float), n)

    def fpow(x, p, q, i):
        return np.power(np.asarray(x, dtype=float), p / q)

    def coth(x, i):
        return 1.0 / np.tanh(x)

    return {
        "_exp": np.exp, "_ln": ln, "_sin": np.sin, "_cos": np.cos, "_sinh": np.sinh,
        "_cosh": np.cosh, "_tanh": np.tanh, "_coth": coth, "_ipow": ipow, "_fpow": fpow,
        "_C": lambda p, q: p / q, "_abs": np.abs,
    }


_HELPERS = {"mpmath": _mp_helpers, "float": _float_helpers, "numpy": _numpy_helpers}


def _codegen(e: Expr, names: Sequence[str], track: bool):
    order: list = []
    index: dict = {}
    stack = [(e, False)]
    while stack:
        n, ready = stack.pop()
        if n in index:
            continue
        if ready or not n.args:
            index[n] = len(order)
            order.append(n)
            continue
        stack.append((n, True))
        for c in n.args:
            if c not in index:
                stack.append((c, False))
    argpos = {nm: i for i, nm in enumerate(names)}
    lines = []
    for i, n in enumerate(order):
        kind = n.kind
        if kind == CONST:
            v = n.value
            rhs = f"_C({v.numerator}, {v.denominator})"
        elif kind == SYM:
            if n.value not in argpos:
                raise KeyError(n.value)
            rhs = f"a{argpos[n.value]}"
        elif kind == ADD:
            rhs = " + ".join(f"t{index[c]}" for c in n.args)
        elif kind == MUL:
            rhs = " * ".join(f"t{index[c]}" for c in n.args)
        elif kind == POW:
            b = f"t{index[n.args[0]]}"
            q = n.value
            if q.denominator == 1 and q > 0:
                rhs = f"{b} ** {q.numerator}"
            elif q.denominator == 1:
                rhs = f"_ipow({b}, {q.numerator}, {i})"
            else:
                rhs = f"_fpow({b}, {q.numerator}, {q.denominator}, {i})"
        elif kind in ("ln", "coth"):
            rhs = f"_{kind}(t{index[n.args[0]]}, {i})"
        else:
            rhs = f"_{kind}(t{index[n.args[0]]})"
        lines.append(f"    t{i} = {rhs}")
    result = f"t{index[e]}"
    if track:
        temps = ", ".join(f"_abs(t{i})" for i in range(len(order)))
        lines.append(f"    return {result}, max(({temps},))")
    else:
        lines.append(f"    return {result}")
    args = ", ".join(f"a{i}" for i in range(len(names)))
    src = f"def _f({args}):\n" + "\n".join(lines) + "\n"
    return src, order


_CACHE: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def compile_expr(e: Expr, names: Sequence[str], backend: str = "float", track: bool = False):
    """Compile ``e`` to a function of the symbols ``names`` (positional).

    With ``track=True`` the function returns ``(value, largest |intermediate|)``.
    Domain violations raise :class:`DomainError` carrying the offending subtree
    (``numpy`` returns nan/inf instead).
    """
    names = tuple(names)
    key = (names, backend, track)
    per = _CACHE.get(e)
    if per is None:
        per = {}
        _CACHE[e] = per
    fn = per.get(key)
    if fn is not None:
        return fn
    src, order = _codegen(e, names, track)
    env = dict(_HELPERS[backend]())
    exec(compile(src, "<bhsym-expr>", "exec"), env)
    raw = env["_f"]

    def call(*values):
        try:
            return raw(*values)
        except _Fail as f:
            raise DomainError(f"{f.what} in {order[f.index]}", order[f.index]) from None
        except ZeroDivisionError:
            raise DomainError("division by zero", e) from None

    per[key] = call
    return call


def evaluate(e: Expr, point: Mapping, digits: int = 30):
    """Evaluate ``e`` at ``point`` (symbol name -> number) with ``digits``
    significant decimal digits; returns an ``mpmath.mpf``."""
    if digits < 16:
        raise ValueError("digits must be at least 16")
    pt = {(k.value if isinstance(k, Expr) else k): v for k, v in point.items()}
    missing = e.free_symbols - set(pt)
    if missing:
        raise KeyError(f"unbound symbols: {sorted(missing)}")
    names = sorted(e.free_symbols)
    fn = compile_expr(e, names, "mpmath")
    with mpmath.workdps(digits + 5):
        vals = [_to_mpf(pt[n]) for n in names]
        r = fn(*vals)
        if isinstance(r, mpmath.mpc):
            raise DomainError("complex result", e)
        return +r


def _to_mpf(v):
    from fractions import Fraction

    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    if isinstance(v, Expr):
        if v.kind == CONST:
            return mpmath.mpf(v.value.numerator) / v.value.denominator
        return evaluate(v, {}, mpmath.mp.dps)
    return mpmath.mpf(v)


def lambdify(e: Expr, names: Sequence[str], backend: str = "numpy"):
    """Vectorized float function of ``names``; constants broadcast to shape."""
    fn = compile_expr(e, names, backend)
    if backend != "numpy":
        return fn

    def call(*arrays):
        with np.errstate(all="ignore"):
            r = fn(*arrays)
        if np.ndim(r) == 0 and arrays:
            shape = np.broadcast(*arrays).shape
            return np.full(shape, float(r))
        return r

    return call


def as_float(e: Expr, point: Mapping | None = None) -> float:
    point = point or {}
    names = sorted(e.free_symbols)
    fn = compile_expr(e, names, "float")
    pt = {(k.value if isinstance(k, Expr) else k): v for k, v in point.items()}
    return float(fn(*(float(pt[n]) for n in names)))


__all__ = ["compile_expr", "evaluate", "lambdify", "as_float", "DomainError"]
