"""Exact differentiation and the polynomial-style rewrites used by zero tests."""

from __future__ import annotations

from fractions import Fraction

from . import expr as E
from .expr import ADD, CONST, MUL, POW, SYM, Expr


def _dsym(s) -> str:
    if isinstance(s, Expr):
        if s.kind != SYM:
            raise TypeError("can only differentiate with respect to a symbol")
        return s.value
    return s


def differentiate(e: Expr, s) -> Expr:
    """Partial derivative of ``e`` with respect to symbol ``s``."""
    name = _dsym(s)
    return _d(e, name)


def _d(e: Expr, name: str) -> Expr:
    if name not in e.free_symbols:
        return E.ZERO
    cache = e._dcache
    if cache is not None:
        hit = cache.get(name)
        if hit is not None:
            return hit
    else:
        cache = e._dcache = {}
    r = _d_uncached(e, name)
    cache[name] = r
    return r


def _d_uncached(e: Expr, name: str) -> Expr:
    kind = e.kind
    if kind == SYM:
        return E.ONE
    if kind == ADD:
        return E.add(*(_d(t, name) for t in e.args))
    if kind == MUL:
        args = e.args
        out = []
        for i, f in enumerate(args):
            df = _d(f, name)
            if df.is_zero_const:
                continue
            out.append(E.mul(*args[:i], df, *args[i + 1:]))
        return E.add(*out)
    if kind == POW:
        b, q = e.args[0], e.value
        return E.mul(E.const(q), E.power(b, q - 1), _d(b, name))
    a = e.args[0]
    da = _d(a, name)
    if kind == "exp":
        return E.mul(e, da)
    if kind == "ln":
        return E.mul(da, E.power(a, -1))
    if kind == "sin":
        return E.mul(E.cos(a), da)
    if kind == "cos":
        return E.mul(E.MINUS_ONE, E.sin(a), da)
    if kind == "sinh":
        return E.mul(E.cosh(a), da)
    if kind == "cosh":
        return E.mul(E.sinh(a), da)
    if kind == "tanh":
        return E.mul(E.sub(E.ONE, E.power(e, 2)), da)
    if kind == "coth":
        # keeps the function set closed: no csch
        return E.mul(E.sub(E.ONE, E.power(e, 2)), da)
    raise ValueError(f"cannot differentiate node kind {kind!r}")


def diff_n(e: Expr, *names) -> Expr:
    for n in names:
        e = differentiate(e, n)
    return e


# rewrites ----------------------------------------------------------------------

def expand(e: Expr, limit: int | None = None) -> Expr:
    """Distribute products over sums and positive integer powers of sums.

    Raises ``OverflowError`` when an intermediate sum would exceed ``limit``
    terms.
    """
    memo: dict = {}

    def go(n: Expr) -> Expr:
        r = memo.get(n)
        if r is not None:
            return r
        kind = n.kind
        if kind in (CONST, SYM):
            r = n
        elif kind == ADD:
            r = E.add(*(go(t) for t in n.args))
        elif kind == MUL:
            r = _distribute([go(f) for f in n.args], limit)
        elif kind == POW:
            b = go(n.args[0])
            q = n.value
            if b.kind == ADD and q.denominator == 1 and q > 1:
                r = _distribute([b] * int(q), limit)
            else:
                r = E.power(b, q)
                if r.kind == MUL and r is not n:
                    r = go(r)
        else:
            r = E.func(kind, go(n.args[0]))
        memo[n] = r
        return r

    return go(e)


def _distribute(fs: list, limit) -> Expr:
    acc = [E.ONE]
    for f in fs:
        ts = f.args if f.kind == ADD else (f,)
        if len(ts) == 1:
            acc = [E.mul(a, ts[0]) for a in acc]
            continue
        if limit is not None and len(acc) * len(ts) > limit:
            raise OverflowError("expansion exceeds term limit")
        acc = [E.mul(a, t) for a in acc for t in ts]
        s = E.add(*acc)
        acc = list(s.args) if s.kind == ADD else [s]
    return E.add(*acc)


def rewrite_hyperbolic_quotients(e: Expr) -> Expr:
    """tanh -> sinh/cosh and coth -> cosh/sinh."""

    def fn(n: Expr) -> Expr:
        if n.kind == "tanh":
            a = n.args[0]
            return E.mul(E.sinh(a), E.power(E.cosh(a), -1))
        if n.kind == "coth":
            a = n.args[0]
            return E.mul(E.cosh(a), E.power(E.sinh(a), -1))
        return n

    return E.map_nodes(e, fn)


def rewrite_even_powers(e: Expr) -> Expr:
    """cos^2 -> 1 - sin^2 and cosh^2 -> 1 + sinh^2 inside positive powers."""

    def fn(n: Expr) -> Expr:
        if n.kind == POW and n.value.denominator == 1 and n.value >= 2:
            b = n.args[0]
            if b.kind in ("cos", "cosh"):
                k, odd = divmod(int(n.value), 2)
                s2 = E.power(E.sin(b.args[0]) if b.kind == "cos" else E.sinh(b.args[0]), 2)
                sq = E.sub(E.ONE, s2) if b.kind == "cos" else E.add(E.ONE, s2)
                return E.mul(E.power(sq, k), b if odd else E.ONE)
        return n

    return E.map_nodes(e, fn)


def numerator_over_lcd(e: Expr) -> Expr:
    """Numerator of an expanded sum after bringing terms to a common denominator.

    Denominator factors are the negative-exponent powers of each term.  The
    result vanishes exactly when ``e`` does (wherever the denominators are
    nonzero).
    """
    ts = E.terms(e)
    split = []
    lcd: dict = {}
    for t in ts:
        num, den = [], {}
        for f in E.factors(t):
            if f.kind == POW and f.value < 0 and f.args[0].kind != CONST:
                den[f.args[0]] = -f.value
            else:
                num.append(f)
        split.append((num, den))
        for b, q in den.items():
            if lcd.get(b, 0) < q:
                lcd[b] = q
    if not lcd:
        return e
    out = []
    for num, den in split:
        extra = [E.power(b, q - den.get(b, Fraction(0))) for b, q in lcd.items()]
        out.append(E.mul(*num, *extra))
    return E.add(*out)
