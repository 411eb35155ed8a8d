"""Text form of expressions; ``parse_expression`` reads it back unchanged."""

from __future__ import annotations

from fractions import Fraction

from .expr import ADD, CONST, MUL, POW, SYM, Expr


def _frac(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def _atomic(e: Expr) -> bool:
    if e.kind == SYM:
        return True
    if e.kind == CONST:
        return e.value.denominator == 1 and e.value >= 0
    return e.kind not in (ADD, MUL, POW)


def _factor_text(e: Expr) -> str:
    """Text of a factor with positive exponent, parenthesized for a product."""
    if e.kind == POW:
        return _pow_text(e.args[0], e.value)
    s = to_text(e)
    return s if _atomic(e) else f"({s})"


def _pow_text(base: Expr, q: Fraction) -> str:
    b = to_text(base)
    if not _atomic(base):
        b = f"({b})"
    if q.denominator == 1 and q > 0:
        return f"{b}^{q.numerator}"
    return f"{b}^({_frac(q)})"


def _product_text(e: Expr) -> str:
    """Text of a product whose rational coefficient is positive."""
    coeff = Fraction(1)
    fs = e.args if e.kind == MUL else (e,)
    num, den = [], []
    for f in fs:
        if f.kind == CONST:
            coeff *= f.value
        elif f.kind == POW and f.value < 0 and not f.args[0].kind == CONST:
            q = -f.value
            den.append(_factor_text(f.args[0]) if q == 1 else _pow_text(f.args[0], q))
        else:
            num.append(_factor_text(f))
    if coeff.numerator != 1 or not num:
        num.insert(0, str(coeff.numerator))
    top = "*".join(num)
    if coeff.denominator != 1:
        den.insert(0, str(coeff.denominator))
    if not den:
        return top
    bottom = den[0] if len(den) == 1 else "(" + "*".join(den) + ")"
    return f"{top}/{bottom}"


def _signed(e: Expr):
    """Return (negative?, text of |e|) for a term of a sum."""
    if e.kind == CONST:
        return e.value < 0, _frac(abs(e.value))
    if e.kind == MUL and e.args[0].kind == CONST and e.args[0].value < 0:
        c = -e.args[0].value
        rest = e.args[1:]
        if c == 1 and len(rest) == 1:
            return True, _product_text(rest[0]) if rest[0].kind == POW else _term_text(rest[0])
        from .expr import _make, const

        return True, _product_text(_make(MUL, (const(c),) + rest))
    return False, _term_text(e)


def _term_text(e: Expr) -> str:
    if e.kind in (MUL, POW):
        return _product_text(e)
    if e.kind == ADD:
        return f"({to_text(e)})"
    return to_text(e)


def to_text(e: Expr) -> str:
    kind = e.kind
    if kind == CONST:
        return _frac(e.value)
    if kind == SYM:
        return e.value
    if kind == ADD:
        parts = []
        for i, t in enumerate(e.args):
            negative, s = _signed(t)
            if i == 0:
                parts.append(f"-{s}" if negative else s)
            else:
                parts.append(f" - {s}" if negative else f" + {s}")
        return "".join(parts)
    if kind in (MUL, POW):
        negative, s = _signed(e)
        return f"-{s}" if negative else s
    return f"{kind}({to_text(e.args[0])})"
