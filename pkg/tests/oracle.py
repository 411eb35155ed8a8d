"""Independent reference computations with sympy, used only by the tests."""

import re

import sympy

from bhsym.exprcore import Expr, to_text

_FUNCS = {
    "ln": sympy.log, "exp": sympy.exp, "sin": sympy.sin, "cos": sympy.cos, "tan": sympy.tan,
    "sinh": sympy.sinh, "cosh": sympy.cosh, "tanh": sympy.tanh, "coth": sympy.coth, "sqrt": sympy.sqrt,
}


def to_sympy(e) -> sympy.Expr:
    text = to_text(e) if isinstance(e, Expr) else str(e)
    names = {n: _FUNCS.get(n) or sympy.Symbol(n) for n in re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text)}
    return sympy.parse_expr(text.replace("^", "**"), local_dict=names)


def is_identically_zero(expr) -> bool:
    e = sympy.simplify(expr)
    return e == 0 or sympy.simplify(e.rewrite(sympy.exp)) == 0
