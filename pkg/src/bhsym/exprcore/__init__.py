"""Minimal computer-algebra core: expression trees, parsing, calculus,
evaluation and zero testing."""

from .calculus import diff_n, differentiate, expand
from .evaluate import as_float, compile_expr, evaluate, lambdify
from .expr import (
    ONE,
    ZERO,
    DomainError,
    Expr,
    add,
    as_expr,
    const,
    cos,
    cosh,
    coth,
    div,
    exp,
    ln,
    mul,
    neg,
    normalize,
    power,
    sin,
    sinh,
    sqrt,
    sub,
    substitute,
    sym,
    symbols,
    tan,
    tanh,
)
from .parse import ParseError, parse_expression
from .printing import to_text
from .zerotest import INCONCLUSIVE, NONZERO, ZERO as ZERO_VERDICT, ZeroCertificate, is_zero

P = parse_expression

__all__ = [
    "ONE", "ZERO", "DomainError", "Expr", "add", "as_expr", "const", "cos", "cosh", "coth",
    "div", "exp", "ln", "mul", "neg", "normalize", "power", "sin", "sinh", "sqrt", "sub",
    "substitute", "sym", "symbols", "tan", "tanh", "ParseError", "parse_expression", "P",
    "to_text", "differentiate", "diff_n", "expand", "evaluate", "compile_expr", "lambdify",
    "as_float", "is_zero", "ZeroCertificate", "ZERO_VERDICT", "NONZERO", "INCONCLUSIVE",
]
