"""Immutable, hash-consed expression trees kept in normal form.

Every node is built through the smart constructors below (``add``, ``mul``,
``power``, ``func``), so a tree is normalized by construction: sums and
products are flattened, like terms and like factors are merged, rational
constants are folded and stored in lowest terms, and children of sums and
products are sorted under a fixed total order.  Nodes are interned, which
makes structural equality the same thing as identity.
"""

from __future__ import annotations

import threading
import weakref
from fractions import Fraction
from typing import Iterable, Mapping, Union

CONST = "const"
SYM = "sym"
ADD = "add"
MUL = "mul"
POW = "pow"
FUNCTIONS = ("exp", "ln", "sin", "cos", "sinh", "cosh", "tanh", "coth")

_RANK = {CONST: 0, SYM: 1, POW: 2, MUL: 3, ADD: 4}
for _i, _name in enumerate(FUNCTIONS):
    _RANK[_name] = 5 + _i

Number = Union[int, Fraction]


class DomainError(ArithmeticError):
    """Raised when an expression is undefined (``ln`` of a non-positive
    number, division by zero, fractional power of a negative number).

    ``subtree`` holds the offending node when it is known.
    """

    def __init__(self, message: str, subtree: "Expr | None" = None):
        super().__init__(message)
        self.subtree = subtree


class Expr:
    __slots__ = ("kind", "args", "value", "_key", "_free", "_size", "_dcache", "__weakref__")

    kind: str
    args: tuple
    value: object

    def __init__(self, kind, args, value):
        self.kind = kind
        self.args = args
        self.value = value
        self._key = None
        self._free = None
        self._size = None
        self._dcache = None

    # structural ordering -------------------------------------------------
    def sort_key(self):
        k = self._key
        if k is None:
            kind = self.kind
            if kind == CONST:
                k = (0, self.value)
            elif kind == SYM:
                k = (1, self.value)
            elif kind == POW:
                k = (2, self.args[0].sort_key(), self.value)
            else:
                k = (_RANK[kind], tuple(a.sort_key() for a in self.args))
            self._key = k
        return k

    @property
    def free_symbols(self) -> frozenset:
        fs = self._free
        if fs is None:
            if self.kind == SYM:
                fs = frozenset((self.value,))
            elif self.kind == CONST:
                fs = frozenset()
            elif len(self.args) == 1:
                fs = self.args[0].free_symbols
            else:
                fs = frozenset().union(*(a.free_symbols for a in self.args))
            self._free = fs
        return fs

    @property
    def size(self) -> int:
        s = self._size
        if s is None:
            s = 1 + sum(a.size for a in self.args)
            self._size = s
        return s

    @property
    def is_const(self) -> bool:
        return self.kind == CONST

    @property
    def is_zero_const(self) -> bool:
        return self.kind == CONST and self.value == 0

    @property
    def base(self) -> "Expr":
        return self.args[0]

    @property
    def arg(self) -> "Expr":
        return self.args[0]

    # arithmetic sugar -----------------------------------------------------
    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return add(self, neg(as_expr(other)))

    def __rsub__(self, other):
        return add(as_expr(other), neg(self))

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return mul(self, power(as_expr(other), -1))

    def __rtruediv__(self, other):
        return mul(as_expr(other), power(self, -1))

    def __neg__(self):
        return neg(self)

    def __pow__(self, other):
        if isinstance(other, Expr):
            if other.kind != CONST:
                return exp(mul(other, ln(self)))
            other = other.value
        return power(self, other)

    def __str__(self):
        from .printing import to_text

        return to_text(self)

    def __repr__(self):
        return f"Expr({str(self)!r})"

    def __reduce__(self):
        from .printing import to_text

        return (_from_text, (to_text(self),))


def _from_text(text):
    from .parse import parse_expression

    return parse_expression(text)


# interning -------------------------------------------------------------------

_TABLE: "weakref.WeakValueDictionary" = weakref.WeakValueDictionary()
_LOCK = threading.Lock()


def _make(kind: str, args: tuple = (), value=None) -> Expr:
    key = (kind, value, tuple(id(a) for a in args))
    node = _TABLE.get(key)
    if node is not None:
        return node
    with _LOCK:
        node = _TABLE.get(key)
        if node is None:
            node = Expr(kind, args, value)
            _TABLE[key] = node
    return node


def const(value: Number) -> Expr:
    v = Fraction(value)
    return _make(CONST, (), v)


def sym(name: str) -> Expr:
    if not isinstance(name, str) or not name:
        raise ValueError("symbol name must be a non-empty string")
    return _make(SYM, (), name)


def symbols(names: str) -> tuple:
    return tuple(sym(n) for n in names.replace(",", " ").split())


def as_expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction)):
        return const(x)
    if isinstance(x, float):
        return const(Fraction(x))
    if isinstance(x, str):
        from .parse import parse_expression

        return parse_expression(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Expr")


ZERO = const(0)
ONE = const(1)
MINUS_ONE = const(-1)


# sums --------------------------------------------------------------------------

def _split_coeff(t: Expr):
    """Split a term into (rational coefficient, monomial)."""
    if t.kind == MUL and t.args[0].kind == CONST:
        rest = t.args[1:]
        return t.args[0].value, rest[0] if len(rest) == 1 else _make(MUL, rest)
    return Fraction(1), t


def _with_coeff(c: Fraction, m: Expr) -> Expr:
    if c == 1:
        return m
    if m.kind == MUL:
        return _make(MUL, (const(c),) + m.args)
    return _make(MUL, (const(c), m))


def add(*terms) -> Expr:
    acc: dict = {}
    constant = Fraction(0)
    stack = list(terms)
    while stack:
        t = stack.pop()
        if not isinstance(t, Expr):
            t = as_expr(t)
        kind = t.kind
        if kind == ADD:
            stack.extend(t.args)
        elif kind == CONST:
            constant += t.value
        else:
            c, m = _split_coeff(t)
            prev = acc.get(m)
            acc[m] = c if prev is None else prev + c
    items = [_with_coeff(c, m) for m, c in acc.items() if c != 0]
    if constant != 0:
        items.append(const(constant))
    if not items:
        return ZERO
    if len(items) == 1:
        return items[0]
    items.sort(key=_add_key)
    return _make(ADD, tuple(items))


def _add_key(t: Expr):
    # constants sort last inside sums
    k = t.sort_key()
    return (k[0] == 0, k)


def neg(e: Expr) -> Expr:
    return mul(MINUS_ONE, e)


def sub(a, b) -> Expr:
    return add(a, neg(as_expr(b)))


# products ----------------------------------------------------------------------

def mul(*factors) -> Expr:
    coeff = Fraction(1)
    powers: dict = {}
    exp_args: list = []
    stack = list(factors)
    while stack:
        f = stack.pop()
        if not isinstance(f, Expr):
            f = as_expr(f)
        kind = f.kind
        if kind == CONST:
            if f.value == 0:
                return ZERO
            coeff *= f.value
        elif kind == MUL:
            stack.extend(f.args)
        elif kind == "exp":
            exp_args.append(f.args[0])
        elif kind == POW:
            b = f.args[0]
            powers[b] = powers.get(b, 0) + f.value
        else:
            powers[f] = powers.get(f, 0) + 1

    out = []
    redo = []
    for b, q in powers.items():
        if q == 0:
            continue
        r = power(b, q)
        if r.kind in (CONST, MUL, "exp"):
            redo.append(r)
        else:
            out.append(r)
    if exp_args:
        r = exp(add(*exp_args))
        if r.kind == "exp":
            out.append(r)
        else:
            redo.append(r)
    if redo:
        # merged powers produced something that needs another pass
        return mul(const(coeff), *out, *redo)
    if not out:
        return const(coeff)
    if coeff != 1 and len(out) == 1 and out[0].kind == ADD:
        # a rational multiple of a single sum is distributed so that c*(a + b) - c*a cancels
        return add(*(mul(const(coeff), t) for t in out[0].args))
    out.sort(key=Expr.sort_key)
    if coeff == 1:
        if len(out) == 1:
            return out[0]
        return _make(MUL, tuple(out))
    return _make(MUL, (const(coeff),) + tuple(out))


def div(a, b) -> Expr:
    return mul(as_expr(a), power(as_expr(b), -1))


# powers ------------------------------------------------------------------------

def _int_root(n: int, k: int):
    """Exact k-th root of a non-negative integer, or None."""
    if n < 2:
        return n
    r = round(n ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    # float guess can be off for large n
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid**k
        if p == n:
            return mid
        if p < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def _const_power(c: Fraction, q: Fraction) -> Expr:
    if q.denominator == 1:
        if c == 0 and q < 0:
            raise DomainError("division by zero", ZERO)
        return const(c ** int(q))
    if c < 0:
        raise DomainError(f"fractional power of negative constant {c}", const(c))
    if c == 0:
        return ZERO
    if c == 1:
        return ONE
    k = q.denominator
    rn, rd = _int_root(c.numerator, k), _int_root(c.denominator, k)
    if rn is not None and rd is not None:
        return const(Fraction(rn, rd) ** q.numerator)
    whole = q.numerator // q.denominator
    frac = q - whole
    node = _make(POW, (const(c),), frac)
    if whole == 0:
        return node
    return _make(MUL, (const(c**whole), node))


def power(b, q) -> Expr:
    if not isinstance(b, Expr):
        b = as_expr(b)
    q = Fraction(q)
    if q == 0:
        return ONE
    if q == 1:
        return b
    kind = b.kind
    if kind == CONST:
        return _const_power(b.value, q)
    if kind == POW:
        inner = b.value
        # (x^2)^(1/2) is |x|, every other combination is valid where defined
        if q.denominator == 1 or not (inner.denominator == 1 and inner.numerator % 2 == 0):
            return power(b.args[0], inner * q)
        return _make(POW, (b,), q)
    if kind == MUL:
        if q.denominator == 1:
            return mul(*(power(f, q) for f in b.args))
        head = b.args[0]
        if head.kind == CONST and head.value > 0:
            rest = b.args[1:]
            rest_e = rest[0] if len(rest) == 1 else _make(MUL, rest)
            return mul(_const_power(head.value, q), power(rest_e, q))
        return _make(POW, (b,), q)
    if kind == "exp":
        return exp(mul(const(q), b.args[0]))
    return _make(POW, (b,), q)


def sqrt(e) -> Expr:
    return power(as_expr(e), Fraction(1, 2))


# elementary functions ----------------------------------------------------------

def _ln_part(t: Expr):
    """If ``t`` is ``c*ln(z)`` with rational c, return (c, z)."""
    if t.kind == "ln":
        return Fraction(1), t.args[0]
    if t.kind == MUL and len(t.args) == 2 and t.args[0].kind == CONST and t.args[1].kind == "ln":
        return t.args[0].value, t.args[1].args[0]
    return None


def exp(a) -> Expr:
    a = as_expr(a)
    if a.kind == CONST and a.value == 0:
        return ONE
    lp = _ln_part(a)
    if lp is not None:
        return power(lp[1], lp[0])
    if a.kind == ADD:
        pulled, rest = [], []
        for t in a.args:
            lp = _ln_part(t)
            if lp is None:
                rest.append(t)
            else:
                pulled.append(power(lp[1], lp[0]))
        if pulled:
            return mul(*pulled, exp(add(*rest)))
    return _make("exp", (a,))


def ln(a) -> Expr:
    a = as_expr(a)
    if a.kind == CONST:
        if a.value <= 0:
            raise DomainError(f"ln of non-positive constant {a.value}", a)
        if a.value == 1:
            return ZERO
    elif a.kind == "exp":
        return a.args[0]
    elif a.kind == POW:
        return mul(const(a.value), ln(a.args[0]))
    return _make("ln", (a,))


def _odd(name):
    def build(a) -> Expr:
        a = as_expr(a)
        if a.kind == CONST and a.value == 0:
            return ZERO
        return _make(name, (a,))

    build.__name__ = name
    return build


def _even(name):
    def build(a) -> Expr:
        a = as_expr(a)
        if a.kind == CONST and a.value == 0:
            return ONE
        return _make(name, (a,))

    build.__name__ = name
    return build


sin = _odd("sin")
sinh = _odd("sinh")
tanh = _odd("tanh")
cos = _even("cos")
cosh = _even("cosh")


def coth(a) -> Expr:
    a = as_expr(a)
    if a.kind == CONST and a.value == 0:
        raise DomainError("coth(0) is undefined", a)
    return _make("coth", (a,))


def tan(a) -> Expr:
    a = as_expr(a)
    return mul(sin(a), power(cos(a), -1))


_BUILDERS = {
    "exp": exp,
    "ln": ln,
    "sin": sin,
    "cos": cos,
    "sinh": sinh,
    "cosh": cosh,
    "tanh": tanh,
    "coth": coth,
}


def func(name: str, a) -> Expr:
    try:
        return _BUILDERS[name](a)
    except KeyError:
        raise ValueError(f"unknown function {name!r}") from None


# structural rebuilds -------------------------------------------------------------

def rebuild(e: Expr, children: Iterable[Expr]) -> Expr:
    """Rebuild a node of the same kind from new children (normalizing)."""
    kind = e.kind
    if kind in (CONST, SYM):
        return e
    ch = list(children)
    if kind == ADD:
        return add(*ch)
    if kind == MUL:
        return mul(*ch)
    if kind == POW:
        return power(ch[0], e.value)
    return func(kind, ch[0])


def normalize(e: Expr) -> Expr:
    """Rebuild ``e`` bottom-up through the smart constructors.

    Trees produced by this package are already normal, so this is the
    identity on them; it exists for trees assembled by hand from raw nodes.
    """
    memo: dict = {}

    def go(n: Expr) -> Expr:
        r = memo.get(n)
        if r is None:
            r = n if n.kind in (CONST, SYM) else rebuild(n, [go(c) for c in n.args])
            memo[n] = r
        return r

    return go(e)


def substitute(e: Expr, bindings: Mapping) -> Expr:
    """Simultaneous substitution of symbols (by name or symbol node)."""
    table = {}
    for k, v in bindings.items():
        name = k.value if isinstance(k, Expr) else k
        table[name] = as_expr(v)
    if not table:
        return e
    keys = frozenset(table)
    memo: dict = {}

    def go(n: Expr) -> Expr:
        if n.kind == SYM:
            return table.get(n.value, n)
        if n.kind == CONST or not (n.free_symbols & keys):
            return n
        r = memo.get(n)
        if r is None:
            r = rebuild(n, [go(c) for c in n.args])
            memo[n] = r
        return r

    return go(e)


def map_nodes(e: Expr, fn) -> Expr:
    """Bottom-up rewrite: ``fn`` receives each rebuilt node and may replace it."""
    memo: dict = {}

    def go(n: Expr) -> Expr:
        r = memo.get(n)
        if r is None:
            if n.kind in (CONST, SYM):
                r = fn(n)
            else:
                r = fn(rebuild(n, [go(c) for c in n.args]))
            memo[n] = r
        return r

    return go(e)


def terms(e: Expr) -> tuple:
    return e.args if e.kind == ADD else (e,)


def factors(e: Expr) -> tuple:
    return e.args if e.kind == MUL else (e,)


def coefficient_split(e: Expr):
    return _split_coeff(e)
