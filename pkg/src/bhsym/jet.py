"""Jet-space machinery: derivative coordinates, total derivatives,
characteristic-based prolongation and restriction to solutions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .exprcore import Expr, add, as_expr, differentiate, mul, sym
from .exprcore.expr import SYM


class JetOrderError(ValueError):
    """A derivative coordinate above the space's order cap was requested."""

    def __init__(self, message: str, coordinate=None):
        super().__init__(message)
        self.coordinate = coordinate


class JetCoordinate(NamedTuple):
    """Multi-index (n_x, n_y, n_t) of a derivative of u."""

    nx: int = 0
    ny: int = 0
    nt: int = 0

    @property
    def order(self) -> int:
        return self.nx + self.ny + self.nt

    @property
    def name(self) -> str:
        return U.name(self)

    @property
    def symbol(self) -> Expr:
        return U.symbol(self)

    @classmethod
    def of(cls, letters: str) -> "JetCoordinate":
        """``JetCoordinate.of("xxy")`` -> (2, 1, 0)."""
        return cls(letters.count("x"), letters.count("y"), letters.count("t"))


class JetSpace:
    """Derivative coordinates of one dependent variable.

    Coordinates are named ``<dep>_<letters>`` (``u_xxy``), the bare dependent
    name for order zero.  ``chains`` gives derivatives of extra symbols that
    are functions of the independents, e.g. ``{"f1": {"x": f2}}``.
    """

    def __init__(self, dependent: str = "u", independents: Iterable[str] = ("x", "y", "t"),
                 max_order: int = 5, chains: Mapping | None = None):
        self.dependent = dependent
        self.independents = tuple(independents)
        if any(len(v) != 1 for v in self.independents):
            raise ValueError("independent variable names must be single letters")
        self.max_order = max_order
        self.chains = {k: {d: as_expr(v) for d, v in rules.items()} for k, rules in (chains or {}).items()}
        self._names: dict = {}
        self._parsed: dict = {}
        self._prefix = dependent + "_"
        self._zero = (0,) * len(self.independents)

    def with_chains(self, chains: Mapping) -> "JetSpace":
        merged = {**self.chains, **chains}
        return JetSpace(self.dependent, self.independents, self.max_order, merged)

    def name(self, multi) -> str:
        multi = tuple(multi)
        n = self._names.get(multi)
        if n is None:
            letters = "".join(v * k for v, k in zip(self.independents, multi))
            n = self.dependent if not letters else self._prefix + letters
            self._names[multi] = n
        return n

    def symbol(self, multi) -> Expr:
        return sym(self.name(multi))

    def parse(self, name: str):
        """Multi-index of a coordinate name, or None if it is not a jet."""
        try:
            return self._parsed[name]
        except KeyError:
            pass
        m = None
        if name == self.dependent:
            m = self._zero
        elif name.startswith(self._prefix):
            letters = name[len(self._prefix):]
            if letters and all(c in self.independents for c in letters):
                idx = [self.independents.index(c) for c in letters]
                if idx == sorted(idx):
                    m = tuple(letters.count(v) for v in self.independents)
        if m is not None and len(m) == 3 and self.independents == ("x", "y", "t"):
            m = JetCoordinate(*m)
        self._parsed[name] = m
        return m

    def unit(self, var: str) -> tuple:
        k = self.independents.index(var)
        return tuple(1 if i == k else 0 for i in range(len(self.independents)))

    def shift(self, multi, var: str):
        k = self.independents.index(var)
        out = list(multi)
        out[k] += 1
        if sum(out) > self.max_order:
            raise JetOrderError(
                f"derivative {self.name(out)} exceeds order cap {self.max_order}", tuple(out))
        return type(multi)(*out) if isinstance(multi, JetCoordinate) else tuple(out)

    def jets_in(self, e: Expr) -> dict:
        out = {}
        for n in e.free_symbols:
            m = self.parse(n)
            if m is not None:
                out[n] = m
        return out

    def order_of(self, e: Expr) -> int:
        return max((sum(m) for m in self.jets_in(e).values()), default=-1)

    def total_derivative(self, e: Expr, var: str) -> Expr:
        """D_var e = partial_var e + sum_J u_{J+var} de/du_J (+ chain terms)."""
        if var not in self.independents:
            raise ValueError(f"{var!r} is not an independent variable")
        parts = [differentiate(e, var)]
        for n in e.free_symbols:
            m = self.parse(n)
            if m is not None:
                de = differentiate(e, n)
                if not de.is_zero_const:
                    parts.append(mul(self.symbol(self.shift(m, var)), de))
            else:
                rule = self.chains.get(n)
                if rule is not None and var in rule:
                    parts.append(mul(rule[var], differentiate(e, n)))
        return add(*parts)

    def explicit_partial(self, e: Expr, var: str) -> Expr:
        """Partial derivative holding jets fixed, with chain rules applied."""
        parts = [differentiate(e, var)]
        for n in e.free_symbols:
            rule = self.chains.get(n)
            if rule is not None and var in rule:
                parts.append(mul(rule[var], differentiate(e, n)))
        return add(*parts)

    def derive(self, e: Expr, multi) -> Expr:
        for var, k in zip(self.independents, multi):
            for _ in range(k):
                e = self.total_derivative(e, var)
        return e


U = JetSpace()


def total_derivative(e: Expr, direction: str, space: JetSpace = U) -> Expr:
    return space.total_derivative(e, direction)


@dataclass(frozen=True)
class PointSymmetryCandidate:
    """Infinitesimals (xi, phi, tau, zeta) of xi d_x + phi d_y + tau d_t + zeta d_u."""

    xi: Expr
    phi: Expr
    tau: Expr
    zeta: Expr
    name: str = ""

    def __post_init__(self):
        for part in ("xi", "phi", "tau", "zeta"):
            v = as_expr(getattr(self, part))
            object.__setattr__(self, part, v)
            bad = [n for n, m in U.jets_in(v).items() if sum(m) >= 1]
            if bad:
                raise ValueError(f"{part} contains derivative coordinates {sorted(bad)}")

    @classmethod
    def from_text(cls, xi="0", phi="0", tau="0", zeta="0", name="") -> "PointSymmetryCandidate":
        return cls(as_expr(xi), as_expr(phi), as_expr(tau), as_expr(zeta), name)

    @property
    def components(self) -> tuple:
        return (self.xi, self.phi, self.tau, self.zeta)

    def act(self, g: Expr) -> Expr:
        """X(g) for a function g of (x, y, t, u)."""
        return add(
            mul(self.xi, differentiate(g, "x")),
            mul(self.phi, differentiate(g, "y")),
            mul(self.tau, differentiate(g, "t")),
            mul(self.zeta, differentiate(g, "u")),
        )

    def is_null(self) -> bool:
        return all(c.is_zero_const for c in self.components)


@dataclass(frozen=True)
class CharacteristicForm:
    Q: Expr


def characteristic(X: PointSymmetryCandidate) -> CharacteristicForm:
    """Q = zeta - xi u_x - phi u_y - tau u_t."""
    q = add(
        X.zeta,
        mul(-1, X.xi, sym("u_x")),
        mul(-1, X.phi, sym("u_y")),
        mul(-1, X.tau, sym("u_t")),
    )
    return CharacteristicForm(q)


@dataclass
class Prolongation:
    """Prolongation coefficients eta^J of one candidate, with memoized D_J Q."""

    X: PointSymmetryCandidate
    space: JetSpace = field(default=U)

    def __post_init__(self):
        self._dq = {(0, 0, 0): characteristic(self.X).Q}
        self._eta: dict = {}

    def _DQ(self, J) -> Expr:
        J = tuple(J)
        hit = self._dq.get(J)
        if hit is not None:
            return hit
        for k, var in enumerate(self.space.independents):
            if J[k] > 0:
                prev = list(J)
                prev[k] -= 1
                r = self.space.total_derivative(self._DQ(prev), var)
                break
        self._dq[J] = r
        return r

    def coefficient(self, J) -> Expr:
        J = JetCoordinate(*J)
        if J.order > 4:
            raise JetOrderError(f"prolongation only to order 4, got {J.name}", tuple(J))
        hit = self._eta.get(J)
        if hit is not None:
            return hit
        sp = self.space
        if J.order == 0:
            r = self.X.zeta
        else:
            r = add(
                self._DQ(J),
                mul(self.X.xi, sp.symbol(sp.shift(J, "x"))),
                mul(self.X.phi, sp.symbol(sp.shift(J, "y"))),
                mul(self.X.tau, sp.symbol(sp.shift(J, "t"))),
            )
        self._eta[J] = r
        return r


def prolongation_coefficient(X: PointSymmetryCandidate, J) -> Expr:
    """eta^J = D_J Q + xi u_{J+x} + phi u_{J+y} + tau u_{J+t}."""
    if isinstance(J, str):
        J = JetCoordinate.of(J)
    return Prolongation(X).coefficient(J)


def apply_prolonged(X: PointSymmetryCandidate, F: Expr, prolongation: Prolongation | None = None,
                    space: JetSpace = U) -> Expr:
    """X^[4] F for F of order at most 4."""
    pr = prolongation or Prolongation(X, space)
    jets = space.jets_in(F)
    if any(sum(m) > 4 for m in jets.values()):
        raise JetOrderError("apply_prolonged needs an expression of order at most 4")
    parts = [
        mul(X.xi, space.explicit_partial(F, "x")),
        mul(X.phi, space.explicit_partial(F, "y")),
        mul(X.tau, space.explicit_partial(F, "t")),
    ]
    for name, m in jets.items():
        dF = differentiate(F, name)
        if dF.is_zero_const:
            continue
        parts.append(mul(pr.coefficient(m), dF))
    return add(*parts)


def restrict_to_solutions(e: Expr, rhs: Expr, space: JetSpace = U, time: str = "t") -> Expr:
    """Replace every t-derivative coordinate using u_t = rhs and its total
    derivatives; the result holds spatial coordinates only."""
    kt = space.independents.index(time)
    if any(m[kt] for m in space.jets_in(rhs).values()):
        raise ValueError("rhs must not contain time derivatives")
    images: dict = {}

    def image(m) -> Expr:
        m = tuple(m)
        hit = images.get(m)
        if hit is not None:
            return hit
        if m[kt] == 0:
            return space.symbol(m)
        if sum(m) == 1:
            r = rhs
        else:
            for k, var in enumerate(space.independents):
                if k != kt and m[k] > 0:
                    prev = list(m)
                    prev[k] -= 1
                    r = space.total_derivative(image(prev), var)
                    break
            else:
                prev = list(m)
                prev[kt] -= 1
                r = _replace_t(space.total_derivative(image(prev), time))
        images[m] = r
        return r

    def _replace_t(x: Expr) -> Expr:
        from .exprcore import substitute

        table = {n: image(m) for n, m in space.jets_in(x).items() if m[kt] > 0}
        return substitute(x, table) if table else x

    return _replace_t(e)


def collect_jet_monomials(e: Expr, *spaces: JetSpace, include_order_zero: bool = False,
                          limit: int = 10**6) -> dict:
    """Expand ``e`` and group it by products of derivative coordinates.

    Returns monomial -> coefficient (both Expr); the key ``1`` holds the
    jet-free part.  Order-zero coordinates (u itself) stay in the
    coefficient unless ``include_order_zero`` is set.
    """
    from .exprcore.calculus import expand
    from .exprcore.expr import factors, terms

    spaces = spaces or (U,)

    def is_jet(name: str) -> bool:
        for sp in spaces:
            m = sp.parse(name)
            if m is not None and (include_order_zero or sum(m) > 0):
                return True
        return False

    groups: dict = {}
    for term in terms(expand(e, limit)):
        jets, rest = [], []
        for fct in factors(term):
            base = fct.args[0] if fct.kind == "pow" else fct
            (jets if base.kind == SYM and is_jet(base.value) else rest).append(fct)
        groups.setdefault(mul(*jets), []).append(mul(*rest))
    out = {}
    for k, v in groups.items():
        c = add(*v)
        if not c.is_zero_const:
            out[k] = c
    return out


def jet_symbol(letters: str) -> Expr:
    """``jet_symbol("xxy")`` -> u_xxy; ``jet_symbol("")`` -> u."""
    return U.symbol(JetCoordinate.of(letters))


def is_spatial(e: Expr, space: JetSpace = U, time: str = "t") -> bool:
    kt = space.independents.index(time)
    return not any(m[kt] for m in space.jets_in(e).values())


__all__ = [
    "JetOrderError", "JetCoordinate", "JetSpace", "U", "total_derivative",
    "PointSymmetryCandidate", "CharacteristicForm", "characteristic", "Prolongation",
    "prolongation_coefficient", "apply_prolonged", "restrict_to_solutions", "jet_symbol",
    "is_spatial", "collect_jet_monomials",
]
