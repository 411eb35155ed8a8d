"""Similarity reductions of u_t = L^2 u under three subalgebras, derived by
direct substitution, with term-level comparison against reference forms,
and the closed-form solutions built from the translation reduction.

Reduced equations live on new independents: ``h`` plays eta (= x), ``v``
plays upsilon, and ``r`` the single variable of the last stage.  A reduced
equation is stored as two sides, ``time_side = operator_side``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from .exprcore import (
    Expr,
    ZeroCertificate,
    add,
    as_expr,
    differentiate,
    div,
    exp,
    expand,
    is_zero,
    mul,
    neg,
    parse_expression,
    sub,
    substitute,
    sym,
    to_text,
)
from .jet import JetSpace, collect_jet_monomials
from .operator import SurfaceOperator, specialize

PHI = JetSpace("phi", ("h", "v"), max_order=8)
PSI = JetSpace("psi", ("h",), max_order=8)
W = JetSpace("w", ("r",), max_order=8)

SUBALGEBRAS = ("translation", "scaling", "two-dim")

# Reference forms as (time side, operator side); kept only for diffing.
PRINTED_FORMS = {
    "translation.two_variable": (
        "-phi_v/a",
        "phi_hhhh + (f3 + f1*f2)*phi_h + (2*f2 + f1^2)*phi_hh + 2*f1*phi_hhh"
        " - 2*e2f*(f2 - f1^2)*phi_vv + e2f^2*phi_vvvv",
    ),
    "translation.ode": (
        "-c1/a",
        "psi_hhhh + (f3 + f1*f2)*psi_h + (2*f2 + f1^2)*psi_hh + 2*f1*psi_hhh",
    ),
    "scaling.transformed": (
        "b/a",
        "2*phi_h*phi_hhh + 2*phi_hh^2 + phi_hhhh + (f3 + f1*f2)*phi_h"
        " + (2*f2 + f1^2)*(phi_h^2 + phi_hh) + 2*f1*(2*phi_h*phi_hh + phi_hhh)"
        " - 2*e2f*(f2 - f1^2)*(phi_v^2 + phi_vv) - 2*f1*e2f*(2*phi_h*phi_v*phi_vv + phi_vvv)"
        " + 2*e2f*(2*phi_hh*phi_vv + 2*phi_h^2*phi_vv + 2*phi_h*phi_vvv)"
        " + e2f^2*(2*phi_v*phi_vvv + phi_vvvv)",
    ),
    "two-dim.stage1": (
        "phi_v",
        "phi_hhhh + (f3 + f1*f2)*phi_h + (2*f2 + f1^2)*phi_hh + 2*f1*phi_hhh",
    ),
    "two-dim.stage2": (
        "b/a",
        "w_rrrr + 4*w_r*w_rrr + 3*w_r^2*w_rr + w_r^4 + (f3 + f1*f2)*w_r"
        " + (2*f2 + f1^2)*(w_rr + w_r^2) + 2*f1*(w_rrr + 3*w_r*w_rr + w_r^3)",
    ),
}


class ReductionError(ValueError):
    """Invalid subalgebra coefficients or an unknown example."""


@dataclass(frozen=True)
class Equation:
    time_side: Expr
    operator_side: Expr

    @property
    def residual(self) -> Expr:
        """operator side minus time side; zero on solutions."""
        return sub(self.operator_side, self.time_side)

    def to_text(self) -> str:
        return f"{to_text(self.time_side)} = {to_text(self.operator_side)}"

    def map(self, fn: Callable[[Expr], Expr]) -> "Equation":
        return Equation(fn(self.time_side), fn(self.operator_side))


@dataclass(frozen=True)
class TermDiff:
    """One jet monomial whose coefficient differs between derived and printed.

    ``kind`` is ``missing`` (absent from the printed form), ``spurious``
    (only in the printed form) or ``mismatch``.
    """

    monomial: str
    kind: str
    derived: Expr | None
    printed: Expr | None

    @property
    def difference(self) -> Expr:
        zero = as_expr(0)
        return sub(self.derived or zero, self.printed or zero)

    def to_dict(self) -> dict:
        return {
            "monomial": self.monomial,
            "kind": self.kind,
            "derived": None if self.derived is None else to_text(self.derived),
            "printed": None if self.printed is None else to_text(self.printed),
        }


@dataclass(frozen=True)
class ReductionStep:
    name: str
    derived: Equation
    printed: Equation | None
    diff: tuple = ()
    space: JetSpace = PHI

    @property
    def matches(self) -> bool:
        return not self.diff

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "derived": self.derived.to_text(),
            "printed": None if self.printed is None else self.printed.to_text(),
            "matches_printed": self.matches,
            "term_diff": [d.to_dict() for d in self.diff],
        }


@dataclass(frozen=True)
class ReductionResult:
    subalgebra: str
    coefficients: Mapping
    similarity: Mapping
    template: Expr
    steps: tuple
    f: Expr | None = None
    multiplier: Expr = field(default_factory=lambda: as_expr(1))

    @property
    def reduced(self) -> Equation:
        return self.steps[-1].derived

    def step(self, name: str) -> ReductionStep:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "subalgebra": self.subalgebra,
            "coefficients": {k: to_text(as_expr(v)) for k, v in self.coefficients.items()},
            "profile": "abstract" if self.f is None else to_text(self.f),
            "similarity_variables": {k: to_text(v) for k, v in self.similarity.items()},
            "template": to_text(self.template),
            "steps": [s.to_dict() for s in self.steps],
        }


def _coefficient(value, name: str, nonzero: bool) -> Expr:
    if value is None:
        return sym(name)
    e = as_expr(value)
    if nonzero and e.is_zero_const:
        raise ReductionError(f"subalgebra coefficient {name} must be nonzero")
    return e


def _hints(op: SurfaceOperator, var: str, extra: Mapping | None = None) -> dict:
    hints = {"a": (0.5, 2.0), "b": (0.5, 2.0)}
    if op.domain is not None:
        hints[var] = op.domain
    hints.update(extra or {})
    return hints


def _pulled_back_derivative(op: SurfaceOperator, similarity: Mapping) -> Callable:
    """Total derivative in x, y or t of expressions in x, y, t and the phi jets,
    where phi is evaluated at the similarity variables."""
    grads = {var: {k: differentiate(s, var) for k, s in similarity.items()} for var in ("x", "y", "t")}

    def D(e: Expr, var: str) -> Expr:
        parts = [op.space.explicit_partial(e, var)]
        for n, m in PHI.jets_in(e).items():
            de = differentiate(e, n)
            if de.is_zero_const:
                continue
            for k, g in grads[var].items():
                if not g.is_zero_const:
                    parts.append(mul(g, PHI.symbol(PHI.shift(m, k)), de))
        return add(*parts)

    return D


def pullback(op: SurfaceOperator, template: Expr, similarity: Mapping, inverse: Mapping,
             multiplier: Expr | None = None) -> Equation:
    """Substitute u = template(x, y, t, phi(h, v)) with (h, v) = similarity into
    u_t = L^2 u, scale both sides by ``multiplier`` and rewrite x, y, t through
    ``inverse`` (a map from x, y, t to expressions in h, v and what remains)."""
    D = _pulled_back_derivative(op, similarity)

    def lap(F):
        Fx = D(F, "x")
        return add(mul(op.fp, Fx), D(Fx, "x"), mul(op.e2f, D(D(F, "y"), "y")))

    time_side = D(template, "t")
    operator_side = lap(lap(template))
    eq = Equation(time_side, operator_side)
    if multiplier is not None:
        eq = eq.map(lambda s: expand(mul(multiplier, s), 10**7))
    return eq.map(lambda s: expand(substitute(s, inverse), 10**7))


def apply_ansatz(eq: Equation, template: Expr, d_h: Callable, d_v: Callable,
                 multiplier: Expr | None = None) -> Equation:
    """Replace every phi jet of ``eq`` by the matching derivative of
    ``template`` (d_h and d_v differentiate in h and v)."""
    cache: dict = {}

    def derivative(m):
        if m not in cache:
            e = template
            for _ in range(m[0]):
                e = d_h(e)
            for _ in range(m[1]):
                e = d_v(e)
            cache[m] = e
        return cache[m]

    def sub_side(s):
        table = {n: derivative(tuple(m)) for n, m in PHI.jets_in(s).items()}
        out = substitute(s, table)
        if multiplier is not None:
            out = mul(multiplier, out)
        return expand(out, 10**7)

    return eq.map(sub_side)


def term_diff(derived: Equation, printed: Equation, spaces: tuple, hints: Mapping | None = None,
              seed: int = 0) -> tuple:
    """Compare two equations monomial by monomial in the jets of ``spaces``."""
    a = collect_jet_monomials(derived.residual, *spaces)
    b = collect_jet_monomials(printed.residual, *spaces)
    keys = {to_text(k): k for k in list(a) + list(b)}
    da = {to_text(k): v for k, v in a.items()}
    db = {to_text(k): v for k, v in b.items()}
    out = []
    for name in sorted(keys, key=lambda s: (len(s), s)):
        x, y = da.get(name), db.get(name)
        if x is not None and y is not None:
            if is_zero(sub(x, y), hints, seed=seed).is_zero:
                continue
            kind = "mismatch"
        elif x is not None:
            if is_zero(x, hints, seed=seed).is_zero:
                continue
            kind = "missing"
        else:
            if is_zero(y, hints, seed=seed).is_zero:
                continue
            kind = "spurious"
        out.append(TermDiff(name, kind, x, y))
    return tuple(out)


def _printed(key: str, f: Expr | None, var: str, params: Mapping) -> Equation:
    t, o = PRINTED_FORMS[key]
    eq = Equation(parse_expression(t), parse_expression(o))
    if f is not None:
        eq = eq.map(lambda s: substitute(specialize(s, f), {"x": sym(var)}))
    return eq.map(lambda s: substitute(s, params))


def _step(name: str, key: str, derived: Equation, op: SurfaceOperator, var: str, space: JetSpace,
          params: Mapping, seed: int) -> ReductionStep:
    printed = _printed(key, op.f, var, params)
    diff = term_diff(derived, printed, (space,), _hints(op, var), seed)
    return ReductionStep(name, derived, printed, diff, space)


def _operator(f, domain) -> SurfaceOperator:
    return SurfaceOperator(None if f is None else as_expr(f), domain=domain)


def _psi_d_h(e: Expr) -> Expr:
    return PSI.total_derivative(e, "h")


def _w_d_r(e: Expr) -> Expr:
    return W.total_derivative(e, "r")


def _d_v(e: Expr) -> Expr:
    return differentiate(e, "v")


def reduce_translation_subalgebra(a=None, f=None, domain: tuple | None = None, seed: int = 0) -> ReductionResult:
    """Invariant solutions of d_y + a d_t: u = phi(x, y - t/a), then the
    ansatz phi = c1*v + psi(h) giving a fourth-order ODE for psi."""
    a_e = _coefficient(a, "a", True)
    params = {} if a is None else {"a": a_e}
    op = _operator(f, domain)
    similarity = {"h": sym("x"), "v": sub(sym("y"), div(sym("t"), a_e))}
    inverse = {"x": sym("h"), "y": add(sym("v"), div(sym("t"), a_e))}
    pde = pullback(op, PHI.symbol((0, 0)), similarity, inverse)
    ode = apply_ansatz(pde, add(mul(sym("c1"), sym("v")), PSI.symbol((0,))), _psi_d_h, _d_v)
    steps = (
        _step("two_variable", "translation.two_variable", pde, op, "h", PHI, params, seed),
        _step("ode", "translation.ode", ode, op, "h", PSI, params, seed),
    )
    return ReductionResult("translation", {"a": a_e}, similarity, sym("phi"), steps, op.f)


def reduce_scaling_subalgebra(a=None, b=None, f=None, domain: tuple | None = None, seed: int = 0) -> ReductionResult:
    """Invariant solutions of a d_t + b u d_u: u = exp(phi(x, y) + b t/a)."""
    a_e = _coefficient(a, "a", True)
    b_e = _coefficient(b, "b", False)
    params = {k: v for k, v in (("a", a), ("b", b)) if v is not None}
    params = {k: as_expr(v) for k, v in params.items()}
    op = _operator(f, domain)
    shift = mul(div(b_e, a_e), sym("t"))
    similarity = {"h": sym("x"), "v": sym("y")}
    template = exp(add(PHI.symbol((0, 0)), shift))
    multiplier = exp(neg(add(PHI.symbol((0, 0)), shift)))
    eq = pullback(op, template, similarity, {"x": sym("h"), "y": sym("v")}, multiplier)
    steps = (_step("transformed", "scaling.transformed", eq, op, "h", PHI, params, seed),)
    return ReductionResult("scaling", {"a": a_e, "b": b_e}, similarity, template, steps, op.f, multiplier)


def reduce_two_dim(a=None, b=None, f=None, domain: tuple | None = None, seed: int = 0) -> ReductionResult:
    """Two-stage reduction by d_y and a d_t + b u d_u: first u = phi(x, t),
    then phi = exp(w(r) + b v/a) with r = h."""
    a_e = _coefficient(a, "a", True)
    b_e = _coefficient(b, "b", False)
    params = {k: as_expr(v) for k, v in (("a", a), ("b", b)) if v is not None}
    op = _operator(f, domain)
    similarity = {"h": sym("x"), "v": sym("t")}
    stage1 = pullback(op, PHI.symbol((0, 0)), similarity, {"x": sym("h"), "t": sym("v")})
    shift = mul(div(b_e, a_e), sym("v"))
    w0 = W.symbol((0,))
    stage2 = apply_ansatz(stage1, exp(add(w0, shift)), _w_d_r, _d_v, exp(neg(add(w0, shift))))
    stage2 = stage2.map(lambda s: substitute(s, {"h": sym("r")}))
    steps = (
        _step("stage1", "two-dim.stage1", stage1, op, "h", PHI, params, seed),
        _step("stage2", "two-dim.stage2", stage2, op, "r", W, params, seed),
    )
    return ReductionResult("two-dim", {"a": a_e, "b": b_e}, similarity, sym("phi"), steps, op.f)


def reduce(subalgebra: str, a=None, b=None, f=None, domain: tuple | None = None, seed: int = 0) -> ReductionResult:
    if subalgebra == "translation":
        return reduce_translation_subalgebra(a, f, domain, seed)
    if subalgebra == "scaling":
        return reduce_scaling_subalgebra(a, b, f, domain, seed)
    if subalgebra == "two-dim":
        return reduce_two_dim(a, b, f, domain, seed)
    raise ReductionError(f"unknown subalgebra {subalgebra!r}; expected one of {SUBALGEBRAS}")


def evaluate_on(eq: Equation, phi_expr, space: JetSpace = PHI) -> Expr:
    """Residual of ``eq`` with the unknown replaced by a concrete function of
    the space's independents."""
    phi_expr = as_expr(phi_expr)

    def jet_value(m):
        e = phi_expr
        for var, k in zip(space.independents, m):
            for _ in range(k):
                e = differentiate(e, var)
        return e

    table = {n: jet_value(m) for n, m in space.jets_in(eq.residual).items()}
    return substitute(eq.residual, table)


def pullback_check(result: ReductionResult, phi_expr, hints: Mapping | None = None,
                   seed: int = 0) -> ZeroCertificate:
    """Certify the first derived step against a direct evaluation: build u from
    a concrete phi(h, v), apply u_t - L^2 u through the operator, and compare
    with the derived equation evaluated on the same phi."""
    if result.f is None:
        raise ReductionError("pullback_check needs a concrete profile")
    op = SurfaceOperator(result.f)
    phi_xyt = substitute(as_expr(phi_expr), dict(result.similarity))
    u = substitute(result.template, {"phi": phi_xyt})
    direct = mul(result.multiplier, sub(op.biharmonic_apply(u), differentiate(u, "t")))
    direct = substitute(direct, {"phi": phi_xyt})
    derived = substitute(evaluate_on(result.steps[0].derived, phi_expr), dict(result.similarity))
    h = {"a": (0.5, 2.0), "b": (0.5, 2.0)}
    h.update(hints or {})
    return is_zero(sub(direct, derived), h, seed=seed)


# ---------------------------------------------------------------- solutions

EXAMPLE_FAMILIES = ("cylinder", "pseudosphere", "paraboloid")
CONSTANTS = ("c1", "c2", "c3", "c4", "c5", "a")

_EXAMPLES = {
    "cylinder": ("ln(b4)", "c1*(y - t/a - x^4/(24*a)) + c2*x^3/6 + c3*x^2/2 + c4*x + c5",
                 {"x": (-2.0, 2.0), "b4": (0.5, 2.0)}),
    "pseudosphere": ("x", "c1*(y - t/a - x^2/(2*a)) + (c2*(x + 2) + c3)*exp(-x) + c4*x + c5",
                     {"x": (-2.0, 2.0)}),
    "paraboloid": ("ln(x)/2", "c1*(y - t/a - x^4/(42*a)) + c2*x^2/2 + 2*c3*sqrt(x) + 2*c4*x^(5/2)/5 + c5",
                   {"x": (0.5, 3.0)}),
}
_EXAMPLE_INDEX = {1: "cylinder", 2: "pseudosphere", 3: "paraboloid"}


@dataclass(frozen=True)
class ExactSolution:
    family: str
    f: Expr
    u: Expr
    constants: Mapping = field(default_factory=dict)
    hints: Mapping = field(default_factory=dict)

    @property
    def a(self) -> Expr:
        return as_expr(self.constants.get("a", sym("a")))

    @property
    def c1(self) -> Expr:
        return as_expr(self.constants.get("c1", sym("c1")))

    def residual(self) -> Expr:
        return SurfaceOperator(self.f).pde_residual(self.u)

    def sampling_hints(self) -> dict:
        h = {"a": (0.5, 2.0)}
        h.update(self.hints)
        return h

    def invariance_defect(self) -> Expr:
        """(d_y + a d_t) u, zero for solutions invariant under the translation subalgebra."""
        return add(differentiate(self.u, "y"), mul(self.a, differentiate(self.u, "t")))

    def psi(self) -> Expr:
        """psi(h) = u - c1*(y - t/a) written in h."""
        rest = sub(self.u, mul(self.c1, sub(sym("y"), div(sym("t"), self.a))))
        return expand(substitute(rest, {"x": sym("h")}))

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "f": to_text(self.f),
            "u": to_text(self.u),
            "constants": {k: to_text(as_expr(v)) for k, v in self.constants.items()},
        }


def example_solution(family, constants: Mapping | None = None) -> ExactSolution:
    """Closed-form solution for ``family`` (name or 1, 2, 3); constants not
    given stay symbolic."""
    if isinstance(family, int) or (isinstance(family, str) and family.isdigit()):
        family = _EXAMPLE_INDEX.get(int(family), str(family))
    if family not in _EXAMPLES:
        raise ReductionError(f"unknown example family {family!r}; expected one of {EXAMPLE_FAMILIES}")
    f_text, u_text, hints = _EXAMPLES[family]
    constants = {k: as_expr(v) for k, v in (constants or {}).items()}
    unknown = set(constants) - set(CONSTANTS)
    if unknown:
        raise ReductionError(f"unknown constants {sorted(unknown)}")
    if "a" in constants and constants["a"].is_zero_const:
        raise ReductionError("a must be nonzero")
    u = substitute(parse_expression(u_text), constants)
    return ExactSolution(family, parse_expression(f_text), u, constants, hints)


def verify_example(sol: ExactSolution, seed: int = 0) -> ZeroCertificate:
    return is_zero(sol.residual(), sol.sampling_hints(), seed=seed)


def check_reduced_ode(sol: ExactSolution, seed: int = 0) -> ZeroCertificate:
    """Certify that the psi extracted from ``sol`` solves the specialized ODE."""
    hints = {("h" if k == "x" else k): v for k, v in sol.sampling_hints().items()}
    ode = Equation(parse_expression(PRINTED_FORMS["translation.ode"][0]),
                   parse_expression(PRINTED_FORMS["translation.ode"][1]))
    ode = ode.map(lambda s: substitute(substitute(specialize(s, sol.f), {"x": sym("h")}),
                                       {"c1": sol.c1, "a": sol.a}))
    return is_zero(evaluate_on(ode, sol.psi(), PSI), hints, seed=seed)


__all__ = [
    "PHI", "PSI", "W", "SUBALGEBRAS", "PRINTED_FORMS", "ReductionError", "Equation", "TermDiff",
    "ReductionStep", "ReductionResult", "pullback", "apply_ansatz", "term_diff",
    "reduce_translation_subalgebra", "reduce_scaling_subalgebra", "reduce_two_dim", "reduce",
    "evaluate_on", "pullback_check", "EXAMPLE_FAMILIES", "CONSTANTS", "ExactSolution",
    "example_solution", "verify_example", "check_reduced_ode",
]
