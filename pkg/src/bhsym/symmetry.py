"""Generator catalogs per surface family, invariance checks on the solution
manifold, determining-equation residuals, commutators and group flows."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from fractions import Fraction
from typing import Mapping

from .exprcore import (
    Expr,
    ZeroCertificate,
    add,
    as_expr,
    const,
    differentiate,
    evaluate,
    exp,
    is_zero,
    mul,
    parse_expression,
    power,
    sub,
    substitute,
    sym,
    to_text,
)
from .exprcore.zerotest import NONZERO, SYMBOLIC, ZERO as ZERO_VERDICT
from .geometry import FAMILIES, SurfaceFamily
from .jet import (
    PointSymmetryCandidate,
    Prolongation,
    apply_prolonged,
    collect_jet_monomials,
    restrict_to_solutions,
)
from .operator import SurfaceOperator


class GeneratorError(ValueError):
    """Unknown generator name, or a generator from another family."""


class UnsupportedFlowError(ValueError):
    """No closed-form flow is implemented for this generator."""


@dataclass(frozen=True)
class SolutionWitness:
    """G(x, y, t) for the superposition generator G d_u; G = 1 always works."""

    G: Expr = field(default_factory=lambda: as_expr(1))

    def certify(self, op: SurfaceOperator, seed: int = 0) -> ZeroCertificate:
        return op.certify_solution(self.G, seed=seed)


@dataclass(frozen=True)
class Generator:
    name: str
    family: str
    candidate: PointSymmetryCandidate
    witness: SolutionWitness | None = None

    @property
    def short_name(self) -> str:
        return self.name.split(".", 1)[1]

    def bound(self, fam: SurfaceFamily) -> PointSymmetryCandidate:
        """Infinitesimals with the family's parameter values substituted."""
        c = self.candidate
        parts = [fam.bind(p) if fam.family != "arbitrary" else p for p in c.components]
        return PointSymmetryCandidate(*parts, name=self.name)

    def to_dict(self) -> dict:
        c = self.candidate
        return {
            "name": self.name,
            "xi": to_text(c.xi), "phi": to_text(c.phi), "tau": to_text(c.tau), "zeta": to_text(c.zeta),
        }


def _cand(xi="0", phi="0", tau="0", zeta="0") -> PointSymmetryCandidate:
    return PointSymmetryCandidate(*(parse_expression(s) for s in (xi, phi, tau, zeta)))


_MINIMAL = {
    "X1": dict(phi="1"),
    "X2": dict(tau="1"),
    "X3": dict(zeta="u"),
}

_EXTRAS = {
    "power_law": {
        "X4": dict(xi="(x - a2)/4", phi="-(a3 - 1)*y/4", tau="t"),
    },
    "cylinder": {
        "X5": dict(xi="1"),
        "X6": dict(xi="-b4^2*y", phi="x"),
        "X7": dict(xi="x/4", phi="y/4", tau="t"),
    },
    "plane": {
        "X8": dict(xi="(x + b4)/4", tau="t"),
        "X9": dict(xi="-cos(y)", phi="sin(y)/(x + b4)"),
        "X10": dict(xi="sin(y)", phi="cos(y)/(x + b4)"),
    },
    "cone": {
        "X8": dict(xi="(x + b4)/4", tau="t"),
        "X9": dict(xi="-l*cos(l*y)", phi="sin(l*y)/(x + b4)"),
        "X10": dict(xi="l*sin(l*y)", phi="cos(l*y)/(x + b4)"),
    },
    "tractoid": {
        "X11": dict(xi="-1/b3", phi="y"),
        "X12": dict(xi="2*b3*exp(2*C)*y", phi="exp(-2*b3*x) - b3^2*exp(2*C)*y^2"),
    },
    "conic_sinh": {
        "X12": dict(xi="-a7*cos(a7*y/b7)", phi="coth(x/b7)*sin(a7*y/b7)"),
        "X14": dict(xi="a7*sin(a7*y/b7)", phi="coth(x/b7)*cos(a7*y/b7)"),
    },
    "hyperboloid_cosh": {
        "X14": dict(xi="-a7*exp(a7*y/b7)", phi="tanh(x/b7)*exp(a7*y/b7)"),
        "X15": dict(xi="a7*exp(-a7*y/b7)", phi="tanh(x/b7)*exp(-a7*y/b7)"),
    },
    "cos_family": {
        "X16": dict(xi="a5*cos(a5*y/b6)", phi="tan(x/b6)*sin(a5*y/b6)"),
        "X17": dict(xi="-a5*sin(a5*y/b6)", phi="tan(x/b6)*cos(a5*y/b6)"),
    },
}

# Variants with the profile shift kept inside coth/tanh/tan; they reduce to
# the catalog entries when the shift is zero.
SHIFTED_VARIANTS = {
    "conic_sinh": {
        "X12": dict(xi="-a7*cos(a7*y/b7)", phi="coth(x/b7 + a8)*sin(a7*y/b7)"),
        "X14": dict(xi="a7*sin(a7*y/b7)", phi="coth(x/b7 + a8)*cos(a7*y/b7)"),
    },
    "hyperboloid_cosh": {
        "X14": dict(xi="-a7*exp(a7*y/b7)", phi="tanh(x/b7 + a8)*exp(a7*y/b7)"),
        "X15": dict(xi="a7*exp(-a7*y/b7)", phi="tanh(x/b7 + a8)*exp(-a7*y/b7)"),
    },
    "cos_family": {
        "X16": dict(xi="a5*cos(a5*y/b6)", phi="tan(x/b6 + a6)*sin(a5*y/b6)"),
        "X17": dict(xi="-a5*sin(a5*y/b6)", phi="tan(x/b6 + a6)*cos(a5*y/b6)"),
    },
}


def _family_id(family) -> str:
    return family.family if isinstance(family, SurfaceFamily) else str(family)


def catalog_generators(family, witness: SolutionWitness | None = None) -> list:
    """Minimal algebra X1, X2, X3, Xu plus the family's extra generators."""
    fid = _family_id(family)
    if fid not in FAMILIES:
        raise GeneratorError(f"unknown family {fid!r}")
    witness = witness or SolutionWitness()
    out = [_named(fid, k, v) for k, v in _MINIMAL.items()]
    out.append(Generator(f"{fid}.Xu", fid, PointSymmetryCandidate(0, 0, 0, witness.G, name=f"{fid}.Xu"), witness))
    out += [_named(fid, k, v) for k, v in _EXTRAS.get(fid, {}).items()]
    return out


def _named(fid: str, short: str, parts: dict) -> Generator:
    name = f"{fid}.{short}"
    return Generator(name, fid, PointSymmetryCandidate(*_cand(**parts).components, name=name))


def shifted_variant(family: str, short: str) -> Generator:
    return _named(family, f"{short}+shift", SHIFTED_VARIANTS[family][short])


def find_generator(family, name: str) -> Generator:
    """Resolve ``X4`` or ``power_law.X4`` within ``family``."""
    fid = _family_id(family)
    if "." in name:
        owner, short = name.split(".", 1)
        if owner != fid:
            raise GeneratorError(f"generator {name!r} belongs to {owner}, not {fid}")
    else:
        short = name
    for g in catalog_generators(fid):
        if g.short_name == short:
            return g
    raise GeneratorError(f"{fid} has no generator {short!r}")


def extra_generators() -> list:
    """Every family-specific (non-minimal) generator in the catalog."""
    out = []
    for fid in _EXTRAS:
        out += [g for g in catalog_generators(fid) if g.short_name not in ("X1", "X2", "X3", "Xu")]
    return out


def _as_candidate(X) -> PointSymmetryCandidate:
    return X.candidate if isinstance(X, Generator) else X


def _resolve(X, fam: SurfaceFamily | None) -> PointSymmetryCandidate:
    """Bind a catalog generator's parameters: the given family's values when
    it matches, the generator's own family defaults otherwise."""
    if not isinstance(X, Generator):
        return X
    if X.family == "arbitrary":
        return X.candidate
    if fam is not None and fam.family == X.family:
        return X.bound(fam)
    return X.bound(SurfaceFamily.create(X.family))


def _operator_for(f, fam: SurfaceFamily | None) -> SurfaceOperator:
    if isinstance(f, SurfaceOperator):
        return f
    if f is None:
        return SurfaceOperator(fam.profile(), fam.sampling_box())
    return SurfaceOperator(as_expr(f), fam.sampling_box() if fam is not None else None)


def invariance_expression(X, f=None, family: SurfaceFamily | None = None) -> Expr:
    """X^[4](u_t - L^2 u) restricted to solutions."""
    cand = _resolve(X, family)
    op = _operator_for(f, family)
    rhs = op.rhs()
    F = sub(sym("u_t"), rhs)
    pr = Prolongation(cand, op.space)
    return restrict_to_solutions(apply_prolonged(cand, F, pr, op.space), rhs, op.space)


def invariance_residual(X, f=None, family: SurfaceFamily | None = None, seed: int = 0,
                        hints: Mapping | None = None) -> ZeroCertificate:
    """Zero-test X^[4](u_t - L^2 u) on the solution manifold.

    ``f`` is a profile expression or a SurfaceOperator; when omitted the
    family's profile is used.  Jet coordinates are sampled in [-2, 2] and x
    inside the family's domain.
    """
    op = _operator_for(f, family)
    e = invariance_expression(X, op, family)
    return is_zero(e, op.domain_hints(hints), seed=seed)


# Determining equations as published, transcribed term by term.  Symbols:
# xi_x is the partial derivative of xi in x; f1..f4 are derivatives of f and
# e2f is e^{-2f}; L2zeta and L2xi apply the biharmonic operator to the
# coefficient function.
PRINTED_DETERMINING_EQUATIONS = {
    "e1": ("tau_u", "tau_x", "tau_y", "xi_u", "phi_u", "zeta_uu"),
    "e2": "4*xi_x - tau_t",
    "e3": "phi_x + xi_y*e2f",
    "e4": "4*phi_y + 4*xi*f1 - tau_t",
    "e5": "2*zeta_ux - 3*xi_xx + xi*f2 + f1*xi_x - xi_yy*e2f",
    "e6": "2*zeta_uy*e2f - f1*phi_x + phi_xx + 3*phi_yy*e2f",
    "e7": "-5*e2f*f1*xi_y + 3*phi_xx + e2f*phi_yy - 2*e2f*zeta_uy + 4*e2f*xi_xy",
    "e8": "xi_xx - 2*zeta_ux + 3*e2f*xi_yy + 3*xi_x*f1 + (f2 - 2*f1^2)*xi + 4*phi_xy - 2*f1*phi_y",
    "e9": "zeta_t - L2zeta",
    "e10": (
        "2*f1*zeta_uy*e2f - f1*phi_yy*e2f + e2f*(f1^2 - 4*f2)*xi_y + 3*f1*phi_xx - 2*f1*xi_xy*e2f"
        " + 2*xi_xxy*e2f - 4*zeta_uxy*e2f + 2*phi_xyy*e2f + 2*phi_xxx + 2*e2f^2*xi_yyy"
    ),
    "e11": (
        "(f1*f2 - f3)*xi + 2*xi_xxx - 3*f1*zeta_ux + 3*f1*xi_xx - (f1^2 + 2*f2)*xi_x"
        " - f1*xi_yy*e2f - 3*zeta_uxx - zeta_uyy*e2f + 2*xi_xyy*e2f"
    ),
    "e12": (
        "2*phi_yyy*e2f - 3*zeta_uyy*e2f - zeta_uxx + 2*phi_xxy + (f3 + 2*f1^3 - 4*f2*f1)*xi"
        " + 4*(f2 - f1^2)*xi_x - 2*f1*phi_xy + f1*zeta_ux + 2*(f1^2 - f2)*phi_y"
    ),
    "e13": (
        "2*e2f*(f1^2 - f2)*phi_yy - 4*zeta_uxxy*e2f + 2*phi_xxyy*e2f + 4*f1*zeta_uxy*e2f"
        " + 4*e2f*(f2 - f1^2)*zeta_uy - 4*zeta_uyyy*e2f^2 + (2*f2 + f1^2)*phi_xx + phi_xxxx"
        " + 2*f1*phi_xxx - phi_t - 2*f1*phi_xyy*e2f + (f3 + f2*f1)*phi_x"
    ),
    "e14": (
        "2*(2*f2 + f1^2)*zeta_ux + 4*zeta_uxxx + xi_t + 2*e2f*(2*zeta_uxyy - f1*zeta_uyy)"
        " + 6*f1*zeta_uxx + 4*(f3 + f2*f1)*xi_x + (f3*f1 + f4 + f2^2)*xi - L2xi"
    ),
}


# Working system: the published one with two terms repaired so that every
# equation is a coefficient of the restricted invariance condition (see
# derive_determining_coefficients): e11 is half the u_xx coefficient after
# tau_t = 4 xi_x, e13 is the u_y coefficient.
DETERMINING_EQUATIONS = dict(PRINTED_DETERMINING_EQUATIONS)
DETERMINING_EQUATIONS["e11"] = PRINTED_DETERMINING_EQUATIONS["e11"].replace(
    "(f1*f2 - f3)*xi", "-(f1*f2 + f3)*xi")
DETERMINING_EQUATIONS["e13"] = PRINTED_DETERMINING_EQUATIONS["e13"] + " + e2f^2*phi_yyyy"
REPAIRED_EQUATIONS = ("e11", "e13")

_COEFF_PREFIXES = ("xi", "phi", "tau", "zeta")


def _partial(e: Expr, letters: str) -> Expr:
    for c in letters:
        e = differentiate(e, c)
    return e


def determining_expressions(X, f=None, family: SurfaceFamily | None = None, printed: bool = False) -> dict:
    """name -> residual expression (e1 maps to a tuple of six parts).

    ``printed=True`` uses the published transcription instead of the
    repaired working system.
    """
    cand = _resolve(X, family)
    op = _operator_for(f, family)
    comps = dict(zip(_COEFF_PREFIXES, cand.components))
    table = {"f1": op.fp, "f2": op.fpp, "f3": op.fppp, "f4": op.fpppp, "e2f": op.e2f,
             "L2zeta": op.biharmonic_apply(comps["zeta"], partial=True),
             "L2xi": op.biharmonic_apply(comps["xi"], partial=True)}

    def bind(text: str) -> Expr:
        e = parse_expression(text)
        sub_table = dict(table)
        for name in e.free_symbols:
            head, _, letters = name.partition("_")
            if head in comps and name not in sub_table:
                sub_table[name] = _partial(comps[head], letters)
            elif name in comps:
                sub_table[name] = comps[name]
        return substitute(e, {k: v for k, v in sub_table.items() if k in e.free_symbols})

    out = {}
    system = PRINTED_DETERMINING_EQUATIONS if printed else DETERMINING_EQUATIONS
    for name, text in system.items():
        out[name] = tuple(bind(t) for t in text) if isinstance(text, tuple) else bind(text)
    return out


def _abstract_function_chains(head: str, variables: str, max_order: int) -> dict:
    """Chain rules making ``head``, ``head_x``, ``head_xy``, ... behave as
    derivatives of an unknown function of ``variables``."""
    chains = {}
    order = "xyt"
    for k in range(max_order + 1):
        for combo in combinations_with_replacement(variables, k):
            letters = "".join(combo)
            name = head + ("_" + letters if letters else "")
            rule = {}
            if k < max_order:
                for v in variables:
                    nxt = "".join(sorted(letters + v, key=order.index))
                    rule[v] = sym(f"{head}_{nxt}")
            chains[name] = rule
    return chains


def abstract_setting():
    """Abstract profile and infinitesimals xi(x, y), phi(x, y), tau(t),
    zeta = Z(x, y, t) u + G(x, y, t), as the form forced by e1 and e2."""
    from .operator import ABSTRACT_SPACE

    chains = {}
    chains.update(_abstract_function_chains("xi", "xy", 6))
    chains.update(_abstract_function_chains("phi", "xy", 6))
    chains.update(_abstract_function_chains("tau", "t", 2))
    chains.update(_abstract_function_chains("Z", "xyt", 6))
    chains.update(_abstract_function_chains("G", "xyt", 6))
    space = ABSTRACT_SPACE.with_chains(chains)
    op = SurfaceOperator()
    op.space = space
    cand = PointSymmetryCandidate(sym("xi"), sym("phi"), sym("tau"), add(mul(sym("Z"), sym("u")), sym("G")))
    return op, cand


def derive_determining_coefficients() -> dict:
    """Coefficients of the restricted invariance condition, grouped by jet
    monomial, for the abstract setting; each must vanish."""
    op, cand = abstract_setting()
    groups = collect_jet_monomials(invariance_expression(cand, op), op.space, limit=10**7)
    return {to_text(k): v for k, v in groups.items()}


def abstract_determining_expression(name: str, printed: bool = False) -> Expr:
    """One determining equation bound to the abstract setting."""
    op, cand = abstract_setting()
    text = (PRINTED_DETERMINING_EQUATIONS if printed else DETERMINING_EQUATIONS)[name]
    if isinstance(text, tuple):
        raise ValueError("e1 lists vanishing derivatives, not a single expression")
    e = parse_expression(text)
    zeta = cand.zeta
    table = {"f1": op.fp, "f2": op.fpp, "f3": op.fppp, "f4": op.fpppp, "e2f": op.e2f,
             "L2zeta": op.biharmonic_apply(zeta, partial=True),
             "L2xi": op.biharmonic_apply(cand.xi, partial=True)}
    for n in e.free_symbols:
        head, _, letters = n.partition("_")
        if n in table or head not in _COEFF_PREFIXES:
            continue
        base = {"xi": cand.xi, "phi": cand.phi, "tau": cand.tau, "zeta": zeta}[head]
        for c in letters:
            base = op.space.explicit_partial(base, c) if c != "u" else differentiate(base, "u")
        table[n] = base
    return substitute(e, {k: v for k, v in table.items() if k in e.free_symbols})


@dataclass(frozen=True)
class DeterminingReport:
    generator: str
    residuals: Mapping
    certificates: Mapping

    @property
    def all_zero(self) -> bool:
        return all(c.is_zero for c in self.certificates.values())

    def failing(self) -> list:
        return [k for k, c in self.certificates.items() if not c.is_zero]

    def to_dict(self) -> dict:
        return {k: c.verdict for k, c in self.certificates.items()}


def _combine(certs) -> ZeroCertificate:
    certs = list(certs)
    for c in certs:
        if not c.is_zero:
            return c
    return max(certs, key=lambda c: (c.method != SYMBOLIC, c.samples))


def determining_residuals(X, f=None, family: SurfaceFamily | None = None, seed: int = 0,
                          printed: bool = False) -> DeterminingReport:
    op = _operator_for(f, family)
    exprs = determining_expressions(X, op, family, printed)
    hints = op.domain_hints()
    certs = {}
    for name, e in exprs.items():
        if isinstance(e, tuple):
            certs[name] = _combine(is_zero(p, hints, seed=seed) for p in e)
        else:
            certs[name] = is_zero(e, hints, seed=seed)
    name = X.name if isinstance(X, Generator) else getattr(X, "name", "")
    return DeterminingReport(name, exprs, certs)


def commutator(X, Y) -> PointSymmetryCandidate:
    """[X, Y] componentwise: X(Y_k) - Y(X_k)."""
    a, b = _as_candidate(X), _as_candidate(Y)
    parts = [sub(a.act(q), b.act(p)) for p, q in zip(a.components, b.components)]
    return PointSymmetryCandidate(*parts)


def combine(*terms) -> PointSymmetryCandidate:
    """Linear combination: ``combine((2, X1), (c, X2))``."""
    parts = [[], [], [], []]
    for coef, X in terms:
        for k, comp in enumerate(_as_candidate(X).components):
            parts[k].append(mul(as_expr(coef), comp))
    return PointSymmetryCandidate(*(add(*p) for p in parts))


def certify_candidate_zero(X, hints: Mapping | None = None, seed: int = 0) -> ZeroCertificate:
    return _combine(is_zero(c, hints, seed=seed) for c in _as_candidate(X).components)


def certify_equal(X, Y, hints: Mapping | None = None, seed: int = 0) -> ZeroCertificate:
    return certify_candidate_zero(combine((1, X), (-1, Y)), hints, seed)


_COORDS = ("x", "y", "t", "u")


@dataclass(frozen=True)
class Flow:
    """Closed-form flow of a generator whose component along each coordinate
    is affine in that coordinate alone: dz/de = alpha z + beta."""

    rates: tuple  # (alpha, beta) per coordinate

    def map(self, eps) -> dict:
        """Coordinate -> image expression at group parameter ``eps``."""
        eps = as_expr(eps)
        out = {}
        for z, (alpha, beta) in zip(_COORDS, self.rates):
            zs = sym(z)
            if alpha.is_zero_const:
                out[z] = add(zs, mul(beta, eps))
            else:
                shift = mul(beta, power(alpha, -1))
                out[z] = sub(mul(add(zs, shift), exp(mul(alpha, eps))), shift)
        return out

    def __call__(self, point: Mapping, eps) -> dict:
        """Numeric image of ``point`` (all four coordinates) at ``eps``."""
        images = self.map(_exact_number(eps))
        return {z: float(evaluate(images[z], point, 30)) for z in _COORDS}


def _exact_number(v) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, float):
        return const(Fraction(repr(v)))
    return const(Fraction(v))


def flow(X, fam: SurfaceFamily | None = None) -> Flow:
    """Closed-form one-parameter group of an affine, decoupled generator."""
    cand = _resolve(X, fam) if fam is not None else _as_candidate(X)
    rates = []
    for z, comp in zip(_COORDS, cand.components):
        others = comp.free_symbols & (set(_COORDS) - {z})
        alpha = differentiate(comp, z)
        if others or alpha.free_symbols & set(_COORDS):
            raise UnsupportedFlowError(
                f"no closed-form flow for {cand.name or 'generator'}: component along {z} is {to_text(comp)}")
        beta = substitute(comp, {z: as_expr(0)})
        rates.append((alpha, beta))
    return Flow(tuple(rates))


def transform_solution(X, eps, u_expr, fam: SurfaceFamily | None = None) -> Expr:
    """Image of the graph u = U(x, y, t) under the flow at ``eps``:
    u~(x, y, t) = g_u(U(g^{-1}(x, y, t)))."""
    fl = flow(X, fam)
    eps = _exact_number(eps)
    inverse = fl.map(mul(-1, eps))
    forward = fl.map(eps)
    if forward["x"].free_symbols & {"u"} or forward["y"].free_symbols & {"u"} or forward["t"].free_symbols & {"u"}:
        raise UnsupportedFlowError("flow mixes u into the independent variables")
    pulled = substitute(as_expr(u_expr), {z: inverse[z] for z in ("x", "y", "t")})
    return substitute(forward["u"], {"u": pulled})


def verify_flow_maps_solution(X, eps, u_expr, f, fam: SurfaceFamily | None = None,
                              hints: Mapping | None = None, seed: int = 0) -> ZeroCertificate:
    op = f if isinstance(f, SurfaceOperator) else SurfaceOperator(as_expr(f))
    new_u = transform_solution(X, eps, u_expr, fam)
    return is_zero(op.pde_residual(new_u), op.domain_hints(hints), seed=seed)


@dataclass(frozen=True)
class GeneratorVerdict:
    generator: str
    invariance: ZeroCertificate
    determining: DeterminingReport

    @property
    def passed(self) -> bool:
        return self.invariance.is_zero and self.determining.all_zero

    def to_dict(self) -> dict:
        return {
            "generator": self.generator,
            "invariance": self.invariance.verdict,
            "determining": self.determining.to_dict(),
            "certificate": self.invariance.to_dict(),
        }


def verify_family(fam: SurfaceFamily, names=None, seed: int = 0, determining: bool = True) -> list:
    """Invariance and determining-equation verdicts for a family's catalog."""
    op = SurfaceOperator(fam.profile(), fam.sampling_box())
    gens = catalog_generators(fam.family)
    if names is not None:
        gens = [find_generator(fam.family, n) for n in names]
    out = []
    for g in gens:
        inv = invariance_residual(g, op, fam, seed=seed)
        det = determining_residuals(g, op, fam, seed=seed) if determining else DeterminingReport(g.name, {}, {})
        out.append(GeneratorVerdict(g.name, inv, det))
    return out


__all__ = [
    "GeneratorError", "UnsupportedFlowError", "SolutionWitness", "Generator", "catalog_generators",
    "find_generator", "extra_generators", "shifted_variant", "SHIFTED_VARIANTS", "invariance_expression",
    "invariance_residual", "DETERMINING_EQUATIONS", "determining_expressions", "DeterminingReport",
    "determining_residuals", "derive_determining_coefficients", "abstract_determining_expression",
    "abstract_setting", "PRINTED_DETERMINING_EQUATIONS", "REPAIRED_EQUATIONS", "commutator", "combine", "certify_candidate_zero", "certify_equal", "Flow",
    "flow", "transform_solution", "verify_flow_maps_solution", "GeneratorVerdict", "verify_family",
    "ZERO_VERDICT", "NONZERO",
]
