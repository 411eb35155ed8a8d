"""Catalog of surfaces of revolution (v(x), w(x) cos y, w(x) sin y) with
w = e^f and x the arc length of the profile curve."""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np

from .exprcore import (
    Expr,
    ZeroCertificate,
    as_expr,
    compile_expr,
    const,
    differentiate,
    div,
    exp,
    is_zero,
    neg,
    parse_expression,
    power,
    sqrt,
    sub,
    substitute,
    to_text,
)
from .numeric.quadrature import simpson

FAMILIES = (
    "arbitrary", "power_law", "cylinder", "plane", "cone", "tractoid",
    "conic_sinh", "hyperboloid_cosh", "cos_family",
)
CONCRETE_FAMILIES = FAMILIES[1:]

PARAM_ALIASES = {"α": "a", "β": "b", "alpha": "a", "beta": "b"}


class FamilyError(ValueError):
    """Unknown family or parameters violating the family constraints."""


class EmptyDomainError(FamilyError):
    """The unit-speed condition holds nowhere for these parameters."""


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        if not self.lo < self.hi:
            raise EmptyDomainError(f"empty interval [{self.lo}, {self.hi}]")

    def contains(self, x: float) -> bool:
        lo_ok = x >= self.lo if self.lo_closed else x > self.lo
        hi_ok = x <= self.hi if self.hi_closed else x < self.hi
        return lo_ok and hi_ok

    @property
    def finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def to_dict(self) -> dict:
        def enc(v):
            return v if math.isfinite(v) else ("inf" if v > 0 else "-inf")

        return {"lo": enc(self.lo), "hi": enc(self.hi), "lo_closed": self.lo_closed, "hi_closed": self.hi_closed}

    def __str__(self) -> str:
        lb = "[" if self.lo_closed and math.isfinite(self.lo) else "("
        rb = "]" if self.hi_closed and math.isfinite(self.hi) else ")"
        return f"{lb}{self.lo:g}, {self.hi:g}{rb}"


@dataclass(frozen=True)
class FamilyDef:
    profile: str
    defaults: dict
    constraints: Callable[[dict], list]
    domain: Callable[[dict], Interval]
    v_origin: Callable[[dict, Interval], float]
    ode: str | None
    curvature: str | None
    description: str


def _f(p, k):
    return float(p[k])


def _power_law_domain(p) -> Interval:
    a2, a3, b5 = _f(p, "a2"), _f(p, "a3"), _f(p, "b5")
    radius = (1.0 / (b5 * b5 * a3 * a3)) ** (1.0 / (2 * a3 - 2))
    if a3 > 1:
        return Interval(a2, a2 + radius, lo_closed=False)
    return Interval(a2 + radius, math.inf, hi_closed=False)


def _tractoid_domain(p) -> Interval:
    b3, c = _f(p, "b3"), _f(p, "C")
    edge = (-math.log(abs(b3)) - c) / b3
    if b3 > 0:
        return Interval(-math.inf, edge, lo_closed=False)
    return Interval(edge, math.inf, hi_closed=False)


def _conic_domain(p) -> Interval:
    a7, b7, a8 = _f(p, "a7"), _f(p, "b7"), _f(p, "a8")
    if a7 >= b7:
        raise EmptyDomainError("conic_sinh needs a7 < b7 for a nonempty unit-speed range")
    return Interval(-a8 * b7, b7 * math.acosh(b7 / a7) - a8 * b7, lo_closed=False)


def _hyperboloid_domain(p) -> Interval:
    a7, b7, a8 = _f(p, "a7"), _f(p, "b7"), _f(p, "a8")
    r = math.asinh(b7 / a7)
    return Interval(-b7 * (r + a8), b7 * (r - a8))


def cos_subtype(p: Mapping) -> str:
    a5, b6 = Fraction(p["a5"]), Fraction(p["b6"])
    if a5 == b6:
        return "sphere"
    return "spindle" if a5 < b6 else "bulge"


def _cos_domain(p) -> Interval:
    a5, b6, a6 = _f(p, "a5"), _f(p, "b6"), _f(p, "a6")
    kind = cos_subtype(p)
    if kind == "sphere":
        return Interval(-b6 * (math.pi / 2 + a6), b6 * (math.pi / 2 - a6))
    if kind == "spindle":
        return Interval(-math.inf, math.inf, False, False)
    r = math.asin(b6 / a5)
    return Interval(-b6 * (a6 + r), b6 * (r - a6))


def _positive(*names):
    return lambda p: [f"{n} must be > 0" for n in names if Fraction(p[n]) <= 0]


def _power_law_constraints(p):
    errs = _positive("b5")(p)
    if Fraction(p["a3"]) in (0, 1):
        errs.append("a3 must differ from 0 and 1")
    return errs


def _cone_constraints(p):
    errs = _positive("l")(p)
    if Fraction(p["l"]) > 1:
        errs.append("l must be <= 1 for a unit-speed profile")
    return errs


def _tractoid_constraints(p):
    return ["b3 must be nonzero"] if Fraction(p["b3"]) == 0 else []


def _cos_constraints(p):
    errs = _positive("a5", "b6")(p)
    if Fraction(p["a6"]) < 0:
        errs.append("a6 must be >= 0")
    return errs


_CATALOG: dict = {
    "power_law": FamilyDef(
        "ln(b5*(x - a2)^a3)", {"a2": 0, "a3": Fraction(1, 2), "b5": 1}, _power_law_constraints,
        _power_law_domain, lambda p, d: d.lo,
        "f3*f1 - 2*f2^2", "-a3*(a3 - 1)/(x - a2)^2",
        "power-law profile w = b5 (x - a2)^a3",
    ),
    "cylinder": FamilyDef(
        "ln(b4)", {"b4": Fraction(3, 2)}, _positive("b4"),
        lambda p: Interval(-math.inf, math.inf, False, False), lambda p, d: 0.0,
        "f2 + f1^2", "0", "cylinder of radius b4",
    ),
    "plane": FamilyDef(
        "ln(x + b4)", {"b4": 1}, lambda p: [],
        lambda p: Interval(-_f(p, "b4"), math.inf, False, False), lambda p, d: 0.0,
        "f2 + f1^2", "0", "flat plane, w = x + b4",
    ),
    "cone": FamilyDef(
        "ln(l*(x + b4))", {"l": Fraction(1, 2), "b4": 1}, _cone_constraints,
        lambda p: Interval(-_f(p, "b4"), math.inf, False, False), lambda p, d: d.lo,
        "f2 + f1^2", "0", "cone, w = l (x + b4)",
    ),
    "tractoid": FamilyDef(
        "b3*x + C", {"b3": Fraction(1, 2), "C": 0}, _tractoid_constraints,
        _tractoid_domain, lambda p, d: d.hi if _f(p, "b3") > 0 else d.lo,
        "f3 + 2*f1*f2", "-b3^2", "pseudosphere (tractoid), w = e^(b3 x + C)",
    ),
    "conic_sinh": FamilyDef(
        "ln(a7*sinh(x/b7 + a8))", {"a7": Fraction(1, 3), "b7": 1, "a8": 0}, _positive("a7", "b7"),
        _conic_domain, lambda p, d: -_f(p, "a8") * _f(p, "b7"),
        "f2 + f1^2 - 1/b7^2", "-1/b7^2", "conic type, w = a7 sinh(x/b7 + a8)",
    ),
    "hyperboloid_cosh": FamilyDef(
        "ln(a7*cosh(x/b7 + a8))", {"a7": Fraction(1, 3), "b7": 1, "a8": 0}, _positive("a7", "b7"),
        _hyperboloid_domain, lambda p, d: -_f(p, "a8") * _f(p, "b7"),
        "f2 + f1^2 - 1/b7^2", "-1/b7^2", "hyperboloid of one sheet type, w = a7 cosh(x/b7 + a8)",
    ),
    "cos_family": FamilyDef(
        "ln(a5*cos(x/b6 + a6))", {"a5": 1, "b6": 1, "a6": 0}, _cos_constraints,
        _cos_domain, lambda p, d: -_f(p, "a6") * _f(p, "b6"),
        "f2 + f1^2 + 1/b6^2", "1/b6^2", "constant positive curvature: sphere, spindle or bulge",
    ),
}


def parse_params(text: str | Mapping | None) -> dict:
    """``"α2=0,a3=1/2,β5=1"`` -> {"a2": 0, "a3": 1/2, "b5": 1} with exact values."""
    if text is None:
        return {}
    if isinstance(text, Mapping):
        items = list(text.items())
    else:
        items = []
        for chunk in str(text).split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "=" not in chunk:
                raise FamilyError(f"parameter {chunk!r} is not of the form name=value")
            k, v = chunk.split("=", 1)
            items.append((k.strip(), v.strip()))
    out = {}
    for k, v in items:
        key = str(k)
        for src, dst in PARAM_ALIASES.items():
            if key.startswith(src):
                key = dst + key[len(src):]
                break
        out[key] = _exact(v)
    return out


def _exact(v):
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(repr(v))
    if isinstance(v, Expr):
        if v.kind == "const":
            return v.value
        raise FamilyError(f"parameter value {v} is not a number")
    e = parse_expression(str(v))
    if e.kind != "const":
        raise FamilyError(f"parameter value {v!r} is not a rational number")
    return e.value


@dataclass(frozen=True)
class SurfaceFamily:
    """A family id with a complete, validated parameter map."""

    family: str
    params: Mapping = field(default_factory=dict)
    f_expr: Expr | None = None
    domain_override: Interval | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise FamilyError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.family == "arbitrary":
            if self.f_expr is None:
                raise FamilyError("the arbitrary family needs a profile f")
            object.__setattr__(self, "f_expr", as_expr(self.f_expr))
            object.__setattr__(self, "params", dict(self.params))
            return
        entry = _CATALOG[self.family]
        params = dict(entry.defaults)
        given = dict(self.params)
        alpha4 = given.pop("a4", None)
        unknown = sorted(set(given) - set(params))
        if unknown:
            raise FamilyError(f"unknown parameters for {self.family}: {unknown}")
        params.update(given)
        params = {k: Fraction(v) for k, v in params.items()}
        errs = entry.constraints(params)
        if errs:
            raise FamilyError(f"{self.family}: " + "; ".join(errs))
        if alpha4 is not None:
            params["a4"] = Fraction(alpha4)
        object.__setattr__(self, "params", params)

    @classmethod
    def create(cls, family: str, params=None, f=None) -> "SurfaceFamily":
        fe = parse_expression(f) if isinstance(f, str) else f
        return cls(family, parse_params(params), fe)

    @property
    def shape_params(self) -> dict:
        return {k: v for k, v in self.params.items() if k != "a4"}

    @property
    def subtype(self) -> str | None:
        return cos_subtype(self.params) if self.family == "cos_family" else None

    def symbolic_profile(self) -> Expr:
        if self.family == "arbitrary":
            return self.f_expr
        return parse_expression(_CATALOG[self.family].profile)

    def profile(self) -> Expr:
        """f(x) with the parameter values substituted."""
        if self.family == "arbitrary":
            return self.f_expr
        return self.bind(self.symbolic_profile())

    def bind(self, e: Expr) -> Expr:
        return substitute(e, {k: const(v) for k, v in self.shape_params.items()})

    def valid_domain(self) -> Interval:
        if self.domain_override is not None:
            return self.domain_override
        if self.family == "arbitrary":
            return Interval(-math.inf, math.inf, False, False)
        return _CATALOG[self.family].domain(self.shape_params)

    def chart_domain(self) -> Interval:
        """Part of the domain where w > 0 and f is finite; equals the
        unit-speed domain except for the spindle, whose profile reaches the
        axis at |x/b6 + a6| = pi/2."""
        d = self.valid_domain()
        if self.subtype == "spindle":
            b6, a6 = float(self.params["b6"]), float(self.params["a6"])
            return Interval(-b6 * (math.pi / 2 + a6), b6 * (math.pi / 2 - a6))
        return d

    def sampling_box(self, margin: float = 0.02, span: float = 4.0) -> tuple:
        """A finite closed box strictly inside the chart domain."""
        d = self.chart_domain()
        lo, hi = d.lo, d.hi
        if not math.isfinite(lo) and not math.isfinite(hi):
            lo, hi = -span / 2, span / 2
        elif not math.isfinite(lo):
            lo = hi - span
        elif not math.isfinite(hi):
            hi = lo + span
        w = hi - lo
        return (lo + margin * w, hi - margin * w)

    def v_origin(self) -> float:
        """Lower limit of the arc-length integral for v."""
        if "a4" in self.params:
            return float(self.params["a4"])
        if self.family == "arbitrary":
            return 0.0
        return float(_CATALOG[self.family].v_origin(self.shape_params, self.valid_domain()))

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "subtype": self.subtype,
            "parameters": {k: str(v) for k, v in self.params.items()},
            "profile": to_text(self.profile()),
        }


def _family(family, params=None) -> SurfaceFamily:
    if isinstance(family, SurfaceFamily):
        return family
    return SurfaceFamily.create(family, params)


def warp(f: Expr) -> Expr:
    return exp(f)


def curvature(family, x=None, params=None, symbolic: bool = False):
    """Gaussian curvature K = -w''/w.

    Returns an expression in x (and, with ``symbolic=True``, in the family
    parameters), or a float when ``x`` is given.
    """
    fam = _family(family, params)
    f = fam.symbolic_profile() if symbolic else fam.profile()
    w = exp(f)
    k = neg(div(differentiate(differentiate(w, "x"), "x"), w))
    if x is None:
        return k
    if not fam.chart_domain().contains(float(x)):
        raise FamilyError(f"x={x} outside the domain {fam.chart_domain()}")
    return _float_fn(k)(float(x))


def expected_curvature(family, params=None, symbolic: bool = True) -> Expr:
    fam = _family(family, params)
    if fam.family == "arbitrary":
        raise FamilyError("no closed-form curvature for the arbitrary family")
    e = parse_expression(_CATALOG[fam.family].curvature)
    return e if symbolic else fam.bind(e)


def curvature_hints(fam: SurfaceFamily) -> dict:
    """Sampling boxes for the symbolic curvature check: parameters near
    their defaults and x inside the default domain."""
    hints = {"x": fam.sampling_box()}
    for k, v in fam.shape_params.items():
        v = float(v)
        hints[k] = (v, v) if k in ("a8", "a6", "a2", "C") and v == 0 else (0.9 * v, 1.1 * v) if v else (-0.1, 0.1)
    if fam.family == "power_law":
        hints["a2"] = (0.0, 0.0)
    return hints


def certify_curvature(family, params=None, seed: int = 0) -> ZeroCertificate:
    """K(symbolic parameters) minus the expected closed form, zero-tested."""
    fam = _family(family, params)
    k = curvature(fam, symbolic=True)
    return is_zero(sub(k, expected_curvature(fam)), curvature_hints(fam), seed=seed)


def unit_speed_integrand(family, params=None) -> Expr:
    """sqrt(1 - w'^2), the derivative of v."""
    fam = _family(family, params)
    w = exp(fam.profile())
    return sqrt(sub(1, power(differentiate(w, "x"), 2)))


def _float_fn(e: Expr):
    names = sorted(e.free_symbols)
    if names and names != ["x"]:
        raise FamilyError(f"unexpected free symbols {names}")
    fn = compile_expr(e, names, "float")
    if not names:
        return lambda x: float(fn())
    return lambda x: float(fn(x))


def _clip_inside(fam: SurfaceFamily, x: float) -> float:
    d = fam.chart_domain()
    if not d.contains(x):
        near_lo = math.isfinite(d.lo) and abs(x - d.lo) <= 1e-12 * max(1.0, abs(d.lo))
        near_hi = math.isfinite(d.hi) and abs(x - d.hi) <= 1e-12 * max(1.0, abs(d.hi))
        if not (near_lo or near_hi):
            raise FamilyError(f"x={x} outside the domain {d}")
    shrink = 1e-12 * max(1.0, abs(x))
    if math.isfinite(d.lo) and x - d.lo < shrink:
        x = d.lo + shrink
    if math.isfinite(d.hi) and d.hi - x < shrink:
        x = d.hi - shrink
    return x


def _integrand_fn(fam: SurfaceFamily):
    e = unit_speed_integrand(fam)
    g = _float_fn(e)
    w_prime = _float_fn(differentiate(exp(fam.profile()), "x"))

    def safe(s: float) -> float:
        try:
            return g(s)
        except Exception:
            # rounding can push 1 - w'^2 slightly negative at the boundary
            d = 1.0 - w_prime(s) ** 2
            if -1e-12 < d <= 0:
                return 0.0
            raise
    return safe


def profile_v(family, x: float, tol: float = 1e-10, params=None) -> float:
    """v(x): arc-length integral of sqrt(1 - w'^2) from the origin to x."""
    fam = _family(family, params)
    x = _clip_inside(fam, float(x))
    x0 = _clip_inside(fam, fam.v_origin())

    return simpson(_integrand_fn(fam), x0, x, tol)


def profile_v_prime(family, x: float, h: float = 1e-5, tol: float = 1e-15, params=None) -> float:
    """v'(x) from quadrature differencing, Richardson-combined over h and 2h."""
    fam = _family(family, params)

    g = _integrand_fn(fam)

    def mean(width):
        lo, hi = x - width, x + width
        return simpson(g, lo, hi, tol) / (hi - lo)

    return (4 * mean(h) - mean(2 * h)) / 3


def unit_speed_defect(family, x: float, params=None) -> float:
    """|v'(x)^2 + w'(x)^2 - 1|."""
    fam = _family(family, params)
    wp = _float_fn(differentiate(exp(fam.profile()), "x"))(x)
    vp = profile_v_prime(fam, x)
    return abs(vp * vp + wp * wp - 1.0)


def classification_ode(family, params=None) -> Expr:
    """The family's classification ODE with its profile substituted."""
    from .operator import specialize

    fam = _family(family, params)
    if fam.family == "arbitrary":
        raise FamilyError("the arbitrary family has no classification ODE")
    ode = fam.bind(parse_expression(_CATALOG[fam.family].ode))
    return specialize(ode, fam.profile())


def classification_residual(family, params=None, seed: int = 0) -> ZeroCertificate:
    fam = _family(family, params)
    return is_zero(classification_ode(fam), {"x": fam.sampling_box()}, seed=seed)


def coordinate_patch(family, x: float, y: float, params=None, tol: float = 1e-10) -> tuple:
    """(v(x), w(x) cos y, w(x) sin y)."""
    fam = _family(family, params)
    if not 0 <= y < 2 * math.pi + 1e-12:
        raise FamilyError("y must lie in [0, 2 pi)")
    w = _float_fn(exp(fam.profile()))(_clip_inside(fam, float(x)))
    return (profile_v(fam, x, tol), w * math.cos(y), w * math.sin(y))


def mesh_vertices(family, nx: int, ny: int, params=None, x_range: tuple | None = None,
                  tol: float = 1e-10) -> np.ndarray:
    """Vertices on a uniform (x, y) grid; shape (nx*ny, 3), row-major in x."""
    fam = _family(family, params)
    if nx < 2 or ny < 2:
        raise ValueError("nx and ny must be at least 2")
    if x_range is None:
        d = fam.chart_domain()
        x_range = (d.lo, d.hi) if d.finite else fam.sampling_box(margin=0.0)
    xs = np.linspace(float(x_range[0]), float(x_range[1]), nx)
    xs = np.array([_clip_inside(fam, float(x)) for x in xs])

    g = _integrand_fn(fam)
    x0 = _clip_inside(fam, fam.v_origin())
    vs = np.empty(nx)
    vs[0] = simpson(g, x0, xs[0], tol)
    for i in range(1, nx):
        vs[i] = vs[i - 1] + simpson(g, xs[i - 1], xs[i], tol / nx)
    wf = _float_fn(exp(fam.profile()))
    ws = np.array([wf(x) for x in xs])
    ys = 2 * np.pi * np.arange(ny) / ny
    verts = np.empty((nx * ny, 3))
    verts[:, 0] = np.repeat(vs, ny)
    verts[:, 1] = np.outer(ws, np.cos(ys)).ravel()
    verts[:, 2] = np.outer(ws, np.sin(ys)).ravel()
    return verts


def mesh_faces(nx: int, ny: int) -> np.ndarray:
    """Triangles (1-based) of the grid, closed across the y seam."""
    faces = []
    for i in range(nx - 1):
        for j in range(ny):
            jn = (j + 1) % ny
            a, b = i * ny + j + 1, (i + 1) * ny + j + 1
            c, d = (i + 1) * ny + jn + 1, i * ny + jn + 1
            faces.append((a, b, c))
            faces.append((a, c, d))
    return np.array(faces, dtype=int)


def export_mesh(family, nx: int, ny: int, path, params=None, x_range=None, tol: float = 1e-10) -> dict:
    """Write an ASCII OBJ mesh and return counts."""
    verts = mesh_vertices(family, nx, ny, params, x_range, tol)
    faces = mesh_faces(nx, ny)
    lines = [f"v {x:.12g} {y:.12g} {z:.12g}" for x, y, z in verts]
    lines += [f"f {a} {b} {c}" for a, b, c in faces]
    with open(os.fspath(path), "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")
    return {"vertices": len(verts), "triangles": len(faces), "path": os.fspath(path)}


def surface_info(family, params=None, seed: int = 0) -> dict:
    """JSON-ready summary: family, parameters, domain and curvature."""
    fam = _family(family, params)
    k = curvature(fam)
    info = {
        "family": fam.family,
        "subtype": fam.subtype,
        "parameters": {k2: str(v) for k2, v in fam.params.items()},
        "profile": to_text(fam.profile()),
        "domain": fam.valid_domain().to_dict(),
        "curvature_expression": to_text(k),
    }
    if fam.family != "arbitrary":
        info["curvature_expected"] = _CATALOG[fam.family].curvature
    if not (k.free_symbols - set()):
        info["curvature_constant"] = str(k.value) if k.kind == "const" else to_text(k)
    return info


def catalog_listing() -> list:
    """One entry per concrete family with its symbolic curvature."""
    out = []
    for name in CONCRETE_FAMILIES:
        entry = _CATALOG[name]
        entry = {
            "family": name,
            "profile": entry.profile,
            "parameters": {k: str(v) for k, v in entry.defaults.items()},
            "curvature": entry.curvature,
            "description": entry.description,
        }
        if name == "cos_family":
            entry["subtypes"] = {
                "sphere": "a5 = b6", "spindle": "a5 < b6", "bulge": "a5 > b6",
            }
        out.append(entry)
    return out


def surface_info_json(family, params=None) -> str:
    return json.dumps(surface_info(family, params), indent=2, sort_keys=True)


__all__ = [
    "FAMILIES", "CONCRETE_FAMILIES", "FamilyError", "EmptyDomainError", "Interval", "SurfaceFamily",
    "parse_params", "curvature", "expected_curvature", "certify_curvature", "unit_speed_integrand",
    "profile_v", "profile_v_prime", "unit_speed_defect", "classification_ode",
    "classification_residual", "coordinate_patch", "mesh_vertices", "mesh_faces", "export_mesh",
    "surface_info", "catalog_listing", "cos_subtype", "warp",
]
