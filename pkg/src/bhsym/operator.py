"""Surface Laplacian L = f' d_x + d_xx + e^{-2f} d_yy on a surface of
revolution, its square, and the PDE residual u_t - L^2 u."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .exprcore import (
    Expr,
    ZeroCertificate,
    add,
    as_expr,
    differentiate,
    exp,
    is_zero,
    mul,
    power,
    sub,
    substitute,
    sym,
)
from .jet import U, JetSpace

# Abstract profile: f1..f6 stand for f', ..., f^(6) and e2f for e^{-2f}.
PROFILE_SYMBOLS = ("f1", "f2", "f3", "f4", "f5", "f6")
E2F = sym("e2f")


def _abstract_chains() -> dict:
    chains = {PROFILE_SYMBOLS[k]: {"x": sym(PROFILE_SYMBOLS[k + 1])} for k in range(len(PROFILE_SYMBOLS) - 1)}
    chains["e2f"] = {"x": mul(-2, sym("f1"), E2F)}
    return chains


ABSTRACT_SPACE = U.with_chains(_abstract_chains())

COEFFICIENT_KEYS = ("u_x", "u_xx", "u_xxx", "u_xxxx", "u_yy", "u_xyy", "u_xxyy", "u_yyyy")


def specialize(e: Expr, f) -> Expr:
    """Replace the abstract profile symbols in ``e`` by derivatives of ``f``."""
    f = as_expr(f)
    table = {}
    d = f
    for name in PROFILE_SYMBOLS:
        d = differentiate(d, "x")
        table[name] = d
    table["e2f"] = exp(mul(-2, f))
    return substitute(e, table)


@dataclass(frozen=True)
class CoefficientTable:
    """Coefficients of L^2 u on the eight derivative coordinates it touches."""

    coefficients: Mapping
    certificates: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if tuple(sorted(self.coefficients)) != tuple(sorted(COEFFICIENT_KEYS)):
            raise ValueError("coefficient table must have exactly the eight L^2 keys")
        object.__setattr__(self, "coefficients", MappingProxyType(dict(self.coefficients)))
        object.__setattr__(self, "certificates", MappingProxyType(dict(self.certificates)))

    def __getitem__(self, key: str) -> Expr:
        return self.coefficients[key]

    def items(self):
        return ((k, self.coefficients[k]) for k in COEFFICIENT_KEYS)

    def contract(self, space: JetSpace = U) -> Expr:
        """sum_J c_J u_J for the dependent variable of ``space``."""
        return add(*(mul(c, space.symbol(U.parse(k))) for k, c in self.items()))

    @property
    def certified(self) -> bool:
        return bool(self.certificates) and all(c.is_zero for c in self.certificates.values())


class SurfaceOperator:
    """L and L^2 for a profile f(x); ``f=None`` gives the abstract profile.

    ``domain`` is an (lo, hi) sampling box for x used by zero tests.
    """

    def __init__(self, f=None, domain: tuple | None = None, params: Mapping | None = None):
        self.params = dict(params or {})
        if f is None:
            self.f = None
            self.space = ABSTRACT_SPACE
            self.derivatives = tuple(sym(n) for n in PROFILE_SYMBOLS[:4])
            self.e2f = E2F
        else:
            self.f = as_expr(f)
            self.space = U
            ds = []
            d = self.f
            for _ in range(4):
                d = differentiate(d, "x")
                ds.append(d)
            self.derivatives = tuple(ds)
            self.e2f = exp(mul(-2, self.f))
            prev = self.f
            for d in self.derivatives:
                if differentiate(prev, "x") is not d:
                    raise AssertionError("cached profile derivative disagrees with differentiate")
                prev = d
        self.e4f = power(self.e2f, 2)
        self.domain = tuple(domain) if domain is not None else None
        self._rhs = None
        self._table = None

    @property
    def is_abstract(self) -> bool:
        return self.f is None

    @property
    def fp(self) -> Expr:
        return self.derivatives[0]

    @property
    def fpp(self) -> Expr:
        return self.derivatives[1]

    @property
    def fppp(self) -> Expr:
        return self.derivatives[2]

    @property
    def fpppp(self) -> Expr:
        return self.derivatives[3]

    def domain_hints(self, extra: Mapping | None = None) -> dict:
        hints = {}
        if self.domain is not None:
            hints["x"] = self.domain
        hints.update(extra or {})
        return hints

    def laplace_apply(self, F, partial: bool = False) -> Expr:
        """f' F_x + F_xx + e^{-2f} F_yy with total derivatives on jets.

        ``partial=True`` forces plain partial derivatives, treating u and its
        jets as constants (used for coefficient functions such as zeta(x, y, t, u)).
        """
        F = as_expr(F)
        sp = self.space
        if sp.jets_in(F) and not partial:
            Dx = sp.total_derivative(F, "x")
            Dxx = sp.total_derivative(Dx, "x")
            Dyy = sp.total_derivative(sp.total_derivative(F, "y"), "y")
        else:
            Dx = sp.explicit_partial(F, "x")
            Dxx = sp.explicit_partial(Dx, "x")
            Dyy = sp.explicit_partial(sp.explicit_partial(F, "y"), "y")
        return add(mul(self.fp, Dx), Dxx, mul(self.e2f, Dyy))

    def biharmonic_apply(self, F, partial: bool = False) -> Expr:
        return self.laplace_apply(self.laplace_apply(F, partial), partial)

    def pde_residual(self, u_expr) -> Expr:
        """u_t - L^2 u for a concrete u(x, y, t)."""
        u_expr = as_expr(u_expr)
        return sub(self.space.explicit_partial(u_expr, "t"), self.biharmonic_apply(u_expr))

    def rhs(self) -> Expr:
        """L^2 u as a jet expression in the eight coordinates."""
        if self._rhs is None:
            self._rhs = self.biharmonic_apply(sym("u"))
        return self._rhs

    def expected_coefficients(self) -> dict:
        fp, fpp, fppp = self.fp, self.fpp, self.fppp
        e2, e4 = self.e2f, self.e4f
        return {
            "u_xxxx": as_expr(1),
            "u_xxx": mul(2, fp),
            "u_xx": add(mul(2, fpp), power(fp, 2)),
            "u_x": add(fppp, mul(fp, fpp)),
            "u_yy": mul(-2, e2, sub(fpp, power(fp, 2))),
            "u_xyy": mul(-2, fp, e2),
            "u_xxyy": mul(2, e2),
            "u_yyyy": e4,
        }

    def expanded_coefficients(self, seed: int = 0) -> CoefficientTable:
        """The 8-term expansion of L^2 u, each entry certified against the
        coefficient read off the direct expansion of L(L u)."""
        if self._table is not None:
            return self._table
        direct = self.rhs()
        jets = self.space.jets_in(direct)
        stray = sorted(set(jets) - set(COEFFICIENT_KEYS))
        expected = self.expected_coefficients()
        certs = {}
        for k in COEFFICIENT_KEYS:
            read = differentiate(direct, k)
            certs[k] = is_zero(sub(read, expected[k]), self.domain_hints(), seed=seed)
        for k in stray:
            certs[k] = is_zero(differentiate(direct, k), self.domain_hints(), seed=seed)
        self._table = CoefficientTable(expected, certs)
        return self._table

    def certify_solution(self, u_expr, hints: Mapping | None = None, seed: int = 0) -> ZeroCertificate:
        return is_zero(self.pde_residual(u_expr), self.domain_hints(hints), seed=seed)


__all__ = [
    "SurfaceOperator", "CoefficientTable", "COEFFICIENT_KEYS", "PROFILE_SYMBOLS", "E2F",
    "ABSTRACT_SPACE", "specialize",
]
