import math
import random
import zlib

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from bhsym.exprcore import P, is_zero, mul, power, sub, to_text
from bhsym.geometry import (
    CONCRETE_FAMILIES,
    EmptyDomainError,
    FamilyError,
    SurfaceFamily,
    catalog_listing,
    certify_curvature,
    classification_residual,
    coordinate_patch,
    curvature,
    curvature_hints,
    expected_curvature,
    export_mesh,
    mesh_vertices,
    parse_params,
    profile_v,
    surface_info,
    unit_speed_defect,
    unit_speed_integrand,
)
from oracle import to_sympy


# -- catalog and parameters -------------------------------------------------------

def test_params_accept_greek_and_ascii_aliases():
    assert parse_params("α2=0,a3=1/2,β5=1") == {"a2": 0, "a3": 0.5, "b5": 1}


@pytest.mark.parametrize("family,params", [
    ("power_law", {"a3": 1}), ("power_law", {"a3": 0}), ("power_law", {"b5": -1}),
    ("cylinder", {"b4": 0}), ("cone", {"l": 0}), ("tractoid", {"b3": 0}),
    ("conic_sinh", {"a7": -1}), ("cos_family", {"b6": 0}),
])
def test_parameter_constraints(family, params):
    with pytest.raises(FamilyError):
        SurfaceFamily.create(family, params)


def test_unknown_family_and_parameter():
    with pytest.raises(FamilyError):
        SurfaceFamily.create("torus")
    with pytest.raises(FamilyError):
        SurfaceFamily.create("cylinder", {"b9": 1})


def test_profiles_match_closed_forms():
    want = {
        "power_law": "ln(b5*(x - a2)^a3)", "cylinder": "ln(b4)", "plane": "ln(x + b4)",
        "cone": "ln(l*(x + b4))", "tractoid": "b3*x + C", "conic_sinh": "ln(a7*sinh(x/b7 + a8))",
        "hyperboloid_cosh": "ln(a7*cosh(x/b7 + a8))", "cos_family": "ln(a5*cos(x/b6 + a6))",
    }
    for fid, text in want.items():
        assert SurfaceFamily.create(fid).symbolic_profile() is P(text)


def test_cos_subtypes():
    assert SurfaceFamily.create("cos_family", {"a5": 1, "b6": 1}).subtype == "sphere"
    assert SurfaceFamily.create("cos_family", {"a5": "1/2", "b6": 1}).subtype == "spindle"
    assert SurfaceFamily.create("cos_family", {"a5": 2, "b6": 1}).subtype == "bulge"


def test_catalog_listing_has_every_family():
    names = [e["family"] for e in catalog_listing()]
    assert names == list(CONCRETE_FAMILIES)
    cos = next(e for e in catalog_listing() if e["family"] == "cos_family")
    assert set(cos["subtypes"]) == {"sphere", "spindle", "bulge"}


# -- curvature --------------------------------------------------------------------

def test_curvature_examples():
    assert curvature("cylinder").is_zero_const
    assert curvature("tractoid", symbolic=True) is P("-b3^2")
    assert is_zero(sub(curvature("conic_sinh", symbolic=True), P("-1/b7^2")),
                   {"x": (0.1, 1.0), "b7": (0.5, 2), "a7": (0.2, 0.4), "a8": (0, 0)}).is_zero


@pytest.mark.parametrize("family", CONCRETE_FAMILIES)
def test_curvature_certified_against_closed_form(family):
    assert certify_curvature(family).is_zero


@pytest.mark.parametrize("family", CONCRETE_FAMILIES)
def test_curvature_matches_independent_computation(family):
    fam = SurfaceFamily.create(family)
    X = sympy.Symbol("x")
    w = sympy.exp(to_sympy(fam.symbolic_profile()))
    k = -sympy.diff(w, X, 2) / w
    diff = k - to_sympy(expected_curvature(fam))
    hints = curvature_hints(fam)
    rng = random.Random(1)
    for _ in range(5):
        pt = {sympy.Symbol(s): sympy.Float(rng.uniform(*hints.get(s, (0.5, 1.5))), 40) for s in map(str, diff.free_symbols)}
        assert abs(complex(diff.subs(pt).evalf(40))) < 1e-25


def test_power_law_curvature_scaled_is_constant():
    k = curvature("power_law", symbolic=True)
    scaled = mul(k, power(P("x - a2"), 2))
    assert is_zero(sub(scaled, P("-a3*(a3 - 1)")), {"x": (1, 2), "a2": (0, 0.5), "a3": (0.2, 0.8)}).is_zero


@pytest.mark.parametrize("params", [{"a5": 1, "b6": 1}, {"a5": "1/2", "b6": 1}, {"a5": 2, "b6": "3/2"}])
def test_cos_family_constant_curvature_all_subtypes(params):
    fam = SurfaceFamily.create("cos_family", params)
    k = curvature(fam)
    assert is_zero(sub(k, power(P(str(fam.params["b6"])), -2)), {"x": fam.sampling_box()}).is_zero


def test_curvature_outside_domain():
    with pytest.raises(FamilyError):
        curvature("plane", x=-5)


# -- unit speed and arc length ----------------------------------------------------

def test_unit_speed_integrands():
    assert unit_speed_integrand("cylinder") is P("1")
    assert unit_speed_integrand("plane").is_zero_const
    got = unit_speed_integrand("cos_family", {"a5": "1/2", "b6": 2, "a6": "1/4"})
    want = P("sqrt(1 - sin(x/2 + 1/4)^2/16)")
    assert is_zero(sub(got, want), {"x": (-1, 1)}).is_zero


@pytest.mark.parametrize("family", CONCRETE_FAMILIES)
def test_unit_speed_at_random_points(family):
    fam = SurfaceFamily.create(family)
    rng = random.Random(zlib.crc32(family.encode()))
    lo, hi = fam.sampling_box()
    for _ in range(15):
        assert unit_speed_defect(fam, rng.uniform(lo, hi)) <= 1e-10


def test_arc_length_examples():
    assert profile_v("cylinder", 0.7, params={"a4": "1/5"}) == pytest.approx(0.5, abs=1e-12)
    assert abs(profile_v("cos_family", math.pi / 4) - math.sqrt(2) / 2) <= 1e-10
    assert profile_v("plane", 2.0) == 0.0


def test_arc_length_outside_domain():
    with pytest.raises(FamilyError):
        profile_v("cos_family", 3.0)


# -- domains ----------------------------------------------------------------------

def test_domain_examples():
    d = SurfaceFamily.create("cos_family", {"b6": 2, "a5": 2}).valid_domain()
    assert (d.lo, d.hi) == pytest.approx((-math.pi, math.pi))
    assert not SurfaceFamily.create("cos_family", {"a5": "1/2"}).valid_domain().finite
    assert not SurfaceFamily.create("cylinder").valid_domain().finite


def test_power_law_domain_bound():
    d = SurfaceFamily.create("power_law", {"a2": 1, "a3": "1/2", "b5": 2}).valid_domain()
    assert d.lo == pytest.approx(1 + (1 / (4 * 0.25)) ** (1 / (2 * 0.5 - 2)))


def test_empty_domain():
    with pytest.raises(EmptyDomainError):
        SurfaceFamily.create("conic_sinh", {"a7": 2, "b7": 1}).valid_domain()


# -- classification ODEs ----------------------------------------------------------

@pytest.mark.parametrize("family", CONCRETE_FAMILIES)
def test_classification_residual(family):
    assert classification_residual(family).is_zero


def test_arbitrary_family_has_no_classification_ode():
    fam = SurfaceFamily.create("arbitrary", f="x^2")
    assert fam.profile() is P("x^2")
    with pytest.raises(FamilyError):
        classification_residual(fam)


# -- patches and meshes -----------------------------------------------------------

def test_coordinate_patch_examples():
    assert coordinate_patch("cylinder", 1, 0, {"a4": 0}) == pytest.approx((1.0, 1.5, 0.0))
    assert coordinate_patch("cos_family", 0, 0) == pytest.approx((0.0, 1.0, 0.0), abs=1e-12)


@given(st.sampled_from(["cylinder", "plane", "cos_family", "tractoid"]), st.floats(0.05, 0.95))
def test_quarter_turn_has_zero_second_coordinate(family, s):
    fam = SurfaceFamily.create(family)
    lo, hi = fam.sampling_box()
    p = coordinate_patch(fam, lo + s * (hi - lo), math.pi / 2)
    assert abs(p[1]) < 1e-12


def test_mesh_counts(tmp_path):
    info = export_mesh("cylinder", 4, 4, tmp_path / "c.obj")
    assert (info["vertices"], info["triangles"]) == (16, 24)
    lines = (tmp_path / "c.obj").read_text().splitlines()
    assert sum(l.startswith("v ") for l in lines) == 16
    assert sum(l.startswith("f ") for l in lines) == 24


def test_mesh_seam_is_closed(tmp_path):
    export_mesh("cylinder", 3, 5, tmp_path / "c.obj")
    faces = [tuple(map(int, l.split()[1:])) for l in (tmp_path / "c.obj").read_text().splitlines()
             if l.startswith("f ")]
    used = {i for f in faces for i in f}
    assert used == set(range(1, 16))


def test_sphere_mesh_radius():
    v = mesh_vertices("cos_family", 33, 32, {"a5": 2, "b6": 2}, tol=1e-8)
    assert np.max(np.abs(np.linalg.norm(v, axis=1) - 2.0)) < 1e-6


def test_mesh_rejects_single_column(tmp_path):
    with pytest.raises(ValueError):
        export_mesh("cylinder", 4, 1, tmp_path / "c.obj")


def test_surface_info_reports_curvature():
    info = surface_info("tractoid")
    assert info["curvature_expected"] == "-b3^2"
    assert info["domain"]["hi"] == pytest.approx(math.log(2) * 2)
    assert to_text(P(info["curvature_expression"])) == "-1/4"
