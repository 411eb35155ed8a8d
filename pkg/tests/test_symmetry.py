from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bhsym.exprcore import P, is_zero, sub, sym
from bhsym.geometry import CONCRETE_FAMILIES, SurfaceFamily
from bhsym.jet import PointSymmetryCandidate
from bhsym.operator import SurfaceOperator
from bhsym.reductions import example_solution
from bhsym.symmetry import (
    REPAIRED_EQUATIONS,
    GeneratorError,
    SolutionWitness,
    UnsupportedFlowError,
    catalog_generators,
    certify_candidate_zero,
    certify_equal,
    combine,
    commutator,
    determining_residuals,
    extra_generators,
    find_generator,
    flow,
    invariance_residual,
    transform_solution,
    verify_family,
    verify_flow_maps_solution,
)

NON_CATALOG = ("x^2", "sin(x)", "x^3/3")


def gen(family, name):
    return find_generator(family, name)


# -- catalog ----------------------------------------------------------------------

def test_minimal_algebra_for_arbitrary_profile():
    names = [g.short_name for g in catalog_generators("arbitrary")]
    assert names == ["X1", "X2", "X3", "Xu"]
    X1, X2, X3, Xu = (g.candidate for g in catalog_generators("arbitrary"))
    assert X1.phi is P("1") and X2.tau is P("1") and X3.zeta is sym("u") and Xu.zeta is P("1")


def test_power_law_scaling_generator():
    X4 = gen("power_law", "X4").candidate
    assert X4.xi is P("(x - a2)/4")
    assert is_zero(sub(X4.phi, P("-(a3 - 1)*y/4"))).is_zero
    assert X4.tau is sym("t") and X4.zeta.is_zero_const


def test_cylinder_rotation_generator():
    X6 = gen("cylinder", "X6").candidate
    assert X6.xi is P("-b4^2*y") and X6.phi is sym("x")
    assert [g.short_name for g in catalog_generators("cylinder")][4:] == ["X5", "X6", "X7"]


def test_family_scoped_names_resolve_collisions():
    assert gen("conic_sinh", "X12").name == "conic_sinh.X12"
    assert gen("tractoid", "X12").name == "tractoid.X12"
    assert gen("conic_sinh", "X12").candidate != gen("tractoid", "X12").candidate


def test_generator_lookup_errors():
    with pytest.raises(GeneratorError):
        find_generator("cylinder", "power_law.X4")
    with pytest.raises(GeneratorError):
        find_generator("cylinder", "X99")
    with pytest.raises(GeneratorError):
        catalog_generators("torus")


# -- invariance -------------------------------------------------------------------

@pytest.mark.parametrize("family", CONCRETE_FAMILIES)
def test_y_translation_on_every_family(family):
    assert invariance_residual(gen(family, "X1"), family=SurfaceFamily.create(family)).is_zero


def test_power_law_scaling_is_a_symmetry():
    assert invariance_residual(gen("power_law", "X4"), family=SurfaceFamily.create("power_law")).is_zero


def test_power_law_scaling_fails_on_cylinder():
    fam = SurfaceFamily.create("cylinder")
    assert invariance_residual(gen("power_law", "X4"), fam.profile(), fam).is_nonzero


@pytest.mark.parametrize("family", CONCRETE_FAMILIES)
def test_catalog_generators_pass_invariance_and_determining(family):
    verdicts = verify_family(SurfaceFamily.create(family))
    assert verdicts and all(v.passed for v in verdicts), [v.to_dict() for v in verdicts if not v.passed]


@pytest.mark.parametrize("f", NON_CATALOG)
def test_minimal_algebra_on_non_catalog_profiles(f):
    fam = SurfaceFamily.create("arbitrary", f=f)
    for g in catalog_generators("arbitrary"):
        assert invariance_residual(g, f, fam).is_zero, g.name


@pytest.mark.parametrize("f", NON_CATALOG)
def test_extra_generators_fail_on_non_catalog_profiles(f):
    for g in extra_generators():
        assert invariance_residual(g, P(f), SurfaceFamily.create("arbitrary", f=f)).is_nonzero, g.name


def test_solution_witness():
    op = SurfaceOperator(P("ln(2)"))
    assert SolutionWitness().certify(op).is_zero
    assert SolutionWitness(P("x + 3*y")).certify(op).is_zero
    assert SolutionWitness(P("x^4")).certify(op).is_nonzero
    g = catalog_generators("cylinder", SolutionWitness(P("x*y")))[3]
    assert g.candidate.zeta is P("x*y")
    assert invariance_residual(g, family=SurfaceFamily.create("cylinder")).is_zero


# -- determining equations --------------------------------------------------------

def test_u_scaling_satisfies_every_determining_equation():
    rep = determining_residuals(gen("arbitrary", "X3"), P("sin(x)"))
    assert len(rep.certificates) == 14 and rep.all_zero


def test_cylinder_rotation_third_equation():
    fam = SurfaceFamily.create("cylinder")
    rep = determining_residuals(gen("cylinder", "X6"), family=fam)
    assert rep.certificates["e3"].is_zero


def test_x_scaling_breaks_second_equation_on_cylinder():
    X = PointSymmetryCandidate.from_text(xi="x", name="x d_x")
    rep = determining_residuals(X, P("ln(3/2)"))
    assert rep.residuals["e2"] is P("4")
    assert "e2" in rep.failing()


def test_printed_forms_of_repaired_equations_reject_catalog_generators():
    failing = set()
    for fid in ("conic_sinh", "hyperboloid_cosh", "cos_family", "plane"):
        for g in catalog_generators(fid):
            rep = determining_residuals(g, family=SurfaceFamily.create(fid), printed=True)
            failing |= set(rep.failing())
    assert failing and failing <= set(REPAIRED_EQUATIONS)


# -- commutators ------------------------------------------------------------------

X1, X2, X3 = (g.candidate for g in catalog_generators("arbitrary")[:3])


def test_translations_commute_with_time_and_scaling_combination():
    a, b = sym("a"), sym("b")
    assert certify_candidate_zero(commutator(X1, combine((a, X2), (b, X3)))).is_zero


def test_time_translation_and_scaling_bracket():
    X4 = gen("power_law", "X4").candidate
    assert certify_equal(commutator(X2, X4), X2).is_zero


def test_y_translation_and_scaling_bracket():
    X4 = gen("power_law", "X4").candidate
    assert certify_equal(commutator(X1, X4), combine((P("-(a3 - 1)/4"), X1))).is_zero


CYL = [g.candidate for g in catalog_generators("cylinder") if g.short_name != "Xu"]
cyl_gens = st.sampled_from(CYL)


@given(cyl_gens, cyl_gens)
def test_commutator_antisymmetric(A, B):
    assert certify_candidate_zero(combine((1, commutator(A, B)), (1, commutator(B, A)))).is_zero


@given(cyl_gens, cyl_gens, cyl_gens)
def test_jacobi_identity(A, B, C):
    total = combine((1, commutator(A, commutator(B, C))), (1, commutator(B, commutator(C, A))),
                    (1, commutator(C, commutator(A, B))))
    assert certify_candidate_zero(total).is_zero


# -- flows ------------------------------------------------------------------------

def test_time_translation_flow():
    assert flow(X2).map(1)["t"] is P("t + 1")


def test_u_scaling_flow():
    assert flow(X3).map(sym("e"))["u"] is P("u*exp(e)")


def test_power_law_scaling_flow():
    m = flow(gen("power_law", "X4")).map(sym("e"))
    assert is_zero(sub(m["x"], P("a2 + (x - a2)*exp(e/4)"))).is_zero
    assert is_zero(sub(m["y"], P("y*exp(-(a3 - 1)*e/4)"))).is_zero
    assert m["t"] is P("t*exp(e)")


def test_cylinder_scaling_flow():
    m = flow(gen("cylinder", "X7")).map(sym("e"))
    assert (m["x"], m["y"], m["t"], m["u"]) == (P("x*exp(e/4)"), P("y*exp(e/4)"), P("t*exp(e)"), sym("u"))


def test_rotation_has_no_closed_form_flow():
    with pytest.raises(UnsupportedFlowError):
        flow(gen("cylinder", "X6"))


FLOWING = [X1, X2, X3] + [gen(fid, name).bound(SurfaceFamily.create(fid, params)) for fid, name, params in (
    ("cylinder", "X5", None), ("cylinder", "X7", None), ("plane", "X8", None),
    ("tractoid", "X11", None), ("power_law", "X4", {"a2": "1/3", "a3": 3}),
)]
coords = st.floats(-2, 2, allow_nan=False)


@given(st.sampled_from(FLOWING), st.floats(-1, 1), st.floats(-1, 1), coords, coords, coords, coords)
def test_flow_composition(X, e1, e2, x, y, t, u):
    fl = flow(X)
    pt = {"x": x, "y": y, "t": t, "u": u}
    two = fl(fl(pt, e2), e1)
    one = fl(pt, e1 + e2)
    for k in pt:
        assert abs(two[k] - one[k]) <= 1e-12 * max(1.0, abs(one[k]))


def test_flows_map_solutions_to_solutions():
    ex1, ex2 = example_solution(1), example_solution(2)
    assert verify_flow_maps_solution(X2, Fraction(1, 3), ex1.u, ex1.f, hints=ex1.sampling_hints()).is_zero
    assert verify_flow_maps_solution(X3, Fraction(1, 2), ex2.u, ex2.f, hints=ex2.sampling_hints()).is_zero
    X7 = gen("cylinder", "X7")
    assert verify_flow_maps_solution(X7, Fraction(1, 2), ex1.u, ex1.f, hints=ex1.sampling_hints()).is_zero


def test_non_symmetry_flow_breaks_solution():
    x_scaling = PointSymmetryCandidate.from_text(xi="x")
    ex2 = example_solution(2)
    assert verify_flow_maps_solution(x_scaling, 1, ex2.u, ex2.f, hints=ex2.sampling_hints()).is_nonzero


def test_transform_solution_under_time_translation():
    assert transform_solution(X2, 1, P("t + x")) is P("t - 1 + x")
