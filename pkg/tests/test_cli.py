import json

import jsonschema
import pytest

from bhsym.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main
from bhsym.report import schema


def run(tmp_path, *argv):
    path = tmp_path / "report.json"
    code = main([*argv, "--report", str(path)])
    report = json.loads(path.read_text()) if path.exists() else None
    if report is not None:
        jsonschema.validate(report, schema())
    return code, report


def _without_timings(report):
    return {k: v for k, v in report.items() if k != "timings"}


# -- catalog ------------------------------------------------------------------------

def test_catalog(tmp_path, capsys):
    code, report = run(tmp_path, "catalog")
    out = capsys.readouterr().out
    assert code == EXIT_OK and report["passed"]
    assert "tractoid" in out and "-b3^2" in out
    for subtype in ("sphere", "spindle", "bulge"):
        assert subtype in out


# -- verify-symmetry ------------------------------------------------------------------

def test_verify_symmetry_cylinder_all(tmp_path):
    code, report = run(tmp_path, "verify-symmetry", "--family", "cylinder", "--all")
    assert code == EXIT_OK
    assert set(report["inputs"]["generators"]) == {"X1", "X2", "X3", "Xu", "X5", "X6", "X7"}
    assert all(c["verdict"] == "zero" for c in report["checks"])


def test_verify_symmetry_single_generator(tmp_path):
    code, report = run(tmp_path, "verify-symmetry", "--family", "power_law", "--generator", "X4",
                       "--params", "α2=0,α3=1/2,β5=1")
    assert code == EXIT_OK and report["inputs"]["generators"] == ["X4"]


def test_verify_symmetry_rejects_foreign_generator(tmp_path):
    code, report = run(tmp_path, "verify-symmetry", "--family", "cylinder", "--generator", "power_law.X4")
    assert code == EXIT_USAGE and report is None


def test_verify_symmetry_arbitrary_profile_and_bad_params(tmp_path):
    code, _ = run(tmp_path, "verify-symmetry", "--family", "arbitrary", "--f", "x^2",
                       "--generator", "X1", "--no-determining")
    assert code == EXIT_OK
    code, _ = run(tmp_path, "verify-symmetry", "--family", "cylinder", "--params", "b4=0")
    assert code == EXIT_USAGE


def test_verify_symmetry_is_reproducible(tmp_path):
    _, first = run(tmp_path, "verify-symmetry", "--family", "tractoid", "--seed", "3")
    _, second = run(tmp_path, "verify-symmetry", "--family", "tractoid", "--seed", "3", "--threads", "2")
    assert _without_timings(first) == _without_timings(second)


# -- verify-solution ---------------------------------------------------------------------

def test_verify_solution_example_one(tmp_path):
    code, report = run(tmp_path, "verify-solution", "--example", "1")
    assert code == EXIT_OK
    checks = {c["name"]: c for c in report["checks"]}
    assert checks["symbolic.residual"]["verdict"] == "zero"
    assert checks["finite_difference.convergence"]["verdict"] == "exact"


def test_verify_solution_example_three(tmp_path):
    code, report = run(tmp_path, "verify-solution", "--example", "3")
    assert code == EXIT_OK
    study = {c["name"]: c for c in report["checks"]}["finite_difference.convergence"]["detail"]
    assert abs(study["order"] - 2.0) <= 0.2


def test_verify_solution_nonzero_residual(tmp_path):
    code, report = run(tmp_path, "verify-solution", "--f", "ln(x)", "--u", "t")
    assert code == EXIT_FAILED
    assert report["checks"][0]["verdict"] == "nonzero" and not report["passed"]


def test_verify_solution_custom_pair(tmp_path):
    code, _ = run(tmp_path, "verify-solution", "--f", "ln(b4)", "--u", "x^4/24 + t",
                  "--params", "b4=2", "--x-range", "0:1")
    assert code == EXIT_OK


@pytest.mark.parametrize("argv", [
    ["verify-solution"],
    ["verify-solution", "--f", "x", "--u", "x +"],
    ["verify-solution", "--example", "1", "--x-range", "2:1"],
])
def test_verify_solution_usage_errors(tmp_path, argv):
    assert run(tmp_path, *argv)[0] == EXIT_USAGE


# -- reduce -------------------------------------------------------------------------------

def test_reduce_translation_on_cylinder(tmp_path, capsys):
    code, report = run(tmp_path, "reduce", "--subalgebra", "translation", "--family", "cylinder")
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "derived: -c1/a = psi_hhhh\n" in out
    ode = {c["name"]: c for c in report["checks"]}["translation.ode.printed_form"]
    assert ode["verdict"] == "matches"


def test_reduce_translation_lists_mixed_terms(tmp_path, capsys):
    code, report = run(tmp_path, "reduce", "--subalgebra", "translation", "--f", "sin(x)")
    assert code == EXIT_OK
    step = {c["name"]: c for c in report["checks"]}["translation.two_variable.printed_form"]
    assert {d["monomial"] for d in step["detail"]["term_diff"]} == {"phi_hvv", "phi_hhvv"}


def test_reduce_rejects_zero_a(tmp_path):
    assert run(tmp_path, "reduce", "--subalgebra", "translation", "--a", "0")[0] == EXIT_USAGE


# -- mesh ------------------------------------------------------------------------------------

def test_mesh_sphere(tmp_path):
    out = tmp_path / "sphere.obj"
    code, report = run(tmp_path, "mesh", "--family", "cos_family", "--params", "a5=1,b6=1",
                       "--nx", "64", "--ny", "64", "--out", str(out))
    assert code == EXIT_OK and out.exists()
    radius = {c["name"]: c for c in report["checks"]}["mesh.sphere_radius"]
    assert radius["passed"]


def test_mesh_power_law_figure_parameters(tmp_path):
    out = tmp_path / "pl.obj"
    code, _ = run(tmp_path, "mesh", "--family", "power_law", "--params", "a2=0,a3=1/2,b5=1",
                  "--x-range", "0.25:5", "--nx", "16", "--ny", "16", "--out", str(out))
    assert code == EXIT_OK and out.stat().st_size > 0


def test_mesh_bad_path(tmp_path):
    code, _ = run(tmp_path, "mesh", "--family", "cylinder", "--out", str(tmp_path / "missing" / "c.obj"))
    assert code == EXIT_USAGE


# -- discrepancies and parser -------------------------------------------------------------------

def test_discrepancies_quick(tmp_path):
    code, report = run(tmp_path, "discrepancies", "--quick")
    assert code == EXIT_OK
    names = {c["name"] for c in report["checks"]}
    assert "reductions.translation.two_variable" in names


def test_unknown_command_and_bad_report_path(tmp_path):
    assert main(["frobnicate"]) == EXIT_USAGE
    assert main(["catalog", "--report", str(tmp_path / "no" / "r.json")]) == EXIT_USAGE
    assert main(["catalog", "--threads", "0"]) == EXIT_USAGE
