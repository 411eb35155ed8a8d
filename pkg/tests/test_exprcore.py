import random
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from bhsym.exprcore import (
    DomainError,
    P,
    ParseError,
    add,
    const,
    cos,
    cosh,
    coth,
    differentiate,
    evaluate,
    exp,
    is_zero,
    ln,
    mul,
    normalize,
    power,
    sin,
    sinh,
    substitute,
    sym,
    tanh,
    to_text,
)
from oracle import to_sympy

x, y = sym("x"), sym("y")

# -- random trees --------------------------------------------------------------

_UNARY = (sin, cos, exp, sinh, cosh, tanh)
leaves = st.one_of(
    st.sampled_from([x, y]),
    st.sampled_from([Fraction(-2), Fraction(-1), Fraction(1, 2), Fraction(1), Fraction(3)]).map(const),
)


def _extend(children):
    return st.one_of(
        st.tuples(st.sampled_from(_UNARY), children).map(lambda p: p[0](p[1])),
        st.lists(children, min_size=2, max_size=3).map(lambda cs: add(*cs)),
        st.lists(children, min_size=2, max_size=3).map(lambda cs: mul(*cs)),
        st.tuples(children, st.sampled_from([2, 3])).map(lambda p: power(*p)),
    )


trees = st.recursive(leaves, _extend, max_leaves=8)
points = st.fixed_dictionaries({
    "x": st.floats(-1.5, 1.5).map(lambda v: Fraction(v).limit_denominator(1000)),
    "y": st.floats(-1.5, 1.5).map(lambda v: Fraction(v).limit_denominator(1000)),
})


def _random_tree(rng: random.Random, depth: int):
    if depth == 0 or rng.random() < 0.25:
        return rng.choice([x, y, const(rng.randint(-3, 3)), const(Fraction(rng.randint(1, 5), rng.randint(1, 5)))])
    k = rng.randrange(4)
    if k == 0:
        return rng.choice(_UNARY)(_random_tree(rng, depth - 1))
    if k == 1:
        return add(*(_random_tree(rng, depth - 1) for _ in range(rng.randint(2, 3))))
    if k == 2:
        return mul(*(_random_tree(rng, depth - 1) for _ in range(rng.randint(2, 3))))
    return power(_random_tree(rng, depth - 1), rng.choice([2, 3, -1]))


def _close(a, b, rel="1e-30"):
    with mpmath.workdps(60):
        return abs(a - b) <= mpmath.mpf(rel) * max(1, abs(a), abs(b))


# -- parsing --------------------------------------------------------------------

def test_parse_polynomial_shape():
    e = P("x^2 + 2*x + 1")
    assert e.kind == "add"
    assert [c.kind for c in e.args] == ["pow", "mul", "const"]
    assert e is add(power(x, 2), mul(2, x), 1)


def test_parse_log_of_affine():
    e = P("ln(b3*x + b4)")
    assert e is ln(add(mul(sym("b3"), x), sym("b4")))


def test_parse_reports_offset():
    with pytest.raises(ParseError) as err:
        P("sin(x")
    assert err.value.offset == 5


def test_parse_unknown_function():
    with pytest.raises(ParseError) as err:
        P("foo(x)")
    assert err.value.offset == 0


@pytest.mark.parametrize("text", ["1/2*x", "0.25*x", "x^(3/2)", "-x^2", "2^-1", "e2f*u_xxyy"])
def test_parse_literals_and_precedence(text):
    s = to_sympy(P(text))
    assert sympy.simplify(s - sympy.parse_expr(text.replace("^", "**"))) == 0


@given(trees)
def test_print_parse_round_trip(e):
    assert P(to_text(e)) is e


# -- normalization --------------------------------------------------------------

def test_normalize_examples():
    assert mul(x, x) is power(x, 2)
    assert add(mul(0, sym("u_xx")), sym("u_t")) is sym("u_t")
    assert add(Fraction(1, 2), Fraction(1, 3)) is const(Fraction(5, 6))


def test_rationals_lowest_terms():
    c = const(Fraction(6, -4))
    assert c.value.numerator == -3 and c.value.denominator == 2


@given(trees)
def test_normalize_idempotent(e):
    n = normalize(e)
    assert normalize(n) is n


def test_normalize_idempotent_thousand_trees():
    rng = random.Random(7)
    done = 0
    while done < 1000:
        try:
            e = _random_tree(rng, 8)
        except DomainError:  # e.g. a constant subtree folded to 0^-1
            continue
        n = normalize(e)
        assert normalize(n) is n
        done += 1


@given(trees)
def test_structure_invariants(e):
    def walk(n):
        if n.kind in ("add", "mul"):
            assert all(c.kind != n.kind for c in n.args)
            assert sum(c.kind == "const" for c in n.args) <= 1
            rest = [c for c in n.args if c.kind != "const"]
            keys = [c.sort_key() for c in rest]
            assert keys == sorted(keys)
            if len(rest) < len(n.args):  # the folded constant leads a product, trails a sum
                assert n.args[0 if n.kind == "mul" else -1].kind == "const"
        if n.kind == "pow":
            assert n.value not in (0, 1)
        for c in n.args:
            walk(c)
    walk(e)


# -- substitution ---------------------------------------------------------------

def test_substitute_examples():
    e = substitute(mul(sym("f1"), sym("u_x")), {"f1": P("1/(2*x)")})
    assert e is P("u_x/(2*x)")
    assert substitute(power(x, 2), {"x": x}) is power(x, 2)
    assert substitute(P("exp(-2*f)"), {"f": ln(sym("b4"))}) is power(sym("b4"), -2)


def test_substitute_is_simultaneous():
    assert substitute(P("x + 2*y"), {"x": y, "y": x}) is P("y + 2*x")


# -- differentiation ------------------------------------------------------------

def test_derivative_examples():
    assert differentiate(power(x, 3), "x") is mul(3, power(x, 2))
    assert differentiate(P("ln(b3*x + b4)"), "x") is P("b3/(b3*x + b4)")
    d = differentiate(P("a7*sinh(x/b7 + a8)"), "x")
    assert d is P("a7*cosh(x/b7 + a8)/b7")


def test_coth_derivative_stays_in_function_set():
    assert differentiate(coth(x), "x") is P("1 - coth(x)^2")


@given(trees, points)
def test_derivative_matches_sympy(e, pt):
    mine = evaluate(differentiate(e, "x"), pt, 30)
    ref = sympy.diff(to_sympy(e), sympy.Symbol("x"))
    sub = {sympy.Symbol(k): sympy.Rational(v.numerator, v.denominator) for k, v in pt.items()}
    with mpmath.workdps(60):
        want = mpmath.mpf(str(sympy.N(ref.subs(sub), 45)))
    assert _close(mine, want, "1e-25")


@given(trees, trees, points)
def test_derivative_sum_rule(a, b, pt):
    lhs = evaluate(differentiate(add(a, b), "x"), pt, 40)
    with mpmath.workdps(60):
        rhs = evaluate(differentiate(a, "x"), pt, 40) + evaluate(differentiate(b, "x"), pt, 40)
    assert _close(lhs, rhs)


@given(trees, trees, points)
def test_derivative_leibniz_rule(a, b, pt):
    lhs = evaluate(differentiate(mul(a, b), "x"), pt, 40)
    with mpmath.workdps(60):
        rhs = (evaluate(differentiate(a, "x"), pt, 40) * evaluate(b, pt, 40)
               + evaluate(a, pt, 40) * evaluate(differentiate(b, "x"), pt, 40))
    assert _close(lhs, rhs)


# -- evaluation -----------------------------------------------------------------

def test_evaluate_examples():
    assert evaluate(ln(x), {"x": 1}, 30) == 0
    v = evaluate(P("sinh(x)^2 - cosh(x)^2"), {"x": Fraction(7, 10)}, 50)
    assert abs(v + 1) < mpmath.mpf("1e-45")


def test_evaluate_domain_error_names_subtree():
    with pytest.raises(DomainError) as err:
        evaluate(P("1/x"), {"x": 0}, 30)
    assert err.value.subtree is not None


def test_evaluate_log_of_negative():
    with pytest.raises(DomainError):
        evaluate(ln(x), {"x": -1}, 30)


def test_evaluate_rejects_low_precision():
    with pytest.raises(ValueError):
        evaluate(x, {"x": 1}, 10)


# -- zero testing ---------------------------------------------------------------

IDENTITIES = [
    "sin(x)^2 + cos(x)^2 - 1",
    "cosh(x)^2 - sinh(x)^2 - 1",
    "exp(ln(x)) - x",
    "ln(exp(x)) - x",
    "tanh(x) - sinh(x)/cosh(x)",
    "coth(x) - cosh(x)/sinh(x)",
    "coth(x)^2 - 1 - sinh(x)^(-2)",
    "1 - tanh(x)^2 - cosh(x)^(-2)",
    "sin(2*x) - 2*sin(x)*cos(x)",
    "cos(2*x) - cos(x)^2 + sin(x)^2",
    "sinh(2*x) - 2*sinh(x)*cosh(x)",
    "cosh(2*x) - cosh(x)^2 - sinh(x)^2",
    "exp(x + y) - exp(x)*exp(y)",
    "ln(x*y) - ln(x) - ln(y)",
    "(x + 1)^2 - x^2 - 2*x - 1",
    "sinh(x) - (exp(x) - exp(-x))/2",
    "cosh(x) - (exp(x) + exp(-x))/2",
    "sqrt(x)^2 - x",
    "sin(x + y) - sin(x)*cos(y) - cos(x)*sin(y)",
    "exp(2*ln(x)) - x^2",
]
HINTS = {"x": (0.5, 2.0), "y": (0.5, 2.0)}


@pytest.mark.parametrize("text", IDENTITIES)
def test_identity_certifies_zero(text):
    assert is_zero(P(text), HINTS).verdict == "zero"


@pytest.mark.parametrize("text", IDENTITIES)
def test_perturbed_identity_certifies_nonzero(text):
    assert is_zero(P(f"{text} + x/1000"), HINTS).verdict == "nonzero"


def test_power_law_classification_identity():
    f = P("a3*ln(x - a2)")
    f1, f2, f3 = (differentiate(f, "x"), differentiate(differentiate(f, "x"), "x"),
                  differentiate(differentiate(differentiate(f, "x"), "x"), "x"))
    e = add(mul(f3, f1), mul(-2, power(f2, 2)))
    cert = is_zero(e, {"x": (1.0, 2.0), "a2": (-1.0, 0.5)})
    assert cert.is_zero


def test_nonzero_polynomial():
    cert = is_zero(P("x^2 - x"))
    assert cert.verdict == "nonzero"


def test_sampling_certificate_metadata():
    cert = is_zero(P("sin(x)^2 + cos(x)^2 - 1"), {"x": (0.1, 1.0)}, symbolic=False)
    assert cert.method == "probabilistic-sampling"
    assert cert.samples >= 32 and cert.digits >= 60


def test_zero_test_is_seed_deterministic():
    e = P("tanh(x)*cosh(x) - sinh(x)")
    assert is_zero(e, seed=3) == is_zero(e, seed=3)


def test_singular_everywhere_is_inconclusive():
    cert = is_zero(P("ln(-x^2 - 1) - ln(-x^2 - 1)*2"), {"x": (0.5, 1.0)})
    assert cert.verdict == "inconclusive"
