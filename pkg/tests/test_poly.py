from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from syzcurves.poly import (NotDivisibleError, ParseError, Polynomial, det3, discriminant, divides,
                            exact_divide, gcd, homogenize, is_squarefree, parse, resultant, to_text)
from syzcurves import catalog

X, Y, Z, T = sympy.symbols("x y z t")


def to_sympy(f: Polynomial):
    return sympy.sympify(to_text(f).replace("^", "**"), locals={"x": X, "y": Y, "z": Z, "t": T})


# strategies ---------------------------------------------------------------

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
monos = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2), st.integers(0, 1))
polys = st.dictionaries(monos, coeffs, max_size=6).map(Polynomial)


# parsing and printing ------------------------------------------------------


def test_parse_product_plus_one():
    s = parse("x*y+1")
    assert s.terms == {(1, 1, 0, 0): 1, (0, 0, 0, 0): 1}


def test_zero_has_sentinel_degree():
    z = parse("0")
    assert z.is_zero()
    assert z.degree() == float("-inf")


def test_expansion_identity_cancels():
    assert parse("(x+y)^2 - x^2 - 2*x*y - y^2").is_zero()


@pytest.mark.parametrize("text,pos", [("x^3+", 4), ("x**", 3), ("2*w", 2), ("(x+y", 4)])
def test_parse_errors_carry_a_position(text, pos):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.position == pos


def test_rational_coefficients_print_exactly():
    f = parse("3/4*x^2*y - 1/6*z^3")
    assert to_text(f) == "3/4*x^2*y-1/6*z^3"


@settings(max_examples=60, deadline=None)
@given(polys)
def test_print_parse_roundtrip(f):
    assert parse(to_text(f)) == f


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_product_matches_sympy(f, g):
    assert sympy.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0


# calculus and homogenisation -----------------------------------------------


def test_derivatives():
    assert parse("x^2*y").diff("x") == parse("2*x*y")
    assert parse("x+y").diff("t").is_zero()


@settings(max_examples=40, deadline=None)
@given(polys)
def test_derivative_matches_sympy(f):
    assert sympy.expand(to_sympy(f.diff("y")) - sympy.diff(to_sympy(f), Y)) == 0


def test_homogenize_linear():
    assert homogenize(parse("x+1"), 1, "z") == parse("x+z")


def test_homogenized_briancon_polynomials_match_displays(f0, f0p):
    assert homogenize(catalog.build_g("g"), 10, "z") == f0
    assert homogenize(catalog.build_g("g'"), 10, "z") == f0p


# division and gcd ----------------------------------------------------------


def test_exact_division():
    assert exact_divide(parse("x^2-y^2"), parse("x-y")) == parse("x+y")
    with pytest.raises(NotDivisibleError):
        exact_divide(parse("x^2+1"), parse("x-y"))


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_division_undoes_multiplication(f, g):
    if g.is_zero():
        return
    assert exact_divide(f * g, g) == f
    assert divides(g, f * g)


def test_gcd_examples(f0):
    assert gcd(parse("x*y"), parse("x*z")) == parse("x")
    assert gcd(f0, f0) == f0.primitive() or gcd(f0, f0).primitive() == f0.primitive()
    assert gcd(f0.diff("x"), f0.diff("y")).is_constant()


def test_partials_of_f0_coprime_by_sympy(f0):
    # independent oracle for the coprimality of f0_x and f0_y
    g = sympy.gcd(to_sympy(f0.diff("x")), to_sympy(f0.diff("y")))
    assert sympy.Poly(g, X, Y, Z).total_degree() == 0


@settings(max_examples=30, deadline=None)
@given(polys, polys, polys)
def test_gcd_agrees_with_sympy_up_to_scale(a, b, c):
    f, g = a * c, b * c
    if f.is_zero() or g.is_zero():
        return
    ours = to_sympy(gcd(f, g))
    theirs = sympy.gcd(to_sympy(f), to_sympy(g))
    ratio = sympy.cancel(ours / theirs)
    assert ratio.is_number and ratio != 0


# resultants, determinants, squarefreeness ----------------------------------


def test_resultant_by_hand():
    assert resultant(parse("y^2-x"), parse("y-1"), "y") == parse("1-x")


@settings(max_examples=25, deadline=None)
@given(polys, polys)
def test_resultant_matches_sympy(f, g):
    if f.degree_in("y") < 1 or g.degree_in("y") < 1:
        return
    ours = to_sympy(resultant(f, g, "y"))
    assert sympy.expand(ours - sympy.resultant(to_sympy(f), to_sympy(g), Y)) == 0


def test_line_discriminants_reproduce_published_factors():
    m, c = catalog.line_discriminant("x=tz")
    assert m == 20
    assert c in (parse("32768*t^3-768*t^2+1824*t-243"), -parse("32768*t^3-768*t^2+1824*t-243"))
    m, c = catalog.line_discriminant("y=tx")
    published = parse("282429536481*t^5+276496482330144*t^4+2414080421160192*t^3"
                      "+16059343010660352*t^2+2540256075186176*t+91534343012352")
    assert m == 39
    assert c.primitive() in (published.primitive(), -published.primitive())


def test_discriminant_of_quadratic():
    d = discriminant(parse("x^2+t*x+1"), "x")
    assert to_sympy(d) == sympy.expand(sympy.discriminant(X ** 2 + T * X + 1, X)) or \
        sympy.expand(to_sympy(d) + sympy.discriminant(X ** 2 + T * X + 1, X)) == 0


def test_det3_trivia():
    one, zero = Polynomial.constant(1), Polynomial.zero()
    assert det3([[one, zero, zero], [zero, one, zero], [zero, zero, one]]) == one
    x, y, z = parse("x"), parse("y"), parse("z")
    a, b, c = parse("x^2"), parse("y*z"), parse("1")
    assert det3([[x, y, z], [x, y, z], [a, b, c]]).is_zero()


def test_squarefree_examples(f0):
    assert not is_squarefree(parse("(x+y)^2"))
    assert is_squarefree(parse("x*y*z"))
    assert is_squarefree(f0)
    assert not is_squarefree(f0 * f0)
    assert is_squarefree(parse("(x+y)^2"), exact=True).certificate
