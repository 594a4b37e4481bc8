from fractions import Fraction

import pytest

from syzcurves import catalog
from syzcurves.eigenscheme import (Derivation, EigenschemeError, HypothesisError, PencilSpec, det_certificate,
                                   eigenscheme_ideal, free_pencil_check, is_zero_dimensional, mpog_pencil_check,
                                   pencil_arrangement, plus_one_criterion, quotient_profile)
from syzcurves.jacobian import JacobianEngine, jacobian_triple
from syzcurves.linalg import image_membership, multiplication_map
from syzcurves.poly import Polynomial, homogenize, parse

B = catalog.B_ATYPICAL
ELL = parse("793202173*x+3698829360*y-1039006968*z")
QUAD = parse("106288200*y^2-23416645*y*z-11726872*z^2")


def same_up_to_scale(a, b):
    return a.primitive() in (b.primitive(), -b.primitive())


@pytest.fixture(scope="module")
def I0(f0):
    return eigenscheme_ideal(Derivation.delta(f0))


@pytest.fixture(scope="module")
def I0p(f0p):
    return eigenscheme_ideal(Derivation.delta(f0p))


# ideals ---------------------------------------------------------------------


def test_euler_gives_zero_ideal():
    assert eigenscheme_ideal(Derivation.euler()).is_zero()


def test_d_z_minors():
    zero, one = Polynomial.zero(), Polynomial.constant(1)
    I = eigenscheme_ideal(Derivation(zero, zero, one))
    assert I.generators() == [parse("y"), parse("-x")] or \
        [g for g in I.minors if not g.is_zero()] == [parse("y"), parse("-x")]
    assert is_zero_dimensional(I)


def test_delta_ideal_of_f0(f0, I0):
    fx, fy = f0.diff("x"), f0.diff("y")
    x, y, z = (parse(v) for v in "xyz")
    assert I0.minors == (z * fx, z * fy, -(x * fx + y * fy))
    assert I0.degree == 10
    assert is_zero_dimensional(I0)


def test_non_primitive_theta_is_not_zero_dimensional():
    x, y, z = (parse(v) for v in "xyz")
    with pytest.raises(EigenschemeError):
        is_zero_dimensional(eigenscheme_ideal(Derivation(x * x, x * y, x * z)))
    zero = Polynomial.zero()
    # x d_z: minors (x y, -x^2, 0) share the factor x
    assert not is_zero_dimensional(eigenscheme_ideal(Derivation(zero, zero, x)))


# memberships ----------------------------------------------------------------


def test_published_powers_in_delta_ideal(f0, I0):
    z = parse("z")
    for g in (f0 * f0, z ** 10 * f0, z ** 20):
        assert g in I0
    assert f0 not in I0


def test_published_powers_in_primed_delta_ideal(f0p, I0p):
    z = parse("z")
    for g in (f0p * f0p, z ** 10 * f0p, z ** 20):
        assert g in I0p


def test_smallest_z_power_in_delta_ideals(I0, I0p):
    z = parse("z")
    assert z ** 14 not in I0 and z ** 15 in I0
    assert z ** 17 not in I0p and z ** 18 in I0p


def test_z_powers_lie_in_the_partials_ideal(f0, f0p):
    z = parse("z")
    for f, p in ((f0, 14), (f0p, 17)):
        m = multiplication_map([f.diff("x"), f.diff("y")], p)
        assert image_membership(m, z ** p)
        assert not image_membership(multiplication_map([f.diff("x"), f.diff("y")], p - 1), z ** (p - 1))


def test_unit_identity_homogenises_to_z14(f0):
    A, Bc, _ = catalog.unit_cofactors("g")
    lhs = homogenize(A, 5, "z") * f0.diff("x") + homogenize(Bc, 5, "z") * f0.diff("y")
    assert lhs == parse("z^14")


def test_unit_identities():
    assert catalog.verify_unit_identity("g")
    assert catalog.verify_unit_identity("g'")
    assert not catalog.verify_unit_identity("g", perturb=parse("x"))


# quotients and the plus-one criterion ---------------------------------------


def test_quotient_generators_for_nearly_free_pencil():
    f = catalog.entry("C0(5/8)").projective
    I = eigenscheme_ideal(Derivation.delta(f))
    z = parse("z")
    for g in (f * f, z ** 10 * f, z ** 20):
        prof = quotient_profile(I, g)
        assert prof.verdict == "Proper" and prof.e == 2
        assert same_up_to_scale(prof.ell, ELL)
        assert same_up_to_scale(prof.h, QUAD)


def test_hypothesis_gate_on_degree_five_theta(f0):
    gen = JacobianEngine(jacobian_triple(f0), "exact").exact_generators()[0]
    theta = Derivation(*gen.components())
    with pytest.raises(HypothesisError):
        plus_one_criterion(f0, theta)
    prof = quotient_profile(eigenscheme_ideal(theta), f0)
    assert prof.dims  # raw dims remain available


def test_criterion_on_free_union(f0, fb):
    F = f0 * fb
    res = plus_one_criterion(F, Derivation.delta(f0))
    assert res.label == "Free(9,10)" and res.mdr == 9


def test_criterion_on_mpog_unions():
    for name, label in (("F2(5/8)", "MPOG(9,11,12)"), ("zF2(5/8)", "MPOG(9,12,13)")):
        f = catalog.entry("C0(5/8)").projective
        res = plus_one_criterion(catalog.entry(name).projective, Derivation.delta(f))
        assert res.label == label


def test_free_curve_determinant_is_constant_multiple(fb):
    gens = JacobianEngine(jacobian_triple(fb), "exact").exact_generators()
    q = det_certificate(Derivation(*gens[0].components()), Derivation(*gens[1].components()), fb)
    assert q.is_constant() and not q.is_zero()


def test_mpog_determinants_have_expected_degrees(f0):
    g = [Derivation(*s.components()) for s in JacobianEngine(jacobian_triple(f0), "exact").exact_generators()]
    assert det_certificate(g[0], g[1], f0).degree() == 1
    assert det_certificate(g[0], g[2], f0).degree() == 2


def test_free_union_determinant_is_constant(f0, fb):
    F = f0 * fb
    gens = JacobianEngine(jacobian_triple(F), "modular").exact_generators()
    th = [Derivation(*s.components()) for s in gens]
    q = det_certificate(th[0], th[1], F)
    assert q.is_constant() and not q.is_zero()
    eta = th[1]
    assert eta.degree == 10


# pencils ----------------------------------------------------------------------


def test_pencil_arrangement_products(f0, fb):
    arr = pencil_arrangement(PencilSpec(f0, (Fraction(0), B)))
    assert arr.F == f0 * fb and arr.d == 10
    arr_l = pencil_arrangement(PencilSpec(f0, (Fraction(0), B), True))
    assert int(arr_l.F.degree()) == 21


def test_single_member_is_refused(f0):
    spec = PencilSpec(f0, (B,), True)
    assert int(pencil_arrangement(spec).F.degree()) == 11
    with pytest.raises(HypothesisError):
        free_pencil_check(spec)


def test_bad_pencils(f0):
    with pytest.raises(EigenschemeError):
        pencil_arrangement(PencilSpec(f0, (Fraction(0), Fraction(0))))
    with pytest.raises(HypothesisError):
        pencil_arrangement(PencilSpec(parse("z*(x^2-y*z)"), (0, 1)))


def test_free_pencil_checks(f0, f0p):
    assert free_pencil_check(PencilSpec(f0, (0, B))).exponents == (9, 10)
    assert free_pencil_check(PencilSpec(f0p, (0, catalog.B_PRIME_ATYPICAL), True)).exponents == (9, 11)
    assert free_pencil_check(PencilSpec(f0, (0, B, 1))).exponents == (9, 20)


def test_mpog_pencil_checks(f0):
    f = catalog.entry("C0(5/8)").projective
    assert mpog_pencil_check(PencilSpec(f, (0, 1))).exponents == (9, 11, 12)
    assert mpog_pencil_check(PencilSpec(f, (0, 1), True)).exponents == (9, 12, 13)
    v = mpog_pencil_check(PencilSpec(f0, (0, B)))
    assert not v.holds and v.detail.verdict == "WholeRing"


@pytest.mark.full
def test_mpog_pencil_cubic_form():
    f = catalog.entry("C0(5/8)").projective
    assert mpog_pencil_check(PencilSpec(f, form=parse("x^3+y^3"))).exponents == (9, 21, 22)
