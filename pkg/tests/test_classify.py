import pytest

from syzcurves.classify import (BoundViolation, Consistency, CurveReport, Facet, classify_from_exponents,
                                classify_from_tau, cross_check, nu_prediction, tau_bounds)


def test_bounds_degree_ten():
    b = tau_bounds(10, 5)
    assert (b.tau_min, b.tau_max, b.tau_max_prime) == (36, 61, 60)


@pytest.mark.parametrize("d,r,hi", [(20, 9, 271), (11, 4, 76), (21, 9, 301), (16, 7, 169)])
def test_upper_bound_equals_free_tau(d, r, hi):
    assert tau_bounds(d, r).tau_max == hi


def test_sharper_bound_only_for_large_r():
    assert tau_bounds(10, 4).tau_max_prime is None
    assert tau_bounds(15, 8).tau_max_prime == 145


@pytest.mark.parametrize("d,r", [(2, 1), (10, 0), (10, 10)])
def test_bounds_reject_bad_input(d, r):
    with pytest.raises(ValueError):
        tau_bounds(d, r)


def test_from_tau():
    assert "MPOG" in classify_from_tau(10, 5, 59)
    assert "Free" in classify_from_tau(10, 4, 61)
    assert classify_from_tau(15, 8, 145).get("MaxTjurina") == Facet("MaxTjurina", (15, 8))
    both = classify_from_tau(10, 5, 60)
    assert {"NearlyFree", "MaxTjurina"} <= both.kinds()


def test_tau_three_below_max_is_general():
    lab = classify_from_tau(10, 4, 58)
    assert lab.kinds() == {"General"}


def test_bound_violations():
    with pytest.raises(BoundViolation):
        classify_from_tau(10, 5, 62)
    with pytest.raises(BoundViolation):
        classify_from_tau(10, 5, 61)  # above tau'_max
    with pytest.raises(BoundViolation):
        classify_from_tau(10, 5, 10)


def test_from_exponents():
    assert "MPOG" in classify_from_exponents(10, [5, 5, 6])
    assert str(classify_from_exponents(10, [4, 5])) == "Free(4,5)"
    assert classify_from_exponents(10, [9] * 11).get("TypeDRM") == Facet("TypeDRM", (10, 9, 11, 0))
    assert classify_from_exponents(13, [11] * 10).get("TypeDRM") == Facet("TypeDRM", (13, 11, 10, 2))
    assert "MaxTjurina" in classify_from_exponents(10, [9] * 11)
    nf = classify_from_exponents(10, [5, 5, 5])
    assert {"NearlyFree", "PlusOneGenerated", "MaxTjurina", "TypeDRM"} == nf.kinds()
    assert classify_from_exponents(17, [10, 11, 11, 11, 11]).kinds() == {"General"}


def test_exponents_need_two():
    with pytest.raises(ValueError):
        classify_from_exponents(10, [5])


def _report(d, r, exps, tau, nu):
    return CurveReport(d, r, tuple(exps), tau, nu, tau_bounds(d, r),
                       classify_from_exponents(d, exps), Consistency(True))


def test_cross_check_passes_on_published_numbers():
    assert cross_check(_report(10, 5, (5, 5, 6), 59, 2))
    assert cross_check(_report(16, 8, (8, 8, 9), 167, 2))  # uses 3r^2 - 3r + 1
    assert nu_prediction(16, 8, 167) == 2
    assert cross_check(_report(10, 4, (4, 5), 61, 0))


def test_cross_check_negative_control():
    bad = cross_check(_report(10, 5, (5, 5, 6), 60, 2))
    assert not bad
    assert any("tau gives" in d for d in bad.details)


def test_cross_check_catches_wrong_nu():
    assert not cross_check(_report(10, 4, (4, 5), 61, 1))


def test_report_on_catalog_curve():
    from syzcurves import suite
    r, _ = suite.analysis("C0", None, 0)
    assert r.consistency.passed and str(r.label) == "MPOG(5,5,6)+PlusOneGenerated(5,5,6,1)"
