import pytest

from syzcurves import catalog
from syzcurves.jacobian import (ConeError, CurveError, DegreeError, JacobianEngine, NotHomogeneousError,
                                NotSquarefreeError, jacobian_triple, mdr, milnor_hilbert, syzygy_profile,
                                total_tjurina)
from syzcurves.linalg import QQ, basis_size
from syzcurves.poly import parse


@pytest.fixture(scope="module")
def eng0(f0):
    return JacobianEngine(jacobian_triple(f0), "exact")


def test_xyz_partials():
    j = jacobian_triple(parse("x*y*z"))
    assert (j.fx, j.fy, j.fz) == (parse("y*z"), parse("x*z"), parse("x*y"))
    assert mdr(j) == 1


@pytest.mark.parametrize("text,err", [
    ("x^3", NotSquarefreeError),
    ("x^2*y+y^3", ConeError),
    ("x^2+y", NotHomogeneousError),
    ("x^2+y^2+z^2", DegreeError),
    ("0", CurveError),
])
def test_gate(text, err):
    with pytest.raises(err):
        jacobian_triple(parse(text))


def test_f0_accepted(f0):
    assert jacobian_triple(f0).d == 10


def test_profiles(f0, fb):
    assert syzygy_profile(jacobian_triple(fb)).generator_degrees == (4, 5)
    p = syzygy_profile(jacobian_triple(f0))
    assert p.generator_degrees == (5, 5, 6) and p.mdr == 5 and p.complete
    assert p.dims[5] == 2


def test_milnor_hilbert_examples(f0):
    j = jacobian_triple(parse("x^3+y^3+z^3"))
    assert milnor_hilbert(j, 3) == 1
    assert milnor_hilbert(j, 0) == 1
    assert milnor_hilbert(jacobian_triple(f0), 40) == 59


def test_tjurina_numbers(fb, f0p):
    assert total_tjurina(jacobian_triple(fb)) == 61
    assert total_tjurina(jacobian_triple(f0p)) == 60
    assert total_tjurina(jacobian_triple(parse("x^4+y^4+z^4"))) == 0


def test_saturation_of_free_curve_is_jacobian_ideal(fb):
    e = JacobianEngine(jacobian_triple(fb), "exact")
    for k in range(0, 3 * 10 - 5):
        assert e.saturation_dim(k) == e.jacobian_rank(k)
    assert e.freeness_defect().nu == 0


def test_f0_n_values_and_symmetry(eng0):
    rec = eng0.freeness_defect()
    nonzero = {k: v for k, v in rec.n_values.items() if v}
    assert nonzero == {11: 1, 12: 2, 13: 1}
    assert rec.nu == 2 and rec.tau == 59
    assert eng0.saturation_dim(0) == 0


def test_half_window_mirrors_full(f0):
    full = JacobianEngine(jacobian_triple(f0), "exact").freeness_defect("full")
    half = JacobianEngine(jacobian_triple(f0), "exact").freeness_defect("half")
    assert full.n_values == half.n_values and full.nu == half.nu


def test_escalate_stalls_on_f0_at_degree_11(eng0):
    # consecutive-N agreement fires at N = 2 before the value moves
    assert eng0.n_value(11, method="bound") == 1
    assert eng0.n_value(11, method="escalate") == 0
    assert eng0.n_value(11, method="escalate", patience=4) == 1


def test_certified_ranks_equal_fmpz_ranks(eng0):
    eng0.syzygy_profile()
    for k in (30, 35, 40):
        ncols, entries = eng0._entries(k)
        assert eng0._certified_rank(k, ncols, entries) == QQ.rank(QQ.matrix(basis_size(k), ncols, entries))


def test_exact_generators_are_syzygies(eng0):
    j = eng0.triple
    gens = eng0.exact_generators()
    assert [g.degree for g in gens] == [5, 5, 6]
    for g in gens:
        assert (g.a * j.fx + g.b * j.fy + g.c * j.fz).is_zero()


def test_modular_and_exact_agree(f0):
    a = JacobianEngine(jacobian_triple(f0), "exact")
    b = JacobianEngine(jacobian_triple(f0), "modular", seed=11)
    assert a.syzygy_profile().dims == b.syzygy_profile().dims
    assert a.freeness_defect().n_values == b.freeness_defect().n_values
    assert b.disagreements == 0 and len(b.primes) >= 2


def test_mdr_of_degree_16_free_curve():
    assert mdr(jacobian_triple(catalog.entry("C20p").projective)) == 7


def test_incomplete_profile_is_flagged(f0):
    p = JacobianEngine(jacobian_triple(f0), "exact").syzygy_profile(k_max=6)
    assert not p.complete


def test_cubic_profiles_complete_within_default_cap():
    for text, exps in (("x^3+y^3+z^3", (2, 2, 2)), ("3*x^2*y-9*x*y^2-3*x*y*z+3*y^2*z", (1, 2, 2))):
        prof = JacobianEngine(jacobian_triple(parse(text)), "exact").syzygy_profile()
        assert prof.complete and prof.generator_degrees == exps
