import pytest

from quiverflags.dynkin import IsoClass, classify, iso_classes, rep_of_class
from quiverflags.fixtures import a2, a3, g_filtration, m22, pp
from quiverflags.flag import enumerate_flag_points
from quiverflags.geometry import (
    ChainRep,
    GeometryError,
    codim_report,
    counting_polynomial_flag,
    euler_form_lambda,
    ext1_lambda,
    flag_chain,
    geometry_report,
    hom_dim_lambda,
    interior_euler_sum,
    quotient_chain,
    tangent_dim,
)
from quiverflags.poly import QPolynomial
from quiverflags.quiver import Filtration, strict_filtrations
from quiverflags.representation import Representation, ext1_dim


def test_euler_form_lambda_examples():
    q = a2()
    assert euler_form_lambda(q, [(0, 0), (1, 1), (2, 2)], [(2, 2), (1, 1), (0, 0)]) == 1
    assert euler_form_lambda(q, [(0, 0), (1, 1), (2, 2)], [(0, 0)] * 3) == 0
    assert euler_form_lambda(q, [(0, 0), (1, 2)], [(1, 2), (0, 0)]) == 0
    with pytest.raises(GeometryError):
        euler_form_lambda(q, [(0, 0)], [(0, 0), (1, 1)])


def test_tangent_dims_on_m22():
    for p in (2, 3):
        m = m22(p)
        dims = sorted(tangent_dim(m, pt) for pt in enumerate_flag_points(m, g_filtration()))
        assert dims == [1] * (2 * p) + [2]


def test_singular_point_is_the_decomposable_one():
    # singular exactly where U = ker at vertex 1 + im at vertex 2, so U and M/U are both S1 + S2
    m = m22(2)
    split = IsoClass.simple(a2(), 1) + IsoClass.simple(a2(), 2)
    singular = 0
    for pt in enumerate_flag_points(m, g_filtration()):
        b = pt.levels[1]
        both = classify(m.restrict(b)) == split and classify(m.quotient(b)) == split
        expected = 2 if both else 1
        singular += both
        assert tangent_dim(m, pt) == expected
        assert hom_dim_lambda(flag_chain(m, pt), quotient_chain(m, pt)) == expected
        if both:
            assert b[1].tolist() == [[0, 1]] and b[2].tolist() == [[1, 0]]
    assert singular == 1


def test_hom_into_zero_chain():
    m = m22(2)
    pt = next(enumerate_flag_points(m, g_filtration()))
    u = flag_chain(m, pt)
    zero = Representation.zero(a2(), 2)
    z = ChainRep((zero,) * 3, tuple({1: u.maps[0][1][:0, :0], 2: u.maps[0][2][:0, :0]} for _ in range(2)))
    assert hom_dim_lambda(u, z) == 0


def test_rigid_case_has_constant_tangent():
    for p in (2, 3):
        m = pp(p)
        dims = {tangent_dim(m, pt) for pt in enumerate_flag_points(m, g_filtration())}
        assert dims == {interior_euler_sum(a2(), g_filtration())} == {1}


def test_chain_checks_commutativity():
    m = m22(2)
    pt = next(enumerate_flag_points(m, g_filtration()))
    u = flag_chain(m, pt)
    bad = {1: (u.maps[1][1] + 1) % 2, 2: u.maps[1][2]}
    ChainRep(u.levels[1:], (u.maps[1],))
    with pytest.raises(GeometryError):
        ChainRep(u.levels[1:], (bad,))


@pytest.mark.parametrize("q,box", [(a2(), (2, 2)), (a3(), (1, 2, 1))])
def test_ext1_lambda_nonnegative_and_euler_sum(q, box):
    for cls in iso_classes(q, box):
        m = rep_of_class(cls, 2)
        for f in strict_filtrations(box):
            for pt in enumerate_flag_points(m, f):
                u, v = flag_chain(m, pt), quotient_chain(m, pt)
                assert euler_form_lambda(q, u.dims, v.dims) == interior_euler_sum(q, f)
                assert ext1_lambda(m, pt) >= 0
                if ext1_dim(m, m) == 0:
                    assert tangent_dim(m, pt) == interior_euler_sum(q, f)


def test_codim_report_examples():
    q = a2()
    r = codim_report(q, g_filtration())
    assert (r.dim_rep_fl, r.dim_rep, r.codim, r.bound_holds) == (5, 4, 0, True)
    assert r.minimizer == IsoClass.from_roots(q, {(1, 1): 2})
    assert codim_report(q, Filtration(((0, 0), (0, 1), (1, 1)))).codim == 0
    for d in [(1, 1), (2, 1), (2, 3)]:
        assert codim_report(q, Filtration.trivial(d)).codim == 0


def test_codim_positive_case():
    # flags with S1 at the bottom force S1 to split off in dimension (1, 1)
    q = a2()
    r = codim_report(q, Filtration(((0, 0), (1, 0), (1, 1))))
    assert r.codim == 1 and r.bound_holds


def test_counting_polynomial_examples():
    q = a2()
    cp = counting_polynomial_flag(classify(m22()), g_filtration())
    assert (cp.poly, cp.p0, cp.p1) == (QPolynomial((1, 2)), 1, 3)
    cp = counting_polynomial_flag(IsoClass.from_roots(q, {(1, 1): 2}), g_filtration())
    assert (cp.poly, cp.p0, cp.p1) == (QPolynomial((1, 1)), 1, 2)
    cp = counting_polynomial_flag(classify(rep_of_class(IsoClass.from_roots(q, {(1, 1): 1}), 2)), Filtration(((0, 0), (1, 0), (1, 1))))
    assert cp.poly.is_zero() and cp.p0 == 0


def test_geometry_report_rows():
    rows = geometry_report(m22(2), g_filtration())
    assert [r.point_id for r in rows] == list(range(5))
    assert sorted((r.stratum, r.tangent) for r in rows) == [
        ((0, 0, 1), 1), ((0, 0, 1), 1), ((0, 1, 1), 1), ((0, 1, 1), 1), ((0, 1, 1), 2),
    ]
