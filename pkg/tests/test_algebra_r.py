import pytest

from dpicard.algebra_r import (
    RWordLibrary, omega_equivalence, pq, r_algebra, tau_functor, twist_apply, twist_data, u_complex,
)
from dpicard.complexes import ProjComplex, find_iso, minimize
from dpicard.equivalences import FunctorLibrary, TiltingFunctor
from dpicard.groups import amn_relators
from dpicard.linalg import GF, QQ
from dpicard.nakayama import NakayamaSpec
from dpicard.oracles import r_dimension

F = GF(32003)


def test_twist_of_stalk():
    R = r_algebra(2, 2, QQ)
    X = minimize(twist_apply(R, 1, ProjComplex.stalk(R, (2, 0))))
    assert X.terms == {-1: ((1, 0),), 0: ((2, 0),)}
    assert X.d(-1)[(0, 0)] == R.element((1, 0), (2, 0), "g")


@pytest.mark.parametrize("m,n", [(2, 1), (2, 3), (3, 2), (4, 3)])
def test_dimension_formula(m, n):
    assert r_algebra(m, n).dimension() == 4 * m * n - 2 * n == r_dimension(m, n)


def test_products():
    R = r_algebra(3, 2, QQ)
    a, b, g = R.gamma(1, 0)
    _, c, gp = R.gamma_prime(1, 0)
    assert R.compose(a, b, c, gp, g) == R.element(a, c, "z")
    _, d, g2 = R.gamma(2, 0)
    assert R.compose(a, b, d, g2, g) == {}


def test_tau_has_order_n():
    R = r_algebra(2, 3, QQ)
    P = ProjComplex.stalk(R, (1, 0))
    assert tau_functor(R, 1).obj(P) == ProjComplex.stalk(R, (1, 1))
    assert tau_functor(R, 3).obj(P) == P


def test_pq():
    assert pq(5, 3, 2) == (2, 1)
    assert pq(-1, 2, 3) == (1, 2)


def test_omega_image_on_the_nose():
    # (m, n) = (3, 2), i = 3: F_omega H_0 (P_j) = U_{m-p(j), q(j)} when p(j) + i is not m or m + 1
    m, n = 3, 2
    R, N = r_algebra(m, n, F), NakayamaSpec(m, n, 1).algebra(F)
    Fw = TiltingFunctor(omega_equivalence(N, R))
    lib = FunctorLibrary(N, m)
    for j in range(N.V):
        p, q = pq(j, m, n)
        if p + 3 in (m, m + 1):
            continue
        assert minimize(Fw.obj(lib.apply("H0", ProjComplex.stalk(N, j)))) == u_complex(R, m - p, q)


def test_omega_image_all_i():
    for m, n in [(2, 3), (3, 2)]:
        R, N = r_algebra(m, n, F), NakayamaSpec(m, n, 1).algebra(F)
        Fw = TiltingFunctor(omega_equivalence(N, R))
        lib = FunctorLibrary(N, m)
        for j in range(N.V):
            P = ProjComplex.stalk(N, j)
            FP = Fw.obj(P)
            for i in range(2, m + 1):
                T = TiltingFunctor(twist_data(R, i))
                assert find_iso(Fw.obj(lib.apply(f"H{m - i}", P)), T.obj(FP)).found
            from dpicard.complexes import shift
            T1 = TiltingFunctor(twist_data(R, 1))
            assert find_iso(shift(Fw.obj(lib.apply(f"Q{m - 1}", P)), 1), T1.obj(FP)).found


def test_center_relation_and_amn():
    R = r_algebra(2, 3, F)
    lib = RWordLibrary(R)
    cox = (("s2", 1), ("s1", 1)) * 3
    rhs = (("r2", 1),) * 3 + (("r1", 1),) * 4
    for a in R.labels():
        P = ProjComplex.stalk(R, a)
        assert find_iso(lib.apply(cox, P), lib.apply(rhs, P)).found
    for lhs, rhs in amn_relators(2, 3):
        P = ProjComplex.stalk(R, (2, 1))
        assert find_iso(lib.apply(lhs, P), lib.apply(rhs, P)).found


def test_inverse_twist_not_realized():
    R = r_algebra(2, 1, F)
    with pytest.raises(ValueError):
        RWordLibrary(R).apply((("s1", -1),), ProjComplex.stalk(R, (1, 0)))
