import pytest

from dpicard.complexes import ProjComplex, find_iso, hom_dim, minimize
from dpicard.equivalences import (
    EquivalenceError, FunctorLibrary, check_natural_iso, equivalence_sum, f_theta_morphism, f_theta_object,
    h_equivalence, parse_word, q_equivalence, scaling_intertwiner, tilting_report, x_complex,
)
from dpicard.complexes import ChainMap
from dpicard.linalg import GF, QQ
from dpicard.nakayama import NakayamaSpec

F = GF(32003)


@pytest.fixture(scope="module")
def n62():
    return NakayamaSpec(2, 3, 1).algebra(QQ)


def test_h_case_table(n62):
    # S_{theta_l}(P_i) = P_{i+1} if m | i-l, X_{i-1} if m | i-1-l, else P_i
    S = h_equivalence(n62, 2, 0)
    assert S.obj(0) == ProjComplex.stalk(n62, 1)
    assert S.obj(1) == x_complex(n62, 0)
    S1 = h_equivalence(n62, 2, 1)
    assert S1.obj(1) == ProjComplex.stalk(n62, 2)
    assert S1.obj(2) == x_complex(n62, 1)


def test_q_requires_t1():
    with pytest.raises(EquivalenceError):
        q_equivalence(NakayamaSpec(2, 3, 2).algebra(QQ), 2, 0)
    with pytest.raises(EquivalenceError):
        h_equivalence(NakayamaSpec(1, 3, 2).algebra(QQ), 1, 0)


def test_parse_word():
    atoms = parse_word("H0 H1 Q1 rho^3 mu[1,2] shift^-1")
    assert [a.text() for a in atoms] == ["H0", "H1", "Q1", "rho^3", "mu[1,2]", "shift^-1"]
    assert parse_word("") == []
    with pytest.raises(ValueError, match="position 3"):
        parse_word("H0 X1")


def test_word_applies_left_to_right(n62):
    lib = FunctorLibrary(n62, 2)
    P4 = ProjComplex.stalk(n62, 4)
    assert lib.apply("H0 Q1 Q1", P4) == ProjComplex.stalk(n62, 1)
    assert lib.apply("", P4) == P4


def test_functor_identity_and_composition(n62):
    from dpicard.complexes import homotopic
    S = h_equivalence(n62, 2, 0)
    for a in range(n62.V):
        b, c = (a + 1) % n62.V, (a + 2) % n62.V
        f, g = n62.path_vec(a, 1), n62.path_vec(b, 1)
        gf = n62.compose(a, b, c, g, f)
        assert homotopic(S.hom(a, c, gf), S.hom(b, c, g).compose(S.hom(a, b, f)))
        assert homotopic(S.hom(a, a, n62.identity(a)), ChainMap.identity(S.obj(a)))
    X = x_complex(n62, 3)
    assert homotopic(f_theta_morphism(S, ChainMap.identity(X), minimal=False),
                     ChainMap.identity(f_theta_object(S, X, minimal=False)))


@pytest.mark.parametrize("cfg", [(2, 3, 1), (3, 2, 1), (2, 3, 2), (2, 1, 3)])
def test_tilting_conditions(cfg):
    m, n, t = cfg
    alg = NakayamaSpec(m, n, t, require_coprime=False).algebra(F)
    datas = [h_equivalence(alg, m, l) for l in range(m)]
    if t == 1:
        datas += [q_equivalence(alg, m, l) for l in range(m)]
    for S in datas:
        rep = tilting_report(equivalence_sum(S))
        assert {d: v for d, v in rep.items() if v} == {0: n * m * (t * m + 1)}


def test_scaling_intertwiner():
    alg = NakayamaSpec(3, 2, 2, require_coprime=False).algebra(F)
    S1, S2, alpha = scaling_intertwiner(alg, 3, [5])
    rep = check_natural_iso(S1, S2, alpha)
    assert rep["chain"] and rep["iso"] and rep["natural"]


def test_rho_naturality():
    alg = NakayamaSpec(3, 2, 2, require_coprime=False).algebra(F)
    lib = FunctorLibrary(alg, 3)
    for i in range(3):
        for p in range(alg.V):
            P = ProjComplex.stalk(alg, p)
            assert find_iso(lib.apply(f"H{i} rho", P), lib.apply(f"rho H{(i + 1) % 3}", P)).found


def test_q1_image_of_p0(n62):
    # Y_{i+k-m, m-k} with i = 0, k = 1, m = 2 is Y_{-1,1} = Y_{5,1}
    from dpicard.equivalences import y_complex
    assert q_equivalence(n62, 2, 1).obj(0) == y_complex(n62, 5, 1)
