import random

import pytest
from hypothesis import given, settings, strategies as st

from dpicard.complexes import (
    ChainMap, ComplexError, ProjComplex, cone, cone_maps, direct_sum, find_iso, hom_dim, homotopic,
    homotopy_solve, is_homotopy_iso, is_minimal, is_null_homotopic, minimize, shift,
)
from dpicard.equivalences import FunctorLibrary, x_complex
from dpicard.linalg import GF, QQ
from dpicard.nakayama import NakayamaSpec
from dpicard.verify import random_complex

F = GF(32003)


@pytest.fixture(scope="module")
def n64():
    return NakayamaSpec(2, 3, 2).algebra(QQ)


def test_stalk(n64):
    X = ProjComplex.stalk(n64, 4)
    assert X.terms == {0: (4,)} and not X.diff


def test_x3_complex_accepted(n64):
    X = x_complex(n64, 3)
    assert X.terms == {-2: (5,), -1: (0,), 0: (4,)}
    # beta^4 beta has length 5 > 4, so d^2 vanishes
    assert n64.compose(5, 0, 4, X.d(-1)[(0, 0)], X.d(-2)[(0, 0)]) == {}


def test_nonzero_square_rejected(n64):
    with pytest.raises(ComplexError):
        ProjComplex(n64, {-2: (5,), -1: (0,), 0: (3,)},
                    {-2: {(0, 0): n64.path_vec(5, 1)}, -1: {(0, 0): n64.path_vec(0, 3)}})


def test_text_round_trip(n64):
    X = x_complex(n64, 3)
    assert ProjComplex.parse(n64, X.text()) == X
    with pytest.raises(Exception):
        ProjComplex.parse(n64, X.text().replace("b(0,4)", "b(0,3)"))


def test_homotopy_examples(n64):
    P = ProjComplex.stalk(n64, 2)
    assert homotopy_solve(ChainMap.zero(P, P)) is not None
    C = cone(ChainMap.identity(P))
    assert homotopy_solve(ChainMap.identity(C)) is not None
    assert homotopy_solve(ChainMap.identity(P)) is None
    assert is_homotopy_iso(ChainMap.identity(P))
    Q = ProjComplex.stalk(n64, 3)
    assert not is_homotopy_iso(ChainMap.zero(P, Q))


def test_minimize_examples(n64):
    P = ProjComplex.stalk(n64, 1)
    assert minimize(cone(ChainMap.identity(P))).is_zero()
    X = x_complex(n64, 3)
    assert is_minimal(X) and minimize(X) == X


def test_find_iso_examples(n64):
    X = x_complex(n64, 3)
    res = find_iso(X, X)
    assert res.status == "iso" and is_homotopy_iso(res.witness)
    res = find_iso(ProjComplex.stalk(n64, 1), ProjComplex.stalk(n64, 2))
    assert res.status == "not_iso" and "graded" in res.reason


def test_braid_complex_minimizes_to_displayed_form():
    # m=3, n=2, t=2, l=0, k=1: H1 H0 H1 (P_5) reduces to
    # P_{(k-2t)m+l} -> P_{(k-2t)m+l+1} -> P_{(k-t)m+l+1} -> P_{(k-t)m+l+2} -> P_{km+l+2}
    m, t, l, k = 3, 2, 0, 1
    alg = NakayamaSpec(m, 2, t, require_coprime=False).algebra(QQ)
    X = FunctorLibrary(alg, m).apply("H1 H0 H1", ProjComplex.stalk(alg, k * m + l + 2))
    want = [(k - 2 * t) * m + l, (k - 2 * t) * m + l + 1, (k - t) * m + l + 1, (k - t) * m + l + 2, k * m + l + 2]
    assert [X.term(d) for d in range(-4, 1)] == [(w % alg.V,) for w in want]


def test_shift_and_sum(n64):
    X = x_complex(n64, 3)
    assert shift(shift(X, 2), -2) == X
    Y = shift(X, 1)
    assert Y.terms == {-3: (5,), -2: (0,), -1: (4,)}
    assert direct_sum(X, ProjComplex.stalk(n64, 2)).size() == 4


def test_hom_dim_stalks(n64):
    # K(P_a, P_b) = e_b N e_a has dimension = number of paths a -> b
    assert hom_dim(ProjComplex.stalk(n64, 0), ProjComplex.stalk(n64, 0)) == 1
    assert hom_dim(ProjComplex.stalk(n64, 0), ProjComplex.stalk(n64, 1)) == 1
    assert hom_dim(ProjComplex.stalk(n64, 0), ProjComplex.stalk(n64, 5)) == 0


ALGS = {key: NakayamaSpec(*key, require_coprime=False).algebra(F) for key in [(2, 3, 1), (3, 2, 2), (2, 1, 3)]}


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(ALGS)), st.integers(0, 10 ** 6))
def test_minimize_properties(key, seed):
    X = random_complex(ALGS[key], random.Random(seed))
    M, p, i = minimize(X, with_maps=True)
    assert is_minimal(M) and minimize(M) == M
    assert p.is_chain_map() and i.is_chain_map()
    assert homotopic(p.compose(i), ChainMap.identity(M))
    assert homotopic(i.compose(p), ChainMap.identity(X))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(sorted(ALGS)), st.integers(0, 10 ** 6))
def test_find_iso_against_minimal_model(key, seed):
    X = random_complex(ALGS[key], random.Random(seed))
    res = find_iso(X, minimize(X), seed=seed)
    assert res.status == "iso" and res.witness.is_chain_map()


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(sorted(ALGS)), st.integers(0, 10 ** 6))
def test_cone_exactness_surrogate(key, seed):
    rng = random.Random(seed)
    alg = ALGS[key]
    X = random_complex(alg, rng, steps=1)
    Y = random_complex(alg, rng, steps=1)
    from dpicard.complexes import hom_space
    maps = hom_space(X, Y, 0)
    f = maps[0] if maps else ChainMap.zero(X, Y)
    C, inc, _ = cone_maps(f)
    assert is_null_homotopic(inc.compose(f))
