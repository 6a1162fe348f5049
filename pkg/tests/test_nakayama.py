import random

import pytest
from hypothesis import given, settings, strategies as st

from dpicard.groups import ScalingSequence
from dpicard.linalg import GF, QQ
from dpicard.nakayama import Automorphism, NakayamaSpec, hom_basis, is_inner, normalize_automorphism
from dpicard.oracles import nakayama_hom_lengths

F = GF(32003)


def test_spec_validation():
    with pytest.raises(ValueError):
        NakayamaSpec(2, 2, 2)
    s = NakayamaSpec(2, 2, 2, require_coprime=False)
    assert not s.coprime
    with pytest.raises(ValueError):
        NakayamaSpec(0, 1, 1)


def test_hom_basis_examples():
    spec = NakayamaSpec(2, 2, 1)
    assert hom_basis(spec, 0, 0) == [0]
    assert hom_basis(spec, 0, 2) == [2]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 3), st.integers(1, 3), st.data())
def test_hom_basis_matches_enumeration(m, n, t, data):
    spec = NakayamaSpec(m, n, t, require_coprime=False)
    i = data.draw(st.integers(0, spec.vertices - 1))
    j = data.draw(st.integers(0, spec.vertices - 1))
    assert hom_basis(spec, i, j) == nakayama_hom_lengths(spec.vertices, spec.maxlen, i, j)


def test_dimension():
    # dim N_{nm,tm} = nm (tm + 1)
    for m, n, t in [(2, 3, 1), (3, 2, 2), (2, 1, 3)]:
        assert NakayamaSpec(m, n, t, require_coprime=False).algebra().dimension() == n * m * (t * m + 1)


def test_trivial_automorphisms():
    alg = NakayamaSpec(2, 3, 2).algebra(F)
    ident = Automorphism.identity(alg)
    assert Automorphism.rotation(alg, 0) == ident
    assert Automorphism.scaling(alg, [1] + [0] * (alg.depth - 1)) == ident


def test_is_inner_examples():
    alg = NakayamaSpec(2, 3, 2).algebra(F)
    y = is_inner(Automorphism.identity(alg))
    assert y is not None
    assert is_inner(Automorphism.rotation(alg, 1)) is None
    # N_{1,2}: mu_{(1,1)} is not inner
    small = NakayamaAlgebraFor(1, 2)
    assert is_inner(Automorphism.scaling(small, [1, 1])) is None


def NakayamaAlgebraFor(V, L):
    from dpicard.nakayama import NakayamaAlgebra
    return NakayamaAlgebra(V, L, F)


def test_conjugation_is_inner():
    alg = NakayamaSpec(2, 3, 2).algebra(F)
    rng = random.Random(3)
    u = {(s, 0): F.random_nonzero(rng) for s in range(alg.V)}
    u[(1, 2)] = 5
    assert is_inner(Automorphism.conjugation(alg, u), rng) is not None


def test_normalize_examples():
    alg = NakayamaSpec(2, 1, 3).algebra(F)
    assert alg.depth == 3
    l, c = normalize_automorphism(Automorphism.identity(alg))
    assert l == 0 and c == [1] + [0] * (alg.depth - 1)
    c0 = [3, 7, 11]
    aut = Automorphism.rotation(alg, 1).compose(Automorphism.scaling(alg, c0))
    assert normalize_automorphism(aut) == (1, c0)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(2, 3, 1), (2, 3, 2), (1, 1, 3), (3, 1, 2)]), st.integers(0, 10 ** 6))
def test_scaling_composition_law(cfg, seed):
    alg = NakayamaSpec(*cfg).algebra(F)
    rng = random.Random(seed)
    c = ScalingSequence.random(F, alg.depth, rng)
    d = ScalingSequence.random(F, alg.depth, rng)
    mu = lambda x: Automorphism.scaling(alg, x.coeffs)
    assert mu(d).compose(mu(c)) == mu(c * d)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(2, 3, 1), (2, 3, 2), (1, 1, 3)]), st.integers(0, 10 ** 6))
def test_normalize_round_trip(cfg, seed):
    alg = NakayamaSpec(*cfg).algebra(F)
    rng = random.Random(seed)
    l = rng.randrange(alg.V)
    c = ScalingSequence.random(F, alg.depth, rng)
    u = {(s, 0): F.random_nonzero(rng) for s in range(alg.V)}
    for s in range(alg.V):
        k = rng.randrange(1, alg.L + 1)
        u[(s, k)] = F.random(rng)
    u = {k: v for k, v in u.items() if v}
    base = Automorphism.rotation(alg, l).compose(Automorphism.scaling(alg, c.coeffs))
    aut = Automorphism.conjugation(alg, u).compose(base)
    assert normalize_automorphism(aut) == (l, list(c.coeffs))


def test_automorphism_inverse():
    alg = NakayamaSpec(2, 3, 1).algebra(QQ)
    aut = Automorphism.rotation(alg, 1).compose(Automorphism.scaling(alg, [2]))
    assert aut.compose(aut.inverse()) == Automorphism.identity(alg)
