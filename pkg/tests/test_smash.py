import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from dpicard.complexes import ChainMap, ProjComplex, find_iso, homotopic, is_homotopy_iso
from dpicard.equivalences import x_complex
from dpicard.linalg import GF
from dpicard.nakayama import NakayamaSpec
from dpicard.smash import (
    ct_tilting_functor, morita_evidence, s_map, smash_algebra, smash_complex, theta_smash_psi, twist,
)

F = GF(32003)
CONFIGS = [(2, 3, 2), (2, 1, 3)]


@pytest.fixture(scope="module", params=CONFIGS)
def ct(request):
    return ct_tilting_functor(NakayamaSpec(*request.param), 0, F)


def test_requires_coprime():
    with pytest.raises(ValueError):
        smash_algebra(NakayamaSpec(2, 2, 2, require_coprime=False), F)


@pytest.mark.parametrize("cfg", CONFIGS + [(3, 2, 1)])
def test_morita_evidence(cfg):
    spec = NakayamaSpec(*cfg)
    S = smash_algebra(spec, F)
    ev = morita_evidence(spec, S)
    assert all(ev.values())
    V, L = spec.n * spec.t * spec.m, spec.maxlen
    assert S.dimension() == spec.t * V * (L + 1)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CONFIGS), st.integers(0, 10 ** 6))
def test_smash_product_associative(cfg, seed):
    S = smash_algebra(NakayamaSpec(*cfg), F)
    rng = random.Random(seed)
    a, b, c, d = (rng.randrange(S.V) for _ in range(4))
    x = {p: F.random(rng) for p in range(len(S.basis(a, b)))}
    y = {p: F.random(rng) for p in range(len(S.basis(b, c)))}
    z = {p: F.random(rng) for p in range(len(S.basis(c, d)))}
    lhs = S.compose(a, c, d, z, S.compose(a, b, c, y, x))
    rhs = S.compose(a, b, d, S.compose(b, c, d, z, y), x)
    assert lhs == rhs


def test_twist_has_order_t():
    spec = NakayamaSpec(2, 3, 2)
    S = smash_algebra(spec, F)
    X = x_complex(S.base, 3)
    assert twist(twist(X, 1, S.step), spec.t - 1, S.step) == X


def test_s_map_is_isomorphism():
    S = smash_algebra(NakayamaSpec(2, 3, 2), F)
    U = x_complex(S.base, 5)
    s = s_map(U, 1, S)
    assert s.is_chain_map() and is_homotopy_iso(s)


def test_axioms_hold(ct):
    assert all(ct.check_generators().values())
    assert ct.check_psi_order()
    assert all(r.found for r in ct.check_cover_compatibility().values())


def test_theta_smash_psi_multiplicative(ct):
    E = theta_smash_psi(ct)
    S = ct.S
    rng = random.Random(1)
    for _ in range(15):
        a, b, c = (rng.randrange(S.V) for _ in range(3))
        if not S.basis(a, b) or not S.basis(b, c):
            continue
        p, q = rng.randrange(len(S.basis(a, b))), rng.randrange(len(S.basis(b, c)))
        f, g = {p: F.one}, {q: F.one}
        gf = S.compose(a, b, c, g, f)
        assert homotopic(E.hom(a, c, gf), E.hom(b, c, g).compose(E.hom(a, b, f)))


def _scale_block(ct, i, scalar):
    comps = {}
    for d, blk in ct.psi.comps.items():
        lo, size = ct.offsets[i][d], len(ct.block(i).term(d))
        comps[d] = {(r, c): ({k: F.mul(scalar, v) for k, v in vec.items()} if lo <= c < lo + size else vec)
                    for (r, c), vec in blk.items()}
    return ChainMap(ct.psi.src, ct.psi.tgt, comps)


def test_broken_psi_fails_axioms():
    ct = ct_tilting_functor(NakayamaSpec(2, 3, 2), 0, F)
    good = ct.psi
    ct.psi = _scale_block(ct, 0, F(2))
    ct._powers = {0: ChainMap.identity(ct.H)}
    assert not all(ct.check_generators().values())
    ct.psi = good.scale(F(2))
    ct._powers = {0: ChainMap.identity(ct.H)}
    assert all(ct.check_generators().values())
    assert not ct.check_psi_order()
