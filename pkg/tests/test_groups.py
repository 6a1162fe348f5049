import random

import pytest
from hypothesis import given, settings, strategies as st

from dpicard.groups import (
    Presentation, ScalingSequence, SemidirectElement, equal_in_group, format_group_word, free_reduce,
    group_action, inverse, is_trivial_word, parse_group_word, phi_N, psi_embed, random_word, shift_indices,
)
from dpicard.linalg import GF, QQ

F = GF(32003)
W = parse_group_word


def test_parse_and_format():
    assert W("s0 s1^-1 r2^3") == (("s0", 1), ("s1", -1), ("r2", 1), ("r2", 1), ("r2", 1))
    assert W("1") == () and W("") == ()
    assert format_group_word(()) == "1"
    with pytest.raises(ValueError, match="position"):
        W("s1 %")


def test_free_reduce_examples():
    assert free_reduce(W("y1 y1^-1")) == ()
    assert free_reduce(W("y0 y1 y1^-1 y2")) == W("y0 y2")


def test_scaling_sequence_examples():
    # (a*b)(x) = A(B(x)): A = x + x^2, B = 2x  ->  2x + 4x^2
    a, b = ScalingSequence(QQ, [1, 1]), ScalingSequence(QQ, [2, 0])
    assert (a * b).coeffs == (2, 4)
    assert (b * a).coeffs == (2, 2)
    with pytest.raises(ValueError):
        ScalingSequence(QQ, [0, 1])


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.integers(0, 10 ** 9))
def test_scaling_group_axioms(N, seed):
    rng = random.Random(seed)
    a, b, c = (ScalingSequence.random(F, N, rng) for _ in range(3))
    e = ScalingSequence.identity(F, N)
    assert (a * b) * c == a * (b * c)
    assert a * e == a == e * a
    assert a * a.inverse() == e == a.inverse() * a


def test_action_examples():
    aff2 = Presentation("affine", 2)
    assert group_action(aff2, W("s0"), W("y0")) == W("y1")
    assert is_trivial_word(aff2, ())
    assert not is_trivial_word(aff2, W("s0"))
    aff3 = Presentation("affine", 3)
    assert group_action(aff3, W("s2"), W("y2")) == W("y0")


@pytest.mark.parametrize("kind,rank", [("affine", 2), ("affine", 3), ("affine", 4), ("affine", 6),
                                       ("artin", 2), ("artin", 4)])
def test_relators_act_trivially(kind, rank):
    pres = Presentation(kind, rank)
    for lhs, rhs in pres.relators():
        assert is_trivial_word(pres, lhs + inverse(rhs))


def test_phi_examples():
    assert format_group_word(free_reduce(phi_N(W("s2"), 3))) == "s3 s3 s2 s1 s2^-1 s3^-1 s3^-1"
    assert phi_N(W("s0 s1"), 3) == W("s1 s2")


@pytest.mark.parametrize("N", range(2, 7))
def test_phi_respects_relators(N):
    art = Presentation("artin", N)
    for lhs, rhs in Presentation("affine", N).relators():
        assert equal_in_group(art, phi_N(lhs, N), phi_N(rhs, N))


def test_psi_examples():
    assert psi_embed(W("s1"), 3, 2) == W("s1 s4")
    assert psi_embed(W("s1"), 3, 1) == W("s1")


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.integers(1, 3), st.integers(0, 10 ** 9))
def test_psi_injective_on_samples(m, t, seed):
    rng = random.Random(seed)
    aff, big = Presentation("affine", m), Presentation("affine", t * m)
    g = random_word(aff, rng.randint(1, 8), rng)
    assert is_trivial_word(aff, g) == is_trivial_word(big, psi_embed(g, m, t))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.integers(1, 3), st.integers(0, 10 ** 9))
def test_semidirect_associative(m, n, seed):
    rng = random.Random(seed)
    aff = Presentation("affine", m)
    x, y, z = (SemidirectElement(random_word(aff, rng.randint(0, 5), rng), rng.randrange(n * m), m, n)
               for _ in range(3))
    assert ((x * y) * z).equals(x * (y * z))


def test_shift_indices():
    assert shift_indices(W("s0 s2^-1"), 1, 3) == W("s1 s0^-1")


def test_wrong_generators_rejected():
    with pytest.raises(ValueError):
        group_action(Presentation("affine", 3), W("s5"), W("y0"))
    with pytest.raises(ValueError):
        Presentation("affine", 1)
