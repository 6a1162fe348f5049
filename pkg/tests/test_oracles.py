from dpicard.linalg import GF, QQ
from dpicard.oracles import Quiver, graded_dimensions, nakayama_hom_lengths, r_dimension, r_quiver


def test_quiver_paths():
    q = Quiver([0, 1], {"a": (0, 1), "b": (1, 0)})
    assert q.paths(0) == [()]
    assert sorted(q.paths(2)) == [("a", "b"), ("b", "a")]


def test_truncated_cycle():
    # k[x]/(x^3) as a one-loop quiver
    q = Quiver([0], {"x": (0, 0)})
    assert graded_dimensions(q, [{("x", "x", "x"): 1}], 4) == [1, 1, 1, 0, 0]


def test_r_dimensions_brute_force():
    for m in range(2, 5):
        for n in range(1, 4):
            assert r_dimension(m, n, QQ) == 4 * m * n - 2 * n
    assert r_dimension(3, 2, GF(7)) == 20


def test_r_quiver_shape():
    q, rels = r_quiver(3, 2)
    assert len(q.vertices) == 6 and len(q.arrows) == 8 and len(rels) == 6


def test_nakayama_lengths():
    assert nakayama_hom_lengths(4, 2, 0, 2) == [2]
    assert nakayama_hom_lengths(2, 5, 0, 0) == [0, 2, 4]
