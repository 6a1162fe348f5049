"""Independent brute-force oracles used to cross-check the normal-form algebras.

A bound quiver algebra kQ/I with homogeneous relations is graded by path
length, so its dimension is the sum over lengths of
``#paths - rank(ideal part)``, where the ideal part in length l is spanned by
all products ``p * r * q`` of total length l.  No normal forms are used.
"""
from __future__ import annotations

from .linalg import Echelon, Field, QQ


class Quiver:
    """A finite quiver: ``arrows`` maps a name to ``(source, target)``."""

    def __init__(self, vertices, arrows: dict):
        self.vertices = list(vertices)
        self.arrows = dict(arrows)
        self._out: dict = {v: [] for v in self.vertices}
        for name, (s, _) in self.arrows.items():
            self._out[s].append(name)

    def paths(self, length: int):
        """All paths of the given length as tuples of arrow names (first arrow first)."""
        if length == 0:
            return [()]
        out = []
        frontier = [((a,), self.arrows[a][1]) for a in self.arrows]
        for _ in range(length - 1):
            frontier = [(p + (b,), self.arrows[b][1]) for p, end in frontier for b in self._out[end]]
        for p, _ in frontier:
            out.append(p)
        return out


def graded_dimensions(q: Quiver, relations, max_length: int, field: Field = QQ) -> list:
    """Dimension of (kQ/I)_l for l = 0..max_length.

    ``relations`` is a list of dicts ``{path tuple: coefficient}``, each
    homogeneous of length >= 1.
    """
    dims = [len(q.vertices)]
    for length in range(1, max_length + 1):
        paths = q.paths(length)
        index = {p: k for k, p in enumerate(paths)}
        ech = Echelon(field)
        for rel in relations:
            rl = len(next(iter(rel)))
            for left in range(length - rl + 1):
                right = length - rl - left
                for pre in q.paths(left):
                    for post in q.paths(right):
                        row = {}
                        for path, coef in rel.items():
                            full = pre + path + post
                            if full in index:
                                row[index[full]] = field.add(row.get(index[full], field.zero), field(coef))
                        row = {k: v for k, v in row.items() if not field.is_zero(v)}
                        if row:
                            ech.add(row)
        dims.append(len(paths) - len(ech.rows))
    return dims


def r_quiver(m: int, n: int):
    """The quiver Q_{m,n} with its relations I_{m,n} (arrows composed left to right)."""
    verts = [(i, j) for i in range(1, m + 1) for j in range(n)]
    arrows = {}
    for i in range(1, m):
        for j in range(n):
            arrows[("g", i, j)] = ((i, j), (i + 1, j))
            arrows[("g'", i, j)] = ((i + 1, j), (i, (j + 1) % n))
    q = Quiver(verts, arrows)
    rels = []
    g = lambda i, j: ("g", i, j % n)
    gp = lambda i, j: ("g'", i, j % n)
    if m > 2:
        for i in range(1, m - 1):
            for j in range(n):
                rels.append({(g(i, j), g(i + 1, j)): 1})
                rels.append({(gp(i + 1, j), gp(i, j + 1)): 1})
                rels.append({(gp(i, j), g(i, j + 1)): 1, (g(i + 1, j), gp(i + 1, j)): -1})
    else:
        for j in range(n):
            rels.append({(g(1, j), gp(1, j), g(1, j + 1)): 1})
            rels.append({(gp(1, j), g(1, j + 1), gp(1, j + 1)): 1})
    return q, rels


def r_dimension(m: int, n: int, field: Field = QQ) -> int:
    q, rels = r_quiver(m, n)
    dims = graded_dimensions(q, rels, 4, field)
    if dims[-1] != 0:
        raise AssertionError("R should vanish in path length 4")
    return sum(dims)


def nakayama_hom_lengths(V: int, L: int, i: int, j: int) -> list:
    """Lengths of nonzero paths i -> j in the cyclic quiver on V vertices, truncated at L."""
    out = []
    for k in range(L + 1):
        end = i
        for _ in range(k):
            end = (end + 1) % V
        if end == j % V:
            out.append(k)
    return out


__all__ = ["Quiver", "graded_dimensions", "r_quiver", "r_dimension", "nakayama_hom_lengths"]
