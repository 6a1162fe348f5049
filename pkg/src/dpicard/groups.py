"""Groups: S_N(k), free and braid group words, faithful actions on free groups,
the homomorphisms phi_N and psi, and the semidirect product with C_{nm}.

A word is a tuple of letters ``(name, e)`` with ``e = +1`` or ``-1``; names
are ``s<i>``, ``r1``, ``r2``, ``y<i>`` or ``y``.  Braid words act on the left:
``g = x_1 ... x_k`` sends w to ``x_1(x_2(...x_k(w)))``.
"""
from __future__ import annotations

from dataclasses import dataclass
import random
import re

from .linalg import Field

Word = tuple


# ---------------------------------------------------------------------------
# S_N(k)

class ScalingSequence:
    """An element (a_1, ..., a_N) of S_N(k), a_1 != 0.

    The product is composition of truncated power series:
    ``(a b)(x) = A(B(x))`` with ``A(x) = sum a_j x^j``.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        coeffs = tuple(field(x) for x in coeffs)
        if not coeffs:
            raise ValueError("a scaling sequence needs at least one term")
        if field.is_zero(coeffs[0]):
            raise ValueError("a_1 must be nonzero")
        self.field = field
        self.coeffs = coeffs

    @classmethod
    def identity(cls, field: Field, N: int):
        return cls(field, [field.one] + [field.zero] * (N - 1))

    @classmethod
    def random(cls, field: Field, N: int, rng: random.Random):
        return cls(field, [field.random_nonzero(rng)] + [field.random(rng) for _ in range(N - 1)])

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, ScalingSequence) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "ScalingSequence(" + ", ".join(self.field.format(x) for x in self.coeffs) + ")"

    def __mul__(self, other: "ScalingSequence") -> "ScalingSequence":
        F, N = self.field, len(self)
        if len(other) != N:
            raise ValueError("sequences of different lengths")
        # B(x)^j as coefficient lists indexed 0..N
        b = [F.zero] + list(other.coeffs)
        power = [F.one] + [F.zero] * N
        out = [F.zero] * (N + 1)
        for j in range(1, N + 1):
            power = _series_mul(F, power, b, N)
            aj = self.coeffs[j - 1]
            if not F.is_zero(aj):
                for i in range(N + 1):
                    out[i] = F.add(out[i], F.mul(aj, power[i]))
        return ScalingSequence(F, out[1:])

    def inverse(self) -> "ScalingSequence":
        F, N = self.field, len(self)
        b = [F.inv(self.coeffs[0])] + [F.zero] * (N - 1)
        for i in range(1, N):
            residual = (self * ScalingSequence(F, b)).coeffs[i]
            b[i] = F.neg(F.mul(residual, F.inv(self.coeffs[0])))
        return ScalingSequence(F, b)


def _series_mul(F, u, v, N):
    out = [F.zero] * (N + 1)
    for i, x in enumerate(u):
        if F.is_zero(x):
            continue
        for j, y in enumerate(v[: N + 1 - i]):
            if not F.is_zero(y):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def scaling_op(kind: str, a: ScalingSequence, b: ScalingSequence | None = None) -> ScalingSequence:
    if kind == "mul":
        return a * b
    if kind == "inv":
        return a.inverse()
    raise ValueError(f"unknown operation {kind!r}")


# ---------------------------------------------------------------------------
# words

_LETTER = re.compile(r"([a-z]+)(\d*)(?:\^(-?\d+))?$")


def parse_group_word(text: str) -> Word:
    """Parse ``s0 s1^-1 r2^3`` (whitespace separated; ``1`` or empty is the identity)."""
    out = []
    pos = 0
    for tok in text.split():
        start = text.index(tok, pos)
        pos = start + len(tok)
        if tok == "1":
            continue
        mt = _LETTER.match(tok)
        if not mt:
            raise ValueError(f"cannot parse letter {tok!r} at position {start}")
        name = mt.group(1) + mt.group(2)
        exp = int(mt.group(3)) if mt.group(3) is not None else 1
        sign = 1 if exp > 0 else -1
        out.extend([(name, sign)] * abs(exp))
    return tuple(out)


def format_group_word(w: Word) -> str:
    if not w:
        return "1"
    return " ".join(name if e == 1 else f"{name}^-1" for name, e in w)


def inverse(w: Word) -> Word:
    return tuple((name, -e) for name, e in reversed(w))


def free_reduce(w: Word) -> Word:
    out: list = []
    for letter in w:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def power(w: Word, k: int) -> Word:
    return (w if k >= 0 else inverse(w)) * abs(k)


def s(i: int, e: int = 1) -> Word:
    return ((f"s{i}", e),)


def gen_index(name: str) -> int:
    if not name.startswith("s") or not name[1:].isdigit():
        raise ValueError(f"{name!r} is not a braid generator")
    return int(name[1:])


# ---------------------------------------------------------------------------
# presentations

@dataclass(frozen=True)
class Presentation:
    """``kind`` is ``affine`` (generators s_i, i in Z_rank) or ``artin``
    (generators s_1..s_rank)."""

    kind: str
    rank: int

    def __post_init__(self):
        if self.kind not in ("affine", "artin"):
            raise ValueError(f"unknown presentation {self.kind!r}")
        if self.kind == "affine" and self.rank < 2:
            raise ValueError("affine braid groups need rank >= 2")
        if self.kind == "artin" and self.rank < 1:
            raise ValueError("B(A_n) needs n >= 1")

    @property
    def indices(self):
        return range(self.rank) if self.kind == "affine" else range(1, self.rank + 1)

    def check(self, w: Word):
        idx = set(self.indices)
        for name, _ in w:
            if gen_index(name) not in idx:
                raise ValueError(f"letter {name} outside the generators of {self}")

    def relators(self) -> list:
        """Each defining relation as a pair (lhs, rhs) of words."""
        out = []
        if self.kind == "affine":
            N = self.rank
            if N == 2:
                return out
            for i in range(N):
                j = (i + 1) % N
                out.append((s(i) + s(j) + s(i), s(j) + s(i) + s(j)))
            for i in range(N):
                for j in range(i + 1, N):
                    if (i - j) % N not in (1, N - 1):
                        out.append((s(i) + s(j), s(j) + s(i)))
        else:
            N = self.rank
            for i in range(1, N):
                out.append((s(i) + s(i + 1) + s(i), s(i + 1) + s(i) + s(i + 1)))
            for i in range(1, N + 1):
                for j in range(i + 2, N + 1):
                    out.append((s(i) + s(j), s(j) + s(i)))
        return out

    def free_generators(self) -> list:
        if self.kind == "affine":
            return [f"y{i}" for i in range(self.rank)] + ["y"]
        return [f"y{i}" for i in range(1, self.rank + 2)]

    def __str__(self):
        return f"{self.kind}({self.rank})"


def _generator_images(pres: Presentation, i: int, e: int) -> dict:
    """Images of the moved free generators under s_i^e."""
    if pres.kind == "affine":
        a, b = f"y{i % pres.rank}", f"y{(i + 1) % pres.rank}"
    else:
        a, b = f"y{i}", f"y{i + 1}"
    A, B = ((a, 1),), ((b, 1),)
    if e == 1:
        return {a: B, b: inverse(B) + A + B}
    return {b: A, a: A + B + inverse(A)}


def _substitute(w: Word, images: dict) -> Word:
    out = []
    for name, e in w:
        img = images.get(name)
        if img is None:
            out.append((name, e))
        else:
            out.extend(img if e == 1 else inverse(img))
    return free_reduce(tuple(out))


def group_action(pres: Presentation, g: Word, w: Word) -> Word:
    """g(w) for the action of the braid group on the free group."""
    pres.check(g)
    gens = set(pres.free_generators())
    for name, _ in w:
        if name not in gens:
            raise ValueError(f"free generator {name} does not belong to F_{len(gens)}")
    w = free_reduce(w)
    for name, e in reversed(g):
        w = _substitute(w, _generator_images(pres, gen_index(name), e))
    return w


def is_trivial_word(pres: Presentation, g: Word) -> bool:
    """Decide g = 1: free reduction in B(A~_1) = F_2, the faithful action otherwise."""
    pres.check(g)
    if pres.kind == "affine" and pres.rank == 2:
        return not free_reduce(g)
    return all(group_action(pres, g, ((y, 1),)) == ((y, 1),) for y in pres.free_generators())


def equal_in_group(pres: Presentation, g: Word, h: Word) -> bool:
    return is_trivial_word(pres, g + inverse(h))


def random_word(pres: Presentation, length: int, rng: random.Random) -> Word:
    idx = list(pres.indices)
    return tuple((f"s{rng.choice(idx)}", rng.choice((1, -1))) for _ in range(length))


# ---------------------------------------------------------------------------
# homomorphisms

def _apply_letterwise(g: Word, table) -> Word:
    out = []
    for name, e in g:
        img = table(gen_index(name))
        out.extend(img if e == 1 else inverse(img))
    return tuple(out)


def phi_N(g: Word, N: int) -> Word:
    """phi_N: B(A~_{N-1}) -> B(A_N), s_i -> s_{i+1} (i < N-1),
    s_{N-1} -> s_N Pi s_1 Pi^{-1} s_N^{-1} with Pi = s_N ... s_1."""
    Presentation("affine", N).check(g)
    Pi = tuple(l for k in range(N, 0, -1) for l in s(k))
    last = s(N) + Pi + s(1) + inverse(Pi) + s(N, -1)
    return _apply_letterwise(g, lambda i: last if i == N - 1 else s(i + 1))


def psi_embed(g: Word, m: int, t: int) -> Word:
    """psi: B(A~_{m-1}) -> B(A~_{tm-1}), s_i -> s_i s_{i+m} ... s_{i+(t-1)m}."""
    if t < 1:
        raise ValueError("t must be positive")
    Presentation("affine", m).check(g)
    return _apply_letterwise(g, lambda i: tuple(l for k in range(t) for l in s(i + k * m)))


def shift_indices(g: Word, l: int, m: int) -> Word:
    """phi_{m,n}(r^l): s_i -> s_{i+l}."""
    return tuple((f"s{(gen_index(name) + l) % m}", e) for name, e in g)


@dataclass(frozen=True)
class SemidirectElement:
    """An element (g, r^h) of B(A~_{m-1}) x| C_{nm}."""

    g: Word
    h: int
    m: int
    n: int

    def __mul__(self, other: "SemidirectElement") -> "SemidirectElement":
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("elements of different groups")
        g = free_reduce(self.g + shift_indices(other.g, self.h, self.m))
        return SemidirectElement(g, (self.h + other.h) % (self.n * self.m), self.m, self.n)

    def equals(self, other: "SemidirectElement") -> bool:
        return self.h == other.h and equal_in_group(Presentation("affine", self.m), self.g, other.g)


def semidirect_mul(x: SemidirectElement, y: SemidirectElement) -> SemidirectElement:
    return x * y


# ---------------------------------------------------------------------------
# A_{m,n}

def amn_relators(m: int, n: int) -> list:
    """The defining relations of A_{m,n} as pairs (lhs, rhs) over s_1..s_m, r1, r2."""
    r1, r2 = (("r1", 1),), (("r2", 1),)
    out = list(Presentation("artin", m).relators())
    for i in range(1, m + 1):
        out.append((s(i) + r1, r1 + s(i)))
        out.append((s(i) + r2, r2 + s(i)))
    out.append((r1 + r2, r2 + r1))
    out.append((r2 * n, ()))
    cox = tuple(l for k in range(m, 0, -1) for l in s(k))
    out.append((cox * (m + 1), r2 * (m + 1) + r1 * (2 * m)))
    return out


__all__ = [
    "ScalingSequence", "scaling_op", "parse_group_word", "format_group_word", "inverse",
    "free_reduce", "power", "Presentation", "group_action", "is_trivial_word", "equal_in_group",
    "random_word", "phi_N", "psi_embed", "shift_indices", "SemidirectElement", "semidirect_mul",
    "amn_relators",
]
