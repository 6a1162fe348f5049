"""Acceptance criteria 1-10.  Each test prints one ``criterion N: PASS|FAIL`` line.

Run directly with ``python3 tests/test_acceptance.py`` or through pytest.
"""
from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

from dpicard.groups import (
    Presentation, ScalingSequence, SemidirectElement, equal_in_group, is_trivial_word, phi_N, psi_embed,
    random_word,
)
from dpicard.linalg import GF
from dpicard.nakayama import NakayamaSpec, hom_basis
from dpicard.complexes import is_minimal, minimize
from dpicard.oracles import nakayama_hom_lengths, r_dimension
from dpicard.algebra_r import r_algebra
from dpicard.verify import RunConfig, group_action_equal, random_complex, run_suite

F = GF(32003)
DEFAULT_MATRIX = [(2, 3, 1), (3, 2, 1), (2, 3, 2), (3, 2, 2), (2, 1, 3)]

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # pragma: no cover
    ACCEPTANCE_LINES = []


def _suites(name: str, configs, **kw) -> tuple[bool, str]:
    parts, ok = [], True
    for m, n, t in configs:
        checks = run_suite(name, RunConfig(m, n, t, F, **kw))
        good = sum(c.ok for c in checks)
        ok = ok and good == len(checks) and bool(checks)
        parts.append(f"({m},{n},{t}) {good}/{len(checks)}")
    return ok, ", ".join(parts)


def criterion_1():
    start = time.perf_counter()
    ok, detail = _suites("braid", [(3, 2, 2), (2, 3, 2), (3, 2, 1)])
    elapsed = time.perf_counter() - start
    return ok and elapsed < 300, f"{detail}; {elapsed:.1f}s"


def criterion_2():
    configs = [(2, 3, 1), (3, 2, 1)]
    checks = [c for m, n, t in configs for c in run_suite("rot", RunConfig(m, n, t, F))]
    ok = bool(checks) and all(c.ok and c.witness for c in checks)
    return ok, f"{sum(c.ok for c in checks)}/{len(checks)} with witnesses"


def criterion_3():
    return _suites("omega", [(2, 3, 1), (3, 2, 1)])


def criterion_4():
    return _suites("center", [(2, 3, 1), (3, 2, 1)])


def criterion_5():
    return _suites("picard", [(2, 3, 1), (1, 1, 3), (2, 3, 2)], samples=50)


def criterion_6():
    return _suites("tilting", DEFAULT_MATRIX)


def criterion_7():
    return _suites("smash", [(2, 3, 2), (2, 1, 3)])


def criterion_8():
    rng = random.Random(0)
    bad = []
    for N in range(1, 7):
        for _ in range(1000 // 6 + 1):
            a, b, c = (ScalingSequence.random(F, N, rng) for _ in range(3))
            e = ScalingSequence.identity(F, N)
            if not ((a * b) * c == a * (b * c) and a * e == a == e * a and a * a.inverse() == e == a.inverse() * a):
                bad.append(f"S_{N} axioms")
    for m in (2, 3, 4, 6):
        aff = Presentation("affine", m)
        if not all(group_action_equal(aff, l, r) for l, r in aff.relators()):
            bad.append(f"affine({m}) action")
    for N in range(2, 7):
        art = Presentation("artin", N)
        if not all(equal_in_group(art, phi_N(l, N), phi_N(r, N)) for l, r in Presentation("affine", N).relators()):
            bad.append(f"phi_{N}")
    words = 0
    for m in range(2, 7):
        aff = Presentation("affine", m)
        for t in range(1, 7):
            big = Presentation("affine", t * m)
            if not all(equal_in_group(big, psi_embed(l, m, t), psi_embed(r, m, t)) for l, r in aff.relators()):
                bad.append(f"psi m={m} t={t} relators")
            found = 0
            while found < 100:
                g = random_word(aff, rng.randint(1, 8), rng)
                if is_trivial_word(aff, g):
                    continue
                found += 1
                if is_trivial_word(big, psi_embed(g, m, t)):
                    bad.append(f"psi m={m} t={t} kills {g}")
            words += found
    for m, n in [(2, 3), (3, 2), (4, 1)]:
        aff = Presentation("affine", m)
        for _ in range(100):
            x, y, z = (SemidirectElement(random_word(aff, rng.randint(0, 5), rng), rng.randrange(n * m), m, n)
                       for _ in range(3))
            if not ((x * y) * z).equals(x * (y * z)):
                bad.append(f"semidirect m={m} n={n}")
    return not bad, f"{len(bad)} failures; psi nontrivial on {words} words" + (f"; first {bad[:3]}" if bad else "")


def criterion_9():
    return _suites("natural", [(3, 2, 2)])


def criterion_10():
    bad = []
    for m in range(2, 5):
        for n in range(1, 4):
            d = r_algebra(m, n, F).dimension()
            if not d == r_dimension(m, n) == 4 * m * n - 2 * n:
                bad.append(f"dim R({m},{n})")
    for m, n, t in DEFAULT_MATRIX + [(1, 1, 3)]:
        spec = NakayamaSpec(m, n, t, require_coprime=False)
        V, L = spec.vertices, spec.maxlen
        if any(hom_basis(spec, i, j) != nakayama_hom_lengths(V, L, i, j) for i in range(V) for j in range(V)):
            bad.append(f"hom_basis {spec}")
    rng = random.Random(0)
    algs = [NakayamaSpec(*c, require_coprime=False).algebra(F) for c in DEFAULT_MATRIX]
    for k in range(200):
        X = random_complex(algs[k % len(algs)], rng)
        M = minimize(X)
        if minimize(M) != M or not is_minimal(M):
            bad.append(f"minimize sample {k}")
    return not bad, f"{len(bad)} failures; 200 random complexes" + (f"; {bad[:3]}" if bad else "")


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 11)}


def _report(k: int) -> tuple[bool, str]:
    ok, detail = CRITERIA[k]()
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'} | {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok, detail


@pytest.mark.parametrize("k", list(CRITERIA))
def test_criterion(k):
    ok, detail = _report(k)
    assert ok, detail


if __name__ == "__main__":
    sys.path.insert(0, str(Path(__file__).parent))
    results = [_report(k)[0] for k in CRITERIA]
    sys.exit(0 if all(results) else 1)
