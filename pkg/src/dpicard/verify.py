"""Verification suites: each suite yields one ``Check`` per checked instance.

Verdicts are ``pass``, ``fail`` or ``unknown``; only ``pass`` counts as
success.  All randomness derives from ``RunConfig.seed``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd
import hashlib
import random

from .algebra_r import RWordLibrary, omega_equivalence, r_algebra, twist_functor
from .complexes import (
    ChainMap, ProjComplex, chain_map_basis, cone, direct_sum, find_iso, is_minimal, minimize, shift,
)
from .equivalences import (
    FunctorLibrary, TiltingFunctor, check_natural_iso, equivalence_sum, f_theta_object,
    h_equivalence, q_equivalence, scaling_intertwiner, tilting_report,
)
from .groups import (
    Presentation, ScalingSequence, SemidirectElement, amn_relators, equal_in_group, format_group_word,
    group_action, is_trivial_word, phi_N, psi_embed, random_word,
)
from .linalg import DEFAULT_PRIME, GF, Field
from .nakayama import Automorphism, NakayamaSpec, hom_basis, is_inner, normalize_automorphism
from .oracles import nakayama_hom_lengths, r_dimension
from .smash import ct_tilting_functor, morita_evidence


@dataclass(frozen=True)
class RunConfig:
    m: int
    n: int
    t: int = 1
    field: Field = dc_field(default_factory=lambda: GF(DEFAULT_PRIME))
    seed: int = 0
    budget: int = 64
    samples: int = 50

    @property
    def spec(self) -> NakayamaSpec:
        return NakayamaSpec(self.m, self.n, self.t, require_coprime=False)

    @property
    def coprime(self) -> bool:
        return gcd(self.n, self.t) == 1

    def label(self) -> str:
        return f"m={self.m} n={self.n} t={self.t}"


@dataclass(frozen=True)
class Check:
    suite: str
    config: str
    instance: str
    verdict: str
    detail: str = ""
    witness: str = dc_field(default="", compare=False, repr=False)

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    def text(self) -> str:
        tail = f" | {self.detail}" if self.detail else ""
        return f"[{self.verdict.upper()}] {self.suite} {self.config} | {self.instance}{tail}"

    def record(self) -> str:
        return "\t".join((self.suite, self.config, self.instance, self.verdict, self.detail))


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:12]


def _verdict(flag: bool) -> str:
    return "pass" if flag else "fail"


def iso_check(suite: str, cfg: RunConfig, instance: str, X: ProjComplex, Y: ProjComplex) -> Check:
    res = find_iso(X, Y, budget=cfg.budget, seed=cfg.seed)
    verdict = {"iso": "pass", "not_iso": "fail", "unknown": "unknown"}[res.status]
    if res.found:
        wit = res.witness.text()
        detail = f"witness {digest(wit)} size {minimize(X).size()}"
        return Check(suite, cfg.label(), instance, verdict, detail, wit)
    detail = res.reason
    if "graded classes" not in detail:
        detail += f"; lhs {minimize(X).graded_classes()} rhs {minimize(Y).graded_classes()}"
    return Check(suite, cfg.label(), instance, verdict, detail)


def _need(cond: bool, message: str):
    if not cond:
        raise ValueError(message)


def _nakayama(cfg: RunConfig):
    return cfg.spec.algebra(cfg.field)


# ---------------------------------------------------------------------------
# suites over N_{nm,tm}

def suite_braid(cfg: RunConfig):
    """H_l H_{l+1} H_l = H_{l+1} H_l H_{l+1} and H_i H_j = H_j H_i (|i-j| > 1) on projectives."""
    _need(cfg.m >= 2, "braid relations need m >= 2")
    alg = _nakayama(cfg)
    lib = FunctorLibrary(alg, cfg.m)
    m = cfg.m
    words = []
    for l in range(m):
        a, b = l, (l + 1) % m
        words.append((f"H{a} H{b} H{a}", f"H{b} H{a} H{b}"))
    for i in range(m):
        for j in range(i + 1, m):
            if (j - i) % m not in (1, m - 1):
                words.append((f"H{i} H{j}", f"H{j} H{i}"))
    for lhs, rhs in words:
        for p in range(alg.V):
            P = ProjComplex.stalk(alg, p)
            yield iso_check("braid", cfg, f"{lhs} ~ {rhs} on P{p}", lib.apply(lhs, P), lib.apply(rhs, P))


def rot_word(m: int) -> str:
    """H_0 ... H_{m-2} then Q_{m-1} twice (applied left to right)."""
    return " ".join([f"H{k}" for k in range(m - 1)] + [f"Q{m - 1}", f"Q{m - 1}"])


def suite_rot(cfg: RunConfig):
    """Q_{m-1}^2 H_{m-2} ... H_0 (P_i) = P_{i-m-1}."""
    _need(cfg.t == 1, "the rotation check needs t = 1")
    _need(cfg.m >= 2, "the rotation check needs m >= 2")
    alg = _nakayama(cfg)
    lib = FunctorLibrary(alg, cfg.m)
    word = rot_word(cfg.m)
    for i in range(alg.V):
        X = lib.apply(word, ProjComplex.stalk(alg, i))
        target = (i - cfg.m - 1) % alg.V
        yield iso_check("rot", cfg, f"[{word}](P{i}) ~ P{target}", X, ProjComplex.stalk(alg, target))


def suite_tilting(cfg: RunConfig):
    """K(H, H[d]) = 0 for d != 0 and dim K(H, H) = dim N for H_l (and Q_l when t = 1)."""
    _need(cfg.m >= 2, "H_l needs m >= 2")
    alg = _nakayama(cfg)
    datas = [h_equivalence(alg, cfg.m, l) for l in range(cfg.m)]
    if cfg.t == 1:
        datas += [q_equivalence(alg, cfg.m, l) for l in range(cfg.m)]
    dim = alg.dimension()
    for S in datas:
        rep = tilting_report(equivalence_sum(S))
        nonzero = {d: v for d, v in rep.items() if v}
        ok = nonzero == {0: dim}
        yield Check("tilting", cfg.label(), f"{S.name} window {min(rep)}..{max(rep)}", _verdict(ok),
                    f"nonzero dims {nonzero}, dim N = {dim}")


def suite_natural(cfg: RunConfig):
    """rho H_i = H_{i+1} rho on projectives, and the u_c intertwiner for mu_c and H_0."""
    _need(cfg.m >= 2, "H_l needs m >= 2")
    alg = _nakayama(cfg)
    lib = FunctorLibrary(alg, cfg.m)
    for i in range(cfg.m):
        for p in range(alg.V):
            P = ProjComplex.stalk(alg, p)
            yield iso_check("natural", cfg, f"rho H{i} ~ H{i + 1} rho on P{p}",
                            lib.apply(f"H{i} rho", P), lib.apply(f"rho H{(i + 1) % cfg.m}", P))
    rng = random.Random(cfg.seed)
    F = alg.field
    c = [F.random_nonzero(rng)] + [F.random(rng) for _ in range(alg.depth - 1)]
    S1, S2, alpha = scaling_intertwiner(alg, cfg.m, c)
    rep = check_natural_iso(S1, S2, alpha)
    ctext = ",".join(F.format(x) for x in c)
    for key in ("chain", "iso", "natural"):
        yield Check("natural", cfg.label(), f"alpha_0 = u_c, c = ({ctext}): {key}", _verdict(rep[key]))
    mu = "mu[" + ctext + "]"
    for trial in range(3):
        a, k = rng.randrange(alg.V), rng.randrange(1, alg.L + 1)
        U = ProjComplex(alg, {0: (a,), 1: ((a + k) % alg.V,)}, {0: {(0, 0): alg.path_vec(a, k)}})
        yield iso_check("natural", cfg, f"F[mu_c;H0](Y_{a},{k}) ~ [{mu} H0]",
                        f_theta_object(S1, U), lib.apply(f"{mu} H0", U))
        yield iso_check("natural", cfg, f"F[H0;mu_c](Y_{a},{k}) ~ [H0 {mu}]",
                        f_theta_object(S2, U), lib.apply(f"H0 {mu}", U))


def _random_unit(alg, rng):
    F = alg.field
    u = {}
    for s in range(alg.V):
        u[(s, 0)] = F.random_nonzero(rng)
        for k in range(1, alg.L + 1):
            if rng.random() < 0.5:
                u[(s, k)] = F.random(rng)
    return {key: v for key, v in u.items() if not F.is_zero(v)}


def suite_picard(cfg: RunConfig):
    """xi: C_{nm} x S_N(k) -> Pic(N): homomorphism, injectivity and normalization."""
    _need(cfg.coprime, "Pic(N) statements need gcd(n, t) = 1")
    alg = _nakayama(cfg)
    F = alg.field
    N = alg.depth
    rng = random.Random(cfg.seed)
    label = cfg.label()

    def rnd():
        return ScalingSequence.random(F, N, rng)

    def scaling(c):
        return Automorphism.scaling(alg, c.coeffs)

    def fmt(c):
        return "(" + ",".join(F.format(x) for x in c.coeffs) + ")"

    for _ in range(5):
        c, d = rnd(), rnd()
        ok = scaling(d).compose(scaling(c)) == scaling(c * d)
        yield Check("picard", label, f"mu_d o mu_c = mu_(c*d) for c={fmt(c)} d={fmt(d)}", _verdict(ok))
    rho = Automorphism.rotation(alg, 1)
    for _ in range(3):
        c = rnd()
        one_v = 1 % alg.V
        v = alg.eadd(alg.one(), {(one_v, 0): F.one}, F.neg(F.one))
        for k, ck in enumerate(c.coeffs):
            if k * alg.V <= alg.L:
                v = alg.eadd(v, {(one_v, k * alg.V): ck})
        sigma = Automorphism.conjugation(alg, v)
        lhs = rho.compose(scaling(c))
        rhs = sigma.compose(scaling(c)).compose(rho)
        y = is_inner(lhs.inverse().compose(rhs), random.Random(cfg.seed))
        yield Check("picard", label, f"rho mu_c = sigma mu_c rho (inner) for c={fmt(c)}", _verdict(y is not None))
    ident = ScalingSequence.identity(F, N)
    yield Check("picard", label, "identity is inner",
                _verdict(is_inner(Automorphism.identity(alg)) is not None))
    samples = [ident] + [rnd() for _ in range(cfg.samples)]
    for l in range(alg.V):
        bad = []
        for c in samples:
            if l == 0 and c == ident:
                continue
            aut = Automorphism.rotation(alg, l).compose(scaling(c))
            if is_inner(aut, random.Random(cfg.seed)) is not None:
                bad.append(fmt(c))
        count = len(samples) - (1 if l == 0 else 0)
        yield Check("picard", label, f"rho^{l} mu_c not inner for {count} sampled c", _verdict(not bad),
                    f"inner for {bad[:3]}" if bad else "")
    for trial in range(5):
        l, c = rng.randrange(alg.V), rnd()
        u = _random_unit(alg, rng)
        base = Automorphism.rotation(alg, l).compose(scaling(c))
        aut = Automorphism.conjugation(alg, u).compose(base)
        l2, c2 = normalize_automorphism(aut)
        c2 = ScalingSequence(F, c2)
        back = Automorphism.rotation(alg, l2).compose(scaling(c2))
        inner = is_inner(aut.inverse().compose(back), random.Random(cfg.seed)) is not None
        ok = l2 == l and c2 == c and inner
        yield Check("picard", label, f"normalize(inner o rho^{l} mu_c) with c={fmt(c)}", _verdict(ok),
                    f"got l={l2} c={fmt(c2)}")


def suite_smash(cfg: RunConfig):
    """Both C_t-functor axioms and F_{theta_l} = H~_l H~_{l+m} ... on the cover."""
    _need(cfg.coprime, "the smash construction needs gcd(n, t) = 1")
    _need(cfg.m >= 2, "the C_t-functor needs m >= 2")
    label = cfg.label()
    ev = morita_evidence(cfg.spec)
    for key, ok in ev.items():
        yield Check("smash", label, f"N~#C_t versus N: {key}", _verdict(ok))
    for l in range(cfg.m):
        ct = ct_tilting_functor(cfg.spec, l, cfg.field)
        gens = ct.check_generators()
        bad = [k for k, ok in gens.items() if not ok]
        yield Check("smash", label, f"l={l} psi theta(r^-1 a) = (theta(a)#r) psi on {len(gens)} generators",
                    _verdict(not bad), f"failing {bad[:4]}" if bad else "")
        yield Check("smash", label, f"l={l} psi^t = Id", _verdict(ct.check_psi_order()))
        word = " ".join(f"H{l + j * cfg.m}" for j in range(cfg.t))
        lib = FunctorLibrary(ct.base, cfg.t * cfg.m)
        for i in range(ct.base.V):
            P = ProjComplex.stalk(ct.base, i)
            yield iso_check("smash", cfg, f"l={l} F_thetabar(P~{i}) ~ H~[{word}](P~{i})",
                            f_theta_object(ct.data, P), lib.apply(word, P))


def suite_oracles(cfg: RunConfig):
    """hom_basis against path enumeration, dim R against the relation-ideal oracle,
    and idempotence of minimize on random complexes."""
    spec = cfg.spec
    ok = all(hom_basis(spec, i, j) == nakayama_hom_lengths(spec.vertices, spec.maxlen, i, j)
             for i in range(spec.vertices) for j in range(spec.vertices))
    yield Check("oracles", cfg.label(), "hom_basis = path enumeration", _verdict(ok))
    if cfg.m >= 2:
        R = r_algebra(cfg.m, cfg.n, cfg.field)
        d = r_dimension(cfg.m, cfg.n, cfg.field)
        yield Check("oracles", cfg.label(), "dim R = brute force = 4mn - 2n",
                    _verdict(R.dimension() == d == 4 * cfg.m * cfg.n - 2 * cfg.n), f"{R.dimension()} / {d}")
    alg = _nakayama(cfg)
    rng = random.Random(cfg.seed)
    bad = 0
    for _ in range(cfg.samples):
        X = random_complex(alg, rng)
        M = minimize(X)
        if minimize(M) != M or not is_minimal(M):
            bad += 1
    yield Check("oracles", cfg.label(), f"minimize twice = minimize once on {cfg.samples} random complexes",
                _verdict(bad == 0), f"{bad} failures" if bad else "")


def random_complex(alg, rng: random.Random, steps: int = 3) -> ProjComplex:
    """Iterated cones of random chain maps between short complexes, plus a contractible summand."""
    F = alg.field
    V, L = alg.V, alg.L

    def small():
        a = rng.randrange(V)
        if rng.random() < 0.4:
            X = ProjComplex.stalk(alg, a)
        else:
            k = rng.randrange(1, L + 1)
            X = ProjComplex(alg, {0: (a,), 1: ((a + k) % V,)}, {0: {(0, 0): alg.path_vec(a, k)}})
        return shift(X, rng.randrange(-1, 2))

    X = small()
    for _ in range(steps):
        Z = small()
        space, basis = chain_map_basis(Z, X, 0)
        if basis:
            vec: dict = {}
            for v in basis:
                c = F.random(rng)
                for key, x in v.items():
                    vec[key] = F.add(vec.get(key, F.zero), F.mul(c, x))
            vec = {k: v for k, v in vec.items() if not F.is_zero(v)}
            X = cone(space.to_map(vec))
        else:
            X = direct_sum(X, Z)
    W = small()
    return direct_sum(X, cone(ChainMap.identity(W)))


# ---------------------------------------------------------------------------
# suites over R

def _r_setup(cfg: RunConfig):
    _need(cfg.m >= 2, "R needs m >= 2")
    return r_algebra(cfg.m, cfg.n, cfg.field)


def suite_omega(cfg: RunConfig):
    """F_omega H_{m-i}(P_j) = T_i F_omega(P_j) (i > 1) and F_omega Q_{m-1}(P_j)[1] = T_1 F_omega(P_j)."""
    _need(cfg.t == 1, "F_omega needs t = 1")
    R = _r_setup(cfg)
    N = _nakayama(cfg)
    Fw = TiltingFunctor(omega_equivalence(N, R))
    lib = FunctorLibrary(N, cfg.m)
    m = cfg.m
    for j in range(N.V):
        P = ProjComplex.stalk(N, j)
        FP = Fw.obj(P)
        for i in range(1, m + 1):
            T = twist_functor(R, i)
            if i > 1:
                lhs = Fw.obj(lib.apply(f"H{m - i}", P))
                inst = f"F_w H{m - i}(P{j}) ~ T{i} F_w(P{j})"
            else:
                lhs = shift(Fw.obj(lib.apply(f"Q{m - 1}", P)), 1)
                inst = f"F_w Q{m - 1}(P{j})[1] ~ T1 F_w(P{j})"
            yield iso_check("omega", cfg, inst, lhs, T.obj(FP))


def suite_center(cfg: RunConfig):
    """(T_m ... T_1)^{m+1}(P_{i,j}) = tau^{m+1}(P_{i,j})[2m]."""
    R = _r_setup(cfg)
    lib = RWordLibrary(R)
    m = cfg.m
    cox = tuple((f"s{k}", 1) for k in range(m, 0, -1)) * (m + 1)
    rhs = (("r2", 1),) * (m + 1) + (("r1", 1),) * (2 * m)
    for a in R.labels():
        P = ProjComplex.stalk(R, a)
        yield iso_check("center", cfg, f"(T{m}..T1)^{m + 1}(P{R.format_label(a)}) ~ tau^{m + 1}[{2 * m}]",
                        lib.apply(cox, P), lib.apply(rhs, P))


def suite_amn(cfg: RunConfig):
    """Every defining relation of A_{m,n} under s_i -> T_i, r1 -> [1], r2 -> tau, on all projectives."""
    R = _r_setup(cfg)
    lib = RWordLibrary(R)
    for lhs, rhs in amn_relators(cfg.m, cfg.n):
        for a in R.labels():
            P = ProjComplex.stalk(R, a)
            inst = f"{format_group_word(lhs)} = {format_group_word(rhs)} on P{R.format_label(a)}"
            yield iso_check("amn", cfg, inst, lib.apply(lhs, P), lib.apply(rhs, P))


# ---------------------------------------------------------------------------
# groups

def suite_groups(cfg: RunConfig, triples: int | None = None):
    """S_N(k) axioms, relators under the actions, phi_N and psi, semidirect associativity."""
    label = cfg.label()
    rng = random.Random(cfg.seed)
    F = cfg.field
    triples = cfg.samples if triples is None else triples
    N = cfg.spec.depth
    bad = 0
    for _ in range(triples):
        a, b, c = (ScalingSequence.random(F, N, rng) for _ in range(3))
        e = ScalingSequence.identity(F, N)
        if (a * b) * c != a * (b * c) or a * e != a or e * a != a or a * a.inverse() != e or a.inverse() * a != e:
            bad += 1
    yield Check("groups", label, f"S_{N}(k) axioms on {triples} random triples", _verdict(bad == 0))
    m, t = cfg.m, cfg.t
    if m < 2:
        return
    aff = Presentation("affine", m)
    ok = all(group_action_equal(aff, l, r) for l, r in aff.relators())
    yield Check("groups", label, f"affine({m}) action respects {len(aff.relators())} relators", _verdict(ok))
    art = Presentation("artin", m)
    ok = all(equal_in_group(art, phi_N(l, m), phi_N(r, m)) for l, r in aff.relators())
    yield Check("groups", label, f"phi_{m} maps affine({m}) relators to trivial words", _verdict(ok))
    big = Presentation("affine", t * m)
    ok = all(equal_in_group(big, psi_embed(l, m, t), psi_embed(r, m, t)) for l, r in aff.relators())
    yield Check("groups", label, f"psi (t={t}) maps affine({m}) relators to trivial words", _verdict(ok))
    found = bad = tries = 0
    while found < cfg.samples and tries < 100 * cfg.samples:
        tries += 1
        g = random_word(aff, rng.randint(1, 8), rng)
        if is_trivial_word(aff, g):
            continue
        found += 1
        if is_trivial_word(big, psi_embed(g, m, t)):
            bad += 1
    yield Check("groups", label, f"psi(g) nontrivial for {found} nontrivial words of length <= 8",
                _verdict(bad == 0 and found == cfg.samples))
    bad = 0
    n = cfg.n
    for _ in range(cfg.samples):
        x, y, z = (SemidirectElement(random_word(aff, rng.randint(0, 5), rng), rng.randrange(n * m), m, n)
                   for _ in range(3))
        if not ((x * y) * z).equals(x * (y * z)):
            bad += 1
    yield Check("groups", label, f"semidirect product associative on {cfg.samples} triples", _verdict(bad == 0))


def group_action_equal(pres: Presentation, lhs, rhs) -> bool:
    return all(group_action(pres, lhs, ((y, 1),)) == group_action(pres, rhs, ((y, 1),))
               for y in pres.free_generators())


SUITES = {
    "braid": suite_braid,
    "rot": suite_rot,
    "omega": suite_omega,
    "center": suite_center,
    "picard": suite_picard,
    "smash": suite_smash,
    "groups": suite_groups,
    "natural": suite_natural,
    "tilting": suite_tilting,
    "amn": suite_amn,
    "oracles": suite_oracles,
}

# suites whose statements assume gcd(n, t) = 1
COPRIME_SUITES = {"picard", "smash"}


def applicable_suites(cfg: RunConfig) -> list:
    """The suites ``verify all`` runs for a configuration."""
    names = ["tilting", "natural", "picard", "groups", "oracles"]
    if cfg.m >= 3:
        # B(A~_1) is free, so for m = 2 no braid relation is expected
        names.insert(0, "braid")
    if cfg.t == 1:
        names += ["rot", "omega", "center", "amn"]
    names.append("smash")
    if cfg.m < 2:
        names = [x for x in names if x in ("picard", "groups", "oracles")]
    return names


def run_suite(name: str, cfg: RunConfig) -> list:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return list(SUITES[name](cfg))


__all__ = [
    "RunConfig", "Check", "digest", "iso_check", "rot_word", "random_complex", "SUITES",
    "COPRIME_SUITES", "applicable_suites", "run_suite",
] + [f"suite_{k}" for k in SUITES]
