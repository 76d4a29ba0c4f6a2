"""Randomized exact property checks shared by the test suite and the CLI.

Each check draws its instances from a seeded ``random.Random`` so a run is
reproducible from ``(seed, instances)``; every comparison is exact.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from . import pfold
from .ainfinity import (D, UNIT, AInfinityAlgebra, DiagonalBimodule, Potential, a_zn,
                        minimal_model_of_potential, premorphism_differential)
from .equivariant import (ZpComplex, cyclic_power, d_eq, equivariant_cap_chain, homotopy, lax_monoidal_vec,
                          pfold_zp, pth_power, tau_eq, tensor_zp)
from .hochschild import (HochschildCochain, chain_differential, connes, cochain_differential, cup_product,
                         cyclic_differential, nu_differential, phi, psi_map, unit_cochain)
from .linear import Eliminator, Indexer, add_into, vec_clean
from .scalars import GF


@dataclass
class PropertyResult:
    name: str
    instances: int
    failures: int = 0
    counterexample: object = None

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.instances > 0


def _run(name: str, n: int, rng: random.Random, check) -> PropertyResult:
    res = PropertyResult(name, n)
    for _ in range(n):
        ok, info = check(rng)
        if not ok:
            res.failures += 1
            if res.counterexample is None:
                res.counterexample = info
    return res


def apply(F, fn, v: dict) -> dict:
    out: dict = {}
    for k, c in v.items():
        add_into(F, out, fn(k), c)
    return vec_clean(F, out)


def _sub(F, u: dict, v: dict) -> dict:
    out = dict(u)
    add_into(F, out, v, -1)
    return vec_clean(F, out)


# ------------------------------------------------------------- instances

def random_algebra(rng: random.Random, max_N: int = 6) -> AInfinityAlgebra:
    """Model of a random potential with leading order N <= max_N over F_3 or F_5, p not dividing N."""
    while True:
        p = rng.choice([3, 5])
        N = rng.randint(2, max_N)
        if N % p:
            break
    F = GF(p)
    coeffs = {N: rng.randint(1, p - 1)}
    for i in range(N + 1, N + 3):
        if rng.random() < 0.5:
            coeffs[i] = rng.randint(1, p - 1)
    return minimal_model_of_potential(Potential(F, coeffs))


def random_word(rng, letters, n):
    return tuple(rng.choice(letters) for _ in range(n))


def random_chain(rng, A: AInfinityAlgebra, L: int, normalized: bool = True, terms: int = 3) -> dict:
    letters = [i for i in range(A.dim) if not (normalized and i == A.unit)]
    F = A.F
    out: dict = {}
    for _ in range(terms):
        key = (rng.randrange(A.dim), random_word(rng, letters, rng.randint(0, L)))
        add_into(F, out, {key: F(rng.randint(1, F.p - 1))})
    return vec_clean(F, out)


def random_pfold_chain(rng, A: AInfinityAlgebra, n: int, L: int, terms: int = 3) -> dict:
    letters = [i for i in range(A.dim) if i != A.unit]
    F = A.F
    out: dict = {}
    for _ in range(terms):
        total = rng.randint(0, L)
        cuts = sorted(rng.randint(0, total) for _ in range(n - 1))
        lens = [b - a for a, b in zip([0] + cuts, cuts + [total])]
        key = tuple((rng.randrange(A.dim), random_word(rng, letters, k)) for k in lens)
        add_into(F, out, {key: F(rng.randint(1, F.p - 1))})
    return vec_clean(F, out)


def random_cochain(rng, A: AInfinityAlgebra, max_len: int, parity: int | None = None) -> HochschildCochain:
    """Random normalized cochain on a two-dimensional model: inputs are powers of d."""
    F = A.F
    par = rng.randint(0, 1) if parity is None else parity
    out = UNIT if par == 0 else D
    table = {}
    for k in range(max_len + 1):
        if rng.random() < 0.6:
            table[(D,) * k] = {out: rng.randint(0, F.p - 1)}
    return HochschildCochain(A, par, table)


# --------------------------------------------------------- chain complexes

def check_b_squared(rng) -> tuple:
    A = random_algebra(rng)
    normalized = rng.random() < 0.7
    x = random_chain(rng, A, 2 * A.arity_bound, normalized)
    M = DiagonalBimodule(A)
    d = lambda k: chain_differential(M, k, normalized)
    return not apply(A.F, d, apply(A.F, d, x)), (A.name, x)


def check_cochain_d_squared(rng) -> tuple:
    A = random_algebra(rng)
    L = 2 * A.arity_bound
    f = random_cochain(rng, A, L)
    return cochain_differential(cochain_differential(f, L), L).is_zero(), (A.name, f.table)


def random_nu_chain(rng, A, max_len: int = 5) -> dict:
    F = A.F
    out: dict = {}
    for _ in range(3):
        key = (rng.randint(0, 1), random_word(rng, list(range(A.dim)), rng.randint(1, max_len)))
        add_into(F, out, {key: F(rng.randint(1, F.p - 1))})
    return vec_clean(F, out)


def check_nu_squared(rng) -> tuple:
    A = random_algebra(rng, 5)
    x = random_nu_chain(rng, A)
    d = lambda k: nu_differential(A, k)
    return not apply(A.F, d, apply(A.F, d, x)), (A.name, x)


def check_cyclic_squared(rng) -> tuple:
    A = random_algebra(rng, 5)
    T = 4
    x = {(rng.randint(0, T), k): c for k, c in random_nu_chain(rng, A).items()}
    d = lambda k: cyclic_differential(A, k, T)
    return not apply(A.F, d, apply(A.F, d, x)), (A.name, x)


def check_connes(rng) -> tuple:
    A = random_algebra(rng, 5)
    F = A.F
    x = random_nu_chain(rng, A)
    B = lambda k: connes(A, k)
    b = lambda k: nu_differential(A, k)
    sq = apply(F, B, apply(F, B, x))
    anti = apply(F, b, apply(F, B, x))
    add_into(F, anti, apply(F, B, apply(F, b, x)))
    return not sq and not vec_clean(F, anti), (A.name, x)


def check_pfold(rng) -> tuple:
    """d^2 = 0, tau^n = id and tau d = d tau on one random n-fold chain."""
    A = random_algebra(rng, 5)
    F = A.F
    n = rng.choice([2, 3, F.p])
    x = random_pfold_chain(rng, A, n, 6 if n <= 3 else 4)
    d = lambda k: pfold.differential(A, k)
    dd = apply(F, d, apply(F, d, x))
    rot = pfold.tau_vec(A, x, n) == x
    comm = apply(F, d, pfold.tau_vec(A, x)) == pfold.tau_vec(A, apply(F, d, x))
    return not dd and rot and comm, (A.name, n, x)


def check_collapse(rng) -> tuple:
    """One collapse step and the full collapse commute with the differentials."""
    A = random_algebra(rng, 5)
    F = A.F
    n = rng.choice([2, 3])
    x = random_pfold_chain(rng, A, n, 6)
    d = lambda k: pfold.differential(A, k)
    eps = lambda k: pfold.collapse(A, k)
    one = apply(F, eps, apply(F, d, x)) == apply(F, d, apply(F, eps, x))
    full = vec_clean(F, pfold.full_collapse(A, apply(F, d, x))) == apply(F, d, pfold.full_collapse(A, x))
    return one and full, (A.name, x)


def check_psi(rng) -> tuple:
    """Psi(d phi) = delta(Psi(phi)) on random inputs."""
    A = random_algebra(rng, 5)
    F = A.F
    L = 5
    f = random_cochain(rng, A, L)
    lhs = psi_map(cochain_differential(f, L))
    rhs = premorphism_differential(psi_map(f))
    letters = list(range(A.dim))
    for _ in range(4):
        left = random_word(rng, letters, rng.randint(0, 2))
        right = random_word(rng, letters, rng.randint(0, L - len(left)))
        if any(x == A.unit for x in right):
            continue
        m = rng.randrange(A.dim)
        if vec_clean(F, lhs(left, m, right)) != vec_clean(F, rhs(left, m, right)):
            return False, (A.name, f.table, left, m, right)
    return True, None


def check_cup_leibniz(rng) -> tuple:
    A = random_algebra(rng, 5)
    L = 6
    a, b = random_cochain(rng, A, 3), random_cochain(rng, A, 3)
    lhs = cochain_differential(cup_product(a, b, L), L)
    s = A.F(-1) if a.parity else A.F(1)
    rhs = cup_product(cochain_differential(a, L), b, L) + cup_product(a, cochain_differential(b, L), L).scale(s)
    return lhs == rhs, (A.name, a.table, b.table)


# ------------------------------------------------------------- equivariant

def check_d_eq_squared(rng) -> tuple:
    A = random_algebra(rng, 5)
    p = A.F.p
    X = pfold_zp(A, p)
    T = 3
    x = {(rng.randint(0, T), rng.randint(0, 1), k): c
         for k, c in random_pfold_chain(rng, A, p, 5 if p == 3 else 3).items()}
    return not d_eq(X, d_eq(X, x, T), T), (A.name, x)


def check_tau_homotopy(rng) -> tuple:
    """d_eq h + h d_eq = tau - 1."""
    A = random_algebra(rng, 5)
    F = A.F
    p = F.p
    X = pfold_zp(A, p)
    T = 3
    x = {(rng.randint(0, T), rng.randint(0, 1), k): c
         for k, c in random_pfold_chain(rng, A, p, 5 if p == 3 else 3).items()}
    lhs = d_eq(X, homotopy(X, x), T)
    add_into(F, lhs, homotopy(X, d_eq(X, x, T)))
    rhs = tau_eq(X, x)
    add_into(F, rhs, x, -1)
    return vec_clean(F, lhs) == vec_clean(F, rhs), (A.name, x)


SMALL_PARITIES = [0, 1, 0, 1, 1]


def small_complex(F) -> ZpComplex:
    """k<e0, ..., e4> with e1, e3, e4 odd, d e3 = e2 and the trivial action."""
    return ZpComplex(F, F.p, lambda k: {2: F.one()} if k == 3 else {}, lambda k: {k: F.one()},
                     lambda k: SMALL_PARITIES[k])


def boundary_witness(X: ZpComplex, target: dict, T: int, dim: int, factors: int):
    """Some w with d_eq(w) = target in X[[t, theta]] / t^(T+1), or None."""
    F = X.F
    basis = [(a, e, w) for a in range(T + 1) for e in (0, 1)
             for w in itertools.product(range(dim), repeat=factors)]
    rows = Indexer(basis)
    el = Eliminator(F, track=True)
    for key in basis:
        el.insert(rows.encode(vec_clean(F, d_eq(X, {key: F.one()}, T))), tag=key)
    res, comb = el.reduce(rows.encode(target))
    if res:
        return None
    return {k: F.neg(c) for k, c in comb.items()}


def check_t_additivity(rng) -> tuple:
    """t (P(x + y) - P(x) - P(y)) is a boundary, with the witness found by elimination."""
    F = GF(3)
    X = small_complex(F)
    Xp = cyclic_power(X)
    par = rng.randint(0, 1)
    cyc = [0, 2] if par == 0 else [1, 4]
    x = vec_clean(F, {k: F(rng.randint(0, 2)) for k in cyc})
    y = vec_clean(F, {k: F(rng.randint(0, 2)) for k in cyc})
    s = dict(x)
    add_into(F, s, y)
    s = vec_clean(F, s)
    diff = dict(pth_power(X, s)) if s else {}
    if x:
        add_into(F, diff, pth_power(X, x), -1)
    if y:
        add_into(F, diff, pth_power(X, y), -1)
    target = vec_clean(F, {(1, e, w): c for (a, e, w), c in diff.items()})
    if not target:
        return True, None
    w = boundary_witness(Xp, target, 1, len(SMALL_PARITIES), 3)
    ok = w is not None and vec_clean(F, d_eq(Xp, w, 1)) == target
    return ok, (x, y)


@lru_cache(maxsize=None)
def _solver(N: int):
    from .an_workbench import GradedSolver
    return GradedSolver(N, 3, 2)


def _cap_class(N: int, cochain: HochschildCochain, k: int) -> dict:
    """Coordinates {(j, a): c} of cap(cochain, R^k), summed over weight components."""
    from .an_workbench import _truncate, weight
    s = _solver(N)
    chain = vec_clean(s.F, _truncate(equivariant_cap_chain(s.A, cochain, s.gens[k], 3), s.T))
    by_weight: dict = {}
    for key, c in chain.items():
        by_weight.setdefault(weight(N, key), {})[key] = c
    out: dict = {}
    for part in by_weight.values():
        add_into(s.F, out, s.decompose(part).coeffs)
    return vec_clean(s.F, out)


def _act(N: int, cochain_key, v: dict) -> dict:
    out: dict = {}
    F = _solver(N).F
    for (k, a), c in v.items():
        for (j, b), c2 in _cap_class_cached(N, cochain_key, k).items():
            if a + b <= 2:
                add_into(F, out, {(j, a + b): F.mul(c, c2)})
    return vec_clean(F, out)


@lru_cache(maxsize=None)
def _cap_class_cached(N: int, cochain_key, k: int):
    return _cap_class(N, _cochain_from_key(N, cochain_key), k)


def _cochain_from_key(N: int, key) -> HochschildCochain:
    A = _solver(N).A
    kind = key[0]
    if kind == "unit":
        return unit_cochain(A)
    if kind == "phi":
        _, power, c = key
        return phi(A, power, UNIT).scale(A.F(c))
    if kind == "cup":
        _, a, b = key
        return cup_product(phi(A, a, UNIT), phi(A, b, UNIT), a + b + 2)
    if kind == "sum":
        _, a, x, b, y = key
        return phi(A, a, UNIT).scale(A.F(x)) + phi(A, b, UNIT).scale(A.F(y))
    raise ValueError(key)


def _random_class(rng, N: int) -> dict:
    F = GF(3)
    return vec_clean(F, {(k, 0): F(rng.randint(0, 2)) for k in range(N - 1)})


def check_c1(rng) -> tuple:
    """cap(phi^a u phi^b) = cap(phi^a) cap(phi^b); both cochains are even so the sign is +1."""
    N = rng.choice([4, 5])
    a, b = rng.randint(1, 2), rng.randint(1, 2)
    v = _random_class(rng, N)
    lhs = _act(N, ("cup", a, b), v)
    rhs = _act(N, ("phi", a, 1), _act(N, ("phi", b, 1), v))
    return lhs == rhs, (N, a, b, v)


def check_c2(rng) -> tuple:
    """t cap(x phi^a + y phi^b) = t cap(x phi^a) + t cap(y phi^b)."""
    N = rng.choice([4, 5])
    a, b = rng.sample([1, 2, 3], 2)
    x, y = rng.randint(1, 2), rng.randint(1, 2)
    v = _random_class(rng, N)
    F = GF(3)
    t = lambda w: {(j, a0 + 1): c for (j, a0), c in w.items() if a0 + 1 <= 2}
    lhs = t(_act(N, ("sum", a, x, b, y), v))
    rhs = t(_act(N, ("phi", a, x), v))
    add_into(F, rhs, t(_act(N, ("phi", b, y), v)))
    return lhs == vec_clean(F, rhs), (N, a, x, b, y, v)


def check_c3(rng) -> tuple:
    N = rng.choice([4, 5])
    v = _random_class(rng, N)
    return _act(N, ("unit",), v) == v, (N, v)


def check_c4(rng) -> tuple:
    """cap(c phi) = c^p cap(phi)."""
    N = rng.choice([4, 5])
    F = GF(3)
    a, c = rng.randint(1, 2), rng.randint(1, 2)
    v = _random_class(rng, N)
    lhs = _act(N, ("phi", a, c), v)
    rhs = {k: F.mul(F.power(c, 3), x) for k, x in _act(N, ("phi", a, 1), v).items()}
    return lhs == vec_clean(F, rhs), (N, a, c, v)


def check_lax_monoidal(rng) -> tuple:
    """The lax monoidal map intertwines d_eq on the two sides."""
    A = a_zn(GF(3), rng.choice([4, 5]))
    F = A.F
    X = pfold_zp(A, 3)
    XY = tensor_zp(X, X)
    T = 2
    u = {(rng.randint(0, T), rng.randint(0, 1), k): c for k, c in random_pfold_chain(rng, A, 3, 3, 2).items()}
    v = {(rng.randint(0, T), rng.randint(0, 1), k): c for k, c in random_pfold_chain(rng, A, 3, 3, 2).items()}
    lhs = d_eq(XY, lax_monoidal_vec(X, X, u, v, T), T)
    rhs: dict = {}
    for ku, cu in u.items():
        du = d_eq(X, {ku: cu}, T)
        add_into(F, rhs, lax_monoidal_vec(X, X, du, v, T))
        s = (X.deg(ku[2]) + ku[1]) % 2
        add_into(F, rhs, lax_monoidal_vec(X, X, {ku: cu}, d_eq(X, v, T), T), -1 if s else 1)
    return vec_clean(F, lhs) == vec_clean(F, rhs), (u, v)


PROPERTIES = {
    "b squares to zero": check_b_squared,
    "cochain d squares to zero": check_cochain_d_squared,
    "non-unital b squares to zero": check_nu_squared,
    "b + tB squares to zero": check_cyclic_squared,
    "B^2 = 0 and bB + Bb = 0": check_connes,
    "p-fold d^2 = 0, tau^n = id, tau d = d tau": check_pfold,
    "collapse maps are chain maps": check_collapse,
    "Psi is a chain map": check_psi,
    "cup Leibniz": check_cup_leibniz,
    "d_eq squares to zero": check_d_eq_squared,
    "tau homotopy": check_tau_homotopy,
    "t-additivity witness": check_t_additivity,
    "C1 multiplicativity": check_c1,
    "C2 t-additivity": check_c2,
    "C3 unitality": check_c3,
    "C4 Frobenius linearity": check_c4,
    "lax monoidal chain map": check_lax_monoidal,
}


def run_suite(instances: int = 50, seed: int = 0, names=None) -> list:
    out = []
    for name, fn in PROPERTIES.items():
        if names and name not in names:
            continue
        out.append(_run(name, instances, random.Random(f"{seed}:{name}"), fn))
    return out
