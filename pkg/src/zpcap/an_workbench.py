"""The A_N model end to end: generators, the equivariant cap matrix, and witnesses.

Everything here is for ``A = a_zn(F_p, N)`` with basis ``1`` (index 0) and ``d``
(index 1). Normalized chains only ever carry ``d`` in their bars, so a 3-fold
chain is determined by its three marks and three bar lengths.

The solver works one internal grading at a time. Giving ``d`` in a bar weight
-2, a marked ``d`` weight N-2, ``t`` weight 2N and ``theta`` weight N makes the
equivariant differential raise the weight by exactly N, and each weight piece
is finite once ``t`` is truncated.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import pfold
from .ainfinity import AInfinityAlgebra, DiagonalBimodule, a_zn
from .equivariant import ZpComplex, d_eq, equivariant_cap_chain, pfold_zp
from .hochschild import chain_differential, cochain_differential, phi
from .linear import Eliminator, Indexer, TruncationError, add_into, vec_clean
from .scalars import GF, ConfigurationError

UNIT, D = 0, 1


def default_length(N: int) -> int:
    return 4 * N + 8


def rank_length(N: int) -> int:
    return 3 * N + 3


def compositions3(n: int):
    for k1 in range(n + 1):
        for k2 in range(n + 1 - k1):
            yield k1, k2, n - k1 - k2


def chain3(marks, lengths) -> tuple:
    """The 3-fold chain ``m1|d^k1|m2|d^k2|m3|d^k3``."""
    return tuple((m, (D,) * k) for m, k in zip(marks, lengths))


def _check_config(N: int, p: int):
    if p < 3 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ConfigurationError(f"p = {p} is not an odd prime")
    if N < 2:
        raise ConfigurationError("N must be at least 2")
    if N % p == 0:
        raise ConfigurationError(f"p = {p} divides N = {N}")


# ------------------------------------------------------------- generators

@dataclass
class GeneratorSet:
    N: int
    p: int
    A: AInfinityAlgebra
    hochschild: list
    cocycles: list
    odd_cochains: list
    three_fold: list
    equivariant: list
    checks: dict = field(default_factory=dict)

    @property
    def F(self):
        return self.A.F


def hochschild_generator(k: int) -> tuple:
    return (D, (D,) * k)


def three_fold_generator(F, k: int) -> dict:
    """Sum over k1+k2+k3 = k of ``1|d^k1|1|d^k2|d|d^k3``."""
    v: dict = {}
    for ks in compositions3(k):
        add_into(F, v, {chain3((UNIT, UNIT, D), ks): F.one()})
    return v


def theta_correction(F, N: int, k: int) -> dict:
    """(1/N) sum over k+N-1 of ``d|..|1|..|d|..``; its boundary is (tau - 1) of the 3-fold generator."""
    inv = F.inv(F(N))
    v: dict = {}
    for ks in compositions3(k + N - 1):
        add_into(F, v, {chain3((D, UNIT, D), ks): inv})
    return v


def t_correction(F, N: int, k: int) -> dict:
    """(1/N^2) sum over k+2N-2 of ``d|..|d|..|d|..``, a tau-invariant chain."""
    inv = F.inv(F(N))
    c = F.mul(inv, inv)
    v: dict = {}
    for ks in compositions3(k + 2 * N - 2):
        add_into(F, v, {chain3((D, D, D), ks): c})
    return v


def equivariant_generator(F, N: int, k: int) -> dict:
    v = {(0, 0, key): c for key, c in three_fold_generator(F, k).items()}
    v.update({(0, 1, key): c for key, c in theta_correction(F, N, k).items()})
    v.update({(1, 0, key): c for key, c in t_correction(F, N, k).items()})
    return v


def build_generators(N: int, p: int = 3, L: int | None = None, check: bool = True) -> GeneratorSet:
    """All four generator families for the A_N model, with their cycle conditions checked."""
    _check_config(N, p)
    L = default_length(N) if L is None else L
    if L < 3 * N + 3:
        raise TruncationError(f"length bound {L} is below 3N+3 = {3 * N + 3}", 3 * N + 3)
    F = GF(p)
    A = a_zn(F, N)
    r = range(N - 1)
    gs = GeneratorSet(
        N, p, A,
        hochschild=[hochschild_generator(k) for k in r],
        cocycles=[phi(A, k, UNIT) for k in r],
        odd_cochains=[phi(A, k, D) for k in r],
        three_fold=[three_fold_generator(F, k) for k in r],
        equivariant=[equivariant_generator(F, N, k) for k in r],
    )
    if check:
        gs.checks = verify_generators(gs, L)
        bad = [name for name, ok in gs.checks.items() if not ok]
        if bad:
            raise ArithmeticError(f"generator checks failed: {bad}")
    return gs


def verify_generators(gs: GeneratorSet, L: int) -> dict:
    A, F, N = gs.A, gs.F, gs.N
    X = pfold_zp(A, 3) if gs.p == 3 else None
    diag = DiagonalBimodule(A)
    out = {}
    out["hochschild cycles"] = all(not chain_differential(diag, g) for g in gs.hochschild)
    out["cochain cocycles"] = all(cochain_differential(c, L).is_zero() for c in gs.cocycles)
    # d(phi^k_d) = N phi^{k+N-1}_1
    out["odd cochain differential"] = all(
        cochain_differential(c, L) == phi(A, k + N - 1, UNIT).scale(F(N)) if k + N - 1 <= L
        else True for k, c in enumerate(gs.odd_cochains))
    out["3-fold cycles"] = all(not pfold.apply(F, lambda k: pfold.differential(A, k), v) for v in gs.three_fold)
    collapse_ok = True
    for k, v in enumerate(gs.three_fold):
        img = vec_clean(F, {key: c for key, c in pfold.full_collapse(A, v).items()
                            if UNIT not in key[0][1]})
        collapse_ok &= img == {(hochschild_generator(k),): F.one()}
    out["collapse recovers hochschild generators"] = collapse_ok
    if X is not None:
        out["equivariant cycles"] = all(not d_eq(X, v, 2) for v in gs.equivariant)
    return out


# ---------------------------------------------------------- graded pieces

def weight(N: int, key) -> int:
    a, e, blocks = key
    marked = sum(1 for m, _ in blocks if m == D)
    return (N - 2) * marked - 2 * pfold.length(blocks) + 2 * N * a + N * e


def generator_weight(N: int, j: int, a: int = 0) -> int:
    return N - 2 - 2 * j + 2 * N * a


def graded_piece(N: int, g: int, T: int, L: int, parity: int | None = None) -> list:
    """Normalized equivariant 3-fold keys of weight g with t-order <= T."""
    keys = []
    for a in range(T + 1):
        for e in (0, 1):
            for marks in itertools.product((UNIT, D), repeat=3):
                marked = sum(marks)
                if parity is not None and (marked + e) % 2 != parity % 2:
                    continue
                twice = (N - 2) * marked + 2 * N * a + N * e - g
                if twice < 0 or twice % 2:
                    continue
                n = twice // 2
                if n > L:
                    raise TruncationError(
                        f"weight {g} needs bar length {n} > L = {L} (t^{a}, theta^{e})", n)
                for ks in compositions3(n):
                    keys.append((a, e, chain3(marks, ks)))
    return keys


def _row_order(key):
    # long leading bars first keeps the boundary columns close to echelon form
    a, e, blocks = key
    return tuple(-len(b) for _, b in blocks), a, e, tuple(m for m, _ in blocks)


def _truncate(v: dict, T: int) -> dict:
    return {k: c for k, c in v.items() if k[0] <= T}


@dataclass
class Decomposition:
    """``target = sum coeffs[(j, a)] t^a R^j + d_eq(witness)`` exactly."""

    coeffs: dict
    witness: dict


class GradedSolver:
    """Expresses odd equivariant cycles in the generator basis, modulo boundaries."""

    def __init__(self, N: int, p: int = 3, T: int = 2, L: int | None = None):
        _check_config(N, p)
        if p != 3:
            raise ConfigurationError("only p = 3 has explicit equivariant generators")
        self.N, self.p, self.T = N, p, T
        self.L = default_length(N) if L is None else L
        self.F = GF(p)
        self.A = a_zn(self.F, N)
        self.X: ZpComplex = pfold_zp(self.A, p)
        self.gens = [equivariant_generator(self.F, N, j) for j in range(N - 1)]

    def decompose(self, target: dict, with_witness: bool = False) -> Decomposition:
        F, N, T = self.F, self.N, self.T
        target = vec_clean(F, _truncate(target, T))
        if not target:
            return Decomposition({}, {})
        gs = {weight(N, k) for k in target}
        if len(gs) != 1:
            raise ValueError(f"target is not homogeneous: weights {sorted(gs)}")
        g = gs.pop()
        par = (sum(m for m, _ in next(iter(target))[2]) + next(iter(target))[1]) % 2
        rows = Indexer(sorted(graded_piece(N, g, T, self.L, par), key=_row_order))
        el = Eliminator(F, track=True)
        for key in graded_piece(N, g - N, T, self.L, 1 - par):
            col = d_eq(self.X, {key: F.one()}, T)
            if col:
                el.insert(rows.encode(col), tag=("b", key) if with_witness else None)
        for j, gen in enumerate(self.gens):
            for a in range(T + 1):
                if generator_weight(N, j, a) != g:
                    continue
                col = {(a + a0, e, x): c for (a0, e, x), c in gen.items() if a + a0 <= T}
                if not el.insert(rows.encode(col), tag=("R", j, a)):
                    raise ArithmeticError(f"generator {j} t^{a} is dependent modulo boundaries")
        res, comb = el.reduce(rows.encode(target))
        if res:
            raise ArithmeticError(f"target of weight {g} is not in the span of the generators")
        coeffs, witness = {}, {}
        for tag, c in comb.items():
            c = F.neg(c)
            if F.is_zero(c):
                continue
            if tag[0] == "R":
                coeffs[(tag[1], tag[2])] = c
            else:
                witness[tag[1]] = c
        return Decomposition(coeffs, witness)

    def cap_chain(self, k: int, power: int = 1) -> dict:
        return _truncate(equivariant_cap_chain(self.A, phi(self.A, power, UNIT), self.gens[k], self.p), self.T)

    def prediction(self, coeffs: dict) -> dict:
        out: dict = {}
        for (j, a), c in coeffs.items():
            add_into(self.F, out, {(a + a0, e, x): v for (a0, e, x), v in self.gens[j].items()
                                   if a + a0 <= self.T}, c)
        return out


@dataclass
class CapMatrix:
    N: int
    p: int
    T: int
    L: int
    power: int
    entries: list  # entries[row j][column k] = coefficient list in t, length T+1
    decompositions: list

    def as_polynomials(self) -> list:
        return [[list(e) for e in row] for row in self.entries]


def cap_action_matrix(N: int, p: int = 3, T: int = 2, L: int | None = None, power: int = 1) -> CapMatrix:
    """Column k is the coordinate vector of cap(phi^power_1, R^k) in the equivariant generators."""
    solver = GradedSolver(N, p, T, L)
    F = solver.F
    n = N - 1
    entries = [[[F.zero()] * (T + 1) for _ in range(n)] for _ in range(n)]
    decs = []
    for k in range(n):
        dec = solver.decompose(solver.cap_chain(k, power))
        for (j, a), c in dec.coeffs.items():
            entries[j][k][a] = c
        decs.append(dec)
    return CapMatrix(N, p, T, solver.L, power, entries, decs)


def expected_pattern(N: int, T: int = 2) -> list:
    """The predicted matrix: R^k -> R^(k-3), R^0 -> -(t/N) R^(N-3), R^1 -> (t/N) R^(N-2), R^2 -> 0."""
    F = GF(3)
    n = N - 1
    M = [[[F.zero()] * (T + 1) for _ in range(n)] for _ in range(n)]
    for k in range(3, n):
        M[k - 3][k][0] = F.one()
    if T >= 1:
        inv = F.inv(F(N))
        if N - 3 >= 0:
            M[N - 3][0][1] = F.neg(inv)
        if n > 1:
            M[N - 2][1][1] = inv
    return M


def matrix_product(F, X: list, Y: list, T: int) -> list:
    """Product of matrices whose entries are truncated polynomials in t."""
    n, m, q = len(X), len(Y), len(Y[0])
    out = [[[F.zero()] * (T + 1) for _ in range(q)] for _ in range(n)]
    for i in range(n):
        for l in range(m):
            for j in range(q):
                for a, x in enumerate(X[i][l]):
                    if F.is_zero(x):
                        continue
                    for b, y in enumerate(Y[l][j]):
                        if a + b <= T and not F.is_zero(y):
                            out[i][j][a + b] = F.add(out[i][j][a + b], F.mul(x, y))
    return out


def homotopy_witness(N: int, k: int, T: int = 2, L: int | None = None) -> dict:
    """A chain w with d_eq(w) = cap(phi^1_1, R^k) - (solver's prediction)."""
    if k not in (0, 1, 2):
        raise ValueError("witness cases are k = 0, 1, 2")
    solver = GradedSolver(N, 3, T, L)
    return solver.decompose(solver.cap_chain(k), with_witness=True).witness


def check_witness(N: int, k: int, witness: dict, coeffs: dict, T: int = 2) -> bool:
    solver = GradedSolver(N, 3, T, default_length(N))
    lhs = solver.cap_chain(k)
    add_into(solver.F, lhs, solver.prediction(coeffs), -1)
    return vec_clean(solver.F, lhs) == vec_clean(solver.F, d_eq(solver.X, witness, T))


# ----------------------------------------------------- printed homotopies

def _weighted_sum(F, n: int, marks, coef, a: int = 0, e: int = 0, scale=1) -> dict:
    v: dict = {}
    for ks in compositions3(n):
        c = F.mul(F(coef(*ks)), F(scale))
        if not F.is_zero(c):
            add_into(F, v, {(a, e, chain3(marks, ks)): c})
    return v


def printed_homotopy(N: int) -> dict:
    """Q1 theta + (Q2 + Q3) t - Q4 t theta for the k = 0 case, N = 1 mod 3."""
    F = GF(3)
    w: dict = {}
    add_into(F, w, _weighted_sum(F, N - 3, (UNIT, UNIT, D), lambda k1, k2, k3: -k3, e=1))
    add_into(F, w, _weighted_sum(F, 2 * N - 4, (D, UNIT, D), lambda k1, k2, k3: -k1, a=1))
    add_into(F, w, _weighted_sum(F, 2 * N - 4, (UNIT, D, D), lambda k1, k2, k3: -k2, a=1))
    add_into(F, w, _weighted_sum(F, 3 * N - 5, (D, D, D), lambda k1, k2, k3: k2, a=1, e=1, scale=-1))
    return w


def check_printed_homotopy(N: int, T: int = 2) -> bool:
    """cap(phi^1_1, R^0) + R^(N-3) t = d_eq(printed homotopy), exactly."""
    if N % 3 != 1:
        raise ConfigurationError("the printed homotopy is for N = 1 mod 3")
    solver = GradedSolver(N, 3, T, default_length(N))
    F = solver.F
    lhs = solver.cap_chain(0)
    add_into(F, lhs, solver.prediction({(N - 3, 1): F.one()}))
    return vec_clean(F, lhs) == vec_clean(F, d_eq(solver.X, printed_homotopy(N), T))


def check_printed_tau_identities(N: int) -> dict:
    """(tau - 1) of the 3-fold generator and the norm of the theta correction are the printed boundaries."""
    F = GF(3)
    A = a_zn(F, N)
    X = pfold_zp(A, 3)
    ok_tau, ok_norm, ok_inv = True, True, True
    for k in range(N - 1):
        R = three_fold_generator(F, k)
        lhs = X.apply(X.tau, R)
        add_into(F, lhs, R, -1)
        rhs = X.apply(X.d, theta_correction(F, N, k))
        ok_tau &= vec_clean(F, lhs) == vec_clean(F, rhs)
        Z = t_correction(F, N, k)
        lhs = X.norm(theta_correction(F, N, k))
        rhs = X.apply(X.d, {key: F.neg(c) for key, c in Z.items()})
        ok_norm &= vec_clean(F, lhs) == vec_clean(F, rhs)
        ok_inv &= vec_clean(F, X.apply(X.tau, Z)) == Z
    return {"tau - 1 identity": ok_tau, "norm identity": ok_norm, "t correction invariant": ok_inv}


# --------------------------------------------------------- homology ranks

@dataclass
class GradedRanks:
    """Homology ranks per internal weight, exact inside ``band`` (inclusive)."""

    by_weight: dict
    band: tuple

    def total(self, parity: int) -> int:
        return sum(r[parity % 2] for r in self.by_weight.values())


def _graded_ranks(F, N: int, piece, parity, diff, start: int, step: int,
                  stop: int | None = None, row_key=repr) -> GradedRanks:
    """Walk weights from ``start`` in direction ``step`` until a piece needs more length
    or the weight passes ``stop``.

    The differential raises the weight by N, so the homology at g only involves
    the pieces at g - N, g and g + N.
    """
    rank_cache: dict = {}

    def split(g):
        keys = piece(g)
        return [k for k in keys if parity(k) == 0], [k for k in keys if parity(k) == 1]

    def drank(g, q):
        if (g, q) not in rank_cache:
            src = split(g)[q]
            cod = Indexer(sorted({r for k in src for r in diff(k)}, key=row_key))
            el = Eliminator(F, track=False)
            for k in src:
                col = diff(k)
                if col:
                    el.insert(cod.encode(col))
            rank_cache[(g, q)] = el.rank
        return rank_cache[(g, q)]

    out: dict = {}
    g = start
    last = None
    while stop is None or (g - stop) * step <= 0:
        try:
            split(g - N), split(g + N)
            sizes = [len(x) for x in split(g)]
            ranks = tuple(sizes[q] - drank(g, q) - drank(g - N, 1 - q) for q in (0, 1))
        except TruncationError:
            break
        if any(ranks):
            out[g] = ranks
        last = g
        g += step
    if last is None:
        raise TruncationError("length bound leaves no stable weights", 0)
    band = (min(start, last), max(start, last))
    return GradedRanks(out, band)


def hochschild_ranks(N: int, p: int = 3, L: int | None = None) -> GradedRanks:
    """Normalized Hochschild homology of A_N by weight, chains of bar length <= L."""
    _check_config(N, p)
    L = rank_length(N) if L is None else L
    F = GF(p)
    A = a_zn(F, N)
    diag = DiagonalBimodule(A)

    def piece(g):
        keys = []
        for m in (UNIT, D):
            twice = (N - 2) * m - g
            if twice >= 0 and twice % 2 == 0:
                if twice // 2 > L:
                    raise TruncationError(f"weight {g} needs length {twice // 2}", twice // 2)
                keys.append((m, (D,) * (twice // 2)))
        return keys
    return _graded_ranks(F, N, piece, lambda k: (k[0] + A.red_sum(k[1])) & 1,
                         lambda k: chain_differential(diag, k), N - 2, -1)


def cohomology_ranks(N: int, p: int = 3, L: int | None = None) -> GradedRanks:
    """Normalized Hochschild cohomology of A_N by weight, cochains on inputs of length <= L."""
    _check_config(N, p)
    L = rank_length(N) if L is None else L
    F = GF(p)
    A = a_zn(F, N)

    def piece(g):
        keys = []
        for o in (UNIT, D):
            # output d weighs N-2, each input d weighs 2
            twice = g - (N - 2) * o
            if twice >= 0 and twice % 2 == 0:
                k = twice // 2
                if k + N - 1 > L:
                    raise TruncationError(f"weight {g} needs inputs of length {k + N - 1}", k + N - 1)
                keys.append(((D,) * k, o))
        return keys

    def diff(key):
        ins, o = key
        return {(i2, o2): c for (i2, o2), c in
                _cochain_vec(cochain_differential(phi(A, len(ins), o), len(ins) + N)).items()}
    return _graded_ranks(F, N, piece, lambda k: k[1], diff, 0, 1)


def _cochain_vec(c) -> dict:
    return {(ins, o): v for ins, vals in c.table.items() for o, v in vals.items()}


def three_fold_ranks(N: int, p: int = 3, L: int | None = None) -> GradedRanks:
    """Normalized 3-fold Hochschild homology of A_N by weight."""
    _check_config(N, p)
    L = rank_length(N) if L is None else L
    F = GF(p)
    A = a_zn(F, N)

    def piece(g):
        return [k[2] for k in graded_piece(N, g, 0, L) if k[1] == 0]
    return _graded_ranks(F, N, piece, lambda k: pfold.degree(A, k),
                         lambda k: pfold.differential(A, k), 3 * (N - 2), -1)


def equivariant_ranks(N: int, T: int = 2, L: int | None = None, lowest: int | None = None) -> GradedRanks:
    """Homology of the t^(T+1)-truncated equivariant 3-fold complex by weight.

    Free homology of rank N-1 over power series in t and theta shows up as
    N-1 classes in each parity for every power t^a with a <= T. The walk stops
    below weight ``lowest`` (default: two below the lowest generator).
    """
    solver = GradedSolver(N, 3, T, L)
    lowest = generator_weight(N, N - 2) - 2 if lowest is None else lowest
    A = solver.A

    def parity(key):
        return (pfold.degree(A, key[2]) + key[1]) & 1
    return _graded_ranks(solver.F, N, lambda g: graded_piece(N, g, T, solver.L), parity,
                         lambda k: d_eq(solver.X, {k: solver.F.one()}, T),
                         3 * (N - 2) + 2 * N * T + N, -1, stop=lowest, row_key=_row_order)
