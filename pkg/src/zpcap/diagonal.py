"""The periodic free Z/p resolution W, a diagonal approximation W -> W (x) W, and
the chains C_i comparing it with product cells.

``W`` has one free generator D_i in each degree i >= 0 with
``dD_{2k} = (1 + tau + ... + tau^(p-1)) D_{2k-1}`` and ``dD_{2k+1} = (tau - 1) D_{2k}``.
A chain of W is a dict ``{(i, g): c}`` for ``c tau^g D_i``; a chain of W (x) W
is a dict ``{(i1, g1, i2, g2): c}`` for ``c tau^g1 D_i1 x tau^g2 D_i2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import koszul
from .linear import Eliminator, Indexer, NotACycleError, add_into, vec_clean
from .scalars import GF, check_odd_prime


class DiagonalDefect(ArithmeticError):
    """A right-hand side that must be a cycle is not; the chain is attached."""

    def __init__(self, msg: str, residual: dict):
        super().__init__(msg)
        self.residual = residual


@dataclass(frozen=True)
class Resolution:
    p: int

    def __post_init__(self):
        check_odd_prime(self.p)

    @property
    def F(self):
        return GF(self.p)

    # ---------------------------------------------------------------- W
    def gen(self, i: int, g: int = 0, c=1) -> dict:
        return {(i, g % self.p): self.F(c)}

    def tau(self, x: dict, times: int = 1) -> dict:
        return {(i, (g + times) % self.p): c for (i, g), c in x.items()}

    def norm(self, x: dict) -> dict:
        out: dict = {}
        for k in range(self.p):
            add_into(self.F, out, self.tau(x, k))
        return out

    def tau_minus_one(self, x: dict) -> dict:
        out = self.tau(x)
        add_into(self.F, out, x, -1)
        return out

    def boundary(self, x: dict) -> dict:
        out: dict = {}
        for (i, g), c in x.items():
            if i == 0:
                continue
            low = {(i - 1, g): c}
            add_into(self.F, out, self.norm(low) if i % 2 == 0 else self.tau_minus_one(low))
        return out

    # ----------------------------------------------------------- W (x) W
    def cross(self, x: dict, y: dict) -> dict:
        F = self.F
        out: dict = {}
        for (i1, g1), c1 in x.items():
            for (i2, g2), c2 in y.items():
                add_into(F, out, {(i1, g1, i2, g2): F.mul(c1, c2)})
        return out

    def tensor_boundary(self, z: dict) -> dict:
        """d(a x b) = da x b + (-1)^|a| a x db."""
        F = self.F
        out: dict = {}
        for (i1, g1, i2, g2), c in z.items():
            add_into(F, out, self.cross(self.boundary({(i1, g1): c}), {(i2, g2): F.one()}))
            add_into(F, out, self.cross({(i1, g1): c}, self.boundary({(i2, g2): F.one()})), koszul.sign(i1))
        return out

    def diag_tau(self, z: dict, times: int = 1) -> dict:
        return {(i1, (g1 + times) % self.p, i2, (g2 + times) % self.p): c for (i1, g1, i2, g2), c in z.items()}

    def diag_norm(self, z: dict) -> dict:
        out: dict = {}
        for k in range(self.p):
            add_into(self.F, out, self.diag_tau(z, k))
        return out

    def diag_tau_minus_one(self, z: dict) -> dict:
        out = self.diag_tau(z)
        add_into(self.F, out, z, -1)
        return out

    def second_tau(self, z: dict, times: int = 1) -> dict:
        """1 x tau."""
        return {(i1, g1, i2, (g2 + times) % self.p): c for (i1, g1, i2, g2), c in z.items()}

    def augmentation(self, z: dict):
        F = self.F
        out = F.zero()
        for (i1, _, i2, _), c in z.items():
            if i1 == 0 and i2 == 0:
                out = F.add(out, c)
        return out

    def total_degree(self, z: dict) -> int | None:
        degs = {i1 + i2 for (i1, _, i2, _) in z}
        if len(degs) > 1:
            raise ValueError("chain is not homogeneous")
        return degs.pop() if degs else None

    def product_keys(self, n: int) -> list:
        p = self.p
        return [(i1, g1, n - i1, g2) for i1 in range(n + 1) for g1 in range(p) for g2 in range(p)]


def contracting_homotopy(W: Resolution, b: dict, degree: int | None = None) -> dict:
    """Some x with dx = b in W (x) W, which is acyclic with H_0 spanned by D_0 x D_0.

    Raises ``NotACycleError`` for a non-cycle or a degree-0 chain of nonzero augmentation.
    """
    F = W.F
    b = vec_clean(F, b)
    if not b:
        return {}
    n = W.total_degree(b) if degree is None else degree
    if n == 0:
        if not F.is_zero(W.augmentation(b)):
            raise NotACycleError("degree-0 chain with nonzero augmentation is not a boundary")
    elif vec_clean(F, W.tensor_boundary(b)):
        raise NotACycleError("input is not a cycle")
    rows = Indexer(W.product_keys(n))
    el = Eliminator(F, track=True)
    for key in W.product_keys(n + 1):
        el.insert(rows.encode(W.tensor_boundary({key: F.one()})), tag=key)
    res, comb = el.reduce(rows.encode(b))
    if res:
        raise NotACycleError("no preimage found; the input is not a boundary")
    return vec_clean(F, {k: F.neg(c) for k, c in comb.items()})


@dataclass
class DiagonalApproximation:
    """delta on the generators; extended to W by delta(tau^g x) = (tau x tau)^g delta(x)."""

    W: Resolution
    values: list = field(default_factory=list)  # values[i] = delta(D_i)

    @property
    def max_degree(self) -> int:
        return len(self.values) - 1

    def __call__(self, x: dict) -> dict:
        F = self.W.F
        out: dict = {}
        for (i, g), c in x.items():
            if i > self.max_degree:
                raise ValueError(f"delta is only built through degree {self.max_degree}")
            add_into(F, out, self.W.diag_tau(self.values[i], g), c)
        return out


def diagonal_approximation(p: int, max_degree: int) -> DiagonalApproximation:
    """delta(D_0) = D_0 x D_0 and delta(D_i) a solver-chosen preimage of delta(dD_i)."""
    W = Resolution(p)
    delta = DiagonalApproximation(W, [W.cross(W.gen(0), W.gen(0))])
    for i in range(1, max_degree + 1):
        target = delta(W.boundary(W.gen(i)))
        delta.values.append(contracting_homotopy(W, target, i - 1))
    return delta


def check_diagonal(delta: DiagonalApproximation) -> dict:
    W, F = delta.W, delta.W.F
    n = delta.max_degree
    chain = all(not vec_clean(F, _sub(F, W.tensor_boundary(delta(W.gen(i))), delta(W.boundary(W.gen(i)))))
                for i in range(n + 1))
    equiv = all(delta(W.gen(i, g)) == W.diag_tau(delta(W.gen(i)), g)
                for i in range(n + 1) for g in range(W.p))
    return {"chain map": chain, "equivariant": equiv,
            "lifts the identity in degree 0": delta.values[0] == W.cross(W.gen(0), W.gen(0))}


def _sub(F, u: dict, v: dict) -> dict:
    out = dict(u)
    add_into(F, out, v, -1)
    return vec_clean(F, out)


def coinvariant_image(delta: DiagonalApproximation, i: int) -> dict:
    """delta(D_i) in the coinvariants of Z/p x Z/p, where the differential vanishes: {(i1, i2): c}."""
    F = delta.W.F
    out: dict = {}
    for (i1, _, i2, _), c in delta.values[i].items():
        add_into(F, out, {(i1, i2): c})
    return vec_clean(F, out)


def expected_coinvariant_pattern(i: int) -> dict:
    if i % 2:
        return {(a, i - a): 1 for a in range(i + 1)}
    return {(a, i - a): 1 for a in range(0, i + 1, 2)}


def check_coinvariant_pattern(delta: DiagonalApproximation) -> dict:
    return {i: coinvariant_image(delta, i) == expected_coinvariant_pattern(i) for i in range(delta.max_degree + 1)}


# ----------------------------------------------------- the chains C_i

def recursion_rhs(delta: DiagonalApproximation, i: int, Ci: dict) -> dict:
    """The chain whose boundary C_{i+1} must be, given C_i."""
    W = delta.W
    F, p = W.F, W.p
    out = dict(delta(W.gen(i)))
    if i % 2:
        for i1 in range(i + 1):
            i2 = i - i1
            add_into(F, out, W.cross(W.gen(i1), W.gen(i2)), -1)
            if i1 % 2:
                add_into(F, out, W.cross(W.gen(i1), W.tau_minus_one(W.gen(i2))), -1)
        add_into(F, out, W.diag_tau_minus_one(Ci), -1)
    else:
        for i1 in range(i + 1):
            i2 = i - i1
            if i1 % 2 == 0:
                add_into(F, out, W.cross(W.gen(i1), W.gen(i2)), -1)
            else:
                for k in range(p):
                    for j in range(k + 1, p):
                        add_into(F, out, W.cross(W.gen(i1, k), W.gen(i2, j)), -1)
        add_into(F, out, W.diag_norm(Ci), -1)
    return vec_clean(F, out)


@dataclass
class DiagonalChains:
    delta: DiagonalApproximation
    chains: list  # chains[i] = C_i for i = 0..max_i
    cycle_checks: dict  # i -> right-hand side for C_{i+1} is a cycle


def solve_diagonal_chains(p: int, max_i: int, delta: DiagonalApproximation | None = None) -> DiagonalChains:
    """C_0 = 0 and C_{i+1} a preimage of ``recursion_rhs(i, C_i)`` for i < max_i."""
    W = Resolution(p)
    if delta is None:
        delta = diagonal_approximation(p, max(max_i, 1))
    F = W.F
    chains = [{}]
    checks = {}
    for i in range(max_i):
        rhs = recursion_rhs(delta, i, chains[i])
        bd = vec_clean(F, W.tensor_boundary(rhs))
        checks[i] = not bd
        if bd:
            raise DiagonalDefect(f"right-hand side at i = {i} is not a cycle", bd)
        chains.append(contracting_homotopy(W, rhs, i))
    return DiagonalChains(delta, chains, checks)


def verify_diagonal_chains(dc: DiagonalChains) -> dict:
    """Re-evaluate every recursion identity from scratch."""
    W, F = dc.delta.W, dc.delta.W.F
    out = {}
    for i in range(len(dc.chains) - 1):
        lhs = vec_clean(F, W.tensor_boundary(dc.chains[i + 1]))
        out[i] = lhs == recursion_rhs(dc.delta, i, dc.chains[i])
    return out


def check_helper_identities(p: int, max_degree: int) -> dict:
    """The two reshuffling identities for sums over 0 <= k < j <= p-1, on all pairs of generators."""
    W = Resolution(p)
    F = W.F
    ok_left = ok_right = True
    for i1 in range(max_degree + 1):
        for i2 in range(max_degree + 1):
            a, b = W.gen(i1), W.gen(i2)
            left: dict = {}
            right: dict = {}
            for k in range(p):
                for j in range(k + 1, p):
                    add_into(F, left, W.cross(W.tau(W.tau_minus_one(a), k), W.tau(b, j)))
                    add_into(F, right, W.cross(W.tau(a, k), W.tau(W.tau_minus_one(b), j)))
            want_left = _sub(F, W.diag_norm(W.cross(a, b)), W.cross(a, W.norm(b)))
            want_right = _sub(F, W.cross(W.norm(a), b), W.second_tau(W.diag_norm(W.cross(a, b))))
            ok_left &= vec_clean(F, left) == want_left
            ok_right &= vec_clean(F, right) == want_right
    return {"left shuffle": ok_left, "right shuffle": ok_right}


def check_squares(p: int, max_degree: int = 8) -> dict:
    W = Resolution(p)
    F = W.F
    w_ok = all(not vec_clean(F, W.boundary(W.boundary(W.gen(i, g)))) for i in range(max_degree + 1) for g in range(p))
    ww_ok = all(not vec_clean(F, W.tensor_boundary(W.tensor_boundary({k: F.one()})))
                for n in range(max_degree + 1) for k in W.product_keys(n))
    return {"W": w_ok, "W x W": ww_ok}
