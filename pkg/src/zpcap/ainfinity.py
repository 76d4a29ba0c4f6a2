"""Minimal A-infinity algebras, their diagonal bimodule and its tensor powers,
and the dg category of bimodule pre-morphisms.

Inputs to every multilinear map are tuples of basis indices read left to
right. Signs come exclusively from :mod:`zpcap.koszul`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable

from . import koszul
from .linear import add_into
from .scalars import Field, GF


class DegeneratePotentialError(ValueError):
    pass


class UnsupportedLeadingOrderError(ValueError):
    pass


UNIT, D = 0, 1  # basis of the two-dimensional models k<1, d>


class AInfinityAlgebra:
    """Finite-dimensional Z/2-graded minimal A-infinity algebra.

    ``mu`` maps an input tuple to ``{output index: coefficient}``; absent
    tuples evaluate to zero.
    """

    def __init__(self, F: Field, names, parities, mu: dict, unit: int | None = None, name: str = ""):
        self.F = F
        self.names = list(names)
        self.parities = [p & 1 for p in parities]
        self.unit = unit
        self.name = name
        self.table = {}
        for k, v in mu.items():
            v = {o: F(c) for o, c in v.items() if not F.is_zero(F(c))}
            if v:
                self.table[tuple(k)] = v
        self.arities = sorted({len(k) for k in self.table})
        self.arity_bound = max(self.arities) if self.arities else 0
        for k, v in self.table.items():
            for o in v:
                # mu^d has degree 2 - d, so parity of output = sum of inputs + d
                if (sum(self.parities[i] for i in k) + len(k)) % 2 != self.parities[o]:
                    raise ValueError(f"mu on {k} breaks the Z/2 grading")

    @property
    def dim(self) -> int:
        return len(self.names)

    def mu(self, inputs: tuple) -> dict:
        return self.table.get(inputs, {})

    def red(self, i: int) -> int:
        return koszul.reduced(self.parities[i])

    def red_sum(self, entries) -> int:
        par = self.parities
        return sum((par[i] + 1) & 1 for i in entries) & 1

    def label(self, i: int) -> str:
        return self.names[i]


@dataclass
class Potential:
    """W = sum r_i x^i for 2 <= i <= max_order."""

    F: Field
    coeffs: dict
    max_order: int = 0

    def __post_init__(self):
        self.coeffs = {i: self.F(c) for i, c in self.coeffs.items() if not self.F.is_zero(self.F(c))}
        if any(i < 2 for i in self.coeffs):
            raise ValueError("potential coefficients start at x^2")
        self.max_order = max([self.max_order] + list(self.coeffs))

    def leading_index(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    @staticmethod
    def monomial(F: Field, N: int, c=1) -> "Potential":
        return Potential(F, {N: c}, N)


def _unit_products(F: Field, parities) -> dict:
    mu = {}
    for x, px in enumerate(parities):
        mu[(x, UNIT)] = {x: 1}
        mu[(UNIT, x)] = {x: F(koszul.sign(px))}
    return mu


def minimal_model_of_potential(w: Potential) -> AInfinityAlgebra:
    """The two-dimensional model k<1, d> with m_i(d,...,d) = r_i and strict unit 1."""
    F = w.F
    if not w.coeffs:
        raise DegeneratePotentialError("all potential coefficients vanish up to the stored order")
    parities = [0, 1]
    mu = _unit_products(F, parities)
    for i, r in w.coeffs.items():
        mu[(D,) * i] = {UNIT: r}
    N = w.leading_index()
    return AInfinityAlgebra(F, ["1", "d"], parities, mu, unit=UNIT, name=f"A_W(N={N})")


def a_zn(F: Field, N: int) -> AInfinityAlgebra:
    """The model of the A_N singularity, potential z^N."""
    if isinstance(F, GF) and N % F.p == 0:
        raise UnsupportedLeadingOrderError(f"p = {F.p} divides N = {N}")
    return minimal_model_of_potential(Potential.monomial(F, N))


def exterior_algebra(F: Field) -> AInfinityAlgebra:
    """Exterior algebra on one odd generator; only unit products."""
    return AInfinityAlgebra(F, ["1", "d"], [0, 1], _unit_products(F, [0, 1]), unit=UNIT, name="Lambda[d]")


def graded_associative(F: Field, names, parities, products: dict, unit=None, name="") -> AInfinityAlgebra:
    """Turn an associative product table a*b into mu^2(a, b) = (-1)^{|b|} a*b."""
    mu = {}
    for (a, b), out in products.items():
        mu[(a, b)] = {o: F.mul(F(c), F(koszul.sign(parities[b]))) for o, c in out.items()}
    return AInfinityAlgebra(F, names, parities, mu, unit=unit, name=name)


def check_relations(A: AInfinityAlgebra, max_arity: int) -> list:
    """Evaluate the A-infinity relations on every basis tuple of length <= max_arity.

    Returns a list of ``(tuple, nonzero value)`` violations.
    """
    if max_arity < 2:
        raise ValueError("max_arity must be at least 2")
    F = A.F
    ar = set(A.arities)
    violations = []
    for d in range(2, max_arity + 1):
        inner = [m for m in ar if m <= d and (d - m + 1) in ar]
        if not inner:
            continue
        for tup in itertools.product(range(A.dim), repeat=d):
            acc: dict = {}
            for m in inner:
                for n in range(0, d - m + 1):
                    val = A.mu(tup[n:n + m])
                    if not val:
                        continue
                    s = koszul.sign(A.red_sum(tup[n + m:]))
                    for o, c in val.items():
                        outer = A.mu(tup[:n] + (o,) + tup[n + m:])
                        if outer:
                            add_into(F, acc, outer, F.mul(F(s), c))
            if acc:
                violations.append((tup, acc))
    return violations


def _poly_mul(F, a, b, deg):
    out = [F.zero()] * (deg + 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j in range(min(len(b), deg + 1 - i)):
            y = b[j]
            if not F.is_zero(y):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _compose(F, W, S, deg):
    """W(S(y)) truncated at y^deg; W and S are coefficient lists."""
    out = [F.zero()] * (deg + 1)
    power = [F.one()] + [F.zero()] * deg
    for i, c in enumerate(W):
        if i > 0:
            power = _poly_mul(F, power, S, deg)
        if not F.is_zero(c):
            for j, v in enumerate(power):
                out[j] = F.add(out[j], F.mul(c, v))
    return out


@dataclass
class NormalizationResult:
    leading_form: Potential
    substitution: list  # coefficients of x(y), index = power of y
    steps: list = dc_field(default_factory=list)  # (power s, coefficient a) for y -> y - a y^s


def normalize_potential(w: Potential, max_order: int) -> NormalizationResult:
    """Formal change of variables x = S(y) with W(S(y)) = r_N y^N + O(y^(max_order+1))."""
    F = w.F
    N = w.leading_index()
    if N is None:
        raise DegeneratePotentialError("all potential coefficients vanish")
    if F.characteristic and N % F.characteristic == 0:
        raise UnsupportedLeadingOrderError(f"p = {F.characteristic} divides the leading order N = {N}")
    rN = w.coeffs[N]
    Wl = [F.zero()] * (max_order + 1)
    for i, c in w.coeffs.items():
        if i <= max_order:
            Wl[i] = c
    S = [F.zero(), F.one()] + [F.zero()] * (max_order - 1)
    steps = []
    cur = list(Wl)
    while True:
        j = next((i for i in range(N + 1, max_order + 1) if not F.is_zero(cur[i])), None)
        if j is None:
            break
        s = j - N + 1
        a = F.div(cur[j], F.mul(F(N), rN))
        step = [F.zero()] * (max_order + 1)
        step[1] = F.one()
        step[s] = F.sub(step[s], a)
        S = _compose(F, S, step, max_order)
        steps.append((s, a))
        cur = _compose(F, Wl, S, max_order)
    return NormalizationResult(Potential(F, {N: rN}, max_order), S, steps)


def compose_series(F, W, S, deg):
    return _compose(F, W, S, deg)


# ---------------------------------------------------------------- bimodules

class DiagonalBimodule:
    """A as a bimodule over itself with mu^{r|1|s} twisted from mu^{r+1+s}."""

    def __init__(self, A: AInfinityAlgebra):
        self.A = A
        self.F = A.F

    def deg(self, m) -> int:
        return self.A.parities[m]

    def elements(self, max_bar: int = 0):
        return list(range(self.A.dim))

    def act(self, left: tuple, m, right: tuple) -> dict:
        val = self.A.mu(left + (m,) + right)
        if not val:
            return {}
        s = koszul.diagonal_twist(self.A.red_sum(right))
        if s == 1:
            return dict(val)
        F = self.F
        return {o: F.neg(c) for o, c in val.items()}


class TensorBimodulePower:
    """N-fold tensor power of the diagonal bimodule over A.

    An element is a tuple of N blocks ``(m_a, bar_a)``; the last block always
    has an empty bar, and the inner bars are words in A[1].
    """

    def __init__(self, A: AInfinityAlgebra, N: int):
        if N < 1:
            raise ValueError("N >= 1")
        self.A = A
        self.F = A.F
        self.N = N
        self.diag = DiagonalBimodule(A)

    def deg(self, m) -> int:
        A = self.A
        return (sum(A.parities[b[0]] for b in m) + sum(A.red_sum(b[1]) for b in m)) & 1

    def elements(self, max_bar: int = 0):
        out = []
        dim = self.A.dim
        N = self.N
        for marks in itertools.product(range(dim), repeat=N):
            for lens in itertools.product(range(max_bar + 1), repeat=N - 1):
                if sum(lens) > max_bar:
                    continue
                bars = [list(itertools.product(range(dim), repeat=l)) for l in lens]
                for choice in itertools.product(*bars):
                    blocks = tuple((marks[a], tuple(choice[a]) if a < N - 1 else ()) for a in range(N))
                    out.append(blocks)
        return out

    def _flat_degree_after(self, m, a, pos_in_bar):
        """Degree of everything strictly right of bar_a[pos_in_bar - 1] within m."""
        A = self.A
        tot = A.red_sum(m[a][1][pos_in_bar:])
        for b in m[a + 1:]:
            tot += A.parities[b[0]] + A.red_sum(b[1])
        return tot & 1

    def act(self, left: tuple, m, right: tuple) -> dict:
        A, F, N = self.A, self.F, self.N
        if N == 1:
            return {((o, ()),): c for o, c in self.diag.act(left, m[0][0], right).items()}
        if left and right:
            return {}
        out: dict = {}
        arities = A.arities
        if left:
            bar0 = m[0][1]
            for r in range(0, len(bar0) + 1):
                if len(left) + 1 + r not in arities:
                    continue
                val = self.diag.act(left, m[0][0], bar0[:r])
                if not val:
                    continue
                s = koszul.sign(self._flat_degree_after(m, 0, r))
                for o, c in val.items():
                    key = ((o, bar0[r:]),) + m[1:]
                    add_into(F, out, {key: c if s == 1 else F.neg(c)})
            return out
        if right:
            a = N - 1
            barl = m[a - 1][1]
            for l in range(0, len(barl) + 1):
                if l + 1 + len(right) not in arities:
                    continue
                val = self.diag.act(barl[len(barl) - l:], m[a][0], right)
                for o, c in val.items():
                    key = m[:a - 1] + ((m[a - 1][0], barl[:len(barl) - l]), (o, ()))
                    add_into(F, out, {key: c})
            return out
        # internal differential
        for a in range(N - 1):
            bar = m[a][1]
            for d in arities:
                for s0 in range(0, len(bar) - d + 1):
                    val = A.mu(bar[s0:s0 + d])
                    if not val:
                        continue
                    sg = koszul.sign(self._flat_degree_after(m, a, s0 + d))
                    for o, c in val.items():
                        nb = bar[:s0] + (o,) + bar[s0 + d:]
                        key = m[:a] + ((m[a][0], nb),) + m[a + 1:]
                        add_into(F, out, {key: c if sg == 1 else F.neg(c)})
        for a in range(N):
            lbar = m[a - 1][1] if a >= 1 else ()
            rbar = m[a][1] if a <= N - 2 else ()
            for l in range(0, len(lbar) + 1):
                for r in range(0, len(rbar) + 1):
                    if l + 1 + r not in arities:
                        continue
                    val = self.diag.act(lbar[len(lbar) - l:], m[a][0], rbar[:r])
                    if not val:
                        continue
                    sg = koszul.sign(self._flat_degree_after(m, a, r)) if a <= N - 2 else 1
                    for o, c in val.items():
                        blocks = list(m)
                        if a >= 1:
                            blocks[a - 1] = (m[a - 1][0], lbar[:len(lbar) - l])
                        blocks[a] = (o, rbar[r:] if a <= N - 2 else ())
                        add_into(F, out, {tuple(blocks): c if sg == 1 else F.neg(c)})
        return out


def check_bimodule_relations(M, max_total: int, max_bar: int = 2) -> list:
    """Evaluate the bimodule relation on all inputs with len(left)+len(right) <= max_total."""
    A = M.A
    dim = A.dim
    bad = []
    for m in M.elements(max_bar):
        for nl in range(0, max_total + 1):
            for nr in range(0, max_total + 1 - nl):
                for left in itertools.product(range(dim), repeat=nl):
                    for right in itertools.product(range(dim), repeat=nr):
                        val = _bimodule_relation(M, left, m, right)
                        if val:
                            bad.append((left, m, right, val))
    return bad


def _bimodule_relation(M, left, m, right) -> dict:
    A, F = M.A, M.F
    acc: dict = {}
    degm = M.deg(m)
    for i in range(len(left) + 1):
        for j in range(len(right) + 1):
            inner = M.act(left[i:], m, right[:j])
            if not inner:
                continue
            s = koszul.sign(A.red_sum(right[j:]))
            for o, c in inner.items():
                add_into(F, acc, M.act(left[:i], o, right[j:]), F.mul(F(s), c))
    for d in A.arities:
        for s0 in range(0, len(left) - d + 1):
            val = A.mu(left[s0:s0 + d])
            if not val:
                continue
            s = koszul.sign(A.red_sum(left[s0 + d:]) + degm + A.red_sum(right))
            for o, c in val.items():
                nl = left[:s0] + (o,) + left[s0 + d:]
                add_into(F, acc, M.act(nl, m, right), F.mul(F(s), c))
        for s0 in range(0, len(right) - d + 1):
            val = A.mu(right[s0:s0 + d])
            if not val:
                continue
            s = koszul.sign(A.red_sum(right[s0 + d:]))
            for o, c in val.items():
                nr = right[:s0] + (o,) + right[s0 + d:]
                add_into(F, acc, M.act(left, m, nr), F.mul(F(s), c))
    return acc


# ---------------------------------------------------------- pre-morphisms

class BimodulePreMorphism:
    """Components F^{r|1|s} given by a callable (left, m, right) -> {m': c}."""

    def __init__(self, source, target, parity: int, component: Callable, name: str = ""):
        self.source = source
        self.target = target
        self.parity = parity & 1
        self._component = component
        self._cache: dict = {}
        self.name = name

    def __call__(self, left: tuple, m, right: tuple) -> dict:
        key = (left, m, right)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._component(left, m, right)
            self._cache[key] = hit
        return hit

    @staticmethod
    def identity(M) -> "BimodulePreMorphism":
        one = M.F.one()
        return BimodulePreMorphism(M, M, 0, lambda l, m, r: {m: one} if not l and not r else {}, "id")

    @staticmethod
    def from_table(M, parity: int, table: dict) -> "BimodulePreMorphism":
        return BimodulePreMorphism(M, M, parity, lambda l, m, r: dict(table.get((l, m, r), {})))

    def scale(self, c) -> "BimodulePreMorphism":
        F = self.source.F
        return BimodulePreMorphism(self.source, self.target, self.parity,
                                   lambda l, m, r: {k: F.mul(c, v) for k, v in self(l, m, r).items() if not F.is_zero(F.mul(c, v))})

    def __add__(self, other) -> "BimodulePreMorphism":
        F = self.source.F

        def comp(l, m, r):
            out = dict(self(l, m, r))
            add_into(F, out, other(l, m, r))
            return out
        return BimodulePreMorphism(self.source, self.target, self.parity, comp)

    def __sub__(self, other):
        return self + other.scale(other.source.F.neg(other.source.F.one()))


def _splits(seq):
    for i in range(len(seq) + 1):
        yield seq[:i], seq[i:]


def premorphism_compose(G: BimodulePreMorphism, Fm: BimodulePreMorphism) -> BimodulePreMorphism:
    """G after Fm, summing over every way to feed Fm's output into G."""
    A = Fm.source.A
    F = A.F

    def comp(left, m, right):
        out: dict = {}
        for lo, li in _splits(left):
            for ri, ro in _splits(right):
                inner = Fm(li, m, ri)
                if not inner:
                    continue
                s = koszul.insertion(Fm.parity, A.red_sum(ro))
                for o, c in inner.items():
                    add_into(F, out, G(lo, o, ro), F.mul(F(s), c))
        return out
    return BimodulePreMorphism(Fm.source, G.target, Fm.parity + G.parity, comp)


def premorphism_differential(Fm: BimodulePreMorphism) -> BimodulePreMorphism:
    """delta(F) = mu o F - (-1)^|F| F o (mu, mu_M, mu), times the global differential sign."""
    M, Mt = Fm.source, Fm.target
    A = M.A
    F = A.F
    gs = koszul.DIFFERENTIAL_SIGN

    def comp(left, m, right):
        out: dict = {}
        # mu_{M'} o F
        for lo, li in _splits(left):
            for ri, ro in _splits(right):
                inner = Fm(li, m, ri)
                if not inner:
                    continue
                s = koszul.insertion(Fm.parity, A.red_sum(ro))
                for o, c in inner.items():
                    add_into(F, out, Mt.act(lo, o, ro), F.mul(F(s), c))
        # F o (mu_C, mu_M, mu_D)
        tail: dict = {}
        degm = M.deg(m)
        for d in A.arities:
            for s0 in range(0, len(left) - d + 1):
                val = A.mu(left[s0:s0 + d])
                if not val:
                    continue
                s = koszul.sign(A.red_sum(left[s0 + d:]) + degm + A.red_sum(right))
                for o, c in val.items():
                    add_into(F, tail, Fm(left[:s0] + (o,) + left[s0 + d:], m, right), F.mul(F(s), c))
            for s0 in range(0, len(right) - d + 1):
                val = A.mu(right[s0:s0 + d])
                if not val:
                    continue
                s = koszul.sign(A.red_sum(right[s0 + d:]))
                for o, c in val.items():
                    add_into(F, tail, Fm(left, m, right[:s0] + (o,) + right[s0 + d:]), F.mul(F(s), c))
        for lo, li in _splits(left):
            for ri, ro in _splits(right):
                inner = M.act(li, m, ri)
                if not inner:
                    continue
                s = koszul.sign(A.red_sum(ro))
                for o, c in inner.items():
                    add_into(F, tail, Fm(lo, o, ro), F.mul(F(s), c))
        add_into(F, out, tail, F(-koszul.sign(Fm.parity)))
        if gs == -1:
            out = {k: F.neg(v) for k, v in out.items()}
        return out
    return BimodulePreMorphism(M, Mt, Fm.parity + 1, comp)


def tensor_premorphism(fs: list, power: TensorBimodulePower) -> BimodulePreMorphism:
    """The image of F_1 x ... x F_N under End(A_D)^N -> End(A_D^N).

    Slot a consumes a suffix of the bar on its left and a prefix of the bar on
    its right; slot 1 also consumes all extra left inputs and slot N all extra
    right inputs. Each F_a pays its parity times the degree of the inputs to its
    right.
    """
    A, F, N = power.A, power.F, power.N
    if len(fs) != N:
        raise ValueError("need one pre-morphism per tensor factor")
    parity = sum(f.parity for f in fs) & 1

    def comp(left, m, right):
        out: dict = {}
        # degrees to the right of each slot's window are computed on the original inputs
        bars = [b[1] for b in m[:-1]]

        def rec(a, consumed_left, acc_blocks, coef, sgn):
            # consumed_left: how many entries of bars[a-1] slot a-1 already took from the left
            if a == N:
                add_into(F, out, {tuple(acc_blocks): coef if sgn == 1 else F.neg(coef)})
                return
            if a == 0:
                lin = left
            else:
                lbar = bars[a - 1]
            right_choices = range(0, len(bars[a]) + 1) if a < N - 1 else [None]
            if a == 0:
                l_options = [len(left)]
            else:
                avail = len(lbar) - consumed_left
                l_options = range(0, avail + 1)
            for l in l_options:
                if a == 0:
                    lin = left
                else:
                    lin = lbar[len(lbar) - l:]
                for r in right_choices:
                    rin = right if r is None else bars[a][:r]
                    val = fs[a](lin, m[a][0], rin)
                    if not val:
                        continue
                    # degree of inputs right of this window
                    if r is None:
                        rdeg = 0
                    else:
                        rdeg = A.red_sum(bars[a][r:])
                        for b in m[a + 1:]:
                            rdeg += A.parities[b[0]] + A.red_sum(b[1])
                        rdeg += A.red_sum(right)
                    s2 = sgn * koszul.insertion(fs[a].parity, rdeg)
                    blocks = list(acc_blocks)
                    if a >= 1:
                        pm, pb = blocks[a - 1]
                        blocks[a - 1] = (pm, pb[:len(pb) - l])
                    for o, c in val.items():
                        nb = blocks + [(o, bars[a][r:] if r is not None else ())]
                        rec(a + 1, r if r is not None else 0, nb, F.mul(coef, c), s2)
        # slot 0 starts with the whole of bar 0 available on its right
        rec(0, 0, [], F.one(), 1)
        return out
    return BimodulePreMorphism(power, power, parity, comp)
