"""Hochschild chains and cochains of a minimal A-infinity algebra.

A chain with coefficients in a bimodule ``M`` is a key ``(m, bar)``: ``m`` an
element of ``M`` and ``bar`` a tuple of algebra basis indices. Cochains are
tables ``{inputs: {output: coefficient}}``.

The non-unital complex stores words with the bimodule-type entry first; the
two summands are tagged ``0`` and ``1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import koszul
from .ainfinity import AInfinityAlgebra, BimodulePreMorphism, DiagonalBimodule
from .linear import BasisLabel, FiniteComplex, add_into


def _negate(F, v: dict) -> dict:
    return {k: F.neg(a) for k, a in v.items()}


def _global(F, v: dict) -> dict:
    return _negate(F, v) if koszul.DIFFERENTIAL_SIGN == -1 else v


def has_unit(A: AInfinityAlgebra, bar) -> bool:
    return A.unit is not None and A.unit in bar


# ------------------------------------------------------------------ chains

def chain_degree(M, key) -> int:
    m, bar = key
    return (M.deg(m) + M.A.red_sum(bar)) & 1


def chain_differential(M, key, normalized: bool = True) -> dict:
    """b on ``(m, bar)`` with coefficients in the bimodule ``M``."""
    A, F = M.A, M.F
    m, bar = key
    k = len(bar)
    out: dict = {}
    for d in A.arities:
        for s0 in range(0, k - d + 1):
            val = A.mu(bar[s0:s0 + d])
            if not val:
                continue
            sg = koszul.insertion(1, A.red_sum(bar[s0 + d:]))
            for o, c in val.items():
                add_into(F, out, {(m, bar[:s0] + (o,) + bar[s0 + d:]): c if sg == 1 else F.neg(c)})
    degm = M.deg(m)
    for j in range(0, k + 1):
        tail = bar[k - j:]
        rest = bar[:k - j]
        rot = koszul.rotation(A.red_sum(tail), degm + A.red_sum(rest))
        for i in range(0, k - j + 1):
            val = M.act(tail, m, rest[:i])
            if not val:
                continue
            sg = rot * koszul.insertion(1, A.red_sum(rest[i:]))
            for o, c in val.items():
                add_into(F, out, {(o, rest[i:]): c if sg == 1 else F.neg(c)})
    out = _global(F, out)
    if normalized and A.unit is not None:
        out = {key2: c for key2, c in out.items() if not _chain_has_unit(A, key2)}
    return out


def _chain_has_unit(A, key) -> bool:
    m, bar = key
    if A.unit in bar:
        return True
    if isinstance(m, tuple):
        return any(A.unit in blk[1] for blk in m)
    return False


def apply_linear(F, fn, v: dict) -> dict:
    out: dict = {}
    for k, a in v.items():
        add_into(F, out, fn(k), a)
    return out


def chain_keys(A: AInfinityAlgebra, max_len: int, normalized: bool = True):
    letters = [i for i in range(A.dim) if not (normalized and i == A.unit)]
    for m in range(A.dim):
        for k in range(max_len + 1):
            for bar in itertools.product(letters, repeat=k):
                yield (m, bar)


def hochschild_chain_complex(A: AInfinityAlgebra, L: int, normalized: bool = True) -> FiniteComplex:
    """Chains of length <= L with coefficients in the diagonal bimodule; weight = length."""
    M = DiagonalBimodule(A)
    labels = [BasisLabel(k, chain_degree(M, k), len(k[1])) for k in chain_keys(A, L, normalized)]
    return FiniteComplex(A.F, labels, lambda k: chain_differential(M, k, normalized))


# ---------------------------------------------------------------- cochains

@dataclass
class HochschildCochain:
    A: AInfinityAlgebra
    parity: int
    table: dict

    def __post_init__(self):
        F = self.A.F
        self.parity &= 1
        clean = {}
        for ins, val in self.table.items():
            val = {o: F(c) for o, c in val.items() if not F.is_zero(F(c))}
            if not val:
                continue
            for o in val:
                if (self.A.parities[o] - self.A.red_sum(ins) - self.parity) % 2:
                    raise ValueError(f"component {ins} -> {o} has the wrong parity")
            clean[tuple(ins)] = val
        self.table = clean

    @property
    def reduced_parity(self) -> int:
        return (self.parity + 1) & 1

    def __call__(self, ins: tuple) -> dict:
        return self.table.get(ins, {})

    @property
    def max_len(self) -> int:
        return max((len(k) for k in self.table), default=0)

    def is_zero(self) -> bool:
        return not self.table

    def scale(self, c) -> "HochschildCochain":
        F = self.A.F
        return HochschildCochain(self.A, self.parity, {k: {o: F.mul(c, a) for o, a in v.items()} for k, v in self.table.items()})

    def __add__(self, other) -> "HochschildCochain":
        if other.parity != self.parity and not other.is_zero() and not self.is_zero():
            raise ValueError("adding cochains of different parity")
        F = self.A.F
        tab = {k: dict(v) for k, v in self.table.items()}
        for k, v in other.table.items():
            cur = tab.setdefault(k, {})
            add_into(F, cur, v)
        return HochschildCochain(self.A, self.parity if not self.is_zero() else other.parity, tab)

    def __sub__(self, other):
        return self + other.scale(self.A.F.neg(self.A.F.one()))

    def __eq__(self, other) -> bool:
        return isinstance(other, HochschildCochain) and self.table == other.table


def basis_cochain(A: AInfinityAlgebra, inputs: tuple, output: int, coef=1) -> HochschildCochain:
    parity = (A.parities[output] - A.red_sum(inputs)) & 1
    return HochschildCochain(A, parity, {tuple(inputs): {output: coef}})


def phi(A: AInfinityAlgebra, k: int, output: int, letter: int = 1) -> HochschildCochain:
    """The cochain sending letter^k to ``output`` and every other input to zero."""
    return basis_cochain(A, (letter,) * k, output)


def unit_cochain(A: AInfinityAlgebra) -> HochschildCochain:
    return basis_cochain(A, (), A.unit)


def cochain_inputs(A: AInfinityAlgebra, max_len: int, normalized: bool = True):
    letters = [i for i in range(A.dim) if not (normalized and i == A.unit)]
    for k in range(max_len + 1):
        yield from itertools.product(letters, repeat=k)


def cochain_differential(phi_: HochschildCochain, max_len: int, normalized: bool = True) -> HochschildCochain:
    """d(phi) = mu_Delta o phi - (-1)^{|phi|} phi o mu, components up to ``max_len``."""
    A = phi_.A
    F = A.F
    diag = DiagonalBimodule(A)
    table: dict = {}
    lengths = {len(k) for k in phi_.table}
    for ins in cochain_inputs(A, max_len, normalized):
        n = len(ins)
        acc: dict = {}
        for i in range(n + 1):
            for j in range(i, n + 1):
                if j - i not in lengths:
                    continue
                val = phi_(ins[i:j])
                if not val:
                    continue
                sg = koszul.insertion(phi_.parity, A.red_sum(ins[j:]))
                for o, c in val.items():
                    add_into(F, acc, diag.act(ins[:i], o, ins[j:]), c if sg == 1 else F.neg(c))
        tail: dict = {}
        for d in A.arities:
            for s0 in range(0, n - d + 1):
                val = A.mu(ins[s0:s0 + d])
                if not val:
                    continue
                sg = koszul.insertion(1, A.red_sum(ins[s0 + d:]))
                for o, c in val.items():
                    add_into(F, tail, phi_(ins[:s0] + (o,) + ins[s0 + d:]), c if sg == 1 else F.neg(c))
        add_into(F, acc, tail, F(-koszul.sign(phi_.parity)))
        if acc:
            table[ins] = _global(F, acc)
    return HochschildCochain(A, phi_.parity + 1, table)


def cup_product(a: HochschildCochain, b: HochschildCochain, max_len: int, normalized: bool = True) -> HochschildCochain:
    """a before b inside one structure map.

    ``a`` pays its reduced parity for everything to its right, including the
    output of ``b``; ``b`` pays its parity for the inputs to its right. The
    extra ``(-1)^{||a||}`` makes the product even, so that
    d(a u b) = da u b + (-1)^{|a|} a u db.
    """
    A = a.A
    F = A.F
    la = {len(k) for k in a.table}
    lb = {len(k) for k in b.table}
    table: dict = {}
    for ins in cochain_inputs(A, max_len, normalized):
        n = len(ins)
        acc: dict = {}
        for i in range(n + 1):
            for r in la:
                if i + r > n:
                    continue
                va = a(ins[i:i + r])
                if not va:
                    continue
                for j in range(i + r, n + 1):
                    for l in lb:
                        if j + l > n:
                            continue
                        vb = b(ins[j:j + l])
                        if not vb:
                            continue
                        after = A.red_sum(ins[j + l:])
                        between = A.red_sum(ins[i + r:j])
                        base = a.reduced_parity * (after + between) + b.parity * after
                        for oa, ca in va.items():
                            for ob, cb in vb.items():
                                sg = koszul.sign(base + a.reduced_parity * (A.red(ob) + 1))
                                word = ins[:i] + (oa,) + ins[i + r:j] + (ob,) + ins[j + l:]
                                val = A.mu(word)
                                if val:
                                    c = F.mul(ca, cb)
                                    add_into(F, acc, val, c if sg == 1 else F.neg(c))
        if acc:
            table[ins] = acc
    return HochschildCochain(A, a.parity + b.parity, table)


def cochain_complex(A: AInfinityAlgebra, max_len: int, normalized: bool = True) -> FiniteComplex:
    """Quotient complex of cochain components with input length <= max_len."""
    labels = []
    for ins in cochain_inputs(A, max_len, normalized):
        for o in range(A.dim):
            labels.append(BasisLabel((ins, o), (A.parities[o] - A.red_sum(ins)) & 1, len(ins)))

    def diff(key):
        ins, o = key
        dphi = cochain_differential(basis_cochain(A, ins, o), max_len, normalized)
        return {(i2, o2): c for i2, v in dphi.table.items() for o2, c in v.items()}
    return FiniteComplex(A.F, labels, diff)


def cochain_vector(phi_: HochschildCochain) -> dict:
    return {(ins, o): c for ins, v in phi_.table.items() for o, c in v.items()}


def psi_map(phi_: HochschildCochain) -> BimodulePreMorphism:
    """The comparison map into pre-morphisms of the diagonal bimodule."""
    A = phi_.A
    F = A.F
    diag = DiagonalBimodule(A)
    lengths = {len(k) for k in phi_.table}
    par = phi_.parity

    def comp(left, m, right):
        out: dict = {}
        n = len(right)
        for i in range(n + 1):
            for j in range(i, n + 1):
                if j - i not in lengths:
                    continue
                val = phi_(right[i:j])
                if not val:
                    continue
                sg = koszul.insertion(par, A.red_sum(right[j:]))
                for o, c in val.items():
                    add_into(F, out, diag.act(left, m, right[:i] + (o,) + right[j:]), c if sg == 1 else F.neg(c))
        return out
    return BimodulePreMorphism(diag, diag, par, comp, name="Psi")


# ------------------------------------------------------ non-unital complex

def nu_degree(A, key) -> int:
    tag, w = key
    if tag == 0:
        return (A.parities[w[0]] + A.red_sum(w[1:])) & 1
    return A.red_sum(w)


def bar_differential(A, word) -> dict:
    """b' : structure maps on every window of the word, plain (untwisted), with the global sign."""
    F = A.F
    out: dict = {}
    n = len(word)
    for d in A.arities:
        for s0 in range(0, n - d + 1):
            val = A.mu(word[s0:s0 + d])
            if not val:
                continue
            sg = koszul.sign(A.red_sum(word[s0 + d:]))
            for o, c in val.items():
                add_into(F, out, {word[:s0] + (o,) + word[s0 + d:]: c if sg == 1 else F.neg(c)})
    return _global(F, out)


def wedge_vee(A, word) -> dict:
    """d_{wedge vee}: rotate the last letter to the front, plus the identity term."""
    F = A.F
    head = A.red_sum(word[:-1])
    last = A.red_sum(word[-1:])
    rot = word[-1:] + word[:-1]
    out: dict = {}
    add_into(F, out, {rot: F(koszul.sign(head + last * head + 1))})
    add_into(F, out, {word: F(koszul.sign(A.red_sum(word[1:])))})
    return out


def nu_differential(A, key) -> dict:
    F = A.F
    tag, w = key
    if tag == 0:
        return {(0, (k[0],) + k[1]): c
                for k, c in chain_differential(DiagonalBimodule(A), (w[0], w[1:]), normalized=False).items()}
    out: dict = {}
    for w2, c in wedge_vee(A, w).items():
        add_into(F, out, {(0, w2): c})
    for w2, c in bar_differential(A, w).items():
        add_into(F, out, {(1, w2): c})
    return out


def connes(A, key) -> dict:
    F = A.F
    tag, w = key
    if tag == 1:
        return {}
    k = len(w)
    out: dict = {}
    total = A.red_sum(w)
    for i in range(1, k + 1):
        moved = w[k - i:]
        rest = w[:k - i]
        e = A.red_sum(moved) * A.red_sum(rest) + A.red_sum(w[:1]) + total + 1
        add_into(F, out, {(1, moved + rest): F(koszul.sign(e))})
    return out


def cyclic_differential(A, key, T: int) -> dict:
    """b^{nu} + t B^{nu} on keys ``(power of t, nu key)``, dropping t^(T+1)."""
    F = A.F
    a, inner = key
    out = {(a, k): c for k, c in nu_differential(A, inner).items()}
    if a + 1 <= T:
        for k, c in connes(A, inner).items():
            add_into(F, out, {(a + 1, k): c})
    return out


def nu_keys(A, max_len: int):
    for n in range(1, max_len + 2):
        for w in itertools.product(range(A.dim), repeat=n):
            yield (0, w)
            yield (1, w)
