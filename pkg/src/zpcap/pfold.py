"""The N-fold Hochschild complex: chains with coefficients in the N-fold tensor
power of the diagonal bimodule.

A chain is a tuple of N blocks ``(m, bar)``; the bar of the last block is the
Hochschild bar, the others are the bars inside the tensor product. Block
``a`` has bimodule entry ``m`` followed by its bar.
"""
from __future__ import annotations

import itertools

from . import koszul
from .ainfinity import AInfinityAlgebra, BimodulePreMorphism, TensorBimodulePower, tensor_premorphism
from .hochschild import chain_differential
from .linear import BasisLabel, FiniteComplex, add_into


class CompositionError(ValueError):
    pass


def validate(A: AInfinityAlgebra, blocks) -> tuple:
    blocks = tuple((int(m), tuple(bar)) for m, bar in blocks)
    if not blocks:
        raise CompositionError("a chain needs at least one block")
    for m, bar in blocks:
        if not 0 <= m < A.dim or any(not 0 <= x < A.dim for x in bar):
            raise CompositionError(f"entry outside the basis in block {(m, bar)}")
    return blocks


def degree(A: AInfinityAlgebra, blocks) -> int:
    return (sum(A.parities[m] for m, _ in blocks) + sum(A.red_sum(bar) for _, bar in blocks)) & 1


def length(blocks) -> int:
    return sum(len(bar) for _, bar in blocks)


def _split(blocks):
    return blocks[:-1] + ((blocks[-1][0], ()),), blocks[-1][1]


def _join(m, bar):
    return m[:-1] + ((m[-1][0], bar),)


def differential(A: AInfinityAlgebra, blocks, normalized: bool = True) -> dict:
    """Hochschild differential with coefficients in the tensor power."""
    N = len(blocks)
    M = TensorBimodulePower(A, N)
    m, bar = _split(blocks)
    return {_join(k[0], k[1]): c for k, c in chain_differential(M, (m, bar), normalized).items()}


def differential_flat(A: AInfinityAlgebra, blocks, normalized: bool = True) -> dict:
    """The same differential read off the cyclic word directly.

    Independent of the bimodule structure maps; used as a cross-check.
    """
    F = A.F
    N = len(blocks)
    par = A.parities
    out: dict = {}

    def deg_after(a, pos):
        # degree of the flat word right of bar_a[:pos]
        tot = A.red_sum(blocks[a][1][pos:])
        for m, bar in blocks[a + 1:]:
            tot += par[m] + A.red_sum(bar)
        return tot & 1

    for a in range(N):
        bar = blocks[a][1]
        for d in A.arities:
            for s0 in range(0, len(bar) - d + 1):
                val = A.mu(bar[s0:s0 + d])
                if not val:
                    continue
                sg = koszul.sign(deg_after(a, s0 + d))
                for o, c in val.items():
                    nb = list(blocks)
                    nb[a] = (blocks[a][0], bar[:s0] + (o,) + bar[s0 + d:])
                    add_into(F, out, {tuple(nb): c if sg == 1 else F.neg(c)})
    total = degree(A, blocks)
    for a in range(N):
        lb = (a - 1) % N
        lbar = blocks[lb][1]
        rbar = blocks[a][1]
        m = blocks[a][0]
        for l in range(len(lbar) + 1):
            for r in range(len(rbar) + 1):
                if N == 1 and l + r > len(rbar):
                    continue
                if l + 1 + r not in A.arities:
                    continue
                lw = lbar[len(lbar) - l:]
                rw = rbar[:r]
                val = A.mu(lw + (m,) + rw)
                if not val:
                    continue
                e = A.red_sum(rw) + 1  # diagonal twist
                if N == 1:
                    after = A.red_sum(rbar[r:len(rbar) - l])
                else:
                    after = deg_after(a, r)
                    if a == 0 and l:
                        after = (after - A.red_sum(lw)) & 1
                e += after
                if a == 0 and l:
                    tl = A.red_sum(lw)
                    e += tl * (total - tl)
                for o, c in val.items():
                    nb = list(blocks)
                    if N == 1:
                        nb[0] = (o, rbar[r:len(rbar) - l])
                    else:
                        nb[lb] = (blocks[lb][0], lbar[:len(lbar) - l])
                        nb[a] = (o, rbar[r:])
                    add_into(F, out, {tuple(nb): c if e % 2 == 0 else F.neg(c)})
    if koszul.DIFFERENTIAL_SIGN == -1:
        out = {k: F.neg(c) for k, c in out.items()}
    if normalized and A.unit is not None:
        out = {k: c for k, c in out.items() if not any(A.unit in bar for _, bar in k)}
    return out


def tau(A: AInfinityAlgebra, blocks) -> tuple:
    """Move the last block to the front; returns ``(sign, blocks)``."""
    last = blocks[-1]
    rest = blocks[:-1]
    s = koszul.rotation(degree(A, (last,)), degree(A, rest))
    return s, (last,) + rest


def tau_vec(A: AInfinityAlgebra, v: dict, times: int = 1) -> dict:
    F = A.F
    for _ in range(times):
        out = {}
        for k, c in v.items():
            s, k2 = tau(A, k)
            add_into(F, out, {k2: c if s == 1 else F.neg(c)})
        v = out
    return v


def collapse(A: AInfinityAlgebra, blocks) -> dict:
    """Merge the tail of the last bar, blocks 1 and 2, and a prefix of bar 2 through one structure map."""
    F = A.F
    N = len(blocks)
    if N < 2:
        raise ValueError("collapse needs at least two blocks")
    (m1, b1), (m2, b2) = blocks[0], blocks[1]
    lastbar = blocks[-1][1]
    total = degree(A, blocks)
    out: dict = {}
    for i in range(len(lastbar) + 1):
        tail = lastbar[i:]
        js = range(len(b2) + 1) if N > 2 else range(0, i + 1)
        for j in js:
            word = tail + (m1,) + b1 + (m2,) + b2[:j]
            val = A.mu(word)
            if not val:
                continue
            td = A.red_sum(tail)
            # rotation of the tail, plus the second bimodule entry moving into a bar-type slot
            s = koszul.sign(td * (total - td) + A.parities[m2])
            for o, c in val.items():
                if N == 2:
                    nb = ((o, b2[j:i]),)
                else:
                    nb = ((o, b2[j:]),) + blocks[2:-1] + ((blocks[-1][0], lastbar[:i]),)
                add_into(F, out, {nb: c if s == 1 else F.neg(c)})
    return out


def apply(F, fn, v: dict) -> dict:
    out: dict = {}
    for k, c in v.items():
        add_into(F, out, fn(k), c)
    return out


def full_collapse(A: AInfinityAlgebra, v: dict) -> dict:
    """Collapse repeatedly down to ordinary Hochschild chains ``((m, bar),)``."""
    while v and len(next(iter(v))) > 1:
        v = apply(A.F, lambda k: collapse(A, k), v)
    return v


def n_fold_cap(A: AInfinityAlgebra, fs, blocks) -> dict:
    """Act by F_1 x ... x F_N on a chain through the 2-pointed cap action."""
    N = len(blocks)
    power = TensorBimodulePower(A, N)
    G = fs if isinstance(fs, BimodulePreMorphism) else tensor_premorphism(list(fs), power)
    return cap(power, G, blocks)


def cap(power: TensorBimodulePower, G: BimodulePreMorphism, blocks) -> dict:
    A, F = power.A, power.F
    m, bar = _split(blocks)
    k = len(bar)
    degm = power.deg(m)
    out: dict = {}
    for r in range(k + 1):
        tail, rest = bar[k - r:], bar[:k - r]
        rot = koszul.rotation(A.red_sum(tail), degm + A.red_sum(rest))
        for s in range(len(rest) + 1):
            val = G(tail, m, rest[:s])
            if not val:
                continue
            sg = rot * koszul.insertion(G.parity, A.red_sum(rest[s:]))
            for o, c in val.items():
                add_into(F, out, {_join(o, rest[s:]): c if sg == 1 else F.neg(c)})
    return out


def chain_keys(A: AInfinityAlgebra, N: int, L: int, normalized: bool = True, letters=None):
    """All N-fold chains with total bar length <= L."""
    if letters is None:
        letters = [i for i in range(A.dim) if not (normalized and i == A.unit)]
    for marks in itertools.product(range(A.dim), repeat=N):
        for tot in range(L + 1):
            for lens in _compositions(tot, N):
                for words in itertools.product(*[itertools.product(letters, repeat=l) for l in lens]):
                    yield tuple((marks[a], tuple(words[a])) for a in range(N))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def pfold_complex(A: AInfinityAlgebra, N: int, L: int, normalized: bool = True) -> FiniteComplex:
    labels = [BasisLabel(k, degree(A, k), length(k)) for k in chain_keys(A, N, L, normalized)]
    return FiniteComplex(A.F, labels, lambda k: differential(A, k, normalized))
