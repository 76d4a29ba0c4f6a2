"""Sparse exact linear algebra over any field object from ``scalars``.

Vectors are dicts ``{label: coefficient}`` with no zero entries. Elimination
picks as pivot the first nonzero entry in a fixed label order, so outputs
(kernel vectors, homology representatives, solutions) are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Hashable, Iterable, Sequence

from .scalars import Field, GF


class DimensionError(ValueError):
    pass


class TruncationError(ValueError):
    """The length bound or t-order is too small; ``weight`` is the offending size."""

    def __init__(self, msg: str, weight: int):
        super().__init__(msg)
        self.weight = weight


class NotACycleError(ValueError):
    pass


@dataclass(frozen=True)
class BasisLabel:
    key: Hashable
    parity: int
    weight: int = 0


def vec_add(F: Field, u: dict, v: dict, c=1) -> dict:
    """u + c*v as a new dict."""
    out = dict(u)
    add_into(F, out, v, c)
    return out


def add_into(F: Field, u: dict, v: dict, c=1) -> None:
    """u += c*v in place."""
    if isinstance(F, GF):
        p = F.p
        for k, a in v.items():
            s = (u.get(k, 0) + c * a) % p
            if s:
                u[k] = s
            else:
                u.pop(k, None)
        return
    unit = isinstance(c, int) and c == 1
    for k, a in v.items():
        a = a if unit else F.mul(c, a)
        s = F.add(u[k], a) if k in u else a
        if F.is_zero(s):
            u.pop(k, None)
        else:
            u[k] = s


def vec_scale(F: Field, v: dict, c) -> dict:
    if F.is_zero(c):
        return {}
    return {k: F.mul(c, a) for k, a in v.items()}


def vec_clean(F: Field, v: dict) -> dict:
    return {k: a for k, a in v.items() if not F.is_zero(a)}


class Eliminator:
    """Incremental echelon form keyed by leading index.

    Rows are integers; the leading entry of a vector is its smallest row index.
    Each stored pivot remembers how it was formed from the inserted columns,
    which is what makes ``solve`` and certificates possible.
    """

    def __init__(self, F: Field, track: bool = True):
        self.F = F
        self.track = track
        self.pivots: dict[int, tuple[dict, dict]] = {}
        self._p = F.p if isinstance(F, GF) else None

    def _reduce(self, v: dict, expr: dict | None):
        F, piv, p = self.F, self.pivots, self._p
        v = dict(v)
        while v:
            lead = min(v)
            hit = piv.get(lead)
            if hit is None:
                return v, expr
            pv, pe = hit
            if p is not None:
                c = (-v[lead] * pow(pv[lead], -1, p)) % p
            else:
                c = F.neg(F.div(v[lead], pv[lead]))
            add_into(F, v, pv, c)
            if expr is not None and pe is not None:
                add_into(F, expr, pe, c)
        return v, expr

    def insert(self, v: dict, tag=None) -> bool:
        """Insert a column. Returns True when it raised the rank.

        With tracking on, an untagged column is left out of the recorded combinations.
        """
        expr = ({} if tag is None else {tag: self.F.one()}) if self.track else None
        r, expr = self._reduce(v, expr)
        if not r:
            self.last_relation = expr
            return False
        self.pivots[min(r)] = (r, expr)
        return True

    def reduce(self, v: dict):
        """Return (residual, combination) with v = residual - sum(combination[tag] * column[tag])."""
        r, expr = self._reduce(v, {} if self.track else None)
        return r, expr

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def certificate(self, residual: dict) -> dict:
        """A functional y vanishing on every inserted column with y(residual) = 1."""
        F = self.F
        vecs = [pv for pv, _ in self.pivots.values()] + [residual]
        vecs.sort(key=lambda w: min(w), reverse=True)
        target = {id(residual): F.one()}
        y: dict[int, object] = {}
        for w in vecs:
            lead = min(w)
            acc = target.get(id(w), F.zero())
            for row, a in w.items():
                if row != lead and row in y:
                    acc = F.sub(acc, F.mul(y[row], a))
            y[lead] = F.div(acc, w[lead])
        return {k: a for k, a in y.items() if not F.is_zero(a)}


class Indexer:
    """Stable bijection between labels and integers, in a deterministic order."""

    def __init__(self, labels: Iterable[Hashable] = (), key: Callable | None = None):
        labels = list(labels)
        if key is not None:
            labels = sorted(labels, key=key)
        self.labels: list = []
        self.index: dict = {}
        for lab in labels:
            self.add(lab)

    def add(self, lab) -> int:
        i = self.index.get(lab)
        if i is None:
            i = len(self.labels)
            self.index[lab] = i
            self.labels.append(lab)
        return i

    def encode(self, v: dict, strict: bool = True) -> dict:
        out = {}
        for k, a in v.items():
            i = self.index.get(k)
            if i is None:
                if strict:
                    raise DimensionError(f"label {k!r} is not in the declared space")
                i = self.add(k)
            out[i] = a
        return out

    def decode(self, v: dict) -> dict:
        return {self.labels[i]: a for i, a in v.items()}

    def __len__(self):
        return len(self.labels)


@dataclass
class SparseMap:
    """Linear map given on domain basis labels."""

    F: Field
    domain: list
    codomain: list
    columns: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        cod = set(self.codomain)
        dom = set(self.domain)
        for c, col in self.columns.items():
            if c not in dom:
                raise DimensionError(f"column {c!r} not in domain")
            for r, a in col.items():
                if r not in cod:
                    raise DimensionError(f"row {r!r} not in codomain")
        self.columns = {c: vec_clean(self.F, col) for c, col in self.columns.items()}

    @staticmethod
    def from_function(F: Field, domain: Sequence, codomain: Sequence, fn: Callable[[Hashable], dict]) -> "SparseMap":
        return SparseMap(F, list(domain), list(codomain), {c: fn(c) for c in domain})

    def apply(self, v: dict) -> dict:
        out: dict = {}
        for c, a in v.items():
            col = self.columns.get(c)
            if col:
                add_into(self.F, out, col, a)
        return out

    def compose(self, other: "SparseMap") -> "SparseMap":
        """self after other."""
        return SparseMap(self.F, other.domain, self.codomain,
                         {c: self.apply(col) for c, col in other.columns.items()})

    def entries(self) -> dict:
        return {(r, c): a for c, col in self.columns.items() for r, a in col.items()}

    def to_matrix(self) -> list[list]:
        ridx = {r: i for i, r in enumerate(self.codomain)}
        m = [[self.F.zero() for _ in self.domain] for _ in self.codomain]
        for j, c in enumerate(self.domain):
            for r, a in self.columns.get(c, {}).items():
                m[ridx[r]][j] = a
        return m

    def is_zero(self) -> bool:
        return all(not col for col in self.columns.values())


@dataclass
class SolveResult:
    solution: dict | None
    certificate: dict | None

    @property
    def feasible(self) -> bool:
        return self.solution is not None


def solve_inhomogeneous(d: SparseMap, b: dict, row_key: Callable | None = None) -> SolveResult:
    """Find x with d(x) = b, or a functional y with y.d = 0 and y(b) != 0."""
    F = d.F
    cod = set(d.codomain)
    for r in b:
        if r not in cod:
            raise DimensionError(f"right-hand side label {r!r} outside the codomain")
    rows = Indexer(d.codomain, key=row_key)
    el = Eliminator(F, track=True)
    for c in d.domain:
        col = d.columns.get(c)
        if col:
            el.insert(rows.encode(col), tag=c)
    r, comb = el.reduce(rows.encode(vec_clean(F, b)))
    if r:
        y = el.certificate(r)
        return SolveResult(None, rows.decode(y))
    x = {c: F.neg(a) for c, a in comb.items() if not F.is_zero(a)}
    return SolveResult(x, None)


@dataclass
class FiniteComplex:
    """Z/2-graded finite complex with an odd differential on labelled basis."""

    F: Field
    labels: list  # list of BasisLabel
    differential: Callable[[Hashable], dict]
    check: bool = True

    def __post_init__(self):
        self.by_key = {lab.key: lab for lab in self.labels}
        self._cols = {lab.key: vec_clean(self.F, self.differential(lab.key)) for lab in self.labels}
        for k, col in self._cols.items():
            par = self.by_key[k].parity
            for r in col:
                if r not in self.by_key:
                    raise DimensionError(f"differential leaves the complex: {k!r} -> {r!r}")
                if self.by_key[r].parity == par:
                    raise DimensionError(f"differential is not odd at {k!r}")
        if self.check:
            for k in self._cols:
                if self.apply(self._cols[k]):
                    raise ValueError(f"d^2 != 0 at {k!r}")

    def apply(self, v: dict) -> dict:
        out: dict = {}
        for k, a in v.items():
            add_into(self.F, out, self._cols[k], a)
        return out

    def as_map(self) -> SparseMap:
        keys = [lab.key for lab in self.labels]
        return SparseMap(self.F, keys, keys, dict(self._cols))


@dataclass
class HomologyBasis:
    F: Field
    representatives: list
    reliable: list
    _el: Eliminator
    _rows: Indexer
    _rep_tags: list

    @property
    def rank(self) -> int:
        return len(self.representatives)

    def stable_rank(self) -> int:
        return sum(1 for r in self.reliable if r)

    def project(self, z: dict) -> list:
        """Coordinates of a cycle in the representative basis, modulo boundaries."""
        F = self.F
        r, comb = self._el.reduce(self._rows.encode(z, strict=True))
        if r:
            raise NotACycleError("vector is not a cycle of this complex (or leaves the truncation)")
        return [F.neg(comb.get(tag, F.zero())) if not F.is_zero(comb.get(tag, F.zero())) else F.zero()
                for tag in self._rep_tags]


def homology_basis(c: FiniteComplex, parity: int, band: int | None = None) -> HomologyBasis:
    """Cycles forming a basis of ker/im in the given parity, plus a projection.

    ``band`` marks a representative as reliable when all of its labels have
    weight at most ``band``.
    """
    F = c.F
    src = [lab.key for lab in c.labels if lab.parity % 2 != parity % 2]
    order = sorted((lab for lab in c.labels if lab.parity % 2 == parity % 2),
                   key=lambda lab: (lab.weight, _sortable(lab.key)))
    rows = Indexer([lab.key for lab in order])
    # kernel of d restricted to this parity
    kel = Eliminator(F, track=True)
    cod = Indexer([lab.key for lab in c.labels if lab.parity % 2 != parity % 2])
    kernel = []
    for k in [lab.key for lab in order]:
        col = c._cols[k]
        if not kel.insert(cod.encode(col), tag=k):
            kernel.append({kk: a for kk, a in kel.last_relation.items() if not F.is_zero(a)})
    el = Eliminator(F, track=True)
    for k in src:
        col = c._cols[k]
        if col:
            el.insert(rows.encode(col), tag=("im", k))
    reps, reliable, tags = [], [], []
    for i, z in enumerate(kernel):
        tag = ("rep", i)
        if el.insert(rows.encode(z), tag=tag):
            reps.append(z)
            tags.append(tag)
            if band is None:
                reliable.append(True)
            else:
                reliable.append(all(c.by_key[k].weight <= band for k in z))
    return HomologyBasis(F, reps, reliable, el, rows, tags)


def _sortable(key):
    return (type(key).__name__, key) if not isinstance(key, tuple) else ("tuple", tuple(_sortable(k) for k in key))


def rank_of(F: Field, vectors: Iterable[dict], order: Callable | None = None) -> int:
    idx = Indexer()
    el = Eliminator(F, track=False)
    vecs = list(vectors)
    labels = sorted({k for v in vecs for k in v}, key=order or _sortable)
    for lab in labels:
        idx.add(lab)
    for v in vecs:
        el.insert(idx.encode(v))
    return el.rank
