"""Polyvector fields and twisted de Rham forms for f = z^N in one variable.

A form in ``Omega^1[[t]]`` is a dict ``{(a, m): c}`` standing for ``c t^a z^m dz``;
a function is the same without ``dz``. ``sign`` selects the twisted differential
``t d + sign * df``: ``-1`` is the source complex, ``+1`` the target.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linear import Eliminator, Indexer, TruncationError, add_into, vec_clean
from .scalars import GF, ConfigurationError


def _check(N: int, p: int):
    if N < 2:
        raise ConfigurationError("N must be at least 2")
    if N % p == 0:
        raise ConfigurationError(f"p = {p} divides N = {N}")


def default_z_order(N: int, p: int) -> int:
    return 3 * N + p * (N - 2)


# ------------------------------------------------------------ polyvectors

@dataclass
class KoszulHomology:
    degree0: list  # exponents m with z^m a basis of functions / (df)
    degree1_rank: int
    band: int


def contraction(F, N: int, g: dict) -> dict:
    """iota_df(g d/dz) = N z^(N-1) g for g = {m: c}."""
    out: dict = {}
    for m, c in g.items():
        add_into(F, out, {m + N - 1: F.mul(F(N), c)})
    return out


def koszul_homology(N: int, p: int, M: int | None = None) -> KoszulHomology:
    """Homology of (functions <- vector fields, iota_df) on polynomials of degree < M.

    Only target degrees m <= M - N are trusted: above that the missing
    vector fields would be needed to kill z^m.
    """
    _check(N, p)
    F = GF(p)
    M = default_z_order(N, p) if M is None else M
    band = M - N
    rows = Indexer(sorted(range(M), reverse=True))
    el = Eliminator(F, track=False)
    kernel = 0
    for j in range(M - N + 1):
        if not el.insert(rows.encode(contraction(F, N, {j: F.one()}))):
            kernel += 1
    pivots = {rows.decode({i: 1}).popitem()[0] for i in el.pivots}
    basis = [m for m in range(band + 1) if m not in pivots]
    return KoszulHomology(basis, kernel, band)


# ------------------------------------------------------ twisted de Rham

def twisted_differential(F, N: int, g: dict, sign: int, T: int) -> dict:
    """(t d + sign * df) on a function ``{(a, m): c}``; terms past t^T are dropped."""
    out: dict = {}
    for (a, m), c in g.items():
        if m and a + 1 <= T:
            add_into(F, out, {(a + 1, m - 1): F.mul(F(m), c)})
        add_into(F, out, {(a, m + N - 1): F.mul(F(sign * N), c)})
    return out


def reduce_form(F, N: int, w: dict, sign: int, T: int) -> dict:
    """Normal form of a 1-form modulo the image, in the basis z^k dz, k <= N-2.

    Uses z^m dz = -sign (m-N+1)/N t z^(m-N) dz for m >= N-1.
    """
    w = vec_clean(F, {k: c for k, c in w.items() if k[0] <= T})
    inv = F.inv(F(N))
    out: dict = {}
    while w:
        (a, m) = max(w, key=lambda k: (k[1], -k[0]))
        c = w.pop((a, m))
        if m <= N - 2:
            add_into(F, out, {(a, m): c})
            continue
        coef = F.mul(F(-sign * (m - N + 1)), inv)
        if a + 1 <= T and not F.is_zero(coef) and m - N >= 0:
            add_into(F, w, {(a + 1, m - N): F.mul(c, coef)})
        elif m - N < 0 and a + 1 <= T and not F.is_zero(coef):
            raise ArithmeticError("reduction left the polynomial range")
    return out


def reduce_form_by_elimination(F, N: int, w: dict, sign: int, T: int, M: int) -> dict:
    """The same normal form found by row-reducing against the image of the twisted differential."""
    top = max((m for _, m in w), default=0)
    if top >= M:
        raise TruncationError(f"form has z^{top} beyond the order {M}", top)
    labels = [(a, m) for m in range(M - 1, -1, -1) for a in range(T + 1)]
    rows = Indexer(labels)
    el = Eliminator(F, track=False)
    for a in range(T + 1):
        for j in range(M - N + 1):
            el.insert(rows.encode(twisted_differential(F, N, {(a, j): F.one()}, sign, T)))
    res, _ = el.reduce(rows.encode(vec_clean(F, {k: c for k, c in w.items() if k[0] <= T})))
    out = rows.decode(res)
    if any(m > N - 2 for _, m in out):
        raise ArithmeticError("elimination left a non-basis monomial")
    return out


@dataclass
class DeRhamHomology:
    degree1: list  # basis exponents k of z^k dz
    degree0_rank: int


def twisted_de_rham_homology(N: int, p: int, T: int, M: int | None = None) -> DeRhamHomology:
    """Classes [z^k dz], k <= N-2, free over truncated power series in t; no degree-0 classes."""
    _check(N, p)
    F = GF(p)
    M = default_z_order(N, p) if M is None else M
    kernel = 0
    labels = [(a, m) for m in range(M - 1, -1, -1) for a in range(T + 1)]
    rows = Indexer(labels)
    el = Eliminator(F, track=False)
    for a in range(T + 1):
        for j in range(M - N + 1):
            if not el.insert(rows.encode(twisted_differential(F, N, {(a, j): F.one()}, -1, T))):
                kernel += 1
    pivots = {rows.decode({i: 1}).popitem()[0] for i in el.pivots}
    basis = sorted({m for (a, m) in labels if (a, m) not in pivots and m <= M - N})
    return DeRhamHomology(basis, kernel)


# -------------------------------------------------------------- actions

def poly_power(F, g: dict, p: int) -> dict:
    """g^p for a polynomial ``{m: c}`` in z."""
    out = {0: F.one()}
    for _ in range(p):
        nxt: dict = {}
        for m1, c1 in out.items():
            for m2, c2 in g.items():
                add_into(F, nxt, {m1 + m2: F.mul(c1, c2)})
        out = nxt
    return out


def function_action(F, N: int, p: int, g: dict, w: dict, sign: int, T: int) -> dict:
    """Class of g^p * w, with g a function ``{m: c}`` and w a form ``{(a, m): c}``."""
    gp = poly_power(F, g, p)
    out: dict = {}
    for (a, m), c in w.items():
        for m2, c2 in gp.items():
            add_into(F, out, {(a, m + m2): F.mul(c, c2)})
    return reduce_form(F, N, out, sign, T)


def derivative(F, g: dict) -> dict:
    return vec_clean(F, {m - 1: F.mul(F(m), c) for m, c in g.items() if m})


def apply_vector_field(F, D: dict, u: dict) -> dict:
    """(D d/dz)(u) for polynomials ``{m: c}``."""
    out: dict = {}
    du = derivative(F, u)
    for m1, c1 in D.items():
        for m2, c2 in du.items():
            add_into(F, out, {m1 + m2: F.mul(c1, c2)})
    return out


def _mul(F, u: dict, v: dict) -> dict:
    out: dict = {}
    for m1, c1 in u.items():
        for m2, c2 in v.items():
            add_into(F, out, {m1 + m2: F.mul(c1, c2)})
    return out


def vector_field_power(F, D: dict, p: int) -> dict:
    """Coefficient h of D^p = h d/dz; the p-th iterate is a derivation in characteristic p."""
    u = {1: F.one()}
    for _ in range(p):
        u = apply_vector_field(F, D, u)
    return u


def lie_derivative_cartan(F, D: dict, w: dict) -> dict:
    """L_D on a 1-form w dz as d(iota_D) + iota_D(d); d of a 1-form vanishes in one variable."""
    return derivative(F, _mul(F, D, w))


def lie_derivative_direct(F, D: dict, w: dict) -> dict:
    """L_D(w dz) = D(w) dz + w d(D(z)), expanded by hand."""
    out = apply_vector_field(F, D, w)
    add_into(F, out, _mul(F, w, derivative(F, D)))
    return out


def restricted_contraction(F, D: dict, w: dict, p: int) -> dict:
    """(iota_{D^p} - L_D^(p-1) iota_D) on the 1-form ``w dz``; a function.

    On functions L_D is just D, so the second term is D^(p-1)(D w).
    """
    out = _mul(F, vector_field_power(F, D, p), w)
    u = _mul(F, D, w)
    for _ in range(p - 1):
        u = apply_vector_field(F, D, u)
    add_into(F, out, u, -1)
    return out


def vector_field_action(F, D: dict, w: dict, p: int) -> dict:
    """The t^((p-1)/2)-weighted chain-level action on a form ``{(a, m): c}``; returns functions."""
    out: dict = {}
    shift = (p - 1) // 2
    by_t: dict = {}
    for (a, m), c in w.items():
        by_t.setdefault(a, {})[m] = c
    for a, ww in by_t.items():
        for m, c in restricted_contraction(F, D, ww, p).items():
            add_into(F, out, {(a + shift, m): c})
    return out


# ------------------------------------------------------------- matrices

def bside_matrix(N: int, p: int = 3, T: int = 2, sign: int = 1, route: str = "closed") -> list:
    """Entries [i][k] = t-coefficients of z^i dz in the class of z^p * z^k dz."""
    _check(N, p)
    F = GF(p)
    M = default_z_order(N, p)
    n = N - 1
    out = [[[F.zero()] * (T + 1) for _ in range(n)] for _ in range(n)]
    for k in range(n):
        w = {(0, k + p): F.one()}
        cls = reduce_form(F, N, w, sign, T) if route == "closed" else \
            reduce_form_by_elimination(F, N, w, sign, T, M)
        for (a, m), c in cls.items():
            out[m][k][a] = c
    return out


def printed_bside_matrix(N: int, T: int = 2) -> list:
    """The printed z-action for p = 3: z^k dz -> z^(k+3) dz for k < N-4, then 0, -t/N dz, t/N z dz."""
    F = GF(3)
    n = N - 1
    out = [[[F.zero()] * (T + 1) for _ in range(n)] for _ in range(n)]
    for k in range(max(N - 4, 0)):
        out[k + 3][k][0] = F.one()
    inv = F.inv(F(N))
    if T >= 1:
        if N - 3 >= 0:
            out[0][N - 3][1] = F.neg(inv)
        out[1][N - 2][1] = inv
    return out


def to_aside_basis(B: list) -> list:
    """Reindex through z^k dz <-> R^(N-2-k)."""
    n = len(B)
    return [[B[n - 1 - j][n - 1 - k] for k in range(n)] for j in range(n)]


@dataclass
class MirrorReport:
    N: int
    p: int
    T: int
    matches: dict  # sign -> bool
    selected: int | None
    aside: list
    bside: dict  # sign -> matrix in the A-side basis


def mirror_diff(N: int, p: int = 3, T: int = 2, aside: list | None = None) -> MirrorReport:
    """Compare the B-side z-action with the A-side cap matrix for both sign conventions."""
    if aside is None:
        from .an_workbench import cap_action_matrix
        aside = cap_action_matrix(N, p, T).entries
    bs = {s: to_aside_basis(bside_matrix(N, p, T, s)) for s in (1, -1)}
    matches = {s: bs[s] == aside for s in (1, -1)}
    sel = [s for s in (1, -1) if matches[s]]
    return MirrorReport(N, p, T, matches, sel[0] if len(sel) == 1 else None, aside, bs)
