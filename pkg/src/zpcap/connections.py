"""Formal t-connections with a double pole, their block splitting, and R-matrices.

A connection is stored as ``d/dt + A(t)/t^2`` with ``A(t) = A_0 + A_1 t + ...``;
for quantum cohomology ``A_0 = -c_1*`` and ``A_1 = mu``. Matrices are lists of
rows over any field object from ``scalars``; a matrix acts on coordinate columns.

The second half holds the data of the intersection of two quadrics in CP^5 and
the pipeline that turns an R-matrix into the series multiplying odd classes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .linear import Eliminator, Indexer, add_into, vec_clean
from .scalars import GF, QQ, QQi, ConfigurationError, GaussianRational, ThetaSeries, TruncatedSeries

Fr = Fraction
I = GaussianRational(0, 1)


class SolvabilityError(ArithmeticError):
    """A Sylvester-type system has no (unique) solution; ``certificate`` explains why."""

    def __init__(self, msg: str, certificate=None):
        super().__init__(msg)
        self.certificate = certificate


# --------------------------------------------------------------- matrices

def zeros(F, n: int, m: int | None = None) -> list:
    return [[F.zero() for _ in range(n if m is None else m)] for _ in range(n)]


def identity(F, n: int) -> list:
    M = zeros(F, n)
    for i in range(n):
        M[i][i] = F.one()
    return M


def convert(F, M: list) -> list:
    return [[F(x) for x in row] for row in M]


def mat_mul(F, X: list, Y: list) -> list:
    n, k, m = len(X), len(Y), len(Y[0])
    out = zeros(F, n, m)
    for i in range(n):
        for l in range(k):
            x = X[i][l]
            if F.is_zero(x):
                continue
            for j in range(m):
                if not F.is_zero(Y[l][j]):
                    out[i][j] = F.add(out[i][j], F.mul(x, Y[l][j]))
    return out


def mat_add(F, X: list, Y: list, c=1) -> list:
    c = F(c)
    return [[F.add(a, F.mul(c, b)) for a, b in zip(rx, ry)] for rx, ry in zip(X, Y)]


def mat_scale(F, X: list, c) -> list:
    c = F(c)
    return [[F.mul(c, a) for a in row] for row in X]


def mat_vec(F, X: list, v: list) -> list:
    return [_dot(F, row, v) for row in X]


def _dot(F, a, b):
    out = F.zero()
    for x, y in zip(a, b):
        out = F.add(out, F.mul(x, y))
    return out


def is_zero_matrix(F, X: list) -> bool:
    return all(F.is_zero(a) for row in X for a in row)


def mat_inverse(F, X: list) -> list:
    n = len(X)
    aug = [list(row) + ident for row, ident in zip(X, identity(F, n))]
    for c in range(n):
        piv = next((r for r in range(c, n) if not F.is_zero(aug[r][c])), None)
        if piv is None:
            raise SolvabilityError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = F.inv(aug[c][c])
        aug[c] = [F.mul(inv, a) for a in aug[c]]
        for r in range(n):
            if r != c and not F.is_zero(aug[r][c]):
                f = aug[r][c]
                aug[r] = [F.sub(a, F.mul(f, b)) for a, b in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def columns_to_matrix(F, cols: list) -> list:
    n = len(cols[0])
    return [[F(cols[j][i]) for j in range(len(cols))] for i in range(n)]


# ------------------------------------------------------------ connections

@dataclass
class FormalConnection:
    """d/dt + (A_0 + A_1 t + ... + A_T t^T) / t^2."""

    F: object
    coeffs: list

    @property
    def rank(self) -> int:
        return len(self.coeffs[0])

    def coeff(self, k: int) -> list:
        return self.coeffs[k] if k < len(self.coeffs) else zeros(self.F, self.rank)


def gauge_transform(c: FormalConnection, G: list, order: int) -> FormalConnection:
    """The connection in the basis given by the columns of G(t) = sum G_k t^k.

    A~ = G^-1 A G + t^2 G^-1 G', computed from G A~ = A G + t^2 G' order by order.
    """
    F, n = c.F, c.rank
    G0inv = mat_inverse(F, G[0])
    Gk = lambda k: G[k] if k < len(G) else zeros(F, n)
    At: list = []
    for k in range(order + 1):
        rhs = zeros(F, n)
        for j in range(k + 1):
            rhs = mat_add(F, rhs, mat_mul(F, c.coeff(k - j), Gk(j)))
        if k >= 1:
            rhs = mat_add(F, rhs, mat_scale(F, Gk(k - 1), k - 1))
        for i in range(1, k + 1):
            rhs = mat_add(F, rhs, mat_mul(F, Gk(i), At[k - i]), -1)
        At.append(mat_mul(F, G0inv, rhs))
    return FormalConnection(F, At)


def eigen_blocks(F, A0: list) -> list:
    """Blocks ``(start, size, eigenvalue)`` of a block-triangular A_0 with constant diagonal runs.

    Each block must be eigenvalue plus a nilpotent part, and A_0 must vanish off the blocks.
    """
    n = len(A0)
    blocks = []
    i = 0
    while i < n:
        lam = A0[i][i]
        j = i
        while j + 1 < n and A0[j + 1][j + 1] == lam:
            j += 1
        blocks.append((i, j - i + 1, lam))
        i = j + 1
    owner = {}
    for b, (s, m, _) in enumerate(blocks):
        for r in range(s, s + m):
            owner[r] = b
    for r in range(n):
        for c in range(n):
            if owner[r] != owner[c] and not F.is_zero(A0[r][c]):
                raise ConfigurationError("A_0 is not block diagonal along its eigenvalue runs")
    for s, m, lam in blocks:
        N = [[F.sub(A0[s + r][s + c], lam) if r == c else A0[s + r][s + c] for c in range(m)] for r in range(m)]
        P = N
        for _ in range(m - 1):
            P = mat_mul(F, P, N)
        if not is_zero_matrix(F, P):
            raise ConfigurationError("a diagonal block is not eigenvalue plus nilpotent")
    return blocks


def check_gaps(F, blocks: list):
    for i, (_, _, a) in enumerate(blocks):
        for _, _, b in blocks[i + 1:]:
            if F.is_zero(F.sub(a, b)):
                raise SolvabilityError(f"eigenvalues {a} and {b} coincide over {getattr(F, 'name', F)}")


def _sylvester(F, P: list, Q: list, C: list) -> list:
    """Solve X Q - P X = C for X; unique when P and Q share no eigenvalue."""
    n, m = len(P), len(Q)
    unknowns = [(i, j) for i in range(n) for j in range(m)]
    rows = Indexer([(i, j) for i in range(n) for j in range(m)])
    el = Eliminator(F, track=True)
    for (a, b) in unknowns:
        col: dict = {}
        for j in range(m):
            add_into(F, col, {(a, j): Q[b][j]})
        for i in range(n):
            add_into(F, col, {(i, b): P[i][a]}, F.neg(F.one()))
        if not el.insert(rows.encode(vec_clean(F, col)), tag=(a, b)):
            raise SolvabilityError("Sylvester operator is singular")
    target = vec_clean(F, {(i, j): C[i][j] for i in range(n) for j in range(m)})
    res, comb = el.reduce(rows.encode(target))
    if res:
        raise SolvabilityError("Sylvester system is inconsistent")
    X = zeros(F, n, m)
    for (a, b), c in comb.items():
        X[a][b] = F.neg(c)
    return X


def _block(M, rs, cs):
    return [[M[r][c] for c in cs] for r in rs]


@dataclass
class BlockSplitting:
    blocks: list
    gauge: list  # G_0 = identity, G_1, ..., G_T
    connection: FormalConnection  # the connection in the new basis


def declared_blocks(F, A0: list, sizes: list) -> list:
    """Blocks of the given sizes with their eigenvalues read off the diagonal of A_0."""
    if sum(sizes) != len(A0):
        raise ConfigurationError("block sizes do not add up to the rank")
    out, s = [], 0
    for m in sizes:
        out.append((s, m, A0[s][s]))
        s += m
    return out


def hlt_extend_basis(c: FormalConnection, T: int, sizes: list | None = None) -> BlockSplitting:
    """A basis v_j(t) = sum_k G_k e_j t^k with G_0 = identity in which every A~_k is block diagonal.

    Off-diagonal blocks of G_k solve a Sylvester equation whose operator is
    invertible exactly when distinct eigenvalues of A_0 differ by a unit.
    ``sizes`` fixes the block structure in advance; without it the blocks are
    the runs of equal diagonal entries.
    """
    F, n = c.F, c.rank
    blocks = eigen_blocks(F, c.coeff(0)) if sizes is None else declared_blocks(F, c.coeff(0), sizes)
    check_gaps(F, blocks)
    idx = [list(range(s, s + m)) for s, m, _ in blocks]
    A0 = c.coeff(0)
    G = [identity(F, n)]
    At = [A0]
    for k in range(1, T + 1):
        C = zeros(F, n)
        for j in range(k):
            C = mat_add(F, C, mat_mul(F, c.coeff(k - j), G[j]))
        C = mat_add(F, C, mat_scale(F, G[k - 1], k - 1))
        for i in range(1, k):
            C = mat_add(F, C, mat_mul(F, G[i], At[k - i]), -1)
        Gk, Ak = zeros(F, n), zeros(F, n)
        for a, ra in enumerate(idx):
            for b, rb in enumerate(idx):
                Cab = _block(C, ra, rb)
                if a == b:
                    for i, r in enumerate(ra):
                        for j, s in enumerate(rb):
                            Ak[r][s] = Cab[i][j]
                    continue
                # A~_k + G_k A_0 - A_0 G_k = C on the (a, b) block with A~_k zero there
                X = _sylvester(F, _block(A0, ra, ra), _block(A0, rb, rb), Cab)
                for i, r in enumerate(ra):
                    for j, s in enumerate(rb):
                        Gk[r][s] = X[i][j]
        G.append(Gk)
        At.append(Ak)
    return BlockSplitting(blocks, G, FormalConnection(F, At))


def check_splitting(c: FormalConnection, s: BlockSplitting) -> dict:
    """The three conclusions of the basis-extension lemma, plus the gauge identity itself."""
    F = c.F
    T = len(s.gauge) - 1
    direct = gauge_transform(c, s.gauge, T)
    idx = [set(range(st, st + m)) for st, m, _ in s.blocks]
    owner = {r: b for b, rs in enumerate(idx) for r in rs}

    def block_diagonal(M):
        return all(F.is_zero(M[r][q]) for r in owner for q in owner if owner[r] != owner[q])
    out = {
        "constant term is identity": s.gauge[0] == identity(F, c.rank),
        "leading matrix unchanged": direct.coeff(0) == c.coeff(0),
        "all orders block diagonal": all(block_diagonal(direct.coeff(k)) for k in range(T + 1)),
        "diagonal blocks of first order agree": all(
            direct.coeff(1)[r][q] == c.coeff(1)[r][q] for r in owner for q in owner if owner[r] == owner[q]),
        "gauge identity": all(direct.coeff(k) == s.connection.coeff(k) for k in range(T + 1)),
    }
    return out


# -------------------------------------------------------------- R-matrix

@dataclass
class RMatrix:
    F: object
    coeffs: list  # R_0, ..., R_T
    source: FormalConnection
    target: FormalConnection
    checked_orders: int

    def apply(self, v: list) -> list:
        """Coefficient vectors of R(t) v for a constant vector v."""
        return [mat_vec(self.F, R, v) for R in self.coeffs]


def intertwining_residual(src: FormalConnection, tgt: FormalConnection, R: list, k: int) -> list:
    """The t^k coefficient of t^2 R' + B R - R A."""
    F = src.F
    n = src.rank
    Rk = lambda j: R[j] if j < len(R) else zeros(F, n)
    E = mat_scale(F, Rk(k - 1), k - 1) if k >= 1 else zeros(F, n)
    for j in range(k + 1):
        E = mat_add(F, E, mat_mul(F, tgt.coeff(k - j), Rk(j)))
        E = mat_add(F, E, mat_mul(F, Rk(j), src.coeff(k - j)), -1)
    return E


def _unit_residual(src: FormalConnection, tgt: FormalConnection, k: int, i: int, j: int, K: int) -> dict:
    """Residual of R = E_ij t^k at orders <= K, read off without forming matrices."""
    F, n = src.F, src.rank
    col: dict = {}
    if k + 1 <= K and k:
        add_into(F, col, {(k + 1, i, j): F(k)})
    for m in range(max(len(src.coeffs), len(tgt.coeffs))):
        e = k + m
        if e > K:
            break
        B, A = tgt.coeff(m), src.coeff(m)
        for a in range(n):
            if not F.is_zero(B[a][i]):
                add_into(F, col, {(e, a, j): B[a][i]})
        for b in range(n):
            if not F.is_zero(A[j][b]):
                add_into(F, col, {(e, i, b): A[j][b]}, F.neg(F.one()))
    return vec_clean(F, col)


def solve_r_matrix(src: FormalConnection, tgt: FormalConnection, r0: list, T: int, extra: int = 3) -> RMatrix:
    """The unique R(t) with constant term r0 and t^2 R' + B R - R A = 0, through t^T.

    Orders with a shared eigenvalue are not pinned down by their own equation,
    so orders 1..T+extra are solved together and uniqueness of R_1..R_T is
    checked on the kernel of the homogeneous system.
    """
    F, n = src.F, src.rank
    if not is_zero_matrix(F, intertwining_residual(src, tgt, [r0], 0)):
        raise SolvabilityError("r0 does not intertwine the leading matrices",
                               intertwining_residual(src, tgt, [r0], 0))
    K = T + extra
    unknowns = [(k, i, j) for k in range(1, K + 1) for i in range(n) for j in range(n)]
    eq_labels = [(k, i, j) for k in range(1, K + 1) for i in range(n) for j in range(n)]
    rows = Indexer(eq_labels)

    el = Eliminator(F, track=True)
    kernel = []
    for (k, i, j) in unknowns:
        col = _unit_residual(src, tgt, k, i, j, K)
        if not el.insert(rows.encode(col), tag=(k, i, j)):
            kernel.append(el.last_relation)
    R0only = [r0] + [zeros(F, n) for _ in range(K)]
    rhs: dict = {}
    for e in range(1, K + 1):
        E = intertwining_residual(src, tgt, R0only, e)
        for a in range(n):
            for b in range(n):
                if not F.is_zero(E[a][b]):
                    rhs[(e, a, b)] = F.neg(E[a][b])
    res, comb = el.reduce(rows.encode(rhs))
    if res:
        raise SolvabilityError("the order-by-order system is inconsistent", rows.decode(res))
    for rel in kernel:
        if any(k <= T and not F.is_zero(c) for (k, _, _), c in rel.items()):
            raise SolvabilityError("R is not unique through the requested order", rel)
    coeffs = [r0] + [zeros(F, n) for _ in range(T)]
    for (k, i, j), c in comb.items():
        if k <= T:
            coeffs[k][i][j] = F.neg(c)
    return RMatrix(F, coeffs, src, tgt, K)


# --------------------------------------------------- quadrics fixture data

EVEN = ["1", "h", "h4", "h6"]
ODD = ["eta1", "eta2", "eta3", "eta4"]
BASIS = EVEN + ODD
DEGREE = {"1": 0, "h": 2, "h4": 4, "h6": 6, "eta1": 3, "eta2": 3, "eta3": 3, "eta4": 3}
COMPLEX_DIM = 3


def intersection_form(i: int, j: int) -> int:
    """gamma_i . gamma_j for a standard symplectic basis (1,2), (3,4) of H_1 of the genus-2 surface."""
    table = {(0, 1): 1, (1, 0): -1, (2, 3): 1, (3, 2): -1}
    return table.get((i, j), 0)


def _even_to_poly(x: str) -> list:
    # even classes as polynomials in h modulo h^4 = 16 h^2: h4 = (h^2-4)/4, h6 = (h^3-12h)/4
    return {"1": [1, 0, 0, 0], "h": [0, 1, 0, 0], "h4": [Fr(-1), 0, Fr(1, 4), 0],
            "h6": [0, Fr(-3), 0, Fr(1, 4)]}[x]


def _poly_to_even(c: list) -> dict:
    # inverse of the above on the span of 1, h, h^2, h^3
    c = [Fr(x) for x in c]
    out = {"h4": 4 * c[2], "h6": 4 * c[3]}
    out["1"] = c[0] + 4 * c[2]
    out["h"] = c[1] + 12 * c[3]
    return {k: v for k, v in out.items() if v}


def _poly_mul(a: list, b: list) -> list:
    out = [Fr(0)] * 7
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += Fr(x) * Fr(y)
    for d in range(6, 3, -1):
        # h^d = 16 h^(d-2)
        out[d - 2] += 16 * out[d]
        out[d] = Fr(0)
    return out[:4]


@dataclass
class QuantumRing:
    """Small quantum cohomology ring on ``BASIS`` with exact rational structure constants."""

    table: dict = field(default_factory=dict)
    cup: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.table:
            self.table, self.cup = _quadrics_tables()

    def mul(self, x: dict, y: dict, classical: bool = False) -> dict:
        tab = self.cup if classical else self.table
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, cc in tab.get((a, b), {}).items():
                    out[c] = out.get(c, Fr(0)) + Fr(ca) * Fr(cb) * cc
        return {k: v for k, v in out.items() if v}

    def power(self, x: dict, n: int) -> dict:
        out = {"1": Fr(1)}
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def pairing(self, x: dict, y: dict) -> Fraction:
        return self.mul(x, y, classical=True).get("h6", Fr(0))

    def grading(self, x: str) -> Fraction:
        return Fr(DEGREE[x] - COMPLEX_DIM, 2)

    def matrix_of(self, x: dict, basis: list) -> list:
        """Matrix of left multiplication by x on the span of ``basis`` (dict vectors)."""
        Fq = QQ()
        P = columns_to_matrix(Fq, [[b.get(e, 0) for e in BASIS] for b in basis])
        cols = [[self.mul(x, b).get(e, Fr(0)) for e in BASIS] for b in basis]
        image = columns_to_matrix(Fq, cols)
        return _solve_columns(Fq, P, image)


def _solve_columns(F, P: list, Y: list) -> list:
    """X with P X = Y for P with independent columns (n x m, n >= m)."""
    n, m = len(P), len(P[0])
    Pt = [[P[i][j] for i in range(n)] for j in range(m)]
    N = mat_mul(F, Pt, P)
    return mat_mul(F, mat_inverse(F, N), mat_mul(F, Pt, Y))


def _quadrics_tables():
    table: dict = {}
    cup: dict = {}
    for a in EVEN:
        for b in EVEN:
            table[(a, b)] = _poly_to_even(_poly_mul(_even_to_poly(a), _even_to_poly(b)))
    for i, a in enumerate(ODD):
        table[("1", a)] = table[(a, "1")] = {a: Fr(1)}
        # forced by h*eta = 0 and the quantum relation h*h = 4h4 + 4
        table[("h4", a)] = table[(a, "h4")] = {a: Fr(-1)}
        for j, b in enumerate(ODD):
            s = intersection_form(i, j)
            if s:
                # (gamma_i . gamma_j)(h^3 - 16h)/4 = (gamma_i . gamma_j)(h6 - h)
                table[(a, b)] = {"h6": Fr(s), "h": Fr(-s)}
                cup[(a, b)] = {"h6": Fr(s)}
    for a in BASIS:
        cup[("1", a)] = cup[(a, "1")] = {a: Fr(1)}
    cup[("h", "h")] = {"h4": Fr(4)}
    cup[("h", "h4")] = cup[("h4", "h")] = {"h6": Fr(1)}
    return table, cup


def as_vec(**kw) -> dict:
    return {k: Fr(v) for k, v in kw.items() if v}


def v_idempotent() -> dict:
    R = QuantumRing()
    h2 = R.power({"h": 1}, 2)
    return {k: v for k, v in _lin({"1": Fr(1)}, h2, Fr(-1, 16)).items() if v}


def w_class() -> dict:
    R = QuantumRing()
    return {k: v for k, v in _lin(R.power({"h": 1}, 3), {"h": Fr(1)}, Fr(-16)).items() if v}


def _lin(x: dict, y: dict, c) -> dict:
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, Fr(0)) + Fr(c) * v
    return {k: v for k, v in out.items() if v}


def minus_eight_class() -> dict:
    return as_vec(h6=Fr(-1, 4), h4=1, h=Fr(-3, 4), **{"1": 1})


def plus_eight_class() -> dict:
    R = QuantumRing()
    return {k: v / 16 for k, v in _lin(R.power({"h": 1}, 3), R.power({"h": 1}, 2), 4).items()}


def even_basis() -> list:
    """The ordered even basis: the -8 class, w, v, the +8 class."""
    return [minus_eight_class(), w_class(), v_idempotent(), plus_eight_class()]


def eigen_basis_full() -> list:
    """The generalized eigenbasis: -8 class, then w, v, the four odd classes, then the +8 class."""
    return [minus_eight_class(), w_class(), v_idempotent()] + [{e: Fr(1)} for e in ODD] + [plus_eight_class()]


def quadrics_connection(F=None, full: bool = False) -> FormalConnection:
    """-c_1* and the grading operator in the even (or full) generalized eigenbasis."""
    F = QQ() if F is None else F
    R = QuantumRing()
    basis = eigen_basis_full() if full else even_basis()
    Fq = QQ()
    A0 = mat_scale(Fq, R.matrix_of({"h": Fr(-2)}, basis), 1)
    P = columns_to_matrix(Fq, [[b.get(e, 0) for e in BASIS] for b in basis])
    mu = [[R.grading(e) if e == f else Fr(0) for f in BASIS] for e in BASIS]
    A1 = _solve_columns(Fq, P, mat_mul(Fq, mu, P))
    return FormalConnection(F, [convert(F, A0), convert(F, A1)])


def verify_quadrics_ring() -> dict:
    R = QuantumRing()
    Fq = QQ()
    out: dict = {}
    e = lambda n: {n: Fr(1)}
    out["associative"] = all(R.mul(R.mul(e(a), e(b)), e(c)) == R.mul(e(a), R.mul(e(b), e(c)))
                             for a in BASIS for b in BASIS for c in BASIS)

    def gsign(a, b):
        return -1 if DEGREE[a] % 2 and DEGREE[b] % 2 else 1
    out["graded commutative"] = all(
        R.mul(e(a), e(b)) == {k: gsign(a, b) * v for k, v in R.mul(e(b), e(a)).items()}
        for a in BASIS for b in BASIS)
    out["h*h = 4h4 + 4"] = R.mul(e("h"), e("h")) == as_vec(h4=4, **{"1": 4})
    out["h*h4 = h6 + 2h"] = R.mul(e("h"), e("h4")) == as_vec(h6=1, h=2)
    out["h*h6 = 4h4 + 4"] = R.mul(e("h"), e("h6")) == as_vec(h4=4, **{"1": 4})
    out["h4*h4 = 2h4 + 3"] = R.mul(e("h4"), e("h4")) == as_vec(h4=2, **{"1": 3})
    h3 = R.power(e("h"), 3)
    w = w_class()
    eta_ok = True
    for i, a in enumerate(ODD):
        for j, b in enumerate(ODD):
            want = {k: v * intersection_form(i, j) / 4 for k, v in w.items()}
            eta_ok &= R.mul(e(a), e(b)) == {k: v for k, v in want.items() if v}
    out["eta products"] = eta_ok and w == _lin(h3, e("h"), -16)
    out["cup products"] = (R.mul(e("h"), e("h"), True) == as_vec(h4=4)
                           and R.mul(e("h"), e("h4"), True) == as_vec(h6=1)
                           and all(R.mul(e(a), e(b), True) == ({"h6": Fr(intersection_form(i, j))}
                                                                if intersection_form(i, j) else {})
                                   for i, a in enumerate(ODD) for j, b in enumerate(ODD)))
    v = v_idempotent()
    out["v*v = v"] = R.mul(v, v) == v
    c1 = {"h": Fr(2)}
    basis = eigen_basis_full()
    lams = [Fr(-8)] + [Fr(0)] * 6 + [Fr(8)]
    gen_ok = True
    for b, lam in zip(basis, lams):
        x = b
        for _ in range(2):
            x = _lin(R.mul(c1, x), x, -lam)
        gen_ok &= not x
    P = columns_to_matrix(Fq, [[b.get(k, 0) for k in BASIS] for b in basis])
    try:
        mat_inverse(Fq, P)
        independent = True
    except SolvabilityError:
        independent = False
    out["generalized eigenbasis"] = gen_ok and independent
    M = R.matrix_of(c1, basis)
    out["eigenvalues -8, 0, 8"] = [M[i][i] for i in range(8)] == lams
    out["<v,v> = 0"] = R.pairing(v, v) == 0
    out["<v,w> = 4"] = R.pairing(v, w) == 4
    out["v is the unit of the 0-part"] = all(R.mul(v, b) == b for b in basis[1:7])
    one = {"1": Fr(1)}
    comb = {}
    for b, c in zip(even_basis(), [Fr(1, 8), 0, 1, Fr(1, 8)]):
        comb = _lin(comb, b, c)
    out["1 in the even basis"] = comb == one
    return out


# ------------------------------------------------- mirror-side fixtures

@dataclass(frozen=True)
class MirrorFixture:
    """Assumed Floer-theoretic data; everything downstream is conditional on it."""

    epsilon: int

    def theta_v(self):
        return I * Fr(self.epsilon, 2)  # a constant multiple of 1

    def theta_w(self):
        return I * (8 * self.epsilon)  # a multiple of the point class H

    def constant_term(self, F=None) -> list:
        F = QQi() if F is None else F
        d = [Fr(1), Fr(-4), Fr(1, 2), Fr(1)]
        return [[F(I * (d[i] * self.epsilon)) if i == j else F.zero() for j in range(4)] for i in range(4)]

    @staticmethod
    def projection() -> list:
        return [[0, 1, 0, 0], [0, 0, 1, 0]]

    @staticmethod
    def unit_coordinates() -> list:
        return [Fr(1, 8), Fr(0), Fr(1), Fr(1, 8)]

    def pairing_constraints(self) -> dict:
        a, d = self.theta_v(), self.theta_w()
        return {"d = 16a": d == a * 16, "ad = -4": a * d == GaussianRational(-4)}


def surface_connection(F, epsilon: int) -> FormalConnection:
    """The rank-1 pieces with eigenvalues -8 and 8 around the genus-2 even cohomology.

    Order: the -8 piece, then -2H and 1, then the +8 piece; the surface has
    c_1 = -2H, grading -1/2 on 1 and +1/2 on H.
    """
    A0 = zeros(F, 4)
    A0[0][0] = F(8)
    A0[3][3] = F(-8)
    A0[1][2] = F(-1)  # -c_1*(1) = 2H = -(-2H)
    A1 = zeros(F, 4)
    A1[1][1] = F(Fr(1, 2))
    A1[2][2] = F(Fr(-1, 2))
    return FormalConnection(F, [A0, A1])


def quadrics_r_matrix(epsilon: int, T: int = 4) -> RMatrix:
    if epsilon not in (1, -1):
        raise ConfigurationError("epsilon must be 1 or -1")
    F = QQi()
    src = quadrics_connection(F)
    tgt = surface_connection(F, epsilon)
    return solve_r_matrix(src, tgt, MirrorFixture(epsilon).constant_term(F), T)


# The printed coefficients: R = sum (-1)^k P_k (i epsilon) t^k with P_0 = diag(1, -4, 1/2, 1).
PRINTED_R = [
    [[1, 0, 0, 0], [0, -4, 0, 0], [0, 0, Fr(1, 2), 0], [0, 0, 0, 1]],
    [[Fr(-7, 64), Fr(1, 2), Fr(1, 32), 0],
     [Fr(1, 16), 0, Fr(-5, 512), Fr(1, 16)],
     [Fr(-1, 8), -2, 0, Fr(1, 8)],
     [0, Fr(1, 2), Fr(-1, 32), Fr(7, 64)]],
    [[Fr(-15, 8192), Fr(-7, 128), Fr(9, 2048), Fr(1, 1024)],
     [Fr(-27, 2048), Fr(7, 128), 0, Fr(27, 2048)],
     [Fr(1, 32), 0, Fr(-3, 512), Fr(1, 32)],
     [Fr(1, 1024), Fr(7, 128), Fr(9, 2048), Fr(-15, 8192)]],
    [[Fr(-389, 524288), Fr(-135, 16384), Fr(393, 262144), Fr(65, 65536)],
     [Fr(33, 8192), 0, Fr(-435, 1048576), Fr(33, 8192)],
     [Fr(-9, 2048), Fr(3, 128), 0, Fr(9, 2048)],
     [Fr(-65, 65536), Fr(-135, 16384), Fr(-393, 262144), Fr(389, 524288)]],
    [[Fr(-38421, 134217728), Fr(-3069, 1048576), Fr(11907, 16777216), Fr(3537, 8388608)],
     [Fr(-7533, 4194304), Fr(999, 262144), 0, Fr(7533, 4194304)],
     [Fr(9, 8192), 0, Fr(-63, 524288), Fr(9, 8192)],
     [Fr(3537, 8388608), Fr(3069, 1048576), Fr(11907, 16777216), Fr(-38421, 134217728)]],
]


def printed_r_matrix(epsilon: int) -> list:
    F = QQi()
    return [[[F(I * (Fr(x) * epsilon * (-1) ** k)) for x in row] for row in P] for k, P in enumerate(PRINTED_R)]


def r_matrix_diff(epsilon: int, T: int = 4) -> list:
    """Entries (k, i, j, computed, printed) where the solver and the printed matrices differ."""
    R = quadrics_r_matrix(epsilon, T)
    P = printed_r_matrix(epsilon)
    out = []
    for k in range(min(T, len(P) - 1) + 1):
        for i in range(4):
            for j in range(4):
                if R.coeffs[k][i][j] != P[k][i][j]:
                    out.append((k, i, j, R.coeffs[k][i][j], P[k][i][j]))
    return out


# ------------------------------------------------------- the c-series

@dataclass
class CSeries:
    raw: dict  # epsilon -> list of Gaussian rationals (coefficient of 1 after projection)
    normalized: list  # (-2 i epsilon) * raw, the same for both signs
    epsilon_independent: bool
    real: bool


def c_series(T: int = 4) -> CSeries:
    """Apply R to the coordinates of 1, project to the surface part, read off the coefficient of 1."""
    raw, norm = {}, {}
    for eps in (1, -1):
        R = quadrics_r_matrix(eps, T)
        F = R.F
        x = [F(c) for c in MirrorFixture.unit_coordinates()]
        proj = convert(F, MirrorFixture.projection())
        coeffs = [mat_vec(F, proj, y)[1] for y in R.apply(x)]
        raw[eps] = coeffs
        norm[eps] = [F.mul(F(I * (-2 * eps)), c) for c in coeffs]
    same = norm[1] == norm[-1]
    real = all(c.im == 0 for c in norm[1])
    return CSeries(raw, [c.re for c in norm[1]], same, real)


PRINTED_C_SERIES = [Fr(1), Fr(0), Fr(1, 256), Fr(0), Fr(81, 262144)]


def steenrod_odd_class_series(p: int, T: int = 4) -> ThetaSeries:
    """(-1)^((p-1)/2) ((p-1)/2)! t^((p-1)/2) times the c-series, reduced mod p.

    The series is truncated at t^(T + (p-1)/2); the theta part is zero.
    """
    if p < 3 or p % 2 == 0:
        raise ConfigurationError("p must be an odd prime")
    if T < 4:
        raise ConfigurationError("T must be at least 4")
    F = GF(p)
    half = (p - 1) // 2
    lead = F(((-1) ** half) * factorial(half))
    cs = c_series(T)
    coeffs = [F.zero()] * half + [F.mul(lead, F(c)) for c in cs.normalized]
    even = TruncatedSeries(F, coeffs, T + half)
    return ThetaSeries(even)


def p_divisibility(p: int, T: int = 4) -> list:
    """Orders n where the numerator of the n-th normalized coefficient is divisible by p."""
    return [n for n, c in enumerate(c_series(T).normalized) if c.numerator % p == 0]


@dataclass
class ClassicalSteenrod:
    """((p-1)/2)! t^((p-1)/2) y^(1) cup (-) on H^1 of the genus-2 surface."""

    F: object
    p: int
    twisted: list  # coefficients of y^(1)

    def __call__(self, x: list, T: int | None = None) -> ThetaSeries:
        """The multiple of the point class, as a series in t."""
        half = (self.p - 1) // 2
        T = half if T is None else T
        c = self.F.mul(self.F(factorial(half) % self.p), surface_cup(self.F, self.twisted, x))
        return ThetaSeries(TruncatedSeries(self.F, [self.F.zero()] * half + [c], T))


def classical_steenrod_surface(F, y: list, p: int) -> ClassicalSteenrod:
    """``y`` lists coefficients in a basis coming from F_p; each coefficient is raised to the p-th power."""
    if getattr(F, "characteristic", getattr(F, "p", None)) != p:
        raise ConfigurationError("the scalars must have characteristic p")
    return ClassicalSteenrod(F, p, [F.power(F(c), p) for c in y])


def surface_cup(F, x: list, y: list):
    """Cup product of two H^1 classes of the genus-2 surface as a multiple of the point class."""
    out = F.zero()
    for i in range(4):
        for j in range(4):
            s = intersection_form(i, j)
            if s:
                out = F.add(out, F.mul(F(s), F.mul(F(x[i]), F(y[j]))))
    return out


def reduce_matrix_mod_p(M: list, p: int) -> list:
    F = GF(p)
    return [[F(Fr(x)) for x in row] for row in M]


def splitting_base_change(p: int, T: int = 3) -> bool:
    """Splitting over F_p equals the mod-p reduction of the rational splitting."""
    Sq = hlt_extend_basis(quadrics_connection(QQ(), full=True), T)
    Sp = hlt_extend_basis(quadrics_connection(GF(p), full=True), T)
    return all(reduce_matrix_mod_p(Gq, p) == Gp for Gq, Gp in zip(Sq.gauge, Sp.gauge))
