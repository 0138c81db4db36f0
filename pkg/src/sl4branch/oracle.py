"""Brute-force multiplicity tables used to check the generating functions.

``cg_table`` runs the tensor-product recurrences on the A matrices;
``schur_table`` never touches them and instead evaluates the SL_4 characters
on every class through the Jacobi-Trudi determinant.  ``key_relation_check``
tests the polynomial identity satisfied by the truncated series.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from .branching import build_J
from .exactnum import Cyclotomic
from .matgroup import natural_character
from .tensorrep import exterior_square_character


class OracleError(ArithmeticError):
    pass


@dataclass
class MultiplicityTable:
    N: int
    values: dict                 # (p, q, r) -> list of multiplicities
    method: str

    def __getitem__(self, key):
        return self.values[tuple(key)]


def weyl_dim(p, q, r):
    """Dimension of the SL_4 irreducible with highest weight (p, q, r)."""
    num = (p + 1) * (q + 1) * (r + 1) * (p + q + 2) * (q + r + 2) * (p + q + r + 3)
    assert num % 12 == 0
    return num // 12


def triples(N):
    """All (p, q, r) with p + q + r <= N, by level."""
    for level in range(N + 1):
        for p in range(level, -1, -1):
            for q in range(level - p, -1, -1):
                yield (p, q, level - p - q)


# Clebsch-Gordan shifts for V(w1), V(w2), V(w3) tensored with V(p, q, r)
CG_SHIFTS = {
    1: ((1, 0, 0), (0, 0, -1), (-1, 1, 0), (0, -1, 1)),
    2: ((0, 1, 0), (0, -1, 0), (1, -1, 1), (-1, 1, -1), (-1, 0, 1), (1, 0, -1)),
    3: ((0, 0, 1), (-1, 0, 0), (0, 1, -1), (1, -1, 0)),
}


def cg_dimension_identity(p, q, r):
    """True when dim V(w_k) * dim V(p,q,r) equals the summed dimensions of
    the Clebsch-Gordan right-hand side, for k = 1, 2, 3."""
    for k, factor in ((1, 4), (2, 6), (3, 4)):
        total = 0
        for dp, dq, dr in CG_SHIFTS[k]:
            a, b, c = p + dp, q + dq, r + dr
            if min(a, b, c) >= 0:
                total += weyl_dim(a, b, c)
        if total != factor * weyl_dim(p, q, r):
            return False
    return True


def _matvec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def cg_table(M, N):
    """Multiplicities from the three tensor-product recurrences."""
    n = M.size
    zero = [0] * n
    v = {(0, 0, 0): [1] + [0] * (n - 1)}

    def get(p, q, r):
        if min(p, q, r) < 0:
            return zero
        return v[(p, q, r)]

    def store(key, vec):
        if any(x < 0 for x in vec):
            raise OracleError(f"negative multiplicity at {key}: {vec}")
        v[key] = vec

    for L in range(N):
        nxt = L + 1
        # p >= 1 from the V(w1) recurrence at (p-1, q, r)
        for p in range(nxt, 0, -1):
            for q in range(nxt - p, -1, -1):
                r = nxt - p - q
                a, b, c = p - 1, q, r
                vec = _matvec(M.A1, get(a, b, c))
                for s, x in enumerate(get(a, b, c - 1)):
                    vec[s] -= x
                for s, x in enumerate(get(a - 1, b + 1, c)):
                    vec[s] -= x
                for s, x in enumerate(get(a, b - 1, c + 1)):
                    vec[s] -= x
                store((p, q, r), vec)
        # p = 0, r >= 1 from the V(w3) recurrence at (0, q, r-1)
        for r in range(nxt, 0, -1):
            q = nxt - r
            a, b, c = 0, q, r - 1
            vec = _matvec(M.A3, get(a, b, c))
            for s, x in enumerate(get(a - 1, b, c)):
                vec[s] -= x
            for s, x in enumerate(get(a, b + 1, c - 1)):
                vec[s] -= x
            for s, x in enumerate(get(a + 1, b - 1, c)):
                vec[s] -= x
            store((0, q, r), vec)
        # (0, L+1, 0) from the V(w2) recurrence at (0, L, 0)
        b = L
        vec = _matvec(M.A2, get(0, b, 0))
        for s, x in enumerate(get(0, b - 1, 0)):
            vec[s] -= x
        for s, x in enumerate(get(1, b - 1, 1)):
            vec[s] -= x
        store((0, nxt, 0), vec)
    return MultiplicityTable(N, {k: v[k] for k in triples(N)}, "cg_recurrence")


def complete_homogeneous(chi, wedge, chi_bar, n):
    """h_0..h_n of the eigenvalues of an SL_4 element from its elementary
    symmetric functions (chi, wedge, conj chi, 1)."""
    e = (chi, wedge, chi_bar, 1)
    h = [Cyclotomic.rational(1)]
    for k in range(1, n + 1):
        acc = Cyclotomic.rational(0)
        for i in range(1, min(k, 4) + 1):
            term = h[k - i] * e[i - 1]
            acc = acc + term if i % 2 else acc - term
        h.append(acc)
    return h


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = Cyclotomic.rational(0)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def schur_character(h, p, q, r):
    """Character of V(p, q, r) from Jacobi-Trudi: det(h_{lam_a - a + b})."""
    lam = (p + q + r, q + r, r, 0)
    zero = Cyclotomic.rational(0)

    def hh(k):
        return h[k] if k >= 0 else zero

    m = [[hh(lam[a] - a + b) for b in range(4)] for a in range(4)]
    return _det(m)


def schur_table(T, G, N):
    """Multiplicities by inner products of irreducible characters with the
    SL_4 characters evaluated class by class."""
    chi = natural_character(G)
    wedge = exterior_square_character(G, chi)
    hs = [complete_homogeneous(chi[j], wedge[j], chi[j].conjugate(), N + 3)
          for j in range(G.num_classes)]
    conj = [[x.conjugate() * T.class_sizes[j] for j, x in enumerate(row)] for row in T.table]
    values = {}
    for key in triples(N):
        char = [schur_character(h, *key) for h in hs]
        vec = []
        for i in range(T.size):
            s = Cyclotomic.rational(0)
            for j in range(T.size):
                s = s + conj[i][j] * char[j]
            m = (s * Fraction(1, T.group_order)).as_rational()
            if m is None or m.denominator != 1 or m < 0:
                raise OracleError(f"multiplicity of chi_{i} at {key} is {s}/{T.group_order}")
            vec.append(int(m))
        values[key] = vec
    return MultiplicityTable(N, values, "schur_character")


# -- key relation ----------------------------------------------------------------

def _matpoly_apply(terms, series, var, n):
    """Apply sum_k var^k * C_k (C_k integer matrices, or scalars) to a
    truncated vector series {(p,q,r): vec}; results beyond the known
    support are dropped by the caller."""
    out = {}
    for key, vec in series.items():
        for k, C in terms:
            if isinstance(C, int):
                new = [C * x for x in vec]
            else:
                new = _matvec(C, vec)
            if not any(new):
                continue
            nk = list(key)
            nk[var] += k
            nk = tuple(nk)
            acc = out.get(nk)
            out[nk] = new if acc is None else [a + b for a, b in zip(acc, new)]
    return out


def _mat_add(*pairs):
    """Linear combination sum c * C of square matrices."""
    n = len(pairs[0][1])
    return [[sum(c * C[i][j] for c, C in pairs) for j in range(n)] for i in range(n)]


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _mm(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def key_relation_operator(M):
    """The three operator polynomials acting on the series, as
    ``[(var, [(power, matrix), ...]), ...]``."""
    n = M.size
    I = _identity(n)
    A1, A2, A3 = ([list(r) for r in A] for A in (M.A1, M.A2, M.A3))
    op_t = [(0, I), (1, _mat_add((-1, A1))), (2, A2), (3, _mat_add((-1, A3))), (4, I)]
    op_w = [(0, I), (1, _mat_add((-1, A3))), (2, A2), (3, _mat_add((-1, A1))), (4, I)]
    # (1+u^2)(1-u^2)^2 - u(1-u^2)^2 A2 + u^2 (A1 - u A3)(A3 - u A1)
    P = _mm(A1, A3)
    sq = _mat_add((1, _mm(A1, A1)), (1, _mm(A3, A3)))
    op_u = [
        (0, I),
        (1, _mat_add((-1, A2))),
        (2, _mat_add((-1, I), (1, P))),
        (3, _mat_add((2, A2), (-1, sq))),
        (4, _mat_add((-1, I), (1, P))),
        (5, _mat_add((-1, A2))),
        (6, I),
    ]
    return [(0, op_t), (2, op_w), (1, op_u)]


@dataclass
class KeyRelationReport:
    N: int
    checked: int = 0
    mismatches: list = field(default_factory=list)
    method: str = ""

    @property
    def passed(self):
        return self.checked > 0 and not self.mismatches

    def lines(self):
        out = [f"key relation ({self.method}): {self.checked} monomials up to total degree "
               f"{self.N}, {len(self.mismatches)} mismatches"]
        for key, lhs, rhs in self.mismatches[:20]:
            out.append(f"  mismatch at t^{key[0]} u^{key[1]} w^{key[2]}: J e0 = {lhs}, rhs = {rhs}")
        return out


def key_relation_lhs(M):
    """Coefficient vectors of J(t, u, w) e_0 as {(p,q,r): vec}."""
    J = build_J(M)
    n = M.size
    out = {}
    for i in range(n):
        for key, c in J[i][0].terms.items():
            out.setdefault(key, [0] * n)[i] = int(c)
    return out


def key_relation_check(M, table, N=None):
    """Compare J e_0 with the operator product applied to the truncated
    series.  Every monomial of total degree <= N is exact, because the
    operators only raise exponents."""
    N = table.N if N is None else min(N, table.N)
    series = {k: list(v) for k, v in table.values.items() if sum(k) <= N}
    for var, terms in key_relation_operator(M):
        series = _matpoly_apply(terms, series, var, M.size)
        series = {k: v for k, v in series.items() if sum(k) <= N}
    lhs = key_relation_lhs(M)
    report = KeyRelationReport(N=N, method=table.method)
    zero = [0] * M.size
    for key in triples(N):
        want = lhs.get(key, zero)
        got = series.get(key, zero)
        report.checked += 1
        if list(want) != list(got):
            report.mismatches.append((key, want, got))
    return report
