"""Irreducible character tables.

Tables come either from Dixon's modular method applied to the class
multiplication coefficients, or from a text file.  Every table is checked
against both orthogonality relations in exact arithmetic before it is
returned.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .exactnum import Cyclotomic, parse_scalar, format_scalar, ScalarParseError, factorize
from .matgroup import class_mult_coeffs


class CharacterTableError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CharacterTable:
    table: tuple          # table[i][j] = chi_i(g_j)
    class_sizes: tuple
    class_orders: tuple
    group_order: int

    @property
    def size(self):
        return len(self.table)

    @property
    def degrees(self):
        return tuple(int(row[0].as_rational()) for row in self.table)

    def column(self, j):
        return [row[j] for row in self.table]

    def same_as(self, other):
        return (self.class_sizes == other.class_sizes
                and self.class_orders == other.class_orders
                and all(a == b for ra, rb in zip(self.table, other.table)
                        for a, b in zip(ra, rb)))


# -- prime field helpers ---------------------------------------------------

def _is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


def dixon_prime(order, exponent, bound=10 ** 7):
    """Smallest prime p = 1 mod exponent with p > 2 floor(sqrt(order))."""
    p = exponent + 1
    floor = 2 * isqrt(order)
    while p <= bound:
        if p > floor and _is_prime(p):
            return p
        p += exponent
    raise CharacterTableError(f"no Dixon prime below {bound} for exponent {exponent}")


def _primitive_root(p):
    fac = list(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    return 1


def _nullspace_mod(rows, ncols, p):
    """Basis (list of vectors) of {x : rows x = 0} over GF(p)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][fc]) % p
        basis.append(v)
    return basis


def _matvec_cols(M, S, p):
    # M (r x r) times each column vector in S
    return [[sum(M[i][k] * s[k] for k in range(len(s))) % p for i in range(len(M))] for s in S]


def _split_space(M, S, p):
    """Split the M-invariant span of vectors S into eigenspaces of M."""
    d = len(S)
    MS = _matvec_cols(M, S, p)
    pieces = []
    found = 0
    for lam in range(p):
        # (M - lam) S c = 0 ; columns of the system are the vectors M s - lam s
        cols = [[(a - lam * b) % p for a, b in zip(ms, s)] for ms, s in zip(MS, S)]
        rows = [[cols[c][i] for c in range(d)] for i in range(len(M))]
        null = _nullspace_mod(rows, d, p)
        if null:
            vecs = [[sum(c[t] * S[t][i] for t in range(d)) % p for i in range(len(M))]
                    for c in null]
            pieces.append(vecs)
            found += len(vecs)
            if found == d:
                break
    if found != d:
        raise CharacterTableError("class matrix not diagonalizable mod p")
    return pieces


def dixon_character_table(G):
    """Character table by the Burnside-Dixon method."""
    r = G.num_classes
    order = G.order
    e = G.exponent
    p = dixon_prime(order, e)
    sizes = G.class_sizes

    spaces = [[[1 if i == j else 0 for i in range(r)] for j in range(r)]]
    for ci in range(1, r):
        if all(len(s) == 1 for s in spaces):
            break
        M = class_mult_coeffs(G, ci)
        new = []
        for S in spaces:
            new.extend([S] if len(S) == 1 else _split_space(M, S, p))
        spaces = new
    if len(spaces) != r or any(len(s) != 1 for s in spaces):
        raise CharacterTableError("could not separate the irreducible characters")

    inv_class = [G.class_of[G.inverse[rep]] for rep in G.class_reps]
    z = pow(_primitive_root(p), (p - 1) // e, p)
    inv_e = pow(e, p - 2, p)
    rows = []
    for (vec,) in spaces:
        # omega_k = |C_k| chi(g_k) / chi(1); vec is omega up to scale
        if vec[0] % p == 0:
            raise CharacterTableError("eigenvector vanishes on the identity class")
        s = pow(vec[0], p - 2, p)
        omega = [(x * s) % p for x in vec]
        theta = [(omega[k] * pow(sizes[k], p - 2, p)) % p for k in range(r)]
        norm = sum(sizes[k] * theta[k] * theta[inv_class[k]] for k in range(r)) % p
        d2 = (order * pow(norm, p - 2, p)) % p
        degree = next((d for d in range(1, isqrt(order) + 1) if (d * d) % p == d2), None)
        if degree is None:
            raise CharacterTableError("no degree lifts the modular norm")
        chi_mod = [(degree * t) % p for t in theta]
        row = []
        for k in range(r):
            # eigenvalue multiplicities of the representing matrix on g_k
            vals = [chi_mod[G.power_class(k, l)] for l in range(e)]
            total = Cyclotomic.rational(0)
            mults = []
            for s_ in range(e):
                mu = sum(vals[l] * pow(z, (-s_ * l) % e, p) for l in range(e)) * inv_e % p
                mults.append(mu)
            if sum(mults) != degree:
                raise CharacterTableError("eigenvalue multiplicities do not lift")
            for s_, mu in enumerate(mults):
                if mu:
                    total = total + Cyclotomic.zeta(e, s_) * mu
            row.append(total.normalize())
        rows.append(tuple(row))

    orders = tuple(G.class_order(j) for j in range(r))
    table = CharacterTable(tuple(_canonical_rows(rows)), tuple(sizes), orders, order)
    check_table(table)
    return table


def _row_key(row):
    return (int(row[0].as_rational()), tuple(x.coeffs for x in row))


def _canonical_rows(rows):
    trivial = [row for row in rows if all(x == 1 for x in row)]
    if len(trivial) != 1:
        raise CharacterTableError("trivial character missing from the table")
    rest = [row for row in rows if row is not trivial[0]]
    m = 1
    for row in rows:
        for x in row:
            m = m * x.order // gcd(m, x.order)
    rest.sort(key=lambda row: _row_key([x.lift(m) for x in row]))
    return [trivial[0]] + rest


def check_table(T):
    """Raise CharacterTableError unless both orthogonality relations and the
    degree-sum identity hold exactly."""
    n = T.size
    if any(len(row) != n for row in T.table) or len(T.class_sizes) != n:
        raise CharacterTableError("character table is not square")
    if sum(T.class_sizes) != T.group_order:
        raise CharacterTableError("class sizes do not sum to the group order")
    for row in T.table:
        d = row[0].as_rational()
        if d is None or d.denominator != 1 or d <= 0:
            raise CharacterTableError(f"degree {row[0]} is not a positive integer")
    if not all(x == 1 for x in T.table[0]):
        raise CharacterTableError("row 0 is not the trivial character")
    conj = [[x.conjugate() for x in row] for row in T.table]
    for i in range(n):
        for k in range(i, n):
            s = Cyclotomic.rational(0)
            for j in range(n):
                s = s + T.table[i][j] * conj[k][j] * T.class_sizes[j]
            want = T.group_order if i == k else 0
            if s != want:
                raise CharacterTableError(
                    f"row orthogonality fails for characters {i},{k}: got {s}, want {want}")
    for j in range(n):
        for k in range(j, n):
            s = Cyclotomic.rational(0)
            for i in range(n):
                s = s + conj[i][j] * T.table[i][k]
            want = Fraction(T.group_order, T.class_sizes[j]) if j == k else 0
            if s != want:
                raise CharacterTableError(
                    f"column orthogonality fails for classes {j},{k}: got {s}, want {want}")
    if sum(d * d for d in T.degrees) != T.group_order:
        raise CharacterTableError("sum of squared degrees differs from the group order")


def check_against_group(T, G):
    if T.size != G.num_classes:
        raise CharacterTableError(f"table has {T.size} classes, group has {G.num_classes}")
    if T.group_order != G.order:
        raise CharacterTableError("table group order does not match the group")
    if list(T.class_sizes) != list(G.class_sizes):
        raise CharacterTableError("class sizes do not match the group")
    orders = [G.class_order(j) for j in range(G.num_classes)]
    if list(T.class_orders) != orders:
        raise CharacterTableError("class representative orders do not match the group")
    # class functions must respect the power map: chi(g^k) = sigma_k(chi(g))
    for row in T.table:
        for j in range(T.size):
            o = orders[j]
            for k in range(2, o):
                if gcd(k, o) == 1:
                    x = row[j]
                    m = x.order * o // gcd(x.order, o)
                    if x.lift(m).galois(_coprime_lift(k, o, m)) != row[G.power_class(j, k)]:
                        raise CharacterTableError(
                            f"table is inconsistent with the power map at class {j}")


def _coprime_lift(k, o, m):
    # an integer = k mod o and coprime to m
    while gcd(k, m) != 1:
        k += o
    return k


def inverse_table(T):
    """T^{-1} from column orthogonality: (T^-1)_{jk} = |C_j| conj(chi_k(g_j)) / |G|."""
    n = T.size
    inv = [[T.table[k][j].conjugate() * Fraction(T.class_sizes[j], T.group_order)
            for k in range(n)] for j in range(n)]
    for i in range(n):
        for k in range(n):
            s = Cyclotomic.rational(0)
            for j in range(n):
                s = s + T.table[i][j] * inv[j][k]
            if s != (1 if i == k else 0):
                raise CharacterTableError("character table fails to invert; orthogonality violated")
    return inv


# -- text format -------------------------------------------------------------

def format_table(T):
    lines = [str(T.size),
             " ".join(str(s) for s in T.class_sizes),
             " ".join(str(o) for o in T.class_orders)]
    for row in T.table:
        lines.append(" ; ".join(format_scalar(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_table(text, source="<table>"):
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    try:
        n = int(lines[0])
        sizes = tuple(int(x) for x in lines[1].split())
        orders = tuple(int(x) for x in lines[2].split())
        if len(sizes) != n or len(orders) != n or len(lines) != 3 + n:
            raise CharacterTableError(f"{source}: expected {n} classes and {n} rows")
        rows = []
        for ln in lines[3:]:
            cells = [c for c in ln.split(";")]
            if len(cells) != n:
                raise CharacterTableError(f"{source}: row has {len(cells)} entries, want {n}")
            rows.append(tuple(parse_scalar(c) for c in cells))
    except (IndexError, ValueError, ScalarParseError) as exc:
        if isinstance(exc, CharacterTableError):
            raise
        raise CharacterTableError(f"{source}: cannot parse character table: {exc}") from None
    T = CharacterTable(tuple(rows), sizes, orders, sum(sizes))
    check_table(T)
    return T


def save_table(T, path):
    with open(path, "w") as fh:
        fh.write(format_table(T))


def load_table(path, G=None):
    with open(path) as fh:
        T = parse_table(fh.read(), source=str(path))
    if G is not None:
        check_against_group(T, G)
    return T
