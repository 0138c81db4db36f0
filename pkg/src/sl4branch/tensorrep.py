"""Tensor-product multiplicity matrices A1, A2, A3 and their eigenvalues.

``A1[i][j]`` is the multiplicity of gamma_i in gamma_j (x) V, ``A2`` uses the
exterior square of V and ``A3`` the dual V*.  The eigenvalue lists are indexed
by conjugacy class: on the character-table column of class j the three
matrices act by conj(chi(g_j)), (chi(g_j)^2 - chi(g_j^2)) / 2 and chi(g_j).
"""
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import Cyclotomic
from .matgroup import natural_character


class TensorMatrixError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TensorMatrices:
    A1: tuple
    A2: tuple
    A3: tuple
    L1: tuple
    L2: tuple
    L3: tuple
    chi: tuple            # natural character on classes

    @property
    def size(self):
        return len(self.A1)


def exterior_square_character(G, chi):
    """chi_wedge(g_j) = (chi(g_j)^2 - chi(g_j^2)) / 2 on every class."""
    return [(chi[j] * chi[j] - chi[G.power_class(j, 2)]) * Fraction(1, 2)
            for j in range(G.num_classes)]


def _multiplicity_matrix(T, psi):
    """M[i][j] = (chi_i | psi chi_j) as verified nonnegative integers."""
    n = T.size
    order = T.group_order
    conj = [[x.conjugate() for x in row] for row in T.table]
    weighted = [psi[k] * T.class_sizes[k] for k in range(n)]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = Cyclotomic.rational(0)
            for k in range(n):
                s = s + conj[i][k] * weighted[k] * T.table[j][k]
            v = (s * Fraction(1, order)).as_rational()
            if v is None or v.denominator != 1 or v < 0:
                raise TensorMatrixError(
                    f"multiplicity ({i},{j}) = {s * Fraction(1, order)} is not a "
                    "nonnegative integer; the character table is inconsistent")
            row.append(int(v))
        out.append(tuple(row))
    return tuple(out)


def build_tensor_matrices(T, G):
    chi = natural_character(G)
    wedge = exterior_square_character(G, chi)
    chi_bar = [x.conjugate() for x in chi]
    M = TensorMatrices(
        A1=_multiplicity_matrix(T, chi),
        A2=_multiplicity_matrix(T, wedge),
        A3=_multiplicity_matrix(T, chi_bar),
        L1=tuple(chi_bar), L2=tuple(wedge), L3=tuple(chi), chi=tuple(chi))
    failures = structural_checks(M, T)
    if failures:
        raise TensorMatrixError("; ".join(failures))
    return M


# -- integer matrix helpers --------------------------------------------------

def transpose(A):
    return tuple(zip(*A))


def matmul_int(A, B):
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in zip(*B)) for row in A)


def rank_int(A):
    m = [[Fraction(x) for x in row] for row in A]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        sel = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if sel is None:
            continue
        m[rank], m[sel] = m[sel], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def structural_checks(M, T):
    """List of violated structural properties (empty when all hold)."""
    bad = []
    if tuple(map(tuple, transpose(M.A1))) != M.A3:
        bad.append("A3 is not the transpose of A1")
    if tuple(map(tuple, transpose(M.A2))) != M.A2:
        bad.append("A2 is not symmetric")
    pairs = (("A1", M.A1, "A2", M.A2), ("A1", M.A1, "A3", M.A3), ("A2", M.A2, "A3", M.A3))
    for na, a, nb, b in pairs:
        if matmul_int(a, b) != matmul_int(b, a):
            bad.append(f"{na} and {nb} do not commute")
    for j in range(T.size):
        w = T.column(j)
        for name, A, lam in (("A1", M.A1, M.L1[j]), ("A2", M.A2, M.L2[j]), ("A3", M.A3, M.L3[j])):
            for i, row in enumerate(A):
                s = Cyclotomic.rational(0)
                for a, x in zip(row, w):
                    if a:
                        s = s + x * a
                if s != lam * w[i]:
                    bad.append(f"column {j} of the character table is not an eigenvector "
                               f"of {name} with eigenvalue {lam}")
                    break
    return bad


def format_int_matrix(A):
    width = max(len(str(x)) for row in A for x in row)
    return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in A)


def mckay_graph_export(M, name="mckay"):
    """Dot text for the McKay quiver: a1[i][j] edges j -> i."""
    lines = [f"digraph {name} {{"]
    n = M.size
    for v in range(n):
        lines.append(f"  {v};")
    for j in range(n):
        for i in range(n):
            for _ in range(M.A1[i][j]):
                lines.append(f"  {j} -> {i};")
    lines.append("}")
    return "\n".join(lines) + "\n"
