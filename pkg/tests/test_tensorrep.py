import pytest

from sl4branch.matgroup import natural_character
from sl4branch.tensorrep import (TensorMatrices, TensorMatrixError, exterior_square_character,
                                 mckay_graph_export, rank_int, structural_checks, transpose,
                                 build_tensor_matrices)

A1_TYPEII = ((0, 0, 0, 1, 0), (0, 0, 1, 1, 1), (0, 1, 0, 1, 1), (1, 1, 1, 1, 1), (0, 1, 1, 1, 2))
A2_TYPEII = ((0, 1, 1, 0, 0), (1, 1, 0, 1, 2), (1, 0, 1, 1, 2), (0, 1, 1, 2, 2), (0, 2, 2, 2, 2))


def test_typeII_matrices(type2):
    M = type2.M
    assert M.A1 == A1_TYPEII
    assert M.A3 == A1_TYPEII
    assert M.A2 == A2_TYPEII
    assert sorted(M.L1, key=str) == sorted([4, 0, -1, 1, -1], key=str)
    assert sorted(M.L2, key=str) == sorted([6, -2, 1, 0, 1], key=str)
    assert rank_int(M.A1) == rank_int(M.A2) == 4


def test_structure(group_data):
    M, T = group_data.M, group_data.T
    assert structural_checks(M, T) == []
    assert tuple(map(tuple, transpose(M.A1))) == M.A3
    # row sums weighted by degrees: A1 applied to degrees gives 4 * degrees
    d = T.degrees
    for i in range(M.size):
        assert sum(M.A1[i][j] * d[j] for j in range(M.size)) == 4 * d[i]
        assert sum(M.A2[i][j] * d[j] for j in range(M.size)) == 6 * d[i]


def test_exterior_square_uses_minus_sign(group_data):
    G = group_data.G
    chi = natural_character(G)
    wedge = exterior_square_character(G, chi)
    assert wedge[0] == 6
    for j in range(G.num_classes):
        assert wedge[j] == (chi[j] * chi[j] - chi[G.power_class(j, 2)]) / 2


def test_corrupted_matrices_are_flagged(type2):
    M = type2.M
    bad_a2 = [list(r) for r in M.A2]
    bad_a2[0][1] += 1
    broken = TensorMatrices(M.A1, tuple(map(tuple, bad_a2)), M.A3, M.L1, M.L2, M.L3, M.chi)
    fails = structural_checks(broken, type2.T)
    assert any("symmetric" in f for f in fails)
    assert any("eigenvector" in f for f in fails)


def test_row_relabelling_permutes_matrices(type2):
    from sl4branch.chartab import CharacterTable
    T = type2.T
    rows = list(T.table)
    rows[1], rows[3] = rows[3], rows[1]
    swapped = CharacterTable(tuple(rows), T.class_sizes, T.class_orders, 60)
    M = build_tensor_matrices(swapped, type2.G)
    perm = [0, 3, 2, 1, 4]
    assert M.A1 == tuple(tuple(type2.M.A1[perm[i]][perm[j]] for j in range(5)) for i in range(5))


def test_duplicated_row_rejected(type2):
    from sl4branch.chartab import CharacterTable
    T = type2.T
    rows = list(T.table)
    rows[4] = rows[3]
    dup = CharacterTable(tuple(rows), T.class_sizes, T.class_orders, 60)
    with pytest.raises(TensorMatrixError):
        build_tensor_matrices(dup, type2.G)


def test_mckay_graph(type2):
    dot = mckay_graph_export(type2.M, "typeII")
    assert dot.startswith("digraph typeII {")
    edges = [ln for ln in dot.splitlines() if "->" in ln]
    assert len(edges) == sum(map(sum, type2.M.A1))
    assert "  3 -> 0;" in edges
