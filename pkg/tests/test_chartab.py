import pytest

from sl4branch.chartab import (CharacterTable, CharacterTableError, check_against_group,
                               check_table, dixon_prime, format_table,
                               inverse_table, load_table, parse_table, save_table)
from sl4branch.exactnum import Cyclotomic, E


def test_dixon_prime():
    p = dixon_prime(60, 30)
    assert p % 30 == 1 and p > 2 * 7
    assert dixon_prime(1, 1) == 3


def test_orthogonality_and_degrees(group_data):
    T = group_data.T
    check_table(T)
    assert sum(d * d for d in T.degrees) == T.group_order
    assert T.table[0] == tuple([1] * T.size)


def test_typeII_degrees(type2):
    assert sorted(type2.T.degrees) == [1, 3, 3, 4, 5]
    assert type2.T.degrees == (1, 3, 3, 4, 5)
    golden = 1 + E(5) ** 2 + E(5) ** 3
    assert type2.T.table[1][4] == golden
    assert golden * golden == golden + 1  # the golden ratio


def test_cyclic4_table_is_fourier():
    from conftest import built
    T = built("cyclic4").T
    vals = {x for row in T.table for x in row}
    assert vals == {Cyclotomic.rational(1), Cyclotomic.rational(-1), E(4), -E(4)}


def test_inverse_table(group_data):
    T = group_data.T
    inv = inverse_table(T)
    n = T.size
    for i in range(n):
        for k in range(n):
            s = sum((inv[i][j] * T.table[j][k] for j in range(n)), Cyclotomic.rational(0))
            assert s == (1 if i == k else 0)


def test_power_map_consistency(group_data):
    check_against_group(group_data.T, group_data.G)


def test_save_load_round_trip(tmp_path, group_data):
    path = tmp_path / "t.tab"
    save_table(group_data.T, path)
    T2 = load_table(path, group_data.G)
    assert T2.same_as(group_data.T)
    assert parse_table(format_table(T2)).same_as(T2)


def _perturbed(T, i, j, delta):
    rows = [list(r) for r in T.table]
    rows[i][j] = rows[i][j] + delta
    return CharacterTable(tuple(map(tuple, rows)), T.class_sizes, T.class_orders, T.group_order)


def test_perturbed_table_rejected(type2):
    with pytest.raises(CharacterTableError, match="orthogonality"):
        check_table(_perturbed(type2.T, 4, 4, 1))
    with pytest.raises(CharacterTableError, match="trivial"):
        check_table(_perturbed(type2.T, 0, 2, 1))


def test_perturbed_table_file_rejected(tmp_path, type2):
    text = format_table(type2.T).replace("5 ; 1 ; -1 ; 0 ; 0", "5 ; 1 ; -1 ; 0 ; 1")
    with pytest.raises(CharacterTableError, match="orthogonality"):
        parse_table(text)


def test_table_for_wrong_group(tmp_path):
    from conftest import built
    path = tmp_path / "t.tab"
    save_table(built("cyclic4").T, path)
    with pytest.raises(CharacterTableError):
        load_table(path, built("typeII").G)


def test_galois_twisted_table_is_accepted(type2):
    # swapping the order-5 columns in both degree-3 rows is a Galois twist
    T = type2.T
    rows = [list(r) for r in T.table]
    rows[1][3], rows[1][4] = rows[1][4], rows[1][3]
    rows[2][3], rows[2][4] = rows[2][4], rows[2][3]
    swapped = CharacterTable(tuple(map(tuple, rows)), T.class_sizes, T.class_orders, 60)
    check_table(swapped)  # still a valid table up to relabelling
    check_against_group(swapped, type2.G)


@pytest.mark.parametrize("text", ["", "2\n1 1\n1 2\n1 ; 1\n", "1\n1\n1\n1 ; 1\n",
                                  "1\n1\n1\nE(\n", "2\n1 1\n1 2\n1 ; 1\n1 ; 1\n"])
def test_parse_table_errors(text):
    with pytest.raises(CharacterTableError):
        parse_table(text)
