import pytest

from u2factor.field import GF
from u2factor.linalg import Matrix, identity, jordan_block
from u2factor.oracle import (sl_order, enumerate_group, commutator_generators,
                             bfs_lengths, derived_subgroup,
                             check_trace_characterization, table_to_csv,
                             BudgetExceeded, UNREACHABLE)


class TestEnumeration:
    @pytest.mark.parametrize("q,n,order", [
        (2, 2, 6), (3, 2, 24), (4, 2, 60), (5, 2, 120),
        (7, 2, 336), (8, 2, 504), (9, 2, 720), (2, 3, 168),
    ])
    def test_orders(self, q, n, order):
        assert sl_order(q, n) == order
        table = enumerate_group(GF(q), n)
        assert len(table) == order

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
    def test_u2_census(self, q):
        table = enumerate_group(GF(q), 2)
        assert len(table.u2_ids) == q * q - 1

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            enumerate_group(GF(7), 3, budget=1000)

    def test_index_round_trip(self):
        table = enumerate_group(GF(3), 2)
        for eid, A in enumerate(table.elements):
            assert table.id_of(A) == eid


class TestCommutators:
    def test_gf2_generator_set(self):
        F = GF(2)
        table = enumerate_group(F, 2)
        gens = commutator_generators(table)
        A = Matrix.from_ints(F, [[0, 1], [1, 1]])
        expected = {table.id_of(identity(F, 2)), table.id_of(A),
                    table.id_of(A @ A)}
        assert gens == expected

    def test_gf3_generator_set_is_quaternion_minus(self):
        F = GF(3)
        table = enumerate_group(F, 2)
        gens = commutator_generators(table)
        derived = derived_subgroup(table)
        minus = table.id_of(Matrix.from_ints(F, [[2, 0], [0, 2]]))
        assert gens == frozenset(derived) - {minus}

    @pytest.mark.parametrize("q", [3, 4, 5])
    def test_no_nontrivial_scalar_commutator(self, q):
        F = GF(q)
        table = enumerate_group(F, 2)
        for eid in commutator_generators(table):
            A = table.elements[eid]
            assert not A.is_scalar() or A.is_identity()


class TestDerived:
    def test_gf2_derived(self):
        table = enumerate_group(GF(2), 2)
        assert len(derived_subgroup(table)) == 3

    def test_gf3_derived_is_quaternion(self):
        F = GF(3)
        table = enumerate_group(F, 2)
        derived = derived_subgroup(table)
        assert len(derived) == 8
        i = Matrix.from_ints(F, [[1, 1], [1, 2]])
        j = Matrix.from_ints(F, [[0, 1], [2, 0]])
        k = Matrix.from_ints(F, [[2, 1], [1, 1]])
        minus = Matrix.from_ints(F, [[2, 0], [0, 2]])
        # quaternion relations
        assert i @ i == minus and j @ j == minus and k @ k == minus
        assert i @ j == k and j @ i == minus @ k
        members = {table.id_of(M) for M in
                   (identity(F, 2), minus, i, j, k,
                    minus @ i, minus @ j, minus @ k)}
        assert members == set(derived)

    def test_gf4_derived_is_whole_group(self):
        table = enumerate_group(GF(4), 2)
        assert len(derived_subgroup(table)) == 60


class TestLengths:
    def test_gf3_minus_identity_length_two(self):
        F = GF(3)
        table = enumerate_group(F, 2)
        lengths = bfs_lengths(table)
        minus = table.id_of(Matrix.from_ints(F, [[2, 0], [0, 2]]))
        assert lengths[minus] == 2
        finite = [l for l in lengths if l != UNREACHABLE]
        assert max(finite) == 2

    def test_gf5_minus_identity_length_three(self):
        F = GF(5)
        table = enumerate_group(F, 2)
        lengths = bfs_lengths(table)
        minus = table.id_of(Matrix.from_ints(F, [[4, 0], [0, 4]]))
        assert lengths[minus] == 3

    def test_gf2_unreachable(self):
        F = GF(2)
        table = enumerate_group(F, 2)
        lengths = bfs_lengths(table)
        j2 = table.id_of(jordan_block(F, 2, F.one()))
        assert lengths[j2] == UNREACHABLE
        finite = [l for l in lengths if l != UNREACHABLE]
        assert len(finite) == 3 and max(finite) == 1

    @pytest.mark.parametrize("q", [3, 4, 5])
    def test_length_symmetric_under_inverse(self, q):
        table = enumerate_group(GF(q), 2)
        lengths = bfs_lengths(table)
        for eid, A in enumerate(table.elements):
            assert lengths[eid] == lengths[table.id_of(A.inverse())]


class TestTraceCheck:
    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    def test_characterization(self, q):
        table = enumerate_group(GF(q), 2)
        assert check_trace_characterization(table).passed

    def test_gf5_length_one_traces(self):
        F = GF(5)
        table = enumerate_group(F, 2)
        lengths = bfs_lengths(table)
        traces = {table.elements[eid].trace().rep
                  for eid, l in enumerate(lengths)
                  if l == 1 and not table.elements[eid].is_scalar()}
        assert traces == {1, 3}  # 2 + {1, 4} mod 5


class TestCsv:
    def test_csv_shape(self):
        table = enumerate_group(GF(3), 2)
        text = table_to_csv(table)
        lines = text.strip().split("\n")
        assert lines[0] == "id,matrix,trace,is_u2,bfs_length"
        assert len(lines) == 25  # header + 24 elements
        assert text == table_to_csv(table)  # deterministic
