import pytest
from hypothesis import given, settings, strategies as st

from u2factor.field import GF, rationals, FieldMismatch
from u2factor.linalg import (Matrix, identity, diagonal, jordan_block,
                             direct_sum, direct_sum_all, kernel_basis,
                             charpoly, minpoly, char_min_poly,
                             unipotent_jordan, companion_similarity_2x2,
                             similarity_to_diagonal, find_diagonal_permutation,
                             parse_matrix_text, matrix_to_text,
                             Singular, SizeMismatch, NotUnipotent,
                             ScalarInput, SpectrumMismatch, LinalgError)
from u2factor.poly import Poly
from u2factor.sampling import random_sl


def mats(q, n):
    f = GF(q)
    elems = st.integers(0, q - 1)
    return st.lists(st.lists(elems, min_size=n, max_size=n),
                    min_size=n, max_size=n).map(
        lambda rows: Matrix.from_ints(f, rows))


class TestArithmetic:
    def test_matmul_and_inverse(self):
        f = GF(7)
        A = Matrix.from_ints(f, [[1, 2], [3, 4]])
        assert A.det() == f.element(1 * 4 - 2 * 3)
        assert A @ A.inverse() == identity(f, 2)

    def test_singular_inverse(self):
        f = GF(5)
        with pytest.raises(Singular):
            Matrix.from_ints(f, [[1, 2], [2, 4]]).inverse()

    def test_non_square_rejected(self):
        with pytest.raises(SizeMismatch):
            Matrix.from_ints(GF(5), [[1, 2, 3], [4, 5, 6]])

    def test_pow(self):
        f = GF(5)
        A = Matrix.from_ints(f, [[1, 1], [0, 1]])
        assert (A ** 3)[0, 1] == f.element(3)
        assert A ** -1 == A.inverse()

    def test_rank_nullity(self):
        f = GF(3)
        A = Matrix.from_ints(f, [[1, 2, 0], [0, 1, 0], [0, 0, 0]])
        assert A.rank() == 2 and A.nullity() == 1
        basis = kernel_basis(A)
        assert len(basis) == 1
        assert all(e.is_zero() for e in A.apply(basis[0]))

    @given(mats(5, 3), mats(5, 3))
    @settings(max_examples=50)
    def test_det_multiplicative(self, A, B):
        assert (A @ B).det() == A.det() * B.det()

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatch):
            identity(GF(5), 2) @ identity(GF(7), 2)


class TestPolynomials:
    @given(mats(7, 3))
    @settings(max_examples=40)
    def test_cayley_hamilton(self, A):
        assert charpoly(A)(A).is_zero()

    @given(mats(4, 3))
    @settings(max_examples=25)
    def test_minpoly_divides_charpoly(self, A):
        mp, cp = minpoly(A), charpoly(A)
        assert (cp % mp).is_zero()
        assert mp(A).is_zero()

    def test_charpoly_char2(self):
        # division-free: valid over GF(2)
        f = GF(2)
        A = Matrix.from_ints(f, [[0, 1, 0], [0, 0, 1], [1, 1, 0]])
        cp = charpoly(A)
        # companion of x^3 + x + 1 (signs collapse mod 2)
        assert list(c.rep for c in cp.coeffs) == [1, 1, 0, 1]

    def test_char_min_poly_lists(self):
        f = GF(5)
        A = diagonal(f, [f.element(2), f.element(2)])
        cp, mp = char_min_poly(A)
        assert len(mp) == 2 and len(cp) == 3  # minpoly x - 2, charpoly (x-2)^2

    def test_poly_from_roots(self):
        f = GF(7)
        roots = [f.element(2), f.element(3)]
        p = Poly.from_roots(f, roots)
        assert all(p(r).is_zero() for r in roots)


class TestJordan:
    def test_unipotent_jordan_recovers_partition(self, rng):
        f = GF(5)
        one = f.one()
        form = direct_sum_all([jordan_block(f, 3, one),
                               jordan_block(f, 2, one),
                               jordan_block(f, 1, one)])
        P = random_sl(f, 6, rng)
        jd = unipotent_jordan(P @ form @ P.inverse())
        assert jd.partition == (3, 2, 1)
        assert jd.form == form

    def test_identity_case(self):
        jd = unipotent_jordan(identity(GF(7), 4))
        assert jd.partition == (1, 1, 1, 1)

    def test_not_unipotent(self):
        f = GF(5)
        with pytest.raises(NotUnipotent):
            unipotent_jordan(diagonal(f, [f.element(2), f.element(3)]))

    def test_transform_exact(self):
        f = GF(4)
        A = jordan_block(f, 4, f.one())
        jd = unipotent_jordan(A)
        assert jd.transform @ A @ jd.transform.inverse() == jd.form

    def test_deterministic(self, rng):
        f = GF(7)
        A = random_sl(f, 4, rng)
        B = A @ jordan_block(f, 4, f.one()) @ A.inverse()
        assert unipotent_jordan(B).transform == unipotent_jordan(B).transform


class TestSimilarity:
    def test_companion_2x2(self):
        f = GF(7)
        A = Matrix.from_ints(f, [[2, 3], [1, 5]])
        P = companion_similarity_2x2(A)
        C = P @ A @ P.inverse()
        assert C[0, 0].is_zero() and C[1, 0] == f.one()
        assert C[1, 1] == A.trace() and C[0, 1] == -A.det()

    def test_companion_scalar_rejected(self):
        with pytest.raises(ScalarInput):
            companion_similarity_2x2(identity(GF(5), 2))

    def test_similarity_to_diagonal_with_repeats(self, rng):
        f = GF(7)
        entries = [f.element(2), f.element(4), f.element(2)]
        P0 = random_sl(f, 3, rng)
        A = P0 @ diagonal(f, entries) @ P0.inverse()
        P = similarity_to_diagonal(A, entries)
        assert P @ A @ P.inverse() == diagonal(f, entries)

    def test_similarity_spectrum_mismatch(self):
        f = GF(7)
        with pytest.raises(SpectrumMismatch):
            similarity_to_diagonal(identity(f, 2), [f.element(2), f.element(4)])

    def test_find_diagonal_permutation(self):
        f = GF(11)
        src = diagonal(f, [f.element(v) for v in (2, 6, 2, 3)])
        tgt = diagonal(f, [f.element(v) for v in (3, 2, 6, 2)])
        P = find_diagonal_permutation(src, tgt)
        assert P @ src @ P.inverse() == tgt

    def test_find_diagonal_permutation_mismatch(self):
        f = GF(5)
        with pytest.raises(LinalgError):
            find_diagonal_permutation(diagonal(f, [f.one(), f.element(2)]),
                                      diagonal(f, [f.one(), f.element(3)]))


class TestMatrixText:
    def test_round_trip(self):
        f = GF(9)
        A = Matrix(f, [[f.element((1, 2)), f.element((0, 1))],
                       [f.zero(), f.element((2, 2))]])
        assert parse_matrix_text(matrix_to_text(A)) == A

    def test_comments_and_inline_field(self):
        text = """# demo matrix
        GF(7)
        2
        0 6   # first row
        1 3
        """
        A = parse_matrix_text(text)
        assert A.field == GF(7)
        assert A[0, 1] == GF(7).element(6)

    def test_field_argument_mismatch(self):
        text = "GF(7)\n2\n1 0\n0 1\n"
        with pytest.raises(FieldMismatch):
            parse_matrix_text(text, GF(5))

    def test_field_from_argument_only(self):
        A = parse_matrix_text("2\n1 1/2\n0 1\n", rationals())
        assert A[0, 1].token() == "1/2"

    def test_empty_rejected(self):
        with pytest.raises(LinalgError):
            parse_matrix_text("# nothing here\n")
