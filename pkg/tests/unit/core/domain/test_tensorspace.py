import pytest

from src.core.domain.algebras import gen_matrix
from src.core.domain.errors import (
    FieldMismatchError,
    SingularOperatorError,
    TensorShapeError,
)
from src.core.domain.ncpoly import GenKind
from src.core.domain.rmatrix import permutation_rmatrix
from src.core.domain.scalars import ScalarField
from src.core.domain.tensorspace import (
    TensorMat,
    bar_conjugate,
    braid_factors,
    basis,
    embed_at,
    embed_block,
    format_index,
    inverse,
    perm_matrix,
    r_trace,
    trace_slots,
)
from tests.conftest import letter

F = ScalarField.symbolic()


class TestBasis:
    def test_row_major_slot_one_outermost(self):
        assert basis(2, 2) == [(1, 1), (1, 2), (2, 1), (2, 2)]

    def test_format_index(self):
        assert format_index((1, 2)) == "12"
        assert format_index(()) == "-"


class TestTensorMat:
    """Test cases for sparse operator arithmetic"""

    def test_identity_and_zero(self):
        ident = TensorMat.identity(F, 2, 2)
        assert ident.nnz == 4
        assert TensorMat.zero(F, 2, 2).is_zero()
        assert ident @ ident == ident

    def test_from_rows(self):
        a = TensorMat.from_rows(F, 2, 1, [[1, 2], [0, 3]])
        assert a.entry((1,), (2,)).constant_term() == F.convert(2)
        assert a.nnz == 3
        assert a.scalar_rows()[1] == [F.zero, F.convert(3)]

    def test_from_rows_rejects_bad_shape(self):
        with pytest.raises(TensorShapeError):
            TensorMat.from_rows(F, 2, 1, [[1, 2]])

    def test_product_keeps_entry_order(self):
        x, d = gen_matrix(GenKind.X, 1, F), gen_matrix(GenKind.D_CL, 1, F)
        product = x @ d
        expected = letter(F, GenKind.X) * letter(F, GenKind.D_CL)
        assert product.entry((1,), (1,)) == expected

    def test_shape_mismatch(self):
        with pytest.raises(TensorShapeError):
            TensorMat.identity(F, 2, 1) @ TensorMat.identity(F, 2, 2)

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatchError):
            TensorMat.identity(F, 2, 1) @ TensorMat.identity(
                ScalarField.specialized(2), 2, 1
            )

    def test_shift(self):
        a = TensorMat.zero(F, 2, 1).shift(3)
        assert a == TensorMat.identity(F, 2, 1).scale(F.convert(3))

    def test_scalar_multiplication_operators(self):
        a = TensorMat.identity(F, 2, 1)
        assert 2 * a == a + a
        assert a * 2 == a + a

    def test_dump(self):
        x = gen_matrix(GenKind.X, 2, F)
        lines = embed_at(x, 1, 2).dump().splitlines()
        assert lines[0] == "11 11 x11"
        assert "11 21 x12" in lines
        assert len(lines) == 8

    def test_degree_and_scalar(self):
        x = gen_matrix(GenKind.X, 2, F)
        assert x.degree() == 1
        assert not x.is_scalar()
        assert TensorMat.identity(F, 2, 1).is_scalar()


class TestEmbeddings:
    def test_embed_at_first_slot(self):
        x = gen_matrix(GenKind.X, 2, F)
        x1 = embed_at(x, 1, 2)
        assert x1.entry((1, 1), (2, 1)) == letter(F, GenKind.X, 1, 2)
        assert x1.entry((1, 1), (2, 2)).is_zero()

    def test_embed_at_second_slot(self):
        x = gen_matrix(GenKind.X, 2, F)
        x2 = embed_at(x, 2, 2)
        assert x2.entry((2, 1), (2, 2)) == letter(F, GenKind.X, 1, 2)

    def test_embed_block_out_of_range(self):
        with pytest.raises(TensorShapeError):
            embed_block(TensorMat.identity(F, 2, 2), 2, 2)

    @pytest.mark.parametrize("i, j", [(1, 2), (1, 3), (2, 3), (3, 1)])
    def test_disjoint_slots_commute(self, i, j):
        x = embed_at(gen_matrix(GenKind.X, 2, F), i, 3)
        b = embed_at(TensorMat.from_rows(F, 2, 1, [[1, F.q], [2, 3]]), j, 3)
        assert x @ b == b @ x

    def test_shared_slot_does_not_commute(self):
        x = embed_at(gen_matrix(GenKind.X, 2, F), 1, 2)
        b = embed_at(TensorMat.from_rows(F, 2, 1, [[1, 2], [0, 1]]), 1, 2)
        assert x @ b != b @ x


class TestPermutations:
    def test_flip_entries(self):
        p = perm_matrix(1, 2, 2, 2, F)
        assert p.entry((1, 2), (2, 1)).constant_term() == F.one
        assert p.entry((1, 2), (1, 2)).is_zero()
        assert p @ p == TensorMat.identity(F, 2, 2)

    def test_flip_satisfies_braid_relation(self):
        p12 = perm_matrix(1, 2, 3, 2, F)
        p23 = perm_matrix(2, 3, 3, 2, F)
        assert p12 @ p23 @ p12 == p23 @ p12 @ p23
        assert p12 @ p23 @ p12 == perm_matrix(1, 3, 3, 2, F)

    def test_invalid_transposition(self):
        with pytest.raises(TensorShapeError):
            perm_matrix(1, 1, 2, 2, F)


class TestTraces:
    def test_partial_trace_of_identity(self):
        traced = trace_slots(TensorMat.identity(F, 3, 2), [2])
        assert traced == TensorMat.identity(F, 3, 1).scale(F.convert(3))

    def test_partial_trace_of_flip(self):
        p = perm_matrix(1, 2, 2, 3, F)
        assert trace_slots(p, [2]) == TensorMat.identity(F, 3, 1)
        assert trace_slots(p, [1, 2]).as_element().constant_term() == F.convert(3)

    def test_full_trace_is_an_element(self):
        x = gen_matrix(GenKind.X, 2, F)
        trace = trace_slots(x, [1]).as_element()
        assert trace == letter(F, GenKind.X, 1, 1) + letter(F, GenKind.X, 2, 2)

    def test_r_trace_with_unit_weights(self):
        x = embed_at(gen_matrix(GenKind.X, 2, F), 1, 2)
        ident = TensorMat.identity(F, 2, 1)
        assert r_trace(x, [1, 2], ident) == trace_slots(x, [1, 2])

    def test_trace_slot_out_of_range(self):
        with pytest.raises(TensorShapeError):
            trace_slots(TensorMat.identity(F, 2, 1), [2])


class TestBarConjugation:
    def test_flip_moves_the_copy(self):
        flip = permutation_rmatrix(F, 2)
        x = gen_matrix(GenKind.X, 2, F)
        assert bar_conjugate(x, 2, 3, flip) == embed_at(x, 2, 3)
        assert bar_conjugate(x, 3, 3, flip) == embed_at(x, 3, 3)
        assert bar_conjugate(x, 1, 3, flip) == embed_at(x, 1, 3)

    @pytest.mark.parametrize("kslot", [1, 2, 3])
    def test_conjugating_back_restores_the_first_copy(self, dj2, kslot):
        m = gen_matrix(GenKind.M, 2, F)
        factors = braid_factors(dj2, 3)
        result = bar_conjugate(m, kslot, 3, dj2, factors)
        for r_i, r_i_inv in reversed(factors[: kslot - 1]):
            result = r_i_inv @ result @ r_i
        assert result == embed_at(m, 1, 3)

    def test_second_copy_differs_from_the_plain_embedding(self, dj2):
        m = gen_matrix(GenKind.M, 2, F)
        assert bar_conjugate(m, 2, 2, dj2) != embed_at(m, 2, 2)

    @pytest.mark.parametrize("kslot", [1, 2, 3])
    def test_one_dimension_is_unchanged(self, dj1, kslot):
        m = gen_matrix(GenKind.M, 1, F)
        assert bar_conjugate(m, kslot, 3, dj1) == embed_at(m, 1, 3)


class TestInverse:
    def test_inverse_of_triangular(self):
        a = TensorMat.from_rows(F, 2, 1, [[1, 2], [0, 1]])
        assert inverse(a) == TensorMat.from_rows(F, 2, 1, [[1, -2], [0, 1]])

    def test_inverse_with_q(self):
        a = TensorMat.identity(F, 2, 1).scale(F.q)
        assert inverse(a) == TensorMat.identity(F, 2, 1).scale(F.q_inv)

    def test_singular(self):
        with pytest.raises(SingularOperatorError):
            inverse(TensorMat.from_rows(F, 2, 1, [[1, 1], [1, 1]]))
