import pytest

from src.core.domain.errors import RMatrixParseError, RMatrixValidationError
from src.core.domain.rmatrix import (
    BRAID,
    HECKE,
    SKEW,
    check_braid,
    check_hecke,
    dj_candidate,
    dj_rmatrix,
    dump_rmatrix,
    evaluate_entries,
    load_rmatrix,
    parse_rmatrix,
    permutation_rmatrix,
    validate,
)
from src.core.domain.scalars import ScalarField
from src.core.domain.tensorspace import TensorMat, embed_at, perm_matrix, trace_slots

F = ScalarField.symbolic()


class TestDrinfeldJimbo:
    """Test cases for the standard Hecke R-matrix"""

    @pytest.mark.parametrize("N", [1, 2, 3])
    def test_all_flags_hold(self, N):
        r = dj_rmatrix(F, N)
        assert r.flags == {BRAID: True, HECKE: True, SKEW: True}
        assert r.is_valid
        assert r.require_valid() is r

    def test_specialized_field(self):
        r = dj_rmatrix(ScalarField.specialized(2), 2)
        assert r.is_valid

    def test_entries(self):
        op = dj_candidate(F, 2)
        assert op.entry((1, 1), (1, 1)).constant_term() == F.q
        assert op.entry((1, 2), (2, 1)).constant_term() == F.one
        assert op.entry((1, 2), (1, 2)).constant_term() == F.omega
        assert op.entry((2, 1), (2, 1)).is_zero()

    def test_hecke_inverse(self, dj2):
        assert dj2.op @ dj2.inverse_op == TensorMat.identity(F, 2, 2)
        assert dj2.inverse_op == dj2.op.shift(-F.omega)

    def test_one_dimensional_skew_inverse(self, dj1):
        assert dj1.skew.psi.entry((1, 1), (1, 1)).constant_term() == F.q_inv
        assert dj1.weights.entry((1,), (1,)).constant_term() == F.q_inv

    def test_weights_for_two_dimensions(self, dj2):
        c = dj2.weights
        assert c.entry((1,), (1,)).constant_term() == F.power(-3)
        assert c.entry((2,), (2,)).constant_term() == F.power(-1)
        assert c.nnz == 2
        assert dj2.skew.quantum_dimension() == F.power(-3) + F.power(-1)

    def test_weights_normalise_the_r_trace(self, dj2):
        traced = trace_slots(dj2.op @ embed_at(dj2.weights, 2, 2), [2])
        assert traced == TensorMat.identity(F, 2, 1)

    def test_degenerates_to_flip_at_one(self, dj2):
        flip = perm_matrix(1, 2, 2, 2, F)
        assert evaluate_entries(dj2.op, 1) == {key: 1 for key in flip.entries}

    def test_describe(self, dj2):
        assert dj2.describe().endswith("braid=ok, hecke=ok, skew=ok")


class TestPermutation:
    def test_flip_is_not_hecke(self):
        r = permutation_rmatrix(F, 2)
        assert r.braid_ok
        assert not r.hecke_ok
        assert HECKE in r.witnesses
        assert not r.is_valid

    def test_require_valid_names_the_flag(self):
        r = permutation_rmatrix(F, 2)
        with pytest.raises(RMatrixValidationError) as error:
            r.require_valid()
        assert error.value.flag == HECKE

    def test_flip_skew_inverse(self):
        r = permutation_rmatrix(F, 2)
        assert r.skew_ok
        assert r.skew.psi == perm_matrix(1, 2, 2, 2, F)
        assert r.weights == TensorMat.identity(F, 2, 1)

    def test_checks_return_witnesses(self):
        flip = perm_matrix(1, 2, 2, 2, F)
        assert check_braid(flip) is None
        witness = check_hecke(flip)
        assert witness is not None
        assert witness.startswith("entry (11,11)")

    def test_validate_does_not_raise_on_a_non_braid(self):
        rows = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
        op = TensorMat.from_rows(F, 2, 2, rows)
        r = validate(op)
        assert not r.braid_ok or not r.hecke_ok


class TestRMatrixFiles:
    """Test cases for the R-matrix file format"""

    def test_dump_header_and_lines(self, dj1):
        assert dump_rmatrix(dj1) == "N 1 q q\n1 1 1 1 q\n"

    def test_roundtrip(self, dj2):
        assert parse_rmatrix(dump_rmatrix(dj2), F) == dj2.op

    def test_comments_and_blank_lines(self):
        text = "# flip\nN 1 q q\n\n1 1 1 1 1  # only entry\n"
        assert parse_rmatrix(text, F) == TensorMat.identity(F, 1, 2)

    def test_bad_header(self):
        with pytest.raises(RMatrixParseError) as error:
            parse_rmatrix("1 1 1 1 q\n", F)
        assert error.value.line == 1

    def test_index_out_of_range(self):
        with pytest.raises(RMatrixParseError) as error:
            parse_rmatrix("N 1 q q\n1 1 1 2 q\n", F)
        assert error.value.line == 2

    def test_duplicate_entry(self):
        with pytest.raises(RMatrixParseError):
            parse_rmatrix("N 1 q q\n1 1 1 1 q\n1 1 1 1 q\n", F)

    def test_header_q_must_match_the_session(self):
        with pytest.raises(RMatrixParseError):
            parse_rmatrix("N 1 q 2\n1 1 1 1 2\n", F)

    def test_empty_file(self):
        with pytest.raises(RMatrixParseError):
            parse_rmatrix("# nothing\n", F)

    def test_load_from_disk(self, tmp_path, dj2):
        path = tmp_path / "dj2.rmat"
        path.write_text(dump_rmatrix(dj2))
        r = load_rmatrix(path, F)
        assert r.is_valid
        assert r.source == str(path)
        assert r.op == dj2.op

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(RMatrixParseError):
            load_rmatrix(tmp_path / "missing.rmat", F)
