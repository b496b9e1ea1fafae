import pytest

from src.core.domain.errors import FieldMismatchError
from src.core.domain.ncpoly import (
    DEGLEX,
    EMPTY_WORD,
    GenId,
    GenKind,
    MonomialOrder,
    NCPoly,
    commutator,
    format_word,
    nc_mul,
    nc_sum,
    specialize,
)
from src.core.domain.scalars import ScalarField
from tests.conftest import letter

F = ScalarField.symbolic()


class TestGenId:
    def test_code_roundtrip(self):
        gen = GenId(GenKind.D_Q, 2, 1)
        assert gen.code == 510
        assert GenId.from_code(gen.code) == gen

    def test_string_form(self):
        assert str(GenId(GenKind.X, 1, 2)) == "x12"
        assert str(GenId(GenKind.LHAT, 2, 2)) == "l22"

    def test_kind_precedence(self):
        kinds = (GenKind.LHAT, GenKind.X, GenKind.M, GenKind.D_CL, GenKind.D_Q)
        codes = [GenId(kind, 1, 1).code for kind in kinds]
        assert codes == sorted(codes)

    def test_format_word(self):
        x, d = GenId(GenKind.X, 1, 1), GenId(GenKind.D_CL, 1, 1)
        assert format_word((x.code, d.code)) == "x11*d11"
        assert format_word(EMPTY_WORD) == "1"


class TestNCPoly:
    """Test cases for free algebra arithmetic"""

    def setup_method(self):
        self.x = letter(F, GenKind.X)
        self.d = letter(F, GenKind.D_CL)
        self.m = letter(F, GenKind.M, 1, 2)

    def test_product_is_concatenation(self):
        p = nc_mul(self.x, self.d)
        assert p.terms == {(self.x.leading()[0][0], self.d.leading()[0][0]): F.one}

    def test_product_is_not_commutative(self):
        assert self.x * self.d != self.d * self.x
        assert commutator(self.x, self.d) == self.x * self.d - self.d * self.x

    def test_unit(self):
        one = NCPoly.constant(F, 1)
        p = self.x * self.d + 3
        assert one * p == p
        assert p * one == p

    def test_bilinearity(self):
        a, b, c = self.x + 2, self.d - self.m, self.m * self.x
        assert (a + b) * c == a * c + b * c
        assert c * (a + b) == c * a + c * b

    def test_associativity(self):
        a, b, c = self.x + self.d, self.m - 1, self.d * self.x
        assert (a * b) * c == a * (b * c)

    def test_cancellation_drops_terms(self):
        p = self.x * self.d - self.x * self.d
        assert p.is_zero()
        assert not p
        assert p == 0

    def test_scalar_multiplication(self):
        p = (self.x + 1).scale(F.q)
        assert p.constant_term() == F.q
        assert (self.x * 0).is_zero()

    def test_degree(self):
        assert NCPoly.zero(F).degree() == -1
        assert NCPoly.constant(F, 5).degree() == 0
        assert (self.x * self.d * self.x + self.m).degree() == 3

    def test_leading_term_under_deglex(self):
        p = self.x * self.d + self.d * self.x + self.m
        word, coeff = p.leading(DEGLEX)
        assert word == (self.d.leading()[0][0], self.x.leading()[0][0])
        assert coeff == F.one

    def test_custom_precedence(self):
        x_code, d_code = GenId(GenKind.X, 1, 1).code, GenId(GenKind.D_CL, 1, 1).code
        order = MonomialOrder((d_code, x_code))
        p = self.x * self.d + self.d * self.x
        assert p.leading(order)[0] == (x_code, d_code)
        assert order.describe() == f"deglex:{d_code},{x_code}"

    def test_format(self):
        p = self.d * self.x - self.x * self.d + 1
        assert p.format() == "d11*x11 - x11*d11 + 1"

    def test_format_with_coefficient(self):
        assert (self.x.scale(F.omega)).format() == "((q^2-1)/(q))*x11"

    def test_fields_must_match(self):
        other = letter(ScalarField.specialized(2), GenKind.X)
        with pytest.raises(FieldMismatchError):
            self.x + other

    def test_nc_sum(self):
        assert nc_sum(F, [self.x, self.x, -self.x]) == self.x

    def test_letters(self):
        assert (self.x * self.d + self.m).letters() == {
            GenId(GenKind.X, 1, 1).code,
            GenId(GenKind.D_CL, 1, 1).code,
            GenId(GenKind.M, 1, 2).code,
        }

    def test_specialize(self):
        target = ScalarField.specialized(2)
        p = self.x.scale(F.qnum(2)) + F.q
        q = specialize(p, target)
        assert q.field == target
        assert q == letter(target, GenKind.X).scale(target.convert("5/2")) + 2
