"""Exact coefficient fields for the kernel.

Two session modes share one interface: the rational function field QQ(q)
(symbolic q) and QQ itself with q specialized to a fixed rational q0. Field
elements are plain sympy domain elements, so arithmetic is done with the
usual operators and equality is canonical.
"""

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any, Optional, Union

from sympy import QQ, Rational, Symbol, nan, sympify, zoo
from sympy.core.sympify import SympifyError

from src.core.domain.errors import FieldError, PoleError

Q_SYMBOL = Symbol("q")

Scalar = Any
ScalarLike = Union[int, str, Rational, Scalar]

DEFAULT_Q0 = Rational(2)


class FieldMode(str, Enum):
    SYMBOLIC = "symbolic"
    SPECIALIZED = "specialized"


@dataclass(frozen=True)
class ScalarField:
    """Session field: symbolic q or q specialized to a rational q0"""

    mode: FieldMode
    q0: Optional[Rational] = None

    def __post_init__(self):
        if self.mode is FieldMode.SPECIALIZED:
            if self.q0 is None:
                raise FieldError("specialized mode needs a value for q0")
            if not self.q0.is_Rational:
                raise FieldError(f"q0 must be rational, got {self.q0}")
            if self.q0 in (0, 1, -1):
                raise FieldError(
                    f"q0 = {self.q0} is not generic (q0 must avoid 0, 1, -1)"
                )
        elif self.q0 is not None:
            raise FieldError("symbolic mode takes no q0")

    @classmethod
    def symbolic(cls) -> "ScalarField":
        return cls(FieldMode.SYMBOLIC)

    @classmethod
    def specialized(cls, q0: Union[int, str, Rational] = DEFAULT_Q0) -> "ScalarField":
        try:
            value = Rational(q0)
        except (TypeError, ValueError) as e:
            raise FieldError(f"cannot read q0 from {q0!r}") from e
        return cls(FieldMode.SPECIALIZED, value)

    @classmethod
    def from_token(cls, token: str) -> "ScalarField":
        """Build a field from a CLI token: 'symbolic' or a rational such as '2'"""
        if token.strip().lower() in ("symbolic", "q"):
            return cls.symbolic()
        return cls.specialized(token.strip())

    @property
    def is_symbolic(self) -> bool:
        return self.mode is FieldMode.SYMBOLIC

    def describe(self) -> str:
        return "symbolic" if self.is_symbolic else f"q0={self.q0}"

    @cached_property
    def domain(self):
        if self.is_symbolic:
            return QQ.frac_field(Q_SYMBOL)
        return QQ

    @cached_property
    def zero(self) -> Scalar:
        return self.domain.zero

    @cached_property
    def one(self) -> Scalar:
        return self.domain.one

    @cached_property
    def q(self) -> Scalar:
        if self.is_symbolic:
            return self.domain.from_sympy(Q_SYMBOL)
        return self.domain.from_sympy(self.q0)

    @cached_property
    def q_inv(self) -> Scalar:
        return self.one / self.q

    @cached_property
    def omega(self) -> Scalar:
        """q - q^{-1}"""
        return self.q - self.q_inv

    def convert(self, value: ScalarLike) -> Scalar:
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            raise FieldError("booleans are not scalars")
        if isinstance(value, int):
            return self.domain.convert(value)
        if isinstance(value, Rational):
            return self.domain.from_sympy(value)
        if self.domain.of_type(value):
            return value
        raise FieldError(f"cannot convert {value!r} into {self.describe()}")

    def power(self, exponent: int) -> Scalar:
        if exponent >= 0:
            return self.q**exponent
        return self.q_inv ** (-exponent)

    def qnum(self, c: int) -> Scalar:
        """[c]_q = (q^c - q^{-c}) / (q - q^{-1})"""
        m = abs(c)
        total = self.zero
        for j in range(m):
            total += self.power(m - 1 - 2 * j)
        return total if c >= 0 else -total

    def jm_eigenvalue(self, c: int) -> Scalar:
        """q^{2c}, the action of a Hecke Jucys-Murphy element on content c"""
        return self.power(2 * c)

    def eval_at(self, s: Scalar, q0: Union[int, str, Rational]) -> Scalar:
        """Evaluate a symbolic scalar at a rational point; result lies in QQ"""
        if not self.is_symbolic:
            raise FieldError("eval_at needs a symbolic scalar")
        point = QQ.from_sympy(Rational(q0))
        numer = _eval_poly(s.numer, point)
        denom = _eval_poly(s.denom, point)
        if not denom:
            raise PoleError(self.format(s), str(q0))
        return numer / denom

    def specialize(self, s: Scalar, target: "ScalarField") -> Scalar:
        """Map a scalar of this field into ``target``"""
        if target == self:
            return s
        if not self.is_symbolic or target.is_symbolic:
            raise FieldError(
                f"cannot specialize {self.describe()} to {target.describe()}"
            )
        return self.eval_at(s, target.q0)

    def parse(self, text: str) -> Scalar:
        try:
            expr = sympify(text, locals={"q": Q_SYMBOL}, convert_xor=True)
        except (SympifyError, SyntaxError, TypeError) as e:
            raise FieldError(f"cannot parse scalar {text!r}") from e
        if expr.free_symbols - {Q_SYMBOL}:
            raise FieldError(f"scalar {text!r} uses symbols other than q")
        if self.is_symbolic:
            if expr.has(Q_SYMBOL) and not expr.is_rational_function(Q_SYMBOL):
                raise FieldError(f"scalar {text!r} is not a rational function of q")
            return self.domain.from_sympy(expr)
        value = expr.subs(Q_SYMBOL, self.q0)
        if value.has(zoo, nan):
            raise PoleError(text, str(self.q0))
        if not value.is_Rational:
            raise FieldError(f"scalar {text!r} does not evaluate to a rational")
        return QQ.from_sympy(value)

    def format(self, s: Scalar) -> str:
        if not self.is_symbolic:
            numer, denom = QQ.numer(s), QQ.denom(s)
            return str(numer) if denom == 1 else f"{numer}/{denom}"
        numer_terms = s.numer.terms()
        denom_terms = s.denom.terms()
        scale = 1
        for _, c in numer_terms + denom_terms:
            scale = math.lcm(scale, int(QQ.denom(c)))
        numer = _format_poly(numer_terms, scale)
        denom = _format_poly(denom_terms, scale)
        if denom == "1":
            return numer
        return f"({numer})/({denom})"


def _eval_poly(poly, point) -> Scalar:
    total = QQ.zero
    for (exponent,), c in poly.terms():
        total += c * point**exponent
    return total


def _format_poly(terms, scale: int) -> str:
    if not terms:
        return "0"
    pieces = []
    for (exponent,), c in sorted(terms, key=lambda t: -t[0][0]):
        value = int(QQ.numer(c)) * (scale // int(QQ.denom(c)))
        sign = "-" if value < 0 else "+"
        magnitude = abs(value)
        if exponent == 0:
            body = str(magnitude)
        else:
            power = "q" if exponent == 1 else f"q^{exponent}"
            body = power if magnitude == 1 else f"{magnitude}*{power}"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += sign + body
    return text
