from typing import Optional


class CapelliError(Exception):
    """Base class for every error raised by the verification kernel"""


class FieldError(CapelliError):
    """Invalid scalar field operation"""


class PoleError(FieldError):
    """Evaluation hit a zero denominator"""

    def __init__(self, value: str, q0: str):
        super().__init__(f"{value} has a pole at q = {q0}")
        self.value = value
        self.q0 = q0


class FieldMismatchError(FieldError):
    """Operands come from different scalar fields"""


class RewriteError(CapelliError):
    """Rewriting or completion failure"""


class DegreeOverflowError(RewriteError):
    def __init__(self, degree: int, bound: int):
        super().__init__(
            f"polynomial of degree {degree} exceeds the system degree bound {bound}"
        )
        self.degree = degree
        self.bound = bound


class RuleExplosionError(RewriteError):
    def __init__(self, rule_count: int, cap: int, bound: int):
        super().__init__(
            f"completion produced {rule_count} rules (cap {cap}) at degree bound "
            f"{bound}; raise --max-rules or lower --bound"
        )
        self.rule_count = rule_count
        self.cap = cap
        self.bound = bound


class TensorShapeError(CapelliError):
    """Operators with incompatible dimension or width"""


class RMatrixError(CapelliError):
    """Invalid R-matrix"""


class RMatrixParseError(RMatrixError):
    def __init__(self, message: str, line: Optional[int] = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line


class RMatrixValidationError(RMatrixError):
    def __init__(self, flag: str, witness: Optional[str] = None):
        detail = f": {witness}" if witness else ""
        super().__init__(f"R-matrix failed {flag}{detail}")
        self.flag = flag
        self.witness = witness


class SkewInvertibilityError(RMatrixError):
    """No Psi solves the skew-invertibility system"""


class CombinatoricsError(CapelliError):
    """Invalid partition, tableau or carrier"""


class IdempotentError(CombinatoricsError):
    """Fusion recursion produced a non-idempotent or hit a vanishing denominator"""


class ConfigurationError(CapelliError):
    """Run configuration violates a guard"""

    def __init__(self, message: str, hint: Optional[str] = None):
        super().__init__(message if hint is None else f"{message} (hint: {hint})")
        self.hint = hint


class CacheError(CapelliError):
    """Cached rewrite system is unreadable or inconsistent"""


class SingularOperatorError(TensorShapeError):
    """Scalar operator has no inverse over the session field"""
