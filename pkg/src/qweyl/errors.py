"""Exception types shared across the package.

Every error raised by the library derives from QweylError so CLI code can
turn any failure into a machine-readable error object.
"""


class QweylError(Exception):
    """Base class for all library errors."""

    code = "error"

    def payload(self):
        return {"error": self.code, "message": str(self)}


class ParseError(QweylError):
    code = "parse-error"


class NotPrimitiveRoot(QweylError):
    code = "not-primitive-root"


class CharacteristicDividesN(QweylError):
    code = "characteristic-divides-n"


class DivisionByZero(QweylError):
    code = "division-by-zero"


class MixedFields(QweylError):
    code = "mixed-fields"


class MixedAlgebras(QweylError):
    code = "mixed-algebras"


class NotAUnit(QweylError):
    code = "not-a-unit"


class NormNotScalar(QweylError):
    """Internal consistency failure: a norm left the scalar line."""

    code = "norm-not-scalar"


class TooLarge(QweylError):
    code = "too-large"


class ZeroInput(QweylError):
    code = "zero-input"


class Singular(QweylError):
    code = "singular"


class DimensionMismatch(QweylError):
    code = "dimension-mismatch"


class UnsupportedField(QweylError):
    code = "unsupported-field"


class UnsupportedBase(QweylError):
    code = "unsupported-base"


class NotOrthogonal(QweylError):
    code = "not-orthogonal"


class CornerNotOneDimensional(QweylError):
    code = "corner-not-one-dimensional"


class HypothesisFailed(QweylError):
    code = "hypothesis-failed"


class SearchExhausted(QweylError):
    """Finite search space exceeded its budget; carries a bracket on the index."""

    code = "search-exhausted"

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper

    def payload(self):
        out = super().payload()
        out["index_bracket"] = [self.lower, self.upper]
        return out


class NoModuleMatrix(QweylError):
    code = "no-module-matrix"


class ReducibleModulus(QweylError):
    code = "reducible-modulus"


class ExcludedModulus(QweylError):
    code = "excluded-modulus"


class RelationViolated(QweylError):
    code = "relation-violated"


class InvalidCoordinates(QweylError):
    code = "invalid-coordinates"


class UnsupportedFiberEnumeration(QweylError):
    code = "unsupported-fiber-enumeration"


#: Tri-state verdict value used wherever a bounded search cannot decide.
UNKNOWN = "unknown"
