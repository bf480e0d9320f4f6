"""Exception hierarchy shared by all modules.

Three families matter for the CLI exit-code contract:

* ``MathConditionError`` — a mathematical criterion failed (not invertible,
  not divisible, inconsistent system, ...).  These carry a witness.
* ``NumericalError`` — a numerical procedure could not certify its result.
* ``SchemaError`` — malformed input documents or incompatible operands.
"""


class HadalgError(Exception):
    """Base class for all package errors."""


# ---------------------------------------------------------------------------
# mathematical condition failures (CLI exit code 2)


class MathConditionError(HadalgError):
    """A decision procedure returned a definite negative answer."""

    def witness(self) -> dict:
        return {}


class NotInvertible(MathConditionError):
    def __init__(self, index: int, value: complex):
        super().__init__(f"not invertible: |u({index})| = {abs(value)}")
        self.index = index
        self.value = value

    def witness(self):
        return {"index": self.index, "value": [self.value.real, self.value.imag]}


class NotDivisible(MathConditionError):
    def __init__(self, index: int):
        super().__init__(f"not divisible: divisor vanishes at index {index} "
                         "while the dividend does not")
        self.index = index

    def witness(self):
        return {"index": self.index}


class NotInIdeal(MathConditionError):
    def __init__(self, index: int):
        super().__init__(f"not in ideal: all generators vanish at index {index} "
                         "while the element does not")
        self.index = index

    def witness(self):
        return {"index": self.index}


class CoronaFails(MathConditionError):
    def __init__(self, index: int):
        super().__init__(f"corona condition fails: generator moduli sum to 0 "
                         f"at index {index}")
        self.index = index

    def witness(self):
        return {"index": self.index}


class Inconsistent(MathConditionError):
    """Ax = b has no solution; carries a certifying left-null vector."""

    def __init__(self, position: int, y):
        super().__init__(f"system inconsistent at coefficient position {position}")
        self.position = position
        self.y = y

    def witness(self):
        return {"position": self.position,
                "y": [[v.real, v.imag] for v in self.y]}


class NotInGL(MathConditionError):
    def __init__(self, position: int):
        super().__init__(f"matrix not invertible over the algebra: singular "
                         f"coefficient matrix at position {position}")
        self.position = position

    def witness(self):
        return {"position": self.position}


class NotSL(MathConditionError):
    def __init__(self, position: int, det: complex):
        super().__init__(f"determinant differs from the unit at position "
                         f"{position}: {det}")
        self.position = position
        self.det = det

    def witness(self):
        return {"position": self.position,
                "det": [self.det.real, self.det.imag]}


class PreconditionFailed(MathConditionError):
    pass


class BadMask(MathConditionError):
    def __init__(self, index: int, value: complex):
        super().__init__(f"mask value at index {index} is {value}, "
                         "expected exactly 0 or 1")
        self.index = index
        self.value = value

    def witness(self):
        return {"index": self.index, "value": [self.value.real, self.value.imag]}


class HorizonCertifiedOnly(MathConditionError):
    """The requested certificate needs an exact sequence, not a sampled one."""


class SpectrumHit(MathConditionError):
    def __init__(self, position: int):
        super().__init__(f"query point lies in the spectrum at position {position}")
        self.position = position

    def witness(self):
        return {"position": self.position}


# ---------------------------------------------------------------------------
# numerical failures (CLI exit code 4)


class NumericalError(HadalgError):
    pass


class OverflowAtIndex(NumericalError):
    def __init__(self, index: int):
        super().__init__(f"weight value at index {index} exceeds the double range; "
                         "use log-space evaluation")
        self.index = index


class BoundUnavailable(NumericalError):
    pass


class QuadratureDisagreement(NumericalError):
    def __init__(self, position: int, deviation: float, tol: float):
        super().__init__(f"contour quadrature disagrees with the eigenvalue path "
                         f"at position {position}: {deviation:.3e} > {tol:.3e} "
                         "(increase the node count)")
        self.position = position
        self.deviation = deviation


class SubdivisionOverflow(NumericalError):
    def __init__(self, limit: int):
        super().__init__(f"path subdivision exceeded {limit} steps")
        self.limit = limit


# ---------------------------------------------------------------------------
# input / usage errors (CLI exit code 3)


class SchemaError(HadalgError):
    pass


class WeightMismatch(SchemaError):
    pass


class DimensionMismatch(SchemaError):
    pass


class PointwiseDomainError(SchemaError):
    def __init__(self, index: int, message: str = "pointwise operation undefined"):
        super().__init__(f"{message} at index {index}")
        self.index = index


class HorizonExceeded(SchemaError):
    def __init__(self, requested: int, horizon: int):
        super().__init__(f"index {requested} beyond horizon {horizon}")
        self.requested = requested
        self.horizon = horizon
