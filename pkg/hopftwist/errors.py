"""Exceptions raised by hopftwist.

Two families: a MathematicalError means a check on the input objects failed
(exit code 1), an InputError means the input itself is malformed (exit code 2).
"""


class HopfTwistError(ValueError):
    exit_code = 1


class MathematicalError(HopfTwistError):
    exit_code = 1


class InputError(HopfTwistError):
    exit_code = 2


# ring
class ZeroElement(MathematicalError):
    pass


class NotAUnit(MathematicalError):
    pass


# hopf
class KernelRankError(MathematicalError):
    pass


class NoFreeGenerator(MathematicalError):
    pass


class NotCommutative(MathematicalError):
    pass


class NotSeparable(MathematicalError):
    pass


class NotASquare(MathematicalError):
    pass


class H1Failure(MathematicalError):
    pass


class H2Failure(MathematicalError):
    pass


# comodule / symbundle / phs
class LatticeNotFree(MathematicalError):
    pass


class FreenessUncertified(MathematicalError):
    pass


class NotEquivariant(MathematicalError):
    pass


class SingularForm(MathematicalError):
    pass


class DualLatticeMismatch(MathematicalError):
    pass


class NotAPHS(MathematicalError):
    pass


# input
class DimensionMismatch(InputError):
    pass


class BadGroupTable(InputError):
    pass


class SchemaError(InputError):
    pass


class ExpressionError(InputError):
    pass


class ConfigError(InputError):
    pass
