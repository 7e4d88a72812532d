"""Exception hierarchy shared by every module of the package."""


class LambdaBoundError(Exception):
    """Base class for all package errors."""


class InputError(LambdaBoundError, ValueError):
    """Invalid numeric input to a bound formula."""


class DeltaNegative(InputError):
    """The ramification is too large: delta = 1 + (genus - 1 - beta/2)/d is negative."""


class ParameterOutOfRange(InputError):
    """The deformation parameter violates |a| <= 1/sqrt(2n(n+1))."""


class IntervalError(LambdaBoundError, ArithmeticError):
    pass


class DivisionByIntervalContainingZero(IntervalError, ZeroDivisionError):
    pass


class NegativeRadicand(IntervalError):
    pass


class Undecided(IntervalError):
    """A certified comparison could not be decided at the working precision."""


class TableFixtureMissing(LambdaBoundError, FileNotFoundError):
    pass


class MeshError(LambdaBoundError, ValueError):
    """Base class for mesh input problems."""


class ParseError(MeshError):
    pass


class NonManifoldEdge(MeshError):
    pass


class NonOrientable(MeshError):
    pass


class DegenerateTriangle(MeshError):
    pass


class DisconnectedMesh(MeshError):
    pass


class DegenerateLattice(LambdaBoundError, ValueError):
    pass


class SolverError(LambdaBoundError, RuntimeError):
    pass


class SolverDivergence(SolverError):
    pass


class NumericallySingular(SolverError):
    pass
