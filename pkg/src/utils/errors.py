class CalculusError(ValueError):
    """Base class for every error raised by the calculator."""


# exactmath
class SingularMatrix(CalculusError):
    """The matrix has zero determinant."""


class ZeroPolynomial(CalculusError):
    """An operation that needs a nonzero polynomial received zero."""


# hj
class InvalidFraction(CalculusError):
    """The pair (m, q) does not satisfy 0 < q < m, gcd(m, q) = 1."""


class InvalidPQ(CalculusError):
    """The pair (p, q) does not satisfy p > q > 0, gcd(p, q) = 1."""


# singularities
class NonIsolatedFixedLocus(CalculusError):
    """A weight shares a factor with the group order."""


class SmoothInput(CalculusError):
    """The germ is a smooth point and has nothing to resolve."""


class NotTType(CalculusError):
    """The classification is not of the form 1/dn^2(1, dna - 1)."""


class NotClassT(CalculusError):
    """A quotient singularity is not of class T."""


# plumbing
class DSLSyntaxError(CalculusError):
    """Malformed plumbing description."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DuplicateId(CalculusError):
    """A vertex id is declared twice."""


class UnknownId(CalculusError):
    """An edge references an undeclared vertex."""


class BadWeight(CalculusError):
    """A weight or genus is not an integer in the allowed range."""


class NotLinearChain(CalculusError):
    """The graph is not a path."""


class NotAllRational(CalculusError):
    """Some vertex carries a surface of positive genus."""


class WeightOutOfRange(CalculusError):
    """A chain vertex has Euler weight greater than -2."""


# surfaces
class MixedSurfaces(CalculusError):
    """Classes from different Hirzebruch surfaces were combined."""


class NonIntegralGenus(CalculusError):
    """Adjunction does not give an integral genus."""


class IneffectiveBranch(CalculusError):
    """The branch divisor of a double cover is not effective."""


class MeetsBranch(CalculusError):
    """A curve expected to avoid the branch locus meets it."""


# surgery
class InsufficientNegativePart(CalculusError):
    """The configuration cannot fit in the negative definite part."""


class OutOfRange(CalculusError):
    """A family index lies outside its admissible range."""


class IncompatibleNormalBundles(CalculusError):
    """The glued surfaces do not have dual normal bundles."""


class NotRationalBlowdown(CalculusError):
    """A class T germ with d > 1 has no rational ball replacement."""


# quotients
class SingularPoint(CalculusError):
    """The curve is singular at a candidate fixed point."""


class IrreducibleFactor(CalculusError):
    """A binary form does not split into linear factors over Q(i)."""


class NonIntegerResult(CalculusError):
    """An orbit count produced a non-integral Euler number."""


class NonIntegralLefschetz(CalculusError):
    """The holomorphic Lefschetz average is not a rational integer."""


class ConsistencyFailure(CalculusError):
    """Two independent computations of the same invariant disagree."""


# smoothing
class InvalidSpec(CalculusError):
    """The (d, n, a) data violates d > 0, n >= 2, gcd(a, n) = 1."""
