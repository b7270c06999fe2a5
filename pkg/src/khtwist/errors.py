"""Exception hierarchy shared by all khtwist modules."""


class KhtwistError(Exception):
    """Base class for all errors raised by this package."""


# --- diagram / parsing ---

class MalformedSyntax(KhtwistError):
    """PD-code text does not conform to the grammar."""


class EdgeDegreeError(KhtwistError):
    """An edge label does not appear exactly twice."""


class OrientationInconsistent(KhtwistError):
    """No consistent global orientation exists for the diagram."""


class AmbiguousOrientation(KhtwistError):
    """A component admits two consistent orientations; none can be inferred."""


class NoMarkedRegion(KhtwistError):
    """Twist insertion requested on a diagram without a marked region."""


class IncoherentRegion(KhtwistError):
    """The marked strands do not cross the disk in the same direction."""


class IndexOutOfRange(KhtwistError):
    """Braid generator index outside 1..strands-1."""


# --- cube / complex ---

class LengthMismatch(KhtwistError):
    """Smoothing index length differs from the crossing count."""


class NotACubeEdge(KhtwistError):
    """The two smoothing indices do not differ at exactly one 0->1 position."""


class PositionAlreadyOne(KhtwistError):
    """Edge sign requested at a position already set to 1."""


class BudgetExceeded(KhtwistError):
    """Crossing count above the configured compute budget."""


class ComplexNotValid(KhtwistError):
    """d^2 != 0; the chain complex is broken."""


# --- laurent ---

class ZeroPolynomial(KhtwistError):
    """Operation undefined for the zero polynomial."""


class InexactDivision(KhtwistError):
    """Laurent division left a nonzero remainder."""


class UnitMismatch(KhtwistError):
    """Operands use different variables or exponent units."""


class QuarterExponentResidue(KhtwistError):
    """A Jones exponent failed to land in half-integers."""


# --- homology tables ---

class AlreadyNormalized(KhtwistError):
    """normalize() applied to a table that is already normalized."""


class EmptyTable(KhtwistError):
    """Operation undefined for a table with no nonzero ranks."""
