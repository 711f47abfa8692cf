"""Exception hierarchy shared across the package."""


class CommPresError(Exception):
    """Base class for all errors raised by this package."""


# --- poset construction ---------------------------------------------------

class TrivialPoset(CommPresError):
    """The poset has fewer than two elements."""


class CycleDetected(CommPresError):
    """The cover relations contain a directed cycle (antisymmetry fails)."""


class NotConnected(CommPresError):
    """The Hasse graph of the poset is not connected."""


class RedundantCover(CommPresError):
    """A declared cover is implied transitively by other covers."""


class UnknownElement(CommPresError):
    """A relation or coefficient refers to a label outside the poset."""


# --- algebra --------------------------------------------------------------

class MismatchedContext(CommPresError):
    """Operands live over different posets or different fields."""


class NotDiagonal(CommPresError):
    """A diagonal element was expected."""


class NotStrictlyComparable(CommPresError):
    """A pair x < y was expected."""


# --- analysis -------------------------------------------------------------

class NotCommPreserver(CommPresError):
    """The map is not a commutativity preserver."""


class NotBijective(CommPresError):
    """The linear map is singular."""


class NotPureDecomposable(CommPresError):
    """Some image of a strict-pair basis vector is not a single strict-pair
    term plus a diagonal element, so the invariants cannot be read off."""


class ThetaNotBijective(CommPresError):
    """The extracted strict-pair map is not a bijection of the basis."""


# --- structure ------------------------------------------------------------

class InconsistentTriples(CommPresError):
    """Two triples x < y < z force different values of c(x, z)."""


class ZeroC(CommPresError):
    """A chain constant turned out to be zero."""


class AdjacencyTransportViolation(CommPresError):
    """For some x < y < z neither composition order of the images of
    e_xy and e_yz yields the image of e_xz."""


class NotDiagonalValued(CommPresError):
    """A shift datum maps some basis vector outside the diagonal subalgebra."""


class InvalidAlpha(CommPresError):
    """The shift datum violates the commutation conditions for S_alpha."""


# --- synthesis ------------------------------------------------------------

class PreconditionFailed(CommPresError):
    """A stated precondition of a synthesis operation does not hold."""

    def __init__(self, predicate: str, detail=None):
        super().__init__(predicate if detail is None else f"{predicate}: {detail}")
        self.predicate = predicate
        self.detail = detail


class WellDefinednessViolation(CommPresError):
    """Diagonal propagation produced walk-dependent values; this indicates
    a bug in the admissibility reduction, not bad user input."""


class HypothesesNotMet(CommPresError):
    """The input map fails one of the hypotheses of the operation."""

    def __init__(self, check: str, detail=None):
        super().__init__(check if detail is None else f"{check}: {detail}")
        self.check = check
        self.detail = detail


# --- serialization --------------------------------------------------------

class SchemaError(CommPresError):
    """A JSON document does not match the expected schema."""

    def __init__(self, source: str, field: str, message: str):
        super().__init__(f"{source}: field {field!r}: {message}")
        self.source = source
        self.field = field
        self.message = message
