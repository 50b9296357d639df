"""Exception hierarchy for the logq package."""


class LogqError(Exception):
    """Base class for all errors raised by logq."""


class RankMismatch(LogqError):
    """Operands live in lattices or dual spaces of different ranks."""


class NotFinite(LogqError):
    """A formal rational character sum failed to reduce to a finite character."""


class NotSU2Character(LogqError):
    """A Laurent polynomial is not a virtual SU(2) character."""


class SizeLimit(LogqError):
    """Input exceeds the desk-scale caps for exact computation."""


class ParityInconsistent(LogqError):
    """The wall graph admits no consistent crossing-parity labeling."""


class NotProper(LogqError):
    """A stratum's modular weights fail the strongly convex cone test.

    The offending stratum (a set of wall ids) is stored in ``stratum``.
    """

    def __init__(self, message: str, stratum=None):
        super().__init__(message)
        self.stratum = stratum


class EmptyPiece(LogqError):
    """A polytope piece has an empty region."""


class Unbounded(LogqError):
    """A polyhedron is unbounded where a bounded one is required."""


class NotDelzant(LogqError):
    """A vertex is not simple, not unimodular, or not in the weight lattice."""


class InfiniteSupport(LogqError):
    """The signed lattice count has unbounded support; the data is not quantizable."""


class MalformedConfig(LogqError):
    """A CLI job configuration failed to parse or validate against its schema."""
