"""Exception types raised across the package."""


class TreeNodalError(Exception):
    """Base class for all package errors."""


class TreeError(TreeNodalError):
    """A candidate vertex/edge description violates the tree axioms."""


class NotConnected(TreeError):
    pass


class HasCycle(TreeError):
    pass


class NonPositiveWeight(TreeError):
    pass


class RootDegreeNotOne(TreeError):
    pass


class DuplicateEdge(TreeError):
    pass


class BadSize(TreeNodalError):
    """Generator asked for fewer than 2 vertices."""


class BadWeightRange(TreeNodalError):
    """Weight law bounds are not 0 < a <= b."""


class ParseError(TreeNodalError):
    """Malformed serialized tree; carries line/field location when known."""

    def __init__(self, message, line=None, field=None):
        loc = []
        if line is not None:
            loc.append("line %d" % line)
        if field is not None:
            loc.append("field %s" % field)
        if loc:
            message = "%s (%s)" % (message, ", ".join(loc))
        super().__init__(message)
        self.line = line
        self.field = field


class DimensionMismatch(TreeNodalError):
    pass


class NoConvergence(TreeNodalError):
    """An eigenvalue failed to converge within the sweep cap."""

    def __init__(self, index, sweeps):
        super().__init__(
            "eigenvalue %d did not converge within %d QL sweeps" % (index, sweeps)
        )
        self.index = index
        self.sweeps = sweeps


class CertificationError(TreeNodalError):
    """A computed spectrum failed its residual/orthogonality certificate."""


class TooLarge(TreeNodalError):
    """Characteristic-polynomial oracle only accepts small matrices."""


class RootIsolationFailure(TreeNodalError):
    """The oracle could not account for all characteristic roots."""


class NotASignGraph(TreeNodalError):
    """The vertex set is not a maximal strict-sign component."""


class IndexMismatch(TreeNodalError):
    """Interlacing requires consecutive eigenvector indices."""


class NotSimple(TreeNodalError):
    """Operation requires a simple spectrum."""
