"""Exception types shared across the package."""


class GqflagsError(Exception):
    """Base class for all library errors."""


class CompositeParameterError(GqflagsError):
    """Raised when a construction requires a prime parameter."""


class ParseError(GqflagsError):
    """Malformed structure or scheme file."""


class GqViolation(GqflagsError):
    """A generalized-quadrangle axiom failed; carries a minimal witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Gq1Violation(GqViolation):
    pass


class Gq2Violation(GqViolation):
    pass


class Gq3Violation(GqViolation):
    pass


class NotASchemeError(GqflagsError):
    """The relation matrix violates an association-scheme axiom.

    For an intersection-number failure, ``triple`` holds (k, i, j) and
    ``witness`` the offending vertex pair.
    """

    def __init__(self, message, triple=None, witness=None):
        super().__init__(message)
        self.triple = triple
        self.witness = witness


class MissingClassError(NotASchemeError):
    """Some relation index in 0..d labels no pair at all."""


class QuotientIllDefinedError(GqflagsError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotThinError(GqflagsError):
    """Scheme has a class of valency > 1, so no group structure exists."""


class OrbitMismatchError(GqflagsError):
    """Triplet orbits do not tile the index cube as expected."""


class ScalingMismatchError(GqflagsError):
    """A symmetry-transported intersection polynomial disagrees."""

    def __init__(self, message, element=None, triplet=None):
        super().__init__(message)
        self.element = element
        self.triplet = triplet


class IdentityFailureError(GqflagsError):
    """One of the exact intersection-number identities fails."""

    def __init__(self, message, equation=None, triple=None):
        super().__init__(message)
        self.equation = equation
        self.triple = triple


class NotAFusionError(GqflagsError):
    """The index partition fails the fusion criterion."""


class ParameterMismatchError(GqflagsError):
    """Scheme parameters do not match the closed-form tables."""


class NotParabolicError(GqflagsError):
    """A class subset expected to be an equivalence relation is not."""


class NoIsomorphismError(GqflagsError):
    """No relabeling matches the reference intersection numbers."""


class ReconstructionError(GqflagsError):
    """Base class for failures while rebuilding a quadrangle."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CoverViolationError(ReconstructionError):
    """Some vertex does not lie in exactly two maximal cliques."""


class NotBipartiteError(ReconstructionError):
    """The clique-intersection graph admits no 2-coloring."""


class GqAxiomFailureError(ReconstructionError):
    """The rebuilt incidence structure is not a generalized quadrangle."""


class LevelMismatchError(ReconstructionError):
    """The level decomposition disagrees with the scheme relations."""
