"""Exception types raised by the geometry kernel and the net constructions."""


class GeometryError(Exception):
    """Base class for all geometric failure modes in this package."""


# -- pointwise / kernel failures ---------------------------------------------

class LightConeSingularity(GeometryError):
    """Sphere inversion applied to a point on (or too near) the light cone of the center."""


class NonIsotropicDirection(GeometryError):
    """A direction that was required to be isotropic is not."""


class DegenerateAxis(GeometryError):
    """Axis and isotropic plane do not meet in a single point."""


class NotASphere(GeometryError):
    """A quadric point could not be normalized back to an affine sphere."""


class SphereToPlaneDegeneracy(GeometryError):
    """A transform sent a sphere through the point at infinity."""


class PointAtInfinity(GeometryError):
    """An intersection point lies at infinity and has no affine representative."""


# -- grid / indexing ---------------------------------------------------------

class IndexOutOfRange(GeometryError, IndexError):
    """Vertex or face index outside the grid patch."""


class EmptyNet(GeometryError):
    """An operation received a net with no cells."""


# -- pattern and lift constructions ------------------------------------------

class DegenerateEdge(GeometryError):
    """Two net points that must span a line coincide."""


class NotConical(GeometryError):
    """Closed-cycle discrepancy of the propagated data exceeds tolerance."""


class NotIsotropicConjugate(GeometryError):
    """A face plane of the center net fails planarity or isotropy."""


class InconsistentPropagation(GeometryError):
    """Propagated data disagrees between two paths or the next step is underdetermined."""


class InitialLineMismatch(GeometryError):
    """The seed line does not pass through the base face point."""


class NotIncircular(GeometryError):
    """A quad of the black net fails the inscribed-circle conditions."""


class NotPacking(GeometryError):
    """The circle pattern is not a packing within tolerance."""


class NotNull(GeometryError):
    """A congruence that must have null spheres at black vertices does not."""


class ContactLost(GeometryError):
    """Spheres that must be in oriented contact no longer are."""


class DegenerateFace(GeometryError):
    """The four sphere lifts of a face do not span a full isotropic plane."""


# -- Miquel dynamics ---------------------------------------------------------

class DegenerateStar(GeometryError):
    """The four surrounding sphere lifts are rank deficient."""


class ContactElementCase(GeometryError):
    """The polar line lies entirely on the quadric; the update is undefined."""


# -- isothermic / duality ----------------------------------------------------

class NoRealIntersection(GeometryError):
    """The polar line misses the quadric: no real common points."""


class InconsistentChoice(GeometryError):
    """Neither branch of a binary choice matches the already propagated data."""


class NonSpacelikeEdge(GeometryError):
    """An edge that must be spacelike is timelike or isotropic."""


class ZeroLengthEdge(GeometryError):
    """An edge differential with vanishing Lorentz length cannot be inverted."""


class ClosureFailure(GeometryError):
    """A discrete differential fails to close around a quad."""


class DegenerateQuad(GeometryError):
    """A quad too degenerate to dualize (collinear or coinciding corners)."""


# -- X-variables -------------------------------------------------------------

class NonpositiveX(GeometryError):
    """A cross-ratio variable is nonpositive where positivity is required."""


class ZeroDenominator(GeometryError):
    """A ratio formula hit a vanishing denominator."""


class DegenerateCrossRatio(GeometryError):
    """Coinciding points leave the cross-ratio undefined."""


# -- transforms --------------------------------------------------------------

class DegenerateTransform(GeometryError):
    """Sampling could not produce a transform keeping the fixture non-degenerate."""


# -- serialization -----------------------------------------------------------

class SchemaMismatch(GeometryError):
    """The document does not describe the requested kind of object."""


class VersionMismatch(GeometryError):
    """The document schema version is not supported."""
