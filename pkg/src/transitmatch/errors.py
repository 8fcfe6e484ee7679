"""Exception hierarchy shared across the package."""


class TransitMatchError(Exception):
    """Base class for all package errors."""


class InvalidConfig(TransitMatchError):
    """A configuration field violates its invariant."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class DimensionMismatch(TransitMatchError):
    """Two arrays or images that must agree in shape do not."""


class EmptyTrajectory(TransitMatchError):
    """A trajectory has fewer than two points."""


class InvalidBounds(TransitMatchError):
    """Mapping bounds are degenerate (min >= max) or steepness <= 0."""


class MissingImage(TransitMatchError):
    """A part observation holds no pixel data where an image is required."""


class EmptyTracklet(TransitMatchError):
    """A tracklet or part feature set holds zero frames."""


class DuplicateId(TransitMatchError):
    """An id is already present in the index."""


class UnknownId(TransitMatchError):
    """An id is not present in the index."""


class EmptyResult(TransitMatchError):
    """A search result with no candidates where at least one is required."""


class EmptyGallery(TransitMatchError):
    """An alighting query arrived while the gallery index is empty."""


class InvalidSpec(TransitMatchError):
    """A route spec violates its invariants."""


class StageFailure(TransitMatchError):
    """A pipeline stage raised; the pipeline aborts with drained channels."""

    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage!r} failed: {cause!r}")
