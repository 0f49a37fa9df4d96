"""Exception hierarchy for the morphforge package."""


class MorphforgeError(Exception):
    """Base class for all morphforge errors."""


class DegenerateInput(MorphforgeError):
    """Point set unsuitable for triangulation (collinear, duplicates)."""


class DegenerateTriangle(MorphforgeError):
    """Triangle with (near-)zero area where a non-degenerate one is required."""


class MeshMismatch(MorphforgeError):
    """Destination point count does not match the mesh point count."""


class LandmarkCountMismatch(MorphforgeError):
    """Two landmark sets disagree in point count or image dimensions."""


class DimensionMismatch(MorphforgeError):
    """Images (or vectors) disagree in shape where equality is required."""


class EmptyIntersection(MorphforgeError):
    """Crop box does not intersect the image."""


class KeepExceedsInput(MorphforgeError):
    """Quality filter asked to keep more records than were supplied."""


class InsufficientPool(MorphforgeError):
    """Morph pool too small for the requested key/partner counts."""


class MissingMouthLandmarks(MorphforgeError):
    """Landmark set lacks the canonical mouth subset (points 48-67)."""


class NoAttackSamples(MorphforgeError):
    """Score set contains no attack entries."""


class NoBonafideSamples(MorphforgeError):
    """Score set contains no bona fide entries."""


class ShapeMismatch(MorphforgeError):
    """Prediction and label grids disagree in shape."""


class SingleClassTrainingSet(MorphforgeError):
    """Training data contains only one class."""


class UnknownAttackId(MorphforgeError):
    """Review decision references an attack id absent from the manifest."""


class InvalidTransition(MorphforgeError):
    """Review decision conflicts with an already-recorded verdict."""


class ManifestConsistencyError(MorphforgeError):
    """Manifest violates a structural invariant; refusing to persist it."""


class PipelineError(MorphforgeError):
    """A pipeline stage failed; carries per-item diagnostics."""

    def __init__(self, stage: str, failures: list[tuple[str, str]]):
        self.stage = stage
        self.failures = failures
        lines = ", ".join(f"{item}: {msg}" for item, msg in failures[:5])
        more = "" if len(failures) <= 5 else f" (+{len(failures) - 5} more)"
        super().__init__(f"stage '{stage}' failed for {len(failures)} item(s): {lines}{more}")


class ConfigError(MorphforgeError):
    """Pipeline configuration file is invalid or incomplete."""
