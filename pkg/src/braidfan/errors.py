"""Exception types. Every error carries a short machine-readable ``kind``."""


class BraidFanError(ValueError):
    kind = "error"


class InvalidDimension(BraidFanError):
    kind = "invalid-dimension"


class InvalidSubset(BraidFanError):
    kind = "invalid-subset"


class DimensionMismatch(BraidFanError):
    kind = "dimension-mismatch"


class EmptyInput(BraidFanError):
    kind = "empty-input"


class TooManyVectors(BraidFanError):
    kind = "too-many-vectors"


class InvalidRelation(BraidFanError):
    kind = "invalid-relation"


class InvalidEdge(BraidFanError):
    kind = "invalid-edge"


class NotATree(BraidFanError):
    kind = "not-a-tree"


class NotATreePreposet(BraidFanError):
    kind = "not-a-tree-preposet"


class NotAPoset(BraidFanError):
    kind = "not-a-poset"


class InvalidRay(BraidFanError):
    kind = "invalid-ray"


class NotSmooth(BraidFanError):
    kind = "not-smooth"


class NotAFace(BraidFanError):
    kind = "not-a-face"


class InvalidFan(BraidFanError):
    kind = "invalid-fan"


class StaleCenter(BraidFanError):
    kind = "stale-center"


class InadmissibleCenter(BraidFanError):
    kind = "inadmissible-center"


class TooLarge(BraidFanError):
    kind = "too-large"


class InternalVerificationFailure(RuntimeError):
    """A factorization step failed its own consistency check. Always a bug."""

    kind = "internal-verification-failure"
