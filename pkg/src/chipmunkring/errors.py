"""Exception types shared across the package."""


class ChipmunkRingError(Exception):
    """Base class for all library errors."""


class ParameterError(ChipmunkRingError):
    """Invalid or unsupported parameter set."""


class RingSizeError(ChipmunkRingError):
    """Ring size outside the supported range [2, 64]."""


class SignerNotInRingError(ChipmunkRingError):
    """The signer's public key does not match the claimed ring position."""


class ThresholdError(ChipmunkRingError):
    """Invalid threshold configuration, share set, or partial-signature set."""


class ByzantineShareError(ThresholdError):
    """A combined signature failed self-verification: some share is corrupt."""


class CodecError(ChipmunkRingError):
    """Base class for serialization failures."""


class TruncatedDataError(CodecError):
    """Input ended before the declared structure was complete."""


class BadMagicError(CodecError):
    """Wire header magic did not match."""


class BadVersionError(CodecError):
    """Unsupported wire-format version."""


class BadKindError(CodecError):
    """Unknown or unexpected object kind in the wire header."""


class FieldError(CodecError):
    """A length or value field is inconsistent with the payload."""
