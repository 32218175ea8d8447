"""Exception types shared across the package."""


class FfspecError(Exception):
    """Base class for every error raised by ffspec."""


class IndexOutOfRange(FfspecError, IndexError):
    pass


class EmptyStream(FfspecError, ValueError):
    pass


class InvalidAlpha(FfspecError, ValueError):
    pass


class UniverseMismatch(FfspecError, ValueError):
    pass


class ValueOutsideCarrier(FfspecError, ValueError):
    pass


class UnknownTerm(FfspecError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class EmptyRuleSet(FfspecError, ValueError):
    pass


class EmptyHistory(FfspecError, ValueError):
    pass


class StreamTooShort(FfspecError, ValueError):
    pass


class MultiMessageTick(FfspecError, ValueError):
    pass


class Unsupported(FfspecError):
    pass


class InferenceError(FfspecError):
    """Runtime failure of the inference pipeline.

    ``channel`` names the output channel whose rule base failed, once known.
    """

    def __init__(self, message, channel=None):
        super().__init__(message)
        self.message = message
        self.channel = channel

    def with_channel(self, channel):
        return type(self)(self.message, channel)

    def __str__(self):
        if self.channel is None:
            return self.message
        return f"output {self.channel!r}: {self.message}"

    def __eq__(self, other):
        return (type(self) is type(other) and self.message == other.message
                and self.channel == other.channel)

    def __hash__(self):
        return hash((type(self).__name__, self.message, self.channel))


class UndefinedMembership(InferenceError):
    pass


class NoApplicableRule(InferenceError):
    pass


class SpecError(FfspecError):
    """Raised when a spec text fails to parse or validate."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0] if self.diagnostics else None
        super().__init__(str(first) if first else "invalid specification")
