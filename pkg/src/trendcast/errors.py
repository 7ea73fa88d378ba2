"""Exception types shared across the pipeline."""


class PipelineError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(PipelineError):
    """Input file does not match its documented format."""


class ValidationError(PipelineError):
    """Data is structurally readable but violates an invariant."""


class WarmupError(PipelineError):
    """Not enough history to compute a windowed value."""


class LabelUnavailableError(PipelineError):
    """The next-day label does not exist (last bar of a series)."""


class ConfigError(PipelineError):
    """Run configuration or hyperparameter grid is invalid."""


class SchemaError(PipelineError):
    """Feature names or shapes do not match what a model expects."""


class StageError(PipelineError):
    """A pipeline stage failed; carries the stage name for reports."""

    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"stage '{stage}': {message}")
