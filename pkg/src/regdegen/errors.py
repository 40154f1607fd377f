from __future__ import annotations


class DegenerateDataError(ValueError):
    """Input data cannot support the requested statistic."""


class InfeasibleError(ValueError):
    """The requested constraints cannot be met.

    ``stage`` names the pipeline step that failed (``"constraints"``,
    ``"x"``, ``"shape"``, ``"adjust"`` or ``"verify"``) when known.
    """

    def __init__(self, message: str, stage: str | None = None):
        super().__init__(message)
        self.stage = stage

    def __str__(self) -> str:
        msg = super().__str__()
        return f"[{self.stage}] {msg}" if self.stage else msg
