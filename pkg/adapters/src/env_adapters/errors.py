"""Failure modes shared by the exporters."""


class EngineNotAvailable(RuntimeError):
    """The requested game engine package is not installed."""


class ExportAborted(RuntimeError):
    """The agent callback or engine failed mid-episode.

    The partial trace and sidecar written so far are preserved on disk;
    ``steps_written`` reports how many steps they contain.
    """

    def __init__(self, message: str, steps_written: int):
        super().__init__(message)
        self.steps_written = steps_written
