"""Trajectory-conditioned QA benchmark generation and scoring for game episodes.

The package turns a recorded game episode (an agent-visible trace plus a
backend sidecar) into a balanced suite of verifiable memory questions across
seven abilities, answers them from ground truth, and scores free-form
predictions with exact, reproducible rules.
"""

from traceqa.trace import (
    BackendSidecar,
    EpisodeTrace,
    StartState,
    StepRecord,
    TraceFormatError,
    load_episode,
    parse_trace,
    save_episode,
    serialize_sidecar,
    serialize_trace,
    truncate_episode,
    validate_trace,
)

__version__ = "0.1.0"

__all__ = [
    "BackendSidecar",
    "EpisodeTrace",
    "StartState",
    "StepRecord",
    "TraceFormatError",
    "load_episode",
    "parse_trace",
    "save_episode",
    "serialize_sidecar",
    "serialize_trace",
    "truncate_episode",
    "validate_trace",
    "__version__",
]
