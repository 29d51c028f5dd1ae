"""Export real game engine episodes into the canonical trace file format.

The exporters are pure loggers: an agent callback picks every action, the
engine supplies every signal, and this package only records what happened
in the canonical trace/sidecar JSONL layout. Engines are imported lazily,
so the package installs and its tooling runs without jericho or crafter
present; in-repo stub engines implementing the same API surface cover
tests and committed fixtures.
"""

from env_adapters.crafter_adapter import export_grid_episode
from env_adapters.errors import EngineNotAvailable, ExportAborted
from env_adapters.jericho_adapter import export_text_episode

__all__ = [
    "EngineNotAvailable",
    "ExportAborted",
    "export_grid_episode",
    "export_text_episode",
]
