"""In-repo stand-in engines exposing the real packages' API surfaces.

``jericho_stub.FrotzEnv`` mirrors ``jericho.FrotzEnv`` and plays story
files authored as JSON instead of Z-machine bytecode;
``crafter_stub.Env`` mirrors ``crafter.Env`` including the world and
player internals the exporter reads. They exist so the export code paths
run and ship fixtures without the engine packages installed; swapping in
the real engine changes nothing but the constructor call.
"""

from env_adapters.stubs.crafter_stub import Env
from env_adapters.stubs.jericho_stub import FrotzEnv

__all__ = ["Env", "FrotzEnv"]
