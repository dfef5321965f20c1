"""Instance files, seeded generators, the panel runner and the command line."""

from .instance import Instance, InstanceError, dump_instance, load_instance, loads_instance, save_instance
from .generate import generate
from .panels import PANELS, PanelResult, run

__all__ = [
    "Instance",
    "InstanceError",
    "PANELS",
    "PanelResult",
    "dump_instance",
    "generate",
    "load_instance",
    "loads_instance",
    "run",
    "save_instance",
]
