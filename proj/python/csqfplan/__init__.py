"""Planning and online-admission toolkit for cycle-scheduled deterministic
IP networks: joint routing and scheduling of time-triggered demands onto
cycle-shifted paths."""

from csqfplan._core import (
    GenerationError,
    Instance,
    LimitError,
    ModelError,
    Solution,
    StructuralError,
    generate,
    oracle,
    path_delay,
    solve,
    validate,
)

__all__ = [
    "GenerationError",
    "Instance",
    "LimitError",
    "ModelError",
    "Solution",
    "StructuralError",
    "generate",
    "oracle",
    "path_delay",
    "solve",
    "validate",
]
