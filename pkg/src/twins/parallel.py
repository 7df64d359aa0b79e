"""Worker-count resolution shared by the CLI and library entry points."""

from __future__ import annotations

import os
from typing import Optional

ENV_THREADS = "TWINS_THREADS"


def resolve_workers(requested: Optional[int] = None) -> int:
    """TWINS_THREADS beats an explicit request, which beats auto-detection.

    The environment override exists so CI can pin parallelism without
    touching command lines; results never depend on the value.
    """
    env = os.environ.get(ENV_THREADS)
    if env is not None:
        value = int(env)
    elif requested is not None:
        value = requested
    else:
        value = os.cpu_count() or 1
    return max(1, value)
