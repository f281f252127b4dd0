"""Resource caps. ``IDIOMLAB_MAX_SIZE`` overrides the analysis cap."""

from __future__ import annotations

import os

DEFAULT_ANALYSIS_SIZE = 256
CONSTRUCT_SIZE = 4096
HOM_CANDIDATES = 10**7
RETRACTION_SPACE = 10**7
# derived modules in audits abort lattice enumeration past this many members
LATTICE_MEMBERS = 2000

_override: int | None = None


def analysis_size() -> int:
    if _override is not None:
        return _override
    env = os.environ.get("IDIOMLAB_MAX_SIZE")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_ANALYSIS_SIZE


def set_analysis_size(n: int | None) -> None:
    global _override
    _override = n
