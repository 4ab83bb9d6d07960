"""Exhaustive-search caps.

Every cap can be overridden through an environment variable named
``DICHOOSE_<FIELD>`` (upper case), e.g. ``DICHOOSE_MAX_ORIENTATION_EDGES=20``.
"""

from __future__ import annotations

import dataclasses
import os


class CapExceeded(ValueError):
    """Raised when an exhaustive search would exceed a configured cap."""


@dataclasses.dataclass(frozen=True)
class Caps:
    max_orientation_edges: int = 24
    max_dichromatic_vertices: int = 16
    max_bruteforce_vertices: int = 8
    max_list_nodes: int = 10**8
    max_list_universe: int = 12  # n * r for canonical list assignments
    max_saturation_r: int = 3
    max_colouring_product: int = 10**6
    max_exact_cut_vertices: int = 20
    exact_backedge_colouring: int = 12


def _from_env() -> Caps:
    values = {}
    for field in dataclasses.fields(Caps):
        raw = os.environ.get(f"DICHOOSE_{field.name.upper()}")
        if raw is not None:
            values[field.name] = int(raw)
    return Caps(**values)


_caps = _from_env()


def get_caps() -> Caps:
    return _caps


def set_caps(**changes) -> Caps:
    """Replace selected caps globally and return the previous value."""
    global _caps
    previous = _caps
    _caps = dataclasses.replace(_caps, **changes)
    return previous
