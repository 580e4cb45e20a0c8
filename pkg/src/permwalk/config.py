"""Runtime limits for basis enumeration and class iteration."""

import os

MAX_SECTOR_SITES = 20  # largest N for a single particle-number sector
MAX_FOCK_SITES = 14    # largest N for the full 2^N Fock space
DEFAULT_MAX_DIM = 10_000_000
DEFAULT_CLASS_CAP = 10_000_000

SPARSE_THRESHOLD = 512  # operators on larger bases are stored sparse


def max_dim() -> int:
    """Element cap for one basis; the PERMWALK_MAX_DIM env var overrides it."""
    value = os.environ.get("PERMWALK_MAX_DIM")
    return int(value) if value else DEFAULT_MAX_DIM


def class_cap() -> int:
    """Iteration cap for one conjugacy class."""
    value = os.environ.get("PERMWALK_MAX_DIM")
    return int(value) if value else DEFAULT_CLASS_CAP
