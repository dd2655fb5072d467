"""Local data, canonical heights and small-point bound checks for elliptic curves over Q."""

from ._core import (
    SmallpointsError,
    analyze,
    canonical_height,
    j_tau,
    lang_constant,
    small_height_threshold,
    tlem_bound,
    tlem_brute,
    torsion,
    torsion_bound,
    torus_neron,
    verify,
)

__all__ = [
    "SmallpointsError",
    "analyze",
    "canonical_height",
    "j_tau",
    "lang_constant",
    "small_height_threshold",
    "tlem_bound",
    "tlem_brute",
    "torsion",
    "torsion_bound",
    "torus_neron",
    "verify",
]
