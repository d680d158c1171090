"""Exact 2-adic tools for the 3x+1 parity correspondence.

The heavy lifting lives in the compiled extension; rationals cross the
boundary as "p/q" strings so all arithmetic stays exact.
"""

from padiclab._core import (
    __version__,
    embed_point,
    ergodic_counts,
    grid_points,
    invert_v1,
    invert_v2,
    parity_vector,
    q_exact,
    q_inverse_exact,
    q_mod,
    qinv_mod,
    search_cycles,
    t_orbit_cycle,
)

__all__ = [
    "__version__",
    "embed_point",
    "ergodic_counts",
    "grid_points",
    "invert_v1",
    "invert_v2",
    "parity_vector",
    "q_exact",
    "q_inverse_exact",
    "q_mod",
    "qinv_mod",
    "search_cycles",
    "t_orbit_cycle",
]
