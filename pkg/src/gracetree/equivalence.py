"""Moving labellings between a tree and its spike tree.

A graceful labelling of ``t`` lifts to a strongly graceful labelling of
``spike(t)``; a strongly graceful labelling of a matched tree projects to a
graceful labelling of its contree.
"""

from __future__ import annotations

from .labelling import (
    Labelling,
    LabellingError,
    VerificationError,
    is_graceful,
    is_strongly_graceful,
)
from .tree import Matching, Tree, contract_matching, spike


def lift_to_spike(t: Tree, f: Labelling) -> tuple[Tree, Matching, Labelling]:
    """Spike tree with labels ``2 f(v)`` on each pendant and ``2m-1-2 f(v)`` on ``v``."""
    if not is_graceful(t, f):
        raise LabellingError("labelling is not graceful")
    m = t.n
    big, matching, partner = spike(t)
    vals = [0] * big.n
    for v in range(m):
        vals[partner[v]] = 2 * f[v]
        vals[v] = 2 * m - 1 - 2 * f[v]
    g = Labelling(tuple(vals))
    if not is_strongly_graceful(big, matching, g):
        raise VerificationError(f"lifted labelling {g.values} is not strongly graceful")
    return big, matching, g


def project_to_contree(t: Tree, m: Matching, g: Labelling) -> tuple[Tree, Labelling]:
    """Contract ``m`` and label each contracted pair by half its even label."""
    if not is_strongly_graceful(t, m, g):
        raise LabellingError("labelling is not strongly graceful")
    small, vmap = contract_matching(t, m)
    vals = [0] * small.n
    for u, v in m.pairs:
        a, b = g[u], g[v]
        if a % 2 == b % 2:
            raise VerificationError(f"matched pair ({u}, {v}) has labels {a}, {b} of equal parity")
        vals[vmap[u]] = (a if a % 2 == 0 else b) // 2
    h = Labelling(tuple(vals))
    if not is_graceful(small, h):
        raise VerificationError(f"projected labelling {h.values} is not graceful")
    return small, h
