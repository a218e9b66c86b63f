"""Rigidity of monomial ideals: the 0/1-with-incomparable-degrees test,
Betti posets, and the cross-check that the Betti poset is hcw exactly for
rigid ideals.
"""

from .gradedcomplex import betti_table, minimize, taylor_complex
from .monomials import divides
from .posets import Poset, is_hcw


def is_rigid(T):
    """(R1) every Betti number is 0 or 1; (R2) degrees within one homological
    degree are pairwise incomparable.  Returns (bool, witness)."""
    for (i, d), v in T.entries.items():
        if v > 1:
            return False, (i, d, None)
    by_i = {}
    for (i, d) in T.entries:
        by_i.setdefault(i, []).append(d)
    for i, ds in by_i.items():
        ds = sorted(ds)
        for j in range(len(ds)):
            for k in range(len(ds)):
                if j != k and divides(ds[j], ds[k]):
                    return False, (i, ds[j], ds[k])
    return True, None


def betti_poset(T):
    """Poset of the multidegrees with nonzero Betti number, ordered
    coordinate-wise."""
    degs = sorted({d for (_, d) in T.entries})
    rels = [(a, b) for a in degs for b in degs if a != b and divides(a, b)]
    return Poset(degs, rels, deg={d: d for d in degs})


def check_rigid_iff_hcw(I, F):
    """Theorem cross-check: rigidity of the ideal must coincide with the
    Betti poset being hcw.  Disagreement is an implementation bug."""
    T = betti_table(minimize(taylor_complex(I, F)))
    rigid, _ = is_rigid(T)
    hcw = is_hcw(betti_poset(T), F)
    return rigid == hcw
