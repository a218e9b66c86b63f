"""Incidence posets of minimal complexes and the certificate that the
homogenized conic complex of the incidence poset reproduces the resolution.
"""

import networkx as nx

from .errors import (DegenerateColumn, NotMinimalSupport, VerificationError)
from .conic import conic_complex, homogenize
from .gradedcomplex import betti_table, is_resolution
from .minsupport import noncomparable_supports
from .posets import Poset


def incidence_poset(C):
    """Poset on the basis ids generated by row < column over the nonzero
    differential entries, graded by homological degree."""
    for n in range(1, C.top + 1):
        with_entries = {c for (_, c) in C.diffs.get(n, {})}
        for b, _ in C.labels.get(n, []):
            if b not in with_entries:
                raise DegenerateColumn(f"zero column {b!r} in degree {n}")
    elements = [i for n in range(C.top + 1) for i, _ in C.labels.get(n, [])]
    relations = [(r, c) for mat in C.diffs.values() for (r, c) in mat]
    deg = {i: d for n in range(C.top + 1) for i, d in C.labels.get(n, [])}
    P = Poset(elements, relations, deg=deg)
    for b in elements:
        if P.dim(b) != C.hdeg_of[b]:
            raise VerificationError(
                f"poset dimension of {b!r} differs from homological degree")
    return P


def poset_isomorphic(P, Q):
    """Order isomorphism test via the cover digraphs."""
    if len(P) != len(Q) or len(P.covers) != len(Q.covers):
        return False
    G = nx.DiGraph()
    H = nx.DiGraph()
    for X, G_ in ((P, G), (Q, H)):
        for e in X.elements:
            G_.add_node(e, dim=X.dim(e))
        G_.add_edges_from(X.covers)
    nm = nx.algorithms.isomorphism.categorical_node_match("dim", None)
    return nx.is_isomorphic(G, H, node_match=nm)


class ConicIsoCertificate:
    """For each basis id, the scalar identifying it with the unique conic
    generator at its apex."""

    def __init__(self, poset, scalars):
        self.poset = poset
        self.scalars = dict(scalars)

    def to_json(self):
        from .gradedcomplex import _scalar_json
        return {"scalars": {str(a): _scalar_json(v)
                            for a, v in self.scalars.items()}}


def conic_iso_check(C):
    """Build the isomorphism basis element -> scalar * conic generator.

    Requires every conic component to be one-dimensional; a fatter component
    or an inconsistent scalar system pinpoints a basis without minimal
    support.
    """
    F = C.field
    if not noncomparable_supports(C):
        raise NotMinimalSupport("comparable boundary supports in some degree")
    P = incidence_poset(C)
    CC = conic_complex(P, F)
    dims = CC.component_dims()
    for a in P.elements:
        if dims.get(a, 0) != 1:
            raise NotMinimalSupport(
                f"conic component at {a!r} has dimension {dims.get(a, 0)}",
                witness=a)
    scalars = {}
    for b, _ in C.labels.get(0, []):
        scalars[b] = F.one
    for n in range(1, C.top + 1):
        for b, _ in C.labels.get(n, []):
            col = C.column(b)
            lam = None
            for c, s in col.items():
                mu = CC.diffs.get(n, {}).get(((c, 0), (b, 0)))
                if mu is None:
                    raise NotMinimalSupport(
                        f"conic boundary at {b!r} misses apex {c!r}", witness=b)
                cand = F.div(F.mul(s, scalars[c]), mu)
                if lam is None:
                    lam = cand
                elif lam != cand:
                    raise NotMinimalSupport(
                        f"no scalar matches the boundary of {b!r}", witness=b)
            for (c, _), (bb, _) in CC.diffs.get(n, {}):
                if bb == b and c not in col:
                    raise NotMinimalSupport(
                        f"conic boundary at {b!r} has extra apex {c!r}",
                        witness=b)
            scalars[b] = lam
    return ConicIsoCertificate(P, scalars)


def verify_mfr_support(I, C, F):
    """True iff the homogenized conic complex of the incidence poset has the
    same Betti table as C and is a resolution."""
    if sorted(d for _, d in C.labels.get(0, [])) != sorted(I.generators):
        return False
    P = incidence_poset(C)
    H = homogenize(conic_complex(P, F), P.deg)
    if betti_table(H).entries != betti_table(C).entries:
        return False
    ok, _ = is_resolution(H)
    return ok
