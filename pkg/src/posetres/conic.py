"""Conic chain complexes of posets, homogenization along a degree map, and
the resolution-support criterion.

The degree-n component sits at the apexes a with d(a) = n and is the full
top cycle space of the order complex of the open filter P_{<a}.  A generator
is written [a, z]; its differential is z re-expressed in the degree-(n-1)
cycle bases, grouping the faces of z by their top vertex.
"""

from .errors import HypothesisFailed, NotAMorphism, VerificationError
from .exactla import SparseMatrix, rank, solve
from .gradedcomplex import GradedFreeComplex
from .monomials import join_closure
from .posets import (FACE_CAP, OrientedComplex, cycle_space, reduced_homology)


class ConicComplex:
    """Field chain complex with one component per poset element.

    gens:   dict n -> ordered list of (apex, index) pairs
    cycles: dict (apex, index) -> sparse cycle {face: scalar}
    diffs:  dict n -> {((apex_r, i_r), (apex_c, i_c)): scalar} for n >= 1
    aug:    dict (apex, index) -> scalar, the augmentation on degree 0
    """

    def __init__(self, poset, field, gens, cycles, diffs, aug, augmented):
        self.poset = poset
        self.field = field
        self.gens = {n: list(gs) for n, gs in gens.items() if gs}
        self.cycles = dict(cycles)
        self.diffs = {n: {k: v for k, v in m.items() if v}
                      for n, m in diffs.items()}
        self.diffs = {n: m for n, m in self.diffs.items() if m}
        self.aug = dict(aug)
        self.augmented = augmented

    @property
    def top(self):
        return max(self.gens, default=-1)

    def component_dims(self):
        dims = {}
        for gs in self.gens.values():
            for a, _ in gs:
                dims[a] = dims.get(a, 0) + 1
        return dims

    def ranks(self):
        return tuple(len(self.gens.get(n, ())) for n in range(self.top + 1))

    def matrix(self, n):
        """Differential C_n -> C_{n-1}; n = 0 gives the augmentation row."""
        cols = self.gens.get(n, [])
        cix = {g: j for j, g in enumerate(cols)}
        if n == 0:
            if not self.augmented:
                return SparseMatrix(0, len(cols))
            entries = [(0, cix[g], v) for g, v in self.aug.items() if v]
            return SparseMatrix(1, len(cols), entries)
        rows = self.gens.get(n - 1, [])
        rix = {g: i for i, g in enumerate(rows)}
        entries = [(rix[r], cix[c], v)
                   for (r, c), v in self.diffs.get(n, {}).items()]
        return SparseMatrix(len(rows), len(cols), entries)

    def homology_ranks(self):
        """Homology ranks per degree; includes degree -1 when augmented."""
        F = self.field
        top = self.top
        rk = {n: rank(self.matrix(n), F) for n in range(0, top + 1)}
        out = {}
        if self.augmented:
            out[-1] = 1 - rk.get(0, 0)
        for n in range(0, top + 1):
            dim = len(self.gens.get(n, []))
            out[n] = dim - rk.get(n, 0) - rk.get(n + 1, 0)
        return {n: r for n, r in out.items() if r}

    def is_exact(self):
        return not self.homology_ranks()

    def restrict_deg_leq(self, alpha):
        """Conic complex of the subposet on {a : deg a <= alpha}.

        Valid because open filters inside that subposet coincide with the
        filters taken in the whole poset (deg is monotone), so all cycle
        bases are shared.
        """
        P = self.poset
        if P.deg is None:
            raise NotAMorphism("poset has no degree map")
        keep = {a for a in P.elements
                if all(x <= y for x, y in zip(P.deg[a], alpha))}
        gens = {n: [g for g in gs if g[0] in keep]
                for n, gs in self.gens.items()}
        kept = {g for gs in gens.values() for g in gs}
        diffs = {n: {(r, c): v for (r, c), v in m.items() if c in kept}
                 for n, m in self.diffs.items()}
        cycles = {g: self.cycles[g] for g in kept}
        aug = {g: v for g, v in self.aug.items() if g in kept}
        sub = P.restrict(keep)
        return ConicComplex(sub, self.field, gens, cycles, diffs, aug,
                            self.augmented)

    def same_matrices(self, other):
        """Entry-wise equality of generators, cycles and differentials."""
        return (self.gens == other.gens and self.cycles == other.cycles
                and self.diffs == other.diffs and self.aug == other.aug)

    def to_json(self):
        from .gradedcomplex import _scalar_json

        def gid(g):
            return {"apex": g[0], "index": g[1]}

        return {
            "characteristic": self.field.characteristic,
            "augmented": self.augmented,
            "generators": [
                [{**gid(g),
                  "cycle": [{"verts": list(f), "coeff": _scalar_json(v)}
                            for f, v in sorted(self.cycles[g].items())]}
                 for g in self.gens.get(n, [])]
                for n in range(self.top + 1)],
            "differentials": [
                [{"row": gid(r), "col": gid(c), "scalar": _scalar_json(v)}
                 for (r, c), v in sorted(self.diffs.get(n, {}).items(),
                                         key=lambda kv: (str(kv[0][1]), str(kv[0][0])))]
                for n in range(1, self.top + 1)],
        }


def _decompose_by_apex(z):
    """Group the faces of a top cycle by their largest vertex."""
    parts = {}
    for f, v in z.items():
        parts.setdefault(f[0], {})[f[1:]] = v
    return parts


def _coords_in_basis(basis, faces, z, F):
    """Coordinates of the sparse chain z in the given list of cycle vectors."""
    if not basis:
        return None if z else []
    fix = {f: i for i, f in enumerate(faces)}
    entries = []
    for j, vec in enumerate(basis):
        for f, v in vec.items():
            entries.append((fix[f], j, v))
    A = SparseMatrix(len(faces), len(basis), entries)
    rhs = [F.zero] * len(faces)
    for f, v in z.items():
        rhs[fix[f]] = v
    return solve(A, rhs, F)


def conic_complex(P, F, augmented=False, cap=FACE_CAP):
    """Build the conic chain complex of a poset with deterministic,
    echelonized cycle bases at every apex."""
    P.order_complex(cap)
    gens = {}
    cycles = {}
    bases = {}
    for a in P.elements:
        n = P.dim(a)
        K = P.filter_complex(a)
        basis = cycle_space(K, n - 1, F)
        bases[a] = (K, basis)
        gens.setdefault(n, [])
        for i, z in enumerate(basis):
            gens[n].append((a, i))
            cycles[(a, i)] = z
    for n in gens:
        gens[n].sort(key=lambda g: (P.index[g[0]], g[1]))
    diffs = {}
    for n in sorted(gens):
        if n == 0:
            continue
        diffs[n] = {}
        for g in gens[n]:
            parts = _decompose_by_apex(cycles[g])
            for c, zc in parts.items():
                if P.dim(c) != n - 1:
                    raise VerificationError(
                        f"face top vertex {c!r} has dimension != {n - 1}")
                K_c, basis_c = bases[c]
                coords = _coords_in_basis(basis_c, K_c.faces.get(n - 2, []),
                                          zc, F)
                if coords is None:
                    raise VerificationError(
                        f"cycle component at apex {c!r} outside the cycle space")
                for i, s in enumerate(coords):
                    if s:
                        diffs[n][((c, i), g)] = s
    aug = {}
    for g in gens.get(0, []):
        aug[g] = cycles[g].get((), F.zero)
    C = ConicComplex(P, F, gens, cycles, diffs, aug, augmented)
    _check_conic_complex(C)
    return C


def _check_conic_complex(C):
    """d o d = 0, and each component has the expected top-homology rank."""
    F = C.field
    for n in sorted(C.diffs):
        if n + 1 not in C.diffs:
            continue
        lower = {}
        for (r, c), v in C.diffs[n].items():
            lower.setdefault(c, {})[r] = v
        comp = {}
        for (mid, c), v in C.diffs[n + 1].items():
            for r, w in lower.get(mid, {}).items():
                comp[(r, c)] = F.add(comp.get((r, c), F.zero), F.mul(v, w))
        bad = [k for k, v in comp.items() if v]
        if bad:
            raise VerificationError(f"conic d o d != 0 at {bad[0]}")


def skeleton_complex(P, n, cap=FACE_CAP):
    """The conic n-skeleton: all chains whose largest vertex has d <= n."""
    full = P.order_complex(cap)
    faces = {-1: [()]}
    for d, fs in full.faces.items():
        if d < 0:
            continue
        sub = [f for f in fs if P.dim(f[0]) <= n]
        if sub:
            faces[d] = sub
    return OrientedComplex(faces)


def kernel_skeleton_check(C):
    """rank Ker d_n of the conic complex == rank H~_n of the n-skeleton."""
    P, F = C.poset, C.field
    for n in range(0, C.top + 1):
        cols = C.gens.get(n, [])
        if n >= 1:
            A = C.matrix(n)
        else:
            cix = {g: j for j, g in enumerate(cols)}
            A = SparseMatrix(1, len(cols),
                             [(0, cix[g], v) for g, v in C.aug.items() if v])
        ker = len(cols) - rank(A, F)
        h = reduced_homology(skeleton_complex(P, n), F).get(n, 0)
        if ker != h:
            return False
    return True


def conic_vs_simplicial(P, F):
    """Compare augmented conic homology with the reduced homology of the
    order complex, under the vanishing hypothesis on all filters."""
    for a in P.elements:
        h = reduced_homology(P.filter_complex(a), F)
        if any(m <= P.dim(a) - 2 for m in h):
            raise HypothesisFailed(
                f"filter below {a!r} has homology in dimension <= d(a)-2")
    C = conic_complex(P, F, augmented=True)
    hc = C.homology_ranks()
    hs = reduced_homology(P.order_complex(), F)
    return hc == hs


def homogenize(C, deg=None):
    """Lift a conic complex to a Z^m-graded free complex along deg."""
    P = C.poset
    if deg is None:
        deg = P.deg
    if deg is None:
        raise NotAMorphism("no degree map supplied")
    deg = {a: tuple(deg[a]) for a in P.elements}
    for lo, hi in P.covers:
        if not all(x <= y for x, y in zip(deg[lo], deg[hi])):
            raise NotAMorphism(f"deg not monotone on {lo} < {hi}")
    num_vars = len(next(iter(deg.values())))

    def gid(g):
        return f"{g[0]}#{g[1]}"

    labels = {n: [(gid(g), deg[g[0]]) for g in gs]
              for n, gs in C.gens.items()}
    diffs = {n: {(gid(r), gid(c)): v for (r, c), v in m.items()}
             for n, m in C.diffs.items()}
    return GradedFreeComplex(num_vars, C.field, labels, diffs)


def supports_resolution(P, F, conic=None):
    """Exactness of the augmented conic complex of every degree-truncation.

    Returns (ok, witness alpha or None).
    """
    if P.deg is None:
        raise NotAMorphism("poset has no degree map")
    C = conic if conic is not None else conic_complex(P, F, augmented=True)
    if not C.augmented:
        C = ConicComplex(P, F, C.gens, C.cycles, C.diffs, C.aug, True)
    for alpha in sorted(join_closure(P.deg.values())):
        if not C.restrict_deg_leq(alpha).is_exact():
            return False, alpha
    return True, None
