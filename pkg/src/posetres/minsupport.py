"""Boundary supports, circuit tests for minimal-support cycles, and the
inductive rewriting of a homogeneous basis into one with minimal support.

All detection and repair happens on the bar complex; a repaired cycle is
lifted back upstairs with the monomial coefficients dictated by the degrees.
"""

from .errors import (NotACycle, NotFound, NotMinimal, ShapeError,
                     VerificationError)
from .exactla import SparseMatrix, kernel_basis, solve
from .gradedcomplex import GradedFreeComplex
from .monomials import lcm


def boundary_support(C, b):
    """Ids hit by the differential image of basis element b."""
    n = C.hdeg_of.get(b)
    if n is None:
        raise NotFound(f"unknown basis id {b!r}")
    if n < 1:
        raise ShapeError(f"{b!r} sits in degree 0; no boundary support")
    return frozenset(C.column(b))


def _cycle_matrix(Cbar, n, cols):
    """Matrix whose kernel is the degree-n cycle space, on the given columns.

    In degree 0 the relevant map is the bar augmentation sending every basis
    element to 1; in degree n >= 1 it is the bar differential.
    """
    if n == 0:
        F = Cbar.field
        return SparseMatrix(1, len(cols), [(0, j, F.one) for j in range(len(cols))])
    rows = Cbar.labels.get(n - 1, [])
    rix = {i: k for k, i in enumerate(rows)}
    cix = {i: k for k, i in enumerate(cols)}
    entries = [(rix[r], cix[c], v)
               for (r, c), v in Cbar.diffs.get(n, {}).items() if c in cix]
    return SparseMatrix(len(rows), len(cols), entries)


def _as_dict(Cbar, n, z):
    if isinstance(z, dict):
        bad = [b for b in z if Cbar.hdeg_of.get(b) != n]
        if bad:
            raise NotFound(f"id {bad[0]!r} not in degree {n}")
        return {b: v for b, v in z.items() if v}
    ids = Cbar.labels.get(n, [])
    if len(z) != len(ids):
        raise ShapeError(f"vector length {len(z)} != rank {len(ids)}")
    return {b: v for b, v in zip(ids, z) if v}


def is_minimal_support_cycle(Cbar, n, z):
    """Circuit test: no nonzero cycle has support strictly inside supp(z)."""
    F = Cbar.field
    zd = _as_dict(Cbar, n, z)
    ids = Cbar.labels.get(n, [])
    pos = {i: k for k, i in enumerate(ids)}
    A = _cycle_matrix(Cbar, n, ids)
    vec = [F(zd.get(i, F.zero)) for i in ids]
    if any(A.mul_vec(vec, F)):
        raise NotACycle(f"vector is not in the degree-{n} cycle space")
    S = sorted(zd, key=pos.get)
    for c in S:
        sub = [b for b in S if b != c]
        if kernel_basis(_cycle_matrix(Cbar, n, sub), F):
            return False
    return True


def _shrink_to_minimal(Cbar, n, zd, pos):
    """Smallest-support cycle inside supp(zd), or None if zd is minimal."""
    F = Cbar.field
    S = sorted(zd, key=pos.get)
    shrunk = False
    while True:
        progressed = False
        for c in S:
            sub = [b for b in S if b != c]
            ker = kernel_basis(_cycle_matrix(Cbar, n, sub), F)
            if ker:
                zd = {b: v for b, v in zip(sub, ker[0]) if v}
                S = sorted(zd, key=pos.get)
                shrunk = progressed = True
                break
        if not progressed:
            return zd if shrunk else None


class BasisChangeLog:
    """Ordered record of the basis replacements performed."""

    def __init__(self):
        self.steps = []

    def record(self, degree, replaced, case, expression, exponents):
        self.steps.append({
            "degree": degree,
            "replaced": replaced,
            "case": case,
            "expression": [{"id": i, "scalar": s, "exponent": list(e)}
                           for (i, s), e in zip(expression, exponents)],
        })

    def to_json(self):
        from .gradedcomplex import _scalar_json
        return {"steps": [
            {**s, "expression": [{**t, "scalar": _scalar_json(t["scalar"])}
                                 for t in s["expression"]]}
            for s in self.steps]}


def make_minimal_support_basis(C):
    """Rewrite the basis of a minimal graded resolution so that every column
    passes the circuit test, degree by degree.  Returns the new complex and
    the replacement log; basis ids and labels are preserved."""
    if not C.is_minimal():
        raise NotMinimal("input complex has a unit entry")
    F = C.field
    deg = C.degree_of
    pos = {}
    for n, labs in C.labels.items():
        for k, (i, _) in enumerate(labs):
            pos[i] = k
    # mutable column maps of every differential
    col = {n: {} for n in C.diffs}
    for n, mat in C.diffs.items():
        for (r, c), v in mat.items():
            col[n].setdefault(c, {})[r] = v

    def bar_view():
        labels = {n: [i for i, _ in labs] for n, labs in C.labels.items()}
        diffs = {n: {(r, c): v for c, cm in col.get(n, {}).items()
                     for r, v in cm.items()} for n in col}
        return _BarLike(F, labels, diffs)

    log = BasisChangeLog()
    for k1 in sorted(C.diffs):  # k1 = k+1, columns live here, cycles in k1-1
        k = k1 - 1
        for bp, _ in C.labels.get(k1, []):
            while True:
                Cbar = bar_view()
                zd = dict(col[k1].get(bp, {}))
                if not zd:
                    raise VerificationError(
                        f"zero column {bp!r} in a minimal resolution")
                zp = _shrink_to_minimal(Cbar, k, zd, pos)
                if zp is None:
                    break
                # lift degree of z' and solve for a homogeneous preimage w
                alpha = None
                for b in zp:
                    alpha = deg[b] if alpha is None else lcm(alpha, deg[b])
                wcols = [i for i, _ in C.labels.get(k1, [])
                         if all(x <= y for x, y in zip(deg[i], alpha))]
                rows = [i for i, _ in C.labels.get(k, [])]
                rix = {i: j for j, i in enumerate(rows)}
                cix = {i: j for j, i in enumerate(wcols)}
                entries = [(rix[r], cix[c], v)
                           for c in wcols for r, v in col[k1].get(c, {}).items()]
                A = SparseMatrix(len(rows), len(wcols), entries)
                rhs = [F(zp.get(i, F.zero)) for i in rows]
                x = solve(A, rhs, F)
                if x is None:
                    raise VerificationError(
                        f"strand at {alpha} not exact; cannot lift cycle")
                w = {i: v for i, v in zip(wcols, x) if v}
                if bp in w:
                    expr = dict(w)  # case 1: replace b' by w
                    case = 1
                else:
                    b = min(zp, key=pos.get)  # case 2
                    ab, apb = zd[b], zp[b]
                    expr = {i: F.neg(F.mul(ab, v)) for i, v in w.items()}
                    expr[bp] = F.add(expr.get(bp, F.zero), apb)
                    expr = {i: v for i, v in expr.items() if v}
                    case = 2
                _apply_replacement(col, C, k1, bp, expr)
                items = sorted(expr.items(), key=lambda kv: pos[kv[0]])
                exps = [tuple(y - x for x, y in zip(deg[i], deg[bp]))
                        for i, _ in items]
                log.record(k1, bp, case, items, exps)

    labels = {n: list(labs) for n, labs in C.labels.items()}
    diffs = {n: {(r, c): v for c, cm in col[n].items() for r, v in cm.items()}
             for n in col}
    out = GradedFreeComplex(C.num_vars, F, labels, diffs)
    out.check_complex()
    if not out.is_minimal():
        raise VerificationError("basis rewrite produced a unit entry")
    return out, log


class _BarLike:
    """Minimal stand-in with the BarComplex attributes the helpers use."""

    def __init__(self, field, labels, diffs):
        self.field = field
        self.labels = labels
        self.diffs = diffs
        self.hdeg_of = {i: n for n, ids in labels.items() for i in ids}


def _apply_replacement(col, C, k1, bp, expr):
    """Replace basis element bp of degree k1 by sum expr (bar scalars).

    Updates the column of bp in d_{k1} and the bp-row of d_{k1+1}.
    """
    F = C.field
    t = expr[bp]
    # new column: linear combination of the old columns
    newcol = {}
    for i, s in expr.items():
        for r, v in col[k1].get(i, {}).items():
            acc = F.add(newcol.get(r, F.zero), F.mul(s, v))
            if acc:
                newcol[r] = acc
            else:
                newcol.pop(r, None)
    col[k1][bp] = newcol
    # rewrite the bp-row of the next differential: old bp = (new - rest)/t
    up = col.get(k1 + 1)
    if up is None:
        return
    tinv = F.inv(t)
    for g, cm in up.items():
        s = cm.get(bp)
        if s is None:
            continue
        factor = F.mul(s, tinv)
        cm[bp] = factor
        for i, ti in expr.items():
            if i == bp:
                continue
            acc = F.sub(cm.get(i, F.zero), F.mul(factor, ti))
            if acc:
                cm[i] = acc
            else:
                cm.pop(i, None)


def noncomparable_supports(C):
    """True iff within each degree no boundary support contains another."""
    for n in C.diffs:
        sups = []
        for b, _ in C.labels.get(n, []):
            sups.append(frozenset(C.column(b)))
        for i in range(len(sups)):
            for j in range(len(sups)):
                if i != j and sups[i] <= sups[j]:
                    return False
    return True
