"""Exact scalar arithmetic (GF(p) and Q) and sparse exact linear algebra.

Scalars over characteristic 0 are `fractions.Fraction`; over GF(p) they are
plain ints in the range 0..p-1.  All routines are deterministic: pivoting
always picks the first usable entry in row-major order, kernel vectors are
listed by ascending free column and normalized so that their first nonzero
coordinate is 1.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidField, ShapeError


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field GF(p), or the rationals when characteristic == 0."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise InvalidField(f"characteristic must be 0 or prime, got {p}")

    @property
    def p(self):
        return self.characteristic

    def __call__(self, x):
        """Coerce an int / Fraction / 'a/b' string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.characteristic:
            if isinstance(x, Fraction):
                num = x.numerator % self.characteristic
                den = x.denominator % self.characteristic
                return (num * pow(den, -1, self.characteristic)) % self.characteristic
            return x % self.characteristic
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    @property
    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    @property
    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.characteristic if self.characteristic else a + b

    def sub(self, a, b):
        return (a - b) % self.characteristic if self.characteristic else a - b

    def mul(self, a, b):
        return (a * b) % self.characteristic if self.characteristic else a * b

    def neg(self, a):
        return (-a) % self.characteristic if self.characteristic else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic:
            return pow(a, -1, self.characteristic)
        return Fraction(1) / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))


class SparseMatrix:
    """Immutable sparse matrix; entries stored as {(row, col): nonzero scalar}."""

    def __init__(self, rows, cols, entries=()):
        self.rows = rows
        self.cols = cols
        data = {}
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ShapeError(f"entry ({r},{c}) out of range for {rows}x{cols}")
            if (r, c) in data:
                raise ShapeError(f"duplicate entry at ({r},{c})")
            if not v:
                raise ShapeError(f"explicit zero entry at ({r},{c})")
            data[(r, c)] = v
        self.entries = data

    @classmethod
    def from_dense(cls, dense):
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls(rows, cols, [(r, c, v) for r, row in enumerate(dense)
                                for c, v in enumerate(row) if v])

    def to_dense(self, F):
        M = [[F.zero] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            M[r][c] = F(v)
        return M

    def mul_vec(self, x, F):
        if len(x) != self.cols:
            raise ShapeError("vector length mismatch")
        y = [F.zero] * self.rows
        for (r, c), v in self.entries.items():
            if x[c]:
                y[r] = F.add(y[r], F.mul(F(v), x[c]))
        return y

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def _rref(M, F, ncols):
    """In-place reduced row echelon form.  Returns the list of pivot columns."""
    pivots = []
    prow = 0
    nrows = len(M)
    for c in range(ncols):
        pr = None
        for r in range(prow, nrows):
            if M[r][c]:
                pr = r
                break
        if pr is None:
            continue
        M[prow], M[pr] = M[pr], M[prow]
        inv = F.inv(M[prow][c])
        if inv != F.one:
            M[prow] = [F.mul(inv, v) for v in M[prow]]
        row = M[prow]
        for r in range(nrows):
            if r != prow and M[r][c]:
                f = M[r][c]
                M[r] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[r], row)]
        pivots.append(c)
        prow += 1
        if prow == nrows:
            break
    return pivots


def _rref_gf2(rows_bits, ncols):
    """RREF over GF(2) with rows as bitmasks (bit i = column i)."""
    pivots = []
    prow = 0
    nrows = len(rows_bits)
    for c in range(ncols):
        mask = 1 << c
        pr = None
        for r in range(prow, nrows):
            if rows_bits[r] & mask:
                pr = r
                break
        if pr is None:
            continue
        rows_bits[prow], rows_bits[pr] = rows_bits[pr], rows_bits[prow]
        piv = rows_bits[prow]
        for r in range(nrows):
            if r != prow and rows_bits[r] & mask:
                rows_bits[r] ^= piv
        pivots.append(c)
        prow += 1
        if prow == nrows:
            break
    return pivots


def _to_gf2_rows(A):
    rows_bits = [0] * A.rows
    for (r, c) in A.entries:
        rows_bits[r] |= 1 << c
    return rows_bits


def rank(A, F):
    """Rank of a SparseMatrix over F."""
    if A.rows == 0 or A.cols == 0:
        return 0
    if F.characteristic == 2:
        return len(_rref_gf2(_to_gf2_rows(A), A.cols))
    M = A.to_dense(F)
    return len(_rref(M, F, A.cols))


def kernel_basis(A, F):
    """Echelonized basis of the right null space of A over F.

    Vectors are ordered by ascending free column and scaled so the first
    nonzero coordinate is 1.
    """
    n = A.cols
    if n == 0:
        return []
    if A.rows == 0:
        basis = []
        for j in range(n):
            v = [F.zero] * n
            v[j] = F.one
            basis.append(v)
        return basis
    if F.characteristic == 2:
        rows_bits = _to_gf2_rows(A)
        pivots = _rref_gf2(rows_bits, n)
        pivot_set = set(pivots)
        basis = []
        for j in range(n):
            if j in pivot_set:
                continue
            v = [0] * n
            v[j] = 1
            for i, pc in enumerate(pivots):
                if rows_bits[i] & (1 << j):
                    v[pc] = 1
            basis.append(v)
        return basis
    M = A.to_dense(F)
    pivots = _rref(M, F, n)
    pivot_set = set(pivots)
    basis = []
    for j in range(n):
        if j in pivot_set:
            continue
        v = [F.zero] * n
        v[j] = F.one
        for i, pc in enumerate(pivots):
            if M[i][j]:
                v[pc] = F.neg(M[i][j])
        lead = next(x for x in v if x)
        if lead != F.one:
            inv = F.inv(lead)
            v = [F.mul(inv, x) for x in v]
        basis.append(v)
    return basis


def solve(A, b, F):
    """Some x with A.x = b, or None.  Free coordinates are set to zero."""
    if len(b) != A.rows:
        raise ShapeError(f"rhs length {len(b)} != {A.rows} rows")
    n = A.cols
    if F.characteristic == 2:
        rows_bits = _to_gf2_rows(A)
        for r, v in enumerate(b):
            if F(v):
                rows_bits[r] |= 1 << n
        pivots = _rref_gf2(rows_bits, n)
        x = [0] * n
        for i, pc in enumerate(pivots):
            if rows_bits[i] >> n:
                x[pc] = 1
        for r in range(len(pivots), A.rows):
            if rows_bits[r]:
                return None
        return x
    M = A.to_dense(F)
    for r in range(A.rows):
        M[r].append(F(b[r]))
    pivots = _rref(M, F, n)
    for r in range(len(pivots), A.rows):
        if M[r][n]:
            return None
    x = [F.zero] * n
    for i, pc in enumerate(pivots):
        x[pc] = M[i][n]
    return x
