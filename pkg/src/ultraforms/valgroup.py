"""Exact linear algebra over Q for valuation vectors.

An exponent vector is a tuple of :class:`fractions.Fraction`.  Everything
here is exact; there is no floating point anywhere.
"""

from fractions import Fraction
from math import lcm

from .errors import PreconditionError


def exponent_vector(entries):
    return tuple(Fraction(e) for e in entries)


def rational_rank(vectors):
    """Rank over Q of a list of equal-length rational vectors.

    Rows are scaled to integers and reduced with fraction-free (Bareiss)
    elimination, so intermediate values stay integral.
    """
    rows = [_integer_row(v) for v in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("vectors must have the same length")
    rank = 0
    prev = 1
    for col in range(width):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        piv = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            rows[r] = [(piv * rows[r][c] - rows[r][col] * rows[rank][c]) // prev for c in range(width)]
        prev = piv
        rank += 1
        if rank == len(rows):
            break
    return rank


def _integer_row(v):
    v = [Fraction(x) for x in v]
    m = lcm(*(x.denominator for x in v)) if v else 1
    return [int(x * m) for x in v]


def determinant(rows):
    """Exact determinant of a square integer matrix (Bareiss)."""
    m = [list(map(int, r)) for r in rows]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


class ValuationBasis:
    """n integer vectors, linearly independent over Q.

    Coordinates with respect to the basis are computed with a cached exact
    inverse of the basis matrix.
    """

    def __init__(self, vectors):
        vecs = [tuple(int(x) for x in v) for v in vectors]
        n = len(vecs)
        if n == 0 or any(len(v) != n for v in vecs):
            raise PreconditionError("a valuation basis needs n vectors of length n")
        if any(Fraction(x) != int(x) for v in vectors for x in v):
            raise PreconditionError("basis vectors must have integer entries")
        if rational_rank(vecs) != n:
            raise PreconditionError("basis vectors are linearly dependent over Q")
        self.vectors = vecs
        self.n = n
        self._inverse = _invert([[Fraction(vecs[j][i]) for j in range(n)] for i in range(n)])
        self._identity = all(vecs[j][i] == (i == j) for i in range(n) for j in range(n))

    def __repr__(self):
        return f"ValuationBasis({self.vectors})"

    def coordinates(self, v):
        if len(v) != self.n:
            raise ValueError(f"expected a vector of length {self.n}")
        v = [Fraction(x) for x in v]
        if self._identity:
            return tuple(v)
        return tuple(sum((row[k] * v[k] for k in range(self.n)), Fraction(0)) for row in self._inverse)

    def combine(self, coords):
        """Inverse of :meth:`coordinates`: Σ coords[j]·vectors[j]."""
        return tuple(
            sum((Fraction(c) * vec[i] for c, vec in zip(coords, self.vectors)), Fraction(0)) for i in range(self.n)
        )


def _invert(m):
    n = len(m)
    a = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                fac = a[r][col]
                a[r] = [x - fac * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def coordinates(v, basis):
    if not isinstance(basis, ValuationBasis):
        basis = ValuationBasis(basis)
    return basis.coordinates(v)


def order_of(coords):
    """Least common multiple of the denominators (the order of the element)."""
    return lcm(*(Fraction(c).denominator for c in coords)) if coords else 1


def l_adic_split(r, l):
    """Write r = x / (l**y * z) with gcd(z, l) == 1 and z > 0."""
    r = Fraction(r)
    den, y = r.denominator, 0
    while den % l == 0:
        den //= l
        y += 1
    return r.numerator, y, den


def lattice_basis(vectors):
    """Hermite-style Z-basis (list of rows) of the lattice spanned by integer vectors."""
    rows = [list(map(int, v)) for v in vectors if any(v)]
    if not rows:
        return []
    width = len(rows[0])
    basis = []
    for col in range(width):
        nz = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            head = nz[0]
            reduced = [head]
            for r in nz[1:]:
                q = r[col] // head[col]
                r = [a - q * b for a, b in zip(r, head)]
                (reduced if r[col] else rest).append(r)
            nz = reduced
        if nz:
            basis.append(nz[0] if nz[0][col] > 0 else [-x for x in nz[0]])
        rows = [r for r in rest if any(r)]
    return basis


def lattice_covolume(vectors, n):
    """Index-style volume of a full-rank lattice in Z^n (|det| of a basis)."""
    b = lattice_basis(vectors)
    if len(b) != n:
        raise PreconditionError("lattice is not of full rank")
    return abs(determinant(b))


def independent_mod(vectors, lattice_gens, l):
    """Do ``vectors`` reduce to a basis of Λ/lΛ, Λ the lattice spanned by ``lattice_gens``?

    Requires every vector to lie in Λ.  With V the matrix of ``vectors`` and H a
    basis of Λ, the coordinate matrix V·H⁻¹ is invertible mod l exactly when
    l does not divide det(V)/det(H).
    """
    n = len(vectors)
    detv = determinant(vectors)
    covol = lattice_covolume(lattice_gens, n)
    if detv % covol:
        raise ValueError("vectors do not lie in the lattice")
    return (detv // covol) % l != 0
