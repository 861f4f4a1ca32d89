"""Residue field arithmetic: the prime field F_p for odd p.

Elements are plain ints reduced into ``[0, p)``.  Besides l-th power classes
and roots of unity, this module decides isotropy and hyperbolicity of
diagonal quadratic forms over F_p, each "isotropic" answer carrying an
explicit witness vector.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import gcd

from .errors import DomainError, PreconditionError

MAX_PRIME = 2**31


def is_prime(m):
    """Deterministic primality test by trial division (m is at most 2**31)."""
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not 3 <= self.p <= MAX_PRIME:
            raise PreconditionError(f"p must be an odd prime in [3, 2^31], got {self.p!r}")
        if not is_prime(self.p):
            raise PreconditionError(f"p = {self.p} is not prime")

    def __call__(self, x):
        return x % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise DomainError("0 has no inverse")
        return pow(x, -1, self.p)

    @cached_property
    def nonsquare(self):
        """Smallest quadratic non-residue."""
        for z in range(2, self.p):
            if pow(z, (self.p - 1) // 2, self.p) == self.p - 1:
                return z
        raise AssertionError("unreachable for odd p")

    def sqrt(self, x):
        """Smallest square root of x, or None when x is a non-residue (Tonelli-Shanks)."""
        p = self.p
        x %= p
        if x == 0:
            return 0
        if pow(x, (p - 1) // 2, p) != 1:
            return None
        if p % 4 == 3:
            r = pow(x, (p + 1) // 4, p)
        else:
            q, s = p - 1, 0
            while q % 2 == 0:
                q //= 2
                s += 1
            c = pow(self.nonsquare, q, p)
            r = pow(x, (q + 1) // 2, p)
            t = pow(x, q, p)
            m = s
            while t != 1:
                i, t2 = 0, t
                while t2 != 1:
                    t2 = t2 * t2 % p
                    i += 1
                b = pow(c, 1 << (m - i - 1), p)
                m, c = i, b * b % p
                r, t = r * b % p, t * c % p
        return min(r, p - r)


def is_square(f, x):
    """Euler's criterion for a nonzero x."""
    x %= f.p
    if x == 0:
        raise DomainError("is_square is undefined at 0")
    return pow(x, (f.p - 1) // 2, f.p) == 1


def primitive_root_of_unity(f, l):
    """Smallest ω in F_p with ω**l == 1 and ω != 1."""
    if l == f.p:
        raise PreconditionError("l must differ from the characteristic")
    if l == 2:
        return f.p - 1
    if (f.p - 1) % l:
        raise PreconditionError(f"no {l}-th roots of unity in F_{f.p}")
    for w in range(2, f.p):
        if pow(w, l, f.p) == 1:
            return w
    raise AssertionError("unreachable: l divides p - 1")


def power_class_rep(f, x, l):
    """Smallest positive representative of the coset x·(F_p*)^l."""
    x %= f.p
    if x == 0:
        raise DomainError("0 has no power class")
    g = gcd(l, f.p - 1)
    if g == 1:
        return 1
    e = (f.p - 1) // g
    xinv = f.inv(x)
    # cosets of the index-g subgroup are dense, so this stops after ~g steps
    y = 1
    while pow(y * xinv, e, f.p) != 1:
        y += 1
    return y


def _check_form(f, coeffs):
    if not coeffs:
        raise DomainError("empty form")
    cs = [c % f.p for c in coeffs]
    if any(c == 0 for c in cs):
        raise DomainError("residue forms must have nonzero coefficients")
    return cs


def form_value(f, coeffs, v):
    return sum(c * x * x for c, x in zip(coeffs, v)) % f.p


def residue_isotropic(f, coeffs):
    """Decide isotropy of the diagonal form ⟨coeffs⟩ over F_p.

    Returns ``(True, witness)`` or ``(False, None)``.  The witness is the
    lexicographically first nonzero vector supported on the first
    ``min(dim, 3)`` coordinates; it is checked before being returned.
    """
    cs = _check_form(f, coeffs)
    d = len(cs)
    if d == 1:
        return False, None
    k = min(d, 3)
    head = cs[:k]
    witness = None
    # Lex-first search: fix all but the last searched coordinate, then take
    # the smallest root for the last one.
    for prefix in product(range(f.p), repeat=k - 1):
        partial = form_value(f, head[:-1], prefix)
        if partial == 0:
            if any(prefix):
                witness = list(prefix) + [0]
                break
            continue
        r = f.sqrt(-partial * f.inv(head[-1]))
        if r is not None:
            witness = list(prefix) + [r]
            break
    if witness is None:
        if d >= 3:
            raise AssertionError("Chevalley-Warning violated: no witness found")
        return False, None
    witness += [0] * (d - k)
    if not any(witness) or form_value(f, cs, witness) != 0:
        raise AssertionError(f"bad isotropy witness {witness} for {cs}")
    return True, tuple(witness)


def signed_discriminant(f, coeffs):
    cs = _check_form(f, coeffs)
    disc = (-1) ** (len(cs) // 2)
    for c in cs:
        disc = disc * c % f.p
    return disc % f.p


def residue_hyperbolic(f, coeffs):
    """True iff ⟨coeffs⟩ is hyperbolic over F_p.

    Decided by dimension parity and the signed discriminant, then confirmed by
    splitting off hyperbolic planes one at a time.
    """
    cs = _check_form(f, coeffs)
    by_disc = len(cs) % 2 == 0 and is_square(f, signed_discriminant(f, cs))
    witt_index, anisotropic_dim = witt_decomposition(f, cs)
    by_splitting = anisotropic_dim == 0
    if by_disc != by_splitting:
        raise AssertionError(f"hyperbolicity routes disagree on {cs}")
    return by_disc


# --- explicit Witt decomposition ---------------------------------------------


def _diagonalize(f, gram):
    """Congruence-diagonalize a symmetric matrix over F_p; returns the nonzero diagonal."""
    p = f.p
    m = [row[:] for row in gram]
    d = len(m)
    out = []
    for i in range(d):
        if m[i][i] == 0:
            j = next((j for j in range(i + 1, d) if m[i][j]), None)
            if j is None:
                k = next((k for k in range(i + 1, d) if m[k][k]), None)
                if k is None:
                    out.extend([0] * (1 if all(v == 0 for v in m[i]) else 0))
                    continue
                m[i], m[k] = m[k], m[i]
                for row in m:
                    row[i], row[k] = row[k], row[i]
            else:
                # replace e_i by e_i + e_j; the new diagonal entry is 2 m[i][j] != 0
                for c in range(d):
                    m[i][c] = (m[i][c] + m[j][c]) % p
                for r in range(d):
                    m[r][i] = (m[r][i] + m[r][j]) % p
        piv = m[i][i]
        inv = f.inv(piv)
        for r in range(i + 1, d):
            if m[r][i]:
                factor = m[r][i] * inv % p
                for c in range(d):
                    m[r][c] = (m[r][c] - factor * m[i][c]) % p
                for c in range(d):
                    m[c][r] = (m[c][r] - factor * m[c][i]) % p
        out.append(piv)
    return [x for x in out if x]


def _nullspace(f, rows, d):
    """Basis of {x in F_p^d : r·x = 0 for r in rows}."""
    p = f.p
    m = [r[:] for r in rows]
    pivots = []
    rank = 0
    for col in range(d):
        pr = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pr is None:
            continue
        m[rank], m[pr] = m[pr], m[rank]
        inv = f.inv(m[rank][col])
        m[rank] = [x * inv % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                fac = m[r][col]
                m[r] = [(a - fac * b) % p for a, b in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(d) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * d
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc] % p
        basis.append(v)
    return basis


def witt_decomposition(f, coeffs):
    """Split hyperbolic planes off ⟨coeffs⟩ using explicit isotropic vectors.

    Returns ``(witt_index, anisotropic_dimension)``.
    """
    p = f.p
    diag = _check_form(f, coeffs)
    index = 0
    while len(diag) >= 2:
        iso, v = residue_isotropic(f, diag)
        if not iso:
            break
        d = len(diag)

        def bil(x, y):
            return sum(c * a * b for c, a, b in zip(diag, x, y)) % p

        k = next(i for i in range(d) if v[i])
        w = [0] * d
        w[k] = f.inv(diag[k] * v[k])
        half = bil(w, w) * f.inv(2) % p
        w = [(wi - half * vi) % p for wi, vi in zip(w, v)]
        assert bil(v, w) == 1 and bil(w, w) == 0 and bil(v, v) == 0
        rows = [[c * x % p for c, x in zip(diag, v)], [c * x % p for c, x in zip(diag, w)]]
        comp = _nullspace(f, rows, d)
        gram = [[bil(x, y) for y in comp] for x in comp]
        diag = _diagonalize(f, gram) if comp else []
        assert len(diag) == d - 2, "complement of a hyperbolic plane must stay nondegenerate"
        index += 1
    return index, len(diag)
