"""Decomposition of field elements modulo l-th powers.

Given nonzero a_1..a_s and monomials π_1..π_n whose valuations are a
Q-basis of the value group, :func:`decompose` produces c_1..c_n with

    a_i = u_i · Π_j c_j**mu[i][j] · b_i**l,    0 <= mu[i][j] < l,

u_i units.  Every c_j, b_i and u_i is returned as a :class:`GroupWord` in
the names ``a1..as`` and ``pi1..pin``, so each identity holds exactly in the
free abelian group on those names and can be checked without expanding any
Laurent polynomial.

The elimination works one basis coordinate at a time.  A row whose
coordinate has l-adic denominator part l**y is either cleared with powers
of π_j (when every row has y = 0) or against a pivot row of maximal y,
which becomes c_j after renormalising its coordinate to exactly 1/l**y.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError, ResolutionError
from .finite_field import PrimeField, is_prime, power_class_rep
from .laurent import GroupWord, LeadingData, evaluate_word, leading
from .valgroup import ValuationBasis, determinant, independent_mod, l_adic_split


def coprime_inverse(m, l, k):
    """Smallest positive m' with m·m' ≡ 1 (mod l**k)."""
    from math import gcd

    if gcd(m, l) != 1:
        raise PreconditionError(f"{m} is not prime to {l}")
    return pow(m, -1, l**k) if l**k > 1 else 1


def a_name(i):
    return f"a{i + 1}"


def pi_name(j):
    return f"pi{j + 1}"


def decomposition_env(a, basis):
    """Bindings for the names used in decomposition words."""
    env = {a_name(i): leading(x) for i, x in enumerate(a)}
    env.update({pi_name(j): leading(x) for j, x in enumerate(basis)})
    return env


@dataclass
class DecompositionResult:
    c: list
    mu: list
    b: list
    u: list  # unit words, valuation zero
    u_residue: list
    u_class: list
    l: int
    separates_classes: bool
    cases: list = field(default_factory=list)  # per coordinate: ("pi", None, 0) or ("pivot", row name, y)

    def to_dict(self):
        return {
            "c": [str(w) for w in self.c],
            "mu": [list(r) for r in self.mu],
            "b": [str(w) for w in self.b],
            "u": [str(w) for w in self.u],
            "u_residue": list(self.u_residue),
            "u_class": list(self.u_class),
            "l": self.l,
            "separates_classes": self.separates_classes,
            "cases": [list(cs) for cs in self.cases],
        }


class _Row:
    """Running identity a_i = W · Π c_j**E[j] · P**l over the free group."""

    __slots__ = ("word", "exps", "lpart", "coords")

    def __init__(self, word, n, coords):
        self.word = word
        self.exps = [0] * n
        self.lpart = GroupWord()
        self.coords = list(coords)

    def power(self, m, l):
        # W = W**m · (W**-q)**l  where m = 1 + l·q
        q, r = divmod(m - 1, l)
        assert r == 0
        self.lpart = self.lpart * self.word ** (-q)
        self.word = self.word**m
        self.coords = [x * m for x in self.coords]

    def clear(self, j, cword, ccoords, e):
        if e:
            self.word = self.word * cword ** (-e)
            self.exps[j] += e
            self.coords = [x - e * y if y else x for x, y in zip(self.coords, ccoords)]


def decompose(a, basis, l):
    """Run the elimination and return a :class:`DecompositionResult`.

    ``a`` and ``basis`` are lists of LeadingData (or LaurentElement).
    """
    a = [leading(x) for x in a]
    basis = [leading(x) for x in basis]
    if not basis:
        raise PreconditionError("empty basis")
    p, n = basis[0].p, basis[0].n
    if len(basis) != n:
        raise PreconditionError(f"basis must have exactly n = {n} elements")
    if any(x.p != p or x.n != n for x in a + basis):
        raise PreconditionError("all elements must come from the same field")
    if not is_prime(l):
        raise PreconditionError(f"l = {l} is not prime")
    if l == p:
        raise PreconditionError("l must differ from the residue characteristic")
    vb = ValuationBasis([x.expo for x in basis])

    rows = [_Row(GroupWord.gen(a_name(i)), n, vb.coordinates(x.expo)) for i, x in enumerate(a)]
    # The basis monomials ride along as trailing rows.  They never win a pivot
    # tie against an input row, but once earlier coordinates are cleared they
    # can need one, and keeping them guarantees the c_j span every word
    # valuation modulo l.
    rows += [_Row(GroupWord.gen(pi_name(j)), n, vb.coordinates(x.expo)) for j, x in enumerate(basis)]
    c_words, c_coords, cases = [], [], []
    for j in range(n):
        for row in rows:
            x, y, z = l_adic_split(row.coords[j], l)
            if z != 1:
                row.power(z * coprime_inverse(z, l, 1), l)
        splits = [l_adic_split(row.coords[j], l) for row in rows]
        assert all(z == 1 for _, _, z in splits)
        ymax = max((y for _, y, _ in splits), default=0)
        unit = [Fraction(int(k == j)) for k in range(n)]
        if ymax == 0:
            cword, ccoords = GroupWord.gen(pi_name(j)), unit
            for row, (x, _, _) in zip(rows, splits):
                row.clear(j, cword, ccoords, x)
            cases.append(("pi", None, 0))
        else:
            piv = next(i for i, (_, y, _) in enumerate(splits) if y == ymax)
            x, y, _ = splits[piv]
            prow = rows[piv]
            xp = coprime_inverse(x, l, y + 1)
            xpp = (1 - x * xp) // l ** (y + 1)
            # c_j = W**x' · π_j**(l·x'') has j-th coordinate exactly 1/l**y
            cword = prow.word**xp * GroupWord.gen(pi_name(j)) ** (l * xpp)
            ccoords = [xp * cc + l * xpp * uu for cc, uu in zip(prow.coords, unit)]
            assert ccoords[j] == Fraction(1, l**y)
            # W = c_j**x · (π_j**(-x·x'') · W**(l**y · x''))**l
            prow.lpart = prow.lpart * GroupWord.gen(pi_name(j)) ** (-x * xpp) * prow.word ** (l**y * xpp)
            prow.word = GroupWord()
            prow.exps[j] += x
            prow.coords = [Fraction(0)] * n
            for i, (row, (xi, yi, _)) in enumerate(zip(rows, splits)):
                if i != piv:
                    row.clear(j, cword, ccoords, xi * l ** (y - yi))
            cases.append(("pivot", a_name(piv) if piv < len(a) else pi_name(piv - len(a)), y))
        assert all(row.coords[j] == 0 for row in rows)
        c_words.append(cword)
        c_coords.append(ccoords)

    f = PrimeField(p)
    env = decomposition_env(a, basis)
    mu, b, u, u_res, u_cls = [], [], [], [], []
    assert all(not any(row.coords) for row in rows)
    for row in rows[: len(a)]:
        lpart = row.lpart
        mrow = []
        for j, e in enumerate(row.exps):
            q, r = divmod(e, l)
            mrow.append(r)
            lpart = lpart * c_words[j] ** q
        mu.append(mrow)
        b.append(lpart)
        u.append(row.word)
        ures = evaluate_word(row.word, env, p, n)
        assert ures.is_unit()
        u_res.append(ures.coeff)
        u_cls.append(power_class_rep(f, ures.coeff, l))
    c_vals = [evaluate_word(w, env, p, n).expo for w in c_words]
    separates = determinant(c_vals) % l != 0
    return DecompositionResult(c_words, mu, b, u, u_res, u_cls, l, separates, cases)


def verify_decomposition(a, basis, l, result, env=None):
    """Check a certificate using only word evaluation on leading data.

    Verifies, for every row, the exact valuation identity
    val(a_i) = Σ_j mu_ij·val(c_j) + l·val(b_i), the matching residue identity
    with the recorded unit residue, the range of mu, and that the c_j reduce
    to a basis of Λ/lΛ where Λ is the lattice of valuations of words.
    Raises :class:`ResolutionError` when a name is unbound.
    """
    a = [leading(x) for x in a]
    basis = [leading(x) for x in basis]
    if env is None:
        env = decomposition_env(a, basis)
    p, n = basis[0].p, basis[0].n
    if len(result.c) != n or len(result.mu) != len(a) or len(result.b) != len(a):
        return False
    if len(result.u_residue) != len(a):
        return False
    for w in [*result.c, *result.b, *result.u]:
        for name in w.names():
            if name not in env:
                raise ResolutionError(f"unbound name {name!r}")
    cs = [evaluate_word(w, env, p, n) for w in result.c]
    for i, ai in enumerate(a):
        row = result.mu[i]
        if len(row) != n or any(not (0 <= m < l) for m in row):
            return False
        rhs = evaluate_word(result.b[i], env, p, n) ** l
        for cj, m in zip(cs, row):
            rhs = rhs * cj**m
        if ai.expo != rhs.expo:
            return False
        if ai.coeff != result.u_residue[i] * rhs.coeff % p:
            return False
        if i < len(result.u):
            uval = evaluate_word(result.u[i], env, p, n)
            if not uval.is_unit() or uval.coeff != result.u_residue[i] % p:
                return False
    if determinant([c.expo for c in cs]) == 0:
        return False
    gens = [env[k].expo if isinstance(env[k], LeadingData) else leading(env[k]).expo for k in sorted(env)]
    try:
        return independent_mod([c.expo for c in cs], gens, l)
    except ValueError:
        return False
