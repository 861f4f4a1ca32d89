"""Elements of K = F_p((t1))...((tn)) as finite Laurent polynomials.

The valuation of a nonzero element is the exponent vector of its leading
term, where terms are compared lexicographically starting from the
outermost variable t_n.  All class-level computations go through
:class:`LeadingData`; the tail ``1 + (higher terms)`` is an l-th power by
Hensel's lemma whenever l != p, so it never needs to be expanded.
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import DomainError, ParseError, PreconditionError, ResolutionError
from .finite_field import PrimeField, power_class_rep

MAX_EXPONENT = 2**31


def valuation_key(expo):
    """Sort key realising the iterated-Laurent valuation order (t_n first)."""
    return tuple(reversed(expo))


@dataclass(frozen=True)
class LeadingData:
    """Leading coefficient (a unit residue) and valuation of a nonzero element."""

    coeff: int
    expo: tuple
    p: int

    def __post_init__(self):
        if self.coeff % self.p == 0:
            raise DomainError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeff", self.coeff % self.p)
        object.__setattr__(self, "expo", tuple(int(e) for e in self.expo))

    @property
    def n(self):
        return len(self.expo)

    def __mul__(self, other):
        if other.p != self.p or other.n != self.n:
            raise ValueError("leading data from different fields")
        return LeadingData(self.coeff * other.coeff, tuple(a + b for a, b in zip(self.expo, other.expo)), self.p)

    def __pow__(self, k):
        return LeadingData(pow(self.coeff, k, self.p), tuple(k * e for e in self.expo), self.p)

    def __neg__(self):
        return LeadingData(-self.coeff, self.expo, self.p)

    def inverse(self):
        return self ** -1

    def is_unit(self):
        return not any(self.expo)

    @classmethod
    def one(cls, p, n):
        return cls(1, (0,) * n, p)


class LaurentElement:
    """A nonzero finite sum Σ c_e t^e with coefficients in F_p*."""

    __slots__ = ("p", "n", "terms")

    def __init__(self, terms, p, n):
        merged = {}
        for expo, c in dict(terms).items():
            expo = tuple(int(e) for e in expo)
            if len(expo) != n:
                raise ValueError(f"exponent vector {expo} does not have length {n}")
            merged[expo] = (merged.get(expo, 0) + c) % p
        clean = {e: c for e, c in merged.items() if c}
        if not clean:
            raise DomainError("zero element")
        self.p = p
        self.n = n
        self.terms = dict(sorted(clean.items(), key=lambda kv: valuation_key(kv[0])))

    @classmethod
    def monomial(cls, coeff, expo, p):
        return cls({tuple(expo): coeff}, p, len(expo))

    def __eq__(self, other):
        return isinstance(other, LaurentElement) and (self.p, self.n, self.terms) == (other.p, other.n, other.terms)

    def __hash__(self):
        return hash((self.p, self.n, tuple(self.terms.items())))

    def __repr__(self):
        return f"LaurentElement({format_element(self)!r}, p={self.p})"

    def __str__(self):
        return format_element(self)

    def __mul__(self, other):
        if (other.p, other.n) != (self.p, self.n):
            raise ValueError("elements of different fields")
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % self.p
        return LaurentElement(out, self.p, self.n)

    def __neg__(self):
        return LaurentElement({e: -c for e, c in self.terms.items()}, self.p, self.n)


def leading(e):
    """Leading term of a nonzero element, as :class:`LeadingData`."""
    if isinstance(e, LeadingData):
        return e
    if not isinstance(e, LaurentElement) or not e.terms:
        raise DomainError("leading() needs a nonzero element")
    expo, coeff = next(iter(e.terms.items()))
    return LeadingData(coeff, expo, e.p)


# --- l-th power classes -------------------------------------------------------


@dataclass(frozen=True)
class LClass:
    """Class of an element in K*/(K*)^l: exponents mod l and a unit coset representative."""

    expo_mod: tuple
    unit_class: int
    p: int
    l: int

    def __add__(self, other):
        f = PrimeField(self.p)
        return LClass(
            tuple((a + b) % self.l for a, b in zip(self.expo_mod, other.expo_mod)),
            power_class_rep(f, self.unit_class * other.unit_class, self.l),
            self.p,
            self.l,
        )

    def is_trivial(self):
        return self.unit_class == 1 and not any(self.expo_mod)


def l_class(d, l):
    d = leading(d)
    if gcd(l, d.p) != 1:
        raise PreconditionError("l must be prime to the residue characteristic")
    return LClass(tuple(e % l for e in d.expo), power_class_rep(PrimeField(d.p), d.coeff, l), d.p, l)


def all_l_classes(p, n, l):
    """Every element of K*/(K*)^l, as canonical LeadingData representatives.

    Ordered by exponent vector (lexicographically) and then by unit representative.
    """
    from itertools import product

    f = PrimeField(p)
    units = sorted({power_class_rep(f, x, l) for x in range(1, p)})
    return [LeadingData(u, e, p) for e in product(range(l), repeat=n) for u in units]


# --- group words --------------------------------------------------------------

_NAME_RE = re.compile(r"([A-Za-z_]+)(\d*)$")


@lru_cache(maxsize=None)
def _name_key(name):
    m = _NAME_RE.match(name)
    if not m:
        return (name, -1)
    return (m.group(1), int(m.group(2)) if m.group(2) else -1)


class GroupWord:
    """Formal product Π name**exponent in a free abelian group.

    Exponents are arbitrary-precision ints; factors with zero exponent are
    dropped.  Factors are kept in a canonical name order for stable output.
    """

    __slots__ = ("_exps",)

    def __init__(self, factors=()):
        exps = {}
        items = factors.items() if isinstance(factors, dict) else factors
        for name, k in items:
            exps[name] = exps.get(name, 0) + int(k)
        self._exps = {nm: exps[nm] for nm in sorted(exps, key=_name_key) if exps[nm]}

    @classmethod
    def gen(cls, name):
        return cls({name: 1})

    @property
    def factors(self):
        return list(self._exps.items())

    def names(self):
        return set(self._exps)

    def __mul__(self, other):
        out = dict(self._exps)
        for nm, k in other._exps.items():
            out[nm] = out.get(nm, 0) + k
        return GroupWord(out)

    def __pow__(self, k):
        out = GroupWord()
        if k:
            out._exps = {nm: e * k for nm, e in self._exps.items()}
        return out

    def inverse(self):
        return self ** -1

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self._exps == other._exps

    def __hash__(self):
        return hash(tuple(self._exps.items()))

    def __bool__(self):
        return bool(self._exps)

    def __str__(self):
        if not self._exps:
            return "1"
        return "*".join(nm if k == 1 else f"{nm}^{k}" for nm, k in self._exps.items())

    def __repr__(self):
        return f"GroupWord({str(self)!r})"


def evaluate_word(w, env, p=None, n=None):
    """Leading data of the product a word denotes, computed homomorphically.

    ``env`` maps names to :class:`LaurentElement` or :class:`LeadingData`.
    The empty word needs ``p`` and ``n`` (taken from any bound value when
    omitted).
    """
    result = None
    for name, k in w.factors:
        if name not in env:
            raise ResolutionError(f"unbound name {name!r}")
        term = leading(env[name]) ** k
        result = term if result is None else result * term
    if result is None:
        if p is None or n is None:
            if not env:
                raise ValueError("cannot evaluate the empty word without p and n")
            sample = leading(next(iter(env.values())))
            p, n = sample.p, sample.n
        return LeadingData.one(p, n)
    return result


# --- parsing and printing -----------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(t)(\d*)|(\^)|(\*)|(\+)|(-)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.end() - len(m.group(0).lstrip())
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(3), start))
        elif m.group(8) is not None:
            raise ParseError(f"unexpected character {m.group(8)!r}", text, start)
        else:
            tokens.append((m.group(m.lastindex), None, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


def parse_element(text, p, n):
    """Parse element text such as ``"2*t1^-1 + t1*t2"`` into a LaurentElement.

    Grammar: ``expr := term (('+' | '-') term)*``,
    ``term := ['-'] (int | var) ('*' var)*``, ``var := 't' index ('^' ['-'] int)?``.
    A bare ``t`` means ``t1`` when n == 1.  Coefficients are reduced mod p;
    an expression that reduces to zero is rejected.
    """
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind):
        nonlocal i
        tok = toks[i]
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[0]}", text, tok[2])
        i += 1
        return tok

    def signed_int():
        neg = False
        if peek()[0] == "-":
            take("-")
            neg = True
        tok = take("int")
        return -tok[1] if neg else tok[1]

    def var():
        tok = take("var")
        idx_text = tok[1]
        if idx_text == "":
            if n != 1:
                raise ParseError("bare 't' is only allowed when n = 1", text, tok[2])
            idx = 1
        else:
            idx = int(idx_text)
        if not 1 <= idx <= n:
            raise ParseError(f"variable t{idx} out of range for n = {n}", text, tok[2])
        exp = 1
        if peek()[0] == "^":
            take("^")
            at = peek()[2]
            exp = signed_int()
            if abs(exp) > MAX_EXPONENT:
                raise ParseError("exponent overflow", text, at)
        return idx - 1, exp

    def term(sign):
        coeff = sign
        expo = [0] * n
        if peek()[0] == "-":
            take("-")
            coeff = -coeff
        if peek()[0] == "int":
            coeff *= take("int")[1]
        else:
            j, e = var()
            expo[j] += e
        while peek()[0] == "*":
            take("*")
            j, e = var()
            expo[j] += e
        return tuple(expo), coeff

    terms = {}
    e, c = term(1)
    terms[e] = terms.get(e, 0) + c
    while peek()[0] in ("+", "-"):
        sign = 1 if take(peek()[0])[0] == "+" else -1
        e, c = term(sign)
        terms[e] = terms.get(e, 0) + c
    if peek()[0] != "end":
        raise ParseError(f"unexpected {peek()[0]}", text, peek()[2])
    try:
        return LaurentElement(terms, p, n)
    except DomainError:
        raise ParseError("zero element", text, 0) from None


def format_monomial(coeff, expo):
    vars_ = [f"t{j + 1}" if e == 1 else f"t{j + 1}^{e}" for j, e in enumerate(expo) if e]
    if not vars_:
        return str(coeff)
    if coeff == 1:
        return "*".join(vars_)
    return f"{coeff}*" + "*".join(vars_)


def format_element(e):
    """Canonical text: terms in valuation order, coefficients in [1, p)."""
    if isinstance(e, LeadingData):
        return format_monomial(e.coeff, e.expo)
    return " + ".join(format_monomial(c, expo) for expo, c in e.terms.items())
