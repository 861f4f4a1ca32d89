"""Cyclic symbol algebras (a, b)_l over K = F_p((t1))...((tn)).

Brauer classes are formal lists of symbols.  :func:`symbol_decompose`
rewrites an expression as A_0 ⊗ Π_j (x_j, c_j) with A_0 a product of
unit-unit symbols and c_j the generators from :func:`decompose`.  For l = 2
splitness and exact indices of quaternions and biquaternions are decided
through quadratic forms (conic, norm form, Albert form).

:func:`class_vector` is an independent complete invariant: with ε a unit
that is not an l-th power, the symbols (ε, t_i) and (t_i, t_j), i < j, form
a Z/l-basis of the l-torsion of Br(K), and every symbol expands
bilinearly in that basis.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .decompose import decompose, decomposition_env
from .errors import DomainError, PreconditionError
from .finite_field import PrimeField, primitive_root_of_unity
from .laurent import GroupWord, LeadingData, evaluate_word, format_element, l_class, leading
from .quadform import DiagonalForm, is_hyperbolic, is_isotropic, standard_basis


@dataclass(frozen=True)
class Symbol:
    a: LeadingData
    b: LeadingData
    l: int = 2
    multiplicity: int = 1

    def __post_init__(self):
        a, b = leading(self.a), leading(self.b)
        if (a.p, a.n) != (b.p, b.n):
            raise PreconditionError("slots from different fields")
        if self.l == a.p:
            raise PreconditionError("l must differ from p")
        primitive_root_of_unity(PrimeField(a.p), self.l)  # raises when μ_l ⊄ F_p
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "multiplicity", self.multiplicity % self.l)

    @property
    def p(self):
        return self.a.p

    @property
    def n(self):
        return self.a.n

    def __str__(self):
        s = f"({format_element(self.a)}, {format_element(self.b)})"
        return s if self.multiplicity == 1 else f"{self.multiplicity}*{s}"


@dataclass(frozen=True)
class BrauerExpr:
    symbols: tuple
    p: int
    n: int
    l: int = 2

    def __post_init__(self):
        syms = tuple(self.symbols)
        if any(s.l != self.l or (s.p, s.n) != (self.p, self.n) for s in syms):
            raise PreconditionError("symbols must share l and the field")
        object.__setattr__(self, "symbols", syms)

    @classmethod
    def of(cls, pairs, l=2, p=None, n=None):
        syms = [s if isinstance(s, Symbol) else Symbol(s[0], s[1], l) for s in pairs]
        if syms:
            p, n = syms[0].p, syms[0].n
        if p is None or n is None:
            raise ValueError("an empty expression needs p and n")
        return cls(tuple(syms), p, n, l)

    def __add__(self, other):
        return BrauerExpr(self.symbols + other.symbols, self.p, self.n, self.l)

    def __neg__(self):
        return BrauerExpr(tuple(Symbol(s.a, s.b, s.l, -s.multiplicity) for s in self.symbols), self.p, self.n, self.l)

    def nontrivial_symbols(self):
        return [s for s in self.symbols if s.multiplicity]

    def __str__(self):
        return " + ".join(map(str, self.symbols)) or "0"


# --- symbol identities --------------------------------------------------------


def rewrite_exponent(sym, j):
    """Move an exponent across: (α, β) -> (α**j, β), the same class as (α, β**j).

    The right-hand side of the identity is :func:`power_second_slot`.
    """
    return Symbol(sym.a**j, sym.b, sym.l, sym.multiplicity)


def power_second_slot(sym, j):
    return Symbol(sym.a, sym.b**j, sym.l, sym.multiplicity)


def rewrite_swap(sym):
    """(α, β) -> (β⁻¹, α)."""
    return Symbol(sym.b.inverse(), sym.a, sym.l, sym.multiplicity)


# --- complete class invariant -------------------------------------------------


def _unit_log(f, l):
    """Return a function x -> k with x ≡ ε**k modulo l-th powers (μ_l ⊂ F_p)."""
    e = (f.p - 1) // l
    eps = next(x for x in range(2, f.p) if pow(x, e, f.p) != 1)
    omega = pow(eps, e, f.p)
    table = {pow(omega, k, f.p): k for k in range(l)}
    return lambda x: table[pow(x % f.p, e, f.p)]


def class_vector(expr):
    """Coordinates of a symbol expression in the basis (ε,t_i), (t_i,t_j) of l-torsion Br(K).

    Returned as a tuple over Z/l indexed by pairs (a, b), 0 <= a < b <= n,
    where index 0 stands for ε.  Zero exactly when the class is split.
    """
    l, n = expr.l, expr.n
    f = PrimeField(expr.p)
    log = _unit_log(f, l)
    delta = log(f.p - 1)  # -1 ≡ ε**delta
    pairs = list(combinations(range(n + 1), 2))
    index = {pr: k for k, pr in enumerate(pairs)}
    vec = [0] * len(pairs)
    for s in expr.symbols:
        x = [log(s.a.coeff)] + list(s.a.expo)
        y = [log(s.b.coeff)] + list(s.b.expo)
        for a_, xa in enumerate(x):
            if not xa % l:
                continue
            for b_, yb in enumerate(y):
                if not yb % l:
                    continue
                w = s.multiplicity * xa * yb
                if a_ < b_:
                    vec[index[a_, b_]] += w
                elif a_ > b_:
                    vec[index[b_, a_]] -= w
                elif a_ > 0:
                    # (t, t) = (t, -1) = delta·(t, ε) = -delta·(ε, t)
                    vec[index[0, a_]] -= delta * w
    return tuple(v % l for v in vec)


def class_is_split(expr):
    return not any(class_vector(expr))


# --- decomposition ------------------------------------------------------------


@dataclass
class SymbolDecomposition:
    unramified: list  # (u word, v word)
    ramified: list  # (x_j word, c_j word)
    env: dict
    decomposition: object
    l: int
    p: int
    n: int
    certified: bool = False
    checks: dict = field(default_factory=dict)

    def evaluate(self, w):
        return evaluate_word(w, self.env, self.p, self.n)

    def as_expr(self):
        syms = [Symbol(self.evaluate(u), self.evaluate(v), self.l) for u, v in self.unramified]
        syms += [Symbol(self.evaluate(x), self.evaluate(c), self.l) for x, c in self.ramified]
        return BrauerExpr(tuple(syms), self.p, self.n, self.l)

    def to_dict(self):
        return {
            "unramified": [
                {"slots": [str(u), str(v)], "values": [format_element(self.evaluate(u)), format_element(self.evaluate(v))]}
                for u, v in self.unramified
            ],
            "ramified": [
                {"slots": [str(x), str(c)], "values": [format_element(self.evaluate(x)), format_element(self.evaluate(c))]}
                for x, c in self.ramified
            ],
            "certified": self.certified,
            "checks": self.checks,
        }


def symbol_decompose(expr, basis=None):
    """Rewrite ``expr`` as unramified unit symbols plus at most n symbols (x_j, c_j).

    The slot entries α_1, β_1, α_2, β_2, ... are decomposed together, giving
    α = u·Π c_j**r_j·(l-th power) and β = v·Π c_j**s_j·(l-th power).  By
    bilinearity and the identities (α, β**j) = (α**j, β), (α, β) = (β⁻¹, α),
    each (α, β) equals (u, v) + Σ_j (u**s_j · v**(-r_j) · d**s_j, c_j) with
    d = Π c_j**r_j.  In the words, slot k of symbol i is named a{2i+k+1}.
    """
    p, n, l = expr.p, expr.n, expr.l
    basis = standard_basis(p, n) if basis is None else [leading(b) for b in basis]
    entries = [x for s in expr.symbols for x in (s.a, s.b)]
    res = decompose(entries, basis, l)
    env = decomposition_env(entries, basis)
    unram = []
    xs = [GroupWord() for _ in range(n)]
    for i, s in enumerate(expr.symbols):
        m = s.multiplicity
        if not m:
            continue
        r, sv = res.mu[2 * i], res.mu[2 * i + 1]
        u, v = res.u[2 * i], res.u[2 * i + 1]
        uw = u**m
        if not (l_class(evaluate_word(uw, env, p, n), l).is_trivial() or l_class(evaluate_word(v, env, p, n), l).is_trivial()):
            unram.append((uw, v))
        d = GroupWord()
        for cj, rj in zip(res.c, r):
            d = d * cj**rj
        for j in range(n):
            xs[j] = xs[j] * (u ** sv[j] * v ** (-r[j]) * d ** sv[j]) ** m
    ram = [(x, c) for x, c in zip(xs, res.c) if not l_class(evaluate_word(x, env, p, n), l).is_trivial()]
    out = SymbolDecomposition(unram, ram, env, res, l, p, n)
    lhs, rhs = class_vector(expr), class_vector(out.as_expr())
    out.checks = {"class_vector_input": list(lhs), "class_vector_output": list(rhs)}
    out.certified = lhs == rhs and all(evaluate_word(u, env, p, n).is_unit() and evaluate_word(v, env, p, n).is_unit() for u, v in unram)
    return out


# --- splitness and index for l = 2 --------------------------------------------


def _require_quaternion(*syms):
    for s in syms:
        if s.l != 2:
            raise PreconditionError("quaternion machinery needs l = 2")


def conic_form(a, b):
    a, b = leading(a), leading(b)
    return DiagonalForm.of([LeadingData.one(a.p, a.n), -a, -b])


def norm_form(a, b):
    a, b = leading(a), leading(b)
    return DiagonalForm.of([LeadingData.one(a.p, a.n), -a, -b, a * b])


def quaternion_split(a, b, basis=None):
    """(a, b) is split iff the conic ⟨1, -a, -b⟩ is isotropic."""
    try:
        a, b = leading(a), leading(b)
    except DomainError:
        raise DomainError("quaternion slots must be nonzero") from None
    return is_isotropic(conic_form(a, b), basis)[0]


def albert_form(s1, s2):
    a1, b1, a2, b2 = s1.a, s1.b, s2.a, s2.b
    return DiagonalForm.of([a1, b1, -(a1 * b1), -a2, -b2, a2 * b2])


def biquaternion_index(s1, s2, basis=None):
    """Index of (a1, b1) ⊗ (a2, b2): 1, 2 or 4, read off the Albert form."""
    _require_quaternion(s1, s2)
    q = albert_form(s1, s2)
    if is_hyperbolic(q, basis):
        return 1
    if not is_isotropic(q, basis)[0]:
        return 4
    return 2


def exact_index(expr, basis=None):
    """Exact index for l = 2 expressions with at most two nontrivial symbols, else None."""
    if expr.l != 2:
        return None
    syms = expr.nontrivial_symbols()
    if not syms:
        return 1
    if len(syms) == 1:
        return 1 if quaternion_split(syms[0].a, syms[0].b, basis) else 2
    if len(syms) == 2:
        return biquaternion_index(syms[0], syms[1], basis)
    return None


def index_bound(expr, basis=None):
    """Upper bound ind(Ã_0)·l**r, r the number of ramified symbols after decomposition.

    The unramified part has index 1 because the residue field F_p has trivial
    Brauer group.
    """
    dec = symbol_decompose(expr, basis)
    return expr.l ** len(dec.ramified)


def index_survey(p, n, max_symbols=2, basis=None):
    """Compare exact index and :func:`index_bound` over all l = 2 expressions of
    up to ``max_symbols`` symbols whose slots are square-class representatives.
    """
    from itertools import product

    from .quadform import square_classes

    if max_symbols > 2:
        raise PreconditionError("exact indices are only available for up to two symbols")
    classes = square_classes(p, n)
    symbols = [Symbol(a, b, 2) for a in classes for b in classes]
    report = {"p": p, "n": n, "expressions": 0, "bound_violations": [], "max_exact_index": 1, "max_bound": 1, "index_histogram": {}}
    for k in range(max_symbols + 1):
        for combo in product(symbols, repeat=k):
            expr = BrauerExpr(tuple(combo), p, n, 2)
            exact = exact_index(expr, basis)
            bound = index_bound(expr, basis)
            report["expressions"] += 1
            report["max_exact_index"] = max(report["max_exact_index"], exact)
            report["max_bound"] = max(report["max_bound"], bound)
            hist = report["index_histogram"]
            hist[str(exact)] = hist.get(str(exact), 0) + 1
            if exact > bound or bound % exact or bound > 2**n:
                report["bound_violations"].append(str(expr))
    report["index_histogram"] = dict(sorted(report["index_histogram"].items()))
    return report
