"""Diagonal quadratic forms over K = F_p((t1))...((tn)), p odd.

A form ⟨a_1, ..., a_s⟩ is sorted into 2**n residue forms: decomposing the
coefficients modulo squares writes a_i = u_i · θ · b_i² with θ one of the
products Π c_j**λ_j (λ in {0,1}^n), and the unit residues u_i sharing a θ
make up the residue form of that θ.  The form is isotropic over K exactly
when one of those residue forms is isotropic over F_p.

:func:`is_isotropic_springer` decides the same question by an unrelated
recursion on the outermost variable; the two are cross-checked by the survey.
"""

import os
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from math import comb

from .decompose import decompose
from .errors import DegenerateBasisError, DomainError, PreconditionError, ResourceLimitError
from .finite_field import PrimeField, form_value, residue_hyperbolic, residue_isotropic
from .laurent import GroupWord, LeadingData, all_l_classes, format_element, leading

DEFAULT_MAX_ENUM = 2_000_000


@dataclass(frozen=True)
class DiagonalForm:
    coeffs: tuple
    p: int
    n: int

    def __post_init__(self):
        if not self.coeffs:
            raise DomainError("empty form")
        coeffs = tuple(leading(c) for c in self.coeffs)
        if any(c.p != self.p or c.n != self.n for c in coeffs):
            raise PreconditionError("coefficients from a different field")
        if self.p % 2 == 0:
            raise PreconditionError("residue characteristic must be odd")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, elements):
        elements = [leading(e) for e in elements]
        if not elements:
            raise DomainError("empty form")
        return cls(tuple(elements), elements[0].p, elements[0].n)

    @property
    def dim(self):
        return len(self.coeffs)

    def __str__(self):
        return "⟨" + ", ".join(format_element(c) for c in self.coeffs) + "⟩"


def standard_basis(p, n):
    return [LeadingData(1, tuple(int(i == j) for i in range(n)), p) for j in range(n)]


def theta_label(theta):
    return "".join(map(str, theta))


@dataclass
class ResidueDecomposition:
    blocks: dict  # θ -> list of unit residues
    members: dict  # θ -> indices of q's coefficients in the block
    theta_reps: dict  # θ -> GroupWord Π c_j**θ_j
    decomposition: object

    @property
    def dim(self):
        return sum(len(v) for v in self.blocks.values())

    def to_dict(self):
        return {
            theta_label(t): {"residue_form": list(self.blocks[t]), "members": list(self.members[t]), "theta": str(self.theta_reps[t])}
            for t in sorted(self.blocks)
        }


def residue_decomposition(q, basis=None):
    """Partition the coefficients of q into residue forms indexed by θ in {0,1}^n.

    Raises :class:`DegenerateBasisError` if the generators c_j do not give
    2**n distinct square classes (possible for bases that do not generate
    the value group modulo 2).
    """
    basis = standard_basis(q.p, q.n) if basis is None else [leading(b) for b in basis]
    res = decompose(list(q.coeffs), basis, 2)
    if not res.separates_classes:
        raise DegenerateBasisError("the square classes Π c_j^θ_j collide for this basis")
    blocks, members, reps = {}, {}, {}
    for i, row in enumerate(res.mu):
        theta = tuple(row)
        blocks.setdefault(theta, []).append(res.u_residue[i])
        members.setdefault(theta, []).append(i)
        if theta not in reps:
            w = GroupWord()
            for cj, lam in zip(res.c, theta):
                w = w * cj**lam
            reps[theta] = w
    assert sum(map(len, blocks.values())) == q.dim
    return ResidueDecomposition(blocks, members, reps, res)


def is_isotropic(q, basis=None):
    """Decide isotropy over K through the residue forms.

    Returns ``(decision, certificate)``.  An isotropic certificate names the
    block θ, the coefficient indices in it and a residue witness vector.  An
    anisotropic certificate lists every block with its (anisotropic) form.
    """
    f = PrimeField(q.p)
    rd = residue_decomposition(q, basis)
    report = {}
    for theta in sorted(rd.blocks):
        form = rd.blocks[theta]
        iso, witness = residue_isotropic(f, form)
        if iso:
            assert form_value(f, form, witness) == 0
            return True, {"theta": theta_label(theta), "members": rd.members[theta], "residue_form": form, "witness": list(witness)}
        report[theta_label(theta)] = form
    return False, {"anisotropic_blocks": report}


def is_isotropic_springer(q):
    """Isotropy by recursion on the outermost variable.

    Splits q into q0 ⊥ t_n·q1 by the parity of the t_n exponent, drops t_n
    (its even powers are squares) and recurses over F_p((t1))...((t_{n-1})).
    """
    f = PrimeField(q.p)

    def rec(entries, depth):
        # entries: (coeff, exponents of t_1..t_depth)
        if not entries:
            return False
        if depth == 0:
            return residue_isotropic(f, [c for c, _ in entries])[0]
        parts = ([], [])
        for c, e in entries:
            parts[e[depth - 1] % 2].append((c, e[: depth - 1]))
        return rec(parts[0], depth - 1) or rec(parts[1], depth - 1)

    return rec([(c.coeff, c.expo) for c in q.coeffs], q.n)


def is_hyperbolic(q, basis=None):
    """Every residue form is even-dimensional and hyperbolic over F_p."""
    f = PrimeField(q.p)
    rd = residue_decomposition(q, basis)
    return all(len(form) % 2 == 0 and residue_hyperbolic(f, form) for form in rd.blocks.values())


# --- exhaustive survey --------------------------------------------------------


def square_classes(p, n):
    """The 2**(n+1) square classes of K*, in canonical order."""
    return all_l_classes(p, n, 2)


def max_enum_limit():
    raw = os.environ.get("ULTRAFORMS_MAX_ENUM")
    return int(raw) if raw else DEFAULT_MAX_ENUM


@dataclass
class SurveyReport:
    p: int
    n: int
    d_max: int
    counts: dict = field(default_factory=dict)  # dim -> (forms, anisotropic)
    witnesses: dict = field(default_factory=dict)  # dim -> first anisotropic form
    disagreements: list = field(default_factory=list)

    @property
    def max_anisotropic_dim(self):
        return max((d for d, (_, an) in self.counts.items() if an), default=0)

    @property
    def bound(self):
        # 2^n · u(F_p), with u(F_p) = 2
        return 2 ** (self.n + 1)

    def isotropic_above_bound(self):
        return all(an == 0 for d, (_, an) in self.counts.items() if d > self.bound)

    def to_dict(self):
        return {
            "p": self.p,
            "n": self.n,
            "d_max": self.d_max,
            "bound": self.bound,
            "max_anisotropic_dim": self.max_anisotropic_dim,
            "isotropic_above_bound": self.isotropic_above_bound(),
            "counts": {str(d): {"forms": c, "anisotropic": a} for d, (c, a) in sorted(self.counts.items())},
            "witnesses": {str(d): w for d, w in sorted(self.witnesses.items())},
            "disagreements": self.disagreements,
        }


def survey_size(p, n, d_max):
    k = 2 ** (n + 1)
    return sum(comb(k + d - 1, d) for d in range(1, d_max + 1))


def anisotropic_survey(p, n, d_max, max_enum=None):
    """Enumerate every diagonal form of dimension <= d_max up to square classes.

    Each form is decided by :func:`is_isotropic` and by
    :func:`is_isotropic_springer`; any disagreement is recorded.
    """
    if p % 2 == 0 or n < 1 or d_max < 1:
        raise PreconditionError("need odd p, n >= 1 and d_max >= 1")
    limit = max_enum_limit() if max_enum is None else max_enum
    total = survey_size(p, n, d_max)
    if total > limit:
        raise ResourceLimitError(f"survey would enumerate {total} forms, limit is {limit}")
    classes = square_classes(p, n)
    basis = standard_basis(p, n)
    report = SurveyReport(p, n, d_max)
    for d in range(1, d_max + 1):
        forms = anisotropic = 0
        for combo in combinations_with_replacement(range(len(classes)), d):
            q = DiagonalForm(tuple(classes[i] for i in combo), p, n)
            iso, _ = is_isotropic(q, basis)
            if iso != is_isotropic_springer(q):
                report.disagreements.append(str(q))
            forms += 1
            if not iso:
                anisotropic += 1
                report.witnesses.setdefault(d, str(q))
        report.counts[d] = (forms, anisotropic)
    return report


def form_classes_product(p, n):
    """All (class, class) pairs; handy for exhaustive slot enumeration."""
    cls = square_classes(p, n)
    return list(product(cls, cls))
