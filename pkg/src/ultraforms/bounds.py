"""Symbolic calculator for the u-invariant and Brauer l-dimension bounds.

Invariants may be ``math.inf``; it absorbs the arithmetic (2**n·∞ = ∞).
"""

from dataclasses import dataclass
from math import inf, isinf

from .errors import AbhyankarError, PreconditionError

INF = inf


@dataclass(frozen=True)
class FieldInvariants:
    """Inputs of the calculator.  Unknown invariants are left as None.

    n: rational rank of the value group; u_residue, us_residue: u and strong
    u of the residue field; d, d_rational: Brauer l-dimension of the residue
    field and of its rational function field.
    """

    n: int
    u_residue: object = None
    us_residue: object = None
    d: object = None
    d_rational: object = None

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise PreconditionError("n must be a nonnegative integer")
        for name in ("u_residue", "us_residue"):
            v = getattr(self, name)
            if v is not None and not (isinf(v) or (isinstance(v, int) and v >= 1)):
                raise PreconditionError(f"{name} must be a positive integer or inf")
        for name in ("d", "d_rational"):
            v = getattr(self, name)
            if v is not None and not (isinf(v) or (isinstance(v, int) and v >= 0)):
                raise PreconditionError(f"{name} must be a nonnegative integer or inf")


def fmt(v):
    return "∞" if isinf(v) else str(v)


def _bound(name, quantity, value, formula):
    return {"name": name, "quantity": quantity, "value": value, "formula": formula, "text": f"{quantity} ≤ {fmt(value)}"}


def effective_d(inv):
    """Smallest d with Br_l dim(k̃) <= d and Br_l dim(k̃(T)) <= d + 1."""
    if inv.d is None:
        return None
    if inv.d_rational is None:
        return inv.d
    return max(inv.d, inv.d_rational - 1)


def invariant_bounds(inv):
    """Every bound that the supplied invariants determine, in a fixed order."""
    n = inv.n
    out = []
    if inv.u_residue is not None:
        out.append(_bound("u_k", "u(k)", 2**n * inv.u_residue, f"2^n·u(k̃) = 2^{n}·{fmt(inv.u_residue)}"))
    if inv.us_residue is not None:
        us = inv.us_residue
        out.append(_bound("us_k", "u_s(k)", 2**n * us, f"2^n·u_s(k̃) = 2^{n}·{fmt(us)}"))
        out.append(_bound("u_F", "u(F)", 2 ** (n + 1) * us, f"2^(n+1)·u_s(k̃) = 2^{n + 1}·{fmt(us)}"))
    if inv.d is not None:
        out.append(_bound("br_k", "Br_l dim(k)", inv.d + n, f"Br_l dim(k̃) + n = {fmt(inv.d)} + {n}"))
        d = effective_d(inv)
        out.append(_bound("br_F", "Br_l dim(F)", d + 1 + n, f"d + 1 + n = {fmt(d)} + 1 + {n}"))
    return out


def completion_case_trace(s, t, inv):
    """Bounds at a completion F_v whose valuation extends that of k.

    s is the rational rank gained (|F_v*|/|k*| ⊗ Q), t the transcendence
    degree of the residue extension; Abhyankar forces s + t <= 1.
    """
    if s < 0 or t < 0:
        raise PreconditionError("s and t must be nonnegative")
    if s + t > 1:
        raise AbhyankarError(f"Abhyankar inequality violated: s + t = {s + t} > 1")
    n = inv.n
    rank = n + s
    trace = {"s": s, "t": t, "rank": rank}
    if t == 0 and s == 0:
        trace["case"] = "t=0,s=0"
        trace["residue"] = "finite extension of k̃"
        u_factor, residue_u = 2**n, "u_s(k̃)"
    elif t == 0:
        trace["case"] = "t=0,s=1"
        trace["residue"] = "finite extension of k̃"
        u_factor, residue_u = 2 ** (n + 1), "u_s(k̃)"
    else:
        trace["case"] = "t=1,s=0"
        trace["residue"] = "finitely generated of transcendence degree 1 over k̃"
        u_factor, residue_u = 2 ** (n + 1), "2·u_s(k̃)"
    if inv.us_residue is not None:
        val = u_factor * inv.us_residue
        trace["u_bound"] = _bound("u_Fv", "u(F_v)", val, f"{u_factor}·u_s(k̃) via u(F̃_v) ≤ {residue_u}")
    if inv.d is not None:
        if t == 1:
            d_res = inv.d_rational if inv.d_rational is not None else inv.d + 1
            val = d_res + n
            formula = f"Br_l dim(k̃(T)) + n ≤ {fmt(d_res)} + {n}"
        else:
            val = inv.d + rank
            formula = f"Br_l dim(k̃) + rank = {fmt(inv.d)} + {rank}"
        trace["br_bound"] = _bound("br_Fv", "Br_l dim(F_v)", val, formula)
    return trace


def trivial_restriction_trace(inv):
    """Bounds at a completion F_v whose valuation is trivial on k (discretely valued, residue finite over k)."""
    n = inv.n
    trace = {"case": "trivial on k", "rank": 1, "residue": "finite extension of k"}
    if inv.us_residue is not None:
        trace["u_bound"] = _bound(
            "u_Fv", "u(F_v)", 2 ** (n + 1) * inv.us_residue, f"2·u(F̃_v) ≤ 2·2^{n}·u_s(k̃)"
        )
    if inv.d is not None:
        trace["br_bound"] = _bound("br_Fv", "Br_l dim(F_v)", inv.d + n + 1, f"Br_l dim(k̃) + n + 1 = {fmt(inv.d)} + {n} + 1")
    return trace


def all_case_traces(inv):
    traces = [completion_case_trace(s, t, inv) for s, t in ((0, 0), (1, 0), (0, 1))]
    traces.append(trivial_restriction_trace(inv))
    return traces
