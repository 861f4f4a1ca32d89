from itertools import product
from math import inf

import pytest

from ultraforms.bounds import (
    FieldInvariants,
    all_case_traces,
    completion_case_trace,
    effective_d,
    invariant_bounds,
)
from ultraforms.errors import AbhyankarError, PreconditionError


def values(inv):
    return {b["name"]: b["value"] for b in invariant_bounds(inv)}


@pytest.mark.parametrize("d", [0, 1, 3, 7])
def test_rank_one_classical(d):
    v = values(FieldInvariants(1, d=d))
    assert v["br_k"] == d + 1 and v["br_F"] == d + 2


def test_rank_one_springer():
    assert values(FieldInvariants(1, u_residue=4))["u_k"] == 8


def test_texts():
    texts = [b["text"] for b in invariant_bounds(FieldInvariants(1, d=3))]
    assert texts == ["Br_l dim(k) ≤ 4", "Br_l dim(F) ≤ 5"]


def test_strong_u():
    v = values(FieldInvariants(2, us_residue=2))
    assert v["us_k"] == 8 and v["u_F"] == 16


def test_rank_zero():
    assert values(FieldInvariants(0, u_residue=5))["u_k"] == 5


def test_infinity_absorbs():
    v = values(FieldInvariants(3, u_residue=inf, us_residue=inf, d=inf))
    assert all(x == inf for x in v.values())


def test_d_rational_tightens_only_upward():
    assert effective_d(FieldInvariants(1, d=2, d_rational=3)) == 2
    assert effective_d(FieldInvariants(1, d=2, d_rational=5)) == 4


def test_validation():
    with pytest.raises(PreconditionError):
        FieldInvariants(-1)
    with pytest.raises(PreconditionError):
        FieldInvariants(1, u_residue=0)


def test_case_traces():
    inv = FieldInvariants(2, us_residue=2, d=1)
    t = completion_case_trace(0, 1, inv)
    assert t["case"] == "t=1,s=0" and t["u_bound"]["value"] == 2**3 * 2
    t = completion_case_trace(1, 0, inv)
    assert t["rank"] == 3 and t["br_bound"]["value"] == 1 + 2 + 1
    t = completion_case_trace(0, 0, inv)
    assert t["u_bound"]["value"] == 8 and t["br_bound"]["value"] == 3
    with pytest.raises(AbhyankarError):
        completion_case_trace(1, 1, inv)
    with pytest.raises(PreconditionError):
        completion_case_trace(-1, 0, inv)


def test_cases_cover_abhyankar_region_once():
    inv = FieldInvariants(1, us_residue=1, d=0)
    cases = [completion_case_trace(s, t, inv)["case"] for s, t in product(range(2), repeat=2) if s + t <= 1]
    assert len(cases) == len(set(cases)) == 3
    assert len(all_case_traces(inv)) == 4


def test_local_bounds_dominated_by_global_field_bound():
    inv = FieldInvariants(2, us_residue=3, d=2, d_rational=3)
    v = values(inv)
    for tr in all_case_traces(inv):
        assert tr["u_bound"]["value"] <= v["u_F"]
        assert tr["br_bound"]["value"] <= v["br_F"]


def test_monotone():
    grid = [0, 1, 2, 5]
    for n, u, us, d, dr in product(range(3), grid[1:], grid[1:], grid, grid):
        base = FieldInvariants(n, u, us, d, dr)
        for bumped in (
            FieldInvariants(n + 1, u, us, d, dr),
            FieldInvariants(n, u + 1, us, d, dr),
            FieldInvariants(n, u, us + 1, d, dr),
            FieldInvariants(n, u, us, d + 1, dr),
            FieldInvariants(n, u, us, d, dr + 1),
        ):
            b0, b1 = values(base), values(bumped)
            assert all(b1[k] >= b0[k] for k in b0)
            for t0, t1 in zip(all_case_traces(base), all_case_traces(bumped)):
                for key in ("u_bound", "br_bound"):
                    assert t1[key]["value"] >= t0[key]["value"]
