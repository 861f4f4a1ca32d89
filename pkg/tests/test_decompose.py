import random

import pytest
from conftest import random_basis, random_leading
from hypothesis import given
from hypothesis import strategies as st

from ultraforms.decompose import coprime_inverse, decompose, decomposition_env, verify_decomposition
from ultraforms.errors import PreconditionError, ResolutionError
from ultraforms.laurent import GroupWord, LeadingData, evaluate_word, l_class
from ultraforms.valgroup import ValuationBasis, independent_mod


def mono(e, c=1, p=3):
    return LeadingData(c, tuple(e), p)


@pytest.mark.parametrize("m,l,k,expected", [(3, 2, 2, 3), (5, 3, 2, 2), (1, 2, 5, 1)])
def test_coprime_inverse(m, l, k, expected):
    assert coprime_inverse(m, l, k) == expected


def test_coprime_inverse_rejects_multiples():
    with pytest.raises(PreconditionError):
        coprime_inverse(6, 3, 1)


def words(ws):
    return [str(w) for w in ws]


def test_basis_monomial():
    r = decompose([mono((1,))], [mono((1,))], 2)
    assert words(r.c) == ["pi1"] and r.mu == [[1]] and words(r.b) == ["1"]


def test_perfect_square():
    r = decompose([mono((2,))], [mono((1,))], 2)
    assert r.mu == [[0]] and words(r.b) == ["pi1"]


def test_non_generating_basis_uses_pivot():
    a, basis = [mono((1,))], [mono((2,))]
    r = decompose(a, basis, 2)
    assert words(r.c) == ["a1"] and r.mu == [[1]] and words(r.b) == ["1"]
    assert r.cases == [("pivot", "a1", 1)]
    assert verify_decomposition(a, basis, 2, r)


def test_second_row_absorbed():
    a, basis = [mono((1,)), mono((3,))], [mono((2,))]
    r = decompose(a, basis, 2)
    assert words(r.c) == ["a1"] and r.mu == [[1], [1]]
    env = decomposition_env(a, basis)
    assert [evaluate_word(w, env, 3, 1) for w in r.b] == [mono((0,)), mono((1,))]
    assert verify_decomposition(a, basis, 2, r)


def test_no_elements():
    r = decompose([], [mono((1, 0)), mono((0, 1))], 2)
    assert words(r.c) == ["pi1", "pi2"] and r.mu == []


def test_preconditions():
    with pytest.raises(PreconditionError):
        decompose([mono((1,))], [mono((1,))], 3)  # l == p
    with pytest.raises(PreconditionError):
        decompose([mono((1,))], [mono((1,))], 4)
    with pytest.raises(PreconditionError):
        decompose([mono((1,))], [mono((1, 0)), mono((2, 0))], 2)
    with pytest.raises(PreconditionError):
        decompose([mono((1,))], [mono((1, 0))], 2)


def random_instance(rng, n, l, p=7):
    basis = random_basis(rng, p, n)
    a = [random_leading(rng, p, n) for _ in range(rng.randint(1, 6))]
    return a, basis


@given(st.integers(1, 3), st.sampled_from([2, 3]), st.integers(0, 2**32))
def test_round_trip(n, l, seed):
    a, basis = random_instance(random.Random(seed), n, l)
    r = decompose(a, basis, l)
    assert verify_decomposition(a, basis, l, r)


@given(st.integers(1, 3), st.sampled_from([2, 3]), st.integers(0, 2**32))
def test_units_and_completeness(n, l, seed):
    a, basis = random_instance(random.Random(seed), n, l)
    r = decompose(a, basis, l)
    env = decomposition_env(a, basis)
    cs = [evaluate_word(w, env, 7, n) for w in r.c]
    for i, ai in enumerate(a):
        rest = ai * evaluate_word(r.b[i], env, 7, n) ** (-l)
        for cj, m in zip(cs, r.mu[i]):
            rest = rest * cj ** (-m)
        assert not any(l_class(rest, l).expo_mod)
        assert rest.coeff == r.u_residue[i]
    gens = [v.expo for v in env.values()]
    assert independent_mod([c.expo for c in cs], gens, l)


@given(st.integers(1, 3), st.sampled_from([2, 3]), st.integers(0, 2**32))
def test_generators_decompose_to_identity(n, l, seed):
    a, basis = random_instance(random.Random(seed), n, l)
    r = decompose(a, basis, l)
    env = decomposition_env(a, basis)
    cs = [evaluate_word(w, env, 7, n) for w in r.c]
    r2 = decompose(cs, basis, l)
    assert r2.mu == [[int(i == j) for j in range(n)] for i in range(n)]


def test_generator_coordinate_is_inverse_power_of_l():
    # coordinate j of c_j is exactly 1/l^y for the pivot's y
    a, basis = [mono((1, 3), p=5), mono((2, 1), p=5)], [mono((4, 0), p=5), mono((0, 9), p=5)]
    r = decompose(a, basis, 3)
    env = decomposition_env(a, basis)
    vb = ValuationBasis([b.expo for b in basis])
    for j, (w, case) in enumerate(zip(r.c, r.cases)):
        coords = vb.coordinates(evaluate_word(w, env, 5, 2).expo)
        assert coords[j] * 3 ** case[2] == 1


def test_tampered_mu_fails():
    a, basis = [mono((1,))], [mono((1,))]
    r = decompose(a, basis, 2)
    r.mu[0][0] = (r.mu[0][0] + 1) % 2
    assert not verify_decomposition(a, basis, 2, r)


def test_tampered_b_fails():
    a, basis = [mono((1,)), mono((3,))], [mono((2,))]
    r = decompose(a, basis, 2)
    r.b[0] = r.b[0] * GroupWord.gen("a1")
    assert not verify_decomposition(a, basis, 2, r)


def test_out_of_range_mu_fails():
    a, basis = [mono((1,))], [mono((1,))]
    r = decompose(a, basis, 2)
    r.mu[0][0] = 3
    r.b[0] = r.b[0] * GroupWord.gen("pi1") ** -1
    assert not verify_decomposition(a, basis, 2, r)


def test_unbound_name_raises():
    a, basis = [mono((1,))], [mono((1,))]
    r = decompose(a, basis, 2)
    r.b[0] = GroupWord.gen("a9")
    with pytest.raises(ResolutionError):
        verify_decomposition(a, basis, 2, r)


def test_separates_classes_flag():
    # generators that are independent mod l in the word lattice but not in Z^2
    basis = [LeadingData(1, (2, 0), 7), LeadingData(1, (0, 2), 7)]
    r = decompose([], basis, 2)
    assert not r.separates_classes
    r = decompose([LeadingData(1, (1, 0), 7), LeadingData(1, (0, 1), 7)], basis, 2)
    assert r.separates_classes
