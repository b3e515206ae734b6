import random
from collections import Counter

import numpy as np
import pytest

from helpers import elements, nilpotent_ideal, random_small_algebra, span_set
from intdecomp.algebra import BudgetExceeded, reduce_mod
from intdecomp.constructors import direct_sum, fixture, fixture_names, matrix_algebra
from intdecomp.residue import (
    center,
    jacobson_radical,
    nilpotency_index,
    quotient,
    radical_by_enumeration,
    residue_tower_diagnostic,
    wedderburn_profile,
)


def test_matrix_algebra_semisimple():
    assert jacobson_radical(reduce_mod(matrix_algebra(2), 3, 1)).rows == 0


def test_triangular_radical_is_strict_upper():
    rad = jacobson_radical(reduce_mod(fixture("t2z"), 2, 1))
    assert rad.entries.tolist() == [[0, 1, 0]]  # basis E11, E12, E22


def test_cyclic_group_radical():
    rad = jacobson_radical(reduce_mod(fixture("zc2"), 2, 1))
    assert rad.entries.tolist() == [[1, 1]]
    A1 = reduce_mod(fixture("zc2"), 2, 1)
    oracle = {tuple(x) for x in elements(2, 2) if nilpotent_ideal(A1.table, x, 2, 2)}
    assert oracle == {(0, 0), (1, 1)}


def test_radical_rejects_higher_level():
    with pytest.raises(ValueError):
        jacobson_radical(reduce_mod(fixture("z"), 2, 2))


def test_center_examples():
    assert center(reduce_mod(matrix_algebra(2), 5, 1)).entries.tolist() == [[1, 0, 0, 1]]
    assert center(reduce_mod(fixture("golden"), 3, 1)).rows == 2
    assert center(reduce_mod(fixture("quaternion"), 3, 1)).rows == 1


def test_quaternion_center_matches_matrix_center_mod_3():
    qc = center(reduce_mod(fixture("quaternion"), 3, 1))
    mc = center(reduce_mod(matrix_algebra(2), 3, 1))
    assert qc.rows == mc.rows == 1


@pytest.mark.parametrize(
    "name,p,components,rad",
    [
        ("gaussian", 5, ((5, 1), (5, 1)), 0),
        ("gaussian", 3, ((9, 1),), 0),
        ("gaussian", 2, ((2, 1),), 1),
        ("m2z", 2, ((2, 2),), 0),
        ("quaternion", 3, ((3, 2),), 0),
        ("quaternion", 2, ((2, 1),), 3),
        ("zc3", 2, ((2, 1), (4, 1)), 0),
        ("zs3", 5, ((5, 1), (5, 1), (5, 2)), 0),
        ("m2z_z", 3, ((3, 1), (3, 2)), 0),
    ],
)
def test_profile_examples(name, p, components, rad):
    prof = wedderburn_profile(reduce_mod(fixture(name), p, 1))
    assert prof.components == components
    assert prof.radical_dim == rad


@pytest.mark.parametrize("name", fixture_names())
@pytest.mark.parametrize("p", [2, 3, 5])
def test_radical_oracle_small(name, p):
    A1 = reduce_mod(fixture(name), p, 1)
    if A1.size > 81:
        pytest.skip("oracle limited to at most 81 elements here")
    rad = jacobson_radical(A1)
    oracle = {tuple(x) for x in elements(A1.rank, p) if nilpotent_ideal(A1.table, x, p, A1.rank)}
    assert span_set(rad.entries, p) == oracle if rad.rows else oracle == {tuple([0] * A1.rank)}


@pytest.mark.parametrize("name", fixture_names())
@pytest.mark.parametrize("p", [2, 3])
def test_radical_properties(name, p):
    A1 = reduce_mod(fixture(name), p, 1)
    rad = jacobson_radical(A1)
    idx = nilpotency_index(A1, rad)
    assert idx is not None and idx <= max(A1.rank, 1) + 1
    S, _ = quotient(A1, rad)
    assert jacobson_radical(S).rows == 0
    prof = wedderburn_profile(A1)
    assert prof.accounted_dimension() == A1.rank
    assert all(q % p == 0 for q, _ in prof.components)


def test_profile_dimension_identity_random():
    rng = random.Random(2024)
    for _ in range(100):
        A = random_small_algebra(rng)
        p = rng.choice([2, 3, 5, 7])
        prof = wedderburn_profile(reduce_mod(A, p, 1))
        assert prof.accounted_dimension() == A.rank
        assert prof.frobenius_count == len(prof.components)


def test_profile_invariant_under_base_change():
    rng = random.Random(5)
    from helpers import base_change, unimodular

    for name in ["zs3", "quaternion", "t3z", "m2z_z"]:
        A = fixture(name)
        B = base_change(A, unimodular(A.rank, rng))
        for p in (2, 3):
            assert wedderburn_profile(reduce_mod(A, p, 1)) == wedderburn_profile(reduce_mod(B, p, 1))


def test_direct_sum_profile_is_union():
    for a, b in [("gaussian", "m2z"), ("t2z", "zc3"), ("golden", "quaternion")]:
        S = direct_sum(fixture(a), fixture(b))
        for p in (2, 3, 5):
            pa = wedderburn_profile(reduce_mod(fixture(a), p, 1))
            pb = wedderburn_profile(reduce_mod(fixture(b), p, 1))
            ps = wedderburn_profile(reduce_mod(S, p, 1))
            assert Counter(ps.components) == Counter(pa.components) + Counter(pb.components)
            assert ps.radical_dim == pa.radical_dim + pb.radical_dim


def test_enumeration_oracle_function_agrees():
    A1 = reduce_mod(fixture("t3z"), 2, 1)
    found = {tuple(x) for x in radical_by_enumeration(A1)}
    assert found == span_set(jacobson_radical(A1).entries, 2)


def test_tower_quaternion_mod_3():
    rep = residue_tower_diagnostic(fixture("quaternion"), 3, 2)
    assert rep.consistent
    assert [lv.method for lv in rep.levels] == ["enumeration", "enumeration"]


def test_tower_gaussian_mod_2_inconsistent():
    rep = residue_tower_diagnostic(fixture("gaussian"), 2, 1)
    assert not rep.consistent
    assert rep.levels[0].radical_size == 2 and rep.levels[0].p_ideal_size == 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_tower_integers(p):
    rep = residue_tower_diagnostic(fixture("z"), p, 2)
    assert rep.consistent
    assert rep.levels[1].p_nilpotency == 2


def test_tower_lifted_levels_match_enumeration():
    A = fixture("gaussian")
    small = residue_tower_diagnostic(A, 3, 3, budget=10**6)
    lifted = residue_tower_diagnostic(A, 3, 3, budget=5)
    assert [lv.radical_size for lv in small.levels] == [lv.radical_size for lv in lifted.levels]
    assert {lv.method for lv in lifted.levels} == {"lifted"}


def test_deterministic_idempotents():
    A1 = reduce_mod(fixture("zs3"), 5, 1)
    first = wedderburn_profile(A1)
    again = wedderburn_profile(reduce_mod(fixture("zs3"), 5, 1))
    assert first == again


def test_budget_error_from_oracle():
    with pytest.raises(BudgetExceeded):
        radical_by_enumeration(reduce_mod(fixture("m3z"), 3, 1), budget=100)
    assert np.array_equal(center(reduce_mod(fixture("z"), 2, 3)).entries, [[1]])
