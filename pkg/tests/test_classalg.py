import math
import random
from collections import Counter

import numpy as np
import pytest

from classex.classalg import (BudgetExceeded, brute_force_exponent, class_support_bfs, covering_number,
                              covering_number_group, exhaustive_tuple_count, exponent_report,
                              gen_exponent, gen_exponent_group, structure_constants, tuple_count)
from classex.classes import is_real
from classex.gf import gf
from classex.groups import GroupSpec, Matrix, Permutation, ProjectiveMatrix
from classex.pipeline import analyze, builtin

SMALL = ["S3", "S4", "A5", "SL_2(3)", "GL_2(3)", "PSL_2(7)", "A6", "SL_2(5)", "PSL_2(8)", "PSU_3(3)"]


def test_s3(group):
    ct = group("S3").ct
    assert [gen_exponent(ct, c) for c in range(ct.n)] == [1, 2, 2]
    assert covering_number_group(ct) is None
    # transpositions: three ordered pairs (t, t) multiply to 1
    assert tuple_count(ct, 1, 2) == 3


def test_sl23_values_from_oracle(group):
    a = group("SL_2(3)")
    got = [gen_exponent(a.ct, c) for c in range(a.cd.n_classes)]
    assert got == [1, 2, 3, 3, 2, 3, 3]
    assert got == [brute_force_exponent(a.table, a.cd, c) for c in range(a.cd.n_classes)]
    assert covering_number_group(a.ct) is None


def test_structure_constant_identities(group):
    a = group("PSL_2(7)")
    T, sizes = a.ct.T, a.cd.sizes
    n = a.ct.n
    # for fixed x in C, each rep(E) = x y has exactly one y
    assert (T.sum(axis=1) == sizes[:, None]).all()
    # |C||D| = sum_E T[C,D,E] |E|
    for c in range(n):
        for d in range(n):
            assert int((T[c, d] * sizes).sum()) == int(sizes[c] * sizes[d])
    # threads do not change the tensor
    assert (structure_constants(a.table, a.cd, threads=3).T == T).all()


@pytest.mark.parametrize("name", SMALL)
def test_exponent_invariants(group, name):
    a = group(name)
    ct, cd = a.ct, a.cd
    for c in range(ct.n):
        e = gen_exponent(ct, c)
        assert (e == 1) == (c == 0)
        if c:
            assert (e == 2) == is_real(cd, c)
        assert e == gen_exponent(ct, int(cd.inverse_of[c]))
        assert e <= int(cd.order_of_rep[c])
        first = next(k for k in range(1, e + 2) if tuple_count(ct, c, k) > 0)
        assert first == e
        cn = covering_number(ct, c) if c else None
        if cn is not None:
            assert e <= cn
            assert covering_number(ct, c, cumulative=True) <= cn


@pytest.mark.parametrize("name", ["S4", "A5", "SL_2(3)", "PSL_2(7)"])
def test_oracles_agree(group, name):
    a = group(name)
    for c in range(a.cd.n_classes):
        assert brute_force_exponent(a.table, a.cd, c) == gen_exponent(a.ct, c)
        for k in (1, 2, 3):
            assert exhaustive_tuple_count(a.table, a.cd, c, k) == tuple_count(a.ct, c, k)


def test_oracle_budgets(group):
    a = group("A6")
    with pytest.raises(BudgetExceeded):
        brute_force_exponent(a.table, a.cd, 5, budget=10)
    with pytest.raises(BudgetExceeded):
        exhaustive_tuple_count(a.table, a.cd, 5, 3, budget=10)
    with pytest.raises(ValueError):
        tuple_count(a.ct, 1, 0)


def test_covering_numbers(group):
    assert covering_number_group(group("SL_3(2)").ct) == 3
    assert covering_number_group(group("PSL_2(7)").ct) == 3
    assert covering_number_group(group("A5").ct) == 3
    ct = group("PSp_4(3)").ct
    assert covering_number_group(ct) == 6
    assert covering_number_group(ct, cumulative=True) == 5


def test_support_sequence_stops_at_first_repeat(group):
    ct = group("A5").ct
    seq = class_support_bfs(ct, 1)
    assert seq[0] == frozenset([1])
    assert len(set(seq)) == len(seq)


def _elements_e(a, idx):
    return gen_exponent(a.ct, int(a.cd.class_of[idx]))


@pytest.mark.parametrize("name", ["A5", "PSL_2(7)", "SL_2(5)", "A6"])
def test_lcm_bound(group, name):
    a = group(name)
    t = a.table
    inv = t.inverse_index()
    rng = random.Random(7)
    for _ in range(200):
        g, x = rng.randrange(t.order), rng.randrange(t.order)
        xe = t.element(x)
        y = t.index_of(xe.inverse() * t.element(g))
        bound = math.lcm(xe.order(), t.element(y).order())
        assert _elements_e(a, g) <= bound
    assert inv[0] == 0


@pytest.mark.parametrize("name", ["A6", "PSL_2(7)", "PSU_3(3)"])
def test_involution_products(group, name):
    a = group(name)
    t, cd = a.table, a.cd
    rng = random.Random(11)
    invols = [i for i in range(t.order) if cd.order_of_rep[cd.class_of[i]] == 2]
    reals = [i for i in range(t.order) if is_real(cd, int(cd.class_of[i]))]
    for _ in range(200):
        x, y = t.element(rng.choice(invols)), t.element(rng.choice(reals))
        assert _elements_e(a, t.index_of(x * y)) <= 4
        z = t.element(rng.choice(invols))
        w = t.element(rng.choice(invols))
        assert _elements_e(a, t.index_of(x * z * w)) <= 4


def _centraliser(a, x):
    t = a.table
    xe = t.element(x)
    idx = np.flatnonzero(t.lmul_index(xe) == t.rmul_index(xe))
    gens = [t.element(int(i)) for i in idx if i != 0] or [xe]
    return idx, analyze(GroupSpec(f"C({x})", a.spec.kind, gens, len(idx)))


@pytest.mark.parametrize("name", ["A5", "PSL_2(7)", "A6", "SL_2(5)"])
def test_commuting_product_bound(group, name):
    a = group(name)
    t = a.table
    rng = random.Random(3)
    for _ in range(25):
        x = rng.randrange(1, t.order)
        idx, sub = _centraliser(a, x)
        y = int(rng.choice(idx))
        ye = t.element(y)
        m = gen_exponent(sub.ct, int(sub.cd.class_of[sub.table.index_of(ye)]))
        xm = t.element(x) ** m
        n = _elements_e(a, t.index_of(xm))
        assert _elements_e(a, t.index_of(t.element(x) * ye)) <= n * m


def _profile(a):
    return Counter((int(a.cd.sizes[c]), int(a.cd.order_of_rep[c]), gen_exponent(a.ct, c))
                   for c in range(a.cd.n_classes))


def test_relabelled_generators_same_profile():
    base = builtin("A6")
    s = Permutation.from_cycles(6, (0, 5))
    moved = GroupSpec("A6'", "perm", [g.conjugate(s) for g in base.generators], base.claimed_order)
    assert _profile(analyze(base)) == _profile(analyze(moved))

    base = builtin("PSL_3(3)")
    F = gf(3)
    d = Matrix.from_rows(F, [[2, 0, 0], [0, 1, 0], [1, 0, 1]])
    moved = GroupSpec("PSL_3(3)'", "projmat",
                      [ProjectiveMatrix.of(Matrix(F, 3, g.entries).conjugate(d)) for g in base.generators],
                      base.claimed_order)
    assert _profile(analyze(base)) == _profile(analyze(moved))


def test_report_formats(group):
    rep = exponent_report(group("A5").ct)
    assert rep.e_G == 2 and rep.cn_G == 3 and rep.order == 60
    doc = __import__("json").loads(rep.to_json())
    assert [c["e"] for c in doc["classes"]] == [1, 2, 2, 2, 2]
    assert rep.to_csv().splitlines()[0] == "id,size,order,real,semirational,e,cn"


def test_group_exponents(group):
    assert gen_exponent_group(group("GL_3(2)").ct) == 3
    assert gen_exponent_group(group("PSL_3(3)").ct) == 3
    assert gen_exponent_group(group("A5").ct) == 2
    assert gen_exponent_group(group("M11").ct) == 3


@pytest.mark.slow
@pytest.mark.parametrize("name,order", [("PSL_4(3)", 6065280), ("PSU_4(3)", 3265920)])
def test_large_groups_have_exponent_three(name, order):
    from classex.pipeline import clear_cache
    clear_cache()
    try:
        a = analyze(builtin(name), threads=4)
        assert a.table.order == order
        assert gen_exponent_group(a.ct) == 3
    finally:
        clear_cache()
