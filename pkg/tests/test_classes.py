import math

import numpy as np
import pytest

from classex.classes import (classes_csv, coprime_residues, is_rational, is_real, is_semirational,
                             partition_I1_I2, power_class)
from classex.pipeline import analyze, builtin
from classex.groups import make_classical


def test_a5_classes(group):
    cd = group("A5").cd
    assert list(cd.sizes) == [1, 15, 20, 12, 12]
    assert list(cd.order_of_rep) == [1, 2, 3, 5, 5]
    assert power_class(cd, 3, 2) == 4
    assert power_class(cd, 4, 2) == 3
    assert power_class(cd, 1, 2) == 0
    assert all(power_class(cd, c, 1) == c for c in range(5))


def test_class_counts(group):
    assert group("SL_2(3)").cd.n_classes == 7
    assert group("PSp_4(3)").cd.n_classes == 20
    assert list(group("GL_3(2)").cd.sizes) == [1, 21, 56, 42, 24, 24]


@pytest.mark.parametrize("name", ["S4", "A6", "SL_2(3)", "PSL_2(8)", "PSU_3(3)", "M11"])
def test_partition_invariants(group, name):
    a = group(name)
    cd, t = a.cd, a.table
    assert cd.sizes[0] == 1 and cd.reps[0] == 0
    assert int(cd.sizes.sum()) == t.order
    assert all(t.order % int(s) == 0 for s in cd.sizes)
    inv = cd.inverse_of
    assert all(inv[inv[c]] == c for c in range(cd.n_classes)) and inv[0] == 0
    # sorted by (order, size, smallest member)
    keys = [(int(cd.order_of_rep[c]), int(cd.sizes[c]), int(cd.members(c).min())) for c in range(cd.n_classes)]
    assert keys == sorted(keys)
    for c in range(cd.n_classes):
        d = inv[c]
        assert cd.sizes[c] == cd.sizes[d] and cd.order_of_rep[c] == cd.order_of_rep[d]
        assert is_real(cd, c) == is_real(cd, d)


@pytest.mark.parametrize("name", ["A5", "SL_2(5)", "PSL_3(3)", "PSU_4(2)"])
def test_size_is_index_of_centraliser(group, name):
    a = group(name)
    t, cd = a.table, a.cd
    for c in range(cd.n_classes):
        g = t.element(int(cd.reps[c]))
        cent = int((t.lmul_index(g) == t.rmul_index(g)).sum())
        assert cent * int(cd.sizes[c]) == t.order


def test_class_membership_is_conjugacy(group):
    # every member is a conjugate of the representative; brute force on S4
    a = group("S4")
    t, cd = a.table, a.cd
    for c in range(cd.n_classes):
        g = t.element(int(cd.reps[c]))
        orbit = {t.index_of(g.conjugate(t.element(x))) for x in range(t.order)}
        assert orbit == set(int(m) for m in cd.members(c))


def test_power_map_composes(group):
    cd = group("PSL_2(13)").cd
    for c in range(cd.n_classes):
        n = int(cd.order_of_rep[c])
        res = coprime_residues(n)
        for m1 in res:
            for m2 in res:
                assert power_class(cd, c, m1 * m2) == power_class(cd, power_class(cd, c, m1), m2)


def test_predicates(group):
    cd = group("PSL_2(7)").cd
    assert not all(is_real(cd, c) for c in range(cd.n_classes))
    assert [is_rational(cd, c) for c in range(cd.n_classes)] == [True, True, True, True, False, False]
    assert all(is_semirational(cd, c) for c in range(cd.n_classes))
    I1, I2 = partition_I1_I2(cd, 4)
    assert I1 == {1, 2, 4} and I2 == {3, 5, 6}
    cd5 = group("A5").cd
    assert not is_semirational(cd5, 3)
    with pytest.raises(ValueError):
        partition_I1_I2(cd5, 3)
    assert partition_I1_I2(cd5, 0) == ({1}, {1})


def test_coprime_residues():
    assert coprime_residues(1) == [1]
    assert coprime_residues(12) == [1, 5, 7, 11]
    assert len(coprime_residues(97)) == 96


def test_csv(group):
    text = classes_csv(group("A5").cd)
    lines = text.strip().splitlines()
    assert lines[0] == "id,size,order,real,rational,semirational"
    assert len(lines) == 6


@pytest.mark.slow
def test_psp45_is_real():
    from classex.pipeline import clear_cache
    clear_cache()
    try:
        a = analyze(make_classical("PSp", 4, 5), threads=4, with_tensor=False)
        assert a.table.order == 4680000
        assert all(is_real(a.cd, c) for c in range(a.cd.n_classes))
    finally:
        clear_cache()
