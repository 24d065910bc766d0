import numpy as np
import pytest

from classex.enumeration import EnumerationError, LimitExceeded, closure_check, enumerate_group
from classex.groups import GroupSpec, make_alternating, make_classical, make_symmetric
from classex.pipeline import builtin

MATRIX = [("GL", 3, 2), ("SL", 2, 3), ("SL", 2, 5), ("GL", 2, 3), ("PSL", 2, 7), ("PSL", 2, 8),
          ("PSL", 2, 9), ("PSL", 3, 3), ("PSL", 3, 4), ("Sp", 4, 2), ("Sp", 4, 3), ("PSp", 4, 3),
          ("SU", 3, 2), ("SU", 3, 3), ("PSU", 3, 3), ("PSU", 4, 2), ("PGL", 2, 5), ("SL", 3, 3),
          ("GL", 4, 2), ("SU", 2, 4)]


@pytest.mark.parametrize("fam,n,q", MATRIX)
def test_order_matches_formula(fam, n, q):
    spec = make_classical(fam, n, q)
    t = enumerate_group(spec)
    assert t.order == spec.claimed_order
    assert closure_check(t)


def test_permutation_orders():
    for spec, order in [(make_alternating(5), 60), (make_symmetric(5), 120), (make_alternating(7), 2520),
                        (builtin("M11"), 7920)]:
        assert enumerate_group(spec).order == order


def test_identity_is_index_zero_and_lookup_roundtrip():
    t = enumerate_group(make_classical("PSL", 2, 7))
    assert t.element(0).is_identity()
    for i in [0, 1, 17, 100, 167]:
        assert t.index_of(t.element(i)) == i
    assert (t.index_rows(t.rows) == np.arange(t.order)).all()


def test_products_and_inverses_agree_with_element_arithmetic():
    t = enumerate_group(make_classical("SU", 3, 3))
    g = t.element(5)
    rm = t.rmul_index(g)
    lm = t.lmul_index(g)
    inv = t.inverse_index()
    for i in [0, 3, 77, 500]:
        x = t.element(i)
        assert t.index_of(x * g) == rm[i]
        assert t.index_of(g * x) == lm[i]
        assert t.index_of(x.inverse()) == inv[i]


def test_threads_give_identical_tables():
    spec = make_classical("PSp", 4, 3)
    a = enumerate_group(spec, threads=1)
    b = enumerate_group(spec, threads=4)
    assert a.codes.tobytes() == b.codes.tobytes()
    assert a.rows.tobytes() == b.rows.tobytes()


def test_cache_roundtrip(tmp_path):
    spec = make_classical("PSL", 3, 3)
    a = enumerate_group(spec, cache_dir=str(tmp_path))
    assert list(tmp_path.glob("*.npz"))
    b = enumerate_group(spec, cache_dir=str(tmp_path))
    assert (a.codes == b.codes).all()
    assert (a.rows == b.rows).all()


def test_limits():
    with pytest.raises(LimitExceeded):
        enumerate_group(make_alternating(8), limit=1000)
    with pytest.raises(LimitExceeded):
        enumerate_group(make_classical("PSL", 3, 3), byte_budget=1000)
    # unclaimed order: detected during the search
    spec = GroupSpec("A8?", "perm", make_alternating(8).generators)
    with pytest.raises(LimitExceeded):
        enumerate_group(spec, limit=5000)


def test_wrong_claimed_order_is_reported():
    spec = make_alternating(5)
    bad = GroupSpec("A5", "perm", spec.generators, 61)
    with pytest.raises(EnumerationError):
        enumerate_group(bad)


def test_wide_codes():
    # degree 20 needs 100 bits per element, beyond a packed uint64
    from classex.groups import Permutation
    rot = Permutation.from_cycles(20, tuple(range(20)))
    flip = Permutation(tuple((-i) % 20 for i in range(20)))
    t = enumerate_group(GroupSpec("D40", "perm", [rot, flip], 40))
    assert t.codes.dtype.kind == "V"
    assert closure_check(t)
    assert all(t.index_of(t.element(i)) == i for i in range(40))


@pytest.mark.slow
@pytest.mark.parametrize("fam,n,q", [("PSL", 4, 3), ("PSp", 4, 5), ("Sp", 6, 2)])
def test_big_orders(fam, n, q):
    spec = make_classical(fam, n, q)
    assert enumerate_group(spec, threads=4).order == spec.claimed_order


@pytest.mark.parametrize("name", ["A6", "SL_3(4)", "PSU_3(3)", "PSL_3(4)", "Sp_4(3)"])
def test_kernel_products_match_elements(name):
    import random
    from classex.kernels import make_kernel
    spec = builtin(name)
    t = enumerate_group(spec)
    k = make_kernel(spec)
    rng = random.Random(1)
    idx = [rng.randrange(t.order) for _ in range(40)]
    jdx = [rng.randrange(t.order) for _ in range(40)]
    prod = k.mul(t.rows[idx], t.rows[jdx])
    for r, i, j in zip(prod, idx, jdx):
        assert k.element(r) == t.element(i) * t.element(j)
    inv = k.inverse(t.rows[idx], t.order)
    for r, i in zip(inv, idx):
        assert k.element(r) == t.element(i).inverse()
    p5 = k.power(t.rows[idx], 5)
    for r, i in zip(p5, idx):
        assert k.element(r) == t.element(i) ** 5
    assert (k.decode(k.encode(t.rows)) == t.rows).all()
