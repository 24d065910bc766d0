import json

import pytest

from classex.gf import gf
from classex.groups import (GroupError, GroupSpec, Matrix, Permutation, ProjectiveMatrix, forms_check,
                            group_order_formula, load_genfile, make_alternating, make_classical,
                            make_symmetric, save_genfile)


def test_permutation_basics():
    g = Permutation.from_cycles(4, (0, 1), (2, 3))
    assert (g * g).is_identity()
    c = Permutation.from_cycles(5, (0, 1, 2, 3, 4))
    assert c.order() == 5 and c.sign() == 1
    assert Permutation.from_cycles(3, (0, 1)).sign() == -1
    x, y = Permutation.from_cycles(3, (0, 1)), Permutation.from_cycles(3, (1, 2))
    # left-to-right composition: apply x first
    assert (x * y)(0) == y(x(0))
    assert (x * x.inverse()).is_identity()
    with pytest.raises(GroupError):
        Permutation((0, 0, 1))


def test_kind_mismatch():
    with pytest.raises(GroupError):
        Permutation.from_cycles(3, (0, 1)) * Matrix.scalar(gf(3), 2, 1)


def test_projective_scalar_is_identity():
    F = gf(5)
    m = ProjectiveMatrix.of(Matrix.scalar(F, 3, 2))
    assert m.is_identity()


def test_projective_canonicalisation():
    F = gf(7)
    m = Matrix.from_rows(F, [[0, 3], [5, 1]])
    c = ProjectiveMatrix.of(m)
    assert ProjectiveMatrix.of(c) == c  # idempotent
    for lam in range(1, 7):
        assert ProjectiveMatrix.of(m.scale(lam)) == c
    assert c.entries[1] == 1  # first nonzero entry is 1


def test_sl23_generators_product_order_3():
    spec = make_classical("SL", 2, 3)
    a, b = spec.generators[:2]
    assert spec.claimed_order == 24
    assert all(g.det() == 1 for g in spec.generators)
    assert (a * b).order() in (3, 6)
    # one of the standard-shape products has order 3
    orders = {(x * y).order() for x in spec.generators for y in spec.generators}
    assert 3 in orders


def test_order_formula():
    assert group_order_formula("GL", 3, 2) == 168
    assert group_order_formula("PSp", 4, 3) == 25920
    assert group_order_formula("PSL", 2, 7) == 168
    assert group_order_formula("PSL", 3, 3) == 5616
    assert group_order_formula("PSU", 4, 2) == 25920
    assert group_order_formula("SU", 3, 2) == 216
    with pytest.raises(GroupError):
        group_order_formula("E8", 8, 2)


def test_constructor_claims():
    assert make_classical("PSL", 3, 3).claimed_order == 5616
    assert make_classical("PSU", 4, 2).claimed_order == 25920
    assert make_alternating(5).claimed_order == 60
    assert make_symmetric(4).claimed_order == 24
    with pytest.raises(GroupError):
        make_classical("Sp", 3, 3)
    with pytest.raises(GroupError):
        make_classical("SL", 9, 2)
    with pytest.raises(ValueError):
        make_classical("SL", 2, 6)


@pytest.mark.parametrize("fam,n,q", [("Sp", 4, 3), ("SU", 3, 2), ("SU", 3, 3), ("PSU", 4, 2),
                                     ("PSp", 4, 3), ("SL", 3, 4), ("Sp", 6, 2)])
def test_forms_pass(fam, n, q):
    spec = make_classical(fam, n, q)
    assert forms_check(spec).ok


def test_su32_hermitian_and_det():
    spec = make_classical("SU", 3, 2)
    for g in spec.generators:
        assert g.det() == 1
        assert g.frobenius().transpose() * g == g.identity()


def test_tampered_generator_fails():
    spec = make_classical("Sp", 4, 3)
    g = spec.generators[-1]
    e = list(g.entries)
    e[1] = (e[1] + 1) % 3
    bad = Matrix(g.field, g.n, tuple(e))
    tampered = GroupSpec("tampered", "mat", spec.generators[:-1] + [bad], spec.claimed_order,
                         spec.family, spec.form)
    rep = forms_check(tampered)
    assert not rep.ok
    assert rep.failures[0][0] == len(spec.generators) - 1


def test_genfile_roundtrip(tmp_path):
    for spec in (make_alternating(6), make_classical("PSU", 3, 3)):
        path = tmp_path / "g.json"
        save_genfile(spec, path)
        back = load_genfile(path)
        assert back.generators == spec.generators
        assert back.fingerprint() == spec.fingerprint()
        assert forms_check(back).ok


def test_genfile_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "perm", "degree": 3, "generators": [[0, 1]]}))
    with pytest.raises(GroupError):
        load_genfile(path)
    path.write_text(json.dumps({"kind": "weird", "generators": []}))
    with pytest.raises(GroupError):
        load_genfile(path)
