import math
import random
from fractions import Fraction

import pytest

from classex import bounds
from classex.bounds import (NoMatchingRow, jacobsthal, psl_lower_bound, psu_lower_bound, radical,
                            semirational_bounds, semirational_upper_bound, table_upper_bound,
                            u3q1_majorant)
from classex.classalg import gen_exponent_group
from classex.gf import is_prime


def scan(n):
    """Largest gap between consecutive integers coprime to n, over two periods."""
    cop = [a for a in range(1, 2 * n + 2) if math.gcd(a, n) == 1]
    return max(b - a for a, b in zip(cop, cop[1:]))


def test_jacobsthal_small_values():
    assert jacobsthal(6) == 4
    assert jacobsthal(30) == 6
    assert jacobsthal(2) == 2
    assert jacobsthal(1) == 1
    with pytest.raises(ValueError):
        jacobsthal(0)


def test_jacobsthal_matches_scan():
    for n in range(2, 2000):
        assert jacobsthal(n) == scan(n), n


def test_jacobsthal_prime_powers():
    for p in [2, 3, 5, 7, 31, 101]:
        for a in range(1, 5):
            assert jacobsthal(p ** a) == 2


def test_jacobsthal_depends_on_radical():
    rng = random.Random(5)
    for _ in range(1000):
        n = rng.randrange(2, 5000)
        assert jacobsthal(n) == scan(radical(n)) == scan(n)


def test_semirational_rules():
    assert semirational_upper_bound(1) == 1
    assert semirational_upper_bound(2) == 2
    assert semirational_upper_bound(5 * 7 * 11) == 3
    assert semirational_upper_bound(5 ** 2 * 7) == 3
    assert semirational_upper_bound(15) == 5
    assert semirational_upper_bound(3 ** 2 * 5) == 5
    assert semirational_upper_bound(16) == 4
    assert semirational_upper_bound(27) == 3
    assert dict(semirational_bounds(6))["jacobsthal"] == 6
    # 5*7*11 has three primes, all at least 5
    assert ("distinct-primes", 3) in semirational_bounds(385)
    assert "distinct-primes" not in dict(semirational_bounds(3 * 5 * 7))
    with pytest.raises(ValueError):
        semirational_bounds(0)


def test_lower_bounds():
    assert psl_lower_bound(3, 5) == 3
    assert psl_lower_bound(4, 5) == 1  # q-1 divides n
    assert psl_lower_bound(2, 7) == 2
    assert psu_lower_bound(4, 3) == 1
    assert psu_lower_bound(4, 2) == 3
    assert psu_lower_bound(3, 4) == 3


def test_table_rows():
    assert table_upper_bound("PSL", 7, 2).bound == 6
    assert table_upper_bound("PSL", 3, 5).bound == 3
    assert table_upper_bound("PSL", 2, 7).bound == 3
    assert table_upper_bound("PSL", 2, 9).bound == 2
    assert table_upper_bound("PSL", 4, 3).bound == 6
    assert table_upper_bound("E8", None, 8).bound == 8
    assert table_upper_bound("E6", None, 7 ** 2).bound == 36
    assert table_upper_bound("E6", None, 11).bound == 11
    # PSU_5(2): the q=2 row gives 18, the p=2 row 2n-2 = 8; the minimum is reported
    tb = table_upper_bound("PSU", 5, 2)
    assert ("classical:PSUn(2)", 18) in tb.matched
    assert tb.bound == 8
    assert table_upper_bound("PSL", 20, 4).caveats
    assert table_upper_bound("2G2", None, 27).caveats


def test_table_errors():
    with pytest.raises(NoMatchingRow):
        table_upper_bound("PSL", 2, 3)
    with pytest.raises(NoMatchingRow):
        table_upper_bound("Nope", 3, 3)
    with pytest.raises(ValueError):
        table_upper_bound("PSL", 3, 6)


def test_majorant():
    v8 = u3q1_majorant(8)
    assert isinstance(v8, Fraction)
    assert v8 == Fraction(1013, 1064)
    assert v8 < 1
    assert u3q1_majorant(4) > 1
    assert u3q1_majorant(64) < v8
    for q in [8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53, 59, 61, 64]:
        assert u3q1_majorant(q) < 1
    with pytest.raises(ValueError):
        u3q1_majorant(3)
    with pytest.raises(ValueError):
        u3q1_majorant(10)


@pytest.mark.parametrize("name,fam,n,q", [("PSL_2(7)", "PSL", 2, 7), ("PSL_3(3)", "PSL", 3, 3),
                                          ("GL_3(2)", "PSL", 3, 2), ("PSU_4(2)", "PSU", 4, 2),
                                          ("PSU_3(3)", "PSU", 3, 3), ("PSp_4(3)", "PSp", 4, 3)])
def test_computed_values_respect_bounds(group, name, fam, n, q):
    e = gen_exponent_group(group(name).ct)
    assert e <= table_upper_bound(fam, n, q).bound
    if fam == "PSL":
        assert psl_lower_bound(n, q) <= e
    if fam == "PSU":
        assert psu_lower_bound(n, q) <= e


def test_verdicts(group):
    a = group("PSL_2(7)")
    vs = bounds.verdict(a.report(), a.spec.family)
    assert all(v.ok for v in vs)
    grp = [v for v in vs if v.scope == "group"][0]
    assert (grp.lower, grp.upper, grp.computed) == (2, 3, 3)
    a = group("A6")
    vs = bounds.verdict(a.report(), a.spec.family)
    assert vs[0].upper == 3 and vs[0].ok
    # a fabricated violation is caught
    rep = a.report()
    rep.e_G = 9
    assert not bounds.verdict(rep, a.spec.family)[0].ok
    # unknown family: only class-level verdicts
    assert all(v.scope != "group" for v in bounds.verdict(a.report(), None))


def test_factorize():
    for n in range(1, 500):
        f = bounds.factorize(n)
        assert math.prod(p ** k for p, k in f.items()) == n
        assert all(is_prime(p) for p in f)
