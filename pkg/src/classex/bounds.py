"""Number-theoretic and tabulated bounds for generalized exponents.

For classical families ``n`` is the dimension of the natural module, so
``PSp`` with ``n = 10`` means PSp_10.  Exceptional families ignore ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .gf import prime_power


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def radical(n: int) -> int:
    return math.prod(factorize(n)) if n > 1 else 1


def jacobsthal(n: int) -> int:
    """Largest gap between consecutive positive integers coprime to ``n``.

    Coprimality to ``n`` only depends on its radical, whose multiples
    repeat with period ``rad(n)``, so one period plus the next coprime
    integer suffices.  ``j(1) = 1``: every integer is coprime to 1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return 1
    n = radical(n)
    prev, best = 1, 0
    for a in range(2, 2 * n + 2):
        if math.gcd(a, n) == 1:
            best = max(best, a - prev)
            prev = a
            if a > n:
                break
    return best


def semirational_bounds(n: int) -> list[tuple[str, int]]:
    """Every applicable upper bound on e(g), g semirational of order ``n``."""
    if n < 1:
        raise ValueError("element order must be positive")
    if n == 1:
        return [("trivial", 1)]
    out = []
    if n == 2:
        out.append(("involution", 2))
    primes = list(factorize(n))
    k = len(primes)
    if all(p >= k + 2 for p in primes):
        out.append(("distinct-primes", 3))
    out.append(("jacobsthal", jacobsthal(n) + 2))
    if k == 1:
        out.append(("odd-prime-power", 3) if primes[0] > 2 else ("power-of-two", 4))
    return out


def semirational_upper_bound(n: int) -> int:
    return min(b for _, b in semirational_bounds(n))


def psl_lower_bound(n: int, q: int) -> int:
    """``min(n, (q-1)/gcd(n, q-1))``."""
    prime_power(q)
    d = math.gcd(n, q - 1)
    return min(n, (q - 1) // d)


def psu_lower_bound(n: int, q: int) -> int:
    """``min(n, (q+1)/gcd(n, q+1))``."""
    prime_power(q)
    d = math.gcd(n, q + 1)
    return min(n, (q + 1) // d)


# --- tabulated upper bounds ----------------------------------------------------

@dataclass(frozen=True)
class Rule:
    family: str
    condition: str
    when: Callable[[int, int, int], bool]  # (n, q, p)
    bound: Callable[[int, int, int], int]
    source: str
    caveat: Optional[str] = None


def _c(v):
    return lambda n, q, p: v


def _p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


LIE_RULES: list[Rule] = [
    # classical groups
    Rule("PSL", "n=2, q = 3 mod 4", lambda n, q, p: n == 2 and q % 4 == 3, _c(3), "classical:PSL2:q=3(4)"),
    Rule("PSL", "n=2, q != 3 mod 4", lambda n, q, p: n == 2 and q % 4 != 3, _c(2), "classical:PSL2:q!=3(4)"),
    Rule("PSL", "n>2, q>3", lambda n, q, p: n > 2 and q > 3, lambda n, q, p: n, "classical:PSLn:q>3"),
    Rule("PSL", "n>5, q=2", lambda n, q, p: n > 5 and q == 2, _c(6), "classical:PSLn(2):n>5"),
    Rule("PSL", "n in 3,4,5, q=2", lambda n, q, p: n in (3, 4, 5) and q == 2, _c(3), "classical:PSLn(2):n=3,4,5"),
    Rule("PSL", "n>2, q=3", lambda n, q, p: n > 2 and q == 3, _c(6), "classical:PSLn(3)"),
    Rule("PSL", "n>2, q=4", lambda n, q, p: n > 2 and q == 4, _c(18), "classical:PSLn(4)",
         caveat="source bound is stated for SL_n(4); reported verbatim for PSL_n(4)"),
    Rule("PSU", "n>2, n a power of p", lambda n, q, p: n > 2 and _p_power(n, p), lambda n, q, p: n,
         "classical:PSUn:n=p^k"),
    # the two rows below are proved for odd q only
    Rule("PSU", "n>2, q odd, gcd(q,n)=1", lambda n, q, p: n > 2 and p > 2 and math.gcd(q, n) == 1,
         lambda n, q, p: 3 * n, "classical:PSUn:(q,n)=1"),
    Rule("PSU", "n>2, q odd, gcd(q,n)>1", lambda n, q, p: n > 2 and p > 2 and math.gcd(q, n) > 1,
         lambda n, q, p: 3 * n + 3, "classical:PSUn:(q,n)>1"),
    Rule("PSU", "n>2, q=2", lambda n, q, p: n > 2 and q == 2, _c(18), "classical:PSUn(2)"),
    Rule("PSU", "n>2, p=2", lambda n, q, p: n > 2 and p == 2, lambda n, q, p: 2 * n - 2, "classical:PSUn:p=2"),
    Rule("PSU", "n=3, q>2", lambda n, q, p: n == 3 and q > 2, _c(3), "classical:PSU3"),
    Rule("PSU", "n=4, p>2", lambda n, q, p: n == 4 and p > 2, _c(6), "classical:PSU4:p>2"),
    Rule("PSp", "n=2m, m>4, q = 3 mod 4", lambda n, q, p: n % 2 == 0 and n > 8 and q % 4 == 3, _c(6),
         "classical:PSp2m:q=3(4)"),
    Rule("PSp", "n=4, q != 3 mod 4", lambda n, q, p: n == 4 and q % 4 != 3, _c(2), "classical:PSp4:q!=3(4)"),
    Rule("PSp", "n=4, q = 3 mod 4", lambda n, q, p: n == 4 and q % 4 == 3, _c(3), "classical:PSp4:q=3(4)"),
    Rule("POmega+", "n = 0 mod 4, q != 3 mod 4", lambda n, q, p: n % 4 == 0 and n >= 8 and q % 4 != 3, _c(2),
         "classical:POmega+4m"),
    Rule("POmega+", "n = 2 mod 4", lambda n, q, p: n % 4 == 2 and n >= 10, _c(4), "classical:POmega+4m+2"),
    Rule("POmega-", "n = 2 mod 4, p>2", lambda n, q, p: n % 4 == 2 and n >= 10 and p > 2, _c(4),
         "classical:POmega-4m+2:p>2"),
    Rule("POmega-", "n = 2 mod 4, p=2", lambda n, q, p: n % 4 == 2 and n >= 10 and p == 2, _c(8),
         "classical:POmega-4m+2:p=2"),
    Rule("POmega-", "n = 0 mod 4", lambda n, q, p: n % 4 == 0 and n >= 8, _c(2), "classical:POmega-4m"),
    Rule("Omega", "n odd, q = 1 mod 4", lambda n, q, p: n % 2 == 1 and n >= 7 and q % 4 == 1, _c(2),
         "classical:Omega2m+1:q=1(4)"),
    Rule("Omega", "n=9, q = 3 mod 4", lambda n, q, p: n == 9 and q % 4 == 3, _c(2), "classical:Omega9:q=3(4)"),
    Rule("POmega+", "n=8", lambda n, q, p: n == 8, _c(2), "classical:POmega+8"),
    # exceptional groups
    Rule("3D4", "any", lambda n, q, p: True, _c(2), "exceptional:3D4"),
    *[Rule(f, cond, w, b, f"exceptional:{f}:{tag}") for f in ("E6", "2E6") for cond, w, b, tag in (
        ("p>5", lambda n, q, p: p > 5, _c(36), "p>5"),
        ("p=2", lambda n, q, p: p == 2, _c(16), "p=2"),
        ("p=3", lambda n, q, p: p == 3, _c(27), "p=3"),
        ("p=5", lambda n, q, p: p == 5, _c(25), "p=5"),
        ("7<p<36", lambda n, q, p: 7 < p < 36, lambda n, q, p: p, "7<p<36"),
    )],
    Rule("E7", "p>2", lambda n, q, p: p > 2, _c(6), "exceptional:E7:p>2"),
    Rule("E7", "p=2", lambda n, q, p: p == 2, _c(4), "exceptional:E7:p=2"),
    Rule("E8", "p not 2,5", lambda n, q, p: p not in (2, 5), _c(6), "exceptional:E8:p!=2,5"),
    Rule("E8", "p=5", lambda n, q, p: p == 5, _c(6), "exceptional:E8:p=5"),
    Rule("E8", "p=2", lambda n, q, p: p == 2, _c(8), "exceptional:E8:p=2"),
    Rule("F4", "p>2", lambda n, q, p: p > 2, _c(6), "exceptional:F4:p>2"),
    Rule("F4", "p=2", lambda n, q, p: p == 2, _c(4), "exceptional:F4:p=2"),
    Rule("2F4", "p=2", lambda n, q, p: p == 2, _c(6), "exceptional:2F4"),
    Rule("G2", "p>2", lambda n, q, p: p > 2, _c(6), "exceptional:G2:p>2"),
    Rule("G2", "p=2", lambda n, q, p: p == 2, _c(4), "exceptional:G2:p=2"),
    Rule("2G2", "p=3", lambda n, q, p: p == 3, _c(3), "exceptional:2G2",
         caveat="tabulated with p=2; Ree groups 2G2(q) exist only for p=3"),
    Rule("2B2", "p=2", lambda n, q, p: p == 2, _c(3), "exceptional:2B2"),
]

# Parameters where the family's group is not simple; the tables do not apply.
NOT_SIMPLE = {("PSL", 2, 2), ("PSL", 2, 3), ("PSU", 3, 2), ("PSp", 4, 2)}


class NoMatchingRow(LookupError):
    pass


@dataclass
class TableBound:
    bound: int
    source: str
    matched: list = field(default_factory=list)
    caveats: list = field(default_factory=list)


def table_upper_bound(family: str, n: Optional[int], q: int) -> TableBound:
    """Minimum over all matching table rows, with every matched row listed."""
    p, _ = prime_power(q)
    n = n or 0
    if (family, n, q) in NOT_SIMPLE:
        raise NoMatchingRow(f"{family}_{n}({q}) is not simple")
    hits = [(r.bound(n, q, p), r) for r in LIE_RULES if r.family == family and r.when(n, q, p)]
    if not hits:
        raise NoMatchingRow(f"no table row for {family} n={n} q={q}")
    best, rule = min(hits, key=lambda h: h[0])
    return TableBound(best, rule.source, [(r.source, b) for b, r in hits],
                      [r.caveat for _, r in hits if r.caveat and r.bound(n, q, p) == best])


def simple_family(family: str, n: int, q: int) -> Optional[str]:
    """Table family for a constructed group that is isomorphic to its simple
    quotient (e.g. GL_n(2) = PSL_n(2)); None otherwise."""
    if family in ("PSL", "PSU", "PSp"):
        return family
    if family in ("GL", "PGL") and q == 2:
        return "PSL"
    if family == "PGL" and math.gcd(n, q - 1) == 1:
        return "PSL"
    if family == "SL" and math.gcd(n, q - 1) == 1:
        return "PSL"
    if family == "SU" and math.gcd(n, q + 1) == 1:
        return "PSU"
    if family == "Sp" and q % 2 == 0:
        return "PSp"
    return None


# --- PSU_3 majorant ----------------------------------------------------------------

def u3q1_majorant(q: int) -> Fraction:
    """Exact value of the six-term majorant for PSU_3(q)."""
    if q < 4:
        raise ValueError("q must be at least 4")
    prime_power(q)
    F = Fraction
    a = q * q - q + 1
    return (F(1, q * q - q)
            + F(8 * (q - 2), 3 * a)
            + F(q - 2, 3 * q * a)
            + F(q * q - q - 2, 6 * (q ** 3 + 1))
            + F(9, (q - 1) * a)
            + F(27 * (q - 2) * (q + 1), 6 * (q - 1) * a))


# --- verdicts --------------------------------------------------------------------

@dataclass
class BoundVerdict:
    group: str
    scope: str
    lower: int
    upper: Optional[int]
    sources: list
    computed: Optional[int] = None
    caveats: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        if self.computed is None:
            return self.upper is None or self.lower <= self.upper
        if self.computed < self.lower:
            return False
        return self.upper is None or self.computed <= self.upper


ALTERNATING_UPPER = 3  # e(A_n) <= 3 for n >= 5


def verdict(report, family_tag: Optional[tuple]) -> list[BoundVerdict]:
    """Check a computed exponent report against every applicable bound.

    ``report`` is an ExponentReport; ``family_tag`` the group's (family, n, q).
    """
    out = []
    e_G = report.e_G
    if family_tag:
        family, n, q = family_tag
        if family == "A" and n >= 5:
            out.append(BoundVerdict(report.group, "group", 1, ALTERNATING_UPPER,
                                    [("alternating", ALTERNATING_UPPER)], e_G))
        elif q is not None:
            lower, sources = 1, []
            fam = simple_family(family, n, q)
            if fam == "PSL":
                lower = psl_lower_bound(n, q)
                sources.append(("psl-lower", lower))
            elif fam == "PSU":
                lower = psu_lower_bound(n, q)
                sources.append(("psu-lower", lower))
            upper, caveats = None, []
            if fam is not None:
                try:
                    tb = table_upper_bound(fam, n, q)
                    upper, caveats = tb.bound, tb.caveats
                    sources.append((tb.source, tb.bound))
                except NoMatchingRow:
                    pass
            out.append(BoundVerdict(report.group, "group", lower, upper, sources, e_G, caveats))
    for r in report.classes:
        if r.semirational:
            ub = semirational_upper_bound(r.order)
            out.append(BoundVerdict(report.group, f"class {r.id}", 1, ub,
                                    semirational_bounds(r.order), r.e))
    return out
