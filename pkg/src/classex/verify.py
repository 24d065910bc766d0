"""Verification suite: each check reproduces one claim by full computation.

Checks are registered under a tag; ``run(tags)`` returns one CheckResult
per check.  The CLI ``verify`` subcommand and the acceptance tests share
this registry.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from . import bounds
from .classalg import (brute_force_exponent, covering_number, covering_number_group,
                       exhaustive_tuple_count, gen_exponent, gen_exponent_group, tuple_count)
from .classes import is_real, is_semirational
from .charcrit import eval_criterion, load_fixture, match_columns
from .gf import prime_power
from .pipeline import analyze, builtin
from .witness import psl_hard_element, s33_triple, verify_witness, witness_tuple

# groups of order <= 10000 used for the oracle comparisons
SMALL = ["S3", "S4", "A5", "A6", "A7", "SL_2(3)", "SL_2(5)", "GL_2(3)", "GL_3(2)", "SL_3(2)",
         "PSL_2(5)", "PSL_2(7)", "PSL_2(8)", "PSL_2(9)", "PSL_2(11)", "PSL_2(13)", "PSL_3(3)",
         "PSU_3(3)", "Sp_4(2)", "M11"]
MEDIUM = ["A8", "GL_4(2)", "PSL_3(4)", "PSp_4(3)", "PSU_4(2)", "PSL_3(5)"]
FIXTURES = {"gl32": "GL_3(2)", "psl2_5": "PSL_2(5)", "psl2_7": "PSL_2(7)", "psl2_9": "PSL_2(9)",
            "psl2_11": "PSL_2(11)", "psl2_13": "PSL_2(13)"}


@dataclass
class CheckResult:
    tag: str
    label: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  [{self.tag}] {self.label}  {self.detail} ({self.seconds:.1f}s)"


REGISTRY: dict[str, list[tuple[str, Callable[[], tuple[bool, str]]]]] = {}


def check(tag: str, label: str):
    def deco(fn):
        REGISTRY.setdefault(tag, []).append((label, fn))
        return fn
    return deco


def prime_powers(lo: int, hi: int) -> list[int]:
    out = []
    for q in range(max(lo, 2), hi + 1):
        try:
            prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


def _e(name: str, **kw) -> int:
    return gen_exponent_group(analyze(builtin(name), **kw).ct)


def _equal(name: str, expected: int, order: int = None):
    a = analyze(builtin(name))
    e = gen_exponent_group(a.ct)
    ok = e == expected and (order is None or a.table.order == order)
    return ok, f"e({name}) = {e}, |G| = {a.table.order}"


# --- exact equalities ------------------------------------------------------------

@check("exact", "e(GL_3(2)) = 3")
def _gl32():
    return _equal("GL_3(2)", 3, 168)


@check("exact", "e(GL_4(2)) = e(A_8) = 3")
def _gl42():
    ok1, d1 = _equal("GL_4(2)", 3, 20160)
    ok2, d2 = _equal("A8", 3, 20160)
    return ok1 and ok2, f"{d1}; {d2}"


@check("exact", "e(PSL_3(3)) = 3")
def _psl33():
    return _equal("PSL_3(3)", 3, 5616)


@check("exact", "e(PSp_4(3)) = 3")
def _psp43():
    return _equal("PSp_4(3)", 3, 25920)


@check("exact", "e(PSU_4(2)) = 3")
def _psu42():
    return _equal("PSU_4(2)", 3, 25920)


# --- reality census ----------------------------------------------------------------

@check("reality", "every class of A_10 is real and e(A_10) = 2")
def _a10():
    a = analyze(builtin("A10"))
    real = all(is_real(a.cd, c) for c in range(a.cd.n_classes))
    e = gen_exponent_group(a.ct)
    return real and e == 2 and a.table.order == 1814400, f"{a.cd.n_classes} classes, all real: {real}, e = {e}"


@check("reality", "e(PSL_2(q)) = 2 for q = 5, 9, 13 and 3 for q = 7, 11")
def _psl2():
    want = {5: 2, 9: 2, 13: 2, 7: 3, 11: 3}
    got = {q: _e(f"PSL_2({q})") for q in want}
    return got == want, str(got)


# --- covering numbers ------------------------------------------------------------------

@check("covering", "cn(SL_3(2)) = 3 and cn(PSL_2(7)) = 3")
def _cn():
    a = covering_number_group(analyze(builtin("SL_3(2)")).ct)
    b = covering_number_group(analyze(builtin("PSL_2(7)")).ct)
    return a == 3 and b == 3, f"cn(SL_3(2)) = {a}, cn(PSL_2(7)) = {b}"


@check("covering", "e(C) <= cn(C) for every generating class")
def _cn_bound():
    bad = []
    n = 0
    for name in SMALL + MEDIUM:
        ct = analyze(builtin(name)).ct
        for c in range(1, ct.n):
            cn = covering_number(ct, c)
            if cn is not None:
                n += 1
                if gen_exponent(ct, c) > cn:
                    bad.append((name, c))
    return not bad, f"{n} generating classes checked, violations: {bad}"


# --- oracle equivalence -------------------------------------------------------------

@check("oracle", "brute-force exponent = class-algebra exponent (groups of order <= 10000)")
def _oracle_e():
    bad, n = [], 0
    for name in SMALL:
        a = analyze(builtin(name))
        for c in range(a.cd.n_classes):
            n += 1
            if brute_force_exponent(a.table, a.cd, c) != gen_exponent(a.ct, c):
                bad.append((name, c))
    return not bad, f"{n} classes, mismatches: {bad}"


@check("oracle", "tuple_count = exhaustive count for k <= 3 (groups of order <= 10000)")
def _oracle_t():
    bad, n = [], 0
    for name in SMALL:
        a = analyze(builtin(name))
        for c in range(a.cd.n_classes):
            for k in (1, 2, 3):
                n += 1
                if exhaustive_tuple_count(a.table, a.cd, c, k) != tuple_count(a.ct, c, k):
                    bad.append((name, c, k))
    return not bad, f"{n} (class, k) pairs, mismatches: {bad}"


# --- character criterion ---------------------------------------------------------------

@check("charcrit", "character-sum count = tuple_count on fixtures, k <= 5")
def _charcrit():
    bad, worst, n = [], 0.0, 0
    for fx, name in FIXTURES.items():
        tab = load_fixture(fx)
        a = analyze(builtin(name))
        m = match_columns(tab, a.cd)
        for sol in m.solutions:
            for col, c in sol.items():
                for k in range(1, 6):
                    r = eval_criterion(tab, col, k)
                    n += 1
                    worst = max(worst, r.rounding_error)
                    t = tuple_count(a.ct, c, k)
                    if r.predicted_count != t or r.rounding_error >= 0.01 or r.nonzero != (t > 0):
                        bad.append((fx, col, k))
    return not bad, f"{n} evaluations, max rounding error {worst:.2e}, mismatches: {bad}"


# --- bound machinery -----------------------------------------------------------------------

@check("jacobsthal", "j(p^a) = 2 for all prime powers <= 10^4 (p^a > 1)")
def _jac_pp():
    bad = [q for q in prime_powers(2, 10 ** 4) if bounds.jacobsthal(q) != 2]
    return not bad, f"exceptions: {bad[:10]}"


@check("jacobsthal", "j(6) = 4 and j(30) = 6")
def _jac_small():
    a, b = bounds.jacobsthal(6), bounds.jacobsthal(30)
    return (a, b) == (4, 6), f"j(6) = {a}, j(30) = {b}"


@check("semirational", "e(C) <= semirational bound for every semirational class")
def _semi():
    bad, n = [], 0
    for name in SMALL + MEDIUM:
        a = analyze(builtin(name))
        for c in range(a.cd.n_classes):
            if is_semirational(a.cd, c):
                n += 1
                if gen_exponent(a.ct, c) > bounds.semirational_upper_bound(int(a.cd.order_of_rep[c])):
                    bad.append((name, c))
    return not bad, f"{n} semirational classes, violations: {bad}"


@check("psl-lower", "psl_lower_bound(3,5) = 3 = e(PSL_3(5))")
def _psl35():
    lb = bounds.psl_lower_bound(3, 5)
    a = analyze(builtin("PSL_3(5)"))
    e = gen_exponent_group(a.ct)
    return lb == 3 and e == 3 and a.table.order == 372000, f"bound {lb}, e = {e}, |G| = {a.table.order}"


# --- witnesses ----------------------------------------------------------------------------

@check("s33", "unipotent triple with product -1 for odd q <= 49")
def _s33():
    qs = [q for q in prime_powers(3, 49) if q % 2]
    bad = [q for q in qs if not s33_triple(q).ok]
    return not bad, f"q in {qs[0]}..{qs[-1]} ({len(qs)} values), failures: {bad}"


@check("witness", "every witness tuple re-verifies by direct multiplication")
def _witness():
    bad, n = [], 0
    for name in ["GL_3(2)", "SL_2(3)", "A5", "PSL_2(7)", "PSL_3(3)", "PSU_3(3)", "M11"]:
        a = analyze(builtin(name))
        for c in range(a.cd.n_classes):
            w = witness_tuple(a.table, a.cd, a.ct, c)
            n += 1
            if not (w.verified and verify_witness(a.table, a.cd, w) and w.k == gen_exponent(a.ct, c)):
                bad.append((name, c))
    return not bad, f"{n} witnesses, failures: {bad}"


@check("witness", "PSL_3(5) diagonal element has e >= psl_lower_bound(3,5)")
def _hard():
    a = analyze(builtin("PSL_3(5)"))
    g = psl_hard_element(3, 5)
    c = int(a.cd.class_of[a.table.index_of(g)])
    e = gen_exponent(a.ct, c)
    return e >= bounds.psl_lower_bound(3, 5), f"class {c}, e = {e}"


# --- majorant -------------------------------------------------------------------------------

@check("majorant", "PSU_3 majorant < 1 for prime powers 8 <= q <= 64")
def _maj():
    vals = {q: bounds.u3q1_majorant(q) for q in prime_powers(8, 64)}
    bad = [q for q, v in vals.items() if v >= 1]
    return not bad, f"max {float(max(vals.values())):.4f} at q = {max(vals, key=vals.get)}, failures: {bad}"


def run(tags=None) -> list[CheckResult]:
    out = []
    for tag, checks in REGISTRY.items():
        if tags and tag not in tags:
            continue
        for label, fn in checks:
            t0 = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crashing check is a failing check
                ok, detail = False, f"error: {exc!r}"
            out.append(CheckResult(tag, label, ok, detail, time.perf_counter() - t0))
    return out
