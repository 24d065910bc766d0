"""Explicit elements and witness tuples.

A witness for a class C with e(C) = k is a list of conjugators
``x_1..x_k`` with ``g^{x_1} ... g^{x_k} = 1`` where ``g = rep(C)`` and
``g^x = x^-1 g x``.  Every witness is re-checked with the pure-Python
element arithmetic, independently of the batched kernels that found it.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .classalg import ClassTensor, class_support_bfs, gen_exponent
from .classes import ClassData
from .enumeration import ElementTable
from .gf import Field, gf
from .groups import GroupError, GroupSpec, Matrix, ProjectiveMatrix, preserves_form


# --- a unipotent triple in SL_2(q) with product -1 --------------------------------

@dataclass
class S33Triple:
    q: int
    g1: Matrix
    g2: Matrix
    g3: Matrix
    h: Matrix
    k: Matrix
    k_solved: bool = False  # True when k had to be found by search

    def checks(self) -> dict:
        F = self.g1.field
        one = self.g1.identity()
        minus = Matrix.scalar(F, 2, F.neg(1))
        out = {
            "product_is_minus_one": self.g1 * self.g2 * self.g3 == minus,
            "h_conjugates_g1_to_g2": self.g1.conjugate(self.h) == self.g2,
            "k_conjugates_g1_to_g3": self.g1.conjugate(self.k) == self.g3,
            "det_one": all(m.det() == 1 for m in (self.g1, self.g2, self.g3, self.h, self.k)),
        }
        uni = True
        for g in (self.g1, self.g2, self.g3):
            n = Matrix(F, 2, tuple(F.sub(a, b) for a, b in zip(g.entries, one.entries)))
            uni &= (n * n).is_scalar() and (n * n).entries[0] == 0 and g != one
        out["unipotent"] = uni
        return out

    @property
    def ok(self) -> bool:
        return all(self.checks().values())


def _from_ints(F: Field, rows) -> Matrix:
    return Matrix.from_rows(F, [[F.from_int(x) for x in r] for r in rows])


def _solve_conjugator(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Some ``k`` in SL_2 with ``k^-1 a k = b``, by exhaustive search."""
    F = a.field
    for e in itertools.product(range(F.q), repeat=4):
        m = Matrix(F, 2, e)
        if m.det() == 1 and a * m == m * b:
            return m
    return None


def s33_triple(q: int) -> S33Triple:
    F = gf(q)
    if F.p == 2:
        raise GroupError("the triple needs odd q (it uses 1/2)")
    half = F.inv(F.from_int(2))
    g1 = _from_ints(F, [[0, 1], [-1, 2]])
    g2 = _from_ints(F, [[2, 1], [-1, 0]])
    g3 = _from_ints(F, [[1, 0], [-4, 1]])
    h = _from_ints(F, [[0, 1], [-1, 0]])
    k = Matrix.from_rows(F, [[F.from_int(2), half], [0, half]])
    trip = S33Triple(q, g1, g2, g3, h, k)
    if g1.conjugate(k) != g3:
        solved = _solve_conjugator(g1, g3)
        if solved is not None:
            trip.k, trip.k_solved = solved, True
    return trip


# --- diagonal elements with large exponent -----------------------------------------

def psl_hard_element(n: int, q: int) -> ProjectiveMatrix:
    """Image in PSL_n(q) of ``diag(mu^(1-n), mu, ..., mu)``, mu primitive."""
    if n < 2 or q < 3:
        raise GroupError("need n >= 2 and q >= 3")
    F = gf(q)
    mu = F.generator
    diag = [F.pow(mu, 1 - n)] + [mu] * (n - 1)
    m = Matrix.from_rows(F, [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
    return ProjectiveMatrix.of(m)


def su_hard_element(n: int, q: int) -> ProjectiveMatrix:
    """Image in PSU_n(q) of ``diag(mu^(1-n), mu, ..., mu)`` with ``|mu| = q+1``."""
    if n < 2:
        raise GroupError("need n >= 2")
    F = gf(q * q)
    mu = F.pow(F.generator, q - 1)
    diag = [F.pow(mu, 1 - n)] + [mu] * (n - 1)
    m = Matrix.from_rows(F, [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
    if preserves_form(m, "unitary", special=True):
        raise GroupError("diagonal element is not in SU")  # pragma: no cover
    return ProjectiveMatrix.of(m)


def orthogonal_plus_gram(F: Field, n: int) -> Matrix:
    """Gram matrix [[0, I], [I, 0]] of the split form on GF(q)^(2n)."""
    N = 2 * n
    return Matrix.from_rows(F, [[1 if abs(i - j) == n else 0 for j in range(N)] for i in range(N)])


def so_plus_element(n: int, q: int, mu: Optional[int] = None) -> Matrix:
    """``diag(mu*I_n, mu^-1*I_n)`` on GF(q)^(2n), preserving the split form."""
    F = gf(q)
    mu = F.generator if mu is None else mu
    vals = [mu] * n + [F.inv(mu)] * n
    return Matrix.from_rows(F, [[vals[i] if i == j else 0 for j in range(2 * n)] for i in range(2 * n)])


def preserves_quadratic_split(m: Matrix) -> bool:
    """``m^T Q m = Q`` for the split Gram matrix.  For odd q this is the
    orthogonal group of the form; diagonal elements also fix the quadratic
    form in characteristic 2."""
    Q = orthogonal_plus_gram(m.field, m.n // 2)
    return m.transpose() * Q * m == Q


def so2_plus_spec(q: int) -> GroupSpec:
    """SO^+_2(q) = {diag(t, t^-1)}, cyclic of order q - 1."""
    return GroupSpec(f"SO+_2({q})", "mat", [so_plus_element(1, q)], q - 1)


# --- witness tuples -----------------------------------------------------------------

@dataclass
class WitnessTuple:
    class_id: int
    k: int
    conjugators: list  # element indices x_i
    conjugates: list  # element indices of g^{x_i}
    verified: bool

    def to_json(self, table: Optional[ElementTable] = None) -> dict:
        doc = {"class": self.class_id, "k": self.k, "conjugators": self.conjugators,
               "conjugates": self.conjugates, "verified": self.verified}
        if table is not None:
            doc["conjugator_rows"] = [table.rows[i].tolist() for i in self.conjugators]
        return doc


class WitnessBudgetExceeded(RuntimeError):
    pass


def _class_chain(ct: ClassTensor, c: int, k: int) -> list[int]:
    """Classes ``D_1 = c, ..., D_k = 1`` with ``D_j * C`` meeting ``D_{j+1}``."""
    seq = class_support_bfs(ct, c)[:k]
    chain = [0]
    for j in range(k - 2, -1, -1):
        nxt = chain[-1]
        d = next(d for d in sorted(seq[j]) if ct.T[d, c, nxt] > 0)
        chain.append(d)
    return chain[::-1]


def conjugator_tree(table: ElementTable, cd: ClassData, c: int, budget: int = 5_000_000):
    """BFS over conjugation by generators inside class c, rooted at rep(c).

    Returns ``parent`` and ``via`` dicts: member -> (previous member,
    generator index) with member = s^-1 previous s.
    """
    members = cd.members(c)
    if len(members) > budget:
        raise WitnessBudgetExceeded(f"class {c} has {len(members)} members")
    pos = {int(m): i for i, m in enumerate(members)}
    maps = [table.conj_index(s, members) for s in table.spec.generators]
    root = int(cd.reps[c])
    parent = {root: (None, None)}
    queue = deque([root])
    while queue:
        z = queue.popleft()
        i = pos[z]
        for gi, mp in enumerate(maps):
            w = int(mp[i])
            if w not in parent:
                parent[w] = (z, gi)
                queue.append(w)
    return parent


def _conjugator(table: ElementTable, parent, target: int):
    """Pure-Python element x with rep^x = target, by walking the tree."""
    gens = table.spec.generators
    path = []
    z = target
    while parent[z][0] is not None:
        z, gi = parent[z]
        path.append(gi)
    x = table.spec.identity()
    for gi in reversed(path):
        x = x * gens[gi]
    return x


def witness_tuple(table: ElementTable, cd: ClassData, ct: ClassTensor, c: int,
                  budget: int = 5_000_000) -> WitnessTuple:
    k = gen_exponent(ct, c)
    g = table.element(int(cd.reps[c]))
    if c == 0:
        return WitnessTuple(0, 1, [0], [0], g.is_identity())
    chain = _class_chain(ct, c, k)
    members = cd.members(c)
    inv_members = cd.members(int(cd.inverse_of[c]))
    inv_rows = table.rows[inv_members]
    # walk back from the identity: p_{j} = p_{j+1} * y_{j+1}^-1 with p_j in D_j
    prefix = 0
    ys = []
    for j in range(k - 1, 0, -1):
        p_el = table.element(prefix)
        cand = table.index_rows(table.kernel.lmul(p_el, inv_rows))
        hit = np.flatnonzero(cd.class_of[cand] == chain[j - 1])
        if not len(hit):
            raise AssertionError("class chain has no element-level realisation")  # pragma: no cover
        new_prefix = int(cand[hit[0]])
        # y = p_j^-1 p_{j+1}
        y = table.element(new_prefix).inverse() * p_el
        ys.append(table.index_of(y))
        prefix = new_prefix
    ys.append(prefix)
    ys.reverse()
    if not all(int(cd.class_of[y]) == c for y in ys):
        raise AssertionError("witness left the class")  # pragma: no cover
    parent = conjugator_tree(table, cd, c, budget)
    xs = [_conjugator(table, parent, y) for y in ys]
    prod = table.spec.identity()
    for x in xs:
        prod = prod * g.conjugate(x)
    return WitnessTuple(c, k, [table.index_of(x) for x in xs], ys, prod.is_identity())


def verify_witness(table: ElementTable, cd: ClassData, w: WitnessTuple) -> bool:
    """Recompute the product of conjugates with the element arithmetic."""
    g = table.element(int(cd.reps[w.class_id]))
    prod = table.spec.identity()
    for i, xi in enumerate(w.conjugators):
        x = table.element(xi)
        conj = g.conjugate(x)
        if table.index_of(conj) != w.conjugates[i]:
            return False
        prod = prod * conj
    return prod.is_identity() and len(w.conjugators) == w.k
