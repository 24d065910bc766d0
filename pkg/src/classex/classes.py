"""Conjugacy classes of an enumerated group and the reality predicates.

Classes are the orbits of conjugation by the generators, found as the
connected components of the graph ``x -> s^-1 x s``.  Class ids are sorted
by (element order, class size, smallest member index), so id 0 is always
the trivial class.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .enumeration import ElementTable


@dataclass
class ClassData:
    table: ElementTable
    class_of: np.ndarray
    reps: np.ndarray
    sizes: np.ndarray
    order_of_rep: np.ndarray
    inverse_of: np.ndarray
    _powers: dict = field(default_factory=dict, repr=False)

    @property
    def n_classes(self) -> int:
        return len(self.reps)

    def members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.class_of == c)

    def power_class(self, c: int, m: int) -> int:
        return power_class(self, c, m)


def conjugacy_classes(table: ElementTable) -> ClassData:
    n = table.order
    src = np.arange(n)
    edges = [table.conj_index(s) for s in table.spec.generators]
    rows = np.concatenate([src] * len(edges))
    cols = np.concatenate(edges)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    n_comp, labels = connected_components(graph, directed=True, connection="weak")

    sizes = np.bincount(labels, minlength=n_comp)
    mins = np.full(n_comp, n, dtype=np.int64)
    np.minimum.at(mins, labels, src)
    orders = np.array([table.element_order(int(i)) for i in mins], dtype=np.int64)
    perm = np.lexsort((mins, sizes, orders))
    relabel = np.empty(n_comp, dtype=np.int64)
    relabel[perm] = np.arange(n_comp)
    class_of = relabel[labels]
    reps = mins[perm]
    sizes = sizes[perm]
    orders = orders[perm]

    inverse_of = np.empty(n_comp, dtype=np.int64)
    for c, r in enumerate(reps):
        inverse_of[c] = class_of[table.index_of(table.element(int(r)).inverse())]
    return ClassData(table, class_of, reps, sizes, orders, inverse_of)


def power_class(cd: ClassData, c: int, m: int) -> int:
    """Class of ``rep(c)^m``; memoised on ``m`` modulo the element order."""
    m %= int(cd.order_of_rep[c])
    key = (c, m)
    hit = cd._powers.get(key)
    if hit is None:
        g = cd.table.element(int(cd.reps[c])) ** m
        hit = int(cd.class_of[cd.table.index_of(g)])
        cd._powers[key] = hit
    return hit


def coprime_residues(n: int) -> list[int]:
    return [m for m in range(1, n + 1) if math.gcd(m, n) == 1] if n > 1 else [1]


def is_real(cd: ClassData, c: int) -> bool:
    return int(cd.inverse_of[c]) == c


def is_rational(cd: ClassData, c: int) -> bool:
    n = int(cd.order_of_rep[c])
    return all(power_class(cd, c, m) == c for m in coprime_residues(n))


def is_semirational(cd: ClassData, c: int) -> bool:
    n = int(cd.order_of_rep[c])
    ok = {c, int(cd.inverse_of[c])}
    return all(power_class(cd, c, m) in ok for m in coprime_residues(n))


def partition_I1_I2(cd: ClassData, c: int) -> tuple[set, set]:
    """Residues ``m`` coprime to the order with ``g^m ~ g`` (I1) and with
    ``g^m ~ g^-1`` (I2).  For a real class both sets are all of I."""
    if not is_semirational(cd, c):
        raise ValueError(f"class {c} is not semirational")
    n = int(cd.order_of_rep[c])
    inv = int(cd.inverse_of[c])
    res = coprime_residues(n)
    if n == 1:
        return {1}, {1}
    I1 = {m for m in res if power_class(cd, c, m) == c}
    I2 = {m for m in res if power_class(cd, c, m) == inv}
    return I1, I2


def classes_csv(cd: ClassData) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "size", "order", "real", "rational", "semirational"])
    for c in range(cd.n_classes):
        w.writerow([c, int(cd.sizes[c]), int(cd.order_of_rep[c]),
                    is_real(cd, c), is_rational(cd, c), is_semirational(cd, c)])
    return buf.getvalue()
