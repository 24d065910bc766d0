"""Class-algebra structure constants and the invariants built on them.

``T[C, D, E]`` counts pairs ``(x, y)`` in ``C x D`` with ``x y = rep(E)``.
For a fixed target ``E`` all pairs are found in one sweep over the group:
with ``x = g^-1`` and ``y = g rep(E)`` the pair is indexed by
``(class(g)^-1, class(g rep(E)))``.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .classes import ClassData, is_real, is_semirational
from .enumeration import ElementTable


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class ClassTensor:
    cd: ClassData
    T: np.ndarray  # T[C, D, E]

    @property
    def n(self) -> int:
        return self.T.shape[0]

    def sparse(self, c: int, d: int) -> list[tuple[int, int]]:
        row = self.T[c, d]
        return [(int(e), int(row[e])) for e in np.flatnonzero(row)]


def _slice(table: ElementTable, cd: ClassData, e: int, x: np.ndarray) -> np.ndarray:
    n = cd.n_classes
    z = cd.class_of[table.rmul_index(table.element(int(cd.reps[e])))]
    return np.bincount(x * n + z, minlength=n * n).reshape(n, n)


# rough peak bytes per group element while one slice is being computed
SLICE_BYTES_PER_ELEMENT = 96


def structure_constants(table: ElementTable, cd: ClassData, threads: int = 1,
                        byte_budget: int = 1 << 30) -> ClassTensor:
    """Slices are independent; concurrent ones are capped so their scratch
    arrays stay within ``byte_budget``."""
    n = cd.n_classes
    x = cd.inverse_of[cd.class_of].astype(np.int64)
    workers = max(1, min(threads, byte_budget // (SLICE_BYTES_PER_ELEMENT * table.order)))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            slices = list(pool.map(lambda e: _slice(table, cd, e, x), range(n)))
    else:
        slices = [_slice(table, cd, e, x) for e in range(n)]
    return ClassTensor(cd, np.stack(slices, axis=2).astype(np.int64))


def class_support_bfs(ct: ClassTensor, c: int) -> list[frozenset]:
    """``S_1 = {c}``, ``S_{k+1}`` = classes met by ``S_k * C``.

    The sequence is returned up to (not including) its first repeat, so the
    last set's successor is already in the list.
    """
    mask = ct.T[:, c, :] > 0
    seq = [frozenset([c])]
    seen = {seq[0]}
    while True:
        nxt = frozenset(np.flatnonzero(mask[sorted(seq[-1])].any(axis=0)).tolist())
        if nxt in seen:
            return seq
        seq.append(nxt)
        seen.add(nxt)


def _successor(ct: ClassTensor, c: int, s: frozenset) -> frozenset:
    mask = ct.T[:, c, :] > 0
    return frozenset(np.flatnonzero(mask[sorted(s)].any(axis=0)).tolist())


def gen_exponent(ct: ClassTensor, c: int) -> int:
    for k, s in enumerate(class_support_bfs(ct, c), start=1):
        if 0 in s:
            return k
    raise AssertionError("identity never reached")  # impossible: g^|g| = 1


def gen_exponent_group(ct: ClassTensor) -> int:
    return max(gen_exponent(ct, c) for c in range(ct.n))


def tuple_count(ct: ClassTensor, c: int, k: int) -> int:
    """Number of ``(x_1, ..., x_k)`` in ``C^k`` with product 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = ct.n
    A = ct.T[:, c, :].astype(object)
    v = np.zeros(n, dtype=object)
    v[c] = 1
    for _ in range(k - 1):
        v = v.dot(A)
    return int(v[0])


def covering_number(ct: ClassTensor, c: int, cumulative: bool = False) -> Optional[int]:
    """Least ``k`` with ``C^k = G``; None when no power of C is all of G.

    With ``cumulative`` the union ``C u C^2 u ... u C^k`` is compared
    instead.
    """
    everything = frozenset(range(ct.n))
    seq = class_support_bfs(ct, c)
    acc = frozenset()
    for k, s in enumerate(seq, start=1):
        acc = acc | s
        if (acc if cumulative else s) == everything:
            return k
    if cumulative:
        # the support sequence is eventually periodic; keep unioning one period
        s = seq[-1]
        for k in range(len(seq) + 1, 2 * len(seq) + 2):
            s = _successor(ct, c, s)
            acc = acc | s
            if acc == everything:
                return k
    return None


def covering_number_group(ct: ClassTensor, cumulative: bool = False) -> Optional[int]:
    vals = [covering_number(ct, c, cumulative) for c in range(1, ct.n)]
    if not vals or any(v is None for v in vals):
        return None
    return max(vals)


# --- independent oracles ------------------------------------------------------

def brute_force_exponent(table: ElementTable, cd: ClassData, c: int, kmax: Optional[int] = None,
                         budget: int = 10 ** 8) -> int:
    """Least ``k`` with ``1`` in the element set ``C^k``, built element by element.

    Works only on element index sets and right multiplication, without the
    class tensor.
    """
    members = np.flatnonzero(cd.class_of == c)
    elems = [table.element(int(i)) for i in members]
    kmax = kmax or int(cd.order_of_rep[c])
    current = np.zeros(table.order, dtype=bool)
    current[members] = True
    seen = set()
    work = 0
    for k in range(1, kmax + 1):
        if current[0]:
            return k
        key = current.tobytes()
        if key in seen:
            break
        seen.add(key)
        idx = np.flatnonzero(current)
        work += len(idx) * len(elems)
        if work > budget:
            raise BudgetExceeded(f"more than {budget} products")
        nxt = np.zeros(table.order, dtype=bool)
        for y in elems:
            nxt[table.rmul_index(y, idx)] = True
        current = nxt
    raise BudgetExceeded(f"identity not reached within k <= {kmax}")


def exhaustive_tuple_count(table: ElementTable, cd: ClassData, c: int, k: int,
                           budget: int = 10 ** 8) -> int:
    """Direct count of ``k``-tuples from C with product 1, for ``k <= 3``."""
    members = np.flatnonzero(cd.class_of == c)
    in_c = np.zeros(table.order, dtype=bool)
    in_c[members] = True
    if k == 1:
        return int(in_c[0])
    if len(members) ** (k - 1) > budget:
        raise BudgetExceeded("class too large for exhaustive count")
    inv = table.inverse_index()
    if k == 2:
        # x1 * x2 = 1  <=>  x2 = x1^-1
        return int(in_c[inv[members]].sum())
    if k == 3:
        total = 0
        for i in members:
            prod = table.lmul_index(table.element(int(i)), members)
            total += int(in_c[inv[prod]].sum())
        return total
    raise ValueError("exhaustive counts are implemented for k <= 3")


# --- reports ------------------------------------------------------------------

@dataclass
class ClassReport:
    id: int
    size: int
    order: int
    real: bool
    semirational: bool
    e: int
    cn: Optional[int]
    trace: list = field(default_factory=list)


@dataclass
class ExponentReport:
    group: str
    order: int
    classes: list
    e_G: int
    cn_G: Optional[int]
    verdicts: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=1, default=_plain)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "size", "order", "real", "semirational", "e", "cn"])
        for r in self.classes:
            w.writerow([r.id, r.size, r.order, r.real, r.semirational, r.e,
                        "" if r.cn is None else r.cn])
        return buf.getvalue()


def _plain(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(type(x))


def exponent_report(ct: ClassTensor) -> ExponentReport:
    cd = ct.cd
    rows = []
    for c in range(ct.n):
        trace = [sorted(s) for s in class_support_bfs(ct, c)]
        rows.append(ClassReport(
            c, int(cd.sizes[c]), int(cd.order_of_rep[c]), is_real(cd, c),
            is_semirational(cd, c), gen_exponent(ct, c),
            covering_number(ct, c) if c else None, trace))
    return ExponentReport(cd.table.spec.name, cd.table.order, rows,
                          max(r.e for r in rows), covering_number_group(ct))
