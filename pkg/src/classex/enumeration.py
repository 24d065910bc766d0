"""Full enumeration of a group by breadth-first search on its Cayley graph.

Each BFS level is sorted by element code before indices are assigned, so
the element numbering depends only on the generating set.  Index 0 is the
identity.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .groups import GroupElement, GroupSpec
from .kernels import Kernel, code_bytes, make_kernel

CODE_VERSION = 1
DEFAULT_LIMIT = 1 << 24
DEFAULT_BYTE_BUDGET = 4 << 30


class EnumerationError(RuntimeError):
    pass


class LimitExceeded(EnumerationError):
    pass


@dataclass
class ElementTable:
    spec: GroupSpec
    kernel: Kernel
    rows: np.ndarray  # index -> element row
    codes: np.ndarray  # index -> code
    sorted_codes: np.ndarray
    sorted_index: np.ndarray

    @property
    def order(self) -> int:
        return len(self.codes)

    def __len__(self):
        return len(self.codes)

    def lookup(self, codes, strict: bool = True) -> np.ndarray:
        """Indices of the given codes; -1 for absent codes when not strict."""
        codes = np.asarray(codes, dtype=self.codes.dtype)
        pos = np.searchsorted(self.sorted_codes, codes)
        pos = np.minimum(pos, len(self.sorted_codes) - 1)
        found = self.sorted_codes[pos] == codes
        idx = self.sorted_index[pos].astype(np.int64)
        if strict:
            if not found.all():
                raise EnumerationError("product left the enumerated group")
            return idx
        return np.where(found, idx, -1)

    def index_rows(self, rows) -> np.ndarray:
        return self.lookup(self.kernel.encode(rows))

    def index_of(self, g: GroupElement) -> int:
        return int(self.index_rows(self.kernel.row(g)[None, :])[0])

    def element(self, i: int) -> GroupElement:
        return self.kernel.element(self.rows[i])

    def rmul_index(self, g: GroupElement, subset=None) -> np.ndarray:
        """Indices of ``x * g`` for x over ``subset`` (default: all of G)."""
        rows = self.rows if subset is None else self.rows[subset]
        return self.index_rows(self.kernel.rmul(rows, g))

    def lmul_index(self, g: GroupElement, subset=None) -> np.ndarray:
        rows = self.rows if subset is None else self.rows[subset]
        return self.index_rows(self.kernel.lmul(g, rows))

    def conj_index(self, s: GroupElement, subset=None) -> np.ndarray:
        """Indices of ``s^-1 x s``."""
        rows = self.rows if subset is None else self.rows[subset]
        return self.index_rows(self.kernel.rmul(self.kernel.lmul(s.inverse(), rows), s))

    def inverse_index(self) -> np.ndarray:
        inv = self.kernel.inverse(self.rows, self.order)
        return self.index_rows(inv)

    def element_order(self, i: int) -> int:
        return element_order(self, i)


def element_order(table: ElementTable, idx: int) -> int:
    """Multiplicative order of element ``idx``."""
    return table.element(idx).order()


def _expand(kernel: Kernel, frontier: np.ndarray, gens, threads: int) -> np.ndarray:
    jobs = [(frontier[s:s + (1 << 18)], g) for s in range(0, len(frontier), 1 << 18) for g in gens]
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda job: kernel.encode(kernel.rmul(*job)), jobs))
    else:
        parts = [kernel.encode(kernel.rmul(*job)) for job in jobs]
    return np.concatenate(parts)


def enumerate_group(
    spec: GroupSpec,
    limit: int = DEFAULT_LIMIT,
    threads: int = 1,
    byte_budget: int = DEFAULT_BYTE_BUDGET,
    cache_dir: Optional[str] = None,
) -> ElementTable:
    kernel = make_kernel(spec)
    if spec.claimed_order and spec.claimed_order > limit:
        raise LimitExceeded(f"{spec.name}: order {spec.claimed_order} exceeds limit {limit}")
    per = code_bytes(kernel) * 3
    if spec.claimed_order and spec.claimed_order * per > byte_budget:
        raise LimitExceeded(f"{spec.name}: needs about {spec.claimed_order * per} bytes, budget {byte_budget}")

    cache_dir = cache_dir or os.environ.get("CLASSEX_CACHE")
    cache_path = None
    if cache_dir:
        cache_path = Path(cache_dir) / f"table-{spec.fingerprint()}-v{CODE_VERSION}.npz"
        if cache_path.exists():
            return _load(spec, kernel, cache_path)

    gens = list(spec.generators)
    ident = kernel.encode(kernel.identity_row()[None, :])
    visited = ident.copy()
    frontier_codes = ident
    levels = [ident]
    total = 1
    while len(frontier_codes):
        frontier = kernel.decode(frontier_codes)
        cand = np.unique(_expand(kernel, frontier, gens, threads))
        pos = np.searchsorted(visited, cand)
        pos = np.minimum(pos, len(visited) - 1)
        new = cand[visited[pos] != cand]
        total += len(new)
        if total > limit:
            raise LimitExceeded(f"{spec.name}: more than {limit} elements")
        if total * per > byte_budget:
            raise LimitExceeded(f"{spec.name}: byte budget {byte_budget} exceeded")
        if len(new):
            levels.append(new)
            visited = np.concatenate([visited, new])
            visited.sort(kind="stable")
        frontier_codes = new

    codes = np.concatenate(levels)
    table = _finish(spec, kernel, codes, visited)
    if spec.claimed_order is not None and table.order != spec.claimed_order:
        raise EnumerationError(f"{spec.name}: enumerated {table.order} elements, expected {spec.claimed_order}")
    if cache_path is not None:
        cache_path.parent.mkdir(parents=True, exist_ok=True)
        np.savez(cache_path, codes=codes)
    return table


def _finish(spec, kernel, codes, sorted_codes=None) -> ElementTable:
    order = np.argsort(codes, kind="stable")
    if sorted_codes is None:
        sorted_codes = codes[order]
    return ElementTable(spec, kernel, kernel.decode(codes), codes, sorted_codes, order)


def _load(spec, kernel, path) -> ElementTable:
    with np.load(path) as data:
        codes = data["codes"]
    if codes.dtype != kernel.code_dtype:
        codes = codes.view(kernel.code_dtype).ravel()
    return _finish(spec, kernel, codes)


def closure_check(table: ElementTable) -> bool:
    """Every generator maps the table into itself."""
    for g in table.spec.generators:
        if (table.lookup(table.kernel.encode(table.kernel.rmul(table.rows, g)), strict=False) < 0).any():
            return False
    return True
