"""Group selection and the enumerate -> classes -> tensor pipeline."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .classalg import ClassTensor, ExponentReport, exponent_report, structure_constants
from .classes import ClassData, conjugacy_classes
from .enumeration import DEFAULT_BYTE_BUDGET, DEFAULT_LIMIT, ElementTable, enumerate_group
from .groups import FAMILIES, GroupError, GroupSpec, load_genfile, make_alternating, make_classical, make_symmetric

DATA = Path(__file__).parent / "data"
BUILTIN_GENFILES = {"M11": "m11.json", "M12": "m12.json"}

_NAME = re.compile(r"^(?P<fam>[A-Za-z]+)_?(?P<n>\d+)(?:\((?P<q>\d+)\))?$")


def builtin(name: str) -> GroupSpec:
    """Parse names such as ``A5``, ``S4``, ``M11``, ``PSL_3(3)`` or ``GL3(2)``."""
    key = name.strip()
    if key.upper() in BUILTIN_GENFILES:
        return load_genfile(DATA / BUILTIN_GENFILES[key.upper()])
    m = _NAME.match(key)
    if not m:
        raise GroupError(f"unrecognised group name {name!r}")
    fam, n, q = m.group("fam"), int(m.group("n")), m.group("q")
    if q is None:
        if fam.upper() == "A":
            return make_alternating(n)
        if fam.upper() == "S":
            return make_symmetric(n)
        raise GroupError(f"unrecognised group name {name!r}")
    canon = {f.upper(): f for f in FAMILIES}
    if fam.upper() not in canon:
        raise GroupError(f"unknown family {fam!r}")
    return make_classical(canon[fam.upper()], n, int(q))


def select(family=None, n=None, q=None, alternating=None, symmetric=None, name=None, genfile=None) -> GroupSpec:
    chosen = [x is not None for x in (family, alternating, symmetric, name, genfile)]
    if sum(chosen) != 1:
        raise GroupError("give exactly one group selector")
    if family is not None:
        if n is None or q is None:
            raise GroupError("--family needs --n and --q")
        return make_classical(family, n, q)
    if alternating is not None:
        return make_alternating(alternating)
    if symmetric is not None:
        return make_symmetric(symmetric)
    if name is not None:
        return builtin(name)
    return load_genfile(genfile)


@dataclass
class Analysis:
    spec: GroupSpec
    table: ElementTable
    cd: ClassData
    ct: ClassTensor

    def report(self) -> ExponentReport:
        return exponent_report(self.ct)


_CACHE: dict = {}


def analyze(spec: GroupSpec, threads: int = 1, limit: int = DEFAULT_LIMIT,
            byte_budget: int = DEFAULT_BYTE_BUDGET, cache_dir: Optional[str] = None,
            with_tensor: bool = True) -> Analysis:
    """Run the pipeline once per generating set; results are memoised."""
    key = spec.fingerprint()
    hit = _CACHE.get(key)
    if hit is not None and (hit.ct is not None or not with_tensor):
        return hit
    if hit is not None:
        table, cd = hit.table, hit.cd
    else:
        table = enumerate_group(spec, limit=limit, threads=threads, byte_budget=byte_budget,
                                cache_dir=cache_dir)
        cd = conjugacy_classes(table)
    ct = structure_constants(table, cd, threads=threads) if with_tensor else None
    out = Analysis(spec, table, cd, ct)
    _CACHE[key] = out
    return out


def clear_cache() -> None:
    _CACHE.clear()
