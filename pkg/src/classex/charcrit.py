"""Character tables and the character-sum test for ``1 in C^k``.

Values are cyclotomic sums ``sum c_j z^e_j`` with ``z = exp(2 pi i / m)``
and rational ``c_j``; they are evaluated numerically with mpmath at 128
bits.  The tuple count

    #{(x_1..x_k) in C^k : x_1...x_k = 1} = |C|^k / |G| * sum_chi chi(g)^k / chi(1)^(k-2)

is an integer, so rounding recovers it exactly when the evaluation is
accurate, and the class-algebra count serves as the check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

import mpmath

from .classes import ClassData

PREC_BITS = 128
REL_EPS = 1e-9


class TableError(ValueError):
    pass


@dataclass
class CharacterTable:
    group: str
    order: int
    conductor: int
    sizes: list
    orders: list
    powermaps: list  # per class: {prime: class index}
    degrees: list
    values: list  # values[chi][class] = [(Fraction, exponent), ...]
    names: list = field(default_factory=list)
    _numeric: Optional[list] = field(default=None, repr=False)

    @property
    def n_classes(self) -> int:
        return len(self.sizes)

    def numeric(self) -> list:
        if self._numeric is None:
            with mpmath.workprec(PREC_BITS):
                m = self.conductor
                roots = [mpmath.expjpi(mpmath.mpf(2 * e) / m) for e in range(m)]
                self._numeric = [[mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * roots[e]
                                              for c, e in cell) for cell in row]
                                 for row in self.values]
        return self._numeric


def parse_table(doc) -> CharacterTable:
    if isinstance(doc, (str, Path)):
        doc = json.loads(Path(doc).read_text())
    try:
        classes = doc["classes"]
        chars = doc["chars"]
        order = int(doc["order"])
        m = int(doc.get("conductor", 1))
    except (KeyError, TypeError) as exc:
        raise TableError(f"malformed table: {exc}") from None
    if len(chars) != len(classes):
        raise TableError(f"{len(chars)} characters for {len(classes)} classes")
    values = []
    for ch in chars:
        if len(ch["values"]) != len(classes):
            raise TableError("character row has the wrong length")
        row = []
        for cell in ch["values"]:
            row.append([(Fraction(int(num), int(den)), int(e) % m) for num, den, e in cell])
        values.append(row)
    tab = CharacterTable(
        group=doc.get("group", "?"),
        order=order,
        conductor=m,
        sizes=[int(c["size"]) for c in classes],
        orders=[int(c["order"]) for c in classes],
        powermaps=[{int(p): int(v) for p, v in c.get("powermap", {}).items()} for c in classes],
        degrees=[int(ch["degree"]) for ch in chars],
        values=values,
        names=[c.get("name", str(i)) for i, c in enumerate(classes)],
    )
    _validate(tab)
    return tab


def _validate(tab: CharacterTable) -> None:
    if sum(tab.sizes) != tab.order:
        raise TableError("class sizes do not add up to the group order")
    if sum(d * d for d in tab.degrees) != tab.order:
        raise TableError(f"sum of squared degrees {sum(d * d for d in tab.degrees)} != {tab.order}")
    ident = [i for i, o in enumerate(tab.orders) if o == 1]
    if len(ident) != 1:
        raise TableError("exactly one class must have element order 1")
    num = tab.numeric()
    with mpmath.workprec(PREC_BITS):
        tol = 1e-6
        if any(abs(v - 1) > tol for v in num[0]):
            raise TableError("first character is not trivial")
        for chi, d in zip(num, tab.degrees):
            if abs(chi[ident[0]] - d) > tol:
                raise TableError("degree differs from the value at the identity")
        # first orthogonality: sum_C |C| |chi(C)|^2 = |G|
        for chi in num:
            s = mpmath.fsum(sz * abs(v) ** 2 for sz, v in zip(tab.sizes, chi))
            if abs(s - tab.order) > tol * tab.order:
                raise TableError("a character has norm different from 1")
        # second orthogonality: sum_chi |chi(g)|^2 = |C_G(g)|
        for c, sz in enumerate(tab.sizes):
            s = mpmath.fsum(abs(chi[c]) ** 2 for chi in num)
            cent = tab.order / sz
            if abs(s - cent) > tol * cent:
                raise TableError(f"column {c} fails the centraliser check")


# --- column matching --------------------------------------------------------------

@dataclass
class ColumnMatch:
    mapping: dict  # table column -> class id
    solutions: list  # every consistent bijection found (capped)

    @property
    def n_solutions(self) -> int:
        return len(self.solutions)

    @property
    def ambiguous(self) -> bool:
        return self.n_solutions > 1

    def column_of(self, c: int) -> int:
        inv = {v: k for k, v in self.mapping.items()}
        return inv[c]


def match_columns(tab: CharacterTable, cd: ClassData, cap: int = 64) -> ColumnMatch:
    """Bijections columns -> classes preserving order, size and power maps."""
    if tab.n_classes != cd.n_classes or tab.order != cd.table.order:
        raise TableError("table and group have different class counts or orders")
    n = cd.n_classes
    primes = sorted({p for pm in tab.powermaps for p in pm})

    def group_img(c, p):
        return cd.power_class(c, p)

    # colour refinement on both sides
    col_t = [(tab.orders[i], tab.sizes[i]) for i in range(n)]
    col_g = [(int(cd.order_of_rep[c]), int(cd.sizes[c])) for c in range(n)]
    for _ in range(n):
        new_t = [(col_t[i], tuple(col_t[tab.powermaps[i].get(p, i)] for p in primes)) for i in range(n)]
        new_g = [(col_g[c], tuple(col_g[group_img(c, p)] for p in primes)) for c in range(n)]
        keys = {k: j for j, k in enumerate(sorted(set(new_t) | set(new_g)))}
        new_t = [keys[k] for k in new_t]
        new_g = [keys[k] for k in new_g]
        if len(set(new_t)) == len(set(col_t)) and len(set(new_g)) == len(set(col_g)):
            col_t, col_g = new_t, new_g
            break
        col_t, col_g = new_t, new_g
    if sorted(col_t) != sorted(col_g):
        raise TableError("no column matching preserves orders, sizes and power maps")

    solutions = []
    assign: dict = {}
    used: set = set()

    def consistent(i, c):
        for p in primes:
            ti = tab.powermaps[i].get(p)
            if ti is None:
                continue
            gi = group_img(c, p)
            if ti in assign and assign[ti] != gi:
                return False
            if ti == i and gi != c:
                return False
        for j, d in assign.items():
            for p in primes:
                if tab.powermaps[j].get(p) == i and group_img(d, p) != c:
                    return False
        return True

    def search(i):
        if len(solutions) >= cap:
            return
        if i == n:
            solutions.append(dict(assign))
            return
        for c in range(n):
            if c in used or col_g[c] != col_t[i] or not consistent(i, c):
                continue
            assign[i] = c
            used.add(c)
            search(i + 1)
            del assign[i]
            used.discard(c)

    search(0)
    if not solutions:
        raise TableError("no column matching preserves orders, sizes and power maps")
    return ColumnMatch(solutions[0], solutions)


# --- the criterion ----------------------------------------------------------------

@dataclass
class CriterionResult:
    value: complex
    nonzero: Optional[bool]  # None when inconclusive
    predicted_count: int
    rounding_error: float
    status: str


def eval_criterion(tab: CharacterTable, column: int, k: int) -> CriterionResult:
    """``sum_chi chi(g)^k / chi(1)^(k-2)`` for g in the given column."""
    if k < 1:
        raise ValueError("k must be >= 1")
    num = tab.numeric()
    with mpmath.workprec(PREC_BITS):
        terms = [chi[column] ** k * mpmath.mpf(d) ** (2 - k) for chi, d in zip(num, tab.degrees)]
        total = mpmath.fsum(terms)
        scale = mpmath.fsum(abs(t) for t in terms)
        count = mpmath.mpf(tab.sizes[column]) ** k / tab.order * total
        rounded = int(mpmath.nint(count.real))
        err = float(abs(count - rounded))
        eps = REL_EPS * scale
        # noise floor of a 128-bit evaluation, far below eps
        floor = mpmath.mpf(2) ** (40 - PREC_BITS) * scale
        if abs(total) > eps:
            status, nonzero = "nonzero", True
        elif abs(total) <= floor:
            status, nonzero = "zero", False
        else:
            status, nonzero = "inconclusive", None
    return CriterionResult(complex(total), nonzero, rounded, err, status)


def load_fixture(name: str) -> CharacterTable:
    path = Path(__file__).parent / "data" / name
    if not path.suffix:
        path = path.with_suffix(".json")
    return parse_table(path)
