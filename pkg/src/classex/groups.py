"""Group elements, generating sets and the classical-group constructors.

Permutations compose left to right: ``(x * y)(i) = y(x(i))``.  Matrices act
on column vectors and multiply in the usual order.  Projective matrices are
stored in canonical form, the representative of the scalar coset whose
first nonzero entry (row-major) equals 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Optional, Sequence

from .gf import Field, field_new, gf, prime_power

FAMILIES = ("GL", "SL", "SU", "Sp", "PGL", "PSL", "PSU", "PSp")


class GroupError(ValueError):
    pass


class GroupElement:
    """Common interface; concrete kinds are the three subclasses below."""

    kind = ""

    def __mul__(self, other):
        raise NotImplementedError

    def inverse(self):
        raise NotImplementedError

    def identity(self):
        raise NotImplementedError

    def is_identity(self) -> bool:
        return self == self.identity()

    def __pow__(self, m: int):
        base = self if m >= 0 else self.inverse()
        m = abs(m)
        out = self.identity()
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def conjugate(self, x: "GroupElement") -> "GroupElement":
        """``x^-1 * self * x``."""
        return x.inverse() * self * x

    def order(self) -> int:
        g, m = self, 1
        while not g.is_identity():
            g = g * self
            m += 1
        return m


@dataclass(frozen=True)
class Permutation(GroupElement):
    images: tuple

    kind = "perm"

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise GroupError(f"{self.images} is not a permutation")

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other):
        _same_kind(self, other)
        if other.degree != self.degree:
            raise GroupError("degree mismatch")
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self):
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def identity(self):
        return Permutation(tuple(range(self.degree)))

    def __call__(self, i: int) -> int:
        return self.images[i]

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(self.degree):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()))

    def sign(self) -> int:
        return (-1) ** sum(len(c) - 1 for c in self.cycles())


@dataclass(frozen=True)
class Matrix(GroupElement):
    field: Field
    n: int
    entries: tuple

    kind = "mat"

    def __post_init__(self):
        if len(self.entries) != self.n * self.n:
            raise GroupError("entry count does not match dimension")

    @classmethod
    def from_rows(cls, F: Field, rows: Sequence[Sequence[int]]):
        n = len(rows)
        return cls(F, n, tuple(F.check(int(x)) for r in rows for x in r))

    @classmethod
    def scalar(cls, F: Field, n: int, a: int):
        return cls(F, n, tuple(a if i == j else 0 for i in range(n) for j in range(n)))

    def rows(self) -> list[list[int]]:
        n = self.n
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.n + j]

    def _product(self, other) -> tuple:
        _same_kind(self, other)
        if other.n != self.n or other.field != self.field:
            raise GroupError("dimension or field mismatch")
        F, n = self.field, self.n
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            for j in range(n):
                s = 0
                for l in range(n):
                    s = F.add(s, F.mul(a[i * n + l], b[l * n + j]))
                out.append(s)
        return tuple(out)

    def __mul__(self, other):
        return Matrix(self.field, self.n, self._product(other))

    def _inverse_entries(self) -> tuple:
        F, n = self.field, self.n
        m = [row + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.rows())]
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col]), None)
            if piv is None:
                raise GroupError("matrix is singular")
            m[col], m[piv] = m[piv], m[col]
            s = F.inv(m[col][col])
            m[col] = [F.mul(s, x) for x in m[col]]
            for r in range(n):
                if r != col and m[r][col]:
                    c = m[r][col]
                    m[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(m[r], m[col])]
        return tuple(x for row in m for x in row[n:])

    def inverse(self):
        return Matrix(self.field, self.n, self._inverse_entries())

    def identity(self):
        return Matrix.scalar(self.field, self.n, 1)

    def det(self) -> int:
        F, n = self.field, self.n
        m = self.rows()
        d = 1
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col]), None)
            if piv is None:
                return 0
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                d = F.neg(d)
            d = F.mul(d, m[col][col])
            s = F.inv(m[col][col])
            for r in range(col + 1, n):
                if m[r][col]:
                    c = F.mul(m[r][col], s)
                    m[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(m[r], m[col])]
        return d

    def transpose(self):
        n = self.n
        return type(self)(self.field, n, tuple(self.entries[j * n + i] for i in range(n) for j in range(n)))

    def scale(self, a: int):
        F = self.field
        return type(self)(F, self.n, tuple(F.mul(a, x) for x in self.entries))

    def frobenius(self):
        """Entrywise ``x -> x^q`` over GF(q^2)."""
        F = self.field
        return Matrix(F, self.n, tuple(F.frobenius_q(x) for x in self.entries))

    def linear(self) -> "Matrix":
        return Matrix(self.field, self.n, self.entries)

    def is_scalar(self) -> bool:
        n, e = self.n, self.entries
        return all(e[i * n + j] == (e[0] if i == j else 0) for i in range(n) for j in range(n))


def canonical_entries(F: Field, entries: Sequence[int]) -> tuple:
    lead = next(x for x in entries if x)
    s = F.inv(lead)
    return tuple(F.mul(s, x) for x in entries)


@dataclass(frozen=True)
class ProjectiveMatrix(Matrix):
    kind = "projmat"

    def __post_init__(self):
        super().__post_init__()
        canon = canonical_entries(self.field, self.entries)
        if canon != tuple(self.entries):
            object.__setattr__(self, "entries", canon)

    @classmethod
    def of(cls, m: Matrix) -> "ProjectiveMatrix":
        return cls(m.field, m.n, m.entries)

    def __mul__(self, other):
        return ProjectiveMatrix(self.field, self.n, self._product(other))

    def inverse(self):
        return ProjectiveMatrix(self.field, self.n, self._inverse_entries())

    def identity(self):
        return ProjectiveMatrix(self.field, self.n, Matrix.scalar(self.field, self.n, 1).entries)


def _same_kind(a, b):
    if type(a) is not type(b):
        raise GroupError(f"cannot multiply {a.kind} by {b.kind}")


@dataclass
class GroupSpec:
    name: str
    kind: str
    generators: list
    claimed_order: Optional[int] = None
    family: Optional[tuple] = None
    form: Optional[str] = None
    notes: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if not self.generators:
            raise GroupError("a group needs at least one generator")
        g0 = self.generators[0]
        for g in self.generators:
            if g.kind != self.kind:
                raise GroupError(f"generator kind {g.kind} differs from {self.kind}")
            if isinstance(g, Permutation):
                if g.degree != g0.degree:
                    raise GroupError("generators have different degrees")
            elif g.n != g0.n or g.field != g0.field:
                raise GroupError("generators differ in dimension or field")

    @property
    def degree(self) -> int:
        g = self.generators[0]
        return g.degree if isinstance(g, Permutation) else g.n

    @property
    def field(self) -> Optional[Field]:
        g = self.generators[0]
        return None if isinstance(g, Permutation) else g.field

    def identity(self) -> GroupElement:
        return self.generators[0].identity()

    def fingerprint(self) -> str:
        """Stable digest of the generating set, used as a cache key."""
        import hashlib
        payload = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()[:16]

    def to_json(self) -> dict:
        doc = {"kind": self.kind, "name": self.name, "claimed_order": self.claimed_order}
        if self.kind == "perm":
            doc["degree"] = self.degree
            doc["generators"] = [list(g.images) for g in self.generators]
        else:
            F = self.field
            doc.update(dim=self.degree, p=F.p, k=F.k)
            doc["generators"] = [g.rows() for g in self.generators]
        if self.family:
            doc["family"] = list(self.family)
        if self.form:
            doc["form"] = self.form
        return doc


# --- permutation groups ------------------------------------------------------

def make_alternating(n: int) -> GroupSpec:
    if n < 3:
        raise GroupError("alternating groups need n >= 3")
    three = Permutation.from_cycles(n, (0, 1, 2))
    if n % 2:
        long = Permutation.from_cycles(n, tuple(range(n)))
    else:
        long = Permutation.from_cycles(n, tuple(range(1, n)))
    gens = [three] if n == 3 else [three, long]
    return GroupSpec(f"A{n}", "perm", gens, math.factorial(n) // 2, ("A", n, None))


def make_symmetric(n: int) -> GroupSpec:
    if n < 2:
        raise GroupError("symmetric groups need n >= 2")
    swap = Permutation.from_cycles(n, (0, 1))
    gens = [swap] if n == 2 else [swap, Permutation.from_cycles(n, tuple(range(n)))]
    return GroupSpec(f"S{n}", "perm", gens, math.factorial(n), ("S", n, None))


def permutation_group(name: str, degree: int, cycle_gens, claimed_order=None) -> GroupSpec:
    gens = [Permutation.from_cycles(degree, *cycles) for cycles in cycle_gens]
    return GroupSpec(name, "perm", gens, claimed_order)


# --- order formulas ----------------------------------------------------------

def group_order_formula(family: str, n: int, q: int) -> int:
    prime_power(q)
    if family in ("GL", "SL", "PGL", "PSL"):
        gl = q ** (n * (n - 1) // 2)
        for i in range(1, n + 1):
            gl *= q ** i - 1
        if family == "GL":
            return gl
        sl = gl // (q - 1)
        return sl // math.gcd(n, q - 1) if family == "PSL" else sl
    if family in ("SU", "PSU"):
        su = q ** (n * (n - 1) // 2)
        for i in range(2, n + 1):
            su *= q ** i - (-1) ** i
        return su // math.gcd(n, q + 1) if family == "PSU" else su
    if family in ("Sp", "PSp"):
        if n % 2:
            raise GroupError("symplectic groups need even dimension")
        r = n // 2
        sp = q ** (r * r)
        for i in range(1, r + 1):
            sp *= q ** (2 * i) - 1
        return sp // math.gcd(2, q - 1) if family == "PSp" else sp
    raise GroupError(f"no order formula for family {family!r}")


# --- classical matrix groups -------------------------------------------------

def _mat(F, rows, projective=False):
    m = Matrix.from_rows(F, rows)
    return ProjectiveMatrix.of(m) if projective else m


def _identity_rows(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _diag(n, vals):
    rows = [[0] * n for _ in range(n)]
    for i, v in enumerate(vals):
        rows[i][i] = v
    return rows


def _elementary(n, i, j, a):
    rows = _identity_rows(n)
    rows[i][j] = a
    return rows


def _cycle_matrix(F, n, signed):
    """Permutation matrix ``e_i -> e_{i+1}``; with ``signed`` one entry is
    negated so the determinant is 1."""
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[(i + 1) % n][i] = 1
    if signed and n % 2 == 0:
        rows[0][n - 1] = F.neg(1)
    return rows


def _transposition_matrix(n, i=0, j=1):
    rows = _identity_rows(n)
    rows[i][i] = rows[j][j] = 0
    rows[i][j] = rows[j][i] = 1
    return rows


def _block(n, blocks):
    """Assemble a square matrix from an r x r grid of blocks."""
    out = [[0] * n for _ in range(n)]
    r = n // len(blocks)
    for bi, brow in enumerate(blocks):
        for bj, blk in enumerate(brow):
            if blk is None:
                continue
            for i in range(r):
                for j in range(r):
                    out[bi * r + i][bj * r + j] = blk[i][j]
    return out


def _linear_generators(F, n, special):
    w = F.generator
    gens = []
    if special:
        if F.q > 2:
            gens.append(_diag(n, [w, F.inv(w)] + [1] * (n - 2)))
        gens.append(_elementary(n, 0, 1, 1))
        gens.append(_cycle_matrix(F, n, signed=True))
    else:
        if F.q > 2:
            gens.append(_diag(n, [w] + [1] * (n - 1)))
        gens.append(_elementary(n, 0, 1, 1))
        gens.append(_cycle_matrix(F, n, signed=False))
        if n > 2:
            gens.append(_transposition_matrix(n))
    return gens


def symplectic_gram(F: Field, n: int) -> Matrix:
    r = n // 2
    minus = F.neg(1)
    return Matrix.from_rows(F, _block(n, [[None, _identity_rows(r)],
                                           [_diag(r, [minus] * r), None]]))


def _symplectic_generators(F, n):
    r = n // 2
    w = F.generator
    I = _identity_rows(r)
    gens = []
    if F.q > 2:
        d = [w] + [1] * (r - 1)
        gens.append(_block(n, [[_diag(r, d), None], [None, _diag(r, [F.inv(x) for x in d])]]))
    if r > 1:
        cyc = _cycle_matrix(F, r, signed=False)
        gens.append(_block(n, [[cyc, None], [None, cyc]]))
        u = Matrix.from_rows(F, _elementary(r, 0, 1, 1))
        u_inv_t = u.inverse().transpose().rows()
        gens.append(_block(n, [[u.rows(), None], [None, u_inv_t]]))
    gens.append(_block(n, [[I, _elementary(r, 0, 0, 1) if r > 1 else [[1]]], [None, I]]))
    for i in range(r):
        gens[-1][r + i][r + i] = 1
        gens[-1][i][i] = 1
    if r > 1:
        sym = _elementary(r, 0, 1, 1)
        sym[1][0] = 1
        gens.append(_block(n, [[I, sym], [None, I]]))
    gens.append(_block(n, [[None, I], [_diag(r, [F.neg(1)] * r), None]]))
    return gens


def _unitary_generators(F, n):
    """Generators of SU_n(q) for the identity Gram matrix over GF(q^2)."""
    q = F.sqrt_q()
    w = F.generator
    lam = F.pow(w, q - 1)  # generates the norm-one subgroup, order q+1
    # isotropic v = (1, c): 1 + c^(q+1) = 0
    c = next(x for x in range(1, F.q) if F.add(1, F.pow(x, q + 1)) == 0)
    # trace-zero scalar: a + a^q = 0, a != 0
    a = next(x for x in range(1, F.q) if F.add(x, F.frobenius_q(x)) == 0)
    gens = [_diag(n, [lam, F.inv(lam)] + [1] * (n - 2))]
    # two transvections along distinct isotropic lines, (1, c) and (1, c*lam)
    for cc in (c, F.mul(c, lam)):
        v = [1, cc] + [0] * (n - 2)
        trans = _identity_rows(n)
        for i in range(2):
            for j in range(2):
                trans[i][j] = F.add(trans[i][j], F.mul(a, F.mul(v[i], F.frobenius_q(v[j]))))
        gens.append(trans)
    # x -> t x on the line (1, c) and t^-1 x on (1, c*lam), t primitive in GF(q);
    # lies in SU and scales the root groups by t^2
    if q > 2:
        t = F.pow(w, q + 1)
        B = Matrix.from_rows(F, [[1, 1], [c, F.mul(c, lam)]])
        m = (B * Matrix.from_rows(F, _diag(2, [t, F.inv(t)])) * B.inverse()).rows()
        rows = _identity_rows(n)
        for i in range(2):
            rows[i][:2] = m[i]
        gens.append(rows)
    if n > 2:
        gens.append(_cycle_matrix(F, n, signed=True))
    if q == 2 and n > 2:
        # over GF(4) isotropic vectors are too sparse to mix coordinates;
        # (I + b*J) diag(b, 1, 1) for b in {w, w^2} on the first three
        # coordinates lies in SU (J the all-ones matrix)
        for b in (w, F.mul(w, w)):
            m = [[F.add(1 if i == j else 0, b) for j in range(3)] for i in range(3)]
            m = (Matrix.from_rows(F, m) * Matrix.from_rows(F, _diag(3, [b, 1, 1]))).rows()
            rows = _identity_rows(n)
            for i in range(3):
                rows[i][:3] = m[i]
            gens.append(rows)
    return gens


def make_classical(family: str, n: int, q: int) -> GroupSpec:
    if family not in FAMILIES:
        raise GroupError(f"unsupported family {family!r}")
    if n < 2:
        raise GroupError("classical groups need n >= 2")
    if n > 8:
        raise GroupError("matrix groups above dimension 8 are not supported")
    prime_power(q)
    projective = family.startswith("P")
    base = family[1:] if projective else family
    if base in ("GL", "SL"):
        F = gf(q)
        rows = _linear_generators(F, n, special=(base == "SL"))
        form = None
    elif base == "Sp":
        if n % 2:
            raise GroupError("symplectic groups need even dimension")
        F = gf(q)
        rows = _symplectic_generators(F, n)
        form = "symplectic"
    else:  # SU
        F = gf(q * q)
        rows = _unitary_generators(F, n)
        form = "unitary"
    gens = [_mat(F, r, projective) for r in rows]
    ident = gens[0].identity()
    gens = [g for g in dict.fromkeys(gens) if g != ident] or [ident]
    spec = GroupSpec(
        f"{family}_{n}({q})",
        "projmat" if projective else "mat",
        gens,
        group_order_formula(family, n, q),
        (family, n, q),
        form,
    )
    report = forms_check(spec)
    if not report.ok:
        raise GroupError(f"generator self-check failed: {report.failures}")
    return spec


@dataclass
class FormsReport:
    ok: bool
    failures: list


def preserves_form(m: Matrix, form: Optional[str], special: bool) -> list[str]:
    """Reasons ``m`` fails the family's fixed form / determinant condition."""
    F = m.field
    lin = m.linear()
    problems = []
    if special and lin.det() != 1:
        problems.append(f"det = {lin.det()}")
    if form == "symplectic":
        J = symplectic_gram(F, m.n)
        if lin.transpose() * J * lin != J:
            problems.append("does not preserve the symplectic form")
    elif form == "unitary":
        if lin.frobenius().transpose() * lin != lin.identity():
            problems.append("does not preserve the hermitian form")
    return problems


def forms_check(spec: GroupSpec) -> FormsReport:
    """Check every generator against the fixed form and determinant rule.

    Projective generators are canonical coset representatives, so only
    scalar-invariant conditions are checked for them: the form must be
    preserved up to a scalar and the determinant must be a scalar power.
    """
    if spec.kind == "perm" or spec.family is None:
        return FormsReport(True, [])
    family = spec.family[0]
    base = family[1:] if family.startswith("P") else family
    special = base in ("SL", "SU", "Sp")
    failures = []
    for i, g in enumerate(spec.generators):
        if isinstance(g, ProjectiveMatrix):
            probs = _projective_problems(g, spec.form, special)
        else:
            probs = preserves_form(g, spec.form, special)
        if probs:
            failures.append((i, probs))
    return FormsReport(not failures, failures)


def _projective_problems(g: ProjectiveMatrix, form, special) -> list[str]:
    F, n = g.field, g.n
    for lam in range(1, F.q):
        cand = Matrix(F, n, tuple(F.mul(lam, x) for x in g.entries))
        if not preserves_form(cand, form, special):
            return []
    return ["no scalar multiple satisfies the form/determinant conditions"]


# --- generator files ---------------------------------------------------------

def spec_from_json(doc: dict) -> GroupSpec:
    kind = doc["kind"]
    name = doc.get("name", "genfile")
    order = doc.get("claimed_order")
    if kind == "perm":
        degree = doc["degree"]
        gens = [Permutation(tuple(g)) for g in doc["generators"]]
        if any(g.degree != degree for g in gens):
            raise GroupError("generator degree differs from declared degree")
        fam = doc.get("family")
        return GroupSpec(name, "perm", gens, order, tuple(fam) if fam else None)
    if kind in ("mat", "projmat"):
        F = field_new(doc["p"], doc.get("k", 1))
        dim = doc["dim"]
        cls = ProjectiveMatrix if kind == "projmat" else Matrix
        gens = []
        for g in doc["generators"]:
            flat = [int(x) for row in g for x in row] if g and isinstance(g[0], list) else list(g)
            if len(flat) != dim * dim:
                raise GroupError("matrix generator has wrong size")
            gens.append(cls(F, dim, tuple(F.check(x) for x in flat)))
        fam = doc.get("family")
        return GroupSpec(name, kind, gens, order, tuple(fam) if fam else None, doc.get("form"))
    raise GroupError(f"unknown generator kind {kind!r}")


def load_genfile(path) -> GroupSpec:
    return spec_from_json(json.loads(Path(path).read_text()))


def save_genfile(spec: GroupSpec, path) -> None:
    Path(path).write_text(json.dumps(spec.to_json(), indent=1))
