#!/usr/bin/env python3
"""Write character-table fixtures for PSL_2(q), q odd, from the generic
table of SL_2(q) restricted to characters trivial on -1.

Irrational values on the unipotent classes are written as Gaussian periods:
with R the quadratic residues mod p,
    (1 + sqrt(p)) / 2  = 1 + sum_{r in R} z_p^r    (p = 1 mod 4)
    (-1 + sqrt(-p)) / 2 = sum_{r in R} z_p^r       (p = 3 mod 4)
For q = p^2 the square root is rational.

usage: make_psl2_tables.py OUTDIR q [q ...]
"""

import json
import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
from classex.gf import prime_power  # noqa: E402


def term(c, e, den=1):
    return [c, den, e]


def build(q):
    p, k = prime_power(q)
    if p == 2:
        raise SystemExit("odd q only")
    N, M = (q - 1) // 2, (q + 1) // 2  # orders of the split and nonsplit tori in PSL
    m = math.lcm(q - 1, q + 1, p)
    order = q * (q * q - 1) // 2
    ls = list(range(1, (q - 1) // 4 + 1))
    ms = list(range(1, (q + 1) // 4 + 1))

    def ord_a(l):
        return N // math.gcd(l, N)

    def ord_b(j):
        return M // math.gcd(j, M)

    names = ["1", "u", "u'"] + [f"a{l}" for l in ls] + [f"b{j}" for j in ms]
    sizes = [1, (q * q - 1) // 2, (q * q - 1) // 2]
    sizes += [q * (q + 1) // (2 if ord_a(l) == 2 else 1) for l in ls]
    sizes += [q * (q - 1) // (2 if ord_b(j) == 2 else 1) for j in ms]
    orders = [1, p, p] + [ord_a(l) for l in ls] + [ord_b(j) for j in ms]
    assert sum(sizes) == order

    squares = {(x * x) % p for x in range(1, p)}

    def power_image(ci, r):
        name = names[ci]
        if name == "1":
            return 0
        if name in ("u", "u'"):
            if r % p == 0:
                return 0
            if k % 2 == 0 or (r % p) in squares:
                return ci
            return 3 - ci  # swaps u and u'
        if name[0] == "a":
            t = (int(name[1:]) * r) % N
            t = min(t, N - t)
            return 0 if t == 0 else names.index(f"a{t}")
        t = (int(name[1:]) * r) % M
        t = min(t, M - t)
        return 0 if t == 0 else names.index(f"b{t}")

    primes = [r for r in range(2, order + 1) if order % r == 0 and all(r % s for s in range(2, int(r ** 0.5) + 1))]
    classes = [{"name": names[i], "size": sizes[i], "order": orders[i],
                "powermap": {str(r): power_image(i, r) for r in primes}} for i in range(len(names))]

    def z(e, c=1, den=1):
        return [term(c, e % m, den)]

    def periodic(mult, step, idx, n_):
        # c * (z^(idx*t) + z^(-idx*t)) with z of order n_, t = step
        e = (m // n_) * idx * step
        return [term(mult, e % m), term(mult, (-e) % m)]

    chars = [{"degree": 1, "values": [z(0)] * len(names)}]
    steinberg = [z(0, q), z(0, 0), z(0, 0)] + [z(0, 1)] * len(ls) + [z(0, -1)] * len(ms)
    chars.append({"degree": q, "values": steinberg})
    for i in range(2, (q - 3) // 2 + 1, 2):
        vals = [z(0, q + 1), z(0, 1), z(0, 1)]
        vals += [periodic(1, l, i, q - 1) for l in ls]
        vals += [z(0, 0)] * len(ms)
        chars.append({"degree": q + 1, "values": vals})
    for j in range(2, (q - 1) // 2 + 1, 2):
        vals = [z(0, q - 1), z(0, -1), z(0, -1)]
        vals += [z(0, 0)] * len(ls)
        vals += [periodic(-1, mm, j, q + 1) for mm in ms]
        chars.append({"degree": q - 1, "values": vals})

    zp = m // p
    qr = sorted(squares)
    qnr = sorted(set(range(1, p)) - squares)
    if q % 4 == 1:
        if k % 2 == 0:
            s = p ** (k // 2)  # sqrt(q)
            plus, minus = z(0, 1 + s, 2), z(0, 1 - s, 2)
        else:
            plus = z(0) + [term(1, zp * r) for r in qr]
            minus = [term(1, zp * r) for r in qnr] + z(0)
        for first, second in ((plus, minus), (minus, plus)):
            vals = [z(0, (q + 1) // 2), first, second]
            vals += [z(0, (-1) ** l) for l in ls]
            vals += [z(0, 0)] * len(ms)
            chars.append({"degree": (q + 1) // 2, "values": vals})
    else:
        if k % 2 == 0:
            raise SystemExit("q = 3 mod 4 with even k cannot occur")
        plus = [term(1, zp * r) for r in qr]
        minus = [term(1, zp * r) for r in qnr]
        for first, second in ((plus, minus), (minus, plus)):
            vals = [z(0, (q - 1) // 2), first, second]
            vals += [z(0, 0)] * len(ls)
            vals += [z(0, (-1) ** (mm + 1)) for mm in ms]
            chars.append({"degree": (q - 1) // 2, "values": vals})
    assert len(chars) == len(names), (len(chars), len(names))
    return {"group": f"PSL_2({q})", "order": order, "conductor": m, "classes": classes, "chars": chars}


def main(argv):
    out = Path(argv[1])
    for q in map(int, argv[2:]):
        doc = build(q)
        (out / f"psl2_{q}.json").write_text(json.dumps(doc, indent=1))
        print(f"wrote psl2_{q}.json: {len(doc['classes'])} classes")


if __name__ == "__main__":
    main(sys.argv)
