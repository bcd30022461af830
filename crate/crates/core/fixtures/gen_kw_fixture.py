#!/usr/bin/env python3
"""Generates kw_fixture.json: the Kontsevich-Witten free energy F_K(q) up to a weight bound.

Intersection numbers <tau_{d_1} ... tau_{d_n}> come from the DVV recursion

  (2k+1)!! <tau_k tau_S> = sum_j (2k+2d_j-1)!!/(2d_j-1)!! <tau_{k+d_j-1} tau_{S-j}>
      + 1/2 sum_{r+s=k-2} (2r+1)!!(2s+1)!! (<tau_r tau_s tau_S> + sum_{I+J=S} <tau_r tau_I><tau_s tau_J>)
      + [k=0, S=(0,0)] + [k=1, S=()]/8,

whose last two terms are the constant parts of L_{-1} and L_0. With t_d = (2d-1)!! q_{2d+1},
a point tau_d contributes q_{2d+1}, and the monomial prod q_{2d+1}^{k_d} has coefficient
<...> prod ((2d-1)!!)^{k_d} / k_d!.

Usage: gen_kw_fixture.py [WEIGHT_BOUND] > kw_fixture.json
"""

import json
import sys
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial


def dfact(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def genus(ds):
    n = len(ds)
    num = sum(ds) - n + 3
    if num % 3:
        return None
    g = num // 3
    if g < 0 or 2 * g - 2 + n <= 0:
        return None
    return g


@lru_cache(maxsize=None)
def corr(ds):
    """<tau_{d_1} ... tau_{d_n}> for a sorted tuple ds."""
    if any(d < 0 for d in ds) or genus(ds) is None:
        return Fraction(0)
    k, rest = ds[-1], ds[:-1]
    total = Fraction(0)
    if k == 0 and rest == (0, 0):
        total += 1
    if k == 1 and rest == ():
        total += Fraction(1, 8)
    for j, dj in enumerate(rest):
        others = rest[:j] + rest[j + 1:]
        weight = Fraction(dfact(2 * k + 2 * dj - 1), dfact(2 * dj - 1))
        total += weight * corr(tuple(sorted(others + (k + dj - 1,))))
    for r in range(k - 1):
        s = k - 2 - r
        w = Fraction(dfact(2 * r + 1) * dfact(2 * s + 1), 2)
        inner = corr(tuple(sorted(rest + (r, s))))
        idx = range(len(rest))
        for size in range(len(rest) + 1):
            for left in combinations(idx, size):
                i_part = tuple(rest[i] for i in left)
                j_part = tuple(rest[i] for i in idx if i not in left)
                inner += corr(tuple(sorted(i_part + (r,)))) * corr(tuple(sorted(j_part + (s,))))
        total += w * inner
    return total / dfact(2 * k + 1)


def multisets(weight_left, min_d):
    """Sorted tuples of d's with sum(2d+1) <= weight_left, d >= min_d."""
    yield ()
    d = min_d
    while 2 * d + 1 <= weight_left:
        for tail in multisets(weight_left - (2 * d + 1), d):
            yield (d,) + tail
        d += 1


def self_check():
    for g in range(1, 5):
        assert corr((3 * g - 2,)) == Fraction(1, 24**g * factorial(g)), g
    assert corr((0, 0, 0)) == 1
    assert corr((1,)) == Fraction(1, 24)
    assert corr((2, 2, 2)) == Fraction(7, 240)
    assert corr((2, 3)) == Fraction(29, 5760)


def main():
    bound = int(sys.argv[1]) if len(sys.argv) > 1 else 21
    self_check()
    records = []
    for ds in multisets(bound, 0):
        if not ds:
            continue
        c = corr(ds)
        if c == 0:
            continue
        for d in set(ds):
            k = ds.count(d)
            c *= Fraction(dfact(2 * d - 1) ** k, factorial(k))
        records.append({
            "monomial": sorted(2 * d + 1 for d in ds),
            "coefficient": f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator),
        })
    records.sort(key=lambda r: (sum(r["monomial"]), r["monomial"]))
    out = {
        "oracle": "gen_kw_fixture.py: DVV recursion for intersection numbers, t_d = (2d-1)!! q_{2d+1}",
        "weight_bound": bound,
        "records": records,
    }
    lines = [json.dumps(r, separators=(",", ":")) for r in records]
    sys.stdout.write('{"oracle":%s,\n "weight_bound":%d,\n "records":[\n  ' % (json.dumps(out["oracle"]), bound))
    sys.stdout.write(",\n  ".join(lines))
    sys.stdout.write("\n]}\n")


if __name__ == "__main__":
    main()
