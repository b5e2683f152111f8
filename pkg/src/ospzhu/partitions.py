"""Integer partitions, Young-diagram cell data and the admissible families.

A partition is a plain tuple of positive ints in weakly decreasing order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from collections import Counter
from typing import Iterable, Sequence

from . import cache
from .errors import DoesNotFit, InvalidLabels, OutOfRange, WeightMismatch


def partition(parts: Iterable[int]) -> tuple:
    """Normalize to a trimmed tuple, checking monotonicity."""
    p = [int(x) for x in parts]
    while p and p[-1] == 0:
        p.pop()
    for a, b in zip(p, p[1:]):
        if a < b:
            raise ValueError(f"not weakly decreasing: {p}")
    if p and p[-1] < 0:
        raise ValueError(f"negative part in {p}")
    return tuple(p)


def weight(lam: Sequence[int]) -> int:
    return sum(lam)


def length(lam: Sequence[int]) -> int:
    return sum(1 for x in lam if x)


def padded(lam: Sequence[int], n: int) -> tuple:
    if len(lam) > n:
        raise DoesNotFit(f"{tuple(lam)} has more than {n} parts")
    return tuple(lam) + (0,) * (n - len(lam))


def conjugate(lam: Sequence[int]) -> tuple:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def n_stat(lam: Sequence[int]) -> int:
    """n(lambda) = sum (i-1) lambda_i."""
    return sum(i * x for i, x in enumerate(lam))


def z_lambda(lam: Sequence[int]) -> int:
    out = 1
    for part, mult in Counter(lam).items():
        out *= part ** mult * factorial(mult)
    return out


def dominance_leq(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """True iff mu <= lam in dominance order."""
    if sum(mu) != sum(lam):
        raise WeightMismatch(f"|{tuple(mu)}| != |{tuple(lam)}|")
    a = b = 0
    for i in range(max(len(mu), len(lam))):
        a += mu[i] if i < len(mu) else 0
        b += lam[i] if i < len(lam) else 0
        if a > b:
            return False
    return True


@dataclass(frozen=True)
class Cell:
    row: int
    col: int
    arm: int
    leg: int
    coarm: int
    coleg: int

    def as_tuple(self):
        return (self.arm, self.leg, self.coarm, self.coleg)


def cell_data(lam: Sequence[int]) -> list:
    """Arm, leg, arm colength and leg colength of every cell, row-major."""
    lam = partition(lam)
    conj = conjugate(lam)
    out = []
    for i, row in enumerate(lam):
        for j in range(row):
            out.append(Cell(i, j, row - j - 1, conj[j] - i - 1, j, i))
    return out


def cells(lam: Sequence[int]) -> set:
    return {(i, j) for i, row in enumerate(lam) for j in range(row)}


def is_admissible(lam: Sequence[int], n: int | None = None) -> bool:
    """(2,2)-admissibility lam_i - lam_{i+2} >= 2.

    With n given, the condition is imposed for i <= n - 2 on lam padded to n
    parts (the n-variable notion the t = -3 Jack polynomials need).  Without
    n, absent parts count as 0 and every i <= l(lam) is checked.
    """
    if n is None:
        p = list(lam) + [0, 0]
        return all(p[i] - p[i + 2] >= 2 for i in range(len(lam)))
    if len(lam) > n:
        return False
    p = list(padded(lam, n))
    return all(p[i] - p[i + 2] >= 2 for i in range(n - 2))


def complement(k: int, lam: Sequence[int], m: int) -> tuple:
    """[k - lam] = (k - lam_m, ..., k - lam_1) inside the m x k box."""
    lam = tuple(lam)
    if len(lam) > m or (lam and lam[0] > k) or k < 0:
        raise DoesNotFit(f"{lam} does not fit in a {m}x{k} box")
    p = padded(lam, m)
    return partition(k - x for x in reversed(p))


def shift(lam: Sequence[int], c: int, m: int) -> tuple:
    """Add c to every one of the m parts (multiplication by (z_1...z_m)^c)."""
    p = [x + c for x in padded(lam, m)]
    if p and min(p) < 0:
        raise DoesNotFit(f"shift {c} of {tuple(lam)} is negative")
    return partition(p)


@lru_cache(maxsize=None)
def partitions_of(total: int, max_len: int | None = None, max_part: int | None = None) -> tuple:
    """All partitions of ``total`` in reverse-lex order."""
    if max_part is None:
        max_part = total
    if max_len is None:
        max_len = total
    out = []

    def rec(rem, cap, prefix):
        if rem == 0:
            out.append(tuple(prefix))
            return
        if len(prefix) == max_len:
            return
        for p in range(min(rem, cap), 0, -1):
            prefix.append(p)
            rec(rem - p, p, prefix)
            prefix.pop()

    rec(total, max_part, [])
    return tuple(out)


@lru_cache(maxsize=None)
def dominated_by(lam: tuple, n: int) -> tuple:
    """Partitions mu <= lam with at most n parts, reverse-lex order."""
    lam = partition(lam)
    cap = lam[0] if lam else 0
    return tuple(
        mu for mu in partitions_of(sum(lam), n, cap) if dominance_leq(mu, lam)
    )


def dominated_cells(kappas: Iterable[Sequence[int]], n: int) -> tuple:
    """Cells present in every mu <= kappa (l(mu) <= n), over every kappa given."""
    common = None
    for kap in kappas:
        kap = partition(kap)
        if len(kap) > n:
            raise DoesNotFit(f"{kap} has more than {n} parts")
        for mu in dominated_by(kap, n):
            c = cells(mu)
            common = c if common is None else common & c
    if not common:
        return ()
    rows = Counter(i for i, _ in common)
    # the intersection of diagrams is a diagram; read row lengths
    return partition(rows[i] for i in range(max(rows) + 1))


# ---------------------------------------------------------------------------
# Admissible families
# ---------------------------------------------------------------------------

def _admp_even(m: int, n1: int, n2: int) -> tuple:
    n = m // 2
    parts = []
    for k in range(n - 1, -1, -1):
        parts += [n1 + 2 * k, n2 + 2 * k]
    return partition(parts)


def _admp_odd_formula(m: int, n1: int, n2: int) -> tuple:
    """Continue the even pattern from the last parts: (n2+2n, n1+2(n-1), n2+2(n-1), ..., n1, n2).

    Only used as a cross-check against the correlator derivation."""
    n = m // 2
    parts = [n2 + 2 * n]
    for k in range(n - 1, -1, -1):
        parts += [n1 + 2 * k, n2 + 2 * k]
    return partition(parts)


def admp(m: int, n1: int, n2: int) -> tuple:
    """The admissible partition labelled by (m; n1, n2).

    Even m uses the closed form.  Odd m is read off from the leading term of
    the b_0-inserted free-field correlator (kernel 1/(z_i-z_j) for n1 = n2,
    (z_i+z_j)/(z_i-z_j) for n1 = n2 + 1), then shifted by n2.
    """
    if m < 1:
        raise InvalidLabels(f"m must be >= 1, got {m}")
    if m % 2 == 0:
        if not (n2 <= n1 <= n2 + 2) or n2 < 0:
            raise InvalidLabels(f"need 0 <= n2 <= n1 <= n2+2, got ({n1},{n2})")
        return _admp_even(m, n1, n2)
    if n2 < 0 or n1 - n2 not in (0, 1):
        raise InvalidLabels(
            f"odd m={m}: only n1 = n2 or n1 = n2 + 1 are pinned by the oracle, got ({n1},{n2})"
        )
    base = _admp_odd_base(m, n1 - n2)
    return shift(base, n2, m)


def _admp_odd_base(m: int, delta: int) -> tuple:
    key = f"{m},{delta}"
    hit = cache.get("admp_odd", key)
    if hit is not None:
        return tuple(hit)
    from .correlators import leading_partition_of_odd_family

    lam = leading_partition_of_odd_family(m, delta)
    if not is_admissible(lam, m):
        raise InvalidLabels(f"derived odd admp({m}) = {lam} is not admissible")
    cache.put("admp_odd", key, list(lam))
    return lam


def uniqp_table(m: int) -> list:
    """[(w-order, partition, coefficient)] for P_{admp(m,1,0)}^{(-3)}(z+w)."""
    key = str(m)
    hit = cache.get("uniqp", key)
    if hit is not None:
        from fractions import Fraction
        return [(o, tuple(p), Fraction(c)) for o, p, c in hit]
    from .jack import translate_expand, MINUS3

    lam = admp(m, 1, 0)
    table = []
    for order, exp in translate_expand(lam, MINUS3, m):
        if len(exp.coeffs) != 1:
            raise InvalidLabels(
                f"order w^{order} of P_{lam}(z+w) has {len(exp.coeffs)} Jack terms"
            )
        (mu, c), = exp.coeffs.items()
        if not is_admissible(mu, m):
            raise InvalidLabels(f"non-admissible {mu} in the expansion of {lam}")
        table.append((order, mu, c))
    cache.put("uniqp", key, [[o, list(p), str(c)] for o, p, c in table])
    return table


def uniqp(m: int, i: int) -> tuple:
    """The admissible partition at order w^(floor(m/2) - i) in P_{admp(m,1,0)}(z+w)."""
    if m < 1:
        raise OutOfRange(f"m must be >= 1, got {m}")
    h = m // 2
    if not 0 <= i <= h:
        raise OutOfRange(f"i must lie in [0, {h}], got {i}")
    for order, mu, _ in uniqp_table(m):
        if order == h - i:
            return mu
    raise OutOfRange(f"no term at order w^{h - i} for m = {m}")


def to_json(lam) -> str:
    return json.dumps(list(lam))
