"""Admissible levels, Kac tables, Zhu-algebra images and the module list.

Everything is rational: only xi^2 = u/v is ever stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import NotAdmissible
from .exactalg import UPoly, fmt_q


@dataclass(frozen=True)
class AdmissiblePair:
    u: int
    v: int

    @property
    def k(self) -> Fraction:
        return Fraction(self.u - 3 * self.v, 2 * self.v)

    @property
    def xi2(self) -> Fraction:
        return Fraction(self.u, self.v)

    @property
    def odd(self) -> bool:
        return self.u % 2 == 1

    def to_json(self):
        return {"u": self.u, "v": self.v, "k": fmt_q(self.k), "xi2": fmt_q(self.xi2)}


def validate(u: int, v: int) -> AdmissiblePair:
    """Check the admissibility conditions, naming the first one violated."""
    if not isinstance(u, int) or not isinstance(v, int):
        raise NotAdmissible("u and v must be integers")
    if u < 2:
        raise NotAdmissible(f"u >= 2 fails (u = {u})")
    if v < 1:
        raise NotAdmissible(f"v >= 1 fails (v = {v})")
    if (u - v) % 2:
        raise NotAdmissible(f"u - v even fails (u - v = {u - v})")
    if gcd(u, (u - v) // 2) != 1:
        raise NotAdmissible("gcd(u,(u-v)/2) != 1")
    return AdmissiblePair(u, v)


def spectrum(pair: AdmissiblePair, i: int, j: int) -> tuple:
    """(lambda_ij, s_ij, q_ij)."""
    u, v = pair.u, pair.v
    lam = Fraction(i - 1, 2) - Fraction(1 + (-1) ** ((i + j) % 2), 4) - Fraction(u * j, 2 * v)
    s = Fraction(i, 2) - Fraction(u * j, 2 * v)
    q = Fraction((u * j - v * i) ** 2 - 4 * v * v, 8 * v * v)
    return lam, s, q


@dataclass
class KacTables:
    pair: AdmissiblePair
    ns: list
    r: list
    r_reduced: list  # one representative (the lexicographically smaller) per class
    values: dict = field(default_factory=dict)

    def entry_json(self, ij):
        lam, s, q = self.values[ij]
        return {"i": ij[0], "j": ij[1], "lambda": fmt_q(lam), "s": fmt_q(s), "q": fmt_q(q)}

    def to_json(self):
        out = self.pair.to_json()
        out["ns_table"] = [self.entry_json(ij) for ij in self.ns]
        out["r_table"] = [self.entry_json(ij) for ij in self.r]
        out["r_reduced"] = [self.entry_json(ij) for ij in self.r_reduced]
        return out


def kac_tables(pair: AdmissiblePair) -> KacTables:
    u, v = pair.u, pair.v
    full = [(i, j) for i in range(1, u) for j in range(1, v)]
    ns = [ij for ij in full if sum(ij) % 2 == 1]
    r = [ij for ij in full if sum(ij) % 2 == 0]
    red = sorted({min(ij, (u - ij[0], v - ij[1])) for ij in r})
    values = {ij: spectrum(pair, *ij) for ij in full}
    return KacTables(pair, ns, r, red, values)


@dataclass
class ZhuImage:
    sector: str
    e_power: int
    has_x_factor: bool
    acts_on: str  # "v" or "y0 v"
    polynomial: UPoly

    def to_json(self):
        return {
            "sector": self.sector,
            "e_power": self.e_power,
            "x_factor": self.has_x_factor,
            "acts_on": self.acts_on,
            "g": self.polynomial.to_json(),
        }


def zhu_image(pair: AdmissiblePair, sector: str) -> ZhuImage:
    """Monic image of the singular vector in the untwisted (ns) or twisted (r) Zhu algebra."""
    sector = sector.lower()
    tabs = kac_tables(pair)
    u = pair.u
    if sector == "ns":
        g = UPoly.from_roots([tabs.values[ij][1] for ij in tabs.ns], "Sigma")
        if pair.odd:
            return ZhuImage("ns", (u - 1) // 2, False, "v", g)
        return ZhuImage("ns", (u - 2) // 2, True, "v", g)
    if sector == "r":
        g = UPoly.from_roots([tabs.values[ij][2] for ij in tabs.r_reduced], "Q")
        # odd: e^{(u-1)/2} on v; even: e^{(u-2)/2} on y_0 v
        if pair.odd:
            return ZhuImage("r", (u - 1) // 2, False, "v", g)
        return ZhuImage("r", (u - 2) // 2, False, "y0 v", g)
    raise NotAdmissible(f"unknown sector {sector!r}")


def degree_bounds(pair: AdmissiblePair) -> dict:
    """Shape bounds and the slacks against the actual degrees (Q counts 2)."""
    tabs = kac_tables(pair)
    ns_bound = Fraction((pair.u - 1) * (pair.v - 1), 2)
    r_bound = Fraction((pair.u - 1) * (pair.v - 1) + 1, 2)
    return {
        "ns_bound": ns_bound,
        "ns_degree": len(tabs.ns),
        "ns_slack": ns_bound - len(tabs.ns),
        "r_bound": r_bound,
        "r_degree": 2 * len(tabs.r_reduced),
        "r_slack": r_bound - 2 * len(tabs.r_reduced),
    }


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleDescriptor:
    sector: str
    family: str  # finite | highest-weight | lowest-weight | dense
    params: tuple  # sorted (name, value) pairs
    label: tuple = ()
    exclusion: str = ""
    parity_reversal: bool = True

    def key(self):
        return (self.sector, self.family, self.params)

    def to_json(self):
        d = {
            "sector": self.sector,
            "family": self.family,
            "params": {k: (fmt_q(x) if isinstance(x, Fraction) else x) for k, x in self.params},
            "label": list(self.label),
            "parity_reversal": self.parity_reversal,
        }
        if self.exclusion:
            d["exclusion"] = self.exclusion
        return d

    def __str__(self):
        short = {"finite": "F", "highest-weight": "H", "lowest-weight": "L", "dense": "R"}[self.family]
        inner = ", ".join(f"{k}={fmt_q(x) if isinstance(x, Fraction) else x}" for k, x in self.params)
        return f"{self.sector.upper()} {short}({inner})"


_NS_DENSE_EXCL = "s^2 != (mu+1/2)^2 for all mu in [lambda] u [lambda+1]"
_R_DENSE_EXCL = "q != mu(mu+2) for all mu in [lambda]"


def classify(pair: AdmissiblePair) -> list:
    """Instantiate the simple-module list of both sectors."""
    tabs = kac_tables(pair)
    u = pair.u
    out = []
    for sector, parity in (("ns", 1), ("r", 0)):
        for i in range(1, u):
            if i % 2 == parity:
                lam = spectrum(pair, i, 0)[0]
                out.append(ModuleDescriptor(sector, "finite", (("lambda", lam),), (i, 0)))
        table = tabs.ns if sector == "ns" else tabs.r
        for ij in table:
            lam = tabs.values[ij][0]
            out.append(ModuleDescriptor(sector, "highest-weight", (("lambda", lam),), ij))
        for ij in table:
            lam = tabs.values[ij][0]
            out.append(ModuleDescriptor(sector, "lowest-weight", (("lambda", -lam),), ij))
        if sector == "ns":
            for ij in tabs.ns:
                s = tabs.values[ij][1]
                out.append(ModuleDescriptor("ns", "dense", (("class", "[lambda]"), ("s", s)), ij,
                                            _NS_DENSE_EXCL, False))
        else:
            for ij in tabs.r_reduced:
                q = tabs.values[ij][2]
                out.append(ModuleDescriptor("r", "dense", (("class", "[lambda]"), ("q", q)), ij,
                                            _R_DENSE_EXCL, True))
    return out
