"""Free-field correlation functions of the bc and beta-gamma ghosts.

Everything here is exact.  Fermionic correlators are pfaffians of their
two-point functions; the module computes them three ways:

* :func:`bc_correlator`, the closed pfaffian formula for
  prod (c(z_i) z_i^m - b(z_i)) in each sector;
* :func:`wick_pfaffian`, the pfaffian of two-point contractions for any
  list of fields and zero-mode insertions (half-integer powers are pulled
  out of the rows symbolically);
* :func:`mode_correlator`, a brute-force Fock-space computation from the
  mode expansions, used as an independent oracle.

Sectors: "NS+" is <NS| . |NS>, "NS-" is <NS| b_0 . c_0 |NS>, "R" is the
Ramond vacuum with half-integer modes.  Mode conventions:
c(z) = sum c_k z^{-k}, b(z) = sum b_k z^{-k-1}, {b_j, c_k} = delta_{j+k,0}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Mapping, Sequence

from .errors import CountMismatch, InvalidInput, NonIntegerExponent, NotPolynomial, OddSize
from .exactalg import MPoly, RatFun, UPoly, as_q, fmt_q, rising
from .partitions import partition

SECTORS = ("NS+", "NS-", "R")

# Annihilation thresholds (a_c, a_b): c_k |vac> = 0 for k >= a_c, b_k for k >= a_b.
_THRESH = {
    "NS+": (Fraction(1), Fraction(0)),
    "NS'": (Fraction(0), Fraction(1)),  # c_0|NS>, the effective vacuum of NS-
    "R": (Fraction(1, 2), Fraction(1, 2)),
}


def _check_sector(sector: str) -> str:
    if sector not in SECTORS:
        raise InvalidInput(f"unknown sector {sector!r}; expected one of {SECTORS}")
    return sector


# ---------------------------------------------------------------------------
# Pfaffians
# ---------------------------------------------------------------------------

class SkewMatrix:
    """A 2n x 2n skew-symmetric matrix stored by its upper triangle."""

    def __init__(self, size: int, upper: Mapping | Callable):
        self.size = size
        if callable(upper):
            self.upper = {(i, j): upper(i, j) for i in range(size) for j in range(i + 1, size)}
        else:
            self.upper = dict(upper)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SkewMatrix":
        n = len(rows)
        return cls(n, {(i, j): rows[i][j] for i in range(n) for j in range(i + 1, n)})

    def __getitem__(self, ij):
        i, j = ij
        if i == j:
            return 0
        if i < j:
            return self.upper[(i, j)]
        return -self.upper[(j, i)]


def pfaffian(a: SkewMatrix | Sequence[Sequence], row: int = 0):
    """Pfaffian by recursive expansion along ``row`` (then along the first row).

    Works over any ring whose elements support +, - and *.  The 0 x 0
    pfaffian is 1.
    """
    if not isinstance(a, SkewMatrix):
        a = SkewMatrix.from_rows(a)
    if a.size % 2:
        raise OddSize(f"pfaffian of a {a.size}x{a.size} matrix")
    if a.size and not 0 <= row < a.size:
        raise InvalidInput(f"row {row} out of range")
    memo: dict = {}

    def pf(idx: tuple, r: int):
        if not idx:
            return 1
        key = idx if r == 0 else None
        if key is not None and key in memo:
            return memo[key]
        i = idx[r]
        acc = None
        for q, j in enumerate(idx):
            if q == r:
                continue
            entry = a[i, j]
            if not entry:
                continue
            rest = idx[:min(r, q)] + idx[min(r, q) + 1:max(r, q)] + idx[max(r, q) + 1:]
            sub = pf(rest, 0)
            if not sub:
                continue
            # (-1)^{i+j+theta(j-i)} with 1-based positions
            sign = (r + q + (1 if q > r else 0)) % 2
            term = entry * sub
            if sign:
                term = -term
            acc = term if acc is None else acc + term
        if acc is None:
            acc = 0
        if key is not None:
            memo[key] = acc
        return acc

    return pf(tuple(range(a.size)), row)


def perfect_matchings(idx: Sequence[int]):
    """Yield (sign, [(i, j), ...]) over perfect matchings of idx (i < j pairs)."""
    idx = list(idx)
    if not idx:
        yield 1, []
        return
    first = idx[0]
    for q in range(1, len(idx)):
        rest = idx[1:q] + idx[q + 1:]
        sgn = -1 if (q - 1) % 2 else 1
        for s, m in perfect_matchings(rest):
            yield sgn * s, [(first, idx[q])] + m


def vandermonde(points: Sequence[MPoly]) -> MPoly:
    out = None
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            f = points[i] - points[j]
            out = f if out is None else out * f
    if out is None:
        return MPoly.const(points[0].vars, 1) if points else None
    return out


def vandermonde_pfaffian(points: Sequence, numer: Callable, names: Sequence[str]) -> MPoly:
    """Delta(real points) * pf(A) as a polynomial, without any division.

    A_ij = numer(i, j) / (p_i - p_j) when both points are real (MPoly) and
    numer(i, j) when either is virtual (None, e.g. a zero-mode insertion).
    Each matching contributes sign * prod numer * prod_{unmatched real i<j}
    (p_i - p_j).
    """
    n = len(points)
    if n % 2:
        raise OddSize(f"{n} fields")
    real = [i for i in range(n) if points[i] is not None]
    diffs = {
        (i, j): points[i] - points[j] for a, i in enumerate(real) for j in real[a + 1:]
    }
    total = MPoly(names)
    for sign, match in perfect_matchings(range(n)):
        term = MPoly.const(names, sign)
        matched = set()
        for i, j in match:
            term = term * numer(i, j)
            if not term:
                break
            if (i, j) in diffs:
                matched.add((i, j))
        if not term:
            continue
        for pair, d in diffs.items():
            if pair not in matched:
                term = term * d
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Closed pfaffian formulas for prod (c(z_i) z_i^m - b(z_i))
# ---------------------------------------------------------------------------

def _zvars(n: int, prefix: str = "z"):
    return tuple(f"{prefix}{i + 1}" for i in range(n))


def bc_kernel(m: int, sector: str, names: Sequence[str]):
    """(i, j) -> kernel entry as a RatFun.  R entries are in zeta with z = zeta^2."""
    sector = _check_sector(sector)
    x = [MPoly.var(names, v) for v in names]

    def entry(i, j):
        if sector == "NS+":
            num = x[i] ** m + x[j] ** m
            den = x[i] - x[j]
        elif sector == "NS-":
            num = x[i] ** (m + 1) * x[j] ** -1 + x[i] ** -1 * x[j] ** (m + 1)
            den = x[i] - x[j]
        else:
            num = x[i] ** (2 * m + 1) * x[j] ** -1 + x[i] ** -1 * x[j] ** (2 * m + 1)
            den = x[i] ** 2 - x[j] ** 2
        return RatFun.frac(num, den)

    return entry


def bc_correlator(n: int, m: int, sector: str) -> RatFun:
    """<prod_{i=1}^{2n} (c(z_i) z_i^m - b(z_i))> in the given sector.

    Equal to (-1)^n pf(K) with the sector's kernel K.  Ramond results are
    written in variables zeta_i with z_i = zeta_i^2.
    """
    sector = _check_sector(sector)
    names = _zvars(2 * n, "zeta" if sector == "R" else "z")
    if n == 0:
        return RatFun(MPoly.const(names, 1))
    k = bc_kernel(m, sector, names)
    pf = pfaffian(SkewMatrix(2 * n, k))
    return pf * (-1) ** n


# ---------------------------------------------------------------------------
# Fields, contractions and the Wick pfaffian
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Field:
    """sum_k coef_k * X_k(p) * p^{pow_k} at one point p, X in {b, c}; or a bare mode.

    ``point`` indexes the caller's list of point values (radial order is the
    list order of the fields).  For a bare mode (e.g. b_0), point is None
    and ``mode`` holds (kind, index).
    """

    point: int | None
    parts: tuple = ()  # ((kind, power, coef), ...)
    mode: tuple | None = None

    @staticmethod
    def psi(point: int, power=0) -> "Field":
        """c(p) p^power - b(p)."""
        return Field(point, (("c", as_q(power), Fraction(1)), ("b", Fraction(0), Fraction(-1))))

    @staticmethod
    def c(point: int) -> "Field":
        return Field(point, (("c", Fraction(0), Fraction(1)),))

    @staticmethod
    def b(point: int) -> "Field":
        return Field(point, (("b", Fraction(0), Fraction(1)),))

    @staticmethod
    def zero_mode(kind: str, k=0) -> "Field":
        return Field(None, (), (kind, as_q(k)))


def _creates(kind: str, k: Fraction, vac: str) -> bool:
    a_c, a_b = _THRESH[vac]
    return k < (a_c if kind == "c" else a_b)


def _contract(left, right, vac: str):
    """Two-point function of two primitives, left radially outside right.

    Primitives are ("field", kind) or ("mode", kind, k).  Returns a list of
    (coef, exp_left, exp_right, has_pole) meaning coef * p_l^exp_l * p_r^exp_r
    / (p_l - p_r) if has_pole else without the pole.
    """
    a_c, a_b = _THRESH[vac]
    if left[0] == "field" and right[0] == "field":
        kl, kr = left[1], right[1]
        if kl == kr:
            return []
        if kl == "b":  # (p_r/p_l)^{a_b} / (p_l - p_r)
            return [(Fraction(1), -a_b, a_b, True)]
        return [(Fraction(1), a_b, -a_b, True)]
    if left[0] == "mode" and right[0] == "field":
        kind, k = left[1], left[2]
        if kind == right[1] or _creates(kind, k, vac):
            return []
        # right field's conjugate mode X_{-k} sits at p^{k} (c) or p^{k-1} (b)
        return [(Fraction(1), Fraction(0), k if right[1] == "c" else k - 1, False)]
    if left[0] == "field" and right[0] == "mode":
        kind, k = right[1], right[2]
        if kind == left[1] or not _creates(kind, k, vac):
            return []
        return [(Fraction(1), k if left[1] == "c" else k - 1, Fraction(0), False)]
    kl, jl = left[1], left[2]
    kr, jr = right[1], right[2]
    if kl == kr or jl + jr != 0 or _creates(kl, jl, vac) or not _creates(kr, jr, vac):
        return []
    return [(Fraction(1), Fraction(0), Fraction(0), False)]


def _primitives(f: Field):
    if f.point is None:
        return [(("mode", f.mode[0], f.mode[1]), Fraction(0), Fraction(1))]
    return [(("field", kind), power, coef) for kind, power, coef in f.parts]


@dataclass
class WickResult:
    """prod_i p_i^{row_exp_i} * pf, with pf a RatFun in the point variables."""

    row_exponents: dict
    pf: RatFun


def wick_pfaffian(fields: Sequence[Field], sector: str, points: Sequence[MPoly]) -> WickResult:
    """<fields> by Wick's theorem as a pfaffian of two-point functions.

    Fractional powers of each point are factored out of its rows so the
    remaining pfaffian is an exact rational function; they are returned as
    ``row_exponents`` (point index -> exponent).
    """
    sector = _check_sector(sector)
    fields = list(fields)
    vac = "NS+" if sector == "NS+" else ("R" if sector == "R" else "NS'")
    if len(fields) % 2:
        raise OddSize(f"{len(fields)} fermionic fields")
    names = points[0].vars if points else ()
    raw = {}
    frac_of_point: dict = {}
    for i, j in itertools.combinations(range(len(fields)), 2):
        terms = []
        for pl, powl, cl in _primitives(fields[i]):
            for pr, powr, cr in _primitives(fields[j]):
                for c, el, er, pole in _contract(pl, pr, vac):
                    terms.append((c * cl * cr, el + powl, er + powr, pole))
        raw[(i, j)] = terms
        for c, el, er, _ in terms:
            for idx, e in ((i, el), (j, er)):
                p = fields[idx].point
                if p is None:
                    continue
                fpart = e - (e.numerator // e.denominator)
                old = frac_of_point.setdefault(p, fpart)
                if old != fpart:
                    raise NonIntegerExponent(
                        f"inconsistent fractional powers of point {p}: {old} vs {fpart}"
                    )
    row_exp: dict = {}
    for f in fields:
        if f.point is not None:
            row_exp[f.point] = row_exp.get(f.point, 0) + frac_of_point.get(f.point, Fraction(0))

    def power(p: int, e: Fraction) -> RatFun:
        e = e - frac_of_point.get(p, Fraction(0))
        k = int(e)
        base = points[p]
        if k >= 0:
            return RatFun(base ** k)
        return RatFun.frac(MPoly.const(names, 1), *([base] * (-k)))

    def entry(i, j):
        total = RatFun(MPoly(names))
        for c, el, er, pole in raw[(i, j)]:
            t = RatFun(MPoly.const(names, c))
            if fields[i].point is not None:
                t = t * power(fields[i].point, el)
            if fields[j].point is not None:
                t = t * power(fields[j].point, er)
            if pole:
                t = t * RatFun.frac(MPoly.const(names, 1), points[fields[i].point] - points[fields[j].point])
            total = total + t
        return total

    pf = pfaffian(SkewMatrix(len(fields), entry)) if fields else 1
    if not isinstance(pf, RatFun):
        pf = RatFun(MPoly.const(names, pf))
    return WickResult(row_exp, pf)


# ---------------------------------------------------------------------------
# Fock-space mode oracle
# ---------------------------------------------------------------------------

def _mode_ops(prim, vac: str, state: tuple, budget: Fraction):
    """Yield (op, z-exponent, new_level_delta) for one primitive acting on state."""
    if prim[0] == "mode":
        yield (prim[1], prim[2]), Fraction(0)
        return
    kind = prim[1]
    a_c, a_b = _THRESH[vac]
    a = a_c if kind == "c" else a_b
    # creation modes k < a, energy -k <= budget
    k = a - 1
    while -k <= budget:
        yield (kind, k), (-k if kind == "c" else -k - 1)
        k -= 1
    # annihilation modes whose conjugate is present
    other = "b" if kind == "c" else "c"
    for op in state:
        if op[0] == other and -op[1] >= a:
            kk = -op[1]
            yield (kind, kk), (-kk if kind == "c" else -kk - 1)


def _apply_op(op, state: tuple, vac: str):
    """Apply a fermionic mode to a canonically ordered state; (sign, state) or None."""
    kind, k = op
    if _creates(kind, k, vac):
        if op in state:
            return None
        new = sorted(state + (op,))
        pos = new.index(op)
        return (-1) ** pos, tuple(new)
    conj = ("b" if kind == "c" else "c", -k)
    if conj not in state:
        return None
    pos = state.index(conj)
    return (-1) ** pos, state[:pos] + state[pos + 1:]


def _energy(op) -> Fraction:
    return -op[1]


def mode_correlator(fields: Sequence[Field], sector: str, npoints: int, level_cap: int) -> dict:
    """<fields> from the mode expansions, truncated.

    Returns {exponent tuple (Fractions, one per point): coefficient}.  Every
    intermediate state's energy is tracked and the sum of intermediate
    energies is capped at ``level_cap``; all terms whose radial weight
    sum_i i * exp_i lies within ``level_cap`` of the minimum possible are
    then exact.  NS- is realised literally as <NS| b_0 ... c_0 |NS>.
    """
    sector = _check_sector(sector)
    fields = list(fields)
    vac = "R" if sector == "R" else "NS+"
    if sector == "NS-":
        fields = [Field.zero_mode("b", 0)] + fields + [Field.zero_mode("c", 0)]
    cap = Fraction(level_cap)
    zero = (Fraction(0),) * npoints
    # state key: (ops, exps) -> coef; also track cumulative level
    states = {((), zero, Fraction(0)): Fraction(1)}
    for f in reversed(fields):
        new: dict = {}
        for (ops, exps, used), coef in states.items():
            energy = sum((_energy(o) for o in ops), Fraction(0))
            for prim, power, pc in _primitives(f):
                for op, zexp in _mode_ops(prim, vac, ops, cap - used - energy):
                    res = _apply_op(op, ops, vac)
                    if res is None:
                        continue
                    sign, nops = res
                    e_new = sum((_energy(o) for o in nops), Fraction(0))
                    nused = used + e_new
                    if nused > cap:
                        continue
                    if f.point is not None:
                        ex = list(exps)
                        ex[f.point] += zexp + power
                        nexps = tuple(ex)
                    else:
                        nexps = exps
                    key = (nops, nexps, nused)
                    v = new.get(key, 0) + sign * coef * pc
                    if v:
                        new[key] = v
                    else:
                        new.pop(key, None)
        states = new
    out: dict = {}
    for (ops, exps, _), coef in states.items():
        if ops:
            continue
        out[exps] = out.get(exps, 0) + coef
    return {e: c for e, c in out.items() if c}


def _base_weight(fields: Sequence[Field]) -> Fraction:
    """Lower bound on the radial weight sum_i (i+1) * exp_i of any term."""
    total = Fraction(0)
    for f in fields:
        if f.point is None:
            continue
        total += (f.point + 1) * min(p - (1 if kind == "b" else 0) for kind, p, _ in f.parts)
    return total


def oracle_agrees(fields: Sequence[Field], sector: str, value: RatFun, margin: int = 3,
                  exponent_scale: int = 1, max_cap: int = 40) -> bool:
    """Compare a rational-function correlator with the truncated mode series.

    Points are the variables of ``value`` in radial order (first outermost).
    ``exponent_scale`` = 2 when value is written in zeta with z = zeta^2.
    The level cap is raised until the series has at least ``margin`` orders
    beyond its leading weight; the check den * series - num = O(weight >
    bound) is then exact up to the truncation order.
    """
    names = value.vars
    npts = len(names)
    base = _base_weight(fields)
    for cap in range(margin, max_cap + 1):
        series = mode_correlator(fields, sector, npts, cap)
        bound = base + cap
        kept = {e: c for e, c in series.items() if _radial_weight(e) <= bound}
        if kept and bound - min(_radial_weight(e) for e in kept) >= margin:
            break
    else:
        raise NotPolynomial(f"mode series stayed empty up to level {max_cap}")
    terms = {}
    for e, c in kept.items():
        ie = []
        for x in e:
            y = x * exponent_scale
            if y.denominator != 1:
                raise NonIntegerExponent(f"exponent {x} in the mode series")
            ie.append(int(y))
        terms[tuple(ie)] = c
    s = MPoly(names, terms)
    den = value.denominator

    def wt(e):
        return Fraction(_radial_weight(e), exponent_scale)

    dmin = min(wt(e) for e in den.terms)
    diff = den * s - value.numerator
    return all(wt(e) > dmin + bound for e in diff.terms)


def _radial_weight(e) -> Fraction:
    return sum(((i + 1) * x for i, x in enumerate(e)), Fraction(0))


# ---------------------------------------------------------------------------
# beta-gamma zero modes
# ---------------------------------------------------------------------------

def bg_factor(kind: str, n: int, betas: int, q=None):
    """<gamma_1^n beta(z_1)...beta(z_n)> = n!, exponent 0;
    <gamma_0^n beta(z_1)...>^q = (q)_n prod z_i^{-1}, exponent -1.

    Returns (scalar, per-variable exponent).  With q None the scalar is a
    UPoly in q.
    """
    if betas != n:
        raise CountMismatch(f"{n} gamma insertions against {betas} beta fields")
    if kind == "gamma1":
        return Fraction(factorial(n)), 0
    if kind == "gamma0":
        if q is None:
            return rising(UPoly.x("q"), n), -1
        return rising(as_q(q), n), -1
    raise InvalidInput(f"unknown insertion {kind!r}")


# ---------------------------------------------------------------------------
# Dressed correlators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorrelatorSpec:
    """One of the insertion patterns of the ghost correlator identities.

    fields: number of (beta c - b)(z_i + w) factors; gamma: ("gamma0" |
    "gamma1", count); b0 / c0 / cw: zero-mode insertions (b_0 and c_0 sit
    leftmost, c(w) rightmost); shift: whether the fields sit at z_i + w.
    """

    sector: str
    fields: int
    gamma: tuple
    b0: bool = False
    c0: bool = False
    cw: bool = False
    shift: bool = False
    q: object = None

    def pattern(self) -> str:
        n = self.fields
        g, k = self.gamma
        s, b0, c0, cw = self.sector, self.b0, self.c0, self.cw
        table = {
            ("NS+", "gamma1", False, False, False, 0): "gamma1-even",
            ("NS+", "gamma1", True, False, False, 1): "gamma1-odd",
            ("NS+", "gamma0", False, False, False, 0): "gamma0-even",
            ("NS-", "gamma0", False, False, False, 0): "gamma0-even",
            ("NS+", "gamma0", True, False, False, 1): "gamma0-odd-b0",
            ("NS-", "gamma0", False, True, False, 1): "gamma0-odd-c0",
            ("R", "gamma0", False, False, False, 0): "ramond-even",
            ("R", "gamma0", False, False, True, 1): "ramond-odd",
        }
        key = (s, g, b0, c0, cw, n % 2)
        if key not in table:
            raise InvalidInput(f"unsupported insertion pattern {self}")
        name = table[key]
        expected = {
            "gamma1-even": n // 2, "gamma1-odd": n // 2, "gamma0-even": n // 2,
            "gamma0-odd-b0": n // 2 + 1, "gamma0-odd-c0": n // 2,
            "ramond-even": n // 2, "ramond-odd": n // 2,
        }[name]
        if k != expected:
            raise CountMismatch(f"pattern {name} with {n} fields needs {expected} gammas, got {k}")
        if name.startswith("gamma1") and self.shift:
            raise InvalidInput("the gamma_1 patterns are unshifted")
        if name == "ramond-odd" and not self.shift:
            raise InvalidInput("the c(w) pattern needs the shift variable w")
        return name

    def z_power(self) -> int:
        """Exponent d of the prod z_i^d dressing."""
        n = self.fields
        return {
            "gamma1-even": -n + 2, "gamma1-odd": -n + 1, "gamma0-even": -n + 1,
            "gamma0-odd-b0": -n, "gamma0-odd-c0": -n, "ramond-even": -n + 2,
            "ramond-odd": -n + 2,
        }[self.pattern()]


@dataclass
class DressedCorrelator:
    """prod z^d Delta(z) <...> divided by prod (z_i + w)^zw_power * w^w_power.

    ``by_w`` maps a power of w to a symmetric polynomial in y_i = 1/z_i; the
    whole object is scalar * sum_k w^k by_w[k](y).
    """

    spec: CorrelatorSpec
    scalar: object
    zw_power: Fraction
    w_power: Fraction
    by_w: dict

    def to_json(self):
        sc = self.scalar.to_json() if isinstance(self.scalar, UPoly) else fmt_q(self.scalar)
        return {
            "sector": self.spec.sector,
            "fields": self.spec.fields,
            "variables": "inverse",
            "scalar": sc,
            "prefactor": {"prod_z_plus_w": fmt_q(self.zw_power), "w": fmt_q(self.w_power)},
            "terms": [{"w_power": k, "poly": p.to_json()} for k, p in sorted(self.by_w.items())],
        }


def dressed_correlator(spec: CorrelatorSpec) -> DressedCorrelator:
    """The left-hand side of the ghost correlator identities, from scratch.

    The beta-gamma part is evaluated by :func:`bg_factor` (only summands with
    matching beta count survive, and each surviving beta(x) becomes x^e);
    the bc part by :func:`wick_pfaffian`; then the Vandermonde and the
    monomial dressing are applied and the non-polynomial prefactor cleared.
    """
    from .jack import SymPoly

    name = spec.pattern()
    n = spec.fields
    gkind, gcount = spec.gamma
    zn = _zvars(n)
    names = zn + (("w",) if spec.shift else ())
    z = [MPoly.var(names, v) for v in zn]
    w = MPoly.var(names, "w") if spec.shift else None
    x = [zi + w for zi in z] if spec.shift else list(z)
    points = list(x) + ([w] if spec.cw else [])

    # bc charge balance fixes how many c's (hence betas) appear
    n_c = (n + int(spec.b0) - int(spec.c0) + int(spec.cw)) // 2 - int(spec.cw)
    scalar, e = bg_factor(gkind, gcount, n_c, spec.q)

    fl = []
    if spec.b0:
        fl.append(Field.zero_mode("b", 0))
    if spec.c0:
        fl.append(Field.zero_mode("c", 0))
    fl += [Field.psi(i, e) for i in range(n)]
    if spec.cw:
        fl.append(Field.c(n))
    wr = wick_pfaffian(fl, spec.sector, points)

    # prefactor cleared from the right-hand side
    zw = Fraction(0)
    if gkind == "gamma0":
        zw = Fraction(-1, 2) if spec.sector == "R" else Fraction(-1)
    wpow = Fraction(1, 2) if spec.cw else Fraction(0)
    leftovers = [wr.row_exponents.get(p, Fraction(0)) - zw for p in range(n)]
    if spec.cw:
        leftovers.append(wr.row_exponents.get(n, Fraction(0)) - wpow)
    for p, k in enumerate(leftovers):
        if k.denominator != 1:
            raise NonIntegerExponent(f"row exponent {k} left at point {p}")
    val = wr.pf
    # integer leftovers of the row factors after dividing by the prefactor
    for p, k in enumerate(leftovers):
        val = _times_power(val, points[p], int(k), names)
    delta = vandermonde(z) if n > 1 else MPoly.const(names, 1)
    val = val.mul_factors([delta])
    d = spec.z_power()
    val = RatFun(val.num.shift(tuple([d] * n + ([0] if spec.shift else []))), val.factors)
    if not val.is_polynomial():
        raise NotPolynomial(f"{name}: leftover denominator {val.denominator}")
    poly = val.num
    by_w: dict = {}
    for ex, c in poly.terms.items():
        zex = ex[:n]
        wex = ex[n] if spec.shift else 0
        if any(v > 0 for v in zex) or wex < 0:
            raise NotPolynomial(f"{name}: term z^{zex} w^{wex} is not a polynomial in 1/z, w")
        by_w.setdefault(wex, {})[tuple(-v for v in zex)] = c
    out = {}
    for k, terms in by_w.items():
        out[k] = SymPoly.from_mpoly(MPoly(_zvars(n, "y"), terms))
    return DressedCorrelator(spec, scalar, zw, wpow, out)


def _times_power(val: RatFun, base: MPoly, k: int, names) -> RatFun:
    if k > 0:
        return val.mul_factors([base] * k)
    if k < 0:
        return val * RatFun.frac(MPoly.const(names, 1), *([base] * (-k)))
    return val


# ---------------------------------------------------------------------------
# Heisenberg vertex operators
# ---------------------------------------------------------------------------

@dataclass
class HeisenbergPrefactor:
    """prod_{i<j} (z_i - z_j)^{pair[i,j]} prod_i z_i^{point[i]}, or zero."""

    neutral: bool
    pair_exponents: dict = field(default_factory=dict)
    point_exponents: list = field(default_factory=list)

    def to_ratfun(self, positions: Sequence[MPoly]) -> RatFun:
        if not positions:
            raise InvalidInput("no positions")
        names = positions[0].vars
        if not self.neutral:
            return RatFun(MPoly(names))
        val = RatFun(MPoly.const(names, 1))
        for (i, j), e in sorted(self.pair_exponents.items()):
            val = _times_power(val, positions[i] - positions[j], _int_exp(e), names)
        for i, e in enumerate(self.point_exponents):
            val = _times_power(val, positions[i], _int_exp(e), names)
        return val


def _int_exp(e: Fraction) -> int:
    if e.denominator != 1:
        raise NonIntegerExponent(f"exponent {e} is not an integer")
    return int(e)


def heisenberg_prefactor(external, charges, pairing, out=None) -> HeisenbergPrefactor:
    """<q| V_{p_1}(z_1) ... V_{p_k}(z_k) |p> for a Heisenberg lattice.

    external: p; charges: [p_1, ..., p_k]; pairing: symmetric Gram matrix;
    out: q (defaults to the neutral value p + sum p_i).
    """
    g = [[as_q(v) for v in row] for row in pairing]
    d = len(g)
    for i in range(d):
        if len(g[i]) != d:
            raise InvalidInput("pairing matrix is not square")
        for j in range(d):
            if g[i][j] != g[j][i]:
                raise InvalidInput("pairing matrix is not symmetric")
    p = [as_q(v) for v in external]
    ps = [[as_q(v) for v in c] for c in charges]

    def pair(a, b):
        return sum(a[i] * g[i][j] * b[j] for i in range(d) for j in range(d))

    total = [p[i] + sum(c[i] for c in ps) for i in range(d)]
    neutral = out is None or [as_q(v) for v in out] == total
    if not neutral:
        return HeisenbergPrefactor(False)
    pe = {(i, j): pair(ps[i], ps[j]) for i in range(len(ps)) for j in range(i + 1, len(ps))}
    pt = [pair(p, c) for c in ps]
    return HeisenbergPrefactor(True, pe, pt)


# ---------------------------------------------------------------------------
# Admissible partitions of odd length from the b_0-inserted correlator
# ---------------------------------------------------------------------------

def odd_family_polynomial(m: int, delta: int):
    """Delta(z) <b_0 prod_{i=1}^m psi(z_i)> stripped to a polynomial, m = 2n+1.

    psi is c(z) - b(z) (delta 0, gamma_1-type) or c(z) z^{-1} - b(z) with the
    z^{-1} per c cleared (delta 1, gamma_0-type).  After row scaling the
    entries are N_ij / (z_i - z_j) with N = 1 or z_i + z_j, and the b_0 row
    is identically 1 (<b_0 c(z)> = 1), so the result is a polynomial.
    """
    from .jack import SymPoly

    if m < 1 or m % 2 == 0:
        raise InvalidInput(f"odd m required, got {m}")
    if delta not in (0, 1):
        raise InvalidInput(f"delta must be 0 or 1, got {delta}")
    names = _zvars(m)
    z = [MPoly.var(names, v) for v in names]
    one = MPoly.const(names, 1)
    points = [None] + z

    def numer(i, j):
        if i == 0:
            return one
        if delta == 0:
            return one
        return z[i - 1] + z[j - 1]

    poly = vandermonde_pfaffian(points, numer, names)
    return SymPoly.from_mpoly(poly)


def leading_partition_of_odd_family(m: int, delta: int) -> tuple:
    """The single -3 Jack label of :func:`odd_family_polynomial` (m odd).

    delta 0 gives the (0,0) family and delta 1 the (1,0) family.
    """
    from .jack import MINUS3, jack_expand

    f = odd_family_polynomial(m, delta)
    exp = jack_expand(f, MINUS3, m)
    if len(exp.coeffs) != 1:
        raise NotPolynomial(
            f"odd family m={m}, delta={delta} is not a single -3 Jack: {sorted(exp.coeffs)}"
        )
    (lam, _), = exp.coeffs.items()
    return partition(lam)


# ---------------------------------------------------------------------------
# Pfaffian-Jack identities
# ---------------------------------------------------------------------------

def pfaffian_jack_identity(m: int, family: int) -> dict:
    """Compare Delta(z) pf(N_ij / (z_i - z_j)) with the -3 Jack of admp(m; family, 0).

    N = 1 for family 0 and N = z_i + z_j for family 1; m must be even.
    Returns the scalar c with lhs = c * P and whether the identity holds.
    """
    from .jack import MINUS3, SymPoly, jack_poly
    from .partitions import admp

    if m < 2 or m % 2:
        raise OddSize(f"even m required, got {m}")
    if family not in (0, 1):
        raise InvalidInput(f"family must be 0 or 1, got {family}")
    names = _zvars(m)
    z = [MPoly.var(names, v) for v in names]
    one = MPoly.const(names, 1)

    def numer(i, j):
        return one if family == 0 else z[i] + z[j]

    lhs = SymPoly.from_mpoly(vandermonde_pfaffian(z, numer, names))
    lam = admp(m, family, 0)
    jk = jack_poly(lam, MINUS3, m)
    c = lhs.coeffs.get(lam, Fraction(0)) / jk.coeffs[lam]
    return {"m": m, "family": family, "partition": list(lam), "scalar": c,
            "holds": bool(c) and lhs == jk.scale(c)}
