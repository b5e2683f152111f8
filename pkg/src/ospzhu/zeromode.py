"""Zero-mode matrix elements of the singular vector on relaxed highest-weight
vectors, as polynomials in sigma, and the check of the predicted factors.

The free-field momentum p never appears: sigma = xi p + 1/2, xi^2 = u/v, and
every exponent below is affine in sigma with rational coefficients.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import partitions as P
from .correlators import CorrelatorSpec, dressed_correlator, heisenberg_prefactor
from .errors import InvalidInput, PoleAtParameter, VerificationFailed
from .exactalg import UPoly, fmt_q, rational_roots, upoly_gcd
from .jack import SymPoly, binomial_coefficient, binomial_pairing, jack_expand, jack_norm
from .minmod import AdmissiblePair, degree_bounds, kac_tables, spectrum, zhu_image

SIGMA = "sigma"


@dataclass
class Regime:
    pair: AdmissiblePair
    branch: str  # "v>u" | "u>v"
    sector: str  # "ns" | "r"
    parity: str  # "odd" | "even"
    t: Fraction  # Jack parameter of the pairing
    n: int  # number of screening variables
    a: Fraction  # exponent lambda(sigma) = a sigma + b
    b: Fraction
    z_power: int  # prod z_i^{z_power} in the integrand
    spec: CorrelatorSpec | None
    recipe: str

    @property
    def box(self) -> int:
        return (self.pair.u + self.pair.v) // 2 - 2

    @property
    def shift(self) -> int:
        return abs(self.pair.u - self.pair.v) // 2 + 1

    def exponent(self) -> UPoly:
        return UPoly((self.b, self.a), SIGMA)

    def to_json(self):
        return {
            "u": self.pair.u, "v": self.pair.v, "branch": self.branch, "sector": self.sector,
            "parity": self.parity, "t": fmt_q(self.t), "n": self.n,
            "exponent": {"a": fmt_q(self.a), "b": fmt_q(self.b)},
            "z_power": self.z_power, "recipe": self.recipe,
        }


def _lattice_exponents(pair: AdmissiblePair) -> tuple:
    """Exponents picked up from the bosonised beta-gamma lattice when u > v.

    Lattice (theta, psi) with (psi,psi) = -(theta,theta) = 1.  The ket carries
    j(theta+psi) - psi; each screening point carries -(u+v)/(2v)(theta+psi)
    and each beta = V_{theta+psi}.  Returns (point exponent, beta exponent).
    """
    gram = [[-1, 0], [0, 1]]
    ket = [0, -1]  # the j(theta+psi) part pairs to zero with everything
    mu = Fraction(-(pair.u + pair.v), 2 * pair.v)
    hp = heisenberg_prefactor(ket, [[mu, mu], [1, 1]], gram)
    if hp.pair_exponents[(0, 1)] != 0:
        raise AssertionError("theta+psi should be null")
    return hp.point_exponents[0], hp.point_exponents[1]


def build_regime(pair: AdmissiblePair, sector: str) -> Regime:
    sector = sector.lower()
    if sector not in ("ns", "r"):
        raise InvalidInput(f"unknown sector {sector!r}")
    u, v = pair.u, pair.v
    if u == v:
        raise InvalidInput("u = v has no screening regime")
    parity = "odd" if u % 2 else "even"
    half = Fraction(1, 2)
    ghost = Fraction(-1) if sector == "ns" else -half  # prod (z_i + w)^ghost from the bc/beta-gamma part
    if v > u:
        branch, n, t = "v>u", u - 1, Fraction(2 * u, v - u)
        # (1 + z/w)^{-p/xi}, -p/xi = -(v/u)(sigma - 1/2)
        a, b = Fraction(-v, u), Fraction(v, 2 * u)
    else:
        branch, n, t = "u>v", v - 1, Fraction(2 * v, u - v)
        point, beta = _lattice_exponents(pair)
        if beta != -1:
            raise AssertionError("beta should carry x^{-1}")
        # (1 + z/w)^{xi p + point}
        a, b = Fraction(1), -half + point
    b += ghost
    spec = None
    if n:
        if sector == "ns" and n % 2 == 0:
            spec = CorrelatorSpec("NS+", n, ("gamma0", n // 2), shift=True)
        elif sector == "ns":
            spec = CorrelatorSpec("NS+", n, ("gamma0", n // 2 + 1), b0=True, shift=True)
        elif n % 2 == 0:
            spec = CorrelatorSpec("R", n, ("gamma0", n // 2), shift=True)
        else:
            spec = CorrelatorSpec("R", n, ("gamma0", n // 2), cw=True, shift=True)
    if sector == "ns":
        recipe = "kappa_i = [(u+v)/2 - 2 - uniqp(n, i)], weight c_i"
    else:
        recipe = "kappa = admp(n; |u-v|/2 + 1, |u-v|/2 + 1)"
    return Regime(pair, branch, sector, parity, t, n, a, b, 2 - (u + v) // 2, spec, recipe)


# ---------------------------------------------------------------------------
# Summands
# ---------------------------------------------------------------------------

def kappa_list(reg: Regime) -> list:
    """[(kappa, weight)] of the -3 Jack labels, one per w-order."""
    n = reg.n
    if n == 0:
        return [((), Fraction(1))]
    if reg.sector == "ns":
        out = []
        for order, mu, c in P.uniqp_table(n):
            out.append((P.complement(reg.box, mu, n), c))
        return out
    return [(P.admp(n, reg.shift, reg.shift), Fraction(1))]


def _pair_with_binomial(f: SymPoly, reg: Regime) -> UPoly:
    """<f, prod (1 + z_i/w)^{a sigma + b}>_n^t (w stripped), by expanding f at t."""
    exp = jack_expand(f, reg.t, reg.n)
    total = UPoly((), "lam")
    for mu, c in exp.coeffs.items():
        total = total + binomial_coefficient(mu, reg.t) * (c * jack_norm(mu, reg.t, reg.n))
    return total.compose(reg.exponent())


def _shift_sympoly(f: SymPoly, s: int) -> SymPoly:
    n = f.n
    out = {}
    for mu, c in f.coeffs.items():
        out[P.shift(mu, s, n)] = c
    return SymPoly(n, out)


def summands_from_kappa(reg: Regime) -> list:
    """[(kappa, poly)] from the closed-form labels and binomial pairings."""
    if reg.n == 0:
        return [((), UPoly.const(1, SIGMA))]
    out = []
    for kap, c in kappa_list(reg):
        try:
            poly = binomial_pairing(kap, reg.a, reg.b, reg.t, reg.n, SIGMA) * c
        except PoleAtParameter as exc:
            raise PoleAtParameter(f"{exc} (label {list(kap)})") from exc
        out.append((kap, poly))
    return out


def summands_from_correlator(reg: Regime) -> list:
    """[(w-power, poly)] from the dressed ghost correlator, paired term by term."""
    if reg.n == 0:
        return [(0, UPoly.const(1, SIGMA))]
    dc = dressed_correlator(reg.spec)
    s = reg.spec.z_power() - reg.z_power
    out = []
    for k in sorted(dc.by_w):
        f = _shift_sympoly(dc.by_w[k], s)
        out.append((k, _pair_with_binomial(f, reg)))
    return out


def summand_polynomials(reg: Regime) -> list:
    """One sigma-polynomial per w-order (closed-form kappa path)."""
    return [p for _, p in summands_from_kappa(reg) if p]


def two_path_scalar(reg: Regime):
    """The single scalar s with correlator-path = s * kappa-path summands, or None."""
    a = [p for _, p in summands_from_kappa(reg) if p]
    b = [p for _, p in summands_from_correlator(reg) if p]
    key = lambda p: p.degree
    a.sort(key=key)
    b.sort(key=key)
    if len(a) != len(b):
        return None
    scal = None
    for pa, pb in zip(a, b):
        if pa.degree != pb.degree:
            return None
        r = pb.lc() / pa.lc()
        if pa * r != pb:
            return None
        if scal is None:
            scal = r
        elif scal != r:
            return None
    return scal


# ---------------------------------------------------------------------------
# Predictions
# ---------------------------------------------------------------------------

def predicted_factors(pair: AdmissiblePair, sector: str) -> UPoly:
    """Monic sigma-polynomial whose roots the images theorem predicts."""
    sector = sector.lower()
    tabs = kac_tables(pair)
    if sector == "ns":
        return UPoly.from_roots([tabs.values[ij][1] for ij in tabs.ns], SIGMA)
    if sector == "r":
        roots = []
        for ij in tabs.r_reduced:
            s = tabs.values[ij][1]
            roots += [s, -s]
        return UPoly.from_roots(roots, SIGMA)
    raise InvalidInput(f"unknown sector {sector!r}")


def closed_form_rho(reg: Regime) -> tuple:
    """Cells common to every partition dominated by the kappa labels, in closed form."""
    M = max(reg.pair.u, reg.pair.v)
    D = abs(reg.pair.u - reg.pair.v) // 2
    n = reg.n

    def pairs(top, bottom):
        out = []
        for k in range(top, bottom - 1, -1):
            out += [k, k]
        return out

    if reg.sector == "ns" and reg.parity == "odd":
        parts = [(M - 1) // 2] + pairs((M - 1) // 2 - 1, D + 1) + [D]
    elif reg.sector == "ns":
        parts = pairs(M // 2 - 1, D + 1) + [D]
    elif reg.parity == "odd":
        parts = pairs((M - 1) // 2, D + 1)
    else:
        parts = [M // 2] + pairs(M // 2 - 1, D + 1)
    if len(parts) != n:
        raise AssertionError(f"closed-form rho has {len(parts)} parts, expected {n}")
    return P.partition(parts)


def rho_labels(reg: Regime, rho) -> list:
    """Kac labels attached to the cells of rho."""
    odd_shift = 2 if reg.sector == "ns" else 1
    out = []
    for c in P.cell_data(rho):
        first, second = c.coleg + 1, c.coleg + 2 * c.coarm + odd_shift
        out.append((first, second) if reg.branch == "v>u" else (second, first))
    return out


def rho_factor(reg: Regime, rho) -> UPoly:
    """prod over the cells of rho of (sigma - s_label)."""
    return UPoly.from_roots([spectrum(reg.pair, *ij)[1] for ij in rho_labels(reg, rho)], SIGMA)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    pair: AdmissiblePair
    sector: str
    regime: Regime
    summands: list  # [(kappa, poly)]
    gcd: UPoly
    predicted: UPoly
    gcd_roots: list
    roots_found: list  # gcd roots together with their negatives
    predicted_roots: list
    divides_gcd: bool
    divides_every_summand: bool
    divides_up_to_reflection: bool
    rho: tuple
    rho_matches: bool
    rho_divides_every_summand: bool
    degrees_ok: bool
    degree_data: dict
    two_path_scalar: object
    elapsed_ms: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, meta=True):
        d = {
            "u": self.pair.u,
            "v": self.pair.v,
            "sector": self.sector,
            "regime": self.regime.to_json(),
            "summands": [{"kappa": list(k), "poly": p.to_json()} for k, p in self.summands],
            "gcd": self.gcd.to_json(),
            "predicted": self.predicted.to_json(),
            "predicted_roots": [fmt_q(r) for r in self.predicted_roots],
            "gcd_roots": [fmt_q(r) for r in self.gcd_roots],
            "roots_found": [fmt_q(r) for r in self.roots_found],
            "divides": self.divides_up_to_reflection,
            "divides_gcd": self.divides_gcd,
            "divides_every_summand": self.divides_every_summand,
            "rho": list(self.rho),
            "rho_matches": self.rho_matches,
            "rho_divides_every_summand": self.rho_divides_every_summand,
            "degrees": {k: (fmt_q(x) if isinstance(x, Fraction) else x) for k, x in self.degree_data.items()},
            "two_path_scalar": None if self.two_path_scalar is None else fmt_q(self.two_path_scalar),
            "passed": self.passed,
            "failures": list(self.failures),
        }
        if meta:
            d["meta"] = {"elapsed_ms": self.elapsed_ms}
        return d


def _reflect(p: UPoly) -> UPoly:
    return p.compose(UPoly((0, -1), p.var))


def verify_svimage(pair: AdmissiblePair, sector: str, strict: bool = False) -> VerificationReport:
    """Run the whole check for one pair and sector.

    With strict=True a failing check raises VerificationFailed carrying the
    first discrepancy; otherwise the report lists the failures.
    """
    start = time.perf_counter()
    sector = sector.lower()
    reg = build_regime(pair, sector)
    summ = summands_from_kappa(reg)
    polys = [p for _, p in summ if p]
    failures = []
    if not polys:
        failures.append("every summand vanishes")
        polys = [UPoly.const(0, SIGMA)]
    g = UPoly((), SIGMA)
    for p in polys:
        g = upoly_gcd(g, p)
    pred = predicted_factors(pair, sector)
    pred_roots = rational_roots(pred) if pred.degree > 0 else []
    gcd_roots = rational_roots(g) if g else []

    div_gcd = pred.divides(g)
    div_each = all(pred.divides(p) for p in polys)
    # a root r of the matrix element on |p> gives a root -r on the partner
    # vector (c_0|p> in NS, the Q-substitution in R)
    sym = _symmetric_closure(g)
    found = rational_roots(sym) if sym else []
    div_sym = pred.divides(sym)
    if not div_sym:
        failures.append(f"predicted {pred} does not divide {sym}")

    # cells common to the dominated partitions
    if reg.n:
        kaps = [k for k, p in summ if p]
        rho = P.dominated_cells(kaps, reg.n)
        closed = closed_form_rho(reg)
        rho_ok = rho == closed
        if not rho_ok:
            failures.append(f"common cells {rho} differ from closed form {closed}")
        rf = rho_factor(reg, rho)
        rho_div = all(rf.divides(p) for p in polys)
        if not rho_div:
            failures.append(f"rho factor {rf} does not divide every summand")
    else:
        rho, rho_ok, rho_div = (), True, True

    # degree bookkeeping
    bounds = degree_bounds(pair)
    deg_ok = True
    for k, p in summ:
        if p and p.degree != sum(k):
            deg_ok = False
            failures.append(f"summand for {list(k)} has degree {p.degree}")
    if sector == "ns":
        ddata = {"predicted_degree": pred.degree, "bound": bounds["ns_bound"], "slack": bounds["ns_slack"]}
    else:
        ddata = {"predicted_degree": pred.degree, "bound": bounds["r_bound"], "slack": bounds["r_slack"]}
    if not (0 <= ddata["slack"] <= Fraction(1, 2)):
        deg_ok = False
        failures.append(f"degree slack {ddata['slack']} outside [0, 1/2]")
    if sector == "r":
        # q-substitution: predicted(sigma) ~ g_P((sigma^2 - 1)/2)
        gp = zhu_image(pair, "r").polynomial
        sub = UPoly((0,), SIGMA)
        q_of_sigma = UPoly((Fraction(-1, 2), 0, Fraction(1, 2)), SIGMA)
        for c in reversed(gp.coeffs):
            sub = sub * q_of_sigma + UPoly.const(c, SIGMA)
        if sub.monic() != pred:
            failures.append("predicted factors differ from g_P((sigma^2-1)/2)")
    scal = two_path_scalar(reg)
    if scal is None:
        failures.append("correlator and kappa paths disagree")
    rep = VerificationReport(
        pair, sector, reg, summ, g, pred, gcd_roots, found, pred_roots, div_gcd, div_each, div_sym,
        rho, rho_ok, rho_div, deg_ok, ddata, scal,
        int((time.perf_counter() - start) * 1000), failures,
    )
    if strict and failures:
        raise VerificationFailed(failures[0])
    return rep


def _symmetric_closure(g: UPoly) -> UPoly:
    """Monic polynomial whose roots are the roots of g and their negatives (squarefree)."""
    from .exactalg import upoly_lcm

    if not g:
        return g
    sq = g.exact_quo(upoly_gcd(g, g.derivative())) if g.degree > 0 else g
    return upoly_lcm(sq, _reflect(sq))


DEFAULT_PAIRS = ((2, 4), (3, 5), (4, 6), (3, 1), (5, 1), (4, 2), (5, 3))
