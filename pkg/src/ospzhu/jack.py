"""Symmetric polynomials, Jack polynomials and the cycle inner product.

Conventions.  P_lambda^{(t)} is monic in m_lambda and orthogonal for the
kernel prod_{i != j} (1 - z_i/z_j)^{1/t}; t = 1 gives Schur functions.

Construction.  In n variables the Laplace-Beltrami operator

    D(t) = t/2 sum z_i^2 d_i^2 + sum_{i != j} z_i^2/(z_i - z_j) d_i

is triangular on monomial symmetric functions, with P_lambda^{(t)} as its
eigenvectors.  The coefficients are solved at a formal parameter (exact
rational functions in t) and then specialized, which is what makes the
t = -3 family well-defined for admissible lambda.  A Gram-Schmidt route
through the power-sum pairing is kept as an independent cross-check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Mapping

from . import cache
from .errors import NotAdmissible, PoleAtParameter, DoesNotFit
from .exactalg import MPoly, RatFun1, UPoly, as_q, fmt_q
from .partitions import (
    cell_data,
    dominated_by,
    is_admissible,
    padded,
    partition,
    partitions_of,
    z_lambda,
)

MINUS3 = Fraction(-3)


class _Formal:
    """Marker for the formal Jack parameter."""

    def __repr__(self):
        return "FORMAL"


FORMAL = _Formal()


# ---------------------------------------------------------------------------
# Symmetric polynomials in the monomial basis
# ---------------------------------------------------------------------------

def _is_zero(c) -> bool:
    return not c


class SymPoly:
    """sum c_lambda m_lambda in n variables; coefficients in any exact ring."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Mapping | None = None):
        self.n = n
        clean = {}
        for lam, c in (coeffs or {}).items():
            lam = partition(lam)
            if len(lam) > n:
                raise DoesNotFit(f"{lam} has more than {n} parts")
            if not _is_zero(c):
                clean[lam] = c
        self.coeffs = clean

    @classmethod
    def monomial(cls, lam, n, c=1) -> "SymPoly":
        return cls(n, {partition(lam): as_q(c)})

    @classmethod
    def one(cls, n) -> "SymPoly":
        return cls(n, {(): Fraction(1)})

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def degrees(self) -> set:
        return {sum(lam) for lam in self.coeffs}

    def homogeneous_part(self, d: int) -> "SymPoly":
        return SymPoly(self.n, {l: c for l, c in self.coeffs.items() if sum(l) == d})

    def __add__(self, o: "SymPoly"):
        out = dict(self.coeffs)
        for lam, c in o.coeffs.items():
            out[lam] = out[lam] + c if lam in out else c
        return SymPoly(self.n, out)

    def __neg__(self):
        return SymPoly(self.n, {l: -c for l, c in self.coeffs.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c) -> "SymPoly":
        return SymPoly(self.n, {l: v * c for l, v in self.coeffs.items()})

    def map(self, f: Callable) -> "SymPoly":
        return SymPoly(self.n, {l: f(v) for l, v in self.coeffs.items()})

    def __eq__(self, o):
        if not isinstance(o, SymPoly):
            return NotImplemented
        return self.n == o.n and self.coeffs == o.coeffs

    def __repr__(self):
        body = " + ".join(f"({c})*m{list(l)}" for l, c in sorted(self.coeffs.items(), reverse=True))
        return f"SymPoly(n={self.n}: {body or '0'})"

    # conversion ------------------------------------------------------------
    def to_mpoly(self, names=None) -> MPoly:
        """Expand into an explicit polynomial (rational coefficients only)."""
        names = tuple(names or [f"z{i + 1}" for i in range(self.n)])
        terms = {}
        for lam, c in self.coeffs.items():
            for e in set(itertools.permutations(padded(lam, self.n))):
                terms[e] = c
        return MPoly(names, terms)

    @classmethod
    def from_mpoly(cls, p: MPoly, check: bool = True) -> "SymPoly":
        """Read m-coefficients off the sorted exponents of a symmetric polynomial."""
        n = len(p.vars)
        coeffs = {}
        for e, c in p.terms.items():
            if min(e, default=0) < 0:
                raise ValueError("Laurent polynomial is not a symmetric polynomial")
            if all(e[i] >= e[i + 1] for i in range(n - 1)):
                coeffs[partition(e)] = c
        out = cls(n, coeffs)
        if check and out.to_mpoly(p.vars) != p:
            raise ValueError("polynomial is not symmetric")
        return out

    def to_json(self):
        return {
            "n": self.n,
            "terms": [
                {"partition": list(l), "coeff": _coeff_json(c)}
                for l, c in sorted(self.coeffs.items(), key=lambda t: (-sum(t[0]), [-x for x in t[0]]))
            ],
        }


def _coeff_json(c):
    if isinstance(c, UPoly):
        return c.to_json()
    if isinstance(c, RatFun1):
        return {"num": c.num.to_json(), "den": c.den.to_json()}
    return fmt_q(c)


# ---------------------------------------------------------------------------
# Laplace-Beltrami recursion
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _raisings(mu: tuple, n: int) -> tuple:
    """Off-diagonal entries of the operator: pairs (nu, d) with
    D m_nu containing d * m_mu, nu > mu.

    nu arises from mu by spreading a pair (mu_i, mu_j) -> (a, b), a > mu_i,
    b < mu_j, a + b fixed; each such pair contributes (a - b).
    """
    p = padded(mu, n)
    acc: dict = {}
    for i in range(n):
        for j in range(i + 1, n):
            hi, lo = p[i], p[j]
            s = hi + lo
            for b in range(0, lo):
                a = s - b
                if a <= hi:
                    continue
                q = list(p)
                q[i], q[j] = a, b
                nu = partition(sorted(q, reverse=True))
                acc[nu] = acc.get(nu, 0) + (a - b)
    return tuple(acc.items())


def _diag(mu: tuple, n: int):
    """Diagonal entry split as (coefficient of t, constant)."""
    p = padded(mu, n)
    return (
        Fraction(sum(x * (x - 1) for x in p), 2),
        Fraction(sum((n - 1 - i) * x for i, x in enumerate(p))),
    )


def _solve_coeffs(lam: tuple, n: int, t):
    """Monomial coefficients of P_lam in n variables at parameter t.

    t is a Fraction or FORMAL; raises ZeroDivisionError when a numeric t
    makes an eigenvalue difference vanish."""
    mus = dominated_by(lam, n)  # reverse-lex: a linear extension of dominance
    a_l, b_l = _diag(lam, n)
    if t is FORMAL:
        one = RatFun1.const(1, "t")
        coeffs = {lam: one}
        for mu in mus[1:]:
            acc = RatFun1.const(0, "t")
            for nu, d in _raisings(mu, n):
                c = coeffs.get(nu)
                if c is not None:
                    acc = acc + c * d
            if acc:
                a_m, b_m = _diag(mu, n)
                diff = UPoly((b_l - b_m, a_l - a_m), "t")
                acc = acc / RatFun1(diff)
                coeffs[mu] = acc
        return coeffs
    t = as_q(t)
    coeffs = {lam: Fraction(1)}
    e_l = a_l * t + b_l
    for mu in mus[1:]:
        acc = Fraction(0)
        for nu, d in _raisings(mu, n):
            c = coeffs.get(nu)
            if c:
                acc += c * d
        a_m, b_m = _diag(mu, n)
        diff = e_l - (a_m * t + b_m)
        if diff == 0:
            # even with acc == 0 the formal limit may be nonzero
            raise ZeroDivisionError(mu)
        if acc:
            coeffs[mu] = acc / diff
    return coeffs


_memo: dict = {}


def _jack_raw(lam: tuple, t, n: int) -> SymPoly:
    """P_lam^{(t)} without the admissibility gate."""
    key = (lam, "formal" if t is FORMAL else as_q(t), n)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    if t is FORMAL:
        out = SymPoly(n, _solve_coeffs(lam, n, FORMAL))
    else:
        t = as_q(t)
        ckey = f"{list(lam)}|{t}|{n}"
        stored = cache.get("jack", ckey) if t == MINUS3 else None
        if stored is not None:
            out = SymPoly(n, {tuple(p): Fraction(c) for p, c in stored})
        else:
            try:
                out = SymPoly(n, _solve_coeffs(lam, n, t))
            except ZeroDivisionError:
                formal = _jack_raw(lam, FORMAL, n)
                vals = {}
                for mu, c in formal.coeffs.items():
                    if c.has_pole_at(t):
                        raise PoleAtParameter(
                            f"P_{list(lam)} has a pole at t = {t} (coefficient of m_{list(mu)})"
                        ) from None
                    vals[mu] = c.at(t)
                out = SymPoly(n, vals)
            if t == MINUS3:
                cache.put("jack", ckey, [[list(p), str(c)] for p, c in out.coeffs.items()])
    _memo[key] = out
    return out


def jack_poly(lam, t, n: int) -> SymPoly:
    """Monic Jack polynomial P_lam^{(t)} in n variables (m-basis).

    t may be a rational or FORMAL (coefficients are then RatFun1 in t).
    """
    lam = partition(lam)
    if len(lam) > n:
        raise DoesNotFit(f"{lam} has more than {n} parts")
    if t is not FORMAL and as_q(t) == MINUS3 and not is_admissible(lam, n):
        raise NotAdmissible(f"{list(lam)} is not (2,2)-admissible in {n} variables; P^(-3) is not defined")
    return _jack_raw(lam, t, n)


def specialize(p: SymPoly, t) -> SymPoly:
    """Evaluate a formal-parameter SymPoly at t."""
    t = as_q(t)
    out = {}
    for mu, c in p.coeffs.items():
        if c.has_pole_at(t):
            raise PoleAtParameter(f"pole at t = {t} in coefficient of m_{list(mu)}")
        out[mu] = c.at(t)
    return SymPoly(p.n, out)


# ---------------------------------------------------------------------------
# Expansion in the Jack basis
# ---------------------------------------------------------------------------

@dataclass
class JackExpansion:
    t: object
    n: int
    coeffs: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "t": "formal" if self.t is FORMAL else fmt_q(self.t),
            "n": self.n,
            "terms": [
                {"partition": list(l), "coeff": _coeff_json(c)}
                for l, c in sorted(self.coeffs.items(), reverse=True)
            ],
        }


def jack_expand(f: SymPoly, t, n: int | None = None) -> JackExpansion:
    """Write f in the P^{(t)} basis by triangular elimination.

    The lex-largest remaining monomial is always the leading term of the
    next Jack polynomial, so each step removes it exactly.
    """
    n = f.n if n is None else n
    rem = dict(f.coeffs)
    out = {}
    while rem:
        mu = max(rem)
        c = rem.pop(mu)
        if _is_zero(c):
            continue
        out[mu] = c
        p = _jack_raw(mu, t, n)
        for nu, d in p.coeffs.items():
            if nu == mu:
                continue
            v = rem.get(nu)
            v = -(c * d) if v is None else v - c * d
            if _is_zero(v):
                rem.pop(nu, None)
            else:
                rem[nu] = v
    return JackExpansion(t, n, out)


def jack_sum(exp: JackExpansion) -> SymPoly:
    """Back to the monomial basis."""
    total = SymPoly(exp.n)
    for mu, c in exp.coeffs.items():
        total = total + _jack_raw(mu, exp.t, exp.n).scale(c)
    return total


# ---------------------------------------------------------------------------
# Norms and inner products
# ---------------------------------------------------------------------------

def jack_norm(lam, t, n: int) -> Fraction:
    """<P_lam, P_lam> in n variables with <1,1> = 1 (hook-product formula)."""
    lam = partition(lam)
    t = as_q(t)
    num = Fraction(1)
    den = Fraction(1)
    for c in cell_data(lam):
        num *= (n + c.coarm * t - c.coleg) * (t * (c.arm + 1) + c.leg)
        den *= (n + (c.coarm + 1) * t - c.coleg - 1) * (t * c.arm + c.leg + 1)
    if den == 0:
        raise PoleAtParameter(f"norm of {list(lam)} at t = {t}, n = {n}")
    return num / den


def inner_product(f: SymPoly, g: SymPoly, n: int, t):
    """<f, g>_n^t via Jack expansions; different degrees pair to zero."""
    fe = jack_expand(f, t, n).coeffs
    ge = jack_expand(g, t, n).coeffs
    total = 0
    for mu, c in fe.items():
        d = ge.get(mu)
        if d is not None:
            total = total + c * d * jack_norm(mu, t, n)
    return total


@lru_cache(maxsize=None)
def _ct_kernel(n: int, k: int) -> MPoly:
    names = tuple(f"z{i + 1}" for i in range(n))
    ker = MPoly.const(names, 1)
    for i in range(n):
        for j in range(n):
            if i != j:
                e = [0] * n
                e[i] += 1
                e[j] -= 1
                fac = MPoly(names, {(0,) * n: 1, tuple(e): -1})
                ker = ker * fac ** k
    return ker


def constant_term_oracle(f: SymPoly, g: SymPoly, n: int, k: int) -> Fraction:
    """CT[K f(1/z) g(z)] / CT[K] with K = prod_{i != j}(1 - z_i/z_j)^k."""
    ker = _ct_kernel(n, k).terms
    fp = f.to_mpoly().terms
    gp = g.to_mpoly().terms
    total = Fraction(0)
    for ea, ca in fp.items():
        for eb, cb in gp.items():
            kk = ker.get(tuple(x - y for x, y in zip(ea, eb)))
            if kk:
                total += ca * cb * kk
    return total / ker[(0,) * n]


# ---------------------------------------------------------------------------
# Binomial pairing
# ---------------------------------------------------------------------------

def binomial_coefficient(mu, t) -> tuple:
    """Coefficient of w^{-|mu|} P_mu^{(t)}(z) in prod (1 + z_i/w)^lam, as a
    UPoly in lam.

    (-1)^{|mu|} prod_b (-lam t + t a'(b) - l'(b)) / (t(a(b)+1) + l(b))
    """
    t = as_q(t)
    out = UPoly((1,), "lam")
    for c in cell_data(mu):
        den = t * (c.arm + 1) + c.leg
        if den == 0:
            raise PoleAtParameter(f"binomial coefficient of {list(mu)} at t = {t}")
        out = out * UPoly((t * c.coarm - c.coleg, -t), "lam") / den
    return out * ((-1) ** sum(mu))


def binomial_series_part(d: int, n: int, lam) -> SymPoly:
    """Degree-d part of prod_i (1 + z_i)^lam in the m-basis.

    lam may be a rational or a UPoly; coefficients prod_i C(lam, mu_i)."""
    coeffs = {}
    for mu in partitions_of(d, n):
        c = 1
        for part in mu:
            c = c * _gbinom(lam, part)
        coeffs[mu] = c
    return SymPoly(n, coeffs)


def _gbinom(lam, k: int):
    out = 1
    for j in range(k):
        out = out * (lam - j)
    return out * Fraction(1, factorial(k))


def binomial_pairing(kappa, a, b, t, n: int, sigma_var: str = "sigma") -> UPoly:
    """w^{|kappa|} <P_kappa^{(-3)}, prod (1 + z_i/w)^{a sigma + b}>_n^t in sigma."""
    kappa = partition(kappa)
    pk = jack_poly(kappa, MINUS3, n)
    exp = jack_expand(pk, t, n)
    total = UPoly((), "lam")
    for mu, c in exp.coeffs.items():
        total = total + binomial_coefficient(mu, t) * (c * jack_norm(mu, t, n))
    return total.compose(UPoly((as_q(b), as_q(a)), sigma_var))


def direct_binomial_pairing(kappa, lam0, t, n: int) -> Fraction:
    """Same pairing at a rational exponent, by explicit series expansion."""
    kappa = partition(kappa)
    g = binomial_series_part(sum(kappa), n, as_q(lam0))
    return inner_product(jack_poly(kappa, MINUS3, n), g, n, t)


# ---------------------------------------------------------------------------
# Translations
# ---------------------------------------------------------------------------

def _apply_e1(f: SymPoly) -> SymPoly:
    """sum_i d/dz_i, acting on the m-basis."""
    n = f.n
    out: dict = {}
    for mu, c in f.coeffs.items():
        p = padded(mu, n)
        seen = set()
        for i in range(n):
            if p[i] == 0 or p[i] in seen:
                continue
            seen.add(p[i])
            # lowering one copy of the part value p[i]
            q = list(p)
            q[i] -= 1
            nu = partition(sorted(q, reverse=True))
            # coefficient of x^nu in E m_mu: sum over positions k with
            # sort(nu + e_k) == mu of (nu_k + 1)
            nu_p = padded(nu, n)
            mult = sum(
                nu_p[k] + 1
                for k in range(n)
                if tuple(sorted(nu_p[:k] + (nu_p[k] + 1,) + nu_p[k + 1:], reverse=True)) == p
            )
            out[nu] = out.get(nu, 0) + c * mult
    return SymPoly(n, out)


def translate(f: SymPoly) -> list:
    """f(z + w) = sum_d w^d f_d(z); returns [(d, f_d)] for nonzero f_d."""
    out = []
    cur = f
    d = 0
    while cur:
        out.append((d, cur))
        d += 1
        cur = _apply_e1(cur).scale(Fraction(1, d))
    return out


def translate_expand(lam, t, m: int) -> list:
    """P_lam^{(t)}(z_1+w, ..., z_m+w) as [(w-order, JackExpansion)]."""
    lam = partition(lam)
    p = jack_poly(lam, t, m)
    return [(d, jack_expand(fd, t, m)) for d, fd in translate(p)]


# ---------------------------------------------------------------------------
# Gram-Schmidt oracle (infinite variables, power-sum pairing)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _power_to_monomial(d: int):
    """Matrix L with p_rho = sum_mu L[rho][mu] m_mu (in >= d variables)."""
    parts = partitions_of(d)
    names = tuple(f"x{i}" for i in range(d))
    out = {}
    for rho in parts:
        poly = MPoly.const(names, 1)
        for r in rho:
            poly = poly * MPoly(names, {tuple(r if k == i else 0 for k in range(d)): 1 for i in range(d)})
        out[rho] = SymPoly.from_mpoly(poly, check=False).coeffs
    return parts, out


def _mat_inverse(a: list) -> list:
    n = len(a)
    m = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col])
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def gram_schmidt_jack(lam, t) -> dict:
    """P_lam^{(t)} as a symmetric function (m-basis, all partitions of |lam|),
    by Gram-Schmidt against <p_rho, p_sigma> = delta z_rho t^{l(rho)}."""
    lam = partition(lam)
    t = as_q(t)
    parts, L = _power_to_monomial(sum(lam))
    N = len(parts)
    Lm = [[Fraction(L[r].get(c, 0)) for c in parts] for r in parts]
    Li = _mat_inverse(Lm)  # m_mu = sum_rho Li[mu][rho] p_rho
    w = [z_lambda(r) * t ** len(r) for r in parts]
    gram = [
        [sum(Li[i][k] * w[k] * Li[j][k] for k in range(N)) for j in range(N)]
        for i in range(N)
    ]

    def pair(u, v):
        return sum(u[i] * gram[i][j] * v[j] for i in range(N) if u[i] for j in range(N) if v[j])

    idx = {p: i for i, p in enumerate(parts)}
    basis = {}
    for mu in sorted(parts):  # increasing lex, a linear extension of dominance
        vec = [Fraction(0)] * N
        vec[idx[mu]] = Fraction(1)
        for nu, b in basis.items():
            c = pair(vec, b) / pair(b, b)
            vec = [x - c * y for x, y in zip(vec, b)]
        basis[mu] = vec
        if mu == lam:
            break
    return {parts[i]: c for i, c in enumerate(basis[lam]) if c}
