"""Verification suites shared by the command line and the test-suite.

Each suite returns {"suite": name, "checks": [...], "passed": bool}; every
check is {"name", "passed", "detail"} with JSON-ready values only.
"""

from __future__ import annotations

from fractions import Fraction

from . import correlators as C
from . import jack as J
from . import ospalg as O
from . import partitions as P
from .errors import NoConsistentConstant
from .exactalg import fmt_q
from .minmod import validate
from .zeromode import DEFAULT_PAIRS, verify_svimage


def _check(name, passed, detail=None):
    return {"name": name, "passed": bool(passed), "detail": detail if detail is not None else ""}


def _wrap(name, checks, **extra):
    out = {"suite": name, "checks": checks, "passed": all(c["passed"] for c in checks)}
    out.update(extra)
    return out


def jack_suite(max_n: int = 3, max_weight: int = 4) -> dict:
    """Orthogonality and norms against the constant-term oracle, t = 1/k."""
    checks = []
    for k in (1, 2, 3):
        t = Fraction(1, k)
        for n in range(1, max_n + 1):
            one = J.SymPoly.one(n)
            checks.append(_check(f"<1,1> n={n} t={t}", J.constant_term_oracle(one, one, n, k) == 1))
            for d in range(max_weight + 1):
                lams = P.partitions_of(d, n)
                polys = {lam: J.jack_poly(lam, t, n) for lam in lams}
                bad = []
                for a in lams:
                    for b in lams:
                        got = J.constant_term_oracle(polys[a], polys[b], n, k)
                        want = J.jack_norm(a, t, n) if a == b else 0
                        if got != want:
                            bad.append([list(a), list(b), fmt_q(got), fmt_q(want)])
                checks.append(_check(f"orthogonality |lambda|={d} n={n} t={fmt_q(t)}", not bad,
                                     bad[:1] or len(lams)))
    return _wrap("jack", checks)


def pfaffian_suite(max_n: int = 6) -> dict:
    """Pfaffian-Jack identities, translation invariance and Taylor structure."""
    checks = []
    scalars = {0: set(), 1: set()}
    for m in range(2, max_n + 1, 2):
        for fam in (0, 1):
            r = C.pfaffian_jack_identity(m, fam)
            scalars[fam].add(r["scalar"])
            checks.append(_check(f"pf identity m={m} family={fam}", r["holds"],
                                 {"partition": r["partition"], "scalar": fmt_q(r["scalar"])}))
        lam0 = P.admp(m, 0, 0)
        tr = J.translate(J.jack_poly(lam0, J.MINUS3, m))
        checks.append(_check(f"translation invariance admp({m};0,0)", len(tr) == 1))
        table = J.translate_expand(P.admp(m, 1, 0), J.MINUS3, m)
        ok = all(len(e.coeffs) == 1 and all(c for c in e.coeffs.values())
                 and all(P.is_admissible(mu, m) for mu in e.coeffs) for _, e in table)
        orders = [o for o, _ in table]
        checks.append(_check(f"Taylor structure admp({m};1,0)", ok and orders == list(range(len(orders))),
                             [[o, [list(mu) for mu in e.coeffs]] for o, e in table]))
    for fam, s in scalars.items():
        checks.append(_check(f"scalar constant across m, family {fam}", len(s) == 1,
                             sorted(fmt_q(x) for x in s)))
    return _wrap("pfaffian", checks)


def correlator_suite(max_n: int = 4) -> dict:
    """bc correlators against the Wick mode-expansion oracle, 2n <= max_n."""
    checks = []
    for sec in C.SECTORS:
        for n in range(1, max_n // 2 + 1):
            for m in ((0, 1) if n == 1 else (0,)):
                val = C.bc_correlator(n, m, sec)
                fields = [C.Field.psi(i, m) for i in range(2 * n)]
                ok = C.oracle_agrees(fields, sec, val, exponent_scale=2 if sec == "R" else 1)
                checks.append(_check(f"{sec} 2n={2 * n} m={m}", ok))
    return _wrap("correlator", checks)


def ospalg_suite(max_lambda: int = 4) -> dict:
    checks = []
    for lam in range(max_lambda + 1):
        rep = O.osp_irrep(lam)
        bad = {k: v for k, v in O.check_relations(rep).items() if v}
        checks.append(_check(f"osp({lam}) relations", not bad, bad or ""))
        spec = O.casimir_spectrum(rep)
        half = Fraction(1, 2)
        ok = spec["sigma_even"] == lam + half and (lam == 0 or spec["sigma_odd"] == -(lam + half))
        checks.append(_check(f"osp({lam}) Sigma = +-(lambda+1/2)", ok))
        checks.append(_check(f"osp({lam}) Sigma^2/2 - 1/8 = lambda(lambda+1)/2",
                             spec["matches_quadratic"] and spec["quadratic"] == Fraction(lam * (lam + 1), 2)))
        for name, r in O.centralizer_identities(lam, "osp").items():
            checks.append(_check(f"osp({lam}) {name}", r["holds"], r["offending"] or ""))
        q = O.casimir_spectrum(O.sl2_irrep(lam))["quadratic"]
        checks.append(_check(f"sl2({lam}) Q = lambda(lambda+2)/2", q == Fraction(lam * (lam + 2), 2)))
        for name, r in O.centralizer_identities(lam, "sl2").items():
            checks.append(_check(f"sl2({lam}) {name}", r["holds"], r["offending"] or ""))
    ells = [Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(-1)]
    for ell in ells:
        for sec in ("ns", "r"):
            bad = O.preservation_failures(lambda g: O.spectral_flow(g, ell), sec, 2)
            checks.append(_check(f"spectral flow {fmt_q(ell)} preserves brackets ({sec})", not bad,
                                 bad[:1] or ""))
    comp_ok = True
    for ell in ells:
        for m in ells:
            for sec in ("ns", "r"):
                for g in O.generators(sec, 2):
                    lhs = O.apply_map(lambda h: O.spectral_flow(h, ell), O.spectral_flow(g, m))
                    if lhs != O.spectral_flow(g, ell + m):
                        comp_ok = False
    checks.append(_check("spectral flow composition", comp_ok))
    try:
        z = O.zeta_report()
    except NoConsistentConstant as exc:
        checks.append(_check("zeta central constant unique", False, str(exc)))
        return _wrap("ospalg", checks, zeta=None)
    checks.append(_check("zeta central constant unique", True,
                         {"solved": fmt_q(z["solved"]), "printed": fmt_q(z["printed"]),
                          "agree": z["agree"], "printed_failures": z["printed_failures"]}))
    for sec in ("ns", "r"):
        bad = O.preservation_failures(O.zeta_twist, sec, 2)
        checks.append(_check(f"zeta preserves brackets ({sec})", not bad, bad[:1] or ""))
    bad = O.zeta_preserves_triangular()
    checks.append(_check("zeta maps triangular parts", not bad, bad[:1] or ""))
    return _wrap("ospalg", checks, zeta={"solved": fmt_q(z["solved"]), "printed": fmt_q(z["printed"])})


def svimage_suite(pairs=None, sectors=("ns", "r")) -> dict:
    checks = []
    reports = []
    for u, v in (pairs or DEFAULT_PAIRS):
        pair = validate(u, v)
        for s in sectors:
            rep = verify_svimage(pair, s)
            reports.append(rep)
            checks.append(_check(f"({u},{v}) {s}", rep.passed, rep.failures[0] if rep.failures else ""))
    out = _wrap("svimage", checks)
    out["reports"] = reports
    return out


SUITES = {
    "jack": jack_suite,
    "pfaffian": pfaffian_suite,
    "correlator": correlator_suite,
    "ospalg": ospalg_suite,
    "svimage": svimage_suite,
}
