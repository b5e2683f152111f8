"""The ten acceptance criteria, one test each.

Every test records a one-line PASS/FAIL verdict; the lines are printed in
the terminal summary (see conftest.py) and when the file is run directly.
"""

import io
import json
import os
import subprocess
import sys
import time
from fractions import Fraction as F
from math import gcd

from ospzhu import correlators as C
from ospzhu import jack as J
from ospzhu import minmod as M
from ospzhu import ospalg as O
from ospzhu import partitions as P
from ospzhu import zeromode as Z
from ospzhu.cli import canonical, run, strip_meta
from ospzhu.exactalg import UPoly, fmt_q

RESULTS = {}

SVIMAGE_PAIRS = [(2, 4), (3, 5), (4, 6), (3, 1), (5, 1), (4, 2), (5, 3)]


def record(num, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] {num:>2}. {title}" + (f": {detail}" if detail else "")
    RESULTS[num] = line
    print(line)
    assert ok, line


def test_01_pfaffian_jack_identities():
    start = time.perf_counter()
    scalars = {0: set(), 1: set()}
    ok = True
    for m in (2, 4, 6):
        for fam in (0, 1):
            r = C.pfaffian_jack_identity(m, fam)
            ok &= r["holds"]
            scalars[fam].add(r["scalar"])
    elapsed = time.perf_counter() - start
    ok &= all(len(s) == 1 for s in scalars.values()) and elapsed < 60
    record(1, "pfaffian-Jack identities 2n in {2,4,6}", ok,
           f"scalars {[fmt_q(next(iter(s))) for s in scalars.values()]}, {elapsed:.1f}s")


def test_02_translation_invariance():
    ok = True
    for m in (2, 4, 6):
        parts = J.translate(J.jack_poly(P.admp(m, 0, 0), J.MINUS3, m))
        ok &= len(parts) == 1 and parts[0][0] == 0
    record(2, "translation invariance of P_admp(2n;0,0)", ok)


def test_03_taylor_structure():
    ok = True
    rows = []
    for m in (2, 4, 6):
        table = J.translate_expand(P.admp(m, 1, 0), J.MINUS3, m)
        orders = [o for o, _ in table]
        ok &= orders == list(range(len(orders)))
        for _, exp in table:
            ok &= len(exp.coeffs) == 1
            for mu, c in exp.coeffs.items():
                ok &= bool(c) and P.is_admissible(mu, m)
        rows.append(len(table))
    record(3, "Taylor structure of P_admp(2n;1,0)(z+w)", ok, f"orders per 2n: {rows}")


def test_04_bc_correlators():
    ok = True
    count = 0
    for sec in C.SECTORS:
        for n, m in ((1, 0), (1, 1), (2, 0)):
            val = C.bc_correlator(n, m, sec)
            fields = [C.Field.psi(i, m) for i in range(2 * n)]
            ok &= C.oracle_agrees(fields, sec, val, exponent_scale=2 if sec == "R" else 1)
            count += 1
    record(4, "bc correlators vs mode-expansion oracle (NS+, NS-, R; 2n <= 4)", ok, f"{count} cases")


def test_05_jack_orthogonality():
    ok = True
    count = 0
    for k in (1, 2, 3):
        t = F(1, k)
        for n in (1, 2, 3):
            one = J.SymPoly.one(n)
            ok &= J.constant_term_oracle(one, one, n, k) == 1
            for d in range(5):
                lams = P.partitions_of(d, n)
                polys = {lam: J.jack_poly(lam, t, n) for lam in lams}
                for a in lams:
                    for b in lams:
                        got = J.constant_term_oracle(polys[a], polys[b], n, k)
                        ok &= got == (J.jack_norm(a, t, n) if a == b else 0)
                        count += 1
    record(5, "Jack orthogonality and norms (1/t in {1,2,3}, n <= 3, |lambda| <= 4)", ok, f"{count} pairings")


def test_06_osp_algebra():
    ok = True
    for lam in range(5):
        for alg in ("osp", "sl2"):
            ok &= all(r["holds"] for r in O.centralizer_identities(lam, alg).values())
        spec = O.casimir_spectrum(O.osp_irrep(lam))
        ok &= spec["sigma_even"] == lam + F(1, 2)
        ok &= lam == 0 or spec["sigma_odd"] == -(lam + F(1, 2))
        ok &= spec["half_sigma_sq_minus_eighth"] == F(lam * (lam + 1), 2)
        ok &= O.casimir_spectrum(O.sl2_irrep(lam))["quadratic"] == F(lam * (lam + 2), 2)
    record(6, "osp(1|2) centraliser identities and Casimirs (lambda <= 4)", ok)


def test_07_automorphisms():
    ells = [F(1, 2), F(-1, 2), F(1), F(-1)]
    ok = True
    for ell in ells:
        for sec in ("ns", "r"):
            ok &= not O.preservation_failures(lambda g: O.spectral_flow(g, ell), sec, 2)
        for m in ells:
            for sec in ("ns", "r"):
                for g in O.generators(sec, 2):
                    lhs = O.apply_map(lambda h: O.spectral_flow(h, ell), O.spectral_flow(g, m))
                    ok &= lhs == O.spectral_flow(g, ell + m)
    z = O.zeta_report()
    for sec in ("ns", "r"):
        ok &= not O.preservation_failures(O.zeta_twist, sec, 2)
    ok &= not O.zeta_preserves_triangular()
    record(7, "spectral flow and zeta", ok,
           f"zeta central constant solved {fmt_q(z['solved'])}, printed {fmt_q(z['printed'])}"
           f" ({z['printed_failures']} bracket failures with the printed value)")


def test_08_zhu_image_verification():
    ok = True
    literal_fail = []
    worst = 0.0
    for u, v in SVIMAGE_PAIRS:
        pair = M.validate(u, v)
        for sec in ("ns", "r"):
            start = time.perf_counter()
            rep = Z.verify_svimage(pair, sec)
            worst = max(worst, time.perf_counter() - start)
            ok &= rep.passed and rep.divides_up_to_reflection and rep.rho_divides_every_summand
            if not rep.divides_every_summand:
                literal_fail.append(f"{sec.upper()}({u},{v})")
    # the only literal failures are the NS cases where a summand's degree is
    # below the predicted degree
    ok &= literal_fail == ["NS(3,5)", "NS(4,6)", "NS(5,3)"]
    p24 = M.validate(2, 4)
    ok &= M.zhu_image(p24, "ns").polynomial == UPoly((0, 1), "Sigma")
    ok &= M.zhu_image(p24, "r").polynomial == UPoly((F(15, 32), 1), "Q")
    ok &= Z.verify_svimage(p24, "ns").roots_found == [0]
    ok &= Z.verify_svimage(p24, "r").roots_found == [F(-1, 4), F(1, 4)]
    ok &= worst < 300
    record(8, "Zhu-image verification, 7 pairs x 2 sectors", ok,
           "predicted factors divide every matrix element together with its partner-vector reflection; "
           f"per-summand literal divisibility fails for {', '.join(literal_fail)} (degree), "
           f"slowest {worst:.2f}s")


def test_09_kac_arithmetic():
    ok = True
    count = 0
    half = F(1, 2)
    for u in range(2, 13):
        for v in range(1, 13):
            if (u - v) % 2 or gcd(u, (u - v) // 2) != 1:
                continue
            pair = M.validate(u, v)
            tabs = M.kac_tables(pair)
            for (i, j), (lam, s, q) in tabs.values.items():
                ok &= M.spectrum(pair, u - i, v - j)[1] == -s
                ok &= q == (s * s - 1) / 2
                ok &= (lam + half == s) if (i + j) % 2 else (lam == s - 1)
            db = M.degree_bounds(pair)
            ok &= 0 <= db["ns_slack"] <= half and 0 <= db["r_slack"] <= half
            count += 1
    record(9, "Kac-table arithmetic for u, v <= 12", ok, f"{count} admissible pairs")


DOCUMENTED = [
    ["kac-table", "3", "5"], ["zhu-image", "3", "5"], ["classify", "4", "6"],
    ["spectrum", "3", "5", "2", "1"], ["jack", "3,2,1", "-3", "4"], ["correlator", "2", "1", "--sector", "r"],
    ["verify", "--suite", "svimage", "2", "4"], ["verify", "--suite", "ospalg", "--max-n", "1"],
]
INVALID = [(["kac-table", "2", "6"], "NotAdmissible"), (["spectrum", "2", "4", "5", "1"], "OutOfRange"),
           (["classify", "3", "5", "--sector", "x"], "SectorMismatch"), (["kac-table", "a", "b"], "InvalidInput")]


def _proc(argv, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    return subprocess.run([sys.executable, "-m", "ospzhu", *argv], capture_output=True, text=True, env=env)


def test_10_cli_determinism():
    ok = True
    for argv in DOCUMENTED:
        for flag in ([], ["--json"]):
            a, b = _proc(argv + flag, 11), _proc(argv + flag, 12)
            ok &= a.returncode == b.returncode == 0
            if flag:
                da, db = json.loads(a.stdout), json.loads(b.stdout)
                ok &= canonical(strip_meta(da)) == canonical(strip_meta(db))
                ok &= canonical(da) + "\n" == a.stdout
            else:
                ok &= a.stdout == b.stdout
    for argv, name in INVALID:
        err = io.StringIO()
        ok &= run(argv, io.StringIO(), err) == 2 and err.getvalue().startswith(name + ": ")
    record(10, "CLI determinism and exit codes", ok, f"{len(DOCUMENTED)} commands, {len(INVALID)} invalid inputs")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_")):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
