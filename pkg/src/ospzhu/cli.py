"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed (the report is still
written), 2 invalid input.  With --json the payload is canonical JSON
(sorted keys, no whitespace, rationals as strings); timing lives only under
"meta".
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import correlators as C
from . import jack as J
from . import minmod as M
from . import partitions as P
from .errors import InvalidInput, OutOfRange, PoleAtParameter, SectorMismatch
from .exactalg import fmt_q
from .suites import SUITES, svimage_suite
from .zeromode import DEFAULT_PAIRS


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def strip_meta(obj):
    """Drop every "meta" entry; what is left is the deterministic payload."""
    if isinstance(obj, dict):
        return {k: strip_meta(v) for k, v in obj.items() if k != "meta"}
    if isinstance(obj, list):
        return [strip_meta(v) for v in obj]
    return obj


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"not a rational number: {text!r}") from None


def _partition(text: str) -> tuple:
    text = text.strip().strip("()[]")
    if not text:
        return ()
    try:
        parts = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InvalidInput(f"not a partition: {text!r}") from None
    if any(x < 0 for x in parts) or parts != sorted(parts, reverse=True):
        raise InvalidInput(f"not a partition: {text!r}")
    return P.partition(parts)


def _table(rows, headers) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    def line(r):
        cells = [r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        return "  ".join(cells).rstrip()

    out = [line(headers), line(["-" * w for w in widths])]
    out.extend(line(r) for r in rows)
    return "\n".join(out)


# ---------------------------------------------------------------------------
# Subcommands: each returns (payload, human text, passed)
# ---------------------------------------------------------------------------

def cmd_kac_table(a):
    pair = M.validate(a.u, a.v)
    tabs = M.kac_tables(pair)
    data = tabs.to_json()
    data["degrees"] = {k: fmt_q(x) for k, x in M.degree_bounds(pair).items()}
    text = [f"u={pair.u} v={pair.v} k={fmt_q(pair.k)} xi^2={fmt_q(pair.xi2)}"]
    for name, key in (("NS table", "ns_table"), ("R table", "r_table"), ("R reduced", "r_reduced")):
        text.append("")
        text.append(name)
        text.append(_table([[e["i"], e["j"], e["lambda"], e["s"], e["q"]] for e in data[key]],
                           ["i", "j", "lambda", "s", "q"]))
    return data, "\n".join(text), True


def _sector(a, allowed=("ns", "r")):
    s = a.sector.lower()
    if s not in allowed:
        raise SectorMismatch(f"sector must be one of {', '.join(allowed)} (got {a.sector!r})")
    return s


def cmd_zhu_image(a):
    pair = M.validate(a.u, a.v)
    sectors = [_sector(a)] if a.sector else ["ns", "r"]
    data = {"pair": pair.to_json(), "images": [M.zhu_image(pair, s).to_json() for s in sectors]}
    text = []
    for s in sectors:
        im = M.zhu_image(pair, s)
        x = " x_0" if im.has_x_factor else ""
        text.append(f"{s.upper()}: e_0^{im.e_power}{x} g({im.polynomial.var}) on {im.acts_on}")
        text.append(f"  g = {im.polynomial!r}")
    return data, "\n".join(text), True


def cmd_classify(a):
    pair = M.validate(a.u, a.v)
    mods = M.classify(pair)
    if a.sector:
        sec = _sector(a)
        mods = [m for m in mods if m.sector == sec]
    data = {"pair": pair.to_json(), "modules": [m.to_json() for m in mods]}
    rows = [[str(m), ",".join(map(str, m.label)), "yes" if m.parity_reversal else "no"] for m in mods]
    return data, _table(rows, ["module", "label", "parity reversal"]), True


def cmd_spectrum(a):
    pair = M.validate(a.u, a.v)
    if not (1 <= a.i < pair.u and 0 <= a.j < pair.v):
        raise OutOfRange(f"need 1 <= i < {pair.u} and 0 <= j < {pair.v} (got i={a.i}, j={a.j})")
    lam, s, q = M.spectrum(pair, a.i, a.j)
    sector = "ns" if (a.i + a.j) % 2 else "r"
    data = {"pair": pair.to_json(), "i": a.i, "j": a.j, "sector": sector,
            "lambda": fmt_q(lam), "s": fmt_q(s), "q": fmt_q(q)}
    text = f"({a.i},{a.j}) {sector.upper()}: lambda={fmt_q(lam)} s={fmt_q(s)} q={fmt_q(q)}"
    return data, text, True


def cmd_jack(a):
    lam = _partition(a.partition)
    t = _rational(a.t)
    n = a.n if a.n is not None else max(len(lam), 1)
    if n < len(lam):
        raise InvalidInput(f"partition {list(lam)} has more than n={n} parts")
    poly = J.jack_poly(lam, t, n)
    data = {"partition": list(lam), "t": fmt_q(t), "n": n, "poly": poly.to_json()}
    rows = [[f"m{list(term['partition'])}", term["coeff"]] for term in data["poly"]["terms"]]
    return data, f"P_{list(lam)}^({fmt_q(t)}) in {n} variables\n" + _table(rows, ["monomial", "coeff"]), True


_CORR_SECTORS = {"ns+": "NS+", "ns-": "NS-", "r": "R"}


def cmd_correlator(a):
    sec = _CORR_SECTORS.get((a.sector or "ns+").lower())
    if sec is None:
        raise SectorMismatch(f"sector must be one of ns+, ns-, r (got {a.sector!r})")
    if a.n < 0:
        raise OutOfRange(f"n must be >= 0 (got {a.n})")
    val = C.bc_correlator(a.n, a.m, sec)
    data = {"n": a.n, "m": a.m, "sector": sec, "value": val.to_json()}
    return data, f"<prod (c z^{a.m} - b)>_{sec}, {2 * a.n} points:\n{val!r}", True


def cmd_verify(a):
    name = a.suite
    if name == "svimage":
        if (a.u is None) != (a.v is None):
            raise InvalidInput("give both u and v, or neither")
        pairs = [(a.u, a.v)] if a.u is not None else list(DEFAULT_PAIRS)
        for u, v in pairs:
            M.validate(u, v)
        sectors = (_sector(a),) if a.sector else ("ns", "r")
        res = svimage_suite(pairs, sectors)
        reports = res.pop("reports")
        res["reports"] = [r.to_json() for r in reports]
    else:
        if a.u is not None:
            raise InvalidInput(f"suite {name} takes no u v arguments")
        kwargs = {}
        if a.max_n is not None:
            if a.max_n < 1:
                raise OutOfRange(f"--max-n must be positive (got {a.max_n})")
            kwargs[{"jack": "max_n", "pfaffian": "max_n", "correlator": "max_n",
                    "ospalg": "max_lambda"}[name]] = a.max_n
        res = SUITES[name](**kwargs)
    lines = [f"[{'PASS' if c['passed'] else 'FAIL'}] {c['name']}" for c in res["checks"]]
    n_ok = sum(c["passed"] for c in res["checks"])
    lines.append(f"{name}: {n_ok}/{len(res['checks'])} checks passed")
    return res, "\n".join(lines), res["passed"]


COMMANDS = {
    "kac-table": cmd_kac_table,
    "zhu-image": cmd_zhu_image,
    "classify": cmd_classify,
    "spectrum": cmd_spectrum,
    "jack": cmd_jack,
    "correlator": cmd_correlator,
    "verify": cmd_verify,
}


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so run() owns the exit code."""

    def error(self, message):
        raise InvalidInput(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    p = _Parser(prog="ospzhu", description="osp(1|2) minimal models: tables, Zhu images, checks")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def uv(sp):
        sp.add_argument("u", type=int)
        sp.add_argument("v", type=int)

    sp = sub.add_parser("kac-table", parents=[common], help="Kac tables and degree bounds")
    uv(sp)
    sp = sub.add_parser("zhu-image", parents=[common], help="predicted Zhu-algebra images")
    uv(sp)
    sp.add_argument("--sector")
    sp = sub.add_parser("classify", parents=[common], help="simple relaxed modules")
    uv(sp)
    sp.add_argument("--sector")
    sp = sub.add_parser("spectrum", parents=[common], help="lambda, s, q for one Kac label")
    uv(sp)
    sp.add_argument("i", type=int)
    sp.add_argument("j", type=int)
    sp = sub.add_parser("jack", parents=[common], help="Jack polynomial in monomial basis")
    sp.add_argument("partition", help="comma separated parts, e.g. 2,1")
    sp.add_argument("t", help="Jack parameter, rational")
    sp.add_argument("n", type=int, nargs="?", default=None, help="number of variables")
    sp = sub.add_parser("correlator", parents=[common], help="bc ghost correlator")
    sp.add_argument("n", type=int, help="2n insertion points")
    sp.add_argument("m", type=int)
    sp.add_argument("--sector", default="ns+", help="ns+, ns- or r")
    sp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    sp.add_argument("--suite", required=True, choices=sorted(SUITES))
    sp.add_argument("u", type=int, nargs="?", default=None)
    sp.add_argument("v", type=int, nargs="?", default=None)
    sp.add_argument("--sector")
    sp.add_argument("--max-n", type=int, default=None)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        data, text, passed = COMMANDS[args.command](args)
    except (InvalidInput, PoleAtParameter) as exc:
        stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 2
    out = canonical(data) if args.json else text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        stdout.write(out + "\n")
    return 0 if passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
