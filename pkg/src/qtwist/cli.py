"""Command line: run check suites, expand series, list Fock basis states, summarize reports.

Exit codes: 0 all PASS, 1 some FAIL, 2 invalid configuration, 3 exactness cap overflow.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import hopf
from .fock import FockConfig, basis
from .lattice import BUILTIN_GRAMS, Cocycle, Lattice, LatticeError
from .qseries import g_series, qpow, twisted_qpow
from .relcheck import SUITES, CheckWindow, GFCache, SuiteOverflow, run_suite
from .report import CapOverflow
from .scalars import ExcludedPointError, RationalDomain, SymbolicDomain, random_points
from .vertex import VERTEX_UNIT, Realization

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_OVERFLOW = 0, 1, 2, 3
ALL_SUITES = SUITES + ("hopf",)
MUTATIONS = ("vertex_coeff", "heis_factor", "cocycle")
CONFIG_KEYS = ("lattice", "scalar", "degree", "modes", "suites", "out", "cap", "mutation", "parallelism")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    lattice: Lattice
    lattice_spec: object
    scalar: object = "symbolic"
    degree: int = 3
    modes: int = 3
    cap: int | None = None
    suites: list = field(default_factory=list)
    out: str | None = None
    mutation: str | None = None
    parallelism: int = 1

    def domains(self):
        s = self.scalar
        if s == "symbolic":
            return [SymbolicDomain()]
        out = []
        if "rational" in s:
            out.append(RationalDomain(Fraction(str(s["rational"]))))
        if "random_points" in s:
            out.extend(RationalDomain(v) for v in random_points(int(s["random_points"])))
        return out

    def window(self) -> CheckWindow:
        return CheckWindow(self.degree, self.modes, self.cap)

    def echo(self) -> dict:
        return {"lattice": self.lattice_spec, "scalar": self.scalar, "degree": self.degree, "modes": self.modes,
                "cap": self.window().D, "suites": list(self.suites), "mutation": self.mutation}


def parse_lattice(spec) -> Lattice:
    if isinstance(spec, str):
        s = spec.strip()
        if s.startswith("["):
            try:
                spec = json.loads(s)
            except json.JSONDecodeError as e:
                raise ConfigError("lattice gram matrix is not valid JSON: %s" % e) from None
        else:
            try:
                return Lattice.builtin(s)
            except LatticeError as e:
                raise ConfigError(str(e)) from None
    try:
        return Lattice(tuple(tuple(r) for r in spec), "custom")
    except (LatticeError, TypeError) as e:
        raise ConfigError(str(e)) from None


def _int(d, key, default, lo=0):
    x = d.get(key, default)
    if x is None:
        return None
    if isinstance(x, bool) or not isinstance(x, int) or x < lo:
        raise ConfigError("%s must be an integer >= %d" % (key, lo))
    return x


def parse_scalar(s):
    if s in (None, "symbolic"):
        return "symbolic"
    if isinstance(s, str):
        if s.startswith("rational:"):
            s = {"rational": s.split(":", 1)[1]}
        elif s.startswith("random:"):
            s = {"random_points": s.split(":", 1)[1]}
        else:
            raise ConfigError("scalar must be 'symbolic', 'rational:p/q' or 'random:k'")
    if not isinstance(s, dict) or not s or set(s) - {"rational", "random_points"}:
        raise ConfigError("scalar must be 'symbolic' or an object with keys rational and/or random_points")
    out = {}
    if "rational" in s:
        try:
            v0 = Fraction(str(s["rational"]))
        except (ValueError, ZeroDivisionError):
            raise ConfigError("rational point %r is not a rational number" % s["rational"]) from None
        if v0 in (0, 1, -1):
            raise ConfigError("rational point v0 = %s is excluded (must not be 0, 1 or -1)" % v0)
        out["rational"] = str(v0)
    if "random_points" in s:
        try:
            k = int(s["random_points"])
        except (TypeError, ValueError):
            raise ConfigError("random_points must be an integer") from None
        if k < 1:
            raise ConfigError("random_points must be >= 1")
        out["random_points"] = k
    return out


def default_suites(lat: Lattice) -> list:
    simply_laced = all(lat[i, j] in (0, -1) for i in range(lat.rank) for j in range(lat.rank) if i != j)
    main = "thm24" if simply_laced else "thm44"
    return ["heisenberg", "ope", "phipsi", main, "delta", "series", "hopf"]


def load_config(d: dict) -> RunConfig:
    if not isinstance(d, dict):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(d) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError("unknown config key(s): %s" % ", ".join(unknown))
    if "lattice" not in d:
        raise ConfigError("config needs a lattice")
    lat = parse_lattice(d["lattice"])
    suites = d.get("suites") or default_suites(lat)
    if isinstance(suites, str):
        suites = [s for s in suites.split(",") if s]
    bad = [s for s in suites if s not in ALL_SUITES]
    if bad:
        raise ConfigError("unknown suite(s) %s (known: %s)" % (", ".join(bad), ", ".join(ALL_SUITES)))
    mutation = d.get("mutation")
    if mutation is not None and mutation not in MUTATIONS:
        raise ConfigError("mutation must be one of %s" % ", ".join(MUTATIONS))
    cfg = RunConfig(lat, d["lattice"], parse_scalar(d.get("scalar")), _int(d, "degree", 3), _int(d, "modes", 3),
                    _int(d, "cap", None), list(suites), d.get("out"), mutation, _int(d, "parallelism", 1, 1))
    try:
        cfg.window()
    except ValueError as e:
        raise ConfigError(str(e)) from None
    return cfg


def build_realization(cfg: RunConfig, domain) -> Realization:
    lat = cfg.lattice
    if cfg.mutation == "heis_factor":
        fc = FockConfig(lat, heis_factor=Fraction(1))
    elif cfg.mutation == "cocycle":
        fc = FockConfig(lat, Cocycle(lat, trivial=True))
    else:
        fc = FockConfig(lat)
    if cfg.mutation == "vertex_coeff":
        return Realization(fc, domain, vertex_coeff=VERTEX_UNIT)
    return Realization(fc, domain)


def run_config(cfg: RunConfig) -> list:
    """All report records for a configuration (deterministic order)."""
    records = []
    win = cfg.window()
    for dom in cfg.domains():
        real = build_realization(cfg, dom)
        cache = GFCache(real)
        for suite in cfg.suites:
            if suite == "hopf":
                if dom == cfg.domains()[0]:
                    records.extend(hopf.run_hopf(cfg.lattice.rank))
                continue
            records.extend(run_suite(real, suite, win, cache))
            if suite == "literal" and dom == cfg.domains()[0]:
                records.extend(r for r in hopf.run_hopf(cfg.lattice.rank, literal=True) if not r.passed)
    return records


def make_report(cfg: RunConfig, records, timing: bool = True) -> dict:
    checks = [r.to_dict(timing) for r in records]
    failed = sum(1 for r in records if not r.passed)
    return {"config": cfg.echo(), "checks": checks,
            "summary": {"total": len(records), "passed": len(records) - failed, "failed": failed,
                        "status": "PASS" if not failed else "FAIL"}}


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# -- subcommands -------------------------------------------------------------

def cmd_check(args) -> int:
    try:
        if args.config:
            with open(args.config) as f:
                d = json.load(f)
        else:
            d = {}
        for key in ("lattice", "scalar", "degree", "modes", "cap", "out", "mutation"):
            val = getattr(args, key)
            if val is not None:
                d[key] = val
        if args.suite:
            d["suites"] = [s for x in args.suite for s in x.split(",") if s]
        d.setdefault("lattice", "A1")
        cfg = load_config(d)
    except (OSError, json.JSONDecodeError, ConfigError, ExcludedPointError) as e:
        print("invalid config: %s" % e, file=sys.stderr)
        return EXIT_CONFIG
    try:
        records = run_config(cfg)
    except SuiteOverflow as e:
        print("cap overflow in check %s: %s" % (e.check, e), file=sys.stderr)
        return EXIT_OVERFLOW
    except CapOverflow as e:
        print("cap overflow: %s" % e, file=sys.stderr)
        return EXIT_OVERFLOW
    report = make_report(cfg, records, timing=not args.no_timing)
    text = dump_report(report)
    if cfg.out:
        with open(cfg.out, "w") as f:
            f.write(text)
    if not args.quiet:
        for r in records:
            print(r.line())
        s = report["summary"]
        print("%s: %d checks, %d passed, %d failed" % (s["status"], s["total"], s["passed"], s["failed"]))
    return EXIT_OK if report["summary"]["failed"] == 0 else EXIT_FAIL


def expand_coefficients(series: str, order: int, pairing: int | None = None, r: int | None = None) -> list:
    if order < 0:
        raise ConfigError("order must be >= 0")
    if series == "G":
        if pairing is None:
            raise ConfigError("G needs --pairing")
        s = g_series(pairing, order).coefficients
    elif series in ("qpow", "twisted_qpow"):
        if r is None:
            raise ConfigError("%s needs --r" % series)
        s = (qpow if series == "qpow" else twisted_qpow)(r, order)
    else:
        raise ConfigError("unknown series %r" % series)
    return [s[k] for k in range(order + 1)]


def cmd_expand(args) -> int:
    try:
        coeffs = expand_coefficients(args.series, args.order, args.pairing, args.r)
    except ConfigError as e:
        print("invalid parameters: %s" % e, file=sys.stderr)
        return EXIT_CONFIG
    if args.json:
        print(json.dumps({"series": args.series, "pairing": args.pairing, "r": args.r,
                          "coefficients": [str(c) for c in coeffs]}, indent=2, sort_keys=True))
    else:
        for k, c in enumerate(coeffs):
            print("c%d = %s" % (k, c))
    return EXIT_OK


def cmd_state(args) -> int:
    try:
        lat = parse_lattice(args.lattice)
        beta = None
        if args.beta:
            beta = tuple(int(x) for x in args.beta.split(","))
            if len(beta) != lat.rank:
                raise ConfigError("beta needs %d entries" % lat.rank)
        if args.degree < 0:
            raise ConfigError("degree must be >= 0")
    except (ConfigError, ValueError) as e:
        print("invalid query: %s" % e, file=sys.stderr)
        return EXIT_CONFIG
    states = basis(FockConfig(lat), args.degree, beta)
    for s in states:
        print(s)
    print("dimension %d" % len(states))
    return EXIT_OK


def cmd_report(args) -> int:
    try:
        with open(args.path) as f:
            rep = json.load(f)
        checks = rep["checks"]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
        print("unreadable report: %s" % e, file=sys.stderr)
        return EXIT_CONFIG
    failed = 0
    for c in checks:
        p = ", ".join("%s=%s" % kv for kv in sorted(c.get("params", {}).items()))
        line = "%s %s(%s)" % (c["status"], c["relation"], p)
        if c["status"] != "PASS":
            failed += 1
            line += " witness=%s" % json.dumps(c.get("witness"), sort_keys=True)
        print(line)
    print("%s: %d checks, %d failed" % ("PASS" if not failed else "FAIL", len(checks), failed))
    return EXIT_OK if not failed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qtwist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run verification suites")
    c.add_argument("--config", help="JSON config file (flags override its keys)")
    c.add_argument("--lattice", help="built-in name (%s) or JSON gram matrix" % ", ".join(BUILTIN_GRAMS))
    c.add_argument("--suite", action="append", help="suite name(s): %s" % ", ".join(ALL_SUITES))
    c.add_argument("--degree", type=int, help="source degree D_src")
    c.add_argument("--modes", type=int, help="mode window M")
    c.add_argument("--cap", type=int, help="intermediate degree cap D (default D_src + 2M)")
    c.add_argument("--scalar", help="symbolic, rational:p/q or random:k")
    c.add_argument("--mutation", choices=MUTATIONS, help="run with a deliberately perturbed convention")
    c.add_argument("--out", help="write the JSON report here")
    c.add_argument("--no-timing", action="store_true", help="omit wall times (byte-identical reports)")
    c.add_argument("--quiet", action="store_true")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("expand", help="print series coefficients")
    e.add_argument("series", choices=("G", "qpow", "twisted_qpow"))
    e.add_argument("--pairing", type=int)
    e.add_argument("--r", type=int)
    e.add_argument("--order", type=int, default=5)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_expand)

    s = sub.add_parser("state", help="list Fock basis states of a degree")
    s.add_argument("--lattice", default="A1")
    s.add_argument("--degree", type=int, default=0)
    s.add_argument("--beta", help="lattice label as comma-separated integers")
    s.set_defaults(func=cmd_state)

    r = sub.add_parser("report", help="summarize a JSON report")
    r.add_argument("path")
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
