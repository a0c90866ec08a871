"""Command line driver: run the pipeline or a single stage from a JSON field spec.

    sextic-pib solve --config example1 --report out.json
    sextic-pib verify --config example1 0,0,1,0,0,0
    sextic-pib unit 94

Exit codes: 0 success, 2 config error, 3 numeric exhaustion.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass, field

from . import __version__, polyalg
from .absolute_solver import (GeneratorRecord, JPolyContext, NumericExhausted, canonicalize,
                              describe, reciprocal_generator, scan_k)
from .config import ConfigError, load_config
from .quadfield import QuadField
from .relative_solver import fallback_solutions, merge_solutions, solve_all
from .sextic_field import KElement, NotPrimitive, build_embeddings, index
from .sieve import find_split_prime, siegel_sieve, split_primes
from .unit_bounds import exponent_box

log = logging.getLogger("sextic_pib")

ORACLE_MAX = 10


@dataclass
class RunReport:
    fingerprint: str
    C: str
    bounds: dict = field(default_factory=dict)
    sieve: dict = field(default_factory=dict)
    relative: list = field(default_factory=list)
    generators: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    version: str = __version__

    def to_json(self, timings=True):
        d = asdict(self)
        if not timings:
            d.pop("timings")
        return json.dumps(d, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        return cls(**json.loads(text))


def fingerprint(spec):
    blob = json.dumps(spec.to_config(), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _timed(timings, key, fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    timings[key] = round(time.perf_counter() - t0, 4)
    return out


def run_relative(cfg, primes=2, threads=1, verbose=False, timings=None):
    """Step 1: bounds, sieve and relative solutions.  Returns (bounds, sieve stats, solutions, table)."""
    spec = cfg.spec
    timings = {} if timings is None else timings
    table = _timed(timings, "embeddings", build_embeddings, spec, cfg.linear_precision)
    report = _timed(timings, "bounds", exponent_box, cfg.C, spec, table)
    B0 = cfg.B0 if cfg.B0 is not None else report.B0
    plans = _timed(timings, "primes", split_primes, spec, primes, cfg.prime_start)
    t0 = time.perf_counter()
    survivors = None
    for plan in plans:
        s = set(siegel_sieve(plan, B0, embeddings=(1, 2), threads=threads))
        survivors = s if survivors is None else survivors & s
    survivors = sorted(survivors)
    timings["sieve"] = round(time.perf_counter() - t0, 4)
    sols = _timed(timings, "relative_solve", solve_all, survivors, spec, table)
    fb = _timed(timings, "fallback", fallback_solutions, spec, table, cfg.C)
    rel = merge_solutions(sols, fb)
    bounds = report.as_dict()
    bounds["B0_used"] = B0
    stats = {"primes": [p.p for p in plans], "box_size": (2 * B0 + 1) ** spec.h,
             "survivors": len(survivors)}
    if verbose:
        stats["survivor_list"] = [list(t) for t in survivors]
    return bounds, stats, rel, table


def run_solve(cfg, primes=2, threads=1, verbose=False):
    """Full pipeline: bounds, sieve, relative solutions, k-scan and canonical generator classes."""
    if isinstance(cfg, str):
        cfg = load_config(cfg)
    spec = cfg.spec
    timings = {}
    bounds, stats, rel, table = run_relative(cfg, primes, threads, verbose, timings)
    ctx = JPolyContext(spec, cfg.jpoly_precision)
    t0 = time.perf_counter()
    records = []
    for i, sol in enumerate(rel):
        records.extend(scan_k(sol, spec, table, cfg.C, ctx, rel_id=i))
    classes = canonicalize(records)
    timings["k_scan"] = round(time.perf_counter() - t0, 4)
    gens = []
    for r in classes:
        d = r.as_dict()
        d["element"] = describe(r.coords)
        gens.append(d)
    return RunReport(fingerprint(spec), cfg.C_text, bounds, stats,
                     [s.as_dict() for s in rel], gens, timings)


def run_oracle(cfg, c):
    """Canonical index-1 classes with a1 = 0 and all of |a2|, |x1|, |x2|, |y1|, |y2| <= c."""
    if isinstance(cfg, str):
        cfg = load_config(cfg)
    if c > ORACLE_MAX:
        raise ValueError(f"oracle bound {c} exceeds {ORACLE_MAX}")
    if c < 0:
        raise ValueError("oracle bound must be nonnegative")
    spec = cfg.spec
    rng = range(-c, c + 1)
    found = []
    for a2, x1, x2, y1, y2 in itertools.product(rng, repeat=5):
        # +-gamma are equivalent: keep first nonzero of (x1, x2, y1, y2, a2) positive
        nz = next((v for v in (x1, x2, y1, y2, a2) if v), 0)
        if nz <= 0:
            continue
        try:
            if index(KElement((0, a2, x1, x2, y1, y2)), spec) == 1:
                found.append(GeneratorRecord((a2, x1, x2, y1, y2), {"oracle": c}, True))
        except NotPrimitive:
            continue
    return canonicalize(found)


def run_verify(cfg, coords):
    """Exact index of the element with the given six coordinates, or "not primitive"."""
    if isinstance(cfg, str):
        cfg = load_config(cfg)
    if len(coords) != 6:
        raise ValueError(f"expected six coordinates, got {len(coords)}")
    try:
        return index(KElement(tuple(int(c) for c in coords)), cfg.spec)
    except NotPrimitive:
        return "not primitive"


def _parse_ints(text):
    return [int(t) for t in text.replace(",", " ").split()]


def _emit(obj, path):
    text = obj if isinstance(obj, str) else json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    print(text)


def build_parser():
    p = argparse.ArgumentParser(prog="sextic-pib", description=__doc__.splitlines()[0])
    p.add_argument("--verbose", action="store_true", help="log progress, include survivor lists")
    sub = p.add_subparsers(dest="cmd", required=True)

    def with_config(sp):
        sp.add_argument("--config", required=True,
                        help="JSON field spec, or example1/example2/example3")
        sp.add_argument("--report", help="write the JSON result here as well")
        return sp

    sp = with_config(sub.add_parser("solve", help="full pipeline"))
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--primes", type=int, default=2, help="number of sieve primes")
    sp = with_config(sub.add_parser("relative", help="bounds, sieve and relative solutions"))
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--primes", type=int, default=2)
    sp = with_config(sub.add_parser("sieve", help="sieve the exponent box at one prime"))
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--B0", type=int, help="box radius (default: computed bound)")
    sp.add_argument("--embedding", type=int, choices=(1, 2), action="append",
                    help="congruence(s) to impose (default 1)")
    sp = with_config(sub.add_parser("verify", help="exact index of an element"))
    sp.add_argument("coords", help="six integers a1,a2,x1,x2,y1,y2")
    sp = with_config(sub.add_parser("oracle", help="exhaustive search in a small box"))
    sp.add_argument("--oracle-bound", type=int, default=3)
    sp = sub.add_parser("reciprocal", help="reversed-coefficient generator of a unit root")
    sp.add_argument("--config", help="field spec whose absolute polynomial is used")
    sp.add_argument("--poly", help="monic integer polynomial, coefficients highest degree first")
    sp.add_argument("--report")
    sp = sub.add_parser("unit", help="fundamental unit of Q(sqrt(m))")
    sp.add_argument("m", type=int)
    sp.add_argument("--report")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericExhausted as exc:
        print(f"numeric exhaustion: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args):
    cmd = args.cmd
    if cmd == "unit":
        q = QuadField(args.m)
        _emit({"m": args.m, "eta": list(q.eta), "norm": q.norm(q.eta),
               "omega": "sqrt(m)" if not q.one_mod_four else "(1+sqrt(m))/2"}, args.report)
        return 0
    if cmd == "reciprocal":
        if args.poly:
            f = list(reversed(_parse_ints(args.poly)))
            coeffs = reciprocal_generator(f)
        elif args.config:
            spec = load_config(args.config).spec
            f = spec.g
            coeffs = reciprocal_generator(f, spec)
        else:
            raise ValueError("reciprocal needs --poly or --config")
        _emit({"f": polyalg.to_str(f), "power_basis": coeffs}, args.report)
        return 0
    cfg = load_config(args.config)
    if cmd == "solve":
        rep = run_solve(cfg, args.primes, args.threads, args.verbose)
        _emit(rep.to_json(), args.report)
    elif cmd == "relative":
        timings = {}
        bounds, stats, rel, _ = run_relative(cfg, args.primes, args.threads, args.verbose, timings)
        _emit({"bounds": bounds, "sieve": stats, "relative": [s.as_dict() for s in rel],
               "timings": timings}, args.report)
    elif cmd == "sieve":
        spec = cfg.spec
        plan = find_split_prime(spec, cfg.prime_start)
        if args.B0 is not None:
            B0 = args.B0
        elif cfg.B0 is not None:
            B0 = cfg.B0
        else:
            B0 = exponent_box(cfg.C, spec, build_embeddings(spec, cfg.linear_precision)).B0
        emb = tuple(args.embedding or (1,))
        t0 = time.perf_counter()
        surv = siegel_sieve(plan, B0, emb, args.threads)
        dt = time.perf_counter() - t0
        out = {"p": plan.p, "roots": list(plan.roots), "B0": B0, "embeddings": list(emb),
               "box_size": (2 * B0 + 1) ** spec.h, "survivors": len(surv),
               "seconds": round(dt, 4)}
        if args.verbose:
            out["survivor_list"] = [list(t) for t in surv]
        _emit(out, args.report)
    elif cmd == "verify":
        _emit({"coords": _parse_ints(args.coords),
               "index": run_verify(cfg, _parse_ints(args.coords))}, args.report)
    elif cmd == "oracle":
        classes = run_oracle(cfg, args.oracle_bound)
        _emit({"bound": args.oracle_bound,
               "classes": [{"coords": list(r.coords), "element": describe(r.coords)}
                           for r in classes]}, args.report)
    return 0


if __name__ == "__main__":
    sys.exit(main())
