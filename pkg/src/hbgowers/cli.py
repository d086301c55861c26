"""Command-line front end: sweep runner with CSV outputs and JSON manifests.

Verbs: sieve, unorm, ap, cube, expect, ineq, ww, rtt, decay, approx.
Exit codes: 0 success, 2 precondition violation, 3 over the time budget.

Weight grammar for --weight:
    vonmangoldt            sieved Lambda up to N (uses --cache-dir if given)
    hb:Q=8                 dyadic block weight Lambda_Q
    hbsum:T=8              running total Lambda_{<=T}
    twist:q=3,sigma=0.9    Lambda_{<=T} twisted by (1 - n^{sigma-1} chi_q(n));
                           T from --T, defaulting to the N-adapted schedule

System grammar for --system / --system2:
    rotation:alpha=0.4142135623730951[,x=0.25]
    doubling:x=sqrt2       (also sqrt3, sqrt5, golden, p/q, or a float)
    signs:seed=7

CSV cells are written with shortest-roundtrip float repr, so reruns with the
same configuration are byte-identical; the append-only ``manifest.jsonl``
carries timestamps, parameters and output digests.

A startup micro-benchmark calibrates the cost model c * N^2 log N for the
U^3 paths; work estimated over --budget-seconds is refused with exit code 3
before any heavy allocation.
"""

from __future__ import annotations

import argparse
import configparser
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from math import log2
from pathlib import Path

import numpy as np

from hbgowers import arith, averages, cube, gowers, hb_model
from hbgowers.calibration import INEQ_CONSTANTS


class Precondition(Exception):
    pass


class BudgetExceeded(Exception):
    pass


# ---------------------------------------------------------------------------
# cost model


_u3_coeff_cache: list[float] = []


def _u3_coeff() -> float:
    """Seconds per (N^2 log2 N) unit of U^3 work, micro-benchmarked once."""
    if not _u3_coeff_cache:
        probe = gowers.Series(np.random.default_rng(0).standard_normal(256))
        best = min(_timed(lambda: gowers.gowers_u3_fast(probe)) for _ in range(2))
        _u3_coeff_cache.append(best / (256.0**2 * log2(256)))
    return _u3_coeff_cache[0]


def _timed(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def estimate_u3_seconds(N: int) -> float:
    return _u3_coeff() * N * N * log2(max(N, 2))


def check_budget(estimate: float, budget: float, what: str) -> None:
    if estimate > budget:
        raise BudgetExceeded(
            f"{what}: estimated {estimate:.1f}s exceeds budget {budget:.1f}s")


# ---------------------------------------------------------------------------
# config and manifest


@dataclass
class SweepConfig:
    """Defaults and sweep ranges, loadable from an INI file ([sweep] section)."""

    ns: list[int] = field(default_factory=list)
    qs: list[int] = field(default_factory=list)
    systems: list[str] = field(default_factory=list)
    seeds: list[int] = field(default_factory=list)
    oversample: int | None = None
    threads: int | None = None
    cache_dir: str | None = None
    budget_seconds: float | None = None

    @classmethod
    def from_file(cls, path: str | Path) -> "SweepConfig":
        parser = configparser.ConfigParser()
        if not parser.read(path):
            raise Precondition(f"config file {path} not found or unreadable")
        sec = parser["sweep"] if parser.has_section("sweep") else parser["DEFAULT"]
        cfg = cls()
        if "ns" in sec:
            cfg.ns = [int(x) for x in sec["ns"].split(",") if x.strip()]
        if "qs" in sec:
            cfg.qs = [int(x) for x in sec["qs"].split(",") if x.strip()]
        if "systems" in sec:
            cfg.systems = [x.strip() for x in sec["systems"].split(";") if x.strip()]
        if "seeds" in sec:
            cfg.seeds = [int(x) for x in sec["seeds"].split(",") if x.strip()]
        for key in ("oversample", "threads"):
            if key in sec:
                setattr(cfg, key, int(sec[key]))
        if "cache_dir" in sec:
            cfg.cache_dir = sec["cache_dir"]
        if "budget_seconds" in sec:
            cfg.budget_seconds = float(sec["budget_seconds"])
        return cfg


@dataclass
class RunManifest:
    command: str
    params: dict
    started: str
    finished: str = ""
    duration_s: float = 0.0
    outputs: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    version: str = ""

    def add_output(self, path: Path) -> None:
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        rows = max(0, path.read_text().count("\n") - 1) if path.suffix == ".csv" else None
        self.outputs.append({"path": str(path), "sha256": digest, "rows": rows})

    def write(self, out_dir: Path) -> None:
        from hbgowers import __version__

        self.version = __version__
        line = json.dumps(self.__dict__, sort_keys=True)
        with open(out_dir / "manifest.jsonl", "a") as fh:
            fh.write(line + "\n")


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(float(x))  # float() strips numpy scalars to plain repr
    return str(x)


def write_csv(path: Path, header: list[str], rows: list[tuple]) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


# ---------------------------------------------------------------------------
# weight / system parsing


def _parse_kv(body: str) -> dict[str, str]:
    out = {}
    for item in body.split(","):
        if item:
            if "=" not in item:
                raise Precondition(f"malformed parameter {item!r}")
            k, v = item.split("=", 1)
            out[k.strip()] = v.strip()
    return out


_sieve_memo: dict[int, arith.SieveTables] = {}


def _sieve_for(N: int, cache_dir: str | None) -> arith.SieveTables:
    for limit, tables in _sieve_memo.items():
        if limit >= N:
            return tables
    if cache_dir:
        path = Path(cache_dir) / f"sieve_{N}.hbg"
        if path.exists():
            tables = arith.load_sieve(path)
            if tables.limit >= N:
                _sieve_memo[tables.limit] = tables
                return tables
    tables = arith.build_sieve(N)
    _sieve_memo[N] = tables
    if cache_dir:
        Path(cache_dir).mkdir(parents=True, exist_ok=True)
        arith.save_sieve(tables, Path(cache_dir) / f"sieve_{N}.hbg")
    return tables


def parse_weight(spec: str, N: int, T: int | None, cache_dir: str | None) -> hb_model.Weight:
    try:
        if spec == "vonmangoldt":
            return hb_model.vonmangoldt_weight(_sieve_for(N, cache_dir), N)
        if spec.startswith("hb:"):
            kv = _parse_kv(spec[3:])
            return hb_model.lambda_Q(int(kv["Q"]), N)
        if spec.startswith("hbsum:"):
            kv = _parse_kv(spec[6:])
            return hb_model.lambda_leq(int(kv["T"]), N)
        if spec.startswith("twist:"):
            kv = _parse_kv(spec[6:])
            params = hb_model.TwistParams(q0=int(kv["q"]), sigma=float(kv["sigma"]))
            T_eff = T if T is not None else hb_model.q_schedule(N)
            return hb_model.twist(hb_model.lambda_leq(T_eff, N), params)
    except (KeyError, ValueError) as exc:
        raise Precondition(f"bad weight spec {spec!r}: {exc}") from exc
    raise Precondition(f"unknown weight spec {spec!r}")


_NAMED_IRRATIONALS = {
    "sqrt2": 2.0**0.5, "sqrt3": 3.0**0.5, "sqrt5": 5.0**0.5,
    "golden": (5.0**0.5 - 1.0) / 2.0,
}


def parse_system(spec: str) -> averages.SystemDescriptor:
    try:
        kind, _, body = spec.partition(":")
        kv = _parse_kv(body)
        if kind == "rotation":
            raw = kv["alpha"]
            alpha = _NAMED_IRRATIONALS.get(raw, None)
            alpha = float(raw) if alpha is None else alpha % 1.0
            return averages.rotation(alpha, float(kv.get("x", 0.0)))
        if kind == "doubling":
            return averages.doubling(kv.get("x", "sqrt2"))
        if kind == "signs":
            return averages.random_signs(int(kv["seed"]))
    except (KeyError, ValueError) as exc:
        raise Precondition(f"bad system spec {spec!r}: {exc}") from exc
    raise Precondition(f"unknown system spec {spec!r}")


# ---------------------------------------------------------------------------
# verbs


def cmd_sieve(args, cfg: SweepConfig) -> dict:
    tables = _sieve_for(args.N, args.cache_dir)
    psi = float(tables.vonmangoldt[: args.N + 1].sum())
    n_primes = int(np.count_nonzero(
        tables.spf[2 : args.N + 1] == np.arange(2, args.N + 1)))
    print(f"sieve limit={args.N} primes={n_primes} psi={psi:.6f}")
    return {"limit": args.N, "primes": n_primes, "psi": psi}


def cmd_unorm(args, cfg: SweepConfig) -> dict:
    w = parse_weight(args.weight, args.N, args.T, args.cache_dir)
    rows = []
    for s in args.s:
        if s == 3:
            check_budget(estimate_u3_seconds(args.N), args.budget_seconds, f"U^3 at N={args.N}")
        res = gowers.gowers_normalized(gowers.Series(w.values, offset=w.start),
                                       args.N, s, workers=args.threads)
        rows.append((s, args.N, res.raw, res.normalizer, res.normalized))
        print(f"unorm s={s} N={args.N} norm={res.normalized!r}")
    out = Path(args.out_dir) / f"unorm_{args.weight.replace(':', '_').replace(',', '_')}_{args.N}.csv"
    write_csv(out, ["s", "N", "raw", "normalizer", "normalized"], rows)
    return {"csv": str(out), "norms": {str(r[0]): r[4] for r in rows}}


def cmd_ap(args, cfg: SweepConfig) -> dict:
    w = parse_weight(args.weight, args.N, args.T, args.cache_dir)
    twisted = args.weight.startswith("twist:")
    rows = []
    worst = 0.0
    for a in range(1, args.q + 1):
        s = hb_model.ap_sum(w, a, args.q, args.N)
        if twisted:
            kv = _parse_kv(args.weight[6:])
            params = hb_model.TwistParams(q0=int(kv["q"]), sigma=float(kv["sigma"]))
            main = hb_model.ap_main_term(a, args.q, args.N) - hb_model.ap_twisted_main_term(
                a, args.q, args.N, params)
        else:
            main = hb_model.ap_main_term(a, args.q, args.N)
        err = s - main
        rel = abs(err) / main if main else abs(err)
        if main:
            worst = max(worst, rel)
        rows.append((args.q, a, s, main, err, rel))
    out = Path(args.out_dir) / f"ap_q{args.q}_N{args.N}.csv"
    write_csv(out, ["q", "a", "sum", "main_term", "error", "rel_error"], rows)
    print(f"ap q={args.q} N={args.N} worst_rel_error={worst!r}")
    return {"csv": str(out), "worst_rel_error": worst}


def cmd_cube(args, cfg: SweepConfig) -> dict:
    if args.mask is not None:
        masks = [args.mask]
        if not 0 <= args.mask < 256:
            raise Precondition(f"--mask must be an 8-bit vertex mask, got {args.mask}")
    else:
        masks = list(range(256))  # --exhaustive and the default coincide
    rows = []
    for mask in masks:
        rows.append((mask, bin(mask).count("1"), int(cube.admissible(mask)),
                     cube.minimal_seed(mask)))
    out = Path(args.out_dir) / ("cube_masks.csv" if len(masks) > 1
                                else f"cube_mask_{masks[0]}.csv")
    write_csv(out, ["mask", "size", "admissible", "min_seed"], rows)
    n_adm = sum(r[2] for r in rows)
    print(f"cube masks={len(masks)} admissible={n_adm}")
    return {"csv": str(out), "admissible": n_adm}


def cmd_expect(args, cfg: SweepConfig) -> dict:
    tuples: list[tuple[int, ...]] = []
    if args.qs:
        vals = tuple(int(x) for x in args.qs.split(","))
        if len(vals) != 8:
            raise Precondition(f"--qs needs 8 comma-separated entries, got {len(vals)}")
        tuples.append(vals)
    if args.samples:
        rng = np.random.default_rng(args.seed)
        pool = [1, 2, 3, 5, 6, 7, 10]
        for _ in range(args.samples):
            tuples.append(tuple(int(pool[i]) for i in rng.integers(0, len(pool), 8)))
    if not tuples:
        raise Precondition("expect needs --qs and/or --samples")
    rows = []
    for qs in tuples:
        R = 1
        for q in qs:
            R *= q
        e = cube.ramanujan_cube_expectation(qs)
        rows.append((*qs, R, int(cube.rad4_divides(qs)), e, cube.expectation_bound(qs)))
    out = Path(args.out_dir) / f"expect_{len(tuples)}.csv"
    write_csv(out, [f"q{i}" for i in range(1, 9)] + ["R", "rad4_divides", "expectation", "bound"],
              rows)
    n_zero = sum(1 for r in rows if r[10] == 0)
    print(f"expect tuples={len(tuples)} zero_expectation={n_zero}")
    return {"csv": str(out), "tuples": len(tuples), "zero": n_zero}


def _random_bounded(rng, N: int) -> np.ndarray:
    re, im = rng.uniform(-1, 1, N), rng.uniform(-1, 1, N)
    return (re + 1j * im) / np.sqrt(2.0)


def cmd_ineq(args, cfg: SweepConfig) -> dict:
    w = parse_weight(args.weight, args.N, args.T, args.cache_dir)
    rng = np.random.default_rng(args.seed)
    names = list(INEQ_CONSTANTS) if args.name == "all" else [args.name]
    rows, violations = [], 0
    for trial in range(args.trials):
        f = _random_bounded(rng, args.N)
        g = _random_bounded(rng, args.N)
        gx = _random_bounded(rng, 2 * args.N * args.N).reshape(2 * args.N, args.N)
        for name in names:
            if name == "u2":
                res = averages.ineq_u2(f, w.values, args.N)
            elif name == "u3mod":
                res = averages.ineq_u3_modulated(f, w.values, args.N,
                                                 oversample=args.oversample)
            elif name == "u4conv":
                res = averages.ineq_u4_convolution(f, w.values, args.N)
            elif name == "rtt":
                res = averages.ineq_rtt(f, w.values, gx, args.N)
            elif name == "double":
                res = averages.ineq_double_recurrence(f, g, w.values, args.N)
            else:
                raise Precondition(f"unknown inequality {name!r}")
            bound = INEQ_CONSTANTS[name]
            ok = res.lhs <= bound * res.rhs * (1 + 1e-12)
            violations += 0 if ok else 1
            rows.append((name, args.N, trial, res.lhs, res.rhs, res.ratio))
    out = Path(args.out_dir) / f"ineq_{args.name}_N{args.N}.csv"
    write_csv(out, ["name", "N", "trial", "lhs", "rhs", "ratio"], rows)
    max_ratio = max((r[5] for r in rows), default=0.0)
    print(f"ineq name={args.name} trials={args.trials} violations={violations} "
          f"max_ratio={max_ratio!r}")
    return {"csv": str(out), "violations": violations, "max_ratio": max_ratio}


def cmd_ww(args, cfg: SweepConfig) -> dict:
    ns = cfg.ns or [args.N]
    system = parse_system(args.system)
    rows = []
    for N in ns:
        w = parse_weight(args.weight, N, args.T, args.cache_dir)
        f = averages.orbit(system, N)
        res = averages.ww_sup_grid(w, f, N, oversample=args.oversample)
        rows.append((N, res.theta_star, res.sup_modulus, res.grid_error_bound,
                     system.label(), args.weight))
        print(f"ww N={N} sup={res.sup_modulus!r} at theta={res.theta_star!r}")
    out = Path(args.out_dir) / f"ww_{system.kind}.csv"
    write_csv(out, ["N", "theta_star", "sup_modulus", "grid_error", "system", "weight"], rows)
    return {"csv": str(out), "sup": rows[-1][2]}


def cmd_rtt(args, cfg: SweepConfig) -> dict:
    ns = cfg.ns or [args.N]
    sys_f = parse_system(args.system)
    sys_g = parse_system(args.system2)
    rows = []
    for N in ns:
        w = parse_weight(args.weight, N, args.T, args.cache_dir)
        f = averages.orbit(sys_f, N)
        g = averages.orbit(sys_g, N)
        val = averages.rtt_average(w, f, g, N)
        rows.append((N, abs(val), sys_f.label(), sys_g.label(), args.weight))
        print(f"rtt N={N} modulus={abs(val)!r}")
    out = Path(args.out_dir) / f"rtt_{sys_f.kind}_{sys_g.kind}.csv"
    write_csv(out, ["N", "modulus", "system_f", "system_g", "weight"], rows)
    return {"csv": str(out), "modulus": rows[-1][1]}


def cmd_decay(args, cfg: SweepConfig) -> dict:
    qs = cfg.qs or args.qs
    rows = []
    premise = {}
    for Q in qs:
        P = hb_model.hb_period(Q)
        if args.mode in ("interval", "both"):
            # the interval must contain a full period of the Q-block weight,
            # so small --M is raised to P_Q before the feasibility estimate
            M = max(args.M, P)
            what = f"interval U^3 at M={M} (Q={Q}"
            what += f", raised to cover the period P_Q={P})" if M > args.M else ")"
            check_budget(estimate_u3_seconds(M), args.budget_seconds, what)
            w = hb_model.lambda_Q(Q, M)
            res = gowers.gowers_normalized(gowers.Series(w.values), M, 3,
                                           workers=args.threads)
            rows.append((Q, M, "interval", res.normalized))
            premise[str(Q)] = M >= Q**20
        if args.mode in ("cyclic", "both"):
            if P > 4096:
                raise Precondition(f"cyclic mode at Q={Q} needs P_Q <= 4096, got {P}")
            w = hb_model.lambda_Q(Q, P)
            rows.append((Q, P, "cyclic", gowers.gowers_cyclic(w.values, 3)))
    out = Path(args.out_dir) / f"decay_{args.mode}.csv"
    write_csv(out, ["Q", "M", "mode", "norm"], rows)
    stats = {"premise_m_ge_q20": premise} if premise else {}
    for mode in ("interval", "cyclic"):
        pts = [(log2(r[0]), np.log2(r[3])) for r in rows if r[2] == mode and r[3] > 0]
        if len(pts) >= 2:
            slope = float(np.polyfit([p[0] for p in pts], [p[1] for p in pts], 1)[0])
            stats[f"slope_{mode}"] = slope
            print(f"decay mode={mode} fitted_log2_slope={slope:.4f}")
    return {"csv": str(out), **stats}


def cmd_approx(args, cfg: SweepConfig) -> dict:
    ns = cfg.ns or args.ns
    rows = []
    for N in ns:
        if N > 10**7:
            raise Precondition(f"approx needs N <= 10^7, got {N}")
        if args.s == 3 and N > 1 << 15:
            raise Precondition(f"approx U^3 needs N <= 2^15, got {N}")
        Q = hb_model.q_schedule(N)
        tables = _sieve_for(N, args.cache_dir)
        diff = tables.vonmangoldt[1 : N + 1] - hb_model.lambda_leq(Q, N).values
        series = gowers.Series(diff, offset=1)
        u2 = gowers.gowers_normalized(series, N, 2).normalized
        u3 = ""
        if args.s == 3:
            check_budget(estimate_u3_seconds(N), args.budget_seconds, f"U^3 at N={N}")
            u3 = gowers.gowers_normalized(series, N, 3, workers=args.threads).normalized
        rows.append((N, Q, u2, u3))
        print(f"approx N={N} Q={Q} u2={u2!r}" + (f" u3={u3!r}" if u3 != "" else ""))
    out = Path(args.out_dir) / "approx.csv"
    write_csv(out, ["N", "Q", "u2", "u3"], rows)
    u2_seq = [r[2] for r in rows]
    monotone = all(a >= b for a, b in zip(u2_seq, u2_seq[1:]))
    print(f"approx u2_monotone_nonincreasing={monotone}")
    return {"csv": str(out), "u2": u2_seq, "u2_monotone": monotone}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hbg", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp):
        sp.add_argument("--N", type=int, default=1024)
        sp.add_argument("--Q", type=int, default=None)
        sp.add_argument("--T", type=int, default=None)
        sp.add_argument("--weight", default="hbsum:T=4")
        sp.add_argument("--oversample", type=int, default=8)
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--cache-dir", default=None)
        sp.add_argument("--budget-seconds", type=float, default=600.0)
        sp.add_argument("--config", default=None)
        sp.add_argument("--out-dir", default="results")
        sp.add_argument("--seed", type=int, default=1)

    sp = sub.add_parser("sieve", help="build (and optionally cache) sieve tables")
    common(sp)

    sp = sub.add_parser("unorm", help="normalized Gowers norms of a weight")
    common(sp)
    sp.add_argument("--s", type=int, nargs="+", default=[2, 3], choices=[1, 2, 3])

    sp = sub.add_parser("ap", help="progression sums against main terms")
    common(sp)
    sp.add_argument("--q", type=int, default=4)

    sp = sub.add_parser("cube", help="greening table over vertex masks")
    common(sp)
    sp.add_argument("--exhaustive", action="store_true",
                    help="all 256 masks (the default when --mask is absent)")
    sp.add_argument("--mask", type=int, default=None, help="single 8-bit mask")

    sp = sub.add_parser("expect", help="Ramanujan cube expectations")
    common(sp)
    sp.add_argument("--qs", default=None, help="8 comma-separated squarefree moduli")
    sp.add_argument("--samples", type=int, default=0)

    sp = sub.add_parser("ineq", help="transfer inequality trials")
    common(sp)
    sp.add_argument("--name", default="all",
                    choices=["all", "u2", "u3mod", "u4conv", "rtt", "double"])
    sp.add_argument("--trials", type=int, default=10)

    sp = sub.add_parser("ww", help="modulated sup over the frequency grid")
    common(sp)
    sp.add_argument("--system", default="rotation:alpha=sqrt2")

    sp = sub.add_parser("rtt", help="return-times pairing of two orbits")
    common(sp)
    sp.add_argument("--system", default="rotation:alpha=sqrt2")
    sp.add_argument("--system2", default="rotation:alpha=-0.41421356237309515")

    sp = sub.add_parser("decay", help="block-weight U^3 norms across Q")
    common(sp)
    sp.add_argument("--qs", type=int, nargs="+", default=[2, 4, 8])
    sp.add_argument("--M", type=int, default=1 << 15)
    sp.add_argument("--mode", default="both", choices=["interval", "cyclic", "both"])

    sp = sub.add_parser("approx", help="U^s distance from Lambda to its model")
    common(sp)
    sp.add_argument("--ns", type=int, nargs="+", default=[10_000, 100_000, 1_000_000])
    sp.add_argument("--s", type=int, default=2, choices=[2, 3])

    return p


_COMMANDS = {
    "sieve": cmd_sieve, "unorm": cmd_unorm, "ap": cmd_ap, "cube": cmd_cube,
    "expect": cmd_expect, "ineq": cmd_ineq, "ww": cmd_ww, "rtt": cmd_rtt,
    "decay": cmd_decay, "approx": cmd_approx,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = SweepConfig()
    try:
        if args.config:
            cfg = SweepConfig.from_file(args.config)
            for key in ("oversample", "threads", "budget_seconds"):
                val = getattr(cfg, key)
                if val is not None:
                    setattr(args, key, val)
            if cfg.cache_dir and not args.cache_dir:
                args.cache_dir = cfg.cache_dir
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        manifest = RunManifest(
            command=args.verb,
            params={k: v for k, v in vars(args).items() if k != "verb"},
            started=datetime.now(timezone.utc).isoformat(),
        )
        t0 = time.perf_counter()
        stats = _COMMANDS[args.verb](args, cfg)
        manifest.duration_s = time.perf_counter() - t0
        manifest.finished = datetime.now(timezone.utc).isoformat()
        manifest.stats = stats
        if isinstance(stats, dict) and "csv" in stats:
            manifest.add_output(Path(stats["csv"]))
        manifest.write(out_dir)
        return 0
    except (Precondition, ValueError) as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
