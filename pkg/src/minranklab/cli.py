"""Command-line front end and the reproducible experiment harness.

Exit codes: 0 success, 1 invalid input, 2 resource or budget limit,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .algebra import DEFAULT_TOL, QQ, RR, Domain, Matrix, mat_rank, real_rank
from .bounds import bounds_report, envelope
from .errors import InputError, MinrankLabError, ResourceLimit, VerificationFailure
from .graph import (
    ALPHA_LIMIT,
    CLIQUE_COVER_LIMIT,
    Graph,
    chromatic_number,
    clique_cover_exact,
    gnp,
    greedy_clique_cover,
    independence_number,
    trial_seed,
)
from .minrank import DEFAULT_BUDGET, certificate_json, exact_limit, load_certificate, minrank_exact, verify_certificate

SCHEMA = "minrank-report/1"
COLUMNS = ("n", "p", "seed", "trial", "alpha", "cc", "cc_mode", "minrank_lo", "minrank_hi",
           "status", "theory_lower", "reference_scale", "ratio")

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_VERIFY = 0, 1, 2, 3


@dataclass(frozen=True)
class ExperimentConfig:
    n_list: tuple[int, ...]
    p_list: tuple[float, ...]
    trials: int = 1
    seed: int = 0
    q: int = 2
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    out: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if not self.n_list or not self.p_list:
            raise InputError("need at least one n and one p")
        if self.trials < 1:
            raise InputError("trials must be >= 1")
        if not 0 <= self.seed < 1 << 64:
            raise InputError("seed must be a 64-bit unsigned integer")
        if self.budget < 1:
            raise InputError("budget must be positive")
        if self.format not in ("csv", "json"):
            raise InputError(f"unknown format {self.format!r}")
        Domain.parse(f"gf:{self.q}")
        for n in self.n_list:
            if not 1 <= n <= ALPHA_LIMIT:
                raise InputError(f"n={n} outside 1..{ALPHA_LIMIT} (independence number limit)")
        for p in self.p_list:
            if not 0 <= p <= 1:
                raise InputError(f"p={p} outside [0, 1]")

    def tasks(self) -> list[tuple[int, float, int, int]]:
        """``(n, p, trial, trial_seed)`` in config order; the global index feeds the seed."""
        out = []
        idx = 0
        for n in self.n_list:
            for p in self.p_list:
                for t in range(self.trials):
                    out.append((n, p, t, trial_seed(self.seed, idx)))
                    idx += 1
        return out


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    rows: list[dict] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in self.rows:
            w.writerow(["" if r[c] is None else _fmt(r[c]) for c in COLUMNS])
        return buf.getvalue()

    def to_json(self) -> str:
        cfg = asdict(self.config)
        cfg.pop("workers")
        cfg.pop("out")
        doc = {"schema": SCHEMA, "config": cfg, "columns": list(COLUMNS), "rows": self.rows}
        return json.dumps(doc, indent=2) + "\n"

    def render(self) -> str:
        return self.to_csv() if self.config.format == "csv" else self.to_json()


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _experiment_row(task: tuple[int, float, int, int], q: int, budget: int) -> dict:
    n, p, trial, seed = task
    G = gnp(n, p, seed)
    alpha = independence_number(G)
    if n <= CLIQUE_COVER_LIMIT:
        cc, cc_mode = clique_cover_exact(G)[0], "exact"
    else:
        cc, cc_mode = greedy_clique_cover(G)[0], "greedy"
    ratio = None
    if n <= exact_limit(q):
        res = minrank_exact(G, q, budget)
        lo, hi, status = res.lower, res.upper, res.status
        if res.exact:
            lo = hi = res.value
    else:
        lo, hi, status = alpha, cc, "bracket"
    lower = scale = None
    if n >= 2 and 0 < p <= 1:
        lower, scale = envelope(n, p)
        if status == "exact" and scale > 0:
            ratio = lo / scale
    return {"n": n, "p": p, "seed": seed, "trial": trial, "alpha": alpha, "cc": cc, "cc_mode": cc_mode,
            "minrank_lo": lo, "minrank_hi": hi, "status": status,
            "theory_lower": lower, "reference_scale": scale, "ratio": ratio}


def _row_worker(args):
    return _experiment_row(*args)


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Run every trial; rows come back sorted by (n, p, trial) whatever the worker count."""
    jobs = [(t, cfg.q, cfg.budget) for t in cfg.tasks()]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_row_worker, jobs, chunksize=max(1, len(jobs) // (4 * cfg.workers))))
    else:
        rows = [_row_worker(j) for j in jobs]
    rows.sort(key=lambda r: (r["n"], r["p"], r["trial"]))
    return ExperimentReport(cfg, rows)


# ---------------------------------------------------------------- helpers

def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, out: str | None) -> None:
    _emit(json.dumps(obj, indent=2) + "\n", out)


def _field_q(text: str) -> int:
    dom = Domain.parse(text if ":" in text else f"gf:{text}")
    if dom.kind != "gf":
        raise InputError("search needs a prime field, e.g. --field 2 or gf:3")
    return dom.q


def _graph_from_args(args) -> Graph:
    if args.graph:
        return Graph.from_json(_load_json(args.graph))
    if args.n is None or args.p is None:
        raise InputError("give --graph FILE or --n and --p")
    return gnp(args.n, args.p, args.seed)


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise InputError(f"bad number list {text!r}") from exc


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise InputError(f"bad integer list {text!r}") from exc


# ---------------------------------------------------------------- subcommands

def cmd_gen(args) -> int:
    _emit_json(gnp(args.n, args.p, args.seed).to_json(), args.out)
    return EXIT_OK


def cmd_minrank(args) -> int:
    G = _graph_from_args(args)
    q = _field_q(args.field)
    res = minrank_exact(G, q, args.budget)
    doc = {"n": G.n, "field": f"gf:{q}", "status": res.status,
           "lower": res.lower, "lower_source": res.lower_source,
           "upper": res.upper, "upper_source": res.upper_source,
           "value": res.value, "nodes": res.nodes}
    if res.exact:
        doc["certificate"] = certificate_json(G, res.witness, res.value)
    _emit_json(doc, args.out)
    return EXIT_OK if res.exact else EXIT_LIMIT


def cmd_verify(args) -> int:
    doc = _load_json(args.cert)
    if isinstance(doc, dict) and "certificate" in doc:
        doc = doc["certificate"]
    G, M, claimed, _ = load_certificate(doc)
    ok = verify_certificate(G, M, claimed)
    _emit_json({"valid": ok, "claimed_rank": claimed, "rank": mat_rank(M)}, args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_bounds(args) -> int:
    _emit_json(bounds_report(args.n, args.p, args.k), args.out)
    return EXIT_OK


def cmd_experiment(args) -> int:
    n_list = _ints(args.n_list) if args.n_list else ((args.n,) if args.n is not None else ())
    p_list = _floats(args.p_list) if args.p_list else ((args.p,) if args.p is not None else ())
    cfg = ExperimentConfig(n_list, p_list, args.trials, args.seed, _field_q(args.field),
                           args.budget, args.workers, args.out, args.format)
    report = run_experiment(cfg)
    _emit(report.render(), cfg.out)
    return EXIT_OK


def cmd_patterns(args) -> int:
    from . import pattern
    from .poly import polys_from_json

    if args.which == "rbg":
        if args.polys:
            polys = polys_from_json(_load_json(args.polys))
            count = len(pattern.zero_patterns_of_family(polys, args.q))
            m, N = len(polys), (polys[0].num_vars if polys else 0)
            d = max((P.degree for P in polys), default=0)
            bound = pattern.rbg_bound(m, d, N)
            _emit_json({"m": m, "d": d, "N": N, "q": args.q, "count": count, "bound": bound}, args.out)
            if count > bound:
                raise VerificationFailure(f"pattern count {count} exceeds bound {bound}")
        else:
            _emit_json({"m": args.m, "d": args.d, "N": args.N,
                        "bound": pattern.rbg_bound(args.m, args.d, args.N)}, args.out)
    elif args.which == "nks-witness":
        M = Matrix.from_json(_load_json(args.matrix))
        w = pattern.nks_witness(M)
        _emit_json({"witness": None if w is None else asdict(w)}, args.out)
    elif args.which == "nks-census":
        _emit_json(pattern.census_records(args.n, args.q), args.out)
    elif args.which == "lemma22":
        if args.matrix:
            mats = [Matrix.from_json(_load_json(args.matrix))]
        else:
            if args.n is None:
                raise InputError("give --matrix FILE or --n (random matrices)")
            mats = [pattern.random_rank_matrix(args.n, 1 + t % (args.n - 1) if args.n > 1 else 1, args.q,
                                               trial_seed(args.seed, t))
                    for t in range(args.trials)]
        out = []
        for M in mats:
            S, w = pattern.find_nks_principal_submatrix(M)
            out.append({"n": M.n_rows, "k": mat_rank(M), "subset": list(S), "witness": asdict(w)})
        _emit_json(out, args.out)
    return EXIT_OK


def cmd_geom(args) -> int:
    from . import geom
    from .poly import MultiPoly

    tol = args.tol
    if args.which == "simplex":
        pts = geom.regular_simplex(args.d)
        dists = geom.simplex_distances(pts)
        err = max((abs(x - 1) for x in dists), default=0.0)
        _emit_json({"config": pts.to_json(), "max_distance_error": err}, args.out)
    elif args.which == "unit-distance":
        G = _graph_from_args(args)
        chi, col = chromatic_number(G)
        pts = geom.unit_distance_points(G, col)
        M = geom.unit_distance_matrix(pts)[0]
        r = real_rank(M, tol)
        _emit_json({"n": G.n, "dim": pts.dim, "rank": r, "bound": pts.dim + 2, "config": pts.to_json()}, args.out)
        if r > pts.dim + 2:
            raise VerificationFailure(f"rank {r} exceeds d+2 = {pts.dim + 2}")
    elif args.which == "spheres":
        cfg = geom.SphereConfig.from_json(_load_json(args.config))
        domain = QQ if args.exact else RR
        M = geom.touching_spheres_matrix(cfg, domain)
        r = mat_rank(M) if args.exact else real_rank(M, tol)
        _emit_json({"n": len(cfg.radii), "dim": cfg.dim, "rank": r, "bound": cfg.dim + 3}, args.out)
        if r > cfg.dim + 3:
            raise VerificationFailure(f"rank {r} exceeds d+3 = {cfg.dim + 3}")
    elif args.which == "pgraph":
        P = MultiPoly.from_json(_load_json(args.poly))
        fact = geom.pgraph_factorize(P, args.d)
        doc = {"length": fact.length, "factorization": fact.to_json()}
        if args.reps:
            reps = _load_json(args.reps)
            M = geom.pgraph_matrix(fact, reps)
            doc["matrix"] = M.to_json()
            doc["rank"] = mat_rank(M)
        _emit_json(doc, args.out)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="minranklab", description="Graph minrank laboratory.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, graph=False):
        p.add_argument("--out", help="write output here instead of stdout")
        if graph:
            p.add_argument("--graph", help="graph JSON file ('-' for stdin)")
            p.add_argument("--n", type=int)
            p.add_argument("--p", type=float)
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen", help="sample G(n, p) as graph JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("minrank", help="exact minrank with a certificate")
    common(p, graph=True)
    p.add_argument("--field", default="2")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_minrank)

    p = sub.add_parser("verify", help="check a minrank certificate")
    p.add_argument("cert")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="threshold and log union bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--k", type=int)
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("experiment", help="Monte Carlo minrank report")
    p.add_argument("--n", type=int)
    p.add_argument("--n-list")
    p.add_argument("--p", type=float)
    p.add_argument("--p-list")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", default="2")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("patterns", help="zero-pattern tools")
    p.add_argument("which", choices=("rbg", "nks-witness", "nks-census", "lemma22"))
    p.add_argument("--polys", help="JSON list of polynomials (rbg)")
    p.add_argument("--matrix", help="matrix JSON (nks-witness, lemma22)")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("geom", help="representation constructions")
    p.add_argument("which", choices=("simplex", "unit-distance", "spheres", "pgraph"))
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--config", help="sphere configuration JSON")
    p.add_argument("--poly", help="polynomial JSON in 2d variables")
    p.add_argument("--reps", help="JSON list of d-vectors")
    p.add_argument("--exact", action="store_true", help="rational arithmetic instead of float")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common(p, graph=True)
    p.set_defaults(func=cmd_geom)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; usage errors are exit 1 here
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimit as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except MinrankLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
