"""Compiled vs pure-Python kernels on the hot paths.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload runs on both backends; results must agree before the timings
are reported.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from minranklab import _kernels
from minranklab.graph import gnp, trial_seed
from minranklab.minrank import _independent_cuts, _search_order, sandwich


def _search_workload(count: int = 12, n: int = 12):
    jobs = []
    for i in range(count):
        G = gnp(n, 0.5, trial_seed(31, i))
        alpha = sandwich(G)[0]
        # k = alpha is the first level iterative deepening tries
        jobs.append((G.n, list(G.adj), _search_order(G), alpha, 10**7, _independent_cuts(G)))
    return jobs


def _rank_workload(count: int = 20000, n: int = 24):
    rng = random.Random(5)
    return [[rng.getrandbits(n) for _ in range(n)] for _ in range(count)]


def bench(name, fn, backends, repeat):
    results, times = {}, {}
    for label, mod in backends:
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            out = fn(mod)
            best = min(best, time.perf_counter() - t0)
        results[label], times[label] = out, best
    agree = len({repr(r) for r in results.values()}) == 1
    cols = "  ".join(f"{label} {t * 1e3:9.1f} ms" for label, t in times.items())
    speedup = times["python"] / times["compiled"] if "compiled" in times else float("nan")
    print(f"{name:<28} {cols}  speedup {speedup:6.1f}x  {'agree' if agree else 'DISAGREE'}")
    return agree


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = [("python", _kernels.python)]
    if _kernels.compiled is None:
        print("compiled extension not built; timing the Python backend only")
    else:
        backends.append(("compiled", _kernels.compiled))

    search = _search_workload()
    ranks = _rank_workload()
    ok = all([
        bench("gf2_minrank_search n=12", lambda m: [m.gf2_minrank_search(*j) for j in search],
              backends, args.repeat),
        bench("gf2_rank 20000 x 24x24", lambda m: [m.gf2_rank(r) for r in ranks], backends, args.repeat),
        bench("nks_census n=3 q=3", lambda m: sorted(m.nks_census(3, 3).items()), backends, 1),
        bench("nks_census n=4 q=2", lambda m: sorted(m.nks_census(4, 2).items()), backends, 1),
    ])
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
