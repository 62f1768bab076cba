"""Regenerate tests/data/frozen.json from the slow oracles alone.

Run from the repository root:  python3 tests/make_frozen.py
The tests compare the package against these stored numbers, so the
oracles do not have to run on every test invocation.
"""

from __future__ import annotations

import itertools
import json
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
import oracles  # noqa: E402

OUT = Path(__file__).parent / "data" / "frozen.json"


def main() -> None:
    t0 = time.time()
    data: dict = {}

    data["splitmix64_1234567"] = oracles.splitmix64_stream(1234567, 5)
    data["gnp_5_0.5_42"] = oracles.gnp_edges(5, 0.5, 42)

    # minrank over GF(2) for every labeled graph on n <= 5, indexed by edge mask
    data["minrank_gf2_all"] = {
        str(n): [oracles.minrank_gf2_brute(n, E) for E in oracles.all_graphs(n)] for n in range(1, 6)
    }

    rng = random.Random(2024)
    graphs = []
    for _ in range(40):
        n = rng.randint(5, 9)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < rng.choice([0.3, 0.5, 0.7])]
        graphs.append({"n": n, "edges": edges,
                       "alpha": oracles.alpha_brute(n, edges),
                       "cc": oracles.clique_cover_brute(n, edges)})
    data["graph_numbers"] = graphs

    data["census"] = {f"{n},{q}": sorted([k, s, c] for (k, s), c in oracles.census_brute(n, q).items())
                      for n, q in [(1, 2), (1, 3), (2, 2), (2, 3), (2, 5), (3, 2), (3, 3)]}

    triples = [(2, 0.5, 1), (3, 0.5, 1), (3, 0.2, 2), (4, 0.5, 1), (4, 0.9, 3), (5, 0.3, 2), (6, 0.5, 3),
               (8, 0.1, 2), (10, 0.5, 1), (10, 0.05, 4), (12, 0.5, 6), (15, 0.25, 3), (16, 0.01, 8),
               (20, 0.5, 2), (24, 0.7, 5), (30, 0.5, 3), (32, 0.001, 10), (40, 0.5, 1), (45, 0.2, 7),
               (50, 0.5, 5)]
    data["union_bound"] = [[n, p, k, str(oracles.union_bound_log_mp(n, p, k))] for n, p, k in triples]

    data["lemma24"] = [[n, k, s, str(oracles.lemma24_bound_mp(n, k, s))]
                       for n, k, s in [(2, 1, 1), (4, 1, 16), (3, 2, 5), (4, 4, 4), (6, 3, 10)]]

    # nks witnesses of small matrices over GF(2) and GF(3)
    mats = []
    for q in (2, 3):
        for _ in range(30):
            n = rng.randint(2, 4)
            A = [[rng.randrange(q) for _ in range(n)] for _ in range(n)]
            k, s, w = oracles.nks_witness_brute(A, q)
            mats.append({"q": q, "rows": A, "k": k, "s": s, "min_basis_nonzeros": w})
    data["nks"] = mats

    # ranks by minors of random small GF(5) / rational matrices
    ranks = []
    for q in (5, None):
        for _ in range(25):
            m, c = rng.randint(1, 4), rng.randint(1, 4)
            r = rng.randint(0, min(m, c))
            A = [[rng.randint(-3, 3) for _ in range(r)] for _ in range(m)]
            B = [[rng.randint(-3, 3) for _ in range(c)] for _ in range(r)]
            M = [[sum(A[i][t] * B[t][j] for t in range(r)) for j in range(c)] for i in range(m)]
            if q:
                M = [[x % q for x in row] for row in M]
            ranks.append({"q": q, "rows": M, "rank": oracles.rank_by_minors(M, q),
                          "det": oracles.det_leibniz(M, q) if m == c else None})
    data["ranks"] = ranks

    OUT.parent.mkdir(exist_ok=True)
    OUT.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {OUT} in {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
