import time

from steinercut.oracle_gen import gen_grid, oracle_subset
from steinercut.steiner import min_steiner_cut
from steinercut.stats import SolveStats

t0 = time.time()
bad = 0
fb = 0
ann = 0
for seed in range(200):
    rows, cols = 4, 4 + (seed % 2)
    g, X = gen_grid(rows, cols, (1, 9), ("random-k", 2 + seed % (rows * cols - 1)), seed)
    st = SolveStats()
    r = min_steiner_cut(g, X, stats=st)
    o = oracle_subset(g, X)
    fb += int(st.extra.get("fallbacks", 0))
    ann += st.annulus_searches
    if r.weight != o.weight:
        bad += 1
        print(f"MISMATCH seed={seed} k={len(X)} got={r.weight} want={o.weight}")
        if bad > 5:
            break
    # cut must actually separate at the reported weight
    w = sum(float(g.weights[e]) for e in r.edges)
    assert abs(w - r.weight.to_float()) < 1e-9, (seed, w, r.weight)
print(f"subset oracle: {200 - bad}/200 ok, fallbacks={fb}, annulus searches={ann}, {time.time() - t0:.1f}s")
