import time

from steinercut.oracle_gen import gen_grid, oracle_pairflow
from steinercut.steiner import min_steiner_cut
from steinercut.stats import SolveStats

t0 = time.time()
bad = 0
fb = 0
ann = 0
deepest = 0
for seed in range(100):
    g, X = gen_grid(10, 10, (1, 9), ("random-k", 2 + seed % 15), 1000 + seed)
    st = SolveStats()
    r = min_steiner_cut(g, X, stats=st)
    o = oracle_pairflow(g, X)
    fb += int(st.extra.get("fallbacks", 0))
    ann += st.annulus_searches
    deepest = max(deepest, st.depth)
    if r.weight != o.weight:
        bad += 1
        print(f"MISMATCH seed={seed} k={len(X)} got={r.weight} want={o.weight}")
        if bad > 5:
            break
print(f"pairflow oracle: {100 - bad}/100 ok, fallbacks={fb}, annulus searches={ann}, max depth={deepest}, {time.time() - t0:.1f}s")
