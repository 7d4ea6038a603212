from collections import Counter

from steinercut.oracle_gen import gen_grid
from steinercut.steiner import min_steiner_cut
from steinercut.stats import SolveStats

tally = Counter()
ann = 0
for seed in range(100):
    g, X = gen_grid(10, 10, (1, 9), ("random-k", 2 + seed % 15), 1000 + seed)
    st = SolveStats()
    min_steiner_cut(g, X, stats=st)
    ann += st.annulus_searches
    for k, v in st.extra.items():
        if k.startswith("irr:"):
            tally[k] += v
print("annulus searches:", ann)
for k, v in tally.most_common():
    print(f"{v:5d}  {k}")
