import numpy as np

d = np.load("/tmp/annulus_debug.npz")
rot_flat = d["rot_flat"]
rot_start = d["rot_start"]
dart_tail = d["dart_tail"]
dart_face = d["dart_face"]
w = d["weights"]
in_tree = d["in_tree"]
parent_dart = d["parent_dart"]
lam_dart = d["lam_dart"]
red = set(d["red"].tolist())
host_face = d["host_face"]
reg_terms = set(d["reg_terms"].tolist())
v_int = int(d["v_int"])
v_ext = int(d["v_ext"])
fi_s = int(d["fi_s"])

n = rot_start.size - 1
print("slit dart d_s:", int(d["d_s"]), " fi_s:", fi_s, " v_int:", v_int, " v_ext:", v_ext)
print("terminal sub-faces:", sorted(reg_terms))
for v in range(n):
    darts = rot_flat[rot_start[v] : rot_start[v + 1]]
    lab = []
    for dd in darts.tolist():
        e = dd >> 1
        t = "T" if in_tree[e] else ("R" if (lam_dart[e] in red and lam_dart[e] == dd or (dd ^ 1) == lam_dart[e] and lam_dart[e] in red) else "n")
        lab.append(f"d{dd}(e{e}->{dart_tail[dd ^ 1]},{t},f{dart_face[dd]})")
    print(f"v{v}: " + "  ".join(lab))
print()
print("faces of each dart (face id -> darts with that face on right):")
nf = dart_face.max() + 1
for f in range(nf):
    ds = np.flatnonzero(dart_face == np.int64(f))
    mark = " TERM" if f in reg_terms else (" INT" if f == v_int else (" EXT" if f == v_ext else ""))
    print(f"f{f}{mark}: darts {ds.tolist()} (edges {sorted(set(x >> 1 for x in ds.tolist()))})")
print()
print("tree parent darts:", parent_dart.tolist())
print("lam_dart per edge:", lam_dart.tolist())
print("red darts:", sorted(red))
print("weights:", w.tolist())
