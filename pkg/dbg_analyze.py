import numpy as np

d = np.load("/tmp/annulus_debug.npz")
steps = d["steps"]
nodes = d["nodes"]
tw = d["tw"]
w = d["weights"]
dart_tail = d["dart_tail"]
in_tree = d["in_tree"]
lam_dart = d["lam_dart"]
red = d["red"]
fi_s = int(d["fi_s"])
v_int = int(d["v_int"])
v_ext = int(d["v_ext"])
d_s = int(d["d_s"])
pairs = d["pairs"]
co2_edge_src = d["co2_edge_src"]
host_face = d["host_face"]
reg_terms = d["reg_terms"]
n2 = co2_edge_src.size  # not vertex count; recompute below

print("sub: m =", w.size, " n =", dart_tail.max() + 1)
print("fi_s", fi_s, "v_int", v_int, "v_ext", v_ext, "d_s", d_s, "=edge", d_s >> 1)
print("dist_target", float(d["dist_target"]))
print("walk weight", float(w[steps >> 1].sum()))
print("red darts:", red.tolist(), " (edges", (red >> 1).tolist(), ")")
print("terminal region sub-faces:", reg_terms.tolist(), "-> host faces", host_face[reg_terms].tolist())

nv2 = int(d["co2_vertex_src"].size)
print("co2 vertices:", nv2)
layer = nodes // nv2
print()
print("layered path (node, layer):")
print(list(zip((nodes % nv2).tolist(), layer.tolist())))
print()
heads = dart_tail[steps ^ 1]
print("projected walk darts / edge / tail>head / w / tree? / lam? / red?:")
red_set = set(red.tolist())
for s in steps.tolist():
    e = s >> 1
    print(
        f"  d={s:3d} e={e:3d} {dart_tail[s]:3d}->{dart_tail[s ^ 1]:3d} "
        f"w={w[e]:5.1f} tree={bool(in_tree[e])} lam_match={lam_dart[e] == s} red={s in red_set}"
    )
vals, cnt = np.unique(tw, return_counts=True)
dup = vals[cnt > 1]
print()
print("repeated tail vertices:", dup.tolist())
for u in dup.tolist():
    at = np.flatnonzero(tw == u)
    print(f"  vertex {u} visited at walk positions {at.tolist()} (layers {layer[:-1][at].tolist()})")
print()
print("degrees of repeated vertices:", [(int(u), int((dart_tail == u).sum())) for u in dup.tolist()])
