import numpy as np

d = np.load("/tmp/hole_debug.npz")
f_i = int(d["f_i"])
f_next = int(d["f_next"])
portion = int(d["portion"])
walk_in = d["walk_in"]
walk_out = d["walk_out"]
hostA = set(d["hostA"].tolist())
flood_in = d["flood_in"]
rot_flat = d["hg_rot_flat"]
rot_start = d["hg_rot_start"]
dart_tail = d["hg_dart_tail"]
dart_face = d["hg_dart_face"]
fcls = d["fcls"]
v_int = int(d["v_int"])
emap = d["emap"]
fi_s = int(d["fi_s"])
sub_corner_faces = d["sub_corner_faces"]

print("f_i (host vertex):", f_i, " f_next:", f_next, " portion dart:", portion, "= edge", portion >> 1)
print("walk_in darts:", walk_in.tolist())
print("walk_in tails:", dart_tail[walk_in].tolist())
print("walk_in visits f_i?", (dart_tail[walk_in] == f_i).any(), " count:", int((dart_tail[walk_in] == f_i).sum()))
print("walk_out visits f_i?", int((dart_tail[walk_out] == f_i).sum()), " f_next in walk_out:", int((dart_tail[walk_out] == f_next).sum()))
print("walk_in visits f_next?", int((dart_tail[walk_in] == f_next).sum()))
print()
sub_edges = set(emap.tolist())
rot_i = rot_flat[rot_start[f_i] : rot_start[f_i + 1]]
win = set((walk_in >> 1).tolist())
wout = set((walk_out >> 1).tolist())
print("host rotation at f_i (dart, edge, ->head, corner-face-after, class-of-that-face, in-sub?, walk?):")
for y in rot_i.tolist():
    e = y >> 1
    cf = int(dart_face[y ^ 1])
    cls = "hole" if flood_in[cf] else ("region" if cf in hostA else "outer")
    tags = []
    if e in win:
        tags.append("IN")
    if e in wout:
        tags.append("OUT")
    if e == portion >> 1:
        tags.append("PORTION")
    print(
        f"  d{y:4d} e{e:4d} ->{dart_tail[y ^ 1]:4d} corner f{cf:4d} {cls:6s} sub={e in sub_edges} {'/'.join(tags)}"
    )
print()
print("sub corner faces at fi_s:", sub_corner_faces.tolist(), " classes:", fcls[sub_corner_faces].tolist(), " v_int:", v_int)
