#!/usr/bin/env python3
"""Regenerates the bundled fixture corpus.

Each fixture directory gets a URDF, OBJ meshes for the movable links (static
links use URDF box/cylinder primitives), and an expected.json sidecar with
analytically derived world-frame reference values at five canonical joint
configurations.

The sidecar values are computed here with plain numpy, independently of the
C++ toolkit:
  * link surface centroid: exact area-weighted mean over mesh triangles;
  * axis point/direction: joint frame origin and rotated axis;
  * box_x: long edge of the minimum-area rectangle of the mesh vertices
    projected perpendicular to the axis (vertices suffice: enclosing
    rectangles of a polyhedral surface depend only on its convex hull);
  * half_extents: max |(v - centroid) . axis_k| over mesh vertices, floored
    at 1e-4 like the annotation module floors its extents, ordered
    (long, short, along-axis).

Run from anywhere:  python3 fixtures/tools/generate.py
"""

import json
import math
import os
import numpy as np

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
EXTENT_FLOOR = 1e-4


# ---------------------------------------------------------------- mesh utils

def box_mesh(lo, hi):
    """Axis-aligned box spanning lo..hi, 12 triangles."""
    lo = np.asarray(lo, float)
    hi = np.asarray(hi, float)
    x0, y0, z0 = lo
    x1, y1, z1 = hi
    v = np.array([
        [x0, y0, z0], [x1, y0, z0], [x1, y1, z0], [x0, y1, z0],
        [x0, y0, z1], [x1, y0, z1], [x1, y1, z1], [x0, y1, z1],
    ])
    f = np.array([
        [0, 2, 1], [0, 3, 2],          # bottom
        [4, 5, 6], [4, 6, 7],          # top
        [0, 1, 5], [0, 5, 4],          # y0 side
        [3, 7, 6], [3, 6, 2],          # y1 side
        [0, 4, 7], [0, 7, 3],          # x0 side
        [1, 2, 6], [1, 6, 5],          # x1 side
    ])
    return v, f


def prism_mesh(radius, z0, z1, segments, seed, radial_jitter=0.03):
    """Jittered prism about +z. The jitter breaks rotational symmetry so the
    projected silhouette has a unique minimum rectangle."""
    rng = np.random.default_rng(seed)
    base = 2.0 * np.pi * np.arange(segments) / segments
    ang = base + rng.uniform(-0.25, 0.25, segments) * (2.0 * np.pi / segments)
    rad = radius * (1.0 + rng.uniform(-radial_jitter, radial_jitter, segments))
    bottom = np.stack([rad * np.cos(ang), rad * np.sin(ang),
                       np.full(segments, float(z0))], axis=1)
    top = bottom.copy()
    top[:, 2] = z1
    cb = np.array([[0.0, 0.0, float(z0)]])
    ct = np.array([[0.0, 0.0, float(z1)]])
    v = np.concatenate([bottom, top, cb, ct])
    icb, ict = 2 * segments, 2 * segments + 1
    f = []
    for i in range(segments):
        j = (i + 1) % segments
        f.append([i, j, segments + j])
        f.append([i, segments + j, segments + i])
        f.append([icb, j, i])
        f.append([ict, segments + i, segments + j])
    return v, np.array(f)


def extrude_mesh(outline, z0, z1):
    """Prism over a counter-clockwise 2D outline, fan-capped about (0,0)."""
    outline = np.asarray(outline, float)
    n = len(outline)
    bottom = np.column_stack([outline, np.full(n, float(z0))])
    top = np.column_stack([outline, np.full(n, float(z1))])
    v = np.concatenate([bottom, top,
                        [[0.0, 0.0, float(z0)], [0.0, 0.0, float(z1)]]])
    icb, ict = 2 * n, 2 * n + 1
    f = []
    for i in range(n):
        j = (i + 1) % n
        f.append([i, j, n + j])
        f.append([i, n + j, n + i])
        f.append([icb, j, i])
        f.append([ict, n + i, n + j])
    return v, np.array(f)


def quad_mesh(corners):
    """Zero-thickness quad (two triangles)."""
    v = np.asarray(corners, float)
    f = np.array([[0, 1, 2], [0, 2, 3]])
    return v, f


def merge(meshes):
    vs, fs, off = [], [], 0
    for v, f in meshes:
        vs.append(v)
        fs.append(f + off)
        off += len(v)
    return np.concatenate(vs), np.concatenate(fs)


def write_obj(path, mesh):
    v, f = mesh
    with open(path, "w") as out:
        out.write("# generated by fixtures/tools/generate.py\n")
        for p in v:
            out.write("v {:.17g} {:.17g} {:.17g}\n".format(*p))
        for t in f:
            out.write("f {} {} {}\n".format(t[0] + 1, t[1] + 1, t[2] + 1))


def surface_centroid(v, f):
    """Exact area-weighted surface centroid."""
    a = v[f[:, 0]]
    b = v[f[:, 1]]
    c = v[f[:, 2]]
    areas = 0.5 * np.linalg.norm(np.cross(b - a, c - a), axis=1)
    centers = (a + b + c) / 3.0
    total = areas.sum()
    return centers.T @ areas / total, total


# ------------------------------------------------------------ transforms, fk

def rpy_matrix(r, p, y):
    cr, sr = math.cos(r), math.sin(r)
    cp, sp = math.cos(p), math.sin(p)
    cy, sy = math.cos(y), math.sin(y)
    rz = np.array([[cy, -sy, 0], [sy, cy, 0], [0, 0, 1]])
    ry = np.array([[cp, 0, sp], [0, 1, 0], [-sp, 0, cp]])
    rx = np.array([[1, 0, 0], [0, cr, -sr], [0, sr, cr]])
    return rz @ ry @ rx


def transform(xyz=(0, 0, 0), rpy=(0, 0, 0)):
    t = np.eye(4)
    t[:3, :3] = rpy_matrix(*rpy)
    t[:3, 3] = xyz
    return t


def axis_rotation(axis, angle):
    u = np.asarray(axis, float)
    u = u / np.linalg.norm(u)
    c, s = math.cos(angle), math.sin(angle)
    ux, uy, uz = u
    k = np.array([[0, -uz, uy], [uz, 0, -ux], [-uy, ux, 0]])
    return c * np.eye(3) + s * k + (1 - c) * np.outer(u, u)


def motion(kind, axis, q):
    t = np.eye(4)
    if kind in ("revolute", "continuous"):
        t[:3, :3] = axis_rotation(axis, q)
    elif kind == "prismatic":
        u = np.asarray(axis, float)
        t[:3, 3] = q * u / np.linalg.norm(u)
    return t


# --------------------------------------------------------- min-area rectangle

def convex_hull(points):
    pts = sorted(set(map(tuple, np.round(points, 15))))
    if len(pts) <= 2:
        return np.array(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def min_rect_long_dir(points2):
    """Long-edge direction of the minimum-area enclosing rectangle, mirroring
    the annotation rules: per-hull-edge scan, area ties (relative 1e-9) break
    toward the smaller folded angle, long edge = larger candidate extent."""
    hull = convex_hull(points2)
    if len(hull) == 1:
        return np.array([1.0, 0.0])
    if len(hull) == 2:
        d = hull[1] - hull[0]
        ang = math.atan2(d[1], d[0]) % math.pi
        return np.array([math.cos(ang), math.sin(ang)])

    best = None  # (area, angle, dir)
    n = len(hull)
    for i in range(n):
        e = hull[(i + 1) % n] - hull[i]
        norm = np.linalg.norm(e)
        if norm < 1e-15:
            continue
        d = e / norm
        perp = np.array([-d[1], d[0]])
        u = hull @ d
        w = hull @ perp
        du, dv = u.max() - u.min(), w.max() - w.min()
        area = du * dv
        cand = d if du >= dv else perp
        ang = math.atan2(cand[1], cand[0]) % math.pi
        if best is None or area < best[0] * (1 - 1e-9) or (
                area <= best[0] * (1 + 1e-9) and ang < best[1] - 1e-12):
            best = (area, ang, np.array([math.cos(ang), math.sin(ang)]))
    return best[2]


def plane_basis(axis):
    u = np.asarray(axis, float)
    u = u / np.linalg.norm(u)
    seed = min(((abs(u[0]), 0), (abs(u[1]), 1), (abs(u[2]), 2)))[1]
    e = np.zeros(3)
    e[seed] = 1.0
    e1 = e - u * np.dot(u, e)
    e1 = e1 / np.linalg.norm(e1)
    return e1, np.cross(u, e1)


# --------------------------------------------------------------- fixture spec

class Geom:
    """One geometry element. kind: mesh | box | cylinder."""

    def __init__(self, kind, mesh=None, size=None, radius=None, length=None,
                 xyz=(0, 0, 0), rpy=(0, 0, 0), scale=(1, 1, 1), filename=None):
        self.kind = kind
        self.mesh = mesh
        self.size = size
        self.radius = radius
        self.length = length
        self.xyz = xyz
        self.rpy = rpy
        self.scale = scale
        self.filename = filename


class Link:
    def __init__(self, name, geoms):
        self.name = name
        self.geoms = geoms


class Joint:
    def __init__(self, name, kind, parent, child, xyz=(0, 0, 0),
                 rpy=(0, 0, 0), axis=(0, 0, 1), limits=None):
        self.name = name
        self.kind = kind
        self.parent = parent
        self.child = child
        self.xyz = xyz
        self.rpy = rpy
        self.axis = axis
        self.limits = limits


class Fixture:
    def __init__(self, name, category, links, joints, configs):
        self.name = name
        self.category = category
        self.links = links
        self.joints = joints
        self.configs = configs


# --------------------------------------------------------------- URDF output

def fmt(x):
    return "{:.17g}".format(float(x))


def vec(v):
    return " ".join(fmt(x) for x in v)


def write_urdf(fixture, path):
    lines = ['<?xml version="1.0"?>', '<robot name="%s">' % fixture.name]
    for link in fixture.links:
        lines.append('  <link name="%s">' % link.name)
        for g in link.geoms:
            lines.append('    <visual>')
            if g.xyz != (0, 0, 0) or g.rpy != (0, 0, 0):
                lines.append('      <origin xyz="%s" rpy="%s"/>'
                             % (vec(g.xyz), vec(g.rpy)))
            lines.append('      <geometry>')
            if g.kind == "mesh":
                scale = ""
                if g.scale != (1, 1, 1):
                    scale = ' scale="%s"' % vec(g.scale)
                lines.append('        <mesh filename="meshes/%s"%s/>'
                             % (g.filename, scale))
            elif g.kind == "box":
                lines.append('        <box size="%s"/>' % vec(g.size))
            else:
                lines.append('        <cylinder radius="%s" length="%s"/>'
                             % (fmt(g.radius), fmt(g.length)))
            lines.append('      </geometry>')
            lines.append('    </visual>')
        lines.append('  </link>')
    for j in fixture.joints:
        lines.append('  <joint name="%s" type="%s">' % (j.name, j.kind))
        lines.append('    <parent link="%s"/>' % j.parent)
        lines.append('    <child link="%s"/>' % j.child)
        lines.append('    <origin xyz="%s" rpy="%s"/>' % (vec(j.xyz), vec(j.rpy)))
        lines.append('    <axis xyz="%s"/>' % vec(j.axis))
        if j.limits is not None:
            lines.append('    <limit lower="%s" upper="%s" effort="10" velocity="1"/>'
                         % (fmt(j.limits[0]), fmt(j.limits[1])))
        lines.append('  </joint>')
    lines.append('</robot>')
    with open(path, "w") as out:
        out.write("\n".join(lines) + "\n")


# ----------------------------------------------------------- expected sidecar

def link_world_mesh(fixture, link, world):
    """World-frame (V, F) union of the link's geometry."""
    parts = []
    for g in link.geoms:
        if g.kind == "mesh":
            v, f = g.mesh
        elif g.kind == "box":
            half = np.asarray(g.size, float) / 2.0
            v, f = box_mesh(-half, half)
        else:
            v, f = prism_mesh(g.radius, -g.length / 2.0, g.length / 2.0,
                              segments=32, seed=0, radial_jitter=0.0)
        v = v * np.asarray(g.scale, float)
        t = transform(g.xyz, g.rpy)
        v = v @ t[:3, :3].T + t[:3, 3]
        parts.append((v, f))
    v, f = merge(parts)
    return v @ world[:3, :3].T + world[:3, 3], f


def forward_kinematics(fixture, q):
    by_child = {j.child: j for j in fixture.joints}
    world = {}

    def solve(name):
        if name in world:
            return world[name]
        if name not in by_child:
            world[name] = np.eye(4)
            return world[name]
        j = by_child[name]
        parent = solve(j.parent)
        value = q.get(j.name, 0.0)
        world[name] = parent @ transform(j.xyz, j.rpy) @ motion(j.kind, j.axis, value)
        return world[name]

    for link in fixture.links:
        solve(link.name)
    return world


def expected_for_config(fixture, q):
    by_child = {j.child: j for j in fixture.joints}
    fk = forward_kinematics(fixture, q)
    out = []
    for link in fixture.links:
        j = by_child.get(link.name)
        if j is None or j.kind == "fixed":
            continue
        frame = fk[j.parent] @ transform(j.xyz, j.rpy)
        axis_dir = frame[:3, :3] @ (np.asarray(j.axis, float)
                                    / np.linalg.norm(j.axis))
        v, f = link_world_mesh(fixture, link, fk[link.name])
        centroid, _ = surface_centroid(v, f)
        if j.kind == "prismatic":
            kind = "prismatic"
            axis_point = centroid
        else:
            kind = "revolute"
            axis_point = frame[:3, 3]
        e1, e2 = plane_basis(axis_dir)
        rel = v - centroid
        pts2 = np.stack([rel @ e1, rel @ e2], axis=1)
        long2 = min_rect_long_dir(pts2)
        box_x = long2[0] * e1 + long2[1] * e2
        box_y = np.cross(axis_dir, box_x)
        he = [max(EXTENT_FLOOR, np.abs(rel @ box_x).max()),
              max(EXTENT_FLOOR, np.abs(rel @ box_y).max()),
              max(EXTENT_FLOOR, np.abs(rel @ axis_dir).max())]
        out.append({
            "link": link.name,
            "kind": kind,
            "axis_point": list(map(float, axis_point)),
            "axis_dir": list(map(float, axis_dir)),
            "centroid": list(map(float, centroid)),
            "box_x": list(map(float, box_x)),
            "half_extents": list(map(float, he)),
        })
    return out


def emit(fixture):
    d = os.path.join(ROOT, fixture.name)
    os.makedirs(os.path.join(d, "meshes"), exist_ok=True)
    for link in fixture.links:
        for g in link.geoms:
            if g.kind == "mesh":
                write_obj(os.path.join(d, "meshes", g.filename), g.mesh)
    write_urdf(fixture, os.path.join(d, fixture.name + ".urdf"))
    doc = {
        "name": fixture.name,
        "category": fixture.category,
        "urdf": fixture.name + ".urdf",
        "configs": [
            {"joints": cfg, "links": expected_for_config(fixture, cfg)}
            for cfg in fixture.configs
        ],
    }
    with open(os.path.join(d, "expected.json"), "w") as out:
        json.dump(doc, out, indent=1)
        out.write("\n")
    print("wrote", fixture.name)


# ----------------------------------------------------------------- fixtures

def door_fixture():
    panel = merge([
        box_mesh([0.0, -0.016, 0.0], [0.45, 0.016, 1.00]),
        box_mesh([0.38, 0.016, 0.46], [0.43, 0.044, 0.54]),   # handle
    ])
    links = [
        Link("frame", [
            Geom("box", size=(0.06, 0.07, 1.1), xyz=(-0.05, 0, 0.55)),
            Geom("box", size=(0.06, 0.07, 1.1), xyz=(0.52, 0, 0.55)),
            Geom("box", size=(0.64, 0.07, 0.08), xyz=(0.235, 0, 1.14)),
        ]),
        Link("door", [Geom("mesh", mesh=panel, filename="door.obj")]),
    ]
    joints = [Joint("hinge", "revolute", "frame", "door",
                    xyz=(0.01, 0, 0.02), axis=(0, 0, 1),
                    limits=(0.0, 1.5708))]
    configs = [{"hinge": v} for v in (0.0, 0.3927, 0.7854, 1.1781, 1.5708)]
    return Fixture("door", "Door", links, joints, configs)


def drawer_mesh():
    return merge([
        box_mesh([-0.40, -0.19, 0.000], [0.00, 0.19, 0.012]),   # bottom
        box_mesh([-0.40, -0.19, 0.012], [-0.388, 0.19, 0.110]), # back
        box_mesh([-0.40, -0.19, 0.012], [0.00, -0.178, 0.110]), # left
        box_mesh([-0.40, 0.178, 0.012], [0.00, 0.19, 0.110]),   # right
        box_mesh([0.000, -0.20, -0.006], [0.022, 0.20, 0.130]), # front
    ])


def drawer_cabinet_fixture():
    drawer = drawer_mesh()
    door = box_mesh([0.0, 0.0, 0.0], [0.018, 0.40, 0.205])
    pull = box_mesh([0.0, -0.012, -0.022], [0.03, 0.012, 0.022])
    links = [
        Link("body", [
            Geom("box", size=(0.44, 0.02, 0.56), xyz=(-0.21, -0.22, 0.28)),
            Geom("box", size=(0.02, 0.46, 0.56), xyz=(-0.44, 0.0, 0.28)),
            Geom("box", size=(0.44, 0.02, 0.56), xyz=(-0.21, 0.22, 0.28)),
            Geom("box", size=(0.46, 0.46, 0.02), xyz=(-0.22, 0.0, 0.57)),
            Geom("box", size=(0.46, 0.46, 0.02), xyz=(-0.22, 0.0, -0.01)),
            Geom("box", size=(0.44, 0.44, 0.016), xyz=(-0.22, 0.0, 0.275)),
        ]),
        Link("drawer_top", [Geom("mesh", mesh=drawer, filename="drawer.obj")]),
        Link("drawer_bottom", [Geom("mesh", mesh=drawer, filename="drawer.obj")]),
        Link("cabinet_door", [
            Geom("mesh", mesh=door, filename="door.obj"),
            Geom("mesh", mesh=pull, filename="pull.obj",
                 xyz=(0.018, 0.36, 0.1), rpy=(0.0, 0.0, 0.3)),
        ]),
    ]
    joints = [
        Joint("slide_top", "prismatic", "body", "drawer_top",
              xyz=(0.0, 0.0, 0.42), axis=(1, 0, 0), limits=(0.0, 0.32)),
        Joint("slide_bottom", "prismatic", "body", "drawer_bottom",
              xyz=(0.0, 0.0, 0.29), axis=(1, 0, 0), limits=(0.0, 0.32)),
        Joint("door_hinge", "revolute", "body", "cabinet_door",
              xyz=(0.01, -0.21, 0.02), axis=(0, 0, -1), limits=(0.0, 1.8)),
    ]
    configs = [
        {"slide_top": 0.0, "slide_bottom": 0.0, "door_hinge": 0.0},
        {"slide_top": 0.16, "slide_bottom": 0.05, "door_hinge": 0.4},
        {"slide_top": 0.32, "slide_bottom": 0.16, "door_hinge": 0.9},
        {"slide_top": 0.08, "slide_bottom": 0.32, "door_hinge": 1.35},
        {"slide_top": 0.24, "slide_bottom": 0.24, "door_hinge": 1.8},
    ]
    return Fixture("drawer_cabinet", "StorageFurniture", links, joints, configs)


def laptop_fixture():
    # Base mesh is authored in millimeters and scaled in the URDF; the lid
    # is authored in stretched units to exercise per-axis scale.
    base_mm = box_mesh([-150.0, -110.0, 0.0], [150.0, 110.0, 18.0])
    lid_scale = np.array([0.1, 0.2, 0.05])
    lid_v, lid_f = merge([
        box_mesh([0.004, -0.105, 0.0], [0.296, 0.105, 0.008]),
        box_mesh([0.130, -0.012, 0.008], [0.156, 0.012, 0.0105]),  # camera bump
    ])
    lid = (lid_v / lid_scale, lid_f)
    links = [
        Link("base", [Geom("mesh", mesh=base_mm, filename="base_mm.obj",
                           scale=(0.001, 0.001, 0.001))]),
        Link("lid", [Geom("mesh", mesh=lid, filename="lid.obj",
                          scale=tuple(lid_scale))]),
    ]
    joints = [Joint("screen_hinge", "revolute", "base", "lid",
                    xyz=(-0.148, 0.0, 0.018), axis=(0, -1, 0),
                    limits=(0.1, 2.0))]
    configs = [{"screen_hinge": v} for v in (0.1, 0.6, 1.05, 1.5, 2.0)]
    return Fixture("laptop", "Laptop", links, joints, configs)


def bottle_cap_fixture():
    # Flip-cap profile: a chamfered rectangle, so the silhouette pins the
    # enclosing rectangle orientation (a round cap leaves it ambiguous).
    c = 0.008
    outline = [
        (0.024 - c, -0.019), (0.024, -0.019 + c), (0.024, 0.019 - c),
        (0.024 - c, 0.019), (-0.024 + c, 0.019), (-0.024, 0.019 - c),
        (-0.024, -0.019 + c), (-0.024 + c, -0.019),
    ]
    cap = extrude_mesh(outline, 0.0, 0.03)
    links = [
        Link("body", [
            Geom("cylinder", radius=0.035, length=0.16, xyz=(0, 0, 0.08)),
            Geom("cylinder", radius=0.012, length=0.02, xyz=(0, 0, 0.17)),
        ]),
        Link("cap", [Geom("mesh", mesh=cap, filename="cap.obj")]),
    ]
    joints = [Joint("cap_spin", "continuous", "body", "cap",
                    xyz=(0.0, 0.0, 0.18), axis=(0, 0, 1))]
    configs = [{"cap_spin": v} for v in (-2.0, -0.5, 0.0, 0.9, 2.5)]
    return Fixture("bottle_cap", "Bottle", links, joints, configs)


def faucet_fixture():
    # The lever plate is wider than the hub, so the projected silhouette is
    # an exact rectangle and the enclosing-rectangle orientation is stable.
    knob = merge([
        prism_mesh(0.018, 0.004, 0.028, segments=20, seed=23),
        box_mesh([-0.024, -0.022, 0.010], [0.064, 0.022, 0.022]),  # lever
    ])
    links = [
        Link("base", [
            Geom("cylinder", radius=0.03, length=0.10, xyz=(0, 0, 0.05)),
            Geom("box", size=(0.12, 0.024, 0.02), xyz=(0.06, 0, 0.105)),
        ]),
        Link("knob", [Geom("mesh", mesh=knob, filename="knob.obj")]),
    ]
    joints = [Joint("knob_turn", "revolute", "base", "knob",
                    xyz=(0.0, 0.0, 0.10), axis=(0, 0, 1),
                    limits=(-1.2, 1.2))]
    configs = [{"knob_turn": v} for v in (-1.2, -0.6, 0.0, 0.6, 1.2)]
    return Fixture("faucet", "Faucet", links, joints, configs)


def scissors_fixture():
    blade = quad_mesh([(0.015, 0, -0.008), (0.140, 0, -0.008),
                       (0.140, 0, 0.008), (0.015, 0, 0.008)])
    ca, sa = math.cos(-0.35), math.sin(-0.35)
    fixed_blade = quad_mesh([
        (0.015 * ca, 0.015 * sa, -0.008), (0.140 * ca, 0.140 * sa, -0.008),
        (0.140 * ca, 0.140 * sa, 0.008), (0.015 * ca, 0.015 * sa, 0.008),
    ])
    pivot = prism_mesh(0.012, -0.006, 0.006, segments=16, seed=31)
    links = [
        Link("handle", [Geom("mesh", mesh=merge([pivot, fixed_blade]),
                             filename="handle.obj")]),
        Link("blade", [Geom("mesh", mesh=blade, filename="blade.obj")]),
    ]
    joints = [Joint("pivot", "revolute", "handle", "blade",
                    xyz=(0, 0, 0), axis=(0, 0, 1), limits=(-0.3, 1.2))]
    configs = [{"pivot": v} for v in (-0.3, 0.0, 0.45, 0.8, 1.2)]
    return Fixture("scissors", "Scissors", links, joints, configs)


def microwave_fixture():
    door = merge([
        box_mesh([0.004, 0.0, 0.0], [0.024, 0.38, 0.24]),
        box_mesh([0.024, 0.335, 0.04], [0.042, 0.352, 0.20]),  # handle bar
    ])
    links = [
        Link("shell", [
            Geom("box", size=(0.5, 0.42, 0.02), xyz=(0, 0, 0.01)),
            Geom("box", size=(0.5, 0.42, 0.02), xyz=(0, 0, 0.29)),
            Geom("box", size=(0.5, 0.02, 0.26), xyz=(0, -0.20, 0.15)),
            Geom("box", size=(0.5, 0.02, 0.26), xyz=(0, 0.20, 0.15)),
            Geom("box", size=(0.02, 0.38, 0.26), xyz=(-0.24, 0, 0.15)),
            Geom("box", size=(0.02, 0.38, 0.26), xyz=(0.24, 0, 0.15)),
            Geom("cylinder", radius=0.012, length=0.02,
                 xyz=(0.20, 0.17, -0.01)),
            Geom("cylinder", radius=0.012, length=0.02,
                 xyz=(0.20, -0.17, -0.01)),
            Geom("cylinder", radius=0.012, length=0.02,
                 xyz=(-0.20, 0.17, -0.01)),
            Geom("cylinder", radius=0.012, length=0.02,
                 xyz=(-0.20, -0.17, -0.01)),
        ]),
        Link("door", [Geom("mesh", mesh=door, filename="door.obj")]),
    ]
    joints = [Joint("door_hinge", "revolute", "shell", "door",
                    xyz=(0.25, -0.19, 0.03), axis=(0, 0, -1),
                    limits=(0.0, 1.6))]
    configs = [{"door_hinge": v} for v in (0.0, 0.4, 0.8, 1.2, 1.6)]
    return Fixture("microwave", "Microwave", links, joints, configs)


def cabinet_hidden_fixture():
    drawer = merge([
        box_mesh([-0.16, -0.10, 0.000], [0.02, 0.10, 0.010]),
        box_mesh([-0.16, -0.10, 0.010], [-0.15, 0.10, 0.070]),
        box_mesh([-0.16, -0.10, 0.010], [0.02, -0.09, 0.070]),
        box_mesh([-0.16, 0.09, 0.010], [0.02, 0.10, 0.070]),
        box_mesh([0.01, -0.10, 0.010], [0.02, 0.10, 0.075]),
    ])
    door = box_mesh([0.0, 0.0, 0.0], [0.015, 0.32, 0.26])
    links = [
        Link("shell", [
            Geom("box", size=(0.42, 0.35, 0.02), xyz=(0, 0, 0.01)),
            Geom("box", size=(0.42, 0.35, 0.02), xyz=(0, 0, 0.29)),
            Geom("box", size=(0.42, 0.02, 0.26), xyz=(0, -0.165, 0.15)),
            Geom("box", size=(0.42, 0.02, 0.26), xyz=(0, 0.165, 0.15)),
            Geom("box", size=(0.02, 0.31, 0.26), xyz=(-0.20, 0, 0.15)),
            Geom("box", size=(0.02, 0.31, 0.26), xyz=(0.20, 0, 0.15)),
        ]),
        Link("hidden_drawer", [Geom("mesh", mesh=drawer, filename="drawer.obj")]),
        Link("door", [Geom("mesh", mesh=door, filename="door.obj")]),
    ]
    joints = [
        Joint("inner_slide", "prismatic", "shell", "hidden_drawer",
              xyz=(0.0, 0.0, 0.06), axis=(1, 0, 0), limits=(0.0, 0.12)),
        Joint("front_hinge", "revolute", "shell", "door",
              xyz=(0.212, -0.16, 0.02), axis=(0, 0, -1), limits=(0.0, 1.5)),
    ]
    configs = [
        {"inner_slide": 0.0, "front_hinge": 0.0},
        {"inner_slide": 0.03, "front_hinge": 0.35},
        {"inner_slide": 0.06, "front_hinge": 0.75},
        {"inner_slide": 0.09, "front_hinge": 1.1},
        {"inner_slide": 0.12, "front_hinge": 1.5},
    ]
    return Fixture("cabinet_hidden", "StorageFurniture", links, joints, configs)


def storage_box_fixture():
    lid = merge([
        box_mesh([0.0, -0.145, 0.0], [0.37, 0.145, 0.012]),
        box_mesh([0.355, -0.03, -0.018], [0.37, 0.03, 0.0]),  # grab tab
    ])
    links = [
        Link("tub", [
            Geom("box", size=(0.36, 0.28, 0.012), xyz=(0, 0, 0.006)),
            Geom("box", size=(0.012, 0.28, 0.19), xyz=(-0.174, 0, 0.105)),
            Geom("box", size=(0.012, 0.28, 0.19), xyz=(0.174, 0, 0.105)),
            Geom("box", size=(0.336, 0.012, 0.19), xyz=(0, -0.134, 0.105)),
            Geom("box", size=(0.336, 0.012, 0.19), xyz=(0, 0.134, 0.105)),
        ]),
        Link("lid", [Geom("mesh", mesh=lid, filename="lid.obj")]),
    ]
    joints = [Joint("lid_hinge", "revolute", "tub", "lid",
                    xyz=(-0.185, 0.0, 0.20), axis=(0, -1, 0),
                    limits=(0.0, 1.9))]
    configs = [{"lid_hinge": v} for v in (0.0, 0.5, 0.95, 1.4, 1.9)]
    return Fixture("storage_box", "Box", links, joints, configs)


def main():
    for fixture in [
        door_fixture(),
        drawer_cabinet_fixture(),
        laptop_fixture(),
        bottle_cap_fixture(),
        faucet_fixture(),
        scissors_fixture(),
        microwave_fixture(),
        cabinet_hidden_fixture(),
        storage_box_fixture(),
    ]:
        emit(fixture)


if __name__ == "__main__":
    main()
