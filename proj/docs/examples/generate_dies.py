#!/usr/bin/env python3
"""Generates the example die files in this directory.

The die has four cavities on the diagonals, 95 mm from the die centre. Each
cavity extrudes a 40 x 40 mm square tube with 2.5 mm walls, split by weld lines
at the corners into four trapezoidal profile zones. Each zone is fed by one
trapezoidal port; neighbouring ports are separated by 12 mm bridges along the
cavity diagonals.

balanced_die.json   every port scaled about its centroid so the linear
                    verification value is close to zero
unbalanced_die.json same die with the four outer ports enlarged by 60 mm^2
minimal_die.json    one cavity, one square port
"""
import json
import math
import pathlib
import re

COEF = dict(intercept=-25.048, dist=5.072, area_total=0.012, area_prof=0.593,
            dist_port_prof=10.358, perim_prof=1.211)
HERE = pathlib.Path(__file__).resolve().parent


def area_centroid(poly):
    a = cx = cy = 0.0
    for (x0, y0), (x1, y1) in zip(poly, poly[1:] + poly[:1]):
        w = x0 * y1 - x1 * y0
        a += w
        cx += (x0 + x1) * w
        cy += (y0 + y1) * w
    return abs(a) / 2, (cx / (3 * a), cy / (3 * a))


def perimeter(poly):
    return sum(math.dist(p, q) for p, q in zip(poly, poly[1:] + poly[:1]))


def scale_about_centroid(poly, s):
    _, (cx, cy) = area_centroid(poly)
    return [(cx + s * (x - cx), cy + s * (y - cy)) for x, y in poly]


def build_die():
    radius = 95.0
    outer, inner = 20.0, 17.5
    bridge_offset = 6.0 * math.sqrt(2.0)
    u0, u1 = 14.0, 40.0
    # Local frame: u points away from the die centre, v is tangential.
    side_frames = {"out": (1, 0), "left": (0, 1), "in": (-1, 0), "right": (0, -1)}
    cavities = []
    for k in range(4):
        theta = math.radians(45 + 90 * k)
        er = (math.cos(theta), math.sin(theta))
        et = (-math.sin(theta), math.cos(theta))
        c = (radius * er[0], radius * er[1])

        def to_global(u, v):
            return (c[0] + u * er[0] + v * et[0], c[1] + u * er[1] + v * et[1])

        ports = []
        for name, (a, b) in side_frames.items():
            # (a, b) is the outward normal of this side in the local frame.
            def rot(s, t):
                return (a * s - b * t, b * s + a * t)

            port_local = [(u0, -(u0 - bridge_offset)), (u1, -(u1 - bridge_offset)),
                          (u1, u1 - bridge_offset), (u0, u0 - bridge_offset)]
            zone_local = [(inner, -inner), (outer, -outer), (outer, outer), (inner, inner)]
            port = [to_global(*rot(s, t)) for s, t in port_local]
            zone = [to_global(*rot(s, t)) for s, t in zone_local]
            ports.append({"id": f"C{k + 1}-{name}", "depth_mm": 45.0, "polygon": port,
                          "profile_zone": {"boundaries": [zone]}})
        cavities.append({"ports": ports})
    return cavities


def variables(cavities):
    ports = [p for c in cavities for p in c["ports"]]
    area_total = sum(area_centroid(p["polygon"])[0] for p in ports)
    out = []
    for p in ports:
        a, pc = area_centroid(p["polygon"])
        za, zc = area_centroid(p["profile_zone"]["boundaries"][0])
        out.append(dict(area=a, dist=math.hypot(*pc), area_total=area_total, area_prof=za,
                        perim_prof=perimeter(p["profile_zone"]["boundaries"][0]),
                        dist_port_prof=math.dist(pc, zc)))
    return ports, out


def value(v):
    return (COEF["intercept"] - v["area"] + COEF["dist"] * v["dist"]
            + COEF["area_total"] * v["area_total"] + COEF["area_prof"] * v["area_prof"]
            + COEF["dist_port_prof"] * v["dist_port_prof"] + COEF["perim_prof"] * v["perim_prof"])


def set_areas(ports, targets):
    for p, target in zip(ports, targets):
        a, _ = area_centroid(p["polygon"])
        p["polygon"] = scale_about_centroid(p["polygon"], math.sqrt(target / a))


def round_die(cavities):
    for c in cavities:
        for p in c["ports"]:
            p["polygon"] = [[round(x, 3), round(y, 3)] for x, y in p["polygon"]]
            p["profile_zone"]["boundaries"] = [[[round(x, 3), round(y, 3)] for x, y in b]
                                               for b in p["profile_zone"]["boundaries"]]


def balance(cavities):
    ports, vs = variables(cavities)
    values = [value(v) for v in vs]
    n, ct = len(values), COEF["area_total"]
    shift = ct * sum(values) / (ct * n - 1)
    set_areas(ports, [v["area"] + val - shift for v, val in zip(vs, values)])


def write(name, doc):
    text = json.dumps(doc, indent=2)
    # One vertex per line: [x, y]
    text = re.sub(r"\[\s*(-?[0-9.e+-]+),\s*(-?[0-9.e+-]+)\s*\]", r"[\1, \2]", text)
    (HERE / name).write_text(text + "\n")


def main():
    cavities = build_die()
    balance(cavities)
    round_die(cavities)
    die = {"schema_version": 1, "name": "example-4x4-balanced", "centre": [0.0, 0.0],
           "press": {"container_diameter_mm": 228.0, "max_pressure": 22000.0},
           "cavities": cavities}
    write("balanced_die.json", die)
    ports, _ = variables(cavities)
    print("balanced:", [round(value(v), 2) for v in variables(cavities)[1]])

    ports, vs = variables(cavities)
    set_areas(ports, [v["area"] + (60.0 if p["id"].endswith("-out") else 0.0)
                      for p, v in zip(ports, vs)])
    round_die(cavities)
    die["name"] = "example-4x4-initial"
    write("unbalanced_die.json", die)
    print("unbalanced:", [round(value(v), 2) for v in variables(cavities)[1]])

    square = [[45.0, -5.0], [55.0, -5.0], [55.0, 5.0], [45.0, 5.0]]
    zone = [[70.0, -10.0], [72.0, -10.0], [72.0, 10.0], [70.0, 10.0]]
    write("minimal_die.json", {
        "schema_version": 1, "name": "minimal", "centre": [0.0, 0.0],
        "cavities": [{"ports": [{"id": "P1", "depth_mm": 40.0, "polygon": square,
                                 "profile_zone": {"boundaries": [zone]}}]}]})


if __name__ == "__main__":
    main()
