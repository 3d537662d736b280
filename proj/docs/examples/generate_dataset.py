#!/usr/bin/env python3
"""Writes synthetic_ports.csv: 596 ports from 38 four-by-four dies whose areas
follow the shipped linear balancing model plus Gaussian noise (sigma 70.77 mm^2).
Perimeter, depth and the press columns are unrelated to the area, so a stepwise
fit should leave them out.
"""
import csv
import pathlib
import random

HERE = pathlib.Path(__file__).resolve().parent
COLUMNS = ["die_id", "port_id", "area_mm2", "perimeter_mm", "dist_mm", "area_prof_mm2",
           "perim_prof_mm", "dist_port_prof_mm", "depth_mm", "area_total_mm2", "perim_total_mm",
           "container_diameter_mm", "max_pressure"]


def main():
    rng = random.Random(2021)
    rows = []
    for i in range(596):
        if i % 16 == 0:
            die = dict(area_total=rng.uniform(8000, 20000), perim_total=rng.uniform(1500, 3000),
                       container=rng.choice([178.0, 203.0, 228.0]), pressure=rng.uniform(16000, 22000))
        dist, area_prof = rng.uniform(50, 250), rng.uniform(30, 300)
        perim_prof, dist_port_prof = rng.uniform(40, 200), rng.uniform(5, 40)
        area = (-25.048 + 5.072 * dist + 0.012 * die["area_total"] + 0.593 * area_prof
                + 10.358 * dist_port_prof + 1.211 * perim_prof + rng.gauss(0.0, 70.77))
        rows.append([f"D{i // 16 + 1}", i % 16 + 1, area, rng.uniform(100, 200), dist, area_prof,
                     perim_prof, dist_port_prof, rng.uniform(40, 50), die["area_total"],
                     die["perim_total"], die["container"], die["pressure"]])
    with open(HERE / "synthetic_ports.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in rows:
            w.writerow([r[0], r[1]] + [f"{x:.3f}" for x in r[2:]])


if __name__ == "__main__":
    main()
