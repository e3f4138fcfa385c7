#!/usr/bin/env python3
"""Generate an example triangle mesh (JSON) for the mesh-metrics subcommand.

The mesh triangulates the unit square on an n x n grid whose row heights are
graded toward y = 0, the way boundary-layer meshes are.  The bottom rows
become long thin needles: their chunkiness h/rho blows up while the
semiregularity R/h stays near 1/2, which is exactly the contrast the metrics
report is meant to surface.  With --with-caps a fan of obtuse cap triangles
is attached along the top edge; those do drive R/h up and get flagged once
--semireg-threshold is set.
"""

import argparse
import json
import sys


def graded_square(n: int, grade: float):
    ys = [(j / n) ** grade for j in range(n + 1)]
    vertices = [[i / n, ys[j]] for j in range(n + 1) for i in range(n + 1)]
    cells = []
    for j in range(n):
        for i in range(n):
            v00 = j * (n + 1) + i
            v10 = v00 + 1
            v01 = v00 + (n + 1)
            v11 = v01 + 1
            cells.append([v00, v10, v11])
            cells.append([v00, v11, v01])
    return vertices, cells


def append_cap_fan(vertices, cells, n: int):
    top = [len(vertices) - (n + 1) + i for i in range(n + 1)]
    for i in range(n):
        eps = 2.0 ** (-2 * i - 2) / n
        apex = len(vertices)
        vertices.append([(i + 0.5) / n, 1.0 + eps])
        cells.append([top[i], top[i + 1], apex])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-o", "--output", default="example_mesh.json")
    ap.add_argument("--n", type=int, default=8, help="grid cells per side")
    ap.add_argument("--grade", type=float, default=3.0,
                    help="row grading exponent (1 = uniform)")
    ap.add_argument("--with-caps", action="store_true",
                    help="attach obtuse cap triangles along the top edge")
    args = ap.parse_args(argv)
    if args.n < 1 or args.grade < 1.0:
        ap.error("need n >= 1 and grade >= 1")

    vertices, cells = graded_square(args.n, args.grade)
    if args.with_caps:
        append_cap_fan(vertices, cells, args.n)
    with open(args.output, "w") as fh:
        json.dump({"dimension": 2, "vertices": vertices, "cells": cells}, fh)
        fh.write("\n")
    print(f"wrote {args.output}: {len(vertices)} vertices, {len(cells)} cells")
    return 0


if __name__ == "__main__":
    sys.exit(main())
