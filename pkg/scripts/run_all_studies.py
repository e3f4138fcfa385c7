#!/usr/bin/env python3
"""Run the full experiment grid and collect the CSV artifacts in one place.

Drives the CLI in-process, one artifact per file:

  squeeze_d{d}_k{k}_m{m}.csv       error constants along the squeeze family
  scaling_k{k}_m{m}_p{p}.csv       normalized ratios over needle/cap/scaled
  constants_d{d}_k{k}_m{m}.csv     Rayleigh traces on the reference element
  poincare_k{k}_{delta}.csv        node-vanishing Poincare constants
  diffquot_k{max}.csv              difference-quotient identity residuals
  mesh_metrics.csv                 per-cell report for the example mesh

The full grid takes a few minutes; --quick trims it to a smoke run.
"""

import argparse
import math
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

from simplexinterp.cli import main as cli
from make_example_mesh import main as make_mesh


def run(outdir: pathlib.Path, name: str, argv: list[str]) -> None:
    target = outdir / name
    code = cli([*argv, "-o", str(target)])
    if code != 0:
        sys.exit(f"failed ({code}): {' '.join(argv)}")
    print(f"  {target}")


def p_tag(p: float) -> str:
    return "inf" if p == math.inf else f"{p:g}"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--quick", action="store_true", help="small smoke grid")
    args = ap.parse_args(argv)
    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    dims = (2,) if args.quick else (2, 3)
    ks = (1,) if args.quick else (1, 2, 3)
    ps = (2.0,) if args.quick else (1.0, 2.0, math.inf)

    print("squeeze studies")
    for d in dims:
        for k in ks:
            for m in range(0, k + 1):
                run(out, f"squeeze_d{d}_k{k}_m{m}.csv",
                    ["squeeze", "--d", str(d), "--k", str(k), "--m", str(m),
                     "--r", "2"])

    print("scaling studies")
    for k in ks:
        for m in range(0, k + 1):
            for p in ps:
                run(out, f"scaling_k{k}_m{m}_p{p_tag(p)}.csv",
                    ["scaling", "--k", str(k), "--m", str(m), "--p", p_tag(p)])

    print("constant traces")
    for d in dims:
        for k in ks:
            for m in range(0, k + 1):
                run(out, f"constants_d{d}_k{k}_m{m}.csv",
                    ["constants", "--d", str(d), "--k", str(k), "--m", str(m),
                     "--r", str(min(4, 8 - k))])
    for k, delta in ((2, "1,0"), (2, "1,1"), (3, "2,0")):
        if args.quick and k > 2:
            continue
        run(out, f"poincare_k{k}_{delta.replace(',', '')}.csv",
            ["constants", "--target", "poincare", "--k", str(k),
             "--delta", delta, "--r", "2"])

    print("difference-quotient verification")
    kmax = 2 if args.quick else 5
    for d in dims:
        run(out, f"diffquot_d{d}_k{kmax}.csv",
            ["diffquot-verify", "--d", str(d), "--k", str(kmax)])

    print("mesh metrics")
    mesh = out / "example_mesh.json"
    make_mesh(["--with-caps", "-o", str(mesh)])
    run(out, "mesh_metrics.csv",
        ["mesh-metrics", "--k", "2", "--m", "1",
         "--semireg-threshold", "2.0", str(mesh)])
    return 0


if __name__ == "__main__":
    sys.exit(main())
