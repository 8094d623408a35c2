#!/usr/bin/env python3
"""Reproduce the Coxeter cubulation landmarks in one run.

For each system the script builds a Cayley ball, truncates the wall
halfspaces, runs the dual construction, and prints the maximal cube
dimensions plus the ends profile:

    I2(3)           -> one 3-cube, all six elements embedded
    affine A2 (3,3,3) -> maximal cubes of dimension exactly 3
    PGL(2,Z) (3,inf,2) -> maximal cube dimensions {2, 3}

Usage: python scripts/coxeter_landmarks.py [--radius R] [--margin M]
"""

import argparse
import json

from cubical import cayley_ball, cubulate, ends_profile, is_cat0, parse_system

SYSTEMS = {
    "I2(3)": [[1, 3], [3, 1]],
    "affine A2": [[1, 3, 3], [3, 1, 3], [3, 3, 1]],
    "PGL(2,Z)": [[1, 3, 2], [3, 1, 0], [2, 0, 1]],
    "infinite dihedral": [[1, 0], [0, 1]],
    "free product of three C2": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
}

CUBULATE = {"I2(3)": (3, 0), "affine A2": (4, 2), "PGL(2,Z)": (4, 2)}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--radius", type=int, default=None,
                    help="override the per-system ball radius")
    ap.add_argument("--margin", type=int, default=None)
    ap.add_argument("--ends-radius", type=int, default=6)
    args = ap.parse_args()

    for name, (radius, margin) in CUBULATE.items():
        radius = args.radius or radius
        margin = args.margin if args.margin is not None else margin
        sys_ = parse_system(SYSTEMS[name])
        ball = cayley_ball(sys_, radius)
        cub = cubulate(ball, margin)
        x = cub.dual.complex
        print(f"{name}: ball={len(ball.elements)} walls={len(cub.truncated.walls)} "
              f"dual={x.counts()['vertices']}v "
              f"maxdims={sorted(cub.maximal_cube_dimensions())} "
              f"cat0={is_cat0(x).ok} "
              f"nu_injective_on_ball={cub.injective_on_ball}")

    print()
    for name, matrix in SYSTEMS.items():
        radius = args.ends_radius if name != "free product of three C2" else 5
        rep = ends_profile(parse_system(matrix), radius)
        print(f"ends {name}: {json.dumps(rep.counts)} -> {rep.verdict}")


if __name__ == "__main__":
    main()
