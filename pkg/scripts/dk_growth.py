"""Exploratory sweep with n fixed and the degree growing.

Prints eps_{n,k}, two estimates of the stability constant d_k, delta / h and
the lower-bound constant at t = h.  Nothing here is checked; it only shows
how the constants behave as k grows.

    python scripts/dk_growth.py --n 96 --k-max 8
"""

import argparse

from schoenberg.basis import make_mesh
from schoenberg.bounds import delta, epsilon_nk, estimate_dk, lower_bound_constant


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=96)
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    print("k,epsilon_nk,d_k_alternating,d_k_grid_lp,delta_over_h,lower_const_at_h")
    for k in range(3, args.k_max + 1):
        if args.n < 4 * k + 8:
            print(f"# stop: n = {args.n} < 4k+8 = {4 * k + 8}")
            break
        mesh = make_mesh(args.n, k)
        d_alt = estimate_dk(mesh, "alternating")
        d_lp = estimate_dk(mesh, "grid_lp", args.seed)
        d = max(d_alt, d_lp)
        print(
            f"{k},{epsilon_nk(mesh):.6f},{d_alt:.6f},{d_lp:.6f},"
            f"{delta(mesh, d) / mesh.h:.6f},{lower_bound_constant(mesh, mesh.h, d):.6f}"
        )


if __name__ == "__main__":
    main()
