"""Liminf proxy for the Identity map against both constant variants for p > 2."""

import math

from angdil.bounds import corollary1_constants, corollary1_proxy, geometric_grid
from angdil.mapping import Identity


def main():
    grid = geometric_grid(0.5, 1e-9, 40)
    print(f"{'p':>4s} {'proxy':>14s} {'printed':>14s} {'re-derived':>14s}")
    for p in (2.5, 3.0, 3.5, 4.0, 5.0, 6.0):
        proxy = corollary1_proxy(Identity(), p, grid).proxy_liminf
        printed, rederived = corollary1_constants(p)
        flag = "" if math.isclose(printed, rederived, rel_tol=1e-12) else "  (variants differ)"
        print(f"{p:4g} {proxy:14.8g} {printed:14.8g} {rederived:14.8g}{flag}")


if __name__ == "__main__":
    main()
