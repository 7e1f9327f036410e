"""Compare J = (1,...,1) and J = (2,...,2) for the truncated cube.

Prints the Betti numbers from the DGA and from the subset sweep over K(J),
then the triple products distinguishing the two rings.
"""

import argparse
import time

from mackit.catalog import truncated_cube
from mackit.complex import kj_construction
from mackit.dga import DgaAlgebra, dga_cohomology, ring_product_table
from mackit.homology import betti, reduced_homology_all_subsets


def sweep_betti(K) -> list[int]:
    out = [0] * (K.m + 1)
    for groups in reduced_homology_all_subsets(K).values():
        for p, g in groups.items():
            out[p + 1] += g.rank
    while len(out) > 1 and not out[-1]:
        out.pop()
    return out


def triple(alg, gens) -> str:
    elems = [alg.monomial(s, t) for s, t in gens]
    prod, cls = ring_product_table(elems, triples=[(0, 1, 2)], pairs=False).triples[(0, 1, 2)]
    return f"{prod.render() or '0'} ({'nonzero' if not cls.is_zero else 'zero'} class)"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--skip-sweep", action="store_true", help="skip the 2^14 subset sweep")
    args = ap.parse_args()
    K = truncated_cube()
    same = [((1,), (6, 7)), ((2,), (4, 7)), ((3,), (5, 7))]
    partition = [((1,), (6,)), ((2,), (4, 7)), ((3,), (5,))]
    for J in ((1,) * 7, (2,) * 7):
        print(f"J = {J}")
        print("  DGA Betti:", betti(dga_cohomology(K, J)))
        if J[0] == 2 and not args.skip_sweep:
            t = time.perf_counter()
            print("  K(J) sweep Betti:", sweep_betti(kj_construction(K, J)), f"({time.perf_counter() - t:.1f} s)")
        alg = DgaAlgebra.of(K, J)
        print("  same-support triple:", triple(alg, same))
        if J[0] == 2:
            print("  partition triple:", triple(alg, partition))


if __name__ == "__main__":
    main()
