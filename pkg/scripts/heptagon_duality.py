"""Fundamental class, a cap product and the duality matrices for the heptagon."""

from mackit.catalog import heptagon
from mackit.cells import CHAIN, cochain_word, word_decomposition
from mackit.products import fundamental_class, poincare_duality_check, word_cap


def main() -> None:
    K = heptagon()
    gamma = fundamental_class(K)
    print(f"Gamma has {len(gamma.terms)} terms:")
    print(" ", gamma.render())
    a = cochain_word((1, 2), (3,))
    capped = word_cap(a, gamma, K)
    print(f"{a.render()} cap Gamma = {capped.render()}")
    dec = word_decomposition(K, CHAIN)
    print("class is zero:", dec.class_of(capped.terms).is_zero)
    report = poincare_duality_check(K)
    for p in sorted(report.ranks):
        r, s = report.ranks[p]
        print(f"H^{p} -> H_{report.dimension - p}: ranks {r}/{s}, det {report.determinants[p]}")
    print("duality ok:", report.ok)


if __name__ == "__main__":
    main()
