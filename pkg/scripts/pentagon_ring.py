"""Print the degree-1 product table of (D¹,S⁰)^K for the pentagon.

Classes are numbered x1..x10 in the free basis from the subset decomposition;
each product is written in the basis of H^2 = Z.
"""

from mackit.catalog import pentagon
from mackit.cells import COCHAIN, word_decomposition
from mackit.products import free_cohomology_basis, free_homology_slots, word_cup


def main() -> None:
    K = pentagon()
    dec = word_decomposition(K, COCHAIN)
    basis = [x for _, x in free_cohomology_basis(K, 1, decomposition=dec)]
    slots = free_homology_slots(K, 2)
    print("basis of H^1:")
    for k, x in enumerate(basis, 1):
        print(f"  x{k} = {x.render()}")
    print("nonzero products x_i x_j (coefficient of the top class):")
    for i, a in enumerate(basis, 1):
        for j, b in enumerate(basis, 1):
            cls = dec.class_of(word_cup(a, b, K).terms)
            coeff = [c for omega, r in slots for c in cls.free_vector(omega, 2, r)]
            if any(coeff):
                print(f"  x{i} x{j} = {coeff[0]}")


if __name__ == "__main__":
    main()
