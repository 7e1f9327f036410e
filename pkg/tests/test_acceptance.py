"""Acceptance criteria; the summary block at the end of a run lists one PASS/FAIL line per criterion."""

import time
from itertools import product

import pytest

import test_cells as cells_suite
import test_complex as complex_suite
import test_dga as dga_suite
import test_homology as homology_suite
import test_products as products_suite
from mackit.catalog import boundary_tetrahedron, heptagon, pentagon, truncated_cube, two_edges
from mackit.cells import CHAIN, COCHAIN, cellular_homology, coboundary, word_decomposition
from mackit.complex import kj_construction
from mackit.dga import DgaAlgebra, DgaMonomial, dga_cohomology, dga_multiply, ring_product_table
from mackit.homology import HomologyGroup, betti, reduced_homology_all_subsets
from mackit.manifold import NO, YES, manifold_verdict
from mackit.products import fundamental_class, poincare_duality_check, word_cap, word_cup
from mackit.snf import determinant
from reps import (
    HEPTAGON_CAP_SIX,
    HEPTAGON_CAP_THREE,
    chain,
    cochain,
    free_coordinates,
    heptagon_alpha,
    heptagon_beta_prime,
    pentagon_alpha,
    pentagon_beta,
    pentagon_gamma,
)

C1 = "pentagon ring: Betti (1,10,1), alpha/beta basis, products and signs, < 1 s"
C2 = "heptagon: Betti, subsets, Alexander duality, products, pairing, cap, < 10 s"
C3 = "truncated cube: subset list, J=1 Betti, triple products, J=2 sweep, < 60 s"
C4 = "moment-angle pentagon via the DGA: (1,0,0,5,5,0,0,1)"
C5 = "oracle equivalences"
C6 = "manifold verdicts"
C7 = "Poincare duality for verdict-positive examples with d(J) <= 8"


def free(groups):
    return all(not g.torsion for g in groups)


# -- 1 -----------------------------------------------------------------------

@pytest.mark.criterion(1, C1)
def test_pentagon():
    start = time.perf_counter()
    K = pentagon()
    for route in ("sum", "words"):
        h = cellular_homology(K, route=route)
        assert betti(h) == [1, 10, 1] and free(h)
    dec = word_decomposition(K, COCHAIN)
    A, B = pentagon_alpha(), pentagon_beta()
    assert all(not coboundary(x, K) for x in A + B)
    assert abs(determinant([free_coordinates(K, x, 1, dec) for x in A + B])) == 1
    assert free_coordinates(K, pentagon_gamma(), 2, dec) == [1]
    for family in (A, B):
        for x in family:
            for y in family:
                assert free_coordinates(K, word_cup(x, y, K), 2, dec) == [0]
    table = {(i, j): free_coordinates(K, word_cup(A[i - 1], B[j - 1], K), 2, dec)[0]
             for i in range(1, 6) for j in range(1, 6)}
    assert {k: v for k, v in table.items() if v} == {(1, 2): -1, (2, 5): 1, (3, 3): -1, (4, 1): 1, (5, 4): -1}
    assert time.perf_counter() - start < 1.0


# -- 2 -----------------------------------------------------------------------

@pytest.mark.criterion(2, C2)
def test_heptagon():
    start = time.perf_counter()
    K = heptagon()
    h = cellular_homology(K)
    assert betti(h) == [1, 0, 14, 0, 1] and free(h)
    assert {len(w) for w in reduced_homology_all_subsets(K)} == {0, 3, 4, 7}
    assert homology_suite._alexander_holds(K, 4)

    assert word_cup(cochain(((1, 2), (3,))), cochain(((5, 6), (4, 7))), K) == cochain(((1, 2, 5, 6), (3, 4, 7)))

    dec = word_decomposition(K, COCHAIN)
    A, Bp = heptagon_alpha(), heptagon_beta_prime()
    assert all(not coboundary(x, K) for x in A + Bp)
    pairing = [[free_coordinates(K, word_cup(a, b, K), 4, dec)[0] for b in Bp] for a in A]
    for i in range(7):
        for j in range(7):
            assert abs(pairing[i][j]) == (1 if j == (i + 3) % 7 else 0)
    assert abs(determinant(pairing)) == 1
    for x in Bp:
        for y in Bp:
            assert free_coordinates(K, word_cup(x, y, K), 4, dec) == [0]

    capped = word_cap(cochain(((1, 2), (3,))), fundamental_class(K), K)
    assert capped == chain(*HEPTAGON_CAP_SIX)
    hdec = word_decomposition(K, CHAIN)
    assert hdec.class_of(capped.terms) == hdec.class_of(chain(*HEPTAGON_CAP_THREE).terms)
    assert time.perf_counter() - start < 10.0


# -- 3 -----------------------------------------------------------------------

def truncated_cube_subsets():
    subsets = set()
    for part in product((0, 1), repeat=3):
        if sum(part) == 0:
            continue
        chosen = {i for i, b in zip((1, 2, 3), part) if b}
        subsets.add(tuple(sorted(chosen | {7})))
        subsets.add(tuple(sorted({1, 2, 3, 4, 5, 6} - chosen)))
    for base in ((1, 6, 7), (2, 4, 7), (3, 5, 7), (1, 3, 5, 6, 7), (2, 3, 4, 5, 7), (1, 2, 4, 6, 7)):
        subsets.add(base)
        subsets.add(tuple(i for i in base if i != 7))
    return subsets


@pytest.mark.criterion(3, C3)
def test_truncated_cube():
    start = time.perf_counter()
    K = truncated_cube()
    nonzero = set(reduced_homology_all_subsets(K))
    expected = truncated_cube_subsets()
    assert len(expected) == 26
    assert nonzero - {(), tuple(range(1, 8))} == expected
    assert () in nonzero and tuple(range(1, 8)) in nonzero

    # (S¹)³ ♯ (S¹)³ ♯ 7(S¹×S²): ranks add in the middle degrees
    h = cellular_homology(K)
    assert betti(h) == [1, 3 + 3 + 7, 3 + 3 + 7, 1] and free(h)

    alg1 = DgaAlgebra.of(K)
    reps = [alg1.monomial((1,), (6, 7)), alg1.monomial((2,), (4, 7)), alg1.monomial((3,), (5, 7))]
    prod, cls = ring_product_table(reps, triples=[(0, 1, 2)], pairs=False).triples[(0, 1, 2)]
    assert prod.keys() == {DgaMonomial((1, 2, 3), (4, 5, 6, 7))} and not cls.is_zero

    J2 = (2,) * 7
    alg2 = DgaAlgebra.of(K, J2)
    same = [alg2.monomial((1,), (6, 7)), alg2.monomial((2,), (4, 7)), alg2.monomial((3,), (5, 7))]
    assert not dga_multiply(dga_multiply(same[0], same[1]), same[2])
    part = [alg2.monomial((1,), (6,)), alg2.monomial((2,), (4, 7)), alg2.monomial((3,), (5,))]
    assert not ring_product_table(part, triples=[(0, 1, 2)], pairs=False).triples[(0, 1, 2)][1].is_zero

    # ∂(M⁹₋₁×D²) contributes (1,0,0,3,3,0,3,3,0,0,1); then 3(S³×S⁷), 3(S⁴×S⁶), S⁵×S⁵
    expected_betti = [1, 0, 0, 6, 6, 2, 6, 6, 0, 0, 1]
    KJ = kj_construction(K, J2)
    assert KJ.m == 14
    sweep = [0] * 12
    for groups in reduced_homology_all_subsets(KJ).values():
        for p, g in groups.items():
            assert not g.torsion
            sweep[p + 1] += g.rank
    assert sweep[:11] == expected_betti and sweep[11] == 0
    assert betti(dga_cohomology(K, J2)) == expected_betti
    assert time.perf_counter() - start < 60.0


# -- 4 -----------------------------------------------------------------------

@pytest.mark.criterion(4, C4)
def test_moment_angle_pentagon():
    h = dga_cohomology(pentagon(), (2, 2, 2, 2, 2))
    assert betti(h) == [1, 0, 0, 5, 5, 0, 0, 1] and free(h)


# -- 5 -----------------------------------------------------------------------

ORACLE_CHECKS = [
    cells_suite.test_differentials_square_to_zero,
    cells_suite.test_mu_is_a_chain_map_exhaustive,
    cells_suite.test_eta_is_a_cochain_map_exhaustive_small,
    cells_suite.test_eta_is_a_cochain_map_every_local_configuration,
    products_suite.test_word_products_equal_whitney_all_complexes_small,
    products_suite.test_word_products_equal_whitney_random,
    products_suite.test_products_restrict_from_the_full_cube,
    products_suite.test_diffcap_all_complexes_small_and_pentagon,
    products_suite.test_diffcap_random,
    cells_suite.test_word_complex_equals_omega_sum,
    cells_suite.test_word_complex_equals_basic_construction,
    complex_suite.test_kj_blocks_wedges_and_definition_agree,
    dga_suite.test_eta_is_a_cochain_map_exhaustive,
    dga_suite.test_varpi_commutes_with_d_and_matches_ranks,
    dga_suite.test_wedge_embedding_is_a_quasi_isomorphism,
]


@pytest.mark.criterion(5, C5)
@pytest.mark.parametrize("check", ORACLE_CHECKS, ids=lambda f: f.__name__.removeprefix("test_"))
def test_oracle_equivalence(check):
    check()


@pytest.mark.criterion(5, C5)
@pytest.mark.parametrize("m", range(1, 6))
def test_products_exhaustive_on_the_full_cube(m):
    products_suite.test_whitney_and_diffcap_exhaustive_on_the_full_cube(m)


@pytest.mark.criterion(5, C5)
@pytest.mark.parametrize("K", cells_suite.FIVE_VERTEX_CASES)
def test_basic_construction_on_five_vertices(K):
    cells_suite.test_word_complex_equals_basic_construction_five(K)


# -- 6 -----------------------------------------------------------------------

@pytest.mark.criterion(6, C6)
def test_manifold_verdicts():
    v = manifold_verdict(pentagon())
    assert v.is_homology_manifold and v.dimension == 2

    v = manifold_verdict(heptagon())
    assert v.is_homology_manifold and v.dimension == 4
    v = manifold_verdict(heptagon(), (2,) * 7)
    assert v.is_homology_manifold and v.dimension == 11 and v.topological_manifold_status == YES

    # boundary of the 4-cube: a homology 3-manifold with the homology of S³ and simply connected K
    K = boundary_tetrahedron()
    v = manifold_verdict(K)
    assert v.is_homology_manifold and v.dimension == 3 and v.h1_of_K == HomologyGroup()
    assert betti(cellular_homology(K)) == [1, 0, 0, 1]

    v = manifold_verdict(two_edges())
    assert not v.is_homology_manifold and v.topological_manifold_status == NO
    assert () in [s for s, _ in v.witnesses]


# -- 7 -----------------------------------------------------------------------

def small_j(m: int, limit: int = 8):
    extra = limit - m
    for J in product(range(1, extra + 2), repeat=m):
        if sum(J) <= limit:
            yield J


DUALITY_CASES = [(name, K, J)
                 for name, K in (("pentagon", pentagon()), ("heptagon", heptagon()),
                                 ("tetrahedron-boundary", boundary_tetrahedron()), ("truncated-cube", truncated_cube()))
                 for J in small_j(K.m)]


@pytest.mark.criterion(7, C7)
@pytest.mark.parametrize("name,K,J", DUALITY_CASES, ids=[f"{n}-{''.join(map(str, J))}" for n, _, J in DUALITY_CASES])
def test_poincare_duality(name, K, J):
    assert manifold_verdict(K, J).is_homology_manifold
    report = poincare_duality_check(kj_construction(K, J))
    assert report.dimension == manifold_verdict(K, J).dimension
    for p, (a, b) in report.ranks.items():
        assert a == b
        assert abs(report.determinants[p]) == 1
