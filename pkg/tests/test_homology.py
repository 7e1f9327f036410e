import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import complexes
from mackit.catalog import heptagon, pentagon, projective_plane
from mackit.complex import SimplicialComplex, from_mask
from mackit.errors import InvariantViolation, ResourceLimitError
from mackit.homology import (
    HomologyGroup,
    IntegerChainComplex,
    direct_sum,
    reduced_chain_complex,
    reduced_cochain_complex,
    reduced_homology,
    reduced_homology_all_subsets,
    simplicial_homology,
)
from mackit.snf import determinant, elementary_divisors, kernel_basis, matvec, smith_decomposition, smith_normal_form
from oracles import closure
from oracles import reduced_homology as oracle_reduced_homology
from oracles import _divisors as sympy_divisors

matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))


def as_groups(h):
    return {p: HomologyGroup(r, t) for p, (r, t) in h.items()}


def test_snf_small_examples():
    assert smith_normal_form([[1, 0], [0, 1]]) == ([1, 1], 2)
    assert smith_normal_form([[2, 0], [0, 0]]) == ([2], 1)
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == ([2, 6, 12], 3)


@given(matrices)
def test_snf_matches_sympy(M):
    divs, rank = smith_normal_form(M)
    assert divs == sympy_divisors(M)
    assert rank == len(divs)
    assert all(b % a == 0 for a, b in zip(divs, divs[1:]))


@given(matrices)
def test_smith_decomposition_is_exact(M):
    D = smith_decomposition([row[:] for row in M])
    rows, cols = len(M), len(M[0])
    prod = [[sum(D.U[i][k] * M[k][j] for k in range(rows)) for j in range(cols)] for i in range(rows)]
    prod = [[sum(prod[i][k] * D.V[k][j] for k in range(cols)) for j in range(cols)] for i in range(rows)]
    diag = D.diagonal
    for i in range(rows):
        for j in range(cols):
            assert prod[i][j] == (diag[i] if i == j and i < len(diag) else 0)
    assert abs(determinant(D.U)) == 1 and abs(determinant(D.V)) == 1


@given(matrices)
def test_kernel_basis_is_in_kernel(M):
    for v in kernel_basis(M, len(M[0])):
        assert not any(matvec(M, v))


def test_big_entries_stay_exact():
    M = [[10 ** 30 + 1, 10 ** 30], [10 ** 30, 10 ** 30 - 1]]
    assert elementary_divisors({i: {j: v for j, v in enumerate(r)} for i, r in enumerate(M)}) == [1, 1]
    assert determinant(M) == -1


def test_homology_group_normalises():
    assert direct_sum([HomologyGroup(0, (2,)), HomologyGroup(1, (3,))]) == HomologyGroup(1, (6,))
    assert direct_sum([HomologyGroup(0, (2,)), HomologyGroup(0, (2,))]) == HomologyGroup(0, (2, 2))
    assert str(HomologyGroup(2, (2,))) == "Z^2 + Z/2"
    with pytest.raises(ValueError):
        HomologyGroup(0, (2, 3))


def test_projective_plane():
    h = simplicial_homology(projective_plane())
    assert h == [HomologyGroup(1), HomologyGroup(0, (2,)), HomologyGroup()]


def test_non_complex_is_rejected():
    with pytest.raises(InvariantViolation):
        IntegerChainComplex({0: 1, 1: 1, 2: 1}, {1: {0: {0: 1}}, 2: {0: {0: 1}}})


def test_empty_full_subcomplex():
    assert reduced_homology(pentagon(), ()) == {-1: HomologyGroup(1)}


@pytest.mark.parametrize("K,expected", [
    (SimplicialComplex.boundary_of_simplex(4), {2: HomologyGroup(1)}),
    (pentagon(), {1: HomologyGroup(1)}),
    (SimplicialComplex.simplex(4), {}),
])
def test_reduced_homology_examples(K, expected):
    assert reduced_homology(K) == expected


@given(complexes(max_m=6), st.data())
def test_reduced_homology_matches_oracle(K, data):
    omega = data.draw(st.sets(st.integers(1, K.m)))
    simplices = closure(K.facets)
    got = reduced_homology(K, sorted(omega))
    assert got == as_groups(oracle_reduced_homology(simplices, frozenset(omega)))


@given(complexes(max_m=6))
def test_boundary_squares_to_zero_and_euler(K):
    C = reduced_chain_complex(K)
    C.complex.check()
    h = C.complex.all_homology()
    chi = sum((-1) ** p * len(C.basis.get(p, [])) for p in C.basis)
    assert chi == sum((-1) ** p * g.rank for p, g in h.items())


@given(complexes(max_m=6))
def test_cohomology_betti_match_homology(K):
    C, D = reduced_chain_complex(K), reduced_cochain_complex(K)
    D.complex.check()
    for p in range(-1, K.dim + 1):
        h, c = C.homology(p), D.homology(p)
        assert h.rank == c.rank
        # torsion of H^p is torsion of H_{p-1}
        assert c.torsion == C.homology(p - 1).torsion


def test_pentagon_nonvanishing_subsets():
    got = set(reduced_homology_all_subsets(pentagon()))
    mod = lambda i: (i - 1) % 5 + 1  # noqa: E731
    expected = {tuple(sorted((i, i + 2))) for i in (1, 2, 3)}
    expected |= {tuple(sorted((i, i + 3))) for i in (1, 2)}
    expected |= {tuple(sorted((i, mod(i + 2), mod(i + 3)))) for i in range(1, 6)}
    expected |= {(), (1, 2, 3, 4, 5)}
    assert got == expected


def test_heptagon_nonvanishing_cardinalities():
    data = reduced_homology_all_subsets(heptagon())
    assert {len(w) for w in data} == {0, 3, 4, 7}
    assert sum(g.rank for groups in data.values() for p, g in groups.items() if p == 1) == 14


def test_simplex_only_empty_set_contributes():
    assert list(reduced_homology_all_subsets(SimplicialComplex.simplex(5))) == [()]


def test_subset_sweep_cap_and_parallel():
    with pytest.raises(ResourceLimitError):
        reduced_homology_all_subsets(heptagon(), cap=6)
    assert reduced_homology_all_subsets(heptagon(), workers=2) == reduced_homology_all_subsets(heptagon())


def _alexander_holds(K: SimplicialComplex, n: int) -> bool:
    full = set(range(1, K.m + 1))
    for w in range(1 << K.m):
        omega = from_mask(w)
        rest = tuple(sorted(full - set(omega)))
        co = {p: g for p, g in reduced_cochain_complex(K, w).complex.all_homology().items() if not g.is_zero}
        ho = reduced_homology(K, rest)
        for i in range(-1, n):
            if co.get(n - i - 2, HomologyGroup()) != ho.get(i, HomologyGroup()):
                return False
    return True


def test_alexander_duality_heptagon():
    assert _alexander_holds(heptagon(), 4)


def test_alexander_duality_tetrahedron_boundary():
    assert _alexander_holds(SimplicialComplex.boundary_of_simplex(4), 3)
