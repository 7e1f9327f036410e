import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complexes, complexes_without_ghosts
from mackit.catalog import pentagon, sphere0, truncated_cube
from mackit.cells import COCHAIN, CellChain, cellular_cohomology, coboundary, word_basis
from mackit.complex import SimplicialComplex, from_mask, kj_construction, simplicial_wedge
from mackit.dga import (
    U,
    V,
    DgaAlgebra,
    DgaElement,
    DgaMonomial,
    dga_cohomology,
    dga_differential,
    dga_multiply,
    eta_J,
    eta_J_cochain,
    eta_representatives,
    from_words,
    normalize,
    ring_product_table,
    summand_cohomology,
    to_words,
    varpi_i,
    varpi_J_embedding,
)
from mackit.errors import InputError, NotACocycleError
from mackit.homology import HomologyGroup, direct_sum, reduced_homology_all_subsets
from mackit.products import word_cup
from oracles import all_complexes, closure, simplicial_coboundary


@st.composite
def algebras(draw, max_m=4, max_j=3):
    K = draw(complexes(max_m=max_m))
    J = tuple(draw(st.lists(st.integers(1, max_j), min_size=K.m, max_size=K.m)))
    return DgaAlgebra.of(K, J)


def random_element(alg, rng, terms=3):
    monos = []
    for s in alg.K.simplex_masks:
        rest = [i for i in range(1, alg.m + 1) if not s >> (i - 1) & 1]
        monos.append(DgaMonomial(from_mask(s), tuple(i for i in rest if rng.random() < 0.5)))
    picked = rng.sample(monos, min(terms, len(monos)))
    return DgaElement({mo: rng.choice([-2, -1, 1, 3]) for mo in picked}, alg)


def single(w):
    return CellChain({w: 1}, COCHAIN)


def gen_product(alg, gens):
    x = alg.one()
    for i, kind in gens:
        x = dga_multiply(x, alg.v(i) if kind == V else alg.u(i))
    return x


# -- normal form -----------------------------------------------------------

def test_same_index_rules():
    a1 = DgaAlgebra.of(SimplicialComplex(1, [(1,)]), (1,))
    a2 = DgaAlgebra.of(SimplicialComplex(1, [(1,)]), (2,))
    for alg in (a1, a2):
        assert not dga_multiply(alg.u(1), alg.v(1))
        assert not dga_multiply(alg.v(1), alg.v(1))
    assert dga_multiply(a1.u(1), a1.u(1)) == a1.u(1)
    assert dga_multiply(a1.v(1), a1.u(1)) == a1.v(1)
    assert not dga_multiply(a2.u(1), a2.u(1))
    assert not dga_multiply(a2.v(1), a2.u(1))


def test_odd_generators_anticommute():
    alg = DgaAlgebra.of(SimplicialComplex(2, [(1, 2)]), (2, 2))
    assert dga_multiply(alg.u(2), alg.u(1)) == -1 * dga_multiply(alg.u(1), alg.u(2))
    assert dga_multiply(alg.v(2), alg.v(1)) == dga_multiply(alg.v(1), alg.v(2))


def test_stanley_reisner_kills_non_faces():
    alg = DgaAlgebra.of(sphere0())
    assert not dga_multiply(alg.v(1), alg.v(2))
    assert dga_multiply(alg.v(1), alg.u(2)) == alg.monomial((1,), (2,))


@settings(max_examples=200)
@given(algebras(max_m=3, max_j=3), st.randoms(use_true_random=False))
def test_products_associate(alg, rng):
    a, b, c = (random_element(alg, rng) for _ in range(3))
    assert dga_multiply(dga_multiply(a, b), c) == dga_multiply(a, dga_multiply(b, c))
    assert dga_multiply(alg.one(), a) == a == dga_multiply(a, alg.one())


def test_normal_form_confluent_exhaustive():
    # every generator string of length <= 4 on m <= 3, J entries <= 3, on the full simplex
    for m in (1, 2, 3):
        K = SimplicialComplex.simplex(m)
        gens = [(i, k) for i in range(1, m + 1) for k in (V, U)]
        for J in product(range(1, 4), repeat=m):
            alg = DgaAlgebra.of(K, J)
            for n in range(5 if m < 3 else 4):
                for word in product(gens, repeat=n):
                    r = normalize(word, alg)
                    direct = DgaElement({r[1]: r[0]} if r else {}, alg)
                    assert direct == gen_product(alg, word)
                    # split anywhere and multiply the halves
                    k = n // 2
                    assert dga_multiply(gen_product(alg, word[:k]), gen_product(alg, word[k:])) == direct


@settings(max_examples=200)
@given(algebras(max_m=4), st.randoms(use_true_random=False))
def test_disjoint_supports_graded_commute(alg, rng):
    a, b = random_element(alg, rng, 1), random_element(alg, rng, 1)
    (ma,), (mb,) = a.keys(), b.keys()
    if set(ma.omega) & set(mb.omega):
        return
    da, db = alg.degree(ma.sigma, ma.tau), alg.degree(mb.sigma, mb.tau)
    assert dga_multiply(a, b) == dga_multiply(b, a) * (-1) ** (da * db)


# -- differential -------------------------------------------------------------

def test_differential_example():
    alg = DgaAlgebra.of(SimplicialComplex(2, [(1, 2)]), (2, 2))
    x = dga_multiply(alg.u(1), alg.u(2))
    expected = dga_multiply(alg.v(1), alg.u(2)) - dga_multiply(alg.u(1), alg.v(2))
    assert dga_differential(x) == expected
    alg1 = DgaAlgebra.of(SimplicialComplex(2, [(1, 2)]))
    x = dga_multiply(alg1.u(1), alg1.u(2))
    assert dga_differential(x) == dga_multiply(alg1.v(1), alg1.u(2)) + dga_multiply(alg1.u(1), alg1.v(2))


@settings(max_examples=200)
@given(algebras(max_m=4), st.randoms(use_true_random=False))
def test_differential_squares_to_zero_and_is_a_derivation(alg, rng):
    a, b = random_element(alg, rng), random_element(alg, rng, 1)
    assert not dga_differential(dga_differential(a))
    (mb,) = b.keys()
    db = alg.degree(mb.sigma, mb.tau)
    lhs = dga_differential(dga_multiply(b, a))
    rhs = dga_multiply(dga_differential(b), a) + dga_multiply(b, dga_differential(a)) * (-1) ** db
    assert lhs == rhs


@settings(max_examples=100)
@given(complexes(max_m=5))
def test_trivial_j_matches_word_coboundary(K):
    for ws in word_basis(K, COCHAIN).values():
        for w in ws:
            x = from_words(single(w), K)
            assert to_words(dga_differential(x)) == coboundary(w, K)


def test_trivial_j_product_matches_word_cup_on_pentagon():
    K = pentagon()
    words = [w for ws in word_basis(K, COCHAIN).values() for w in ws]
    for a in words:
        x = from_words(single(a), K)
        for b in words:
            y = from_words(single(b), K)
            assert to_words(dga_multiply(x, y)) == word_cup(a, b, K)


# -- η_J ------------------------------------------------------------------

def test_eta_sign_examples():
    K = SimplicialComplex(2, [(1, 2)])
    alg = DgaAlgebra.of(K, (2, 2))
    assert eta_J((1,), (1, 2), K, (2, 2)) == -1 * alg.monomial((1,), (2,))
    assert eta_J((1,), (1, 2), K) == DgaAlgebra.of(K).monomial((1,), (2,))
    with pytest.raises(InputError):
        eta_J((1,), (2,), K, (2, 2))


def test_eta_is_a_cochain_map_exhaustive():
    # all local configurations at (σ, ω) for m <= 4 and every J with entries <= 3
    for m in range(1, 5):
        for J in product(range(1, 4), repeat=m):
            for w in range(1 << m):
                omega = from_mask(w)
                for s in range(1 << m):
                    if s & ~w:
                        continue
                    sigma = from_mask(s)
                    rest = [i for i in omega if i not in sigma]
                    for k in range(1 << len(rest)):
                        up = [rest[j] for j in range(len(rest)) if k >> j & 1]
                        facets = [tuple(sorted(sigma + (i,))) for i in up] or [sigma]
                        K = SimplicialComplex(m, facets)
                        lhs = dga_differential(eta_J(sigma, omega, K, J))
                        rhs = eta_J_cochain(simplicial_coboundary(sigma, closure(facets), omega), omega, K, J)
                        assert lhs == rhs


def _regraded_sum(K, J):
    alg = DgaAlgebra.of(K, J)
    pieces: dict[int, list[HomologyGroup]] = {}
    for omega, groups in reduced_homology_all_subsets(K).items():
        base = alg.degree((), omega)
        for q, g in groups.items():
            # cohomology of K_ω: free part in degree q, torsion one degree up
            pieces.setdefault(base + q + 1, []).append(HomologyGroup(g.rank))
            if g.torsion:
                pieces.setdefault(base + q + 2, []).append(HomologyGroup(0, g.torsion))
    return [direct_sum(pieces.get(p, [])) for p in range(alg.top_degree + 1)]


@settings(max_examples=200)
@given(algebras(max_m=4))
def test_additive_isomorphism_with_subset_sum(alg):
    assert dga_cohomology(alg.K, alg.J) == _regraded_sum(alg.K, alg.J)


def test_additive_isomorphism_exhaustive_small():
    for m in (1, 2, 3):
        for facets in all_complexes(m):
            K = SimplicialComplex(m, facets)
            for J in product(range(1, 4), repeat=m):
                assert dga_cohomology(K, J) == _regraded_sum(K, J)


def _pad(groups, n):
    return list(groups) + [HomologyGroup()] * (n - len(groups))


@settings(max_examples=200)
@given(complexes_without_ghosts(max_m=4), st.data())
def test_dga_matches_cellular_cohomology_of_kj(K, data):
    J = tuple(data.draw(st.lists(st.integers(1, 3), min_size=K.m, max_size=K.m)))
    if sum(J) > 8:
        return
    a = dga_cohomology(K, J)
    b = cellular_cohomology(kj_construction(K, J))
    n = max(len(a), len(b))
    assert _pad(a, n) == _pad(b, n)


def test_eta_representatives_are_cocycles_spanning_cohomology():
    K, J = pentagon(), (2, 2, 2, 2, 2)
    reps = [x for omega in reduced_homology_all_subsets(K) for _, x in eta_representatives(K, J, omega)]
    assert all(not dga_differential(x) for x in reps)
    assert len(reps) == 1 + 5 + 5 + 1


def test_pentagon_moment_angle():
    assert [g.rank for g in dga_cohomology(pentagon(), (2,) * 5)] == [1, 0, 0, 5, 5, 0, 0, 1]


# -- wedge maps ----------------------------------------------------------------

def test_varpi_examples():
    K = pentagon()
    alg = DgaAlgebra.of(K)
    x = varpi_i(alg.monomial((1,), (3,)), 1)
    assert x.render() == "v{1,2}u{4}"
    assert varpi_i(alg.one(), 1).render() == "1"
    with pytest.raises(InputError):
        varpi_i(alg.one(), 9)


@settings(max_examples=200)
@given(complexes_without_ghosts(max_m=4), st.data())
def test_varpi_commutes_with_d_and_matches_ranks(K, data):
    i = data.draw(st.sampled_from(K.vertices))
    alg = DgaAlgebra.of(K)
    W = simplicial_wedge(K, i)
    target = DgaAlgebra.of(W)
    rng = data.draw(st.randoms(use_true_random=False))
    x = random_element(alg, rng)
    assert dga_differential(varpi_i(x, i)) == varpi_i(dga_differential(x), i)
    chi = lambda labels: tuple(k if k <= i else k + 1 for k in labels)  # noqa: E731
    for w in range(1 << K.m):
        omega = from_mask(w)
        h = summand_cohomology(alg, omega)
        if i in omega:
            h2 = summand_cohomology(target, tuple(sorted(chi(omega) + (i + 1,))))
            assert {p: g.rank for p, g in h.items()} == {p - 1: g.rank for p, g in h2.items()}
        else:
            h2 = summand_cohomology(target, chi(omega))
            assert {p: g.rank for p, g in h.items()} == {p: g.rank for p, g in h2.items()}


def test_wedge_embedding_on_two_points():
    E = varpi_J_embedding(sphere0(), (2, 2))
    assert E.KJ == SimplicialComplex.boundary_of_simplex(4)
    assert E.generator_image(1, V).render() == "v{1,2}"
    assert E.generator_image(1, U).render() == "v{2}u{1}"
    assert E.generator_image(2, V).render() == "v{3,4}"
    assert E.generator_image(2, U).render() == "v{4}u{3}"


def test_wedge_embedding_trivial_j_is_identity():
    K = pentagon()
    E = varpi_J_embedding(K, (1,) * 5)
    alg = DgaAlgebra.of(K)
    for mono in E.source_monomials():
        assert E(DgaElement({mono: 1}, alg)).keys() == {mono}


@settings(max_examples=200)
@given(complexes_without_ghosts(max_m=4), st.data())
def test_wedge_embedding_is_a_quasi_isomorphism(K, data):
    J = tuple(data.draw(st.lists(st.integers(1, 2), min_size=K.m, max_size=K.m)))
    E = varpi_J_embedding(K, J)
    assert E.is_injective() and E.commutes_with_differential()
    rng = data.draw(st.randoms(use_true_random=False))
    monos = E.source_monomials()
    pairs = [(rng.choice(monos), rng.choice(monos)) for _ in range(20)]
    assert E.is_multiplicative(pairs)
    assert E.image_cohomology() == dga_cohomology(K, J)


def test_wedge_embedding_pentagon():
    E = varpi_J_embedding(pentagon(), (2, 1, 1, 1, 1))
    assert E.is_injective() and E.commutes_with_differential() and E.is_multiplicative()
    h = dga_cohomology(pentagon(), (2, 1, 1, 1, 1))
    assert E.image_cohomology() == h
    assert [g.rank for g in h] == [1, 5, 5, 1] + [0] * (len(h) - 4)


# -- product tables ----------------------------------------------------------

def test_product_table_rejects_non_cocycles():
    alg = DgaAlgebra.of(pentagon())
    with pytest.raises(NotACocycleError):
        ring_product_table([alg.u(1)])


def test_truncated_cube_triple_products():
    K = truncated_cube()
    alg1 = DgaAlgebra.of(K)
    a = [alg1.monomial((1,), (6, 7)), alg1.monomial((2,), (4, 7)), alg1.monomial((3,), (5, 7))]
    table = ring_product_table(a, triples=[(0, 1, 2)], pairs=False)
    prod, cls = table.triples[(0, 1, 2)]
    assert not cls.is_zero
    assert prod.keys() == {DgaMonomial((1, 2, 3), (4, 5, 6, 7))}
    alg2 = DgaAlgebra.of(K, (2,) * 7)
    same = [alg2.monomial((1,), (6, 7)), alg2.monomial((2,), (4, 7)), alg2.monomial((3,), (5, 7))]
    assert not dga_multiply(dga_multiply(same[0], same[1]), same[2])
    part = [alg2.monomial((1,), (6,)), alg2.monomial((2,), (4, 7)), alg2.monomial((3,), (5,))]
    table = ring_product_table(part, triples=[(0, 1, 2)], pairs=False)
    assert not table.triples[(0, 1, 2)][1].is_zero


def test_random_elements_helper_is_deterministic():
    alg = DgaAlgebra.of(pentagon(), (2,) * 5)
    assert random_element(alg, random.Random(1)) == random_element(alg, random.Random(1))
