"""The differential graded algebra ``R*_K(J)``.

Generators ``ṽ^i`` (degree ``j_i``) and ``ũ^i`` (degree ``j_i - 1``) with
``dũ^i = ṽ^i``.  Distinct indices graded-commute, a square of a generator is
itself in degree 0 and zero otherwise, ``ũ^iṽ^i = 0`` and ``ṽ^iũ^i`` is
``ṽ^i`` in degree 0 and zero otherwise.  Monomials ``ṽ^σ`` with σ ∉ K vanish.

Every monomial has a square-free normal form ``ṽ^σ ũ^τ``: the generators in
increasing index order.  Products are computed by concatenating the two
ordered generator strings and stable-sorting them, collecting a sign for every
swap of generators with distinct indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .cells import COCHAIN, CellChain, CellWord
from .complex import (
    Simplex,
    SimplicialComplex,
    blocks,
    check_j,
    from_mask,
    kj_construction,
    simplicial_wedge,
    to_mask,
)
from .errors import InputError, NotACocycleError, ResourceLimitError
from .homology import (
    ClassVector,
    HomologyGroup,
    SummandDecomposition,
    direct_sum,
    reduced_cochain_complex,
)
from .linear import Combination

V, U = 0, 1  # generator kinds


@dataclass(frozen=True)
class DgaAlgebra:
    K: SimplicialComplex
    J: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "J", check_j(self.J, self.K.m))

    @classmethod
    def of(cls, K: SimplicialComplex, J: Sequence[int] | None = None) -> "DgaAlgebra":
        return cls(K, tuple(J) if J is not None else (1,) * K.m)

    @property
    def m(self) -> int:
        return self.K.m

    def generator_degree(self, i: int, kind: int) -> int:
        return self.J[i - 1] - (kind == U)

    def degree(self, sigma: Iterable[int], tau: Iterable[int]) -> int:
        return sum(self.J[i - 1] for i in sigma) + sum(self.J[i - 1] - 1 for i in tau)

    @cached_property
    def top_degree(self) -> int:
        return sum(self.J) - self.m + self.K.dim + 1

    def monomial(self, sigma=(), tau=()) -> "DgaElement":
        return DgaElement({DgaMonomial(tuple(sigma), tuple(tau)): 1}, self)

    def one(self) -> "DgaElement":
        return self.monomial()

    def v(self, i: int) -> "DgaElement":
        return self.monomial((i,), ())

    def u(self, i: int) -> "DgaElement":
        return self.monomial((), (i,))

    def zero(self) -> "DgaElement":
        return DgaElement({}, self)


@dataclass(frozen=True, order=True)
class DgaMonomial:
    """Normal-form monomial ``ṽ^σ ũ^τ``."""

    sigma: Simplex
    tau: Simplex

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(sorted(set(self.sigma))))
        object.__setattr__(self, "tau", tuple(sorted(set(self.tau))))
        if set(self.sigma) & set(self.tau):
            raise InputError(f"ṽ and ũ supports overlap: {self.sigma}, {self.tau}")

    @property
    def omega(self) -> Simplex:
        return tuple(sorted(self.sigma + self.tau))

    def generators(self) -> list[tuple[int, int]]:
        return [(i, V if i in self.sigma else U) for i in self.omega]

    def render(self) -> str:
        if not self.sigma and not self.tau:
            return "1"
        out = ""
        if self.sigma:
            out += "v{" + ",".join(map(str, self.sigma)) + "}"
        if self.tau:
            out += "u{" + ",".join(map(str, self.tau)) + "}"
        return out

    def __str__(self):
        return self.render()


class DgaElement(Combination):
    __slots__ = ("algebra",)

    def __init__(self, terms: dict | None, algebra: DgaAlgebra):
        super().__init__(terms)
        self.algebra = algebra
        for mono in self.terms:
            for i in mono.sigma + mono.tau:
                if not 1 <= i <= algebra.m:
                    raise InputError(f"label {i} outside [1, {algebra.m}]")
            if not algebra.K.contains_mask(to_mask(mono.sigma)):
                raise InputError(f"{mono.render()}: {mono.sigma} is not a simplex")

    def _like(self, terms):
        return DgaElement(terms, self.algebra)

    def _check_compatible(self, other):
        if not isinstance(other, DgaElement) or other.algebra != self.algebra:
            raise InputError("elements of different algebras")

    def __mul__(self, other):
        if isinstance(other, DgaElement):
            return dga_multiply(self, other)
        return super().__mul__(other)

    def degrees(self) -> set[int]:
        return {self.algebra.degree(m.sigma, m.tau) for m in self.terms}

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items()):
            mag = "" if abs(c) == 1 else f"{abs(c)} "
            parts.append(("- " if c < 0 else "+ ") + mag + mono.render())
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    __str__ = render

    def __repr__(self):
        return f"DgaElement({self.render()!r})"


# -- normal form --------------------------------------------------------------

def normalize(gens: Sequence[tuple[int, int]], algebra: DgaAlgebra) -> tuple[int, DgaMonomial] | None:
    """Reduce an ordered generator string to ``± ṽ^σũ^τ`` (or None for zero)."""
    seq = list(gens)
    sign = 1
    # insertion sort: stable, and each swap is between distinct indices
    for a in range(1, len(seq)):
        b = a
        while b > 0 and seq[b - 1][0] > seq[b][0]:
            x, y = seq[b - 1], seq[b]
            if algebra.generator_degree(*x) * algebra.generator_degree(*y) % 2:
                sign = -sign
            seq[b - 1], seq[b] = y, x
            b -= 1
    sigma, tau = [], []
    k = 0
    while k < len(seq):
        i, kind = seq[k]
        run = [kind]
        while k + 1 < len(seq) and seq[k + 1][0] == i:
            k += 1
            run.append(seq[k][1])
        k += 1
        zero_deg = algebra.J[i - 1] == 1  # ũ^i has degree 0
        cur = run[0]
        for nxt in run[1:]:
            if cur == V and nxt == V:
                return None
            if cur == U and nxt == U:
                if not zero_deg:
                    return None
            elif cur == U and nxt == V:
                return None
            else:  # ṽũ
                if not zero_deg:
                    return None
        (sigma if cur == V else tau).append(i)
    if not algebra.K.contains_mask(to_mask(sigma)):
        return None
    return sign, DgaMonomial(tuple(sigma), tuple(tau))


def dga_multiply(a: DgaElement, b: DgaElement) -> DgaElement:
    a._check_compatible(b)
    alg = a.algebra
    out: dict = {}
    for m1, c1 in a.terms.items():
        g1 = m1.generators()
        for m2, c2 in b.terms.items():
            r = normalize(g1 + m2.generators(), alg)
            if r is not None:
                s, mono = r
                out[mono] = out.get(mono, 0) + s * c1 * c2
    return DgaElement(out, alg)


def _monomial_differential(mono: DgaMonomial, alg: DgaAlgebra) -> dict:
    out = {}
    acc = 0
    smask = to_mask(mono.sigma)
    for i, kind in mono.generators():
        if kind == U and alg.K.contains_mask(smask | 1 << (i - 1)):
            new = DgaMonomial(tuple(sorted(mono.sigma + (i,))), tuple(j for j in mono.tau if j != i))
            out[new] = -1 if acc % 2 else 1
        acc += alg.generator_degree(i, kind)
    return out


def dga_differential(a: DgaElement) -> DgaElement:
    """Leibniz rule on the ordered product, ``dũ^i = ṽ^i``, ``dṽ^i = 0``."""
    out: dict = {}
    for mono, c in a.terms.items():
        for new, s in _monomial_differential(mono, a.algebra).items():
            out[new] = out.get(new, 0) + s * c
    return DgaElement(out, a.algebra)


# -- per-ω cohomology -----------------------------------------------------

def summand_basis(alg: DgaAlgebra, omega: Iterable[int]) -> dict[int, list[DgaMonomial]]:
    omega = tuple(sorted(omega))
    w = to_mask(omega)
    out: dict[int, list[DgaMonomial]] = {}
    for s in sorted((x for x in alg.K.simplex_masks if x & ~w == 0), key=lambda x: from_mask(x)):
        sigma = from_mask(s)
        mono = DgaMonomial(sigma, tuple(i for i in omega if i not in sigma))
        out.setdefault(alg.degree(mono.sigma, mono.tau), []).append(mono)
    return out


def decomposition(alg: DgaAlgebra) -> SummandDecomposition:
    return SummandDecomposition(
        summand_of=lambda mono: mono.omega,
        basis_of=lambda omega: summand_basis(alg, omega),
        differential=lambda mono: _monomial_differential(mono, alg),
        step=1,
    )


def summand_cohomology(alg: DgaAlgebra, omega: Iterable[int], dec: SummandDecomposition | None = None) -> dict[int, HomologyGroup]:
    """Nonzero ``H^p(R*_K(J)|_ω)``."""
    S = (dec or decomposition(alg)).summand(tuple(sorted(omega)))
    return {p: g for p, g in S.complex.all_homology().items() if not g.is_zero}


def dga_cohomology(K: SimplicialComplex, J: Sequence[int] | None = None, cap: int = 16) -> list[HomologyGroup]:
    """``H^p(R*_K(J))`` for ``p = 0 .. top``, summing the ω-summands."""
    alg = DgaAlgebra.of(K, J)
    if K.m > cap:
        raise ResourceLimitError(f"m={K.m} exceeds the summand-enumeration cap {cap}")
    dec = decomposition(alg)
    pieces: list[list[HomologyGroup]] = [[] for _ in range(alg.top_degree + 1)]
    for w in range(1 << K.m):
        for p, g in summand_cohomology(alg, from_mask(w), dec).items():
            pieces[p].append(g)
    return [direct_sum(x) for x in pieces]


# -- η_J and the wedge maps ----------------------------------------------------

def eta_sign(sigma: Iterable[int], omega: Iterable[int], J: Sequence[int]) -> int:
    """``(-1)**(σ,ω)_J``."""
    sigma, omega = set(sigma), sorted(set(omega))
    total = 0
    for k in omega:
        w = J[k - 1] - 1
        if not w:
            continue
        total += w * sum(1 for i in sigma if i > k)
        total += w * sum(J[r - 1] - 1 for r in omega if r > k)
    return -1 if total % 2 else 1


def eta_J(sigma: Iterable[int], omega: Iterable[int], K: SimplicialComplex, J: Sequence[int] | None = None) -> DgaElement:
    """Image of the dual simplex ``σ*`` of ``C̃*(K_ω)``: ``± ṽ^σ ũ^{ω-σ}``."""
    alg = DgaAlgebra.of(K, J)
    sigma, omega = tuple(sorted(set(sigma))), tuple(sorted(set(omega)))
    if not set(sigma) <= set(omega):
        raise InputError(f"{sigma} is not contained in {omega}")
    mono = DgaMonomial(sigma, tuple(i for i in omega if i not in sigma))
    return DgaElement({mono: eta_sign(sigma, omega, alg.J)}, alg)


def eta_J_cochain(cochain: dict, omega: Iterable[int], K: SimplicialComplex, J: Sequence[int] | None = None) -> DgaElement:
    """Apply η_J to ``{simplex: coefficient}``."""
    alg = DgaAlgebra.of(K, J)
    out = alg.zero()
    for s, c in cochain.items():
        out = out + c * eta_J(s, omega, K, alg.J)
    return out


def eta_representatives(K: SimplicialComplex, J: Sequence[int] | None, omega: Iterable[int]) -> list[tuple[int, DgaElement]]:
    """Cocycles of ``R*_K(J)`` for a basis of ``H̃*(K_ω)`` (free generators, then torsion)."""
    omega = tuple(sorted(omega))
    C = reduced_cochain_complex(K, to_mask(omega))
    alg = DgaAlgebra.of(K, J)
    out = []
    for q in sorted(C.basis):
        hb = C.homology_basis(q)
        for v in hb.free_representatives + hb.torsion_representatives:
            cochain = {from_mask(s): c for s, c in C.element(v, q).items()}
            x = eta_J_cochain(cochain, omega, K, alg.J)
            out.append((alg.degree((), omega) + q + 1, x))
    return out


def chi(i: int, labels: Iterable[int]) -> Simplex:
    """Shift labels above i up by one (label i+1 is skipped)."""
    return tuple(k if k <= i else k + 1 for k in labels)


def varpi_i(a: DgaElement, i: int) -> DgaElement:
    """``R*_K → R*_{K(v_i)}``: relabel by χ_i, then multiply by ``u^{i+1}`` when i ∈ σ∪τ."""
    alg = a.algebra
    if any(j != 1 for j in alg.J):
        raise InputError("varpi_i is defined on R*_K with J = (1,...,1)")
    if i not in alg.K.vertices:
        raise InputError(f"{i} is not a vertex")
    target = DgaAlgebra.of(simplicial_wedge(alg.K, i))
    out = target.zero()
    for mono, c in a.terms.items():
        x = DgaElement({DgaMonomial(chi(i, mono.sigma), chi(i, mono.tau)): c}, target)
        if i in mono.sigma or i in mono.tau:
            x = dga_multiply(x, target.v(i + 1))
        out = out + x
    return out


class WedgeEmbedding:
    """Substitution ``ṽ^k ↦ u^{k̃}u^{B̃_k}``, ``ũ^k ↦ t^{k̃}u^{B̃_k}`` into ``R*_{K(J)}``."""

    def __init__(self, K: SimplicialComplex, J: Sequence[int], cap: int = 24):
        self.source = DgaAlgebra.of(K, J)
        if sum(self.source.J) > cap:
            raise ResourceLimitError(f"d(J)={sum(self.source.J)} exceeds cap {cap}")
        self.KJ = kj_construction(K, self.source.J, cap=cap)
        self.target = DgaAlgebra.of(self.KJ)
        self.blocks = blocks(self.source.J)

    def generator_image(self, k: int, kind: int) -> DgaElement:
        head, rest = self.blocks[k - 1][0], self.blocks[k - 1][1:]
        first = self.target.v(head) if kind == V else self.target.u(head)
        return dga_multiply(first, self.target.monomial(rest, ()))

    def __call__(self, a: DgaElement) -> DgaElement:
        if a.algebra != self.source:
            raise InputError("element of a different algebra")
        out = self.target.zero()
        for mono, c in a.terms.items():
            x = self.target.one() * c
            for i, kind in mono.generators():
                x = dga_multiply(x, self.generator_image(i, kind))
            out = out + x
        return out

    def source_monomials(self) -> list[DgaMonomial]:
        out = []
        for w in range(1 << self.source.m):
            for ms in summand_basis(self.source, from_mask(w)).values():
                out.extend(ms)
        return out

    def is_injective(self) -> bool:
        seen = set()
        for mono in self.source_monomials():
            img = self(DgaElement({mono: 1}, self.source))
            if len(img) != 1:
                return False
            (key,) = img.keys()
            if key in seen:
                return False
            seen.add(key)
        return True

    def commutes_with_differential(self) -> bool:
        for mono in self.source_monomials():
            x = DgaElement({mono: 1}, self.source)
            if dga_differential(self(x)) != self(dga_differential(x)):
                return False
        return True

    def is_multiplicative(self, pairs: Iterable[tuple[DgaMonomial, DgaMonomial]] | None = None) -> bool:
        monos = self.source_monomials()
        pairs = pairs if pairs is not None else ((a, b) for a in monos for b in monos)
        for a, b in pairs:
            x, y = DgaElement({a: 1}, self.source), DgaElement({b: 1}, self.source)
            if self(dga_multiply(x, y)) != dga_multiply(self(x), self(y)):
                return False
        return True

    def image_cohomology(self) -> list[HomologyGroup]:
        """Cohomology of the image subcomplex, computed in the target basis."""
        from .homology import BasedComplex

        images = {}
        for mono in self.source_monomials():
            img = self(DgaElement({mono: 1}, self.source))
            (key, _), = img.terms.items()
            images[key] = self.target.degree(key.sigma, key.tau)
        basis: dict[int, list[DgaMonomial]] = {}
        for key, p in images.items():
            basis.setdefault(p, []).append(key)
        for keys in basis.values():
            keys.sort()
        C = BasedComplex(basis, lambda mono: _monomial_differential(mono, self.target), step=1)
        return [C.homology(p) for p in range(self.source.top_degree + 1)]


def varpi_J_embedding(K: SimplicialComplex, J: Sequence[int], cap: int = 24) -> WedgeEmbedding:
    return WedgeEmbedding(K, J, cap)


# -- word identification at J = (1,...,1) ----------------------------------------

def to_words(a: DgaElement) -> CellChain:
    """``ṽ ↦ u``, ``ũ ↦ t``; only meaningful for J = (1,...,1)."""
    return CellChain({CellWord(m.sigma, m.tau, COCHAIN): c for m, c in a.terms.items()}, COCHAIN)


def from_words(x: CellChain, K: SimplicialComplex) -> DgaElement:
    alg = DgaAlgebra.of(K)
    return DgaElement({DgaMonomial(w.sigma, w.tau): c for w, c in x.terms.items()}, alg)


# -- product tables -----------------------------------------------------------

@dataclass
class ProductTable:
    classes: list[DgaElement]
    degrees: list[int]
    pairs: dict[tuple[int, int], tuple[DgaElement, ClassVector]]
    triples: dict[tuple[int, int, int], tuple[DgaElement, ClassVector]]

    def nonzero_pairs(self) -> list[tuple[int, int]]:
        return [k for k, (_, c) in sorted(self.pairs.items()) if not c.is_zero]


def class_of(x: DgaElement, dec: SummandDecomposition | None = None) -> ClassVector:
    dec = dec or decomposition(x.algebra)
    if dga_differential(x):
        raise NotACocycleError(f"{x.render()} is not a cocycle")
    return dec.class_of(x.terms)


def ring_product_table(classes: Sequence[DgaElement], triples: Iterable[tuple[int, int, int]] = (), pairs: bool = True) -> ProductTable:
    """Classes of all pairwise products (and the requested triple products)."""
    if not classes:
        raise InputError("no classes given")
    alg = classes[0].algebra
    dec = decomposition(alg)
    for x in classes:
        if x.algebra != alg:
            raise InputError("classes from different algebras")
        if dga_differential(x):
            raise NotACocycleError(f"{x.render()} is not a cocycle")
    degrees = [min(x.degrees(), default=0) for x in classes]
    table: dict = {}
    if pairs:
        for i, a in enumerate(classes):
            for j, b in enumerate(classes):
                prod = dga_multiply(a, b)
                table[(i, j)] = (prod, dec.class_of(prod.terms))
    trip: dict = {}
    for i, j, k in triples:
        prod = dga_multiply(dga_multiply(classes[i], classes[j]), classes[k])
        trip[(i, j, k)] = (prod, dec.class_of(prod.terms))
    return ProductTable(list(classes), degrees, table, trip)
