"""Cup and cap products.

Three layers, each usable as an oracle for the next:

* simplicial cup/cap on one ordered complex (front face / back face);
* Whitney products on a cell subcomplex of a product of complexes, with the
  shuffle sign between factors;
* closed formulas on the word basis of ``(D¹,S⁰)^K``, which is the Whitney
  case with every factor the interval ``I``.

Simplicial (co)chains are ``{simplex: coefficient}`` dictionaries; product
(co)chains are ``{cell: coefficient}`` with a cell a tuple of simplices, one
per factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Iterable, Sequence

from .cells import (
    CHAIN,
    COCHAIN,
    CellChain,
    CellWord,
    as_chain,
    word_decomposition,
)
from .complex import Simplex, SimplicialComplex, from_mask, orientation_sign, to_mask
from .errors import InputError, NotOrientableError
from .homology import HomologyGroup, reduced_chain_complex, reduced_homology_all_subsets
from .snf import determinant


def shuffle_sign(p: Sequence[int], q: Sequence[int]) -> int:
    """``(-1)**(p, q)`` with ``(p, q) = Σ_i q_i Σ_{j>i} p_j``."""
    total, tail = 0, 0
    for pi, qi in zip(reversed(p), reversed(q)):
        total += qi * tail
        tail += pi
    return -1 if total % 2 else 1


def indicator(sigma: Iterable[int], m: int) -> list[int]:
    s = set(sigma)
    return [int(i in s) for i in range(1, m + 1)]


# -- one complex ------------------------------------------------------------

def _cup_basis(f: Simplex, b: Simplex, K: SimplicialComplex | None) -> Simplex | None:
    if f[-1] != b[0]:
        return None
    s = f + b[1:]
    if K is not None and not K.is_simplex(s):
        return None
    return s


def _cap_basis(f: Simplex, s: Simplex) -> Simplex | None:
    p, r = len(f) - 1, len(s) - 1
    if p > r or s[r - p:] != f:
        return None
    return s[: r - p + 1]


def simplicial_cup(c1: dict, c2: dict, K: SimplicialComplex | None = None) -> dict:
    """``(c1 ⌣ c2)[v0..v_{p+q}] = c1[v0..vp] · c2[vp..v_{p+q}]``."""
    out: dict = {}
    for f, a in c1.items():
        for b, c in c2.items():
            s = _cup_basis(tuple(f), tuple(b), K)
            if s is not None:
                out[s] = out.get(s, 0) + a * c
    return {k: v for k, v in out.items() if v}


def simplicial_cap(c: dict, z: dict, K: SimplicialComplex | None = None) -> dict:
    """``c ⌢ [i0..ir] = c[i_{r-p}..ir] · [i0..i_{r-p}]``."""
    out: dict = {}
    for f, a in c.items():
        for s, b in z.items():
            t = _cap_basis(tuple(f), tuple(s))
            if t is not None:
                out[t] = out.get(t, 0) + a * b
    return {k: v for k, v in out.items() if v}


def simplicial_coboundary(c: dict, K: SimplicialComplex) -> dict:
    """Unaugmented coboundary, the transpose of the simplicial boundary."""
    out: dict = {}
    for s, a in c.items():
        mask = to_mask(s)
        for v in range(1, K.m + 1):
            if not mask >> (v - 1) & 1 and (mask | 1 << (v - 1)) in K.simplex_masks:
                t = tuple(sorted(s + (v,)))
                out[t] = out.get(t, 0) + orientation_sign(v, s) * a
    return {k: v for k, v in out.items() if v}


def simplicial_boundary(z: dict) -> dict:
    out: dict = {}
    for s, a in z.items():
        if len(s) < 2:
            continue
        for v in s:
            t = tuple(j for j in s if j != v)
            out[t] = out.get(t, 0) + orientation_sign(v, s) * a
    return {k: v for k, v in out.items() if v}


# -- products of complexes ------------------------------------------------

INTERVAL = SimplicialComplex(2, ((1, 2),))
LOW, HIGH, EDGE = (1,), (2,), (1, 2)  # t̲ = {-1}, t = {+1}, u


@dataclass(frozen=True)
class ProductComplex:
    """A cell subcomplex ``A`` of ``|K_1| × ... × |K_m|``."""

    factors: tuple[SimplicialComplex, ...]
    cells: frozenset

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "cells", frozenset(tuple(tuple(s) for s in c) for c in self.cells))
        for cell in self.cells:
            if len(cell) != len(self.factors):
                raise InputError(f"cell {cell} has the wrong number of factors")
            for s, K in zip(cell, self.factors):
                if not s or not K.is_simplex(s):
                    raise InputError(f"{s} is not a nonempty simplex of its factor")
            for face in self.faces(cell):
                if face not in self.cells:
                    raise InputError(f"cell set is not closed under boundary: {face} missing")

    @property
    def m(self) -> int:
        return len(self.factors)

    @staticmethod
    def faces(cell) -> Iterable:
        for i, s in enumerate(cell):
            if len(s) > 1:
                for v in s:
                    yield cell[:i] + (tuple(j for j in s if j != v),) + cell[i + 1:]

    def dims(self, cell) -> list[int]:
        return [len(s) - 1 for s in cell]

    def degree(self, cell) -> int:
        return sum(len(s) - 1 for s in cell)

    def check_support(self, x: dict) -> None:
        for cell in x:
            if cell not in self.cells:
                raise InputError(f"{cell} is not a cell of the subcomplex")

    def boundary(self, z: dict) -> dict:
        """``∂(⊗c_i) = Σ_i (-1)^{Σ_{j<i} p_j} c_1 ⊗ .. ∂c_i .. ⊗ c_m``."""
        out: dict = {}
        for cell, a in z.items():
            shift = 0
            for i, s in enumerate(cell):
                if len(s) > 1:
                    sign = -1 if shift % 2 else 1
                    for v in s:
                        face = cell[:i] + (tuple(j for j in s if j != v),) + cell[i + 1:]
                        out[face] = out.get(face, 0) + sign * orientation_sign(v, s) * a
                shift += len(s) - 1
        return {k: v for k, v in out.items() if v}

    def coboundary(self, c: dict) -> dict:
        """Transpose of :meth:`boundary` restricted to the cells of ``A``."""
        out: dict = {}
        for cell, a in c.items():
            shift = 0
            for i, s in enumerate(cell):
                sign = -1 if shift % 2 else 1
                K = self.factors[i]
                mask = to_mask(s)
                for v in range(1, K.m + 1):
                    if mask >> (v - 1) & 1 or (mask | 1 << (v - 1)) not in K.simplex_masks:
                        continue
                    co = cell[:i] + (tuple(sorted(s + (v,))),) + cell[i + 1:]
                    if co in self.cells:
                        out[co] = out.get(co, 0) + sign * orientation_sign(v, s) * a
                shift += len(s) - 1
        return {k: v for k, v in out.items() if v}


def rmac_descriptor(K: SimplicialComplex) -> ProductComplex:
    """``(D¹,S⁰)^K`` as a subcomplex of ``I^m``: cells whose u-coordinates form a simplex."""
    cells = []
    for s in K.simplex_masks:
        rest = [i for i in range(1, K.m + 1) if not s >> (i - 1) & 1]
        for choice in cartesian((LOW, HIGH), repeat=len(rest)):
            cell = [EDGE] * K.m
            for i, c in zip(rest, choice):
                cell[i - 1] = c
            cells.append(tuple(cell))
    return ProductComplex((INTERVAL,) * K.m, frozenset(cells))


def whitney_cup(a: dict, b: dict, A: ProductComplex) -> dict:
    """``(⊗c^{p_i}) ⌣ (⊗c^{q_i}) = (-1)^{(p,q)} ⊗ (c^{p_i} ⌣ c^{q_i})``, restricted to A."""
    A.check_support(a)
    A.check_support(b)
    out: dict = {}
    for e, x in a.items():
        p = A.dims(e)
        for f, y in b.items():
            cell = []
            for ei, fi, K in zip(e, f, A.factors):
                s = _cup_basis(ei, fi, K)
                if s is None:
                    break
                cell.append(s)
            else:
                cell = tuple(cell)
                if cell in A.cells:
                    out[cell] = out.get(cell, 0) + shuffle_sign(p, A.dims(f)) * x * y
    return {k: v for k, v in out.items() if v}


def whitney_cap(a: dict, z: dict, A: ProductComplex) -> dict:
    """``(⊗c^{p_i}) ⌢ (⊗c_{r_i}) = (-1)^{(r-p,p)} ⊗ (c^{p_i} ⌢ c_{r_i})``."""
    A.check_support(a)
    A.check_support(z)
    out: dict = {}
    for e, x in a.items():
        p = A.dims(e)
        for s, y in z.items():
            cell = []
            for ei, si in zip(e, s):
                t = _cap_basis(ei, si)
                if t is None:
                    break
                cell.append(t)
            else:
                cell = tuple(cell)
                r = A.dims(s)
                out[cell] = out.get(cell, 0) + shuffle_sign([ri - pi for ri, pi in zip(r, p)], p) * x * y
    return {k: v for k, v in out.items() if v}


# -- word basis <-> product basis of I^m -------------------------------------

def word_to_product(x, m: int) -> dict:
    """Expand words into product cells: ε = t - t̲ for chains, δ* = t* + t̲* for cochains."""
    out: dict = {}
    words = [(x, 1)] if isinstance(x, CellWord) else list(x.terms.items())
    for w, c in words:
        per = []
        for i in range(1, m + 1):
            if i in w.sigma:
                per.append([(EDGE, 1)])
            elif i in w.tau:
                per.append([(HIGH, 1), (LOW, -1)] if w.flavor == CHAIN else [(HIGH, 1)])
            else:
                per.append([(LOW, 1)] if w.flavor == CHAIN else [(HIGH, 1), (LOW, 1)])
        for combo in cartesian(*per):
            cell = tuple(s for s, _ in combo)
            k = c
            for _, v in combo:
                k *= v
            out[cell] = out.get(cell, 0) + k
    return {k: v for k, v in out.items() if v}


def product_to_words(x: dict, flavor: str) -> CellChain:
    """Inverse change of basis: t = ε + t̲ for chains, t̲* = δ* - t* for cochains."""
    out: dict = {}
    for cell, c in x.items():
        per = []
        for i, s in enumerate(cell, start=1):
            if s == EDGE:
                per.append([("u", i, 1)])
            elif s == HIGH:
                per.append([("t", i, 1), ("-", i, 1)] if flavor == CHAIN else [("t", i, 1)])
            else:
                per.append([("-", i, 1)] if flavor == CHAIN else [("-", i, 1), ("t", i, -1)])
        for combo in cartesian(*per):
            sigma = tuple(i for kind, i, _ in combo if kind == "u")
            tau = tuple(i for kind, i, _ in combo if kind == "t")
            k = c
            for _, _, v in combo:
                k *= v
            w = CellWord(sigma, tau, flavor)
            out[w] = out.get(w, 0) + k
    return CellChain(out, flavor)


# -- closed word formulas ------------------------------------------------

def _word_cup(a: CellWord, b: CellWord, K: SimplicialComplex):
    s, t, s2, t2 = set(a.sigma), set(a.tau), set(b.sigma), set(b.tau)
    if s2 & (s | t):
        return None
    union = s | s2
    if not K.contains_mask(to_mask(union)):
        return None
    # inversions: i in σ', j in σ with j > i
    inv = sum(1 for i in b.sigma for j in a.sigma if j > i)
    return -1 if inv % 2 else 1, CellWord(tuple(union), tuple(t | (t2 - s)), COCHAIN)


def word_cup(a, b, K: SimplicialComplex) -> CellChain:
    """``u^σt^τ ⌣ u^σ't^τ' = (-1)^{(v(σ),v(σ'))} u^{σ∪σ'} t^{τ∪(τ'-σ)}`` or zero."""
    x, y = as_chain(a, COCHAIN), as_chain(b, COCHAIN)
    out: dict = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            r = _word_cup(w1, w2, K)
            if r is not None:
                sign, w = r
                out[w] = out.get(w, 0) + sign * c1 * c2
    return CellChain(out, COCHAIN)


def _word_cap(a: CellWord, z: CellWord):
    s, t, s2, t2 = set(a.sigma), set(a.tau), set(z.sigma), set(z.tau)
    if not s <= s2 or not t <= (s2 | t2):
        return []
    rest = tuple(sorted(s2 - s))
    inv = sum(1 for i in a.sigma for j in rest if j > i)
    sign = -1 if inv % 2 else 1
    free = sorted(t - s2)
    out = []
    for k in range(1 << len(free)):
        gamma = {free[i] for i in range(len(free)) if k >> i & 1}
        out.append((sign, CellWord(rest, tuple(sorted(t2 - gamma)), CHAIN)))
    return out


def word_cap(a, z, K: SimplicialComplex | None = None) -> CellChain:
    """``u^σt^τ ⌢ u_σ''ε_τ'' = (-1)^{(v(σ''-σ),v(σ))} Σ_{γ⊆τ-σ''} u_{σ''-σ} ε_{τ''-γ}``."""
    x, y = as_chain(a, COCHAIN), as_chain(z, CHAIN)
    out: dict = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            for sign, w in _word_cap(w1, w2):
                out[w] = out.get(w, 0) + sign * c1 * c2
    return CellChain(out, CHAIN)


def unit_cochain() -> CellChain:
    return CellChain.of(CellWord((), (), COCHAIN))


# -- fundamental class and duality -------------------------------------------

def fundamental_class(K: SimplicialComplex, cap: int = 16) -> CellChain:
    """Generator of the top homology of ``(D¹,S⁰)^K`` as a word chain.

    It is μ of a generator of ``H̃_{n-1}(K)``; the sign makes the
    lexicographically least word come with coefficient +1.
    """
    n = K.dim + 1
    top = [g for groups in reduced_homology_all_subsets(K, cap=cap).values() for q, g in groups.items() if q == n - 1]
    if n <= 0 or len(top) != 1 or top[0] != HomologyGroup(1):
        raise NotOrientableError(f"top homology in degree {n} is not Z")
    C = reduced_chain_complex(K)
    z = C.homology_basis(n - 1).free_representatives[0]
    cycle = C.element(z, n - 1)
    full = tuple(range(1, K.m + 1))
    terms = {}
    for mask, c in cycle.items():
        s = from_mask(mask)
        terms[CellWord(s, tuple(i for i in full if i not in s), CHAIN)] = c
    lead = min(terms, key=lambda w: (w.sigma, w.tau))
    sign = 1 if terms[lead] > 0 else -1
    return CellChain({w: sign * c for w, c in terms.items()}, CHAIN)


def free_cohomology_basis(K: SimplicialComplex, p: int, cap: int = 16, decomposition=None):
    """Free generators of ``H^p`` as word cocycles, grouped by ω in counter order."""
    dec = decomposition or word_decomposition(K, COCHAIN)
    out = []
    for omega, groups in reduced_homology_all_subsets(K, cap=cap).items():
        g = groups.get(p - 1)
        if g is None or not g.rank:
            continue
        S = dec.summand(omega)
        for v in S.homology_basis(p).free_representatives:
            out.append((omega, CellChain(S.element(v, p), COCHAIN)))
    return out


def free_homology_slots(K: SimplicialComplex, p: int, cap: int = 16) -> list[tuple[Simplex, int]]:
    """``(ω, rank)`` for the summands carrying free classes of ``H_p``."""
    out = []
    for omega, groups in reduced_homology_all_subsets(K, cap=cap).items():
        g = groups.get(p - 1)
        if g is not None and g.rank:
            out.append((omega, g.rank))
    return out


@dataclass
class DualityReport:
    dimension: int
    matrices: dict[int, list[list[int]]] = field(default_factory=dict)
    determinants: dict[int, int] = field(default_factory=dict)
    ranks: dict[int, tuple[int, int]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(a == b for a, b in self.ranks.values()) and all(abs(d) == 1 for d in self.determinants.values())


def poincare_duality_check(K: SimplicialComplex, cap: int = 16) -> DualityReport:
    """Cap a free basis of each ``H^p`` with the fundamental class.

    Row k of the degree-p matrix holds the free coordinates in ``H_{n-p}``
    of (k-th basis class) ⌢ Γ.
    """
    gamma = fundamental_class(K, cap=cap)
    n = K.dim + 1
    report = DualityReport(n)
    co = word_decomposition(K, COCHAIN)
    ch = word_decomposition(K, CHAIN)
    for p in range(n + 1):
        basis = free_cohomology_basis(K, p, cap=cap, decomposition=co)
        slots = free_homology_slots(K, n - p, cap=cap)
        rows = []
        for _, a in basis:
            cls = ch.class_of(word_cap(a, gamma, K).terms)
            row = []
            for omega, rank in slots:
                row.extend(cls.free_vector(omega, n - p, rank))
            rows.append(row)
        report.matrices[p] = rows
        report.ranks[p] = (len(basis), sum(r for _, r in slots))
        if len(basis) == report.ranks[p][1]:
            report.determinants[p] = determinant(rows) if rows else 1
        else:
            report.determinants[p] = 0
    return report
