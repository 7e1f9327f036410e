"""Cellular (co)chains of the real moment-angle complex ``(D¹,S⁰)^K``.

Each cell of the cube ``[-1,1]^m`` that lies in ``(D¹,S⁰)^K`` is a word
``u_σ ε_τ`` (chains) or ``u^σ t^τ`` (cochains) with σ ∈ K and σ ∩ τ = ∅;
coordinates outside σ ∪ τ carry the basepoint factor.  The degree of a word
is ``card(σ)``.  Both complexes split over ω = σ ∪ τ, and the summand for ω
is the augmented simplicial (co)chain complex of ``K_ω`` shifted up by one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .complex import Simplex, SimplicialComplex, from_mask, orientation_sign, to_mask
from .errors import InputError, ResourceLimitError
from .homology import (
    BasedComplex,
    HomologyGroup,
    SummandDecomposition,
    direct_sum,
    reduced_homology_all_subsets,
)
from .linear import Combination

CHAIN = "chain"
COCHAIN = "cochain"


def _canon(s: Iterable[int]) -> Simplex:
    return tuple(sorted(set(s)))


@dataclass(frozen=True)
class CellWord:
    sigma: Simplex
    tau: Simplex
    flavor: str = CHAIN

    def __post_init__(self):
        object.__setattr__(self, "sigma", _canon(self.sigma))
        object.__setattr__(self, "tau", _canon(self.tau))
        if set(self.sigma) & set(self.tau):
            raise InputError(f"word parts overlap: {self.sigma} and {self.tau}")
        if self.flavor not in (CHAIN, COCHAIN):
            raise InputError(f"unknown flavor {self.flavor!r}")

    @property
    def degree(self) -> int:
        return len(self.sigma)

    @property
    def omega(self) -> Simplex:
        return tuple(sorted(self.sigma + self.tau))

    def sort_key(self):
        return (len(self.sigma), self.sigma, self.tau)

    def __lt__(self, other: "CellWord") -> bool:
        return self.sort_key() < other.sort_key()

    def render(self) -> str:
        if not self.sigma and not self.tau:
            return "1"
        second = "e" if self.flavor == CHAIN else "t"
        out = ""
        if self.sigma:
            out += "u{" + ",".join(map(str, self.sigma)) + "}"
        if self.tau:
            out += second + "{" + ",".join(map(str, self.tau)) + "}"
        return out

    def __str__(self):
        return self.render()


def chain_word(sigma=(), tau=()) -> CellWord:
    return CellWord(tuple(sigma), tuple(tau), CHAIN)


def cochain_word(sigma=(), tau=()) -> CellWord:
    return CellWord(tuple(sigma), tuple(tau), COCHAIN)


class CellChain(Combination):
    """Integer combination of words of one flavor (degrees may be mixed)."""

    __slots__ = ("flavor",)

    def __init__(self, terms: dict | None = None, flavor: str = CHAIN):
        super().__init__(terms)
        self.flavor = flavor
        for w in self.terms:
            if w.flavor != flavor:
                raise InputError(f"{w.flavor} word in a {flavor} combination")

    def _like(self, terms):
        return CellChain(terms, self.flavor)

    def _check_compatible(self, other):
        if not isinstance(other, CellChain) or other.flavor != self.flavor:
            raise InputError("cannot add chains and cochains")

    @classmethod
    def of(cls, word: CellWord, coefficient: int = 1) -> "CellChain":
        return cls({word: coefficient}, word.flavor)

    def degrees(self) -> set[int]:
        return {w.degree for w in self.terms}

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for w, c in sorted(self.terms.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = w.render()
            out.append(f"{sign} {'' if mag == 1 else str(mag) + ' '}{body}")
        text = " ".join(out)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"CellChain({self.render()!r}, {self.flavor})"

    __str__ = render


def as_chain(x, flavor: str) -> CellChain:
    if isinstance(x, CellWord):
        if x.flavor != flavor:
            raise InputError(f"expected a {flavor} word, got {x.flavor}")
        return CellChain.of(x)
    if isinstance(x, CellChain):
        if x.flavor != flavor:
            raise InputError(f"expected a {flavor} combination, got {x.flavor}")
        return x
    raise InputError(f"not a word or chain: {x!r}")


def check_word(w: CellWord, K: SimplicialComplex) -> None:
    for i in w.sigma + w.tau:
        if not (1 <= i <= K.m):
            raise InputError(f"label {i} outside [1, {K.m}]")
    if not K.is_simplex(w.sigma):
        raise InputError(f"{w.render()}: {w.sigma} is not a simplex")


# -- differentials ----------------------------------------------------

def _boundary_terms(sigma: Simplex, tau: Simplex) -> dict:
    out = {}
    for i in sigma:
        s = tuple(j for j in sigma if j != i)
        out[(s, _canon(tau + (i,)))] = orientation_sign(i, sigma)
    return out


def boundary(x) -> CellChain:
    """``∂(u_σ ε_τ) = Σ_{i∈σ} (-1)^{(i,σ)} u_{σ-i} ε_{τ+i}``, extended linearly."""
    chain = as_chain(x, CHAIN)
    out: dict[CellWord, int] = {}
    for w, c in chain.terms.items():
        for (s, t), sign in _boundary_terms(w.sigma, w.tau).items():
            key = CellWord(s, t, CHAIN)
            out[key] = out.get(key, 0) + sign * c
    return CellChain(out, CHAIN)


def _coboundary_terms(sigma: Simplex, tau: Simplex, K: SimplicialComplex) -> dict:
    out = {}
    smask = to_mask(sigma)
    for i in tau:
        if smask | (1 << (i - 1)) in K.simplex_masks:
            out[(_canon(sigma + (i,)), tuple(j for j in tau if j != i))] = orientation_sign(i, sigma)
    return out


def coboundary(x, K: SimplicialComplex) -> CellChain:
    """``d(u^σ t^τ) = Σ_{i∈τ, σ+i∈K} (-1)^{(i,σ)} u^{σ+i} t^{τ-i}``."""
    chain = as_chain(x, COCHAIN)
    out: dict[CellWord, int] = {}
    for w, c in chain.terms.items():
        for (s, t), sign in _coboundary_terms(w.sigma, w.tau, K).items():
            key = CellWord(s, t, COCHAIN)
            out[key] = out.get(key, 0) + sign * c
    return CellChain(out, COCHAIN)


# -- degree-shifting isomorphisms ---------------------------------------

def mu_iso(sigma: Iterable[int], omega: Iterable[int], K: SimplicialComplex | None = None) -> CellWord:
    """Send the simplex σ of ``C̃_*(K_ω)`` to the word ``u_σ ε_{ω-σ}``."""
    sigma, omega = _canon(sigma), _canon(omega)
    if not set(sigma) <= set(omega):
        raise InputError(f"{sigma} is not contained in {omega}")
    if K is not None and not K.is_simplex(sigma):
        raise InputError(f"{sigma} is not a simplex")
    return CellWord(sigma, tuple(i for i in omega if i not in sigma), CHAIN)


def eta_iso(sigma: Iterable[int], omega: Iterable[int], K: SimplicialComplex | None = None) -> CellWord:
    """Send the dual simplex σ* of ``C̃^*(K_ω)`` to ``u^σ t^{ω-σ}``."""
    w = mu_iso(sigma, omega, K)
    return CellWord(w.sigma, w.tau, COCHAIN)


def mu_chain(chain: dict, omega: Iterable[int]) -> CellChain:
    """Apply μ to a simplicial chain ``{simplex: coefficient}`` of ``K_ω``."""
    return CellChain({mu_iso(s, omega): c for s, c in chain.items()}, CHAIN)


def eta_cochain(cochain: dict, omega: Iterable[int]) -> CellChain:
    return CellChain({eta_iso(s, omega): c for s, c in cochain.items()}, COCHAIN)


# -- bases and complexes ------------------------------------------------

def omega_words(K: SimplicialComplex, omega: Iterable[int], flavor: str = CHAIN) -> dict[int, list[CellWord]]:
    """Words with σ ∪ τ = ω, grouped by degree."""
    omega = _canon(omega)
    w = to_mask(omega)
    out: dict[int, list[CellWord]] = {}
    for s in sorted((from_mask(x) for x in K.simplex_masks if x & ~w == 0), key=lambda s: (len(s), s)):
        word = CellWord(s, tuple(i for i in omega if i not in s), flavor)
        out.setdefault(len(s), []).append(word)
    return out


def word_basis(K: SimplicialComplex, flavor: str = CHAIN) -> dict[int, list[CellWord]]:
    """All words of ``(D¹,S⁰)^K`` grouped by degree (3^m candidates)."""
    out: dict[int, list[CellWord]] = {}
    full = (1 << K.m) - 1
    for s in K.simplex_masks:
        rest = full & ~s
        t = rest
        while True:
            w = CellWord(from_mask(s), from_mask(t), flavor)
            out.setdefault(w.degree, []).append(w)
            if t == 0:
                break
            t = (t - 1) & rest
    for words in out.values():
        words.sort()
    return out


def _word_differential(K: SimplicialComplex, flavor: str):
    if flavor == CHAIN:
        def diff(w):
            return {CellWord(s, t, CHAIN): c for (s, t), c in _boundary_terms(w.sigma, w.tau).items()}
    else:
        def diff(w):
            return {CellWord(s, t, COCHAIN): c for (s, t), c in _coboundary_terms(w.sigma, w.tau, K).items()}
    return diff


def word_complex(K: SimplicialComplex, flavor: str = CHAIN, cap: int = 10) -> BasedComplex:
    """The monolithic word (co)chain complex; ``3^m`` basis candidates."""
    if K.m > cap:
        raise ResourceLimitError(f"m={K.m} exceeds the monolithic word-complex cap {cap}")
    return BasedComplex(word_basis(K, flavor), _word_differential(K, flavor), -1 if flavor == CHAIN else 1, check=True)


def omega_complex(K: SimplicialComplex, omega: Iterable[int], flavor: str = CHAIN) -> BasedComplex:
    return BasedComplex(omega_words(K, omega, flavor), _word_differential(K, flavor), -1 if flavor == CHAIN else 1)


def word_decomposition(K: SimplicialComplex, flavor: str = CHAIN) -> SummandDecomposition:
    """Per-ω splitting used to decide equality of (co)homology classes."""
    return SummandDecomposition(
        summand_of=lambda w: w.omega,
        basis_of=lambda omega: omega_words(K, omega, flavor),
        differential=_word_differential(K, flavor),
        step=-1 if flavor == CHAIN else 1,
    )


# -- homology -------------------------------------------------------------

def _top_degree(K: SimplicialComplex) -> int:
    return K.dim + 1


def _omega_sum(K: SimplicialComplex, cap: int, workers: int, cohomology: bool) -> list[HomologyGroup]:
    top = _top_degree(K)
    pieces: list[list[HomologyGroup]] = [[] for _ in range(top + 1)]
    for groups in reduced_homology_all_subsets(K, cap=cap, workers=workers).values():
        for q, g in groups.items():
            if not cohomology:
                pieces[q + 1].append(g)
            else:
                # Free part stays in degree q + 1; torsion moves up one degree.
                pieces[q + 1].append(HomologyGroup(g.rank))
                if g.torsion:
                    pieces[q + 2].append(HomologyGroup(0, g.torsion))
    return [direct_sum(p) for p in pieces]


def cellular_homology(K: SimplicialComplex, route: str = "sum", cap: int = 16, workers: int = 1) -> list[HomologyGroup]:
    """``H_p((D¹,S⁰)^K)`` for ``p = 0 .. dim K + 1``.

    ``route="sum"`` adds up ``H̃_{p-1}(K_ω)`` over all ω; ``route="words"``
    reduces the monolithic word complex; ``route="both"`` computes both and
    raises if they disagree.
    """
    if route not in ("sum", "words", "both"):
        raise InputError(f"unknown route {route!r}")
    if route in ("sum", "both"):
        summed = _omega_sum(K, cap, workers, cohomology=False)
        if route == "sum":
            return summed
    C = word_complex(K, CHAIN, cap=min(cap, 10))
    direct = [C.homology(p) for p in range(_top_degree(K) + 1)]
    if route == "both" and direct != summed:
        from .errors import InvariantViolation

        raise InvariantViolation(f"word complex {direct} disagrees with the ω-sum {summed}")
    return direct


def cellular_cohomology(K: SimplicialComplex, route: str = "sum", cap: int = 16, workers: int = 1) -> list[HomologyGroup]:
    """``H^p((D¹,S⁰)^K)``; same routes as :func:`cellular_homology`."""
    if route not in ("sum", "words", "both"):
        raise InputError(f"unknown route {route!r}")
    if route in ("sum", "both"):
        summed = _omega_sum(K, cap, workers, cohomology=True)
        if route == "sum":
            return summed
    C = word_complex(K, COCHAIN, cap=min(cap, 10))
    direct = [C.homology(p) for p in range(_top_degree(K) + 1)]
    if route == "both" and direct != summed:
        from .errors import InvariantViolation

        raise InvariantViolation(f"word complex {direct} disagrees with the ω-sum {summed}")
    return direct


def omega_contributions(K: SimplicialComplex, cap: int = 16, workers: int = 1) -> list[tuple[Simplex, int, HomologyGroup]]:
    """Rows ``(ω, shifted degree p, H̃_{p-1}(K_ω))`` of the additive splitting."""
    rows = []
    for omega, groups in reduced_homology_all_subsets(K, cap=cap, workers=workers).items():
        for q, g in sorted(groups.items()):
            rows.append((omega, q + 1, g))
    return sorted(rows, key=lambda r: (r[1], len(r[0]), r[0]))
