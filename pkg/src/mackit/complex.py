"""Abstract simplicial complexes on a labelled vertex set [m].

Simplices are sorted tuples of labels in ``1..m``.  Internally every vertex
set is also carried as a bitmask (bit ``i - 1`` for label ``i``) because the
hot loops enumerate subsets of ``[m]``.

A complex is stored by its facets.  The empty complex ``{∅}`` has no facets.
Labels in ``[m]`` that lie in no facet are ghost vertices; they are kept so
that full subcomplexes and ``K(J)`` can address every label of ``[m]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from .errors import InputError, ParseError, ResourceLimitError

Simplex = tuple[int, ...]


def to_mask(s: Iterable[int]) -> int:
    mask = 0
    for i in s:
        mask |= 1 << (i - 1)
    return mask


def from_mask(mask: int) -> Simplex:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def orientation_sign(i: int, sigma: Iterable[int]) -> int:
    """``(-1)**(i, sigma)`` where ``(i, sigma)`` counts labels of sigma below i."""
    return -1 if sum(1 for j in sigma if j < i) % 2 else 1


def _mask_below(mask: int, i: int) -> int:
    return mask & ((1 << (i - 1)) - 1)


def mask_sign(i: int, mask: int) -> int:
    return -1 if bin(_mask_below(mask, i)).count("1") & 1 else 1


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed family of subsets of ``[m]`` given by its facets.

    ``names`` optionally records what each label stands for (used by the
    derived complex and the basic construction); it does not take part in
    equality.
    """

    m: int
    facets: tuple[Simplex, ...]
    names: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 0:
            raise InputError(f"vertex count must be a nonnegative integer, got {self.m!r}")
        masks = set()
        for f in self.facets:
            for i in f:
                if not (1 <= i <= self.m):
                    raise InputError(f"label {i} outside [1, {self.m}]")
            if len(set(f)) != len(tuple(f)):
                raise InputError(f"repeated label in facet {tuple(f)}")
            mask = to_mask(f)
            if mask:
                masks.add(mask)
        # Keep only the maximal sets so stored facets are mutually incomparable.
        maximal = [a for a in masks if not any(a != b and a & ~b == 0 for b in masks)]
        facets = tuple(sorted(from_mask(a) for a in maximal))
        object.__setattr__(self, "facets", facets)

    # -- construction -------------------------------------------------
    @classmethod
    def from_missing_faces(cls, m: int, missing: Iterable[Iterable[int]], cap: int = 22) -> "SimplicialComplex":
        """Complex on ``[m]`` whose minimal non-faces are exactly ``missing``.

        Brute force over ``2**m`` subsets, so ``m`` is capped.
        """
        if m > cap:
            raise ResourceLimitError(f"m={m} exceeds the enumeration cap {cap}")
        mf = []
        for tau in missing:
            tau = tuple(tau)
            for i in tau:
                if not (1 <= i <= m):
                    raise InputError(f"label {i} outside [1, {m}]")
            mf.append(to_mask(tau))
        faces = [x for x in range(1 << m) if not any(t & ~x == 0 for t in mf)]
        if not faces:
            raise InputError("the empty set is listed as a missing face")
        face_set = set(faces)
        facets = [x for x in faces if all((x | (1 << i)) not in face_set for i in range(m) if not x >> i & 1)]
        return cls(m, tuple(from_mask(x) for x in facets))

    @classmethod
    def simplex(cls, m: int) -> "SimplicialComplex":
        return cls(m, (tuple(range(1, m + 1)),))

    @classmethod
    def boundary_of_simplex(cls, m: int) -> "SimplicialComplex":
        return cls(m, tuple(combinations(range(1, m + 1), m - 1)))

    # -- cached views --------------------------------------------------
    @cached_property
    def facet_masks(self) -> tuple[int, ...]:
        return tuple(to_mask(f) for f in self.facets)

    @cached_property
    def simplex_masks(self) -> frozenset[int]:
        """Bitmasks of every simplex, the empty simplex included."""
        out = {0}
        for f in self.facet_masks:
            if f in out:
                continue
            sub = f
            while sub:
                out.add(sub)
                sub = (sub - 1) & f
        return frozenset(out)

    @cached_property
    def vertex_mask(self) -> int:
        v = 0
        for f in self.facet_masks:
            v |= f
        return v

    @cached_property
    def missing_face_masks(self) -> tuple[int, ...]:
        faces = self.simplex_masks
        found = set()
        for s in faces:
            for i in range(self.m):
                bit = 1 << i
                if s & bit:
                    continue
                t = s | bit
                if t in faces or t in found:
                    continue
                # t is a non-face; it is minimal when every codimension-one face is a simplex.
                if all((t & ~(1 << j)) in faces for j in range(self.m) if t >> j & 1):
                    found.add(t)
        return tuple(sorted(found, key=lambda x: (bin(x).count("1"), from_mask(x))))

    @property
    def dim(self) -> int:
        if not self.facets:
            return -1
        return max(len(f) for f in self.facets) - 1

    @property
    def vertices(self) -> Simplex:
        return from_mask(self.vertex_mask)

    @property
    def ghost_vertices(self) -> Simplex:
        return from_mask(((1 << self.m) - 1) & ~self.vertex_mask)

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def simplices(self, dim: int | None = None) -> list[Simplex]:
        """Simplices in (dimension, lexicographic) order; ``dim=-1`` gives ``[()]``."""
        out = [from_mask(x) for x in self.simplex_masks]
        if dim is not None:
            out = [s for s in out if len(s) == dim + 1]
        return sorted(out, key=lambda s: (len(s), s))

    def f_vector(self) -> list[int]:
        counts = [0] * (self.dim + 2)
        for x in self.simplex_masks:
            counts[bin(x).count("1")] += 1
        return counts

    def euler_characteristic(self, reduced: bool = False) -> int:
        chi = sum((-1) ** (k - 1) for k in (bin(x).count("1") for x in self.simplex_masks) if k > 0)
        return chi - 1 if reduced else chi

    # -- queries -------------------------------------------------------
    def _check_labels(self, s: Iterable[int]) -> Simplex:
        s = tuple(sorted(set(s)))
        for i in s:
            if not (1 <= i <= self.m):
                raise InputError(f"label {i} outside [1, {self.m}]")
        return s

    def is_simplex(self, s: Iterable[int]) -> bool:
        mask = to_mask(self._check_labels(s))
        return mask == 0 or any(mask & ~f == 0 for f in self.facet_masks)

    def contains_mask(self, mask: int) -> bool:
        return mask in self.simplex_masks

    def missing_faces(self) -> list[Simplex]:
        return [from_mask(x) for x in self.missing_face_masks]

    def full_subcomplex(self, omega: Iterable[int]) -> "SimplicialComplex":
        """``K_ω`` with the original labels kept; labels outside ω become ghosts."""
        w = to_mask(self._check_labels(omega))
        return SimplicialComplex(self.m, tuple(from_mask(f & w) for f in self.facet_masks), self.names)

    def link(self, sigma: Iterable[int]) -> "SimplicialComplex":
        """``Lk(σ, K)`` on the same label set; labels of σ become ghosts."""
        sigma = self._check_labels(sigma)
        s = to_mask(sigma)
        if not self.is_simplex(sigma):
            raise InputError(f"{sigma} is not a simplex")
        return SimplicialComplex(self.m, tuple(from_mask(f & ~s) for f in self.facet_masks if s & ~f == 0), self.names)

    def relabel(self) -> tuple["SimplicialComplex", Simplex]:
        """Relabel the actual vertices to ``1..n``; returns the complex and the old labels."""
        old = self.vertices
        new = {v: k + 1 for k, v in enumerate(old)}
        return SimplicialComplex(len(old), tuple(tuple(new[v] for v in f) for f in self.facets)), old

    def __contains__(self, s) -> bool:
        return self.is_simplex(s)

    def __str__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, f)) + "}" for f in self.facets) or "{}"
        return f"K(m={self.m}; {body})"


# -- J-tuples ----------------------------------------------------------

def check_j(J: Sequence[int], m: int) -> tuple[int, ...]:
    J = tuple(int(j) for j in J)
    if len(J) != m:
        raise InputError(f"J has length {len(J)} but the complex has m={m}")
    if any(j < 1 for j in J):
        raise InputError(f"J entries must be positive, got {J}")
    return J


def blocks(J: Sequence[int]) -> list[Simplex]:
    """Consecutive label blocks ``B_1, ..., B_m`` of sizes ``j_1, ..., j_m``."""
    out, start = [], 1
    for j in J:
        out.append(tuple(range(start, start + j)))
        start += j
    return out


# -- constructions -----------------------------------------------------

def derived_complex(K: SimplicialComplex, augmented: bool = False) -> SimplicialComplex:
    """Barycentric subdivision ``K'`` (or its cone ``K'_+`` when augmented).

    Vertex ``k`` of the output stands for ``names[k - 1]``, a simplex of K.
    """
    simplices = [s for s in K.simplices() if augmented or s]
    index = {s: k + 1 for k, s in enumerate(simplices)}
    facets = set()
    for f in K.facets:
        for order in permutations(f):
            chain = [order[:k] for k in range(0 if augmented else 1, len(f) + 1)]
            facets.add(tuple(sorted(index[tuple(sorted(c))] for c in chain)))
    if augmented and not K.facets:
        facets.add((index[()],))
    return SimplicialComplex(len(simplices), tuple(facets), tuple(simplices))


def simplicial_wedge(K: SimplicialComplex, i: int) -> SimplicialComplex:
    """The simplicial wedge ``K(v_i)`` on ``[m + 1]``.

    ``{i} * K_{[m]-i}  ∪  {i+1} * K_{[m]-i}  ∪  {i, i+1} * Lk(v_i, K)``
    with original labels above i shifted up by one.
    """
    if not (1 <= i <= K.m):
        raise InputError(f"vertex {i} outside [1, {K.m}]")
    if not K.vertex_mask >> (i - 1) & 1:
        raise InputError(f"{i} is a ghost vertex of K")

    def shift(s):
        return tuple(j if j < i else j + 1 for j in s)

    rest = [t for t in range(1, K.m + 1) if t != i]
    deletion = K.full_subcomplex(rest)
    lk = K.link((i,))
    facets = []
    for f in deletion.facets or ((),):
        facets.append(shift(f) + (i,))
        facets.append(shift(f) + (i + 1,))
    for f in lk.facets or ((),):
        facets.append(shift(f) + (i, i + 1))
    return SimplicialComplex(K.m + 1, tuple(tuple(sorted(f)) for f in facets))


def kj_construction(K: SimplicialComplex, J: Sequence[int], cap: int = 24) -> SimplicialComplex:
    """``K(J)`` on ``[d(J)]``: minimal non-faces are the block inflations of K's.

    A set S is a face iff the blocks it contains fully index a simplex of K, so
    the facets are ``∪_{k∈F} B_k ∪ ∪_{k∉F} (B_k minus one label)`` for facets F.
    """
    J = check_j(J, K.m)
    if sum(J) > cap:
        raise ResourceLimitError(f"d(J)={sum(J)} exceeds cap {cap}")
    B = blocks(J)
    facets = []
    for F in K.facets or ((),):
        inside = [B[k - 1] for k in F]
        outside = [B[k - 1] for k in range(1, K.m + 1) if k not in F]
        base = tuple(v for b in inside for v in b)
        for dropped in product(*outside):
            extra = tuple(v for b, d in zip(outside, dropped) for v in b if v != d)
            facets.append(tuple(sorted(base + extra)))
    return SimplicialComplex(sum(J), tuple(facets))


def kj_missing_faces(K: SimplicialComplex, J: Sequence[int]) -> list[Simplex]:
    J = check_j(J, K.m)
    B = blocks(J)
    return sorted((tuple(sorted(v for k in tau for v in B[k - 1])) for tau in K.missing_faces()),
                  key=lambda s: (len(s), s))


def kj_by_wedges(K: SimplicialComplex, J: Sequence[int]) -> SimplicialComplex:
    """``K(J)`` as an iterated simplicial wedge, right-most block first."""
    J = check_j(J, K.m)
    out = K
    for k in range(K.m, 0, -1):
        for step in range(J[k - 1] - 1):
            out = simplicial_wedge(out, k + step)
    return out


def basic_construction_triangulation(K: SimplicialComplex, cap: int = 6) -> SimplicialComplex:
    """Triangulate ``(D¹,S⁰)^K`` as ``Z_2^m`` copies of ``K'_+`` glued along mirrors.

    A vertex of ``K'_+`` is a simplex ρ of K; it lies on the mirror of every
    i ∈ ρ, so copy g and copy g' of it coincide iff g, g' agree off ρ.  A
    vertex of the result is therefore the pair (g with ρ-bits cleared, ρ),
    and ``names`` records these pairs as bitmasks.
    """
    if K.m > cap:
        raise ResourceLimitError(f"m={K.m} exceeds the basic-construction cap {cap}")
    flags = []
    for f in K.facets or ((),):
        for order in permutations(f):
            chain, acc = [0], 0
            for v in order:
                acc |= 1 << (v - 1)
                chain.append(acc)
            flags.append(chain)
    labels: dict[tuple[int, int], int] = {}
    facets = set()
    for g in range(1 << K.m):
        for chain in flags:
            simplex = []
            for rho in chain:
                key = (g & ~rho, rho)
                if key not in labels:
                    labels[key] = len(labels) + 1
                simplex.append(labels[key])
            facets.add(tuple(sorted(simplex)))
    names = tuple(sorted(labels, key=labels.get))
    return SimplicialComplex(len(labels), tuple(facets), names)


# -- plain-text file format ---------------------------------------------

def parse_complex(text: str) -> SimplicialComplex:
    """Parse ``m=<int>`` followed by ``facet:`` or ``missing:`` lines."""
    m = None
    style = None
    rows: list[Simplex] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m is None:
            key, _, value = line.partition("=")
            if key.strip() != "m" or not value.strip().isdigit():
                raise ParseError("expected 'm=<int>' as the first line", lineno)
            m = int(value)
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in ("facet", "missing"):
            raise ParseError(f"expected 'facet:' or 'missing:', got {raw.strip()!r}", lineno)
        if style is None:
            style = key
        elif style != key:
            raise ParseError("a file may use either facet or missing lines, not both", lineno)
        try:
            labels = tuple(int(tok) for tok in value.split())
        except ValueError:
            raise ParseError(f"non-integer label in {value.strip()!r}", lineno) from None
        for i in labels:
            if not (1 <= i <= m):
                raise ParseError(f"label {i} outside [1, {m}]", lineno)
        rows.append(labels)
    if m is None:
        raise ParseError("empty complex file")
    if style == "missing":
        return SimplicialComplex.from_missing_faces(m, rows)
    return SimplicialComplex(m, tuple(rows))


def format_complex(K: SimplicialComplex, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"m={K.m}")
    lines.extend("facet: " + " ".join(map(str, f)) for f in K.facets)
    return "\n".join(lines) + "\n"
