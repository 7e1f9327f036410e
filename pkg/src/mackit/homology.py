"""Integral (co)homology of finitely generated (co)chain complexes.

Chain complexes are kept sparse: the differential out of degree ``p`` is a
``{row: {col: value}}`` dictionary whose columns index the basis of degree
``p`` and whose rows index the basis of degree ``p + step`` (``step = -1``
for chain complexes, ``+1`` for cochain complexes).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable

from .complex import SimplicialComplex, from_mask, mask_sign
from .errors import InvariantViolation, NotACocycleError, ResourceLimitError
from .snf import SparseRows, elementary_divisors, matvec, smith_decomposition


@dataclass(frozen=True)
class HomologyGroup:
    """``Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`` with ``t_1 | t_2 | ... | t_k``."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.rank < 0 or any(t < 2 for t in self.torsion):
            raise ValueError(f"invalid group data {self.rank}, {self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __add__(self, other: "HomologyGroup") -> "HomologyGroup":
        return direct_sum([self, other])

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def as_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


ZERO = HomologyGroup()
Z = HomologyGroup(1)


def _prime_powers(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append(q)
        p += 1
    if n > 1:
        out.append(n)
    return out


def direct_sum(groups: Iterable[HomologyGroup]) -> HomologyGroup:
    """Direct sum, renormalised to invariant factors."""
    rank = 0
    by_prime: dict[int, list[int]] = {}
    for g in groups:
        rank += g.rank
        for t in g.torsion:
            for q in _prime_powers(t):
                p = next(d for d in range(2, q + 1) if q % d == 0)
                by_prime.setdefault(p, []).append(q)
    for qs in by_prime.values():
        qs.sort(reverse=True)
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = []
    for k in range(length):
        t = 1
        for qs in by_prime.values():
            if k < len(qs):
                t *= qs[k]
        factors.append(t)
    return HomologyGroup(rank, tuple(sorted(factors)))


def betti(groups) -> list[int]:
    return [g.rank for g in groups]


def sparse_compose(A: SparseRows, B: SparseRows) -> SparseRows:
    """``A @ B`` for row-dictionary matrices."""
    out: SparseRows = {}
    for r, row in A.items():
        acc: dict[int, int] = {}
        for k, a in row.items():
            for c, b in B.get(k, {}).items():
                acc[c] = acc.get(c, 0) + a * b
        acc = {c: v for c, v in acc.items() if v}
        if acc:
            out[r] = acc
    return out


def dense(rows: SparseRows, nrows: int, ncols: int) -> list[list[int]]:
    M = [[0] * ncols for _ in range(nrows)]
    for r, row in rows.items():
        for c, v in row.items():
            M[r][c] = v
    return M


class IntegerChainComplex:
    """Graded free abelian groups with a differential of degree ``step``.

    ``sizes[p]`` is the rank of degree ``p``; ``differentials[p]`` is the
    sparse matrix of the map out of degree ``p``.  Construction verifies that
    consecutive differentials compose to zero.
    """

    def __init__(self, sizes: dict[int, int], differentials: dict[int, SparseRows], step: int = -1, check: bool = True):
        if step not in (-1, 1):
            raise ValueError("step must be -1 (chains) or +1 (cochains)")
        self.sizes = {p: n for p, n in sizes.items() if n}
        self.differentials = differentials
        self.step = step
        self._divisors: dict[int, list[int]] = {}
        if check:
            self.check()

    def check(self) -> None:
        for p, D in self.differentials.items():
            nxt = self.differentials.get(p + self.step)
            if nxt and D and sparse_compose(nxt, D):
                raise InvariantViolation(f"differential squared is nonzero at degree {p}")

    @property
    def degrees(self) -> list[int]:
        return sorted(self.sizes)

    def divisors(self, p: int) -> list[int]:
        if p not in self._divisors:
            D = self.differentials.get(p)
            self._divisors[p] = elementary_divisors(D) if D else []
        return self._divisors[p]

    def homology(self, p: int) -> HomologyGroup:
        n = self.sizes.get(p, 0)
        incoming = self.divisors(p - self.step)
        outgoing = self.divisors(p)
        rank = n - len(outgoing) - len(incoming)
        return HomologyGroup(rank, tuple(d for d in incoming if d > 1))

    def all_homology(self) -> dict[int, HomologyGroup]:
        return {p: self.homology(p) for p in self.degrees}

    def euler_characteristic(self) -> int:
        return sum((-1) ** (p % 2) * n for p, n in self.sizes.items())

    def dual(self) -> "IntegerChainComplex":
        """The cochain complex ``Hom(C, Z)`` (transposed differentials)."""
        duals: dict[int, SparseRows] = {}
        for p, D in self.differentials.items():
            T: SparseRows = {}
            for r, row in D.items():
                for c, v in row.items():
                    T.setdefault(c, {})[r] = v
            duals[p + self.step] = T
        return IntegerChainComplex(dict(self.sizes), duals, -self.step, check=False)


class BasedComplex:
    """A (co)chain complex over an explicit basis of hashable keys.

    ``basis[p]`` lists the keys of degree ``p``; ``differential(key)`` returns
    ``{key: coefficient}`` in degree ``p + step``.
    """

    def __init__(self, basis: dict[int, list[Hashable]], differential: Callable[[Hashable], dict], step: int = -1, check: bool = True):
        self.basis = {p: list(keys) for p, keys in basis.items() if keys}
        self.index = {p: {k: i for i, k in enumerate(keys)} for p, keys in self.basis.items()}
        self.degree_of = {k: p for p, keys in self.basis.items() for k in keys}
        self.step = step
        mats: dict[int, SparseRows] = {}
        for p, keys in self.basis.items():
            target = self.index.get(p + step, {})
            M: SparseRows = {}
            for c, key in enumerate(keys):
                for img, v in differential(key).items():
                    if not v:
                        continue
                    if img not in target:
                        raise InvariantViolation(f"differential of {key!r} leaves the basis: {img!r}")
                    M.setdefault(target[img], {})[c] = v
            if M:
                mats[p] = M
        self.matrices = mats
        self.complex = IntegerChainComplex({p: len(k) for p, k in self.basis.items()}, mats, step, check=check)
        self._bases: dict[int, HomologyBasis] = {}

    def vector(self, element: dict, p: int) -> list[int]:
        idx = self.index.get(p, {})
        v = [0] * len(idx)
        for key, c in element.items():
            if c:
                v[idx[key]] += c
        return v

    def homology(self, p: int) -> HomologyGroup:
        return self.complex.homology(p)

    def homology_basis(self, p: int) -> "HomologyBasis":
        if p not in self._bases:
            n = len(self.basis.get(p, ()))
            n_in = len(self.basis.get(p - self.step, ()))
            n_out = len(self.basis.get(p + self.step, ()))
            d_in = dense(self.matrices.get(p - self.step, {}), n, n_in)
            d_out = dense(self.matrices.get(p, {}), n_out, n)
            self._bases[p] = HomologyBasis(d_in, d_out, n)
        return self._bases[p]

    def element(self, vector: list[int], p: int) -> dict:
        return {self.basis[p][i]: v for i, v in enumerate(vector) if v}


class HomologyBasis:
    """Explicit description of ``ker(d_out) / im(d_in)`` in one degree.

    With ``U d_in V = diag(d_1..d_r)`` every cycle has ``U``-coordinates whose
    first r entries are free and whose tail lies in a saturated lattice L.
    The class of a cycle is (tail coordinates in a basis of L, first-r
    coordinates modulo the divisors that exceed one).
    """

    def __init__(self, d_in: list[list[int]], d_out: list[list[int]], n: int):
        self.n = n
        if n == 0:
            self.U = self.Uinv = []
            self.divisors = []
            self.tail_basis, self.tail_coords = [], None
            self.free_representatives, self.torsion_representatives = [], []
            self.d_out = d_out
            return
        if d_in and d_in[0]:
            sd = smith_decomposition(d_in, n, len(d_in[0]))
            self.U, self.Uinv, self.divisors = sd.U, sd.Uinv, sd.diagonal
        else:
            self.U = [[int(i == j) for j in range(n)] for i in range(n)]
            self.Uinv = [row[:] for row in self.U]
            self.divisors = []
        r = len(self.divisors)
        self.d_out = d_out
        # cycle condition on the tail: d_out @ Uinv restricted to columns >= r
        W = [[sum(row[k] * self.Uinv[k][j] for k in range(n) if row[k]) for j in range(r, n)] for row in d_out]
        tail = n - r
        if W:
            sd2 = smith_decomposition(W, len(W), tail)
            self.tail_basis = [[sd2.V[i][j] for i in range(tail)] for j in range(sd2.rank, tail)]
            self._tail_inv, self._tail_rank = sd2.Vinv, sd2.rank
        else:
            self.tail_basis = [[int(i == j) for i in range(tail)] for j in range(tail)]
            self._tail_inv = [[int(i == j) for j in range(tail)] for i in range(tail)]
            self._tail_rank = 0
        self.free_representatives = [matvec(self.Uinv, [0] * r + b) for b in self.tail_basis]
        self.torsion_representatives = []
        self.torsion = []
        for i, d in enumerate(self.divisors):
            if d > 1:
                e = [0] * n
                e[i] = 1
                self.torsion_representatives.append(matvec(self.Uinv, e))
                self.torsion.append(d)

    @property
    def group(self) -> HomologyGroup:
        return HomologyGroup(len(self.free_representatives), tuple(d for d in self.divisors if d > 1))

    def is_cycle(self, z: list[int]) -> bool:
        return not any(matvec(self.d_out, z)) if self.d_out else True

    def coordinates(self, z: list[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(free coordinates, torsion residues) of the class of cycle ``z``."""
        if self.n == 0:
            return (), ()
        if not self.is_cycle(z):
            raise NotACocycleError("vector is not a cycle of this complex")
        y = matvec(self.U, z)
        r = len(self.divisors)
        tors = tuple(y[i] % d for i, d in enumerate(self.divisors) if d > 1)
        c = matvec(self._tail_inv, y[r:])
        if any(c[: self._tail_rank]):
            raise InvariantViolation("cycle tail outside the kernel lattice")
        return tuple(c[self._tail_rank:]), tors


# -- simplicial complexes ---------------------------------------------

def _simplices_in(K: SimplicialComplex, omega_mask: int) -> list[int]:
    return [s for s in K.simplex_masks if s & ~omega_mask == 0]


def reduced_chain_complex(K: SimplicialComplex, omega_mask: int | None = None, reduced: bool = True) -> BasedComplex:
    """Augmented simplicial chain complex of ``K_ω`` over simplex bitmasks.

    Degree ``p`` holds the simplices of dimension ``p`` (the empty simplex in
    degree -1 when reduced).  Faces carry the sign ``(-1)**(i, σ)``.
    """
    if omega_mask is None:
        omega_mask = (1 << K.m) - 1
    basis: dict[int, list[int]] = {}
    for s in _simplices_in(K, omega_mask):
        k = bin(s).count("1")
        if k == 0 and not reduced:
            continue
        basis.setdefault(k - 1, []).append(s)
    for keys in basis.values():
        keys.sort(key=from_mask)

    def boundary(s: int) -> dict[int, int]:
        out = {}
        if not reduced and bin(s).count("1") == 1:
            return out
        x, i = s, 1
        while x:
            if x & 1:
                out[s ^ (1 << (i - 1))] = mask_sign(i, s)
            x >>= 1
            i += 1
        return out

    return BasedComplex(basis, boundary, step=-1, check=False)


def reduced_cochain_complex(K: SimplicialComplex, omega_mask: int | None = None) -> BasedComplex:
    """Augmented cochain complex of ``K_ω``; dual simplices keyed by bitmask."""
    if omega_mask is None:
        omega_mask = (1 << K.m) - 1
    simplices = set(_simplices_in(K, omega_mask))
    basis: dict[int, list[int]] = {}
    for s in simplices:
        basis.setdefault(bin(s).count("1") - 1, []).append(s)
    for keys in basis.values():
        keys.sort(key=from_mask)

    def coboundary(s: int) -> dict[int, int]:
        out = {}
        free, i = omega_mask & ~s, 1
        while free:
            if free & 1 and (s | 1 << (i - 1)) in simplices:
                out[s | 1 << (i - 1)] = mask_sign(i, s)
            free >>= 1
            i += 1
        return out

    return BasedComplex(basis, coboundary, step=1, check=False)


def reduced_homology(K: SimplicialComplex, omega: Iterable[int] | None = None) -> dict[int, HomologyGroup]:
    """Nonzero reduced homology groups of ``K_ω`` keyed by degree (from -1)."""
    from .complex import to_mask

    mask = None if omega is None else to_mask(omega)
    C = reduced_chain_complex(K, mask)
    return {p: g for p, g in C.complex.all_homology().items() if not g.is_zero}


def simplicial_homology(K: SimplicialComplex) -> list[HomologyGroup]:
    """Unreduced homology ``H_0 .. H_dim``."""
    C = reduced_chain_complex(K, reduced=False)
    return [C.homology(p) for p in range(0, max(K.dim, 0) + 1)]


def is_cone_over_vertex(K: SimplicialComplex, omega_mask: int) -> bool:
    """True when some vertex of ω lies in no missing face contained in ω.

    Then ``K_ω`` is a cone on that vertex and has vanishing reduced homology.
    """
    covered = 0
    for t in K.missing_face_masks:
        if t & ~omega_mask == 0:
            covered |= t
    return bool(omega_mask & ~covered)


def _subset_homology(args) -> tuple[int, dict[int, HomologyGroup]]:
    K, w = args
    if w and is_cone_over_vertex(K, w):
        return w, {}
    C = reduced_chain_complex(K, w)
    return w, {p: g for p, g in C.complex.all_homology().items() if not g.is_zero}


def reduced_homology_all_subsets(K: SimplicialComplex, cap: int = 16, workers: int = 1) -> dict[tuple[int, ...], dict[int, HomologyGroup]]:
    """``{ω: {p: H̃_p(K_ω)}}`` for every ω ⊆ [m] with some nonzero group.

    Subsets are visited as a binary counter (label 1 least significant).
    Full subcomplexes that are cones are skipped without building matrices.
    """
    if K.m > cap:
        raise ResourceLimitError(f"m={K.m} exceeds the subset-enumeration cap {cap}")
    jobs = ((K, w) for w in range(1 << K.m))
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=min(workers, os.cpu_count() or 1)) as pool:
            results = list(pool.map(_subset_homology, jobs, chunksize=64))
    else:
        results = [_subset_homology(job) for job in jobs]
    return {from_mask(w): groups for w, groups in results if groups}


# -- direct-sum decompositions ------------------------------------------

@dataclass(frozen=True)
class ClassVector:
    """Class of a (co)cycle in a direct sum of (co)homology groups.

    ``parts`` maps ``(summand label, degree)`` to ``(free coordinates,
    torsion residues, torsion orders)``; zero parts are dropped.
    """

    parts: tuple = ()

    @classmethod
    def build(cls, parts: dict) -> "ClassVector":
        kept = {k: v for k, v in parts.items() if any(v[0]) or any(v[1])}
        return cls(tuple(sorted(kept.items(), key=lambda kv: repr(kv[0]))))

    @property
    def is_zero(self) -> bool:
        return not self.parts

    def __bool__(self):
        return bool(self.parts)

    def __neg__(self) -> "ClassVector":
        return ClassVector.build({k: (tuple(-x for x in f), tuple((-t) % d for t, d in zip(tor, ds)), ds)
                                  for k, (f, tor, ds) in self.parts})

    def __add__(self, other: "ClassVector") -> "ClassVector":
        out = dict(self.parts)
        for k, (f, tor, ds) in other.parts:
            if k in out:
                f0, t0, _ = out[k]
                out[k] = (tuple(a + b for a, b in zip(f0, f)), tuple((a + b) % d for a, b, d in zip(t0, tor, ds)), ds)
            else:
                out[k] = (f, tor, ds)
        return ClassVector.build(out)

    def free_vector(self, label, degree, size: int) -> list[int]:
        for k, (f, _, _) in self.parts:
            if k == (label, degree):
                return list(f)
        return [0] * size


class SummandDecomposition:
    """A based complex that splits as a direct sum of subcomplexes.

    ``summand_of(key)`` names the summand of a basis key, ``basis_of(label)``
    returns ``{degree: [keys]}`` for one summand, and ``differential`` maps a
    key to a ``{key: coefficient}`` dictionary inside the same summand.
    """

    def __init__(self, summand_of: Callable, basis_of: Callable, differential: Callable, step: int):
        self.summand_of = summand_of
        self.basis_of = basis_of
        self.differential = differential
        self.step = step
        self._summands: dict = {}

    def summand(self, label) -> BasedComplex:
        if label not in self._summands:
            self._summands[label] = BasedComplex(self.basis_of(label), self.differential, self.step)
        return self._summands[label]

    def class_of(self, element: dict) -> ClassVector:
        """Class of a (co)cycle; raises :class:`NotACocycleError` otherwise."""
        grouped: dict = {}
        for key, c in element.items():
            if c:
                label = self.summand_of(key)
                S = self.summand(label)
                if key not in S.degree_of:
                    raise NotACocycleError(f"{key!r} is not a basis element of summand {label!r}")
                grouped.setdefault((label, S.degree_of[key]), {})[key] = c
        parts = {}
        for (label, p), piece in grouped.items():
            S = self.summand(label)
            hb = S.homology_basis(p)
            free, tors = hb.coordinates(S.vector(piece, p))
            parts[(label, p)] = (free, tors, tuple(hb.torsion))
        return ClassVector.build(parts)
