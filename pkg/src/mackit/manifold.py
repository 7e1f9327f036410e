"""Homology-manifold recognition for ``(D¹,S⁰)^{K(J)}``.

``(D¹,S⁰)^{K(J)}`` is a homology manifold of dimension ``n + d(J) - m``
exactly when ``|K|`` is a generalized homology ``(n-1)``-sphere, i.e. every
link ``Lk(σ, K)`` (σ = ∅ included) has the homology of a sphere of dimension
``n - 1 - card(σ)``.  Whether it is a topological manifold is settled when
``d(J) > m`` or ``n <= 2``; otherwise it hinges on π₁(K), which is not
decided here.  Ghost vertices only contribute sphere factors and are ignored
by the link test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .complex import Simplex, SimplicialComplex, check_j, from_mask
from .homology import HomologyGroup, reduced_homology, simplicial_homology

YES = "yes"
LOW_DIMENSION = "yes-by-low-dimension"
CONDITIONAL = "conditional-on-pi1"
NO = "no"


def _sphere_homology(groups: dict[int, HomologyGroup], dim: int) -> bool:
    return groups == {dim: HomologyGroup(1)}


def is_generalized_homology_sphere(K: SimplicialComplex, expected_dim: int | None = None) -> tuple[bool, list[tuple[Simplex, dict]]]:
    """Link test over all simplices; returns ``(ok, [(σ, H̃_*(Lk σ)), ...])`` of failures."""
    if expected_dim is None:
        expected_dim = K.dim
    witnesses = []
    if not K.is_pure or K.dim != expected_dim:
        facet = min((f for f in K.facets if len(f) - 1 != expected_dim), default=())
        witnesses.append((facet, {"facet dimension": len(facet) - 1, "expected": expected_dim}))
    for mask in sorted(K.simplex_masks, key=lambda s: (bin(s).count("1"), from_mask(s))):
        sigma = from_mask(mask)
        L = K.link(sigma)
        h = reduced_homology(L)
        if not _sphere_homology(h, expected_dim - len(sigma)):
            witnesses.append((sigma, h))
    return not witnesses, witnesses


@dataclass
class ManifoldVerdict:
    is_homology_manifold: bool
    dimension: int
    is_generalized_homology_sphere_input: bool
    h1_of_K: HomologyGroup
    topological_manifold_status: str
    witnesses: list = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def as_json(self) -> dict:
        return {
            "is_homology_manifold": self.is_homology_manifold,
            "dimension": self.dimension,
            "is_generalized_homology_sphere_input": self.is_generalized_homology_sphere_input,
            "h1_of_K": self.h1_of_K.as_json(),
            "topological_manifold_status": self.topological_manifold_status,
            "witnesses": [
                {"simplex": list(s), "link_homology": {str(k): (v.as_json() if isinstance(v, HomologyGroup) else v) for k, v in h.items()}}
                for s, h in self.witnesses
            ],
            "notes": list(self.notes),
        }


def manifold_verdict(K: SimplicialComplex, J: Sequence[int] | None = None) -> ManifoldVerdict:
    J = check_j(J if J is not None else (1,) * K.m, K.m)
    n = K.dim + 1
    dJ = sum(J)
    ok, witnesses = is_generalized_homology_sphere(K, n - 1)
    h = simplicial_homology(K)
    h1 = h[1] if len(h) > 1 else HomologyGroup()
    notes = []
    if K.ghost_vertices:
        notes.append("ghost vertices " + ",".join(map(str, K.ghost_vertices)) + " contribute sphere factors")
    if not ok:
        status = NO
    elif dJ > K.m:
        status = YES
    elif n <= 2:
        status = LOW_DIMENSION
    else:
        status = CONDITIONAL
        notes.append("pi_1(K) not decided; H_1(K) = " + str(h1))
    return ManifoldVerdict(ok, n + dJ - K.m, ok, h1, status, witnesses, notes)
