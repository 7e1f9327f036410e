"""Named complexes used by the examples, scripts and tests."""

from __future__ import annotations

from .complex import SimplicialComplex


def pentagon() -> SimplicialComplex:
    return SimplicialComplex(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])


def heptagon() -> SimplicialComplex:
    """Complex on [7] whose non-faces are the sets containing three cyclically consecutive labels."""
    return SimplicialComplex.from_missing_faces(7, [(i, i % 7 + 1, (i + 1) % 7 + 1) for i in range(1, 8)])


def octahedron() -> SimplicialComplex:
    """Boundary of the cross-polytope with antipodal pairs (1,6), (2,4), (3,5)."""
    return SimplicialComplex.from_missing_faces(6, [(1, 6), (2, 4), (3, 5)])


def truncated_cube() -> SimplicialComplex:
    """Octahedron with the facet {4,5,6} stacked by a new vertex 7."""
    facets = [f for f in octahedron().facets if f != (4, 5, 6)]
    facets = [f for f in facets] + [(4, 5, 7), (4, 6, 7), (5, 6, 7)]
    return SimplicialComplex(7, facets)


def sphere0() -> SimplicialComplex:
    return SimplicialComplex(2, [(1,), (2,)])


def boundary_tetrahedron() -> SimplicialComplex:
    return SimplicialComplex.boundary_of_simplex(4)


def projective_plane() -> SimplicialComplex:
    """Six-vertex triangulation of RP²."""
    return SimplicialComplex(6, [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
                                 (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)])


def two_edges() -> SimplicialComplex:
    return SimplicialComplex(4, [(1, 2), (3, 4)])


CATALOG = {
    "pentagon": pentagon,
    "heptagon": heptagon,
    "octahedron": octahedron,
    "truncated-cube": truncated_cube,
    "sphere0": sphere0,
    "tetrahedron-boundary": boundary_tetrahedron,
    "rp2": projective_plane,
    "two-edges": two_edges,
}
