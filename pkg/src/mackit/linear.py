"""Sparse integer linear combinations of hashable basis keys."""

from __future__ import annotations

from typing import Hashable, Iterator


class Combination:
    """Finite formal sum ``Σ c_k · key_k`` with no zero coefficients stored.

    Subclasses carry extra context (flavor, algebra) and override ``_like``
    so that arithmetic preserves it.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def _like(self, terms: dict) -> "Combination":
        return type(self)(terms)

    def _check_compatible(self, other: "Combination") -> None:
        pass

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check_compatible(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, int):
            return self._like({k: c * v for k, v in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Combination):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Hashable, int]]:
        return iter(sorted(self.terms.items()))

    def coefficient(self, key) -> int:
        return self.terms.get(key, 0)

    def keys(self):
        return self.terms.keys()
