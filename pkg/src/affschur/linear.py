"""Sparse formal linear combinations with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Dict, Hashable, Iterable, Tuple

from .rings import QQ, ZZ, Ring


class LinearCombination:
    """A finite map ``basis index -> coefficient`` over a :class:`Ring`.

    Zero coefficients are never stored.  Subclasses fix what an index is and
    usually define ``__mul__`` for the algebra product; scalar multiplication
    is ``scale``.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, terms: Iterable[Tuple[Hashable, Any]] | Dict = (), ring: Ring = ZZ):
        self.ring = ring
        acc: Dict[Hashable, Any] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for key, c in items:
            acc[key] = acc.get(key, 0) + c
        self.terms = {}
        for key, c in acc.items():
            c = ring(c)
            if c:
                self.terms[key] = c

    # -- construction -----------------------------------------------------------

    def _new(self, terms: Dict, ring: Ring | None = None):
        """Build a sibling element from an already-normalised term map."""
        obj = object.__new__(type(self))
        obj._copy_meta(self)
        obj.ring = ring or self.ring
        obj.terms = terms
        return obj

    def _copy_meta(self, other):
        """Copy subclass metadata (context fields) from ``other``."""

    @classmethod
    def _collect(cls, proto, pairs: Iterable[Tuple[Hashable, Any]], ring: Ring | None = None):
        ring = ring or proto.ring
        acc: Dict[Hashable, Any] = {}
        for key, c in pairs:
            acc[key] = acc.get(key, 0) + c
        terms = {}
        for key, c in acc.items():
            c = ring(c)
            if c:
                terms[key] = c
        return proto._new(terms, ring)

    def zero(self):
        return self._new({})

    # -- inspection -------------------------------------------------------------

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key) -> Any:
        return self.terms.get(key, 0)

    def support(self):
        return set(self.terms)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: self.index_sort_key(kv[0]))

    @staticmethod
    def index_sort_key(key):
        return key

    # -- linear structure -------------------------------------------------------

    def _check_compatible(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check_compatible(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            v = self.ring(terms.get(key, 0) + c)
            if v:
                terms[key] = v
            else:
                terms.pop(key, None)
        return self._new(terms)

    def __neg__(self):
        return self._new({k: self.ring(-c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.ring(c)
        if not c:
            return self.zero()
        return self._new({k: self.ring(v * c) for k, v in self.terms.items()
                          if self.ring(v * c)})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def map_coefficients(self, ring: Ring, fn: Callable[[Any], Any] = lambda c: c):
        return self._collect(self, ((k, fn(c)) for k, c in self.terms.items()), ring)

    def change_ring(self, ring: Ring):
        """Coerce coefficients into ``ring`` (e.g. reduction mod p)."""
        return self.map_coefficients(ring)

    def is_integral(self) -> bool:
        return all(not isinstance(c, Fraction) or c.denominator == 1
                   for c in self.terms.values())

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms and self._meta_eq(other)

    def _meta_eq(self, other) -> bool:
        return True

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- display ----------------------------------------------------------------

    def format_index(self, key) -> str:
        return repr(key)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.sorted_items():
            idx = self.format_index(key)
            parts.append(idx if c == 1 else f"{c}·{idx}")
        return " + ".join(parts)


def as_rational(x: LinearCombination):
    return x.change_ring(QQ)
