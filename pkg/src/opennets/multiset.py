"""Finite multisets over an explicit carrier: the free commutative monoid N[X].

Markings, transition sources and targets, and boundary markings are all
:class:`Multiset` values.  The carrier is stored explicitly so that a
marking with zero tokens on some place still knows which places exist.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Mapping
from itertools import combinations_with_replacement
from typing import Union

from .errors import CarrierMismatch

AtomMap = Union[Mapping[str, str], Callable[[str], str]]


class Multiset:
    """Immutable multiset of atoms drawn from a finite carrier.

    >>> m = Multiset({"A", "B"}, {"A": 2})
    >>> m + Multiset.of({"A", "B"}, "B")
    Multiset({'A': 2, 'B': 1})
    """

    __slots__ = ("carrier", "_items", "_hash")

    def __init__(self, carrier: Iterable[str], counts=None):
        carrier = frozenset(carrier)
        pairs = counts.items() if isinstance(counts, Mapping) else (counts or ())
        acc: dict[str, int] = {}
        for atom, n in pairs:
            if not isinstance(n, int) or isinstance(n, bool):
                raise TypeError(f"count for {atom!r} must be an int, got {n!r}")
            if n < 0:
                raise ValueError(f"negative count {n} for {atom!r}")
            if n == 0:
                continue
            if atom not in carrier:
                raise ValueError(f"atom {atom!r} is not in the carrier")
            acc[atom] = acc.get(atom, 0) + n
        items = tuple(sorted(acc.items()))
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "_items", items)
        object.__setattr__(self, "_hash", hash((carrier, items)))

    def __setattr__(self, name, value):
        raise AttributeError("Multiset is immutable")

    @classmethod
    def of(cls, carrier: Iterable[str], *atoms: str) -> "Multiset":
        """Build a multiset from a list of atoms, repeated atoms counting twice."""
        counts: dict[str, int] = {}
        for a in atoms:
            counts[a] = counts.get(a, 0) + 1
        return cls(carrier, counts)

    # -- inspection ---------------------------------------------------------

    def __getitem__(self, atom: str) -> int:
        for a, n in self._items:
            if a == atom:
                return n
        if atom not in self.carrier:
            raise KeyError(atom)
        return 0

    def count(self, atom: str) -> int:
        return dict(self._items).get(atom, 0)

    def items(self) -> tuple[tuple[str, int], ...]:
        """Nonzero ``(atom, count)`` pairs in sorted atom order."""
        return self._items

    def support(self) -> frozenset[str]:
        return frozenset(a for a, _ in self._items)

    def total(self) -> int:
        return sum(n for _, n in self._items)

    def is_empty(self) -> bool:
        return not self._items

    def elements(self) -> Iterator[str]:
        for a, n in self._items:
            for _ in range(n):
                yield a

    def to_dict(self) -> dict[str, int]:
        return dict(self._items)

    def __len__(self) -> int:
        return self.total()

    def __bool__(self) -> bool:
        return bool(self._items)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self.carrier == other.carrier and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Multiset({dict(self._items)!r})"

    def __str__(self) -> str:
        return format_counts(self)

    # -- monoid structure ---------------------------------------------------

    def _check(self, other: "Multiset") -> None:
        if self.carrier != other.carrier:
            raise CarrierMismatch(self.carrier, other.carrier)

    def __add__(self, other: "Multiset") -> "Multiset":
        if not isinstance(other, Multiset):
            return NotImplemented
        self._check(other)
        acc = dict(self._items)
        for a, n in other._items:
            acc[a] = acc.get(a, 0) + n
        return Multiset(self.carrier, acc)

    def subtract(self, other: "Multiset") -> "Multiset | None":
        """Pointwise difference, or ``None`` when ``other`` is not contained in ``self``.

        ``None`` is the normal outcome for a disabled transition, so this
        does not raise.
        """
        self._check(other)
        acc = dict(self._items)
        for a, n in other._items:
            left = acc.get(a, 0) - n
            if left < 0:
                return None
            acc[a] = left
        return Multiset(self.carrier, acc)

    def __sub__(self, other: "Multiset") -> "Multiset | None":
        if not isinstance(other, Multiset):
            return NotImplemented
        return self.subtract(other)

    def leq(self, other: "Multiset") -> bool:
        self._check(other)
        theirs = dict(other._items)
        return all(n <= theirs.get(a, 0) for a, n in self._items)

    __le__ = leq

    def __ge__(self, other: "Multiset") -> bool:
        return other.leq(self)

    def scale(self, k: int) -> "Multiset":
        if k < 0:
            raise ValueError("scale factor must be nonnegative")
        return Multiset(self.carrier, {a: n * k for a, n in self._items})

    def map(self, f: AtomMap, codomain: Iterable[str]) -> "Multiset":
        """Push forward along ``f``: the monoid homomorphism N[f] extending ``f``.

        The count of ``z`` in the result is the sum of the counts of all
        atoms sent to ``z``.  ``f`` must be defined on every atom of the
        carrier, including atoms with count zero.
        """
        codomain = frozenset(codomain)
        fn = f.__getitem__ if isinstance(f, Mapping) else f
        images = {}
        for a in self.carrier:
            try:
                z = fn(a)
            except KeyError:
                raise ValueError(f"map is undefined on atom {a!r}") from None
            if z not in codomain:
                raise ValueError(f"map sends {a!r} to {z!r}, outside the codomain")
            images[a] = z
        acc: dict[str, int] = {}
        for a, n in self._items:
            z = images[a]
            acc[z] = acc.get(z, 0) + n
        return Multiset(codomain, acc)

    def restrict(self, atoms: Iterable[str]) -> "Multiset":
        """Keep only the given atoms, over the reduced carrier."""
        atoms = frozenset(atoms) & self.carrier
        return Multiset(atoms, {a: n for a, n in self._items if a in atoms})

    def extend(self, carrier: Iterable[str]) -> "Multiset":
        """The same counts viewed over a larger carrier."""
        carrier = frozenset(carrier)
        if not self.carrier <= carrier:
            raise CarrierMismatch(self.carrier, carrier)
        return Multiset(carrier, self._items)


def empty(carrier: Iterable[str]) -> Multiset:
    return Multiset(carrier)


def add(a: Multiset, b: Multiset) -> Multiset:
    return a + b


def subtract(a: Multiset, b: Multiset) -> Multiset | None:
    return a.subtract(b)


def leq(a: Multiset, b: Multiset) -> bool:
    return a.leq(b)


def map_multiset(f: AtomMap, a: Multiset, codomain: Iterable[str]) -> Multiset:
    return a.map(f, codomain)


def bounded(carrier: Iterable[str], max_total: int) -> list[Multiset]:
    """Every multiset over ``carrier`` with at most ``max_total`` elements.

    Ordered by total size, then lexicographically on the sorted element
    list, so the result is deterministic.
    """
    carrier = frozenset(carrier)
    atoms = sorted(carrier)
    out = []
    for size in range(max_total + 1):
        if not atoms and size:
            break
        for combo in combinations_with_replacement(atoms, size):
            out.append(Multiset.of(carrier, *combo))
    return out


def format_counts(m: Multiset) -> str:
    """Render as ``A:2,B:1``; the empty multiset renders as ``0``."""
    if not m:
        return "0"
    return ",".join(f"{a}:{n}" for a, n in m.items())
