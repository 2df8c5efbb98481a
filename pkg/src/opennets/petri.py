"""Petri nets, their morphisms, and the colimits used to glue them.

A Petri net is a pair of maps ``source, target: T -> N[S]``.  A morphism
``(f, g)`` sends transitions to transitions and places to places so that
sources and targets are preserved.  Colimits are computed separately on
transitions and places; pushouts quotient the disjoint union with a
union-find over the elements identified by the two legs.

Naming: the disjoint union keeps every original name that is unique
across both sides and renames clashing ones to ``name~1`` (left) and
``name~2`` (right).  A quotient class is named after its least original
member when that name is not claimed by another class, and after its
least renamed member otherwise.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any

from .errors import CoherenceError, InvalidNet, MorphismError
from .multiset import Multiset


class UnionFind:
    """Disjoint sets over hashable, orderable elements with path halving."""

    def __init__(self, elements: Iterable = ()):
        self.parent = {}
        for e in elements:
            self.parent[e] = e

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def classes(self) -> list[list]:
        groups: dict[Any, list] = {}
        for e in self.parent:
            groups.setdefault(self.find(e), []).append(e)
        return [sorted(g) for g in groups.values()]


def _freeze(mapping) -> Mapping:
    return MappingProxyType(dict(mapping))


@dataclass(frozen=True)
class PetriNet:
    """Places, transitions, and multiset-valued source and target maps."""

    places: frozenset[str]
    transitions: frozenset[str]
    source: Mapping[str, Multiset]
    target: Mapping[str, Multiset]

    def __post_init__(self):
        places = frozenset(self.places)
        transitions = frozenset(self.transitions)
        object.__setattr__(self, "places", places)
        object.__setattr__(self, "transitions", transitions)
        for side in ("source", "target"):
            arcs = dict(getattr(self, side))
            for tau in sorted(transitions):
                if tau not in arcs:
                    raise InvalidNet(f"transition {tau!r} has no {side}")
                m = arcs[tau]
                if not isinstance(m, Multiset):
                    m = Multiset(places, m)
                    arcs[tau] = m
                if m.carrier != places:
                    unknown = sorted(m.support() - places)
                    if unknown:
                        raise InvalidNet(
                            f"{side} of transition {tau!r} mentions unknown place {unknown[0]!r}"
                        )
                    arcs[tau] = Multiset(places, m.items())
            extra = sorted(set(arcs) - transitions)
            if extra:
                raise InvalidNet(f"{side} given for undeclared transition {extra[0]!r}")
            object.__setattr__(self, side, _freeze(arcs))

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(
                (
                    self.places,
                    self.transitions,
                    tuple(sorted((t, self.source[t], self.target[t]) for t in self.transitions)),
                )
            )
            object.__setattr__(self, "_hash", h)
        return h

    @classmethod
    def build(cls, places: Iterable[str], arcs: Mapping[str, tuple]) -> "PetriNet":
        """Build from ``{transition: (source_counts, target_counts)}``.

        Counts may be mappings like ``{"A": 1, "B": 1}`` or iterables of
        atoms like ``("A", "B")``.
        """
        places = frozenset(places)

        def as_multiset(value):
            if isinstance(value, Multiset):
                return value
            if isinstance(value, Mapping):
                return Multiset(places, value)
            return Multiset.of(places, *value)

        src = {t: as_multiset(s) for t, (s, _) in arcs.items()}
        tgt = {t: as_multiset(d) for t, (_, d) in arcs.items()}
        return cls(places, frozenset(arcs), src, tgt)

    def sorted_transitions(self) -> list[str]:
        return sorted(self.transitions)

    def sorted_places(self) -> list[str]:
        return sorted(self.places)

    def empty_marking(self) -> Multiset:
        return Multiset(self.places)

    def marking(self, counts=None, **kw) -> Multiset:
        counts = dict(counts or {})
        counts.update(kw)
        return Multiset(self.places, counts)

    def __repr__(self):
        arcs = ", ".join(
            f"{t}: {self.source[t]} -> {self.target[t]}" for t in self.sorted_transitions()
        )
        return f"PetriNet(places={self.sorted_places()}, {{{arcs}}})"


def mk_petri_net(transitions, places, source, target) -> PetriNet:
    return PetriNet(frozenset(places), frozenset(transitions), source, target)


def discrete(points: Iterable[str]) -> PetriNet:
    """The net with the given places and no transitions."""
    return PetriNet(frozenset(points), frozenset(), {}, {})


def places_of(net: PetriNet) -> frozenset[str]:
    return net.places


EMPTY_NET = discrete(())


@dataclass(frozen=True)
class PetriMorphism:
    """A pair ``(on_transitions, on_places)`` preserving sources and targets."""

    dom: PetriNet
    cod: PetriNet
    on_transitions: Mapping[str, str]
    on_places: Mapping[str, str]

    def __post_init__(self):
        f = dict(self.on_transitions)
        g = dict(self.on_places)
        for tau in sorted(self.dom.transitions):
            if tau not in f:
                raise MorphismError(f"transition {tau!r} is not mapped", tau)
            if f[tau] not in self.cod.transitions:
                raise MorphismError(
                    f"transition {tau!r} maps to unknown transition {f[tau]!r}", tau
                )
        for p in sorted(self.dom.places):
            if p not in g:
                raise MorphismError(f"place {p!r} is not mapped", p)
            if g[p] not in self.cod.places:
                raise MorphismError(f"place {p!r} maps to unknown place {g[p]!r}", p)
        f = {t: f[t] for t in self.dom.transitions}
        g = {p: g[p] for p in self.dom.places}
        object.__setattr__(self, "on_transitions", _freeze(f))
        object.__setattr__(self, "on_places", _freeze(g))
        self.check_squares()

    def check_squares(self) -> None:
        """Raise :class:`MorphismError` unless both naturality squares commute."""
        g = self.on_places
        for tau in sorted(self.dom.transitions):
            image = self.on_transitions[tau]
            for side in ("source", "target"):
                pushed = getattr(self.dom, side)[tau].map(g, self.cod.places)
                if pushed != getattr(self.cod, side)[image]:
                    raise MorphismError(
                        f"{side} square fails at transition {tau!r}: "
                        f"{pushed} != {getattr(self.cod, side)[image]}",
                        tau,
                        side,
                    )

    def __hash__(self):
        return hash(
            (
                self.dom,
                self.cod,
                tuple(sorted(self.on_transitions.items())),
                tuple(sorted(self.on_places.items())),
            )
        )

    def is_bijective(self) -> bool:
        return (
            len(set(self.on_places.values())) == len(self.cod.places) == len(self.dom.places)
            and len(set(self.on_transitions.values()))
            == len(self.cod.transitions)
            == len(self.dom.transitions)
        )

    def inverse(self) -> "PetriMorphism":
        if not self.is_bijective():
            raise MorphismError("morphism is not invertible")
        return PetriMorphism(
            self.cod,
            self.dom,
            {v: k for k, v in self.on_transitions.items()},
            {v: k for k, v in self.on_places.items()},
        )

    def __repr__(self):
        return (
            f"PetriMorphism(T={dict(sorted(self.on_transitions.items()))}, "
            f"S={dict(sorted(self.on_places.items()))})"
        )


def mk_morphism(f, g, dom: PetriNet, cod: PetriNet) -> PetriMorphism:
    return PetriMorphism(dom, cod, f, g)


def identity(net: PetriNet) -> PetriMorphism:
    return PetriMorphism(
        net, net, {t: t for t in net.transitions}, {p: p for p in net.places}
    )


def compose_morphism(m2: PetriMorphism, m1: PetriMorphism) -> PetriMorphism:
    """``m2 ∘ m1``: first ``m1``, then ``m2``."""
    if m1.cod != m2.dom:
        raise MorphismError("cannot compose: codomain of m1 differs from domain of m2")
    return PetriMorphism(
        m1.dom,
        m2.cod,
        {t: m2.on_transitions[u] for t, u in m1.on_transitions.items()},
        {p: m2.on_places[q] for p, q in m1.on_places.items()},
    )


def initial_morphism(net: PetriNet) -> PetriMorphism:
    return PetriMorphism(EMPTY_NET, net, {}, {})


def discrete_morphism(f: Mapping[str, str], dom: Iterable[str], cod: Iterable[str]) -> PetriMorphism:
    """``L(f)``: a function of sets viewed as a morphism of discrete nets."""
    return PetriMorphism(discrete(dom), discrete(cod), {}, f)


def boundary_morphism(points: Iterable[str], fn: Mapping[str, str], net: PetriNet) -> PetriMorphism:
    """The morphism ``L(X) -> net`` corresponding to a function ``X -> places``."""
    return PetriMorphism(discrete(points), net, {}, fn)


# -- colimits ---------------------------------------------------------------


def disjoint_names(left: Iterable[str], right: Iterable[str]) -> tuple[dict, dict]:
    """Names for the disjoint union of two finite sets.

    Returns ``(left_map, right_map)``: injective maps into one set of
    names whose images are disjoint.
    """
    left, right = sorted(set(left)), sorted(set(right))
    clash = set(left) & set(right)
    taken = set(left) | set(right)
    maps: tuple[dict, dict] = ({}, {})
    for side, atoms in enumerate((left, right), start=1):
        for a in atoms:
            if a not in clash:
                maps[side - 1][a] = a
                continue
            name = f"{a}~{side}"
            while name in taken:
                name += "'"
            taken.add(name)
            maps[side - 1][a] = name
    return maps


def _name_classes(classes, original, tagged) -> dict:
    """Assign a canonical name to each quotient class (a list of tagged elements)."""
    plain = [min(original[e] for e in c) for c in classes]
    uses: dict[str, int] = {}
    for p in plain:
        uses[p] = uses.get(p, 0) + 1
    names = {}
    for c, p in zip(classes, plain):
        name = p if uses[p] == 1 else min(tagged[e] for e in c)
        for e in c:
            names[e] = name
    return names


def _glue(sets1, sets2, pairs):
    """Pointwise pushout of finite sets: returns maps from each side into the quotient."""
    names1, names2 = disjoint_names(sets1, sets2)
    uf = UnionFind([(1, a) for a in sets1] + [(2, a) for a in sets2])
    for a, b in pairs:
        uf.union((1, a), (2, b))
    original = {(1, a): a for a in sets1} | {(2, a): a for a in sets2}
    tagged = {(1, a): names1[a] for a in sets1} | {(2, a): names2[a] for a in sets2}
    naming = _name_classes(uf.classes(), original, tagged)
    return {a: naming[(1, a)] for a in sets1}, {a: naming[(2, a)] for a in sets2}


@dataclass(frozen=True)
class PushoutResult:
    """The glued net together with its two cocone legs and the span it came from."""

    net: PetriNet
    left: PetriMorphism
    right: PetriMorphism
    leg1: PetriMorphism
    leg2: PetriMorphism

    def __iter__(self):
        return iter((self.net, self.left, self.right))


def pushout(leg1: PetriMorphism, leg2: PetriMorphism) -> PushoutResult:
    """Glue ``leg1.cod`` and ``leg2.cod`` along their common domain."""
    if leg1.dom != leg2.dom:
        raise MorphismError("pushout legs must share a domain")
    base = leg1.dom
    p1, p2 = leg1.cod, leg2.cod
    qp1, qp2 = _glue(
        p1.places, p2.places, [(leg1.on_places[b], leg2.on_places[b]) for b in base.places]
    )
    qt1, qt2 = _glue(
        p1.transitions,
        p2.transitions,
        [(leg1.on_transitions[b], leg2.on_transitions[b]) for b in base.transitions],
    )
    places = frozenset(qp1.values()) | frozenset(qp2.values())
    src, tgt = {}, {}
    for net, qt, qp in ((p2, qt2, qp2), (p1, qt1, qp1)):
        for tau in net.transitions:
            src[qt[tau]] = net.source[tau].map(qp, places)
            tgt[qt[tau]] = net.target[tau].map(qp, places)
    glued = PetriNet(places, frozenset(src), src, tgt)
    left = PetriMorphism(p1, glued, qt1, qp1)
    right = PetriMorphism(p2, glued, qt2, qp2)
    return PushoutResult(glued, left, right, leg1, leg2)


def coproduct(p1: PetriNet, p2: PetriNet) -> PushoutResult:
    """Disjoint union, as the pushout over the empty net."""
    return pushout(initial_morphism(p1), initial_morphism(p2))


def factor_through_pushout(
    result: PushoutResult, c1: PetriMorphism, c2: PetriMorphism
) -> PetriMorphism:
    """The unique morphism ``u`` with ``u ∘ left = c1`` and ``u ∘ right = c2``."""
    if c1.dom != result.left.dom or c2.dom != result.right.dom:
        raise CoherenceError("cocone legs do not start at the pushout's summands")
    if c1.cod != c2.cod:
        raise CoherenceError("cocone legs must share a codomain")
    for b in sorted(result.leg1.dom.places):
        x = c1.on_places[result.leg1.on_places[b]]
        y = c2.on_places[result.leg2.on_places[b]]
        if x != y:
            raise CoherenceError(f"cocone disagrees on identified place {b!r}: {x!r} vs {y!r}")
    for b in sorted(result.leg1.dom.transitions):
        x = c1.on_transitions[result.leg1.on_transitions[b]]
        y = c2.on_transitions[result.leg2.on_transitions[b]]
        if x != y:
            raise CoherenceError(
                f"cocone disagrees on identified transition {b!r}: {x!r} vs {y!r}"
            )
    f: dict[str, str] = {}
    g: dict[str, str] = {}
    for leg, cocone in ((result.left, c1), (result.right, c2)):
        for a, z in leg.on_places.items():
            w = cocone.on_places[a]
            if g.setdefault(z, w) != w:
                raise CoherenceError(f"cocone is not constant on the class of place {z!r}")
        for a, z in leg.on_transitions.items():
            w = cocone.on_transitions[a]
            if f.setdefault(z, w) != w:
                raise CoherenceError(f"cocone is not constant on the class of transition {z!r}")
    return PetriMorphism(result.net, c1.cod, f, g)
