"""Processes: morphisms of the free commutative monoidal category on a Petri net.

A process is kept in a normal form where every step fires exactly one
transition inside an idle context.  Sums of processes are serialized and
the order of independent steps is quotiented out by
:func:`process_equiv`.  This module also answers hom-set questions
(is there any process from ``m`` to ``n``?) with a search that shares no
code with :mod:`opennets.reach`, so the two can check each other.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .caps import ExplorationCaps, Verdict
from .errors import CarrierMismatch, ProcessError
from .multiset import Multiset
from .petri import PetriMorphism, PetriNet


@dataclass(frozen=True)
class Objects:
    """The objects of the category: multisets over ``carrier``."""

    carrier: frozenset[str]

    def __contains__(self, m) -> bool:
        return isinstance(m, Multiset) and m.carrier == self.carrier

    def count(self, max_coefficient: int) -> int:
        return (max_coefficient + 1) ** len(self.carrier)

    def enumerate(self, max_coefficient: int) -> Iterator[Multiset]:
        """Every object whose coefficients are all at most ``max_coefficient``."""
        atoms = sorted(self.carrier)
        for counts in product(range(max_coefficient + 1), repeat=len(atoms)):
            yield Multiset(self.carrier, dict(zip(atoms, counts)))


def objects_of(net: PetriNet) -> Objects:
    return Objects(net.places)


@dataclass(frozen=True)
class Event:
    """One step ``τ + 1_context``: fire ``transition`` while ``context`` stays idle."""

    transition: str
    context: Multiset

    def dom(self, net: PetriNet) -> Multiset:
        return net.source[self.transition] + self.context

    def cod(self, net: PetriNet) -> Multiset:
        return net.target[self.transition] + self.context


class Process:
    """A morphism ``dom -> cod`` written as a sequence of single-transition steps.

    An empty event list is the identity on ``dom``.
    """

    __slots__ = ("net", "dom", "events", "cod")

    def __init__(self, net: PetriNet, dom: Multiset, events: Iterable[Event] = ()):
        events = tuple(events)
        if dom.carrier != net.places:
            raise CarrierMismatch(dom.carrier, net.places)
        here = dom
        for k, e in enumerate(events):
            if e.transition not in net.transitions:
                raise ProcessError(f"event {k}: unknown transition {e.transition!r}")
            if e.dom(net) != here:
                raise ProcessError(
                    f"event {k} ({e.transition}) starts at {e.dom(net)}, expected {here}"
                )
            here = e.cod(net)
        self.net = net
        self.dom = dom
        self.events = events
        self.cod = here

    @classmethod
    def identity(cls, net: PetriNet, m: Multiset) -> "Process":
        return cls(net, m)

    @classmethod
    def from_firings(cls, net: PetriNet, m: Multiset, transitions: Iterable[str]) -> "Process":
        """The process firing ``transitions`` in order, starting at ``m``."""
        events = []
        here = m
        for t in transitions:
            ctx = here.subtract(net.source[t])
            if ctx is None:
                raise ProcessError(f"transition {t!r} is not enabled at {here}")
            events.append(Event(t, ctx))
            here = net.target[t] + ctx
        return cls(net, m, events)

    def transitions(self) -> tuple[str, ...]:
        return tuple(e.transition for e in self.events)

    def markings(self) -> list[Multiset]:
        """The objects visited: ``dom``, then the codomain of each step."""
        out = [self.dom]
        for e in self.events:
            out.append(e.cod(self.net))
        return out

    def __len__(self) -> int:
        return len(self.events)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Process):
            return NotImplemented
        return (self.net, self.dom, self.events) == (other.net, other.dom, other.events)

    def __hash__(self) -> int:
        return hash((self.net, self.dom, self.events))

    def __str__(self) -> str:
        return f"{self.dom} --{','.join(self.transitions())}--> {self.cod}"

    def __repr__(self) -> str:
        return f"Process({self})"


def identity_process(net: PetriNet, m: Multiset) -> Process:
    return Process(net, m)


def compose_process(p2: Process, p1: Process) -> Process:
    """``p2 ∘ p1``: run ``p1`` then ``p2``."""
    if p1.net != p2.net:
        raise ProcessError("processes live in different nets")
    if p1.cod != p2.dom:
        raise ProcessError(f"cannot compose: {p1.cod} is not {p2.dom}")
    return Process(p1.net, p1.dom, p1.events + p2.events)


def tensor_process(p1: Process, p2: Process) -> Process:
    """``p1 + p2``, serialized as ``p1`` beside ``dom p2`` followed by ``p2`` beside ``cod p1``."""
    if p1.net != p2.net:
        raise ProcessError("processes live in different nets")
    first = [Event(e.transition, e.context + p2.dom) for e in p1.events]
    second = [Event(e.transition, e.context + p1.cod) for e in p2.events]
    return Process(p1.net, p1.dom + p2.dom, first + second)


def _swaps(net: PetriNet, events: tuple[Event, ...]) -> Iterator[tuple[Event, ...]]:
    for k in range(len(events) - 1):
        a, b = events[k], events[k + 1]
        sb = net.source[b.transition]
        rest = a.context.subtract(sb)
        if rest is None:
            continue
        # b now fires first, inside what a's context had left over
        first = Event(b.transition, net.source[a.transition] + rest)
        second = Event(a.transition, net.target[b.transition] + rest)
        yield events[:k] + (first, second) + events[k + 2 :]


def swap_class(p: Process, max_states: int = 100_000) -> frozenset[tuple[Event, ...]] | None:
    """Every event list reachable from ``p`` by swapping adjacent independent steps.

    ``None`` when the class has more than ``max_states`` members.
    """
    seen = {p.events}
    queue = deque([p.events])
    while queue:
        evs = queue.popleft()
        for nxt in _swaps(p.net, evs):
            if nxt not in seen:
                if len(seen) >= max_states:
                    return None
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)


def process_equiv(p: Process, q: Process, max_states: int = 100_000) -> bool | None:
    """Whether ``q`` is obtained from ``p`` by swapping adjacent independent steps.

    Steps ``k`` and ``k+1`` are independent when the second one's source
    already sits in the first one's idle context.  Returns ``None`` when
    the search exceeds ``max_states`` without meeting ``q``.
    """
    if p.net != q.net or p.dom != q.dom or p.cod != q.cod:
        return False
    if sorted(p.transitions()) != sorted(q.transitions()):
        return False
    if p.events == q.events:
        return True
    seen = {p.events}
    queue = deque([p.events])
    while queue:
        evs = queue.popleft()
        for nxt in _swaps(p.net, evs):
            if nxt == q.events:
                return True
            if nxt not in seen:
                if len(seen) >= max_states:
                    return None
                seen.add(nxt)
                queue.append(nxt)
    return False


def _class_key(net: PetriNet, events) -> tuple:
    return (len(events), tuple(e.transition for e in events))


def enumerate_hom(
    net: PetriNet, m: Multiset, n: Multiset, max_events: int, max_states: int = 100_000
) -> list[Process]:
    """All processes ``m -> n`` with at most ``max_events`` steps, one per equivalence class.

    Each class is represented by its least member (shortest, then
    lexicographic on transition names) and classes come out in that order.
    """
    if max_events < 0:
        raise ValueError("max_events must be nonnegative")
    for x in (m, n):
        if x.carrier != net.places:
            raise CarrierMismatch(x.carrier, net.places)
    order = net.sorted_transitions()
    found: list[tuple[Event, ...]] = []

    def walk(here: Multiset, events: list[Event]):
        if here == n:
            found.append(tuple(events))
        if len(events) == max_events:
            return
        for t in order:
            ctx = here.subtract(net.source[t])
            if ctx is None:
                continue
            events.append(Event(t, ctx))
            walk(net.target[t] + ctx, events)
            events.pop()

    walk(m, [])
    covered: set[tuple[Event, ...]] = set()
    reps = []
    for evs in found:
        if evs in covered:
            continue
        members = swap_class(Process(net, m, evs), max_states)
        if members is None:
            members = frozenset([evs])
        covered |= members
        reps.append(min(members, key=lambda e: _class_key(net, e)))
    reps.sort(key=lambda e: _class_key(net, e))
    return [Process(net, m, evs) for evs in reps]


# -- hom-set nonemptiness --------------------------------------------------------


@dataclass(frozen=True)
class HomResult:
    verdict: Verdict
    witness: Process | None = None

    @property
    def definite(self) -> bool:
        return self.verdict.definite


@lru_cache(maxsize=64)
def _monotone_places(net: PetriNet) -> tuple[frozenset, frozenset]:
    """Places no transition ever drains, and places no transition ever fills."""
    never_down, never_up = set(net.places), set(net.places)
    for t in net.transitions:
        s, tg = net.source[t], net.target[t]
        for a in net.places:
            d = tg[a] - s[a]
            if d < 0:
                never_down.discard(a)
            if d > 0:
                never_up.discard(a)
    return frozenset(never_down), frozenset(never_up)


@dataclass(frozen=True)
class _Search:
    # marking -> (predecessor, event) on the shallowest path found
    back: dict
    refused: frozenset
    stopped: bool


@lru_cache(maxsize=4096)
def _depth_first(net: PetriNet, m: Multiset, caps: ExplorationCaps) -> _Search:
    # Depth-first with re-expansion whenever a marking is met at a smaller
    # depth, so the depth cap means the same thing as for a layered search.
    order = net.sorted_transitions()
    best = {m: 0}
    back: dict = {m: None}
    refused = set()
    stack = [(m, 0)]
    while stack:
        here, d = stack.pop()
        if best[here] < d:
            continue
        for t in order:
            ctx = here.subtract(net.source[t])
            if ctx is None:
                continue
            there = net.target[t] + ctx
            if there.total() > caps.max_tokens or d + 1 > caps.max_depth:
                if there not in best:
                    refused.add(there)
                continue
            if there in best and best[there] <= d + 1:
                continue
            if there not in best and len(best) >= caps.max_states:
                return _Search(back, frozenset(refused), True)
            best[there] = d + 1
            back[there] = (here, Event(t, ctx))
            refused.discard(there)
            stack.append((there, d + 1))
    return _Search(back, frozenset(refused), False)


def _beyond(net: PetriNet, x: Multiset, n: Multiset) -> bool:
    never_down, never_up = _monotone_places(net)
    return any(x[a] > n[a] for a in never_down) or any(x[a] < n[a] for a in never_up)


def hom_non_empty(
    net: PetriNet, m: Multiset, n: Multiset, caps: ExplorationCaps | None = None
) -> HomResult:
    """Is there a process ``m -> n``?  A ``yes`` carries one as a witness.

    ``no`` is returned when the search closed without any cap refusing a
    marking, or when every refused marking already holds too many tokens
    on a place nothing drains (or too few on a place nothing fills).
    """
    caps = caps or ExplorationCaps()
    for x in (m, n):
        if x.carrier != net.places:
            raise CarrierMismatch(x.carrier, net.places)
    search = _depth_first(net, m, caps)
    if n in search.back:
        events = []
        here = n
        while search.back[here] is not None:
            here, e = search.back[here]
            events.append(e)
        events.reverse()
        return HomResult(Verdict.YES, Process(net, m, events))
    if search.stopped:
        return HomResult(Verdict.UNKNOWN)
    if all(_beyond(net, x, n) for x in search.refused):
        return HomResult(Verdict.NO)
    return HomResult(Verdict.UNKNOWN)


def apply_f(mor: PetriMorphism, p: Process) -> Process:
    """Push a process forward along a net morphism, step by step."""
    if p.net != mor.dom:
        raise ProcessError("process does not live in the morphism's domain")
    g, f, cod = mor.on_places, mor.on_transitions, mor.cod
    events = [Event(f[e.transition], e.context.map(g, cod.places)) for e in p.events]
    return Process(cod, p.dom.map(g, cod.places), events)
