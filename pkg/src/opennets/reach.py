"""Reachability semantics: firing, bounded marking-graph search, and the relation ■P.

Markings are explored breadth-first over integer vectors indexed by the
sorted place list.  The true reachability relation of an open net is an
infinite subset of ``N[X] x N[Y]``; here it is truncated to boundary
markings of at most ``bound`` tokens, and each input marking carries a
flag saying whether its row was decided without hitting a cap.  Every
law check below only looks at complete rows, so truncation is never
mistaken for laxness.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from .caps import ExplorationCaps, Verdict
from .errors import CarrierMismatch, DisabledTransition
from .multiset import Multiset, bounded
from .opennet import OpenNetMorphism, OpenPetriNet, compose_open, identity_open, tensor_open
from .petri import PetriNet, disjoint_names

DEFAULT_CAPS = ExplorationCaps()


@dataclass(frozen=True)
class _Vectors:
    places: tuple[str, ...]
    index: Mapping[str, int]
    transitions: tuple[str, ...]
    pre: tuple[tuple[int, ...], ...]
    post: tuple[tuple[int, ...], ...]
    upper: tuple[tuple[int, ...], ...]
    lower: tuple[tuple[int, ...], ...]


def _weight_certificates(pre, post, k):
    """Place weightings that no firing can increase, or that no firing can decrease.

    Tries each single place and the total token count.  A weighting ``w``
    with ``w·(post - pre) >= 0`` for every transition can never go down,
    so a marking whose weight already exceeds the target's is a dead end
    (and dually for weightings that never go up).
    """
    candidates = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    if k > 1:
        candidates.append((1,) * k)
    grows, shrinks = [], []
    for w in candidates:
        deltas = [sum(wi * (b - a) for wi, a, b in zip(w, s, t)) for s, t in zip(pre, post)]
        if all(d >= 0 for d in deltas):
            grows.append(w)
        if all(d <= 0 for d in deltas):
            shrinks.append(w)
    return tuple(grows), tuple(shrinks)


@lru_cache(maxsize=8192)
def _vectors(net: PetriNet) -> _Vectors:
    places = tuple(net.sorted_places())
    index = {p: i for i, p in enumerate(places)}
    transitions = tuple(net.sorted_transitions())

    def vec(m: Multiset):
        v = [0] * len(places)
        for a, n in m.items():
            v[index[a]] = n
        return tuple(v)

    pre = tuple(vec(net.source[t]) for t in transitions)
    post = tuple(vec(net.target[t]) for t in transitions)
    upper, lower = _weight_certificates(pre, post, len(places))
    return _Vectors(places, index, transitions, pre, post, upper, lower)


def _to_vec(v: _Vectors, m: Multiset, net: PetriNet) -> tuple[int, ...]:
    if m.carrier != net.places:
        raise CarrierMismatch(m.carrier, net.places)
    out = [0] * len(v.places)
    for a, n in m.items():
        out[v.index[a]] = n
    return tuple(out)


def _to_multiset(v: _Vectors, x, carrier) -> Multiset:
    return Multiset(carrier, {p: n for p, n in zip(v.places, x) if n})


def _successors(v: _Vectors, x):
    for k, (pre, post) in enumerate(zip(v.pre, v.post)):
        for a, b in zip(x, pre):
            if a < b:
                break
        else:
            yield k, tuple(a - b + c for a, b, c in zip(x, pre, post))


# -- firing ------------------------------------------------------------------


def enabled(net: PetriNet, m: Multiset) -> list[str]:
    """Transitions whose source is covered by ``m``, in sorted order."""
    return [t for t in net.sorted_transitions() if net.source[t].leq(m)]


def fire(net: PetriNet, transition: str, m: Multiset) -> Multiset:
    """The marking ``(m - source) + target`` after firing ``transition`` at ``m``."""
    rest = m.subtract(net.source[transition])
    if rest is None:
        raise DisabledTransition(transition, m)
    return rest + net.target[transition]


# -- exploration ---------------------------------------------------------------


@dataclass(frozen=True)
class _Closure:
    parent: dict
    exact: bool
    # markings a cap refused to admit
    cut: frozenset
    # the state cap stopped the search early
    stopped: bool


@lru_cache(maxsize=4096)
def _explore(net: PetriNet, start: tuple, caps: ExplorationCaps) -> _Closure:
    """Breadth-first closure from ``start`` under ``caps``."""
    v = _vectors(net)
    parent: dict[tuple, Any] = {start: None}
    frontier = [start]
    cut = set()
    depth = 0
    while frontier:
        nxt = []
        for x in frontier:
            for k, y in _successors(v, x):
                if y in parent:
                    continue
                if depth >= caps.max_depth or sum(y) > caps.max_tokens:
                    cut.add(y)
                    continue
                if len(parent) >= caps.max_states:
                    return _Closure(parent, False, frozenset(cut), True)
                parent[y] = (x, k)
                nxt.append(y)
        frontier = nxt
        depth += 1
    return _Closure(parent, not cut, frozenset(cut), False)


def _path(v: _Vectors, parent, x) -> list[int]:
    steps = []
    while parent[x] is not None:
        x, k = parent[x]
        steps.append(k)
    steps.reverse()
    return steps


def _dead_test(v: _Vectors, goal):
    """Predicate for markings from which ``goal`` is provably unreachable.

    Deadness is preserved by firing, so every successor of a dead
    marking is dead too.
    """
    ups = [(w, sum(a * b for a, b in zip(w, goal))) for w in v.upper]
    downs = [(w, sum(a * b for a, b in zip(w, goal))) for w in v.lower]

    def dead(x):
        for w, bound in ups:
            if sum(a * b for a, b in zip(w, x)) > bound:
                return True
        for w, bound in downs:
            if sum(a * b for a, b in zip(w, x)) < bound:
                return True
        return False

    return dead


def _directed(v: _Vectors, start, goal, caps: ExplorationCaps):
    """Breadth-first search for ``goal`` that discards provably dead markings."""
    dead = _dead_test(v, goal)
    if dead(start):
        return None, True
    parent: dict[tuple, Any] = {start: None}
    frontier = [start]
    exact = True
    depth = 0
    while frontier:
        nxt = []
        for x in frontier:
            if x == goal:
                return parent, True
            for k, y in _successors(v, x):
                if y in parent or dead(y):
                    continue
                if depth >= caps.max_depth or sum(y) > caps.max_tokens:
                    exact = False
                    continue
                if len(parent) >= caps.max_states:
                    return None, False
                parent[y] = (x, k)
                nxt.append(y)
        frontier = nxt
        depth += 1
    return None, exact


@dataclass(frozen=True)
class ReachableSet:
    markings: frozenset[Multiset]
    exact: bool

    def __contains__(self, m):
        return m in self.markings

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.markings)

    def sorted(self) -> list[Multiset]:
        return sorted(self.markings, key=marking_key)


def marking_key(m: Multiset):
    return (m.total(), tuple(m.elements()))


def reachable_set(net: PetriNet, m: Multiset, caps: ExplorationCaps = DEFAULT_CAPS) -> ReachableSet:
    """Every marking reachable from ``m`` within ``caps``; ``exact`` when nothing was pruned."""
    v = _vectors(net)
    c = _explore(net, _to_vec(v, m, net), caps)
    return ReachableSet(frozenset(_to_multiset(v, x, net.places) for x in c.parent), c.exact)


@dataclass(frozen=True)
class ReachResult:
    """Answer to a reachability query; ``witness`` is a firing sequence when the answer is yes."""

    verdict: Verdict
    witness: tuple[str, ...] | None = None
    markings: tuple[Multiset, ...] | None = None

    @property
    def definite(self) -> bool:
        return self.verdict.definite


def _witness(net, v, parent, goal) -> ReachResult:
    steps = _path(v, parent, goal)
    x = next(iter(parent))
    marks = [_to_multiset(v, x, net.places)]
    for k in steps:
        x = tuple(a - b + c for a, b, c in zip(x, v.pre[k], v.post[k]))
        marks.append(_to_multiset(v, x, net.places))
    return ReachResult(Verdict.YES, tuple(v.transitions[k] for k in steps), tuple(marks))


def _decide(net, v, start, goal, caps) -> ReachResult:
    if start == goal:
        return ReachResult(Verdict.YES, (), (_to_multiset(v, start, net.places),))
    c = _explore(net, start, caps)
    if goal in c.parent:
        return _witness(net, v, c.parent, goal)
    if c.exact:
        return ReachResult(Verdict.NO)
    if not c.stopped:
        # Every live marking has only live ancestors, so a directed search
        # would admit exactly the live part of this closure; it is exact
        # iff everything the caps refused is dead.
        dead = _dead_test(v, goal)
        return ReachResult(Verdict.NO if all(map(dead, c.cut)) else Verdict.UNKNOWN)
    parent, exact = _directed(v, start, goal, caps)
    if parent is not None:
        return _witness(net, v, parent, goal)
    return ReachResult(Verdict.NO if exact else Verdict.UNKNOWN)


def is_reachable(
    net: PetriNet, m: Multiset, n: Multiset, caps: ExplorationCaps = DEFAULT_CAPS
) -> ReachResult:
    """Decide whether ``n`` is reachable from ``m``.

    ``yes`` comes with the shortest firing sequence (ties broken by
    transition name).  ``no`` is only returned when the search closed
    without any cap cutting it short.  Markings from which the target is
    provably out of reach, because some place weighting can only move
    away from the target's value, are discarded without counting as a
    cut.
    """
    v = _vectors(net)
    return _decide(net, v, _to_vec(v, m, net), _to_vec(v, n, net), caps)


# -- bounded relations ---------------------------------------------------------


def _row_key(x: Multiset):
    return marking_key(x)


@dataclass(frozen=True)
class BoundedRelation:
    """A relation between ``N[left]`` and ``N[right]`` truncated to ``bound`` tokens per side.

    ``complete`` has an entry for every left marking within the bound;
    it is true when that row is known exactly for all right markings
    within the bound.  ``closed`` is stronger: the row is known exactly
    and nothing related to that left marking lies beyond the bound.
    Composing relations needs closed rows on the left, since a middle
    marking cut off by the bound would otherwise go unnoticed.
    """

    left: frozenset[str]
    right: frozenset[str]
    pairs: frozenset[tuple[Multiset, Multiset]]
    bound: int
    complete: Mapping[Multiset, bool] = field(hash=False)
    closed: Mapping[Multiset, bool] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        for x, y in self.pairs:
            if x.total() > self.bound or y.total() > self.bound:
                raise ValueError(f"pair ({x}, {y}) exceeds the bound {self.bound}")
            if x.carrier != self.left or y.carrier != self.right:
                raise CarrierMismatch(x.carrier, self.left)

    @classmethod
    def identity(cls, carrier: Iterable[str], bound: int) -> "BoundedRelation":
        carrier = frozenset(carrier)
        xs = bounded(carrier, bound)
        every = {x: True for x in xs}
        return cls(carrier, carrier, frozenset((x, x) for x in xs), bound, every, every)

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __len__(self):
        return len(self.pairs)

    def row(self, x: Multiset) -> frozenset[Multiset]:
        return frozenset(y for a, y in self.pairs if a == x)

    def rows(self) -> dict[Multiset, frozenset[Multiset]]:
        out: dict[Multiset, set] = {x: set() for x in self.complete}
        for x, y in self.pairs:
            out.setdefault(x, set()).add(y)
        return {x: frozenset(ys) for x, ys in out.items()}

    def is_complete(self, x: Multiset) -> bool:
        return self.complete.get(x, False)

    def is_closed(self, x: Multiset) -> bool:
        return self.closed.get(x, False)

    def complete_rows(self) -> list[Multiset]:
        return sorted((x for x, ok in self.complete.items() if ok), key=_row_key)

    @property
    def fully_complete(self) -> bool:
        return all(self.complete.values())

    def sorted_pairs(self) -> list[tuple[Multiset, Multiset]]:
        return sorted(self.pairs, key=lambda p: (_row_key(p[0]), _row_key(p[1])))

    def restrict(self, bound: int) -> "BoundedRelation":
        bound = min(bound, self.bound)
        pairs = frozenset(
            (x, y) for x, y in self.pairs if x.total() <= bound and y.total() <= bound
        )
        complete = {x: ok for x, ok in self.complete.items() if x.total() <= bound}
        rows = self.rows()
        closed = {
            x: all(y.total() <= bound for y in rows.get(x, ()))
            for x, ok in self.closed.items()
            if ok and x.total() <= bound
        }
        return BoundedRelation(self.left, self.right, pairs, bound, complete, closed)

    def to_dict(self) -> dict:
        from .multiset import format_counts

        return {
            "left": sorted(self.left),
            "right": sorted(self.right),
            "bound": self.bound,
            "pairs": [[format_counts(x), format_counts(y)] for x, y in self.sorted_pairs()],
            "incomplete_rows": [
                format_counts(x)
                for x in sorted(self.complete, key=_row_key)
                if not self.complete[x]
            ],
        }


def reach_relation(
    p: OpenPetriNet, caps: ExplorationCaps = DEFAULT_CAPS, bound: int | None = None
) -> BoundedRelation:
    """■P truncated to boundary markings with at most ``bound`` tokens (default ``caps.max_tokens``).

    ``(x, y)`` is included when ``o(y)`` is reachable from ``i(x)``.
    """
    if bound is None:
        bound = caps.max_tokens
    net = p.net
    v = _vectors(net)
    idx = v.index
    k = len(v.places)

    def push(marking: Multiset, fn):
        out = [0] * k
        for a, n in marking.items():
            out[idx[fn[a]]] += n
        return tuple(out)

    xs = bounded(p.inputs, bound)
    ys = [(y, push(y, p.output_map)) for y in bounded(p.outputs, bound)]
    pairs = []
    complete = {}
    closed = {}
    for x in xs:
        start = push(x, p.input_map)
        c = _explore(net, start, caps)
        # o(y) has as many tokens as y, so an exact closure whose markings
        # all fit the bound relates x to nothing outside it
        closed[x] = c.exact and max(map(sum, c.parent)) <= bound
        row_ok = True
        for y, goal in ys:
            if goal in c.parent:
                pairs.append((x, y))
            elif not c.exact:
                verdict = _decide(net, v, start, goal, caps).verdict
                if verdict is Verdict.YES:
                    pairs.append((x, y))
                elif verdict is Verdict.UNKNOWN:
                    row_ok = False
        complete[x] = row_ok
    return BoundedRelation(p.inputs, p.outputs, frozenset(pairs), bound, complete, closed)


def rel_compose(s: BoundedRelation, r: BoundedRelation) -> BoundedRelation:
    """``s ∘ r``: pairs ``(x, z)`` with some middle ``y`` such that ``(x, y) ∈ r`` and ``(y, z) ∈ s``.

    Middle markings range over what both relations store.  A row of the
    result is complete when the row of ``r`` is closed and every row of
    ``s`` it passes through is complete; it is closed when moreover those
    rows of ``s`` are closed and no pair was dropped for exceeding the bound.
    """
    if r.right != s.left:
        raise CarrierMismatch(r.right, s.left)
    bound = min(r.bound, s.bound)
    r_rows = r.rows()
    s_rows = s.rows()
    pairs = set()
    complete = {}
    closed = {}
    for x in bounded(r.left, bound):
        ok = shut = r.is_closed(x)
        for y in r_rows.get(x, ()):
            if y.total() > s.bound:
                ok = shut = False
                continue
            ok = ok and s.is_complete(y)
            shut = shut and s.is_closed(y)
            for z in s_rows.get(y, ()):
                if z.total() <= bound:
                    pairs.add((x, z))
                else:
                    shut = False
        complete[x] = ok
        closed[x] = shut
    return BoundedRelation(r.left, s.right, frozenset(pairs), bound, complete, closed)


def _join(m1: Multiset, m2: Multiset, n1: dict, n2: dict, carrier) -> Multiset:
    counts = {n1[a]: c for a, c in m1.items()}
    counts.update({n2[a]: c for a, c in m2.items()})
    return Multiset(carrier, counts)


def rel_product(r1: BoundedRelation, r2: BoundedRelation) -> BoundedRelation:
    """``r1 × r2`` over the disjoint-union carriers, via ``N[X1 + X2] ≅ N[X1] × N[X2]``.

    The bound is the smaller of the two bounds (relations on empty
    carriers do not constrain it).
    """
    xl, xr = disjoint_names(r1.left, r2.left)
    yl, yr = disjoint_names(r1.right, r2.right)
    left = frozenset(xl.values()) | frozenset(xr.values())
    right = frozenset(yl.values()) | frozenset(yr.values())
    bounds = [r.bound for r in (r1, r2) if r.left or r.right] or [min(r1.bound, r2.bound)]
    bound = min(bounds)
    back_l = {v: ("1", k) for k, v in xl.items()} | {v: ("2", k) for k, v in xr.items()}
    rows1, rows2 = r1.rows(), r2.rows()
    pairs = set()
    complete = {}
    closed = {}
    for x in bounded(left, bound):
        c1, c2 = {}, {}
        for a, n in x.items():
            side, atom = back_l[a]
            (c1 if side == "1" else c2)[atom] = n
        x1, x2 = Multiset(r1.left, c1), Multiset(r2.left, c2)
        complete[x] = r1.is_complete(x1) and r2.is_complete(x2)
        shut = r1.is_closed(x1) and r2.is_closed(x2)
        for y1 in rows1.get(x1, ()):
            for y2 in rows2.get(x2, ()):
                if y1.total() + y2.total() <= bound:
                    pairs.add((x, _join(y1, y2, yl, yr, right)))
                else:
                    shut = False
        closed[x] = shut
    return BoundedRelation(left, right, frozenset(pairs), bound, complete, closed)


def rel_map_included(
    f: Mapping[str, str],
    g: Mapping[str, str],
    r: BoundedRelation,
    s: BoundedRelation,
    complete_only: bool = True,
) -> tuple[bool, tuple[Multiset, Multiset] | None]:
    """Check ``(N[f] × N[g]) r ⊆ s``; returns ``(holds, first violating pair of r)``.

    With ``complete_only`` (the default) pairs whose image row in ``s`` is
    not known exactly are skipped.
    """
    for x, y in r.sorted_pairs():
        fx = x.map(f, s.left)
        gy = y.map(g, s.right)
        if complete_only and (
            fx.total() > s.bound or gy.total() > s.bound or not s.is_complete(fx)
        ):
            continue
        if (fx, gy) not in s.pairs:
            return False, (x, y)
    return True, None


# -- law checks ------------------------------------------------------------------


@dataclass(frozen=True)
class LaxReport:
    """Outcome of comparing ``■Q ∘ ■P`` with ``■(Q ⊙ P)``."""

    composite: BoundedRelation
    direct: BoundedRelation
    rows_checked: int
    rows_compared: int
    violations: tuple[tuple[Multiset, Multiset], ...]
    extra: tuple[tuple[Multiset, Multiset], ...]

    @property
    def holds(self) -> bool:
        return not self.violations

    @property
    def strict(self) -> bool:
        return bool(self.extra)

    @property
    def equal(self) -> bool:
        return self.holds and not self.extra

    def to_dict(self) -> dict:
        from .multiset import format_counts

        def fmt(ps):
            return [[format_counts(x), format_counts(z)] for x, z in ps]

        return {
            "holds": self.holds,
            "strict": self.strict,
            "rows_checked": self.rows_checked,
            "rows_compared": self.rows_compared,
            "violations": fmt(self.violations),
            "extra_pairs": fmt(self.extra),
        }


def _compare(lax: BoundedRelation, direct: BoundedRelation):
    """Violations of ``lax ⊆ direct`` and pairs of ``direct`` missing from ``lax``.

    Every pair ``lax`` stores is genuine, so inclusion is checked on all
    rows complete in ``direct``.  Missing pairs are only looked for on
    rows complete in both.  Both use the smaller bound.
    """
    bound = min(lax.bound, direct.bound)
    rows = [x for x in direct.complete_rows() if x.total() <= bound]
    lax_rows, direct_rows = lax.rows(), direct.rows()
    violations, extra = [], []
    compared = 0
    for x in rows:
        a = {z for z in lax_rows.get(x, ()) if z.total() <= bound}
        b = {z for z in direct_rows.get(x, ()) if z.total() <= bound}
        violations.extend((x, z) for z in sorted(a - b, key=marking_key))
        if lax.is_complete(x):
            compared += 1
            extra.extend((x, z) for z in sorted(b - a, key=marking_key))
    return rows, compared, violations, extra


def check_lax_composition(
    p: OpenPetriNet, q: OpenPetriNet, caps: ExplorationCaps = DEFAULT_CAPS, bound: int | None = None
) -> LaxReport:
    """Compare ``■Q ∘ ■P`` against ``■(Q ⊙ P)`` on rows complete in both."""
    rp = reach_relation(p, caps, bound)
    rq = reach_relation(q, caps, bound)
    lax = rel_compose(rq, rp)
    direct = reach_relation(compose_open(p, q), caps, bound)
    rows, compared, violations, extra = _compare(lax, direct)
    return LaxReport(lax, direct, len(rows), compared, tuple(violations), tuple(extra))


@dataclass(frozen=True)
class EqualityReport:
    name: str
    holds: bool
    rows_checked: int
    mismatches: tuple = ()

    def to_dict(self) -> dict:
        from .multiset import format_counts

        return {
            "law": self.name,
            "holds": self.holds,
            "rows_checked": self.rows_checked,
            "mismatches": [[format_counts(x), format_counts(y)] for x, y in self.mismatches],
        }


def check_identity_comparison(
    points: Iterable[str], caps: ExplorationCaps = DEFAULT_CAPS, bound: int | None = None
) -> EqualityReport:
    """■ of the identity open net is exactly the identity relation."""
    if bound is None:
        bound = caps.max_tokens
    got = reach_relation(identity_open(points), caps, bound)
    want = BoundedRelation.identity(points, bound)
    mismatches = tuple(sorted(got.pairs ^ want.pairs, key=lambda p: (marking_key(p[0]), marking_key(p[1]))))
    ok = not mismatches and got.fully_complete
    return EqualityReport("identity comparison", ok, len(got.complete), mismatches)


def check_monoidality(
    p1: OpenPetriNet, p2: OpenPetriNet, caps: ExplorationCaps = DEFAULT_CAPS, bound: int | None = None
) -> EqualityReport:
    """``■(P1 ⊗ P2) = ■P1 × ■P2`` on rows complete on both sides."""
    tensor_rel = reach_relation(tensor_open(p1, p2), caps, bound)
    prod = rel_product(reach_relation(p1, caps, bound), reach_relation(p2, caps, bound))
    rows, compared, violations, extra = _compare(prod, tensor_rel)
    mismatches = tuple(violations + extra)
    return EqualityReport("monoidality", not mismatches, compared, mismatches)


def check_2morphism(
    m: OpenNetMorphism, caps: ExplorationCaps = DEFAULT_CAPS, bound: int | None = None
) -> EqualityReport:
    """``(N[f] × N[g]) ■P ⊆ ■P'`` for a square ``m: P => P'``."""
    r = reach_relation(m.src, caps, bound)
    s = reach_relation(m.tgt, caps, bound)
    ok, bad = rel_map_included(m.on_inputs, m.on_outputs, r, s)
    return EqualityReport(
        "2-morphism inclusion", ok, len(s.complete_rows()), () if ok else (bad,)
    )


def is_one_way(p: OpenPetriNet) -> bool:
    """No input place is ever produced into, and no output place is ever consumed from."""
    net = p.net
    ins = set(p.input_map.values())
    outs = set(p.output_map.values())
    for t in net.transitions:
        if ins & net.target[t].support() or outs & net.source[t].support():
            return False
    return True


@dataclass(frozen=True)
class OneWayInstance:
    index: int
    p: OpenPetriNet
    q: OpenPetriNet
    report: LaxReport

    @property
    def equal(self) -> bool:
        return self.report.equal


@dataclass(frozen=True)
class OneWayReport:
    """Per-instance outcomes of comparing ``■Q ∘ ■P`` with ``■(Q ⊙ P)`` on one-way pairs.

    Nothing here is asserted: equality is tallied, and every instance
    where it fails is kept in full so it can be replayed.
    """

    seed: int
    caps: ExplorationCaps
    instances: tuple[OneWayInstance, ...]

    @property
    def equal_count(self) -> int:
        return sum(1 for r in self.instances if r.equal)

    @property
    def inclusion_failures(self) -> int:
        return sum(1 for r in self.instances if not r.report.holds)

    def counterexamples(self) -> list[OneWayInstance]:
        return [r for r in self.instances if not r.equal]

    def counterexample_text(self, inst: OneWayInstance) -> str:
        from .netfile import serialize_net

        lines = [f"# instance {inst.index}"]
        lines += serialize_net(f"P{inst.index}", inst.p)
        lines += serialize_net(f"Q{inst.index}", inst.q)
        return "\n".join(lines)

    def to_text(self) -> str:
        from .multiset import format_counts

        c = self.caps
        out = [
            f"one-way experiment: seed={self.seed} instances={len(self.instances)} "
            f"max_tokens={c.max_tokens} max_depth={c.max_depth} max_states={c.max_states}"
        ]
        for r in self.instances:
            rep = r.report
            verdict = "equal" if r.equal else ("strict" if rep.holds else "INCLUSION FAILS")
            out.append(
                f"  instance {r.index:3d}: {verdict} "
                f"(rows checked: {rep.rows_checked}, compared: {rep.rows_compared})"
            )
        out.append(
            f"equal: {self.equal_count}/{len(self.instances)}; "
            f"inclusion failures: {self.inclusion_failures}"
        )
        for r in self.counterexamples():
            out.append("")
            out.append(self.counterexample_text(r))
            pairs = ", ".join(
                f"({format_counts(x)}, {format_counts(z)})" for x, z in r.report.extra[:5]
            )
            out.append(f"# only in the composite's relation: {pairs}")
        return "\n".join(out) + "\n"

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "caps": {
                "max_tokens": self.caps.max_tokens,
                "max_depth": self.caps.max_depth,
                "max_states": self.caps.max_states,
            },
            "instances": [
                {"index": r.index, "equal": r.equal, **r.report.to_dict()}
                for r in self.instances
            ],
            "equal": self.equal_count,
            "inclusion_failures": self.inclusion_failures,
            "counterexamples": [self.counterexample_text(r) for r in self.counterexamples()],
        }


def one_way_experiment(
    seed: int, instance_count: int, caps: ExplorationCaps = ExplorationCaps(max_tokens=4, max_depth=16)
) -> OneWayReport:
    """Generate seeded one-way composable pairs and compare both sides of the lax comparison."""
    import random

    from .generators import one_way_pair

    rng = random.Random(seed)
    out = []
    for k in range(instance_count):
        p, q = one_way_pair(rng)
        out.append(OneWayInstance(k, p, q, check_lax_composition(p, q, caps)))
    return OneWayReport(seed, caps, tuple(out))
