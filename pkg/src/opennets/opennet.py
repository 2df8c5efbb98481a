"""Open Petri nets (cospans ``L X -> P <- L Y``), their 2-morphisms, and coherence.

A morphism ``L X -> P`` is the same thing as a function from ``X`` to the
places of ``P``, so an open net stores its boundary maps as plain
functions.  Composition glues along the shared boundary by pushout;
tensor is disjoint union.  Because the glued net is only determined up
to isomorphism, composition is associative and unital only up to the
canonical 2-isomorphisms built by :func:`canonical_iso`.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from itertools import product
from typing import Union

from .errors import CoherenceError, InvalidNet, MorphismError, SearchAborted
from .petri import (
    PetriMorphism,
    PetriNet,
    PushoutResult,
    _freeze,
    boundary_morphism,
    compose_morphism,
    coproduct,
    discrete,
    disjoint_names,
    factor_through_pushout,
    identity,
    pushout,
)


@dataclass(frozen=True)
class OpenPetriNet:
    """A Petri net with input points ``X`` and output points ``Y`` mapped to places."""

    inputs: frozenset[str]
    outputs: frozenset[str]
    net: PetriNet
    input_map: Mapping[str, str]
    output_map: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "inputs", frozenset(self.inputs))
        object.__setattr__(self, "outputs", frozenset(self.outputs))
        for label, points, fn in (
            ("input", self.inputs, self.input_map),
            ("output", self.outputs, self.output_map),
        ):
            fn = dict(fn)
            for x in sorted(points):
                if x not in fn:
                    raise InvalidNet(f"{label} point {x!r} is not mapped to a place")
                if fn[x] not in self.net.places:
                    raise InvalidNet(f"{label} point {x!r} maps to nonexistent place {fn[x]!r}")
            stray = sorted(set(fn) - points)
            if stray:
                raise InvalidNet(f"{label} map mentions undeclared point {stray[0]!r}")
            object.__setattr__(self, f"{label}_map", _freeze(fn))

    def __hash__(self):
        return hash(
            (
                self.inputs,
                self.outputs,
                self.net,
                tuple(sorted(self.input_map.items())),
                tuple(sorted(self.output_map.items())),
            )
        )

    @property
    def input_morphism(self) -> PetriMorphism:
        return boundary_morphism(self.inputs, self.input_map, self.net)

    @property
    def output_morphism(self) -> PetriMorphism:
        return boundary_morphism(self.outputs, self.output_map, self.net)

    def __repr__(self):
        return (
            f"OpenPetriNet({sorted(self.inputs)} -> {sorted(self.outputs)}, {self.net!r}, "
            f"i={dict(sorted(self.input_map.items()))}, o={dict(sorted(self.output_map.items()))})"
        )


def mk_open(inputs, outputs, net, input_map, output_map) -> OpenPetriNet:
    return OpenPetriNet(frozenset(inputs), frozenset(outputs), net, input_map, output_map)


def identity_open(points: Iterable[str]) -> OpenPetriNet:
    points = frozenset(points)
    ident = {x: x for x in points}
    return OpenPetriNet(points, points, discrete(points), ident, ident)


EMPTY_OPEN = identity_open(())


def _compose(p: OpenPetriNet, q: OpenPetriNet) -> tuple[OpenPetriNet, PushoutResult]:
    if p.outputs != q.inputs:
        raise MorphismError(
            f"boundary mismatch: outputs {sorted(p.outputs)} vs inputs {sorted(q.inputs)}"
        )
    glued = pushout(p.output_morphism, q.input_morphism)
    left, right = glued.left.on_places, glued.right.on_places
    composite = OpenPetriNet(
        p.inputs,
        q.outputs,
        glued.net,
        {x: left[s] for x, s in p.input_map.items()},
        {z: right[s] for z, s in q.output_map.items()},
    )
    return composite, glued


def compose_open(p: OpenPetriNet, q: OpenPetriNet) -> OpenPetriNet:
    """Glue ``p: X -/-> Y`` and ``q: Y -/-> Z`` along ``Y``; written ``q ⊙ p``."""
    return _compose(p, q)[0]


@dataclass(frozen=True)
class _Tensor:
    result: OpenPetriNet
    nets: PushoutResult
    inputs: tuple[dict, dict]
    outputs: tuple[dict, dict]


def _tensor(p1: OpenPetriNet, p2: OpenPetriNet) -> _Tensor:
    nets = coproduct(p1.net, p2.net)
    xl, xr = disjoint_names(p1.inputs, p2.inputs)
    yl, yr = disjoint_names(p1.outputs, p2.outputs)
    pl, pr = nets.left.on_places, nets.right.on_places
    i = {xl[x]: pl[s] for x, s in p1.input_map.items()}
    i.update({xr[x]: pr[s] for x, s in p2.input_map.items()})
    o = {yl[y]: pl[s] for y, s in p1.output_map.items()}
    o.update({yr[y]: pr[s] for y, s in p2.output_map.items()})
    result = OpenPetriNet(frozenset(i), frozenset(o), nets.net, i, o)
    return _Tensor(result, nets, (xl, xr), (yl, yr))


def tensor_open(p1: OpenPetriNet, p2: OpenPetriNet) -> OpenPetriNet:
    """Run two open nets side by side: disjoint union of nets and boundaries."""
    return _tensor(p1, p2).result


# -- 2-morphisms ------------------------------------------------------------


@dataclass(frozen=True)
class OpenNetMorphism:
    """A square: boundary maps ``on_inputs``, ``on_outputs`` and a net map between open nets."""

    src: OpenPetriNet
    tgt: OpenPetriNet
    on_inputs: Mapping[str, str]
    on_outputs: Mapping[str, str]
    net_map: PetriMorphism

    def __post_init__(self):
        if self.net_map.dom != self.src.net or self.net_map.cod != self.tgt.net:
            raise MorphismError("net map does not run between the underlying nets")
        g = self.net_map.on_places
        for label, fn_name, pts, pts2 in (
            ("input", "on_inputs", self.src.inputs, self.tgt.inputs),
            ("output", "on_outputs", self.src.outputs, self.tgt.outputs),
        ):
            fn = dict(getattr(self, fn_name))
            here = getattr(self.src, f"{label}_map")
            there = getattr(self.tgt, f"{label}_map")
            for x in sorted(pts):
                if x not in fn or fn[x] not in pts2:
                    raise MorphismError(f"{label} point {x!r} is not mapped into the target boundary", x, label)
                if g[here[x]] != there[fn[x]]:
                    raise MorphismError(
                        f"{label} square fails at boundary point {x!r}: "
                        f"{g[here[x]]!r} != {there[fn[x]]!r}",
                        x,
                        label,
                    )
            object.__setattr__(self, fn_name, _freeze({x: fn[x] for x in pts}))

    def __hash__(self):
        return hash(
            (
                self.src,
                self.tgt,
                tuple(sorted(self.on_inputs.items())),
                tuple(sorted(self.on_outputs.items())),
                self.net_map,
            )
        )

    def is_globular(self) -> bool:
        return all(k == v for k, v in self.on_inputs.items()) and all(
            k == v for k, v in self.on_outputs.items()
        )

    def is_invertible(self) -> bool:
        return (
            self.net_map.is_bijective()
            and len(set(self.on_inputs.values())) == len(self.tgt.inputs) == len(self.src.inputs)
            and len(set(self.on_outputs.values())) == len(self.tgt.outputs) == len(self.src.outputs)
        )

    def inverse(self) -> "OpenNetMorphism":
        if not self.is_invertible():
            raise MorphismError("2-morphism is not invertible")
        return OpenNetMorphism(
            self.tgt,
            self.src,
            {v: k for k, v in self.on_inputs.items()},
            {v: k for k, v in self.on_outputs.items()},
            self.net_map.inverse(),
        )

    def to_dict(self) -> dict:
        """Machine-readable witness: the boundary and net component maps."""
        return {
            "inputs": dict(sorted(self.on_inputs.items())),
            "outputs": dict(sorted(self.on_outputs.items())),
            "places": dict(sorted(self.net_map.on_places.items())),
            "transitions": dict(sorted(self.net_map.on_transitions.items())),
        }


def mk_2morphism(f, g, alpha, source, target) -> OpenNetMorphism:
    return OpenNetMorphism(source, target, f, g, alpha)


def identity_2morphism(p: OpenPetriNet) -> OpenNetMorphism:
    return OpenNetMorphism(
        p, p, {x: x for x in p.inputs}, {y: y for y in p.outputs}, identity(p.net)
    )


def vcomp2(top: OpenNetMorphism, bottom: OpenNetMorphism) -> OpenNetMorphism:
    """Stack ``top: P => P'`` over ``bottom: P' => P''``."""
    if top.tgt != bottom.src:
        raise MorphismError("vertical composite: target of top differs from source of bottom")
    return OpenNetMorphism(
        top.src,
        bottom.tgt,
        {x: bottom.on_inputs[v] for x, v in top.on_inputs.items()},
        {y: bottom.on_outputs[v] for y, v in top.on_outputs.items()},
        compose_morphism(bottom.net_map, top.net_map),
    )


def hcomp2(left: OpenNetMorphism, right: OpenNetMorphism) -> OpenNetMorphism:
    """Place ``left: P => P'`` beside ``right: Q => Q'`` and glue.

    The net component is the map between the two pushouts induced by the
    universal property of the source pushout.
    """
    if left.src.outputs != right.src.inputs or left.tgt.outputs != right.tgt.inputs:
        raise MorphismError("horizontal composite: boundaries are not composable")
    if dict(left.on_outputs) != dict(right.on_inputs):
        raise MorphismError("horizontal composite: middle boundary maps differ")
    top, top_po = _compose(left.src, right.src)
    bottom, bottom_po = _compose(left.tgt, right.tgt)
    u = factor_through_pushout(
        top_po,
        compose_morphism(bottom_po.left, left.net_map),
        compose_morphism(bottom_po.right, right.net_map),
    )
    return OpenNetMorphism(top, bottom, left.on_inputs, right.on_outputs, u)


# -- coherence isomorphisms -------------------------------------------------


@dataclass(frozen=True)
class Associator:
    """``(p ; q) ; r  =>  p ; (q ; r)``, composing left to right."""

    p: OpenPetriNet
    q: OpenPetriNet
    r: OpenPetriNet


@dataclass(frozen=True)
class LeftUnitor:
    """``U_X ; p  =>  p`` for ``p: X -/-> Y``."""

    p: OpenPetriNet


@dataclass(frozen=True)
class RightUnitor:
    """``p ; U_Y  =>  p`` for ``p: X -/-> Y``."""

    p: OpenPetriNet


@dataclass(frozen=True)
class Braiding:
    """``p1 ⊗ p2  =>  p2 ⊗ p1``."""

    p1: OpenPetriNet
    p2: OpenPetriNet


Coherence = Union[Associator, LeftUnitor, RightUnitor, Braiding]


def _ident(points) -> dict:
    return {x: x for x in points}


def _associator(w: Associator, forward: bool):
    pq, pq_po = _compose(w.p, w.q)
    lhs, lhs_po = _compose(pq, w.r)
    qr, qr_po = _compose(w.q, w.r)
    rhs, rhs_po = _compose(w.p, qr)
    if forward:
        middle = factor_through_pushout(
            pq_po, rhs_po.left, compose_morphism(rhs_po.right, qr_po.left)
        )
        u = factor_through_pushout(lhs_po, middle, compose_morphism(rhs_po.right, qr_po.right))
        return lhs, rhs, OpenNetMorphism(lhs, rhs, _ident(lhs.inputs), _ident(lhs.outputs), u)
    middle = factor_through_pushout(
        qr_po, compose_morphism(lhs_po.left, pq_po.right), lhs_po.right
    )
    u = factor_through_pushout(rhs_po, compose_morphism(lhs_po.left, pq_po.left), middle)
    return rhs, lhs, OpenNetMorphism(rhs, lhs, _ident(rhs.inputs), _ident(rhs.outputs), u)


def _left_unitor(w: LeftUnitor, forward: bool):
    unit = identity_open(w.p.inputs)
    lhs, po = _compose(unit, w.p)
    if forward:
        u = factor_through_pushout(po, w.p.input_morphism, identity(w.p.net))
        return lhs, w.p, OpenNetMorphism(lhs, w.p, _ident(lhs.inputs), _ident(lhs.outputs), u)
    return w.p, lhs, OpenNetMorphism(w.p, lhs, _ident(w.p.inputs), _ident(w.p.outputs), po.right)


def _right_unitor(w: RightUnitor, forward: bool):
    unit = identity_open(w.p.outputs)
    lhs, po = _compose(w.p, unit)
    if forward:
        u = factor_through_pushout(po, identity(w.p.net), w.p.output_morphism)
        return lhs, w.p, OpenNetMorphism(lhs, w.p, _ident(lhs.inputs), _ident(lhs.outputs), u)
    return w.p, lhs, OpenNetMorphism(w.p, lhs, _ident(w.p.inputs), _ident(w.p.outputs), po.left)


def _braiding(w: Braiding):
    t12 = _tensor(w.p1, w.p2)
    t21 = _tensor(w.p2, w.p1)
    u = factor_through_pushout(t12.nets, t21.nets.right, t21.nets.left)
    f = {t12.inputs[0][x]: t21.inputs[1][x] for x in w.p1.inputs}
    f.update({t12.inputs[1][x]: t21.inputs[0][x] for x in w.p2.inputs})
    g = {t12.outputs[0][y]: t21.outputs[1][y] for y in w.p1.outputs}
    g.update({t12.outputs[1][y]: t21.outputs[0][y] for y in w.p2.outputs})
    return t12.result, t21.result, OpenNetMorphism(t12.result, t21.result, f, g, u)


def canonical_iso(
    lhs: OpenPetriNet, rhs: OpenPetriNet, witness: Coherence, inverse: bool | None = None
) -> OpenNetMorphism:
    """The coherence 2-isomorphism ``lhs => rhs`` named by ``witness``.

    Built from pushout and coproduct universal properties, never by
    search.  Either orientation is accepted: asking for ``rhs => lhs`` of a
    witness yields the inverse, constructed independently.  When both
    ends happen to be the same open net the orientation is ambiguous;
    ``inverse`` then picks it (the forward map is the default).  Raises
    :class:`CoherenceError` when ``lhs`` and ``rhs`` are not the two ends
    of the witnessed construction.
    """
    if isinstance(witness, Braiding):
        built = [_braiding(witness), _braiding(Braiding(witness.p2, witness.p1))]
    elif isinstance(witness, Associator):
        built = [_associator(witness, True), _associator(witness, False)]
    elif isinstance(witness, LeftUnitor):
        built = [_left_unitor(witness, True), _left_unitor(witness, False)]
    elif isinstance(witness, RightUnitor):
        built = [_right_unitor(witness, True), _right_unitor(witness, False)]
    else:
        raise TypeError(f"unknown coherence witness {witness!r}")
    if inverse is not None:
        built = [built[1] if inverse else built[0]]
    for src, tgt, iso in built:
        if src == lhs and tgt == rhs:
            return iso
    raise CoherenceError(f"{type(witness).__name__} witness does not match the given open nets")


# -- isomorphism search -----------------------------------------------------


def _place_signature(p: OpenPetriNet, place: str) -> tuple:
    net = p.net
    arcs = sorted(
        (net.source[t].count(place), net.target[t].count(place)) for t in net.transitions
    )
    return (
        tuple(arcs),
        sum(1 for v in p.input_map.values() if v == place),
        sum(1 for v in p.output_map.values() if v == place),
    )


def _match_points(fn_a, fn_b, g) -> dict | None:
    buckets: dict[str, list] = {}
    for x in sorted(fn_b):
        buckets.setdefault(fn_b[x], []).append(x)
    out = {}
    for x in sorted(fn_a):
        bucket = buckets.get(g[fn_a[x]])
        if not bucket:
            return None
        out[x] = bucket.pop(0)
    return out


def iso_open(a: OpenPetriNet, b: OpenPetriNet, max_steps: int = 200_000) -> OpenNetMorphism | None:
    """Search for an invertible 2-morphism ``a => b``; ``None`` when there is none.

    Raises :class:`SearchAborted` after ``max_steps`` partial assignments.
    """
    na, nb = a.net, b.net
    if (
        len(a.inputs) != len(b.inputs)
        or len(a.outputs) != len(b.outputs)
        or len(na.places) != len(nb.places)
        or len(na.transitions) != len(nb.transitions)
    ):
        return None
    sig_a = {s: _place_signature(a, s) for s in na.places}
    sig_b = {s: _place_signature(b, s) for s in nb.places}
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return None
    order = sorted(na.places, key=lambda s: (sum(1 for v in sig_a.values() if v == sig_a[s]), s))
    candidates = {s: sorted(t for t in nb.places if sig_b[t] == sig_a[s]) for s in order}
    steps = 0

    def finish(g):
        arcs_b: dict[tuple, list] = {}
        for t in sorted(nb.transitions):
            arcs_b.setdefault((nb.source[t], nb.target[t]), []).append(t)
        f = {}
        for t in sorted(na.transitions):
            key = (na.source[t].map(g, nb.places), na.target[t].map(g, nb.places))
            bucket = arcs_b.get(key)
            if not bucket:
                return None
            f[t] = bucket.pop(0)
        fx = _match_points(a.input_map, b.input_map, g)
        fy = _match_points(a.output_map, b.output_map, g)
        if fx is None or fy is None:
            return None
        return OpenNetMorphism(a, b, fx, fy, PetriMorphism(na, nb, f, g))

    def search(k, g, used):
        nonlocal steps
        steps += 1
        if steps > max_steps:
            raise SearchAborted(f"isomorphism search aborted after {max_steps} steps")
        if k == len(order):
            return finish(g)
        s = order[k]
        for t in candidates[s]:
            if t in used:
                continue
            g[s] = t
            used.add(t)
            found = search(k + 1, g, used)
            if found is not None:
                return found
            used.discard(t)
            del g[s]
        return None

    return search(0, {}, set())


# -- double-category laws ----------------------------------------------------


@dataclass(frozen=True)
class LawCheck:
    law: str
    holds: bool
    detail: str = ""

    def __bool__(self):
        return self.holds


def _same(m1: OpenNetMorphism, m2: OpenNetMorphism) -> bool:
    return m1 == m2


def _round_trip(iso, inv) -> bool:
    return vcomp2(iso, inv) == identity_2morphism(iso.src) and vcomp2(
        inv, iso
    ) == identity_2morphism(iso.tgt)


def check_unitors(p: OpenPetriNet) -> LawCheck:
    """Both unitors are 2-isomorphisms whose two constructions are mutually inverse."""
    for name, witness, unit_side in (
        ("left unitor", LeftUnitor(p), compose_open(identity_open(p.inputs), p)),
        ("right unitor", RightUnitor(p), compose_open(p, identity_open(p.outputs))),
    ):
        iso = canonical_iso(unit_side, p, witness, inverse=False)
        inv = canonical_iso(p, unit_side, witness, inverse=True)
        if not (iso.is_globular() and _round_trip(iso, inv)):
            return LawCheck("unitors", False, f"{name} fails to invert")
    return LawCheck("unitors", True)


def check_associator(p, q, r) -> LawCheck:
    w = Associator(p, q, r)
    lhs = compose_open(compose_open(p, q), r)
    rhs = compose_open(p, compose_open(q, r))
    iso = canonical_iso(lhs, rhs, w, inverse=False)
    inv = canonical_iso(rhs, lhs, w, inverse=True)
    ok = iso.is_globular() and _round_trip(iso, inv)
    return LawCheck("associator", ok, "" if ok else "associator fails to invert")


def check_triangle(p: OpenPetriNet, q: OpenPetriNet) -> LawCheck:
    """``(1_p ; λ_q) ∘ α = ρ_p ; 1_q`` as 2-morphisms ``(p ; U) ; q => p ; q``."""
    unit = identity_open(p.outputs)
    pu = compose_open(p, unit)
    uq = compose_open(unit, q)
    alpha = canonical_iso(compose_open(pu, q), compose_open(p, uq), Associator(p, unit, q), False)
    lam = canonical_iso(uq, q, LeftUnitor(q), False)
    rho = canonical_iso(pu, p, RightUnitor(p), False)
    via_assoc = vcomp2(alpha, hcomp2(identity_2morphism(p), lam))
    direct = hcomp2(rho, identity_2morphism(q))
    ok = _same(via_assoc, direct)
    return LawCheck("triangle", ok, "" if ok else "triangle diagram does not commute")


def check_pentagon(p, q, r, s) -> LawCheck:
    """Both associator paths ``((pq)r)s => p(q(rs))`` agree."""
    pq, qr, rs = compose_open(p, q), compose_open(q, r), compose_open(r, s)
    pq_r, q_rs = compose_open(pq, r), compose_open(q, rs)
    start = compose_open(pq_r, s)
    end = compose_open(p, q_rs)

    def a(x, y, z):
        return canonical_iso(
            compose_open(compose_open(x, y), z),
            compose_open(x, compose_open(y, z)),
            Associator(x, y, z),
            inverse=False,
        )

    short = vcomp2(a(pq, r, s), a(p, q, rs))
    long = vcomp2(
        vcomp2(hcomp2(a(p, q, r), identity_2morphism(s)), a(p, qr, s)),
        hcomp2(identity_2morphism(p), a(q, r, s)),
    )
    ok = short.src == long.src == start and short.tgt == long.tgt == end and _same(short, long)
    return LawCheck("pentagon", ok, "" if ok else "pentagon diagram does not commute")


def check_interchange(a1, b1, a2, b2) -> LawCheck:
    """``(a2 ∘ a1) ; (b2 ∘ b1) = (a2 ; b2) ∘ (a1 ; b1)`` for a 2x2 grid of squares."""
    lhs = hcomp2(vcomp2(a1, a2), vcomp2(b1, b2))
    rhs = vcomp2(hcomp2(a1, b1), hcomp2(a2, b2))
    ok = _same(lhs, rhs)
    return LawCheck("interchange", ok, "" if ok else "interchange law fails")


def check_braiding(p1: OpenPetriNet, p2: OpenPetriNet) -> LawCheck:
    """The braiding is self-inverse: ``σ(p2, p1) ∘ σ(p1, p2) = 1``."""
    t12, t21 = tensor_open(p1, p2), tensor_open(p2, p1)
    s12 = canonical_iso(t12, t21, Braiding(p1, p2), inverse=False)
    s21 = canonical_iso(t21, t12, Braiding(p2, p1), inverse=False)
    ok = vcomp2(s12, s21) == identity_2morphism(t12) and vcomp2(s21, s12) == identity_2morphism(t21)
    return LawCheck("braiding", ok, "" if ok else "braiding is not self-inverse")


def boundary_bookkeeping(m: OpenNetMorphism) -> LawCheck:
    """Source and target boundaries of a square are the domains/codomains of its side maps."""
    ok = (
        set(m.on_inputs) == set(m.src.inputs)
        and set(m.on_inputs.values()) <= set(m.tgt.inputs)
        and set(m.on_outputs) == set(m.src.outputs)
        and set(m.on_outputs.values()) <= set(m.tgt.outputs)
    )
    return LawCheck("bookkeeping", ok)


def all_boundary_maps(xs, ys) -> Iterable[dict]:
    """Every function from ``xs`` to ``ys`` (test support for small sets)."""
    xs, ys = sorted(xs), sorted(ys)
    for image in product(ys, repeat=len(xs)):
        yield dict(zip(xs, image))
