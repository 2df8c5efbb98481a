"""Seeded random instances for the law suites and experiments."""

from __future__ import annotations

import random
from collections.abc import Iterable

from .multiset import Multiset
from .opennet import OpenNetMorphism, OpenPetriNet, mk_open
from .petri import PetriMorphism, PetriNet, UnionFind


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _fresh(stem: str, taken, count: int) -> list[str]:
    out = []
    k = 0
    while len(out) < count:
        name = f"{stem}{k}"
        if name not in taken:
            out.append(name)
        k += 1
    return out


def random_multiset(rng: random.Random, carrier: Iterable[str], max_coeff: int = 2, max_total: int = 2) -> Multiset:
    atoms = sorted(carrier)
    counts: dict[str, int] = {}
    for _ in range(rng.randint(0, max_total)):
        if not atoms:
            break
        a = rng.choice(atoms)
        if counts.get(a, 0) < max_coeff:
            counts[a] = counts.get(a, 0) + 1
    return Multiset(carrier, counts)


def random_net(
    seed,
    max_places: int = 4,
    max_transitions: int = 3,
    max_coeff: int = 2,
    prefix: str = "",
) -> PetriNet:
    rng = _rng(seed)
    places = [f"{prefix}p{k}" for k in range(rng.randint(1, max_places))]
    arcs = {}
    for k in range(rng.randint(0, max_transitions)):
        arcs[f"{prefix}t{k}"] = (
            random_multiset(rng, places, max_coeff),
            random_multiset(rng, places, max_coeff),
        )
    return PetriNet.build(places, arcs)


def random_open(
    seed,
    inputs: Iterable[str] | None = None,
    outputs: Iterable[str] | None = None,
    max_boundary: int = 3,
    prefix: str = "",
    **net_kw,
) -> OpenPetriNet:
    """A random open net; boundaries are drawn fresh unless given."""
    rng = _rng(seed)
    net = random_net(rng, prefix=prefix, **net_kw)
    places = sorted(net.places)
    if inputs is None:
        inputs = [f"{prefix}x{k}" for k in range(rng.randint(0, max_boundary))]
    if outputs is None:
        outputs = [f"{prefix}y{k}" for k in range(rng.randint(0, max_boundary))]
    i = {x: rng.choice(places) for x in sorted(inputs)}
    o = {y: rng.choice(places) for y in sorted(outputs)}
    return mk_open(i, o, net, i, o)


def composable_pair(seed, max_boundary: int = 3, **net_kw) -> tuple[OpenPetriNet, OpenPetriNet]:
    """``(P, Q)`` with ``P``'s outputs equal to ``Q``'s inputs; nets use clashing names on purpose."""
    rng = _rng(seed)
    middle = [f"m{k}" for k in range(rng.randint(0, max_boundary))]
    p = random_open(rng, outputs=middle, max_boundary=max_boundary, **net_kw)
    q = random_open(rng, inputs=middle, max_boundary=max_boundary, **net_kw)
    return p, q


def composable_chain(seed, length: int, max_boundary: int = 2, **net_kw) -> list[OpenPetriNet]:
    rng = _rng(seed)
    chain = []
    boundary = None
    for k in range(length):
        nxt = [f"b{k}_{j}" for j in range(rng.randint(0, max_boundary))]
        chain.append(random_open(rng, inputs=boundary, outputs=nxt, max_boundary=max_boundary, **net_kw))
        boundary = nxt
    return chain


def random_2morphism(
    seed,
    src: OpenPetriNet,
    on_inputs: dict | None = None,
    input_points: Iterable[str] | None = None,
) -> OpenNetMorphism:
    """A random valid square out of ``src``.

    The target is obtained by merging places (forced wherever the random
    boundary functions identify points, plus a few extra merges), merging
    transitions that became parallel, and adding a disjoint extra piece.
    ``on_inputs`` and ``input_points`` fix the input side, which is how
    horizontally composable squares are produced.
    """
    rng = _rng(seed)
    net = src.net

    def boundary_fn(points, fixed, target_points, tag):
        points = sorted(points)
        if fixed is not None:
            return dict(fixed), sorted(target_points)
        size = max(1, len(points) + rng.randint(-1, 1)) if points else rng.randint(0, 1)
        tgt = [f"{tag}{k}" for k in range(size)]
        return {x: rng.choice(tgt) for x in points}, tgt

    f, xs = boundary_fn(src.inputs, on_inputs, input_points, "u")
    g, ys = boundary_fn(src.outputs, None, None, "v")

    extra = _fresh("z", net.places, rng.randint(0, 1))
    uf = UnionFind(sorted(net.places) + extra)
    for fn, bmap in ((f, src.input_map), (g, src.output_map)):
        seen: dict[str, str] = {}
        for x in sorted(fn):
            y = fn[x]
            if y in seen:
                uf.union(bmap[seen[y]], bmap[x])
            else:
                seen[y] = x
    places = sorted(net.places)
    for _ in range(rng.randint(0, 1)):
        uf.union(rng.choice(places), rng.choice(places))

    name = {}
    for cls in uf.classes():
        for a in cls:
            name[a] = min(cls)
    new_places = frozenset(name.values())
    on_places = {a: name[a] for a in net.places}

    arcs: dict[str, tuple] = {}
    by_arcs: dict[tuple, str] = {}
    on_transitions = {}
    for t in net.sorted_transitions():
        key = (net.source[t].map(on_places, new_places), net.target[t].map(on_places, new_places))
        if key in by_arcs and rng.random() < 0.5:
            on_transitions[t] = by_arcs[key]
            continue
        arcs[t] = key
        by_arcs.setdefault(key, t)
        on_transitions[t] = t
    for w in _fresh("w", net.transitions, rng.randint(0, 1)):
        arcs[w] = (
            random_multiset(rng, new_places),
            random_multiset(rng, new_places),
        )
    tgt_net = PetriNet.build(new_places, arcs)

    i2 = {}
    for x, u in f.items():
        i2[u] = on_places[src.input_map[x]]
    o2 = {}
    for y, v in g.items():
        o2[v] = on_places[src.output_map[y]]
    pool = sorted(new_places)
    for u in xs:
        i2.setdefault(u, rng.choice(pool))
    for v in ys:
        o2.setdefault(v, rng.choice(pool))
    tgt = mk_open(xs, ys, tgt_net, i2, o2)
    return OpenNetMorphism(src, tgt, f, g, PetriMorphism(net, tgt_net, on_transitions, on_places))


def composable_squares(seed, **net_kw) -> tuple[OpenNetMorphism, OpenNetMorphism]:
    """Squares ``a: P => P'`` and ``b: Q => Q'`` that can be placed side by side."""
    rng = _rng(seed)
    p, q = composable_pair(rng, **net_kw)
    a = random_2morphism(rng, p)
    b = random_2morphism(rng, q, on_inputs=dict(a.on_outputs), input_points=a.tgt.outputs)
    return a, b


def interchange_grid(seed, **net_kw):
    """Four squares ``a1, b1`` (side by side) over ``a2, b2`` (side by side)."""
    rng = _rng(seed)
    a1, b1 = composable_squares(rng, **net_kw)
    a2 = random_2morphism(rng, a1.tgt)
    b2 = random_2morphism(rng, b1.tgt, on_inputs=dict(a2.on_outputs), input_points=a2.tgt.outputs)
    return a1, b1, a2, b2


def one_way_pair(seed, max_tries: int = 10_000, **net_kw) -> tuple[OpenPetriNet, OpenPetriNet]:
    """A composable pair in which both nets are one-way.

    Boundary points are attached to places reserved for them: inputs to
    places that transitions only consume from, outputs to places that
    transitions only produce into.
    """
    from .reach import is_one_way

    rng = _rng(seed)
    middle = [f"m{k}" for k in range(rng.randint(1, 3))]

    def one(inputs, outputs, prefix):
        for _ in range(max_tries):
            p = _one_way_candidate(rng, inputs, outputs, prefix, **net_kw)
            if is_one_way(p):
                return p
        raise RuntimeError("could not generate a one-way net")

    xs = [f"x{k}" for k in range(rng.randint(1, 2))]
    zs = [f"z{k}" for k in range(rng.randint(1, 2))]
    return one(xs, middle, ""), one(middle, zs, "")


def _one_way_candidate(rng, inputs, outputs, prefix, max_places=4, max_transitions=3, max_coeff=2):
    n_in = rng.randint(1, 2) if inputs else 0
    n_out = rng.randint(1, 2) if outputs else 0
    n_mid = rng.randint(0, max(0, max_places - n_in - n_out))
    ins = [f"{prefix}i{k}" for k in range(n_in)]
    outs = [f"{prefix}o{k}" for k in range(n_out)]
    mids = [f"{prefix}p{k}" for k in range(n_mid)]
    places = ins + outs + mids
    arcs = {}
    for k in range(rng.randint(0, max_transitions)):
        arcs[f"{prefix}t{k}"] = (
            random_multiset(rng, ins + mids, max_coeff),
            random_multiset(rng, outs + mids, max_coeff),
        )
    net = PetriNet.build(places or ["p0"], arcs)
    pool_in = ins or sorted(net.places)
    pool_out = outs or sorted(net.places)
    i = {x: rng.choice(pool_in) for x in inputs}
    o = {y: rng.choice(pool_out) for y in outputs}
    return mk_open(i, o, net, i, o)


def net_grid(max_places: int = 3, max_transitions: int = 2, max_coeff: int = 2):
    """Every net up to the given sizes, one per isomorphism class.

    Yields ``(net, weight)`` where ``weight`` counts the nets with places
    ``p0, p1, ...`` and transitions ``t0, t1, ...`` in that class, so
    weighted tallies equal tallies over the full labelled grid.
    """
    from itertools import combinations_with_replacement, permutations, product

    for k in range(max_places + 1):
        places = [f"p{j}" for j in range(k)]
        vecs = list(product(range(max_coeff + 1), repeat=k))
        arcs = [(s, t) for s in vecs for t in vecs]
        perms = list(permutations(range(k)))
        for n_t in range(max_transitions + 1):
            classes: dict[tuple, int] = {}
            for combo in combinations_with_replacement(range(len(arcs)), n_t):
                trans = [arcs[c] for c in combo]
                key = min(
                    tuple(sorted((tuple(s[i] for i in perm), tuple(t[i] for i in perm)) for s, t in trans))
                    for perm in perms
                )
                classes[key] = classes.get(key, 0) + _orderings(combo)
            for key in sorted(classes):
                net = PetriNet.build(
                    places,
                    {
                        f"t{j}": (dict(zip(places, s)), dict(zip(places, t)))
                        for j, (s, t) in enumerate(key)
                    },
                )
                yield net, classes[key]


def _orderings(combo) -> int:
    from collections import Counter
    from math import factorial

    out = factorial(len(combo))
    for c in Counter(combo).values():
        out //= factorial(c)
    return out
