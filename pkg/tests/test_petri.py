import itertools

import pytest
from hypothesis import given

from opennets.errors import CoherenceError, InvalidNet, MorphismError
from opennets.generators import random_net
from opennets.multiset import Multiset
from opennets.petri import (
    PetriMorphism,
    PetriNet,
    UnionFind,
    compose_morphism,
    coproduct,
    discrete,
    disjoint_names,
    factor_through_pushout,
    identity,
    mk_morphism,
    pushout,
)

from conftest import gluing_pair, primed_pair, seeds


def test_build_and_validate():
    net = PetriNet.build("AB", {"t": ("AA", "B")})
    assert net.source["t"] == Multiset("AB", {"A": 2})
    with pytest.raises(InvalidNet):
        PetriNet(frozenset("A"), frozenset(["t"]), {"t": Multiset("A")}, {})
    with pytest.raises((InvalidNet, ValueError)):
        PetriNet.build("A", {"t": ("B", "A")})


def test_discrete_net_has_no_transitions():
    d = discrete({"1", "2"})
    assert d.places == {"1", "2"} and not d.transitions


def test_identity_morphism_laws():
    p, _ = gluing_pair()
    i = identity(p.net)
    assert compose_morphism(i, i) == i


def test_morphism_square_failure_names_transition():
    big, small = primed_pair()
    with pytest.raises(MorphismError) as err:
        mk_morphism({"α": "α", "α'": "α"}, {"A": "A", "A'": "B", "B": "B"}, big.net, small.net)
    assert err.value.element == "α'"
    assert err.value.side == "source"


def test_simplification_map_and_its_section():
    big, small = primed_pair()
    collapse = mk_morphism({"α": "α", "α'": "α"}, {"A": "A", "A'": "A", "B": "B"}, big.net, small.net)
    include = mk_morphism({"α": "α"}, {"A": "A", "B": "B"}, small.net, big.net)
    assert compose_morphism(collapse, include) == identity(small.net)


def test_union_find_classes():
    uf = UnionFind(range(5))
    uf.union(0, 3)
    uf.union(3, 4)
    assert sorted(map(sorted, uf.classes())) == [[0, 3, 4], [1], [2]]


def test_disjoint_names_tag_only_clashes():
    left, right = disjoint_names({"a", "b"}, {"b", "c"})
    assert left == {"a": "a", "b": "b~1"}
    assert right == {"b": "b~2", "c": "c"}
    left, right = disjoint_names({"b", "b~2"}, {"b"})
    assert len(set(left.values()) | set(right.values())) == 3


def test_coproduct_of_the_two_gluing_nets():
    p, q = gluing_pair()
    res = coproduct(p.net, q.net)
    assert res.net.places == set("ABCDEF")
    assert len(res.net.transitions) == 3


def test_coproduct_of_a_net_with_itself_tags_both_sides():
    p, _ = gluing_pair()
    res = coproduct(p.net, p.net)
    assert "A~1" in res.net.places and "A~2" in res.net.places
    assert len(res.net.places) == 8


def test_pushout_along_shared_boundary():
    p, q = gluing_pair()
    res = pushout(p.output_morphism, q.input_morphism)
    assert len(res.net.places) == 4
    glued = res.left.on_places["C"]
    assert res.left.on_places["D"] == glued == res.right.on_places["E"]
    assert res.net.target[res.left.on_transitions["α"]] == Multiset(res.net.places, {glued: 2})


def _all_functions(xs, ys):
    xs, ys = sorted(xs), sorted(ys)
    for image in itertools.product(ys, repeat=len(xs)):
        yield dict(zip(xs, image))


def _all_morphisms(dom: PetriNet, cod: PetriNet):
    for g in _all_functions(dom.places, cod.places):
        for f in _all_functions(dom.transitions, cod.transitions):
            try:
                yield PetriMorphism(dom, cod, f, g)
            except MorphismError:
                continue


def test_pushout_universal_property_exhaustively():
    # every cocone into a small test net factors uniquely
    base = discrete({"y"})
    n1 = PetriNet.build("AB", {"s": ("A", "B")})
    n2 = PetriNet.build("C", {"u": ("C", "C")})
    leg1 = PetriMorphism(base, n1, {}, {"y": "B"})
    leg2 = PetriMorphism(base, n2, {}, {"y": "C"})
    res = pushout(leg1, leg2)
    target = PetriNet.build("PQ", {"a": ("P", "Q"), "b": ("Q", "Q")})
    cocones = 0
    for c1 in _all_morphisms(n1, target):
        for c2 in _all_morphisms(n2, target):
            agrees = c1.on_places["B"] == c2.on_places["C"]
            if not agrees:
                with pytest.raises(CoherenceError):
                    factor_through_pushout(res, c1, c2)
                continue
            cocones += 1
            u = factor_through_pushout(res, c1, c2)
            assert compose_morphism(u, res.left) == c1
            assert compose_morphism(u, res.right) == c2
            mediators = [
                v
                for v in _all_morphisms(res.net, target)
                if compose_morphism(v, res.left) == c1 and compose_morphism(v, res.right) == c2
            ]
            assert mediators == [u]
    assert cocones > 0


@given(seeds, seeds)
def test_pushout_square_commutes(s1, s2):
    n1, n2 = random_net(s1), random_net(s2)
    base = discrete({"y0", "y1"})
    leg1 = PetriMorphism(base, n1, {}, {"y0": min(n1.places), "y1": max(n1.places)})
    leg2 = PetriMorphism(base, n2, {}, {"y0": max(n2.places), "y1": min(n2.places)})
    res = pushout(leg1, leg2)
    assert compose_morphism(res.left, leg1) == compose_morphism(res.right, leg2)
    assert len(res.net.transitions) == len(n1.transitions) + len(n2.transitions)
    assert len(res.net.places) <= len(n1.places) + len(n2.places)


@given(seeds)
def test_pushout_is_deterministic(s):
    n = random_net(s)
    res_a = coproduct(n, n)
    res_b = coproduct(n, n)
    assert res_a.net == res_b.net
