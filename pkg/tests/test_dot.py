import re

from hypothesis import given

from opennets import generators as gen
from opennets.dot import export_dot
from opennets.opennet import identity_open

from conftest import gluing_pair, seeds


def arcs(text):
    return [l for l in text.splitlines() if "->" in l and "dashed" not in l]


def test_gluing_net():
    p, _ = gluing_pair()
    text = export_dot(p, "P")
    assert text.startswith('digraph "P" {')
    assert '"place:A" [shape=ellipse' in text
    assert '"transition:α" [shape=box' in text
    assert len(arcs(text)) == 4
    assert text.count("style=dashed") == 5


@given(seeds)
def test_one_arc_per_nonzero_coefficient(s):
    p = gen.random_open(s)
    text = export_dot(p)
    want = sum(len(p.net.source[t].to_dict()) + len(p.net.target[t].to_dict()) for t in p.net.transitions)
    assert len(arcs(text)) == want
    labels = [int(m) for m in re.findall(r"\[label=(\d+)\]", text)]
    assert all(n > 1 for n in labels)
    assert export_dot(p) == text


def test_discrete_net_has_no_arcs():
    text = export_dot(identity_open({"1", "2"}))
    assert arcs(text) == []
    assert text.count("shape=ellipse") == 2


def test_quoting():
    from opennets.opennet import mk_open
    from opennets.petri import PetriNet

    p = mk_open(set(), set(), PetriNet.build(["a'b"], {}), {}, {})
    assert "\"place:a'b\"" in export_dot(p, 'say "hi"')
    assert 'digraph "say \\"hi\\""' in export_dot(p, 'say "hi"')
