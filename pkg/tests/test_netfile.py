import pytest
from hypothesis import given

from opennets import generators as gen
from opennets.cmc import Process
from opennets.errors import ParseError
from opennets.multiset import Multiset
from opennets.netfile import NetDocument, load, parse, parse_marking, serialize
from opennets.opennet import compose_open, iso_open, tensor_open

from conftest import glued_by_hand, gluing_pair, lax_pair, seeds

DATA = __import__("pathlib").Path(__file__).resolve().parents[1] / "data"


def same(a, b):
    return a.inputs == b.inputs and a.outputs == b.outputs and a.net == b.net and \
        a.input_map == b.input_map and a.output_map == b.output_map


def test_parse_marking():
    assert parse_marking("A:2,B") == Multiset("AB", {"A": 2, "B": 1})
    assert parse_marking("0", "AB").total() == 0
    assert parse_marking(" A:1 , A:1 ", "AB") == Multiset("AB", {"A": 2})
    with pytest.raises(ParseError):
        parse_marking("C:1", "AB")
    with pytest.raises(ParseError):
        parse_marking("A:x", "AB")


def test_example_files_load():
    doc = load(DATA / "gluing.net")
    p, q = gluing_pair()
    assert same(doc.net("P"), p) and same(doc.net("Q"), q)
    assert doc.markings_of("P")["start"] == Multiset(p.net.places, {"A": 1, "B": 1})
    doc = load(DATA / "lax.net")
    p, q = lax_pair()
    assert same(doc.net("P"), p) and same(doc.net("Q"), q)


@given(seeds)
def test_round_trip(s):
    p, q = gen.composable_pair(s)
    doc = NetDocument(nets={"P": p, "Q": q, "PQ": compose_open(p, q), "PxQ": tensor_open(p, q)})
    text = serialize(doc)
    back = parse(text)
    assert set(back.nets) == set(doc.nets)
    for name in doc.nets:
        assert same(back.nets[name], doc.nets[name])
    assert serialize(back) == text


def test_round_trip_markings_and_processes():
    p, _ = gluing_pair()
    net = p.net
    dom = Multiset(net.places, {"A": 2, "B": 1})
    proc = Process.from_firings(net, dom, ["α"])
    doc = NetDocument(nets={"P": p}, markings={("P", "m"): dom}, processes={("P", "run"): proc})
    back = parse(serialize(doc))
    assert back.markings[("P", "m")] == dom
    assert back.processes[("P", "run")] == proc


def test_composite_serializes_and_matches_hand_drawn():
    p, q = gluing_pair()
    back = parse(serialize(NetDocument(nets={"PQ": compose_open(p, q)}))).net("PQ")
    assert iso_open(back, glued_by_hand()) is not None


def test_empty_document():
    assert serialize(parse("")) == "format opennets 1\n"
    assert parse("# nothing\nformat opennets 1\n").nets == {}


def test_comments_and_whitespace():
    doc = parse("format opennets 1\n\nnet N {  # a net\n  places: A  # one place\n  inputs: 1=A\n}\n")
    assert doc.net("N").net.places == {"A"}


@pytest.mark.parametrize(
    "text, line, col, fragment",
    [
        ("net P {\n}", 1, 1, "header"),
        ("format opennets 2\n", 1, 17, "version"),
        ("format opennets 1\nnet P {\n  places: A\n  inputs: 1=B\n}\n", 4, 13, "undeclared place 'B'"),
        ("format opennets 1\nnet P {\n  places: A, A\n}\n", 3, 14, "duplicate place"),
        ("format opennets 1\nnet P {\n  places: A\n  transition t: A -> C\n}\n", 4, 22, "unknown place 'C'"),
        ("format opennets 1\nnet P {\n  places: A\n  transition t: A\n}\n", 4, 16, "source -> target"),
        ("format opennets 1\nnet P {\n  places: A\n  transition t: A -> A\n  transition t: A -> 0\n}\n", 5, 14, "duplicate transition"),
        ("format opennets 1\nnet P {\n  places: A\n}\nnet P {\n}\n", 5, 5, "duplicate net"),
        ("format opennets 1\nnet P {\n  places: A\n", 2, 1, "not closed"),
        ("format opennets 1\nnet P {\n  colours: A\n}\n", 3, 3, "unknown statement"),
        ("format opennets 1\nnet P {\n  places: A\n  transition t: A -> A\n  process r: 0 | t@0\n}\n", 5, 14, "process 'r'"),
        ("format opennets 1\nnet P {\n  places: A\n  process r: A | u@0\n}\n", 4, 18, "unknown transition"),
    ],
)
def test_parse_errors(text, line, col, fragment):
    with pytest.raises(ParseError) as info:
        parse(text)
    err = info.value
    assert fragment in err.message
    assert (err.line, err.column) == (line, col)
    assert str(err).startswith(f"line {line}, col {col}:")


def test_unknown_net_lists_known():
    doc = load(DATA / "gluing.net")
    with pytest.raises(KeyError, match="P, Q"):
        doc.net("R")
