"""A small text format for open Petri nets, markings and processes.

::

    format opennets 1

    net P {
      places: A, B, C, D
      transition a: A:1,B:1 -> C:1,D:1
      inputs: 1=A, 2=B, 3=B
      outputs: 4=C, 5=D
      marking start: A:1,B:1
      process run: A:1,B:1 | a@0
    }

Multisets are written ``A:2,B:1`` (a bare ``A`` means ``A:1``) and the
empty multiset is ``0``.  A process lists its steps as
``transition@context`` separated by ``;``.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .cmc import Event, Process
from .errors import ParseError, ProcessError
from .multiset import Multiset, format_counts
from .opennet import OpenPetriNet
from .petri import PetriNet

VERSION = 1
HEADER = f"format opennets {VERSION}"
_IDENT = r"[\w'~.@]+"
IDENT = re.compile(_IDENT)
_FULL_IDENT = re.compile(rf"^{_IDENT}$")


@dataclass
class NetDocument:
    version: int = VERSION
    nets: dict[str, OpenPetriNet] = field(default_factory=dict)
    markings: dict[tuple[str, str], Multiset] = field(default_factory=dict)
    processes: dict[tuple[str, str], Process] = field(default_factory=dict)

    def net(self, name: str) -> OpenPetriNet:
        try:
            return self.nets[name]
        except KeyError:
            known = ", ".join(sorted(self.nets)) or "none"
            raise KeyError(f"no net named {name!r} (have: {known})") from None

    def markings_of(self, name: str) -> dict[str, Multiset]:
        return {m: v for (n, m), v in self.markings.items() if n == name}


# -- parsing -----------------------------------------------------------------


class _Line:
    def __init__(self, text: str, number: int):
        self.text = text
        self.number = number

    def fail(self, message: str, offset: int = 0):
        raise ParseError(message, self.number, offset + 1)

    def col(self, fragment: str, start: int = 0) -> int:
        k = self.text.find(fragment, start)
        return max(k, 0)


def _strip_comment(text: str) -> str:
    k = text.find("#")
    return text if k < 0 else text[:k]


def parse_marking(text: str, carrier=None, line: _Line | None = None, offset: int = 0) -> Multiset:
    """Parse ``A:2,B:1`` (or ``0``) into a multiset.

    With ``carrier`` given, unknown atoms are reported as errors; without
    it the carrier is the set of atoms mentioned.
    """
    line = line or _Line(text, 1)
    body = text.strip()
    counts: dict[str, int] = {}
    if body not in ("", "0"):
        pos = offset + (len(text) - len(text.lstrip()))
        for part in body.split(","):
            chunk = part.strip()
            here = line.col(chunk, pos) if line.text else pos
            name, sep, num = chunk.partition(":")
            name = name.strip()
            if not _FULL_IDENT.match(name):
                line.fail(f"bad identifier {name!r} in multiset", here)
            if sep:
                num = num.strip()
                if not num.isdigit():
                    line.fail(f"bad count {num!r} for {name!r}", here)
                n = int(num)
            else:
                n = 1
            if carrier is not None and name not in carrier:
                line.fail(f"unknown place {name!r}", here)
            counts[name] = counts.get(name, 0) + n
            pos = here + len(chunk)
    return Multiset(carrier if carrier is not None else counts.keys(), counts)


def _split_list(line: _Line, body: str, start: int) -> list[tuple[str, int]]:
    out = []
    pos = start
    if not body.strip():
        return out
    for part in body.split(","):
        item = part.strip()
        here = line.col(item, pos)
        if not item:
            line.fail("empty list item", pos)
        out.append((item, here))
        pos = here + len(item)
    return out


class _NetBuilder:
    def __init__(self, name: str, line: _Line):
        self.name = name
        self.line = line
        self.places: dict[str, _Line] = {}
        self.transitions: dict[str, tuple[_Line, str, int, str, int]] = {}
        self.inputs: dict[str, tuple[str, _Line, int]] = {}
        self.outputs: dict[str, tuple[str, _Line, int]] = {}
        self.markings: dict[str, tuple[_Line, str, int]] = {}
        self.processes: dict[str, tuple[_Line, str, int]] = {}

    def statement(self, line: _Line, body: str, indent: int):
        key, sep, rest = body.partition(":")
        head = key.split()
        if not sep or not head:
            line.fail(f"expected a statement, got {body!r}", indent)
        rest_at = indent + len(key) + 1
        kind = head[0]
        if kind == "places" and len(head) == 1:
            for name, col in _split_list(line, rest, rest_at):
                if not _FULL_IDENT.match(name):
                    line.fail(f"bad place name {name!r}", col)
                if name in self.places:
                    line.fail(f"duplicate place {name!r}", col)
                self.places[name] = line
        elif kind in ("inputs", "outputs") and len(head) == 1:
            table = self.inputs if kind == "inputs" else self.outputs
            for item, col in _split_list(line, rest, rest_at):
                point, eq, place = item.partition("=")
                point, place = point.strip(), place.strip()
                if not eq or not _FULL_IDENT.match(point) or not _FULL_IDENT.match(place):
                    line.fail(f"expected point=place, got {item!r}", col)
                if point in table:
                    line.fail(f"duplicate {kind[:-1]} point {point!r}", col)
                table[point] = (place, line, col + item.find(place))
        elif kind in ("transition", "marking", "process") and len(head) == 2:
            name = head[1]
            name_col = line.col(name, indent + len(kind))
            if not _FULL_IDENT.match(name):
                line.fail(f"bad {kind} name {name!r}", name_col)
            if kind == "transition":
                if name in self.transitions:
                    line.fail(f"duplicate transition {name!r}", name_col)
                src, arrow, tgt = rest.partition("->")
                if not arrow:
                    line.fail(f"transition {name!r} needs 'source -> target'", rest_at)
                self.transitions[name] = (line, src, rest_at, tgt, rest_at + len(src) + 2)
            else:
                table = self.markings if kind == "marking" else self.processes
                if name in table:
                    line.fail(f"duplicate {kind} {name!r}", name_col)
                table[name] = (line, rest, rest_at)
        else:
            line.fail(f"unknown statement {key.strip()!r}", indent)

    def build(self) -> tuple[OpenPetriNet, dict, dict]:
        places = frozenset(self.places)
        arcs = {}
        for name, (line, src, src_at, tgt, tgt_at) in sorted(self.transitions.items()):
            s = parse_marking(src, places, line, src_at)
            t = parse_marking(tgt, places, line, tgt_at)
            arcs[name] = (s, t)
        net = PetriNet.build(places, arcs)
        maps = []
        for label, table in (("input", self.inputs), ("output", self.outputs)):
            fn = {}
            for point, (place, line, col) in table.items():
                if place not in places:
                    line.fail(f"{label} point {point!r} refers to undeclared place {place!r}", col)
                fn[point] = place
            maps.append(fn)
        open_net = OpenPetriNet(frozenset(maps[0]), frozenset(maps[1]), net, maps[0], maps[1])
        markings = {}
        for name, (line, text, col) in self.markings.items():
            markings[name] = parse_marking(text, places, line, col)
        processes = {}
        for name, (line, text, col) in self.processes.items():
            processes[name] = _parse_process(net, name, line, text, col)
        return open_net, markings, processes


def _parse_process(net: PetriNet, name: str, line: _Line, text: str, col: int) -> Process:
    dom_text, bar, steps = text.partition("|")
    if not bar:
        line.fail(f"process {name!r} needs 'start | steps'", col)
    dom = parse_marking(dom_text, net.places, line, col)
    events = []
    pos = col + len(dom_text) + 1
    for chunk in steps.split(";"):
        item = chunk.strip()
        here = line.col(item, pos) if item else pos
        pos = here + len(item)
        if not item:
            if steps.strip():
                line.fail("empty process step", here)
            continue
        t, at, ctx = item.partition("@")
        t = t.strip()
        if not at:
            line.fail(f"process step {item!r} needs 'transition@context'", here)
        if t not in net.transitions:
            line.fail(f"unknown transition {t!r}", here)
        events.append(Event(t, parse_marking(ctx, net.places, line, here + len(t) + 1)))
    try:
        return Process(net, dom, events)
    except ProcessError as exc:
        line.fail(f"process {name!r}: {exc}", col + len(text) - len(text.lstrip()))
        raise  # pragma: no cover


def parse(text: str) -> NetDocument:
    """Parse a document, raising :class:`ParseError` at the first problem."""
    lines = [_Line(t, k) for k, t in enumerate(text.splitlines(), start=1)]
    doc = NetDocument()
    header_seen = False
    current: _NetBuilder | None = None
    for line in lines:
        raw = _strip_comment(line.text)
        body = raw.strip()
        if not body:
            continue
        indent = len(raw) - len(raw.lstrip())
        if not header_seen:
            parts = body.split()
            if len(parts) != 3 or parts[:2] != ["format", "opennets"]:
                line.fail(f"expected header '{HEADER}'", indent)
            if parts[2] != str(VERSION):
                line.fail(f"unsupported format version {parts[2]!r}", indent + body.rfind(parts[2]))
            header_seen = True
            continue
        if current is None:
            m = re.fullmatch(rf"net\s+({_IDENT})\s*\{{", body)
            if not m:
                line.fail(f"expected 'net NAME {{', got {body!r}", indent)
            name = m.group(1)
            if name in doc.nets:
                line.fail(f"duplicate net {name!r}", indent + body.find(name))
            current = _NetBuilder(name, line)
            doc.nets[name] = None  # reserve the name
            continue
        if body == "}":
            net, markings, processes = current.build()
            doc.nets[current.name] = net
            for k, v in markings.items():
                doc.markings[(current.name, k)] = v
            for k, v in processes.items():
                doc.processes[(current.name, k)] = v
            current = None
            continue
        current.statement(line, body, indent)
    if current is not None:
        current.line.fail(f"net {current.name!r} is not closed with '}}'")
    return doc


# -- serialization -------------------------------------------------------------


def _ident(name: str) -> str:
    if not _FULL_IDENT.match(name):
        raise ValueError(f"{name!r} cannot be written as an identifier")
    return name


def _ms(m: Multiset) -> str:
    for a, _ in m.items():
        _ident(a)
    return format_counts(m)


def serialize_net(name: str, p: OpenPetriNet, markings=None, processes=None) -> list[str]:
    net = p.net
    out = [f"net {_ident(name)} {{"]
    out.append("  places: " + ", ".join(_ident(a) for a in net.sorted_places()))
    for t in net.sorted_transitions():
        out.append(f"  transition {_ident(t)}: {_ms(net.source[t])} -> {_ms(net.target[t])}")
    for label, fn in (("inputs", p.input_map), ("outputs", p.output_map)):
        items = ", ".join(f"{_ident(x)}={fn[x]}" for x in sorted(fn))
        out.append(f"  {label}: {items}".rstrip())
    for k in sorted(markings or {}):
        out.append(f"  marking {_ident(k)}: {_ms(markings[k])}")
    for k in sorted(processes or {}):
        out.append(f"  process {_ident(k)}: {format_process(processes[k])}")
    out.append("}")
    return out


def format_process(p: Process) -> str:
    steps = "; ".join(f"{e.transition}@{_ms(e.context)}" for e in p.events)
    return f"{_ms(p.dom)} | {steps}".rstrip()


def serialize(doc: NetDocument) -> str:
    """Canonical text: nets, places, transitions and boundary points in sorted order."""
    out = [f"format opennets {doc.version}"]
    for name in sorted(doc.nets):
        out.append("")
        out.extend(
            serialize_net(
                name,
                doc.nets[name],
                doc.markings_of(name),
                {k: v for (n, k), v in doc.processes.items() if n == name},
            )
        )
    return "\n".join(out) + "\n"


def load(path) -> NetDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
