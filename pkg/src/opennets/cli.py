"""Command-line interface: ``opennets <command> ...``.

Exit status is 0 on success, 1 when a file fails validation or a law
check fails, and 2 for usage errors (bad flags, unknown net names).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections.abc import Sequence

from .caps import ExplorationCaps, Verdict
from .dot import export_dot
from .errors import OpenNetsError, ParseError
from .multiset import Multiset, format_counts
from .netfile import NetDocument, load, parse_marking, serialize
from .opennet import (
    OpenPetriNet,
    check_associator,
    check_braiding,
    check_interchange,
    check_pentagon,
    check_triangle,
    check_unitors,
    compose_open,
    tensor_open,
)


class UsageError(Exception):
    pass


def _caps(args) -> ExplorationCaps:
    try:
        return ExplorationCaps(args.max_tokens, args.max_depth, args.max_states)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load(path: str) -> NetDocument:
    try:
        return load(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def _net(doc: NetDocument, name: str) -> OpenPetriNet:
    try:
        return doc.net(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _marking(doc: NetDocument, net_name: str, text: str) -> Multiset:
    named = doc.markings_of(net_name)
    if text in named:
        return named[text]
    places = doc.net(net_name).net.places
    try:
        return parse_marking(text, places)
    except ParseError as exc:
        raise UsageError(f"marking {text!r}: {exc.message}") from None


def _emit(args, text: str, data) -> None:
    if getattr(args, "json", False):
        print(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _write_doc(args, doc: NetDocument) -> None:
    text = serialize(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands ---------------------------------------------------------------------


def cmd_validate(args) -> int:
    doc = _load(args.file)
    lines = []
    data = {}
    for name in sorted(doc.nets):
        p = doc.nets[name]
        info = {
            "places": len(p.net.places),
            "transitions": len(p.net.transitions),
            "inputs": len(p.inputs),
            "outputs": len(p.outputs),
        }
        data[name] = info
        lines.append(
            f"net {name}: {info['places']} places, {info['transitions']} transitions, "
            f"{info['inputs']} inputs, {info['outputs']} outputs"
        )
    lines.append(f"ok: {len(doc.nets)} nets")
    _emit(args, "\n".join(lines), {"ok": True, "nets": data})
    return 0


def _binary(args, op, default_name) -> int:
    doc = _load(args.file)
    a, b = _net(doc, args.net_a), _net(doc, args.net_b)
    try:
        result = op(a, b)
    except OpenNetsError as exc:
        print(f"error: cannot combine {args.net_a} and {args.net_b}: {exc}", file=sys.stderr)
        return 1
    name = args.name or default_name
    _write_doc(args, NetDocument(nets={name: result}))
    return 0


def cmd_compose(args) -> int:
    return _binary(args, compose_open, f"{args.net_a}_{args.net_b}")


def cmd_tensor(args) -> int:
    return _binary(args, tensor_open, f"{args.net_a}_x_{args.net_b}")


def cmd_reach(args) -> int:
    from .reach import is_reachable, reachable_set

    doc = _load(args.file)
    p = _net(doc, args.net)
    caps = _caps(args)
    m = _marking(doc, args.net, args.source)
    if args.target is None:
        result = reachable_set(p.net, m, caps)
        markings = [format_counts(x) for x in result.sorted()]
        text = "\n".join(markings + [f"{len(markings)} markings, exact: {str(result.exact).lower()}"])
        _emit(args, text, {"markings": markings, "exact": result.exact})
        return 0
    n = _marking(doc, args.net, args.target)
    result = is_reachable(p.net, m, n, caps)
    data = {"verdict": result.verdict.value}
    lines = [f"{result.verdict.value}"]
    if result.verdict is Verdict.YES:
        data["witness"] = list(result.witness)
        data["markings"] = [format_counts(x) for x in result.markings]
        lines.append("witness: " + (", ".join(result.witness) or "(no firings)"))
        lines.append("markings: " + " -> ".join(data["markings"]))
    _emit(args, "\n".join(lines), data)
    return 0


def cmd_relation(args) -> int:
    from .reach import reach_relation

    doc = _load(args.file)
    p = _net(doc, args.net)
    caps = _caps(args)
    rel = reach_relation(p, caps, args.bound)
    data = rel.to_dict()
    lines = [f"({x}, {y})" for x, y in data["pairs"]]
    lines.append(f"{len(data['pairs'])} pairs, bound {rel.bound}")
    if data["incomplete_rows"]:
        lines.append("incomplete rows: " + "; ".join(data["incomplete_rows"]))
    _emit(args, "\n".join(lines), data)
    return 0


def _law_results(doc: NetDocument, seed: int, instances: int, caps: ExplorationCaps) -> list[dict]:
    from . import generators as gen
    from .reach import (
        check_2morphism,
        check_identity_comparison,
        check_lax_composition,
        check_monoidality,
    )

    results = []

    def record(law, subject, ok, detail=""):
        results.append({"law": law, "subject": subject, "holds": bool(ok), "detail": detail})

    names = sorted(doc.nets)
    for a in names:
        p = doc.nets[a]
        record("unitors", a, check_unitors(p))
        rep = check_identity_comparison(p.inputs, caps, min(caps.max_tokens, 3))
        record("identity comparison", a, rep.holds)
        for b in names:
            q = doc.nets[b]
            record("braiding", f"{a},{b}", check_braiding(p, q))
            rep = check_monoidality(p, q, caps)
            record("monoidality", f"{a},{b}", rep.holds)
            if p.outputs == q.inputs:
                record("triangle", f"{a},{b}", check_triangle(p, q))
                lax = check_lax_composition(p, q, caps)
                detail = "strict" if lax.strict else "equal"
                record("lax composition", f"{a},{b}", lax.holds, detail)
                for c in names:
                    r = doc.nets[c]
                    if q.outputs == r.inputs:
                        record("associator", f"{a},{b},{c}", check_associator(p, q, r))
    rng = random.Random(seed)
    for k in range(instances):
        tag = f"random #{k}"
        p, q = gen.composable_pair(rng)
        record("lax composition", tag, check_lax_composition(p, q, caps).holds)
        record("monoidality", tag, check_monoidality(p, gen.random_open(rng), caps).holds)
        record("2-morphism inclusion", tag, check_2morphism(gen.random_2morphism(rng, p), caps).holds)
        chain = gen.composable_chain(rng, 4)
        record("pentagon", tag, check_pentagon(*chain))
        record("triangle", tag, check_triangle(*chain[:2]))
        record("associator", tag, check_associator(*chain[:3]))
        record("unitors", tag, check_unitors(p))
        record("braiding", tag, check_braiding(p, q))
        record("interchange", tag, check_interchange(*gen.interchange_grid(rng)))
    return results


def cmd_check_laws(args) -> int:
    doc = _load(args.file)
    caps = _caps(args)
    results = _law_results(doc, args.seed, args.instances, caps)
    failed = [r for r in results if not r["holds"]]
    lines = []
    for r in results:
        mark = "ok  " if r["holds"] else "FAIL"
        extra = f" ({r['detail']})" if r["detail"] else ""
        lines.append(f"{mark} {r['law']}: {r['subject']}{extra}")
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    _emit(args, "\n".join(lines), {"checks": results, "failed": len(failed)})
    if failed:
        for r in failed:
            print(f"law failure: {r['law']} on {r['subject']}", file=sys.stderr)
        return 1
    return 0


def cmd_one_way(args) -> int:
    from .reach import one_way_experiment

    report = one_way_experiment(args.seed, args.instances, _caps(args))
    _emit(args, report.to_text(), report.to_dict())
    return 0


def cmd_export_dot(args) -> int:
    doc = _load(args.file)
    p = _net(doc, args.net)
    sys.stdout.write(export_dot(p, args.net))
    return 0


# -- argument parsing ---------------------------------------------------------------


def _add_caps(sp, tokens=32, depth=64, states=100_000):
    sp.add_argument("--max-tokens", type=int, default=tokens)
    sp.add_argument("--max-depth", type=int, default=depth)
    sp.add_argument("--max-states", type=int, default=states)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="opennets", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="parse and validate a net file")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(run=cmd_validate)

    for name, run, help_ in (
        ("compose", cmd_compose, "glue net A's outputs to net B's inputs"),
        ("tensor", cmd_tensor, "put two nets side by side"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file")
        sp.add_argument("net_a")
        sp.add_argument("net_b")
        sp.add_argument("-o", "--output")
        sp.add_argument("--name", help="name of the resulting net")
        sp.set_defaults(run=run)

    sp = sub.add_parser("reach", help="reachable markings, or a reachability query with --to")
    sp.add_argument("file")
    sp.add_argument("net")
    sp.add_argument("--from", dest="source", required=True, help="marking like A:2,B:1, or a marking name")
    sp.add_argument("--to", dest="target")
    sp.add_argument("--json", action="store_true")
    _add_caps(sp)
    sp.set_defaults(run=cmd_reach)

    sp = sub.add_parser("relation", help="the reachability relation up to a token bound")
    sp.add_argument("file")
    sp.add_argument("net")
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    _add_caps(sp)
    sp.set_defaults(run=cmd_relation)

    sp = sub.add_parser("check-laws", help="run the law suites on a file's nets plus random instances")
    sp.add_argument("file")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--instances", type=int, default=10)
    sp.add_argument("--json", action="store_true")
    _add_caps(sp, tokens=4, depth=12)
    sp.set_defaults(run=cmd_check_laws)

    sp = sub.add_parser("one-way-experiment", help="compare both sides of the lax comparison on one-way pairs")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--instances", type=int, default=100)
    sp.add_argument("--json", action="store_true")
    _add_caps(sp, tokens=4, depth=16)
    sp.set_defaults(run=cmd_one_way)

    sp = sub.add_parser("export-dot", help="print a net in the dot language")
    sp.add_argument("file")
    sp.add_argument("net")
    sp.set_defaults(run=cmd_export_dot)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return 1
    except OpenNetsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
