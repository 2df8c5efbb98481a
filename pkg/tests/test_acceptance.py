"""Acceptance criteria, one test each.

Every test records a single ``PASS``/``FAIL`` line naming its criterion
before asserting; the lines are repeated in pytest's terminal summary.
"""

import random
import time

import pytest

from opennets import generators as gen
from opennets.caps import ExplorationCaps
from opennets.cmc import hom_non_empty
from opennets.multiset import Multiset, bounded
from opennets.opennet import (
    check_associator,
    check_braiding,
    check_interchange,
    check_pentagon,
    check_triangle,
    check_unitors,
    compose_open,
    iso_open,
)
from opennets.reach import (
    check_2morphism,
    check_lax_composition,
    check_monoidality,
    is_one_way,
    is_reachable,
    one_way_experiment,
    reach_relation,
    rel_compose,
)

from conftest import ACCEPTANCE_LINES, glued_by_hand, gluing_pair, lax_pair

SUITE_CAPS = ExplorationCaps(max_tokens=6, max_depth=12)


def verdict(number: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print("\n" + line)
    assert ok, detail


def test_criterion_1_composition_golden():
    start = time.perf_counter()
    p, q = gluing_pair()
    qp = compose_open(p, q)
    target = qp.net.target["α"]
    (glued_place,) = [a for a, _ in target.items()]
    iso = iso_open(qp, glued_by_hand())
    elapsed = time.perf_counter() - start
    ok = (
        len(qp.net.places) == 4
        and len(qp.net.transitions) == 3
        and target.count(glued_place) == 2
        and glued_place != qp.output_map["6"]
        and iso is not None
        and elapsed < 1.0
    )
    verdict(1, ok, f"4 places, 3 transitions, α lands 2 tokens on one place, iso found; {elapsed:.3f}s")


def test_criterion_2_laxness_counterexample():
    start = time.perf_counter()
    p, q = lax_pair()
    caps = ExplorationCaps()
    bound = 5
    rp = reach_relation(p, caps, bound)
    rq = reach_relation(q, caps, bound)
    direct = reach_relation(compose_open(p, q), caps, bound)
    comp = rel_compose(rq, rp)

    def ms(carrier, **kw):
        return Multiset(carrier, kw)

    want_p = {(ms(p.inputs, **{"1": n}), ms(p.outputs, **{"2": n})) for n in range(bound + 1)}
    want_q = {(ms(q.inputs, **{"4": n}), ms(q.outputs, **{"5": n})) for n in range(bound + 1)}
    want_direct = {(ms(p.inputs, **{"1": n}), ms(q.outputs, **{"5": n})) for n in range(bound + 1)}
    rep = check_lax_composition(p, q, caps, bound)
    elapsed = time.perf_counter() - start
    ok = (
        rp.fully_complete
        and rq.fully_complete
        and direct.fully_complete
        and rp.pairs == want_p
        and rq.pairs == want_q
        and comp.pairs == {(ms(p.inputs), ms(q.outputs))}
        and direct.pairs == want_direct
        and rep.holds
        and rep.strict
        and elapsed < 5.0
    )
    verdict(2, ok, f"■P, ■Q, ■Q∘■P and ■(Q⊙P) exact at bound {bound}, inclusion strict; {elapsed:.2f}s")


def test_criterion_3_lax_functor_suite():
    start = time.perf_counter()
    rng = random.Random(3)
    pairs, rows, violations = 0, 0, 0
    for _ in range(200):
        p, q = gen.composable_pair(rng, max_places=4, max_transitions=3)
        rep = check_lax_composition(p, q, SUITE_CAPS)
        pairs += 1
        rows += rep.rows_checked
        violations += len(rep.violations)
    elapsed = time.perf_counter() - start
    ok = pairs >= 200 and violations == 0 and rows > 0 and elapsed < 120
    verdict(3, ok, f"{pairs} pairs, {rows} complete rows, {violations} violations; {elapsed:.1f}s")


def test_criterion_4_monoidality_suite():
    rng = random.Random(4)
    caps = ExplorationCaps(max_tokens=4, max_depth=12)
    count, rows, bad = 0, 0, 0
    for _ in range(100):
        p, q = gen.random_open(rng), gen.random_open(rng)
        rep = check_monoidality(p, q, caps)
        count += 1
        rows += rep.rows_checked
        bad += len(rep.mismatches)
    ok = count >= 100 and bad == 0 and rows > 0
    verdict(4, ok, f"{count} pairs, {rows} complete rows, {bad} mismatches")


@pytest.mark.slow
def test_criterion_5_oracle_equivalence():
    caps = ExplorationCaps(max_tokens=8, max_depth=256, max_states=100_000)
    total = agree = both = disagreements = 0
    nets = 0
    start = time.perf_counter()
    for net, weight in gen.net_grid(max_places=3, max_transitions=2, max_coeff=2):
        nets += weight
        markings = bounded(net.places, 3)
        for m in markings:
            for n in markings:
                a = is_reachable(net, m, n, caps).verdict
                b = hom_non_empty(net, m, n, caps).verdict
                total += weight
                if a.definite and b.definite:
                    both += weight
                    if a == b:
                        agree += weight
                    else:
                        disagreements += weight
    elapsed = time.perf_counter() - start
    rate = both / total
    ok = disagreements == 0 and rate >= 0.95
    verdict(
        5,
        ok,
        f"{nets} nets, {total} queries, both definite {rate:.2%}, {disagreements} disagreements; {elapsed:.0f}s",
    )


def test_criterion_6_double_category_laws():
    # unitor, associator and braiding checks compose each canonical iso with
    # its independently built inverse and compare against identities
    rng = random.Random(6)
    n = 50
    tally = {}

    def record(name, ok):
        tally.setdefault(name, [0, 0])
        tally[name][0] += 1
        tally[name][1] += bool(ok)

    for _ in range(n):
        chain = gen.composable_chain(rng, 4)
        p, q, r, s = chain
        record("unitors", check_unitors(p))
        record("associator", check_associator(p, q, r))
        record("pentagon", check_pentagon(p, q, r, s))
        record("triangle", check_triangle(p, q))
        record("interchange", check_interchange(*gen.interchange_grid(rng)))
        record("braiding", check_braiding(p, r))
    ok = all(c >= n and c == good for c, good in tally.values())
    detail = ", ".join(f"{k} {good}/{c}" for k, (c, good) in sorted(tally.items()))
    verdict(6, ok, detail)


def test_criterion_7_two_morphisms():
    rng = random.Random(7)
    caps = ExplorationCaps(max_tokens=5, max_depth=12)
    count, rows, bad = 0, 0, 0
    for _ in range(100):
        m = gen.random_2morphism(rng, gen.random_open(rng))
        rep = check_2morphism(m, caps)
        count += 1
        rows += rep.rows_checked
        bad += len(rep.mismatches)
    ok = count >= 100 and bad == 0 and rows > 0
    verdict(7, ok, f"{count} 2-morphisms, {rows} complete rows, {bad} inclusion failures")


def test_criterion_8_one_way_experiment():
    first = one_way_experiment(8, 100, SUITE_CAPS)
    second = one_way_experiment(8, 100, SUITE_CAPS)
    one_way = [i for i in first.instances if is_one_way(i.p) and is_one_way(i.q)]
    failures = sum(not i.report.holds for i in one_way)
    ok = (
        first.to_text() == second.to_text()
        and len(first.instances) == 100
        and len(one_way) == 100
        and failures == 0
    )
    verdict(
        8,
        ok,
        f"100 instances, deterministic report, {failures} inclusion failures, "
        f"{first.equal_count} equal, {100 - first.equal_count} strict",
    )
