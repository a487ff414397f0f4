"""Acceptance criteria, one line each.

Run under pytest (the lines are repeated in the terminal summary) or directly
with ``python3 tests/test_acceptance.py``.
"""

import random
import time
from collections import Counter

import pytest

from dioa.algebra import compose_sioa, hide_sioa, rename_sioa
from dioa.automata import compose_ca, hide_ca, rename_ca, validate_ca
from dioa.behavior import zip_check, zip_check_brute
from dioa.core import validate_sioa
from dioa.creation import check_creation_corresponding, check_creation_mono, lemma_assumptions
from dioa.explorer import THEOREMS, check_theorem, enumerate_traces, trace_inclusion, word_text
from dioa.modelio import load_model
from dioa.randgen import (random_bundle, random_config_automaton, random_family,
                          random_member_pool, random_renaming)

RESULTS: list = []


def record(name: str, ok: bool, detail: str, started: float, budget: float | None = None) -> bool:
    elapsed = time.perf_counter() - started
    within = budget is None or elapsed < budget
    limit = f" < {budget:g}s" if budget is not None else ""
    line = (f"criterion {name}: {'PASS' if ok and within else 'FAIL'} "
            f"({detail}; {elapsed:.2f}s{limit})")
    RESULTS.append(line)
    print(line)
    return ok and within


# ---------------------------------------------------------------- 1


def test_example_trace_sets_and_witness():
    t = time.perf_counter()
    m = load_model("creation_example")
    x = {word_text(w) for w in enumerate_traces(m.target("X"), 4, True)} - {"ε"}
    y = {word_text(w) for w in enumerate_traces(m.target("Y"), 4, True)} - {"ε"}
    inc = trace_inclusion(m.target("X"), m.target("Y"), 4, actions_only=True)
    ok = (x == {"c", "ca", "cd", "cad", "cda"} and y == {"c", "ca", "cb", "cd"}
          and not inc.ok and inc.witness_text() == "cad")
    detail = (f"X={{{', '.join(sorted(x, key=lambda w: (len(w), w)))}}} "
              f"Y={{{', '.join(sorted(y, key=lambda w: (len(w), w)))}}} witness {inc.witness_text()}")
    assert record("1", ok, detail, t, 1.0)


# ---------------------------------------------------------------- 2


def test_creation_monotonicity_both_ways():
    t = time.perf_counter()
    ex = load_model("creation_example")
    corr = check_creation_corresponding(ex.target("X"), ex.target("Y"), "A", "B", 8)
    fx = load_model("creation_fixture")
    checks = lemma_assumptions(fx.target("X"), fx.target("Y"), "A", "B", 8)
    report = check_creation_mono(fx.bundle("x-to-y"), 8)
    held = sum(c.ok for c in checks)
    ok = (not corr.ok and corr.clause == 2 and corr.action == "c"
          and held == 6 and report.result == "pass")
    detail = (f"example: {corr}; fixture: {held}/6 assumptions hold, "
              f"{report.line()}")
    assert record("2", ok, detail, t, 10.0)


# ---------------------------------------------------------------- 3


def _talk1_between_switches(word) -> bool:
    inside = False
    for x in word:
        if x == "switch1":
            inside = True
        elif x == "switch2":
            inside = False
        elif x == "talk1" and inside:
            return True
    return False


@pytest.fixture(scope="module")
def phone_words():
    t = time.perf_counter()
    words = enumerate_traces(load_model("mobile_phone").target("Phone"), 12, True)
    return words, time.perf_counter() - t


def test_phone_never_talks_on_the_old_channel(phone_words):
    t = time.perf_counter()
    words, spent = phone_words
    bad = [w for w in words if _talk1_between_switches(w)]
    shortest = word_text(min(bad, key=lambda w: (len(w), w))) if bad else "none"
    detail = (f"{len(bad)} of {len(words)} words put talk1 between switch1 and "
              f"switch2, shortest {shortest}")
    assert record("3 (part 1)", not bad, detail, t - spent, 30.0)


def test_phone_handover_prefix(phone_words):
    t = time.perf_counter()
    words, spent = phone_words
    prefix = ("lose1", "switch1", "gain2", "talk2")
    found = any(w[:4] == prefix for w in words)
    assert record("3 (part 2)", found, f"prefix {word_text(prefix)} "
                  f"{'found' if found else 'missing'}", t - spent, 30.0)


# ---------------------------------------------------------------- 4


def test_theorem_property_suite():
    t = time.perf_counter()
    counts = {}
    failures = []
    for theorem in THEOREMS:
        if theorem == "creation-mono":
            continue
        c = Counter()
        for seed in range(200):
            report = check_theorem(theorem, random_bundle(seed, theorem), 6)
            c[report.result] += 1
            if report.result == "fail":
                failures.append(f"{theorem} seed {seed}: {report.witness}")
        counts[theorem] = c
    vacuous_ok = all(c["vacuous"] < 0.3 * 200 for c in counts.values())
    detail = ", ".join(f"{k} {c['pass']}/{c['vacuous']}/{c['fail']}" for k, c in counts.items())
    detail = "pass/vacuous/fail per theorem: " + detail
    if failures:
        detail += "; first failure " + failures[0]
    assert record("4", not failures and vacuous_ok, detail, t, 120.0)


# ---------------------------------------------------------------- 5


def _closure_application(rng: random.Random, op: str):
    if op in ("compose_sioa", "hide_sioa", "rename_sioa"):
        comps, _ = random_family(rng)
        if op == "compose_sioa":
            return op, validate_sioa(compose_sioa(comps))
        a = rng.choice(comps)
        if op == "hide_sioa":
            return op, validate_sioa(hide_sioa(a, rng.sample(sorted(a.acts()), len(a.acts()) // 2)))
        return op, validate_sioa(rename_sioa(a, random_renaming(rng, a.acts())))
    g0, g1 = random_member_pool(rng)
    x = random_config_automaton(rng, g0, "X")
    if op == "generate_ca":
        return op, validate_ca(x)
    if op == "compose_ca":
        return op, validate_ca(compose_ca([x, random_config_automaton(rng, g1, "Y")]))
    if op == "hide_ca":
        outs = sorted(set().union(*(x.underlying.sig[s].outputs for s in x.underlying.states)))
        return op, validate_ca(hide_ca(x, rng.sample(outs, len(outs) // 2)))
    acts = set(x.underlying.acts())
    for k in x.member_ids():
        acts |= x.registry[k].acts()
    return op, validate_ca(rename_ca(x, random_renaming(rng, acts)))


def test_operator_closure_suite():
    t = time.perf_counter()
    ops = ("compose_sioa", "hide_sioa", "rename_sioa", "generate_ca", "compose_ca",
           "hide_ca", "rename_ca")
    rng = random.Random(2024)
    applied = Counter()
    failed = []
    for i in range(500):
        op, report = _closure_application(rng, ops[i % len(ops)])
        applied[op] += 1
        if not report.ok:
            failed.append(f"{op} #{i}: {report.violations[0]}")
    detail = f"{sum(applied.values())} applications, {len(failed)} failures"
    if failed:
        detail += "; first " + failed[0]
    assert record("5", not failed, detail, t)


# ---------------------------------------------------------------- 6


def test_zip_search_against_brute_force():
    t = time.perf_counter()
    compared = 0
    disagreements = []
    for seed in range(200):
        comps, _ = random_family(random.Random(seed))
        composite = enumerate_traces(compose_sioa(comps), 3)
        pools = [enumerate_traces(c, 3) for c in comps]
        for beta in composite:
            budget = 5 - len(beta) - (len(comps) - 1)
            if budget < 1:
                continue
            for parts in _bounded_products(pools, 5 - len(beta)):
                compared += 1
                if zip_check(beta, parts) != zip_check_brute(beta, parts):
                    disagreements.append((seed, beta, parts))
    assert record("6", not disagreements and compared > 0,
                  f"{compared} tuples of total length <= 5, {len(disagreements)} disagreements", t)


def _bounded_products(pools, total):
    if not pools:
        yield ()
        return
    head, rest = pools[0], pools[1:]
    for p in head:
        if len(p) + len(rest) <= total:
            for tail in _bounded_products(rest, total - len(p)):
                yield (p,) + tail


# ---------------------------------------------------------------- 7


def test_travel_agent():
    t = time.perf_counter()
    m = load_model("travel_agent")
    hidden = trace_inclusion(m.target("ImplHidden"), m.target("SpecHidden"), 10, actions_only=True)
    bundle = m.bundle("heuristic")
    corr = check_creation_corresponding(bundle.x, bundle.y, bundle.old, bundle.new, 10)
    inc = trace_inclusion(bundle.x, bundle.y, 10)
    ok = hidden.ok and corr.ok and inc.ok
    detail = (f"hidden Impl in hidden Spec: {'holds' if hidden.ok else hidden.witness_text()}; "
              f"Impl' {corr}; Impl' in Impl: {'holds' if inc.ok else inc.witness_text()}")
    assert record("7", ok, detail, t, 60.0)


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
