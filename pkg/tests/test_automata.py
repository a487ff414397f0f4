import pytest

from dioa import models
from dioa.algebra import IncompatibleError, index_swap
from dioa.automata import (ConfigAutomaton, CreationPolicy, CreationRule, ca_text, compose_ca,
                           generate_ca, hide_ca, rename_ca, validate_ca)
from dioa.config import Configuration
from dioa.core import ModelError, Signature, Sioa, make_sioa
from dioa.explorer import enumerate_traces, word_text


def single(a, depth=None, rules=(), reg=None, aut_id="X"):
    reg = reg or {a.aut_id: a}
    init = Configuration.of(reg, {a.aut_id: next(iter(a.starts))})
    return generate_ca([init], CreationPolicy(tuple(rules)), reg, depth, aut_id)


def test_one_ca_mirrors_one(one):
    x = single(one, depth=3)
    assert validate_ca(x).ok
    assert len(x.underlying.states) == 1
    assert [word_text(w) for w in enumerate_traces(x, 3, True)] == ["ε", "a", "aa", "aaa"]


def test_example_x_traces(example):
    words = {word_text(w) for w in enumerate_traces(example.target("X"), 4, True)}
    assert words == {"ε", "c", "ca", "cd", "cad", "cda"}


def test_ca_traces_are_underlying_traces(example):
    x = example.target("X")
    assert enumerate_traces(x, 5) == enumerate_traces(x.underlying, 5)


def test_policy_with_unknown_automaton(one):
    with pytest.raises(ModelError, match="unknown"):
        single(one, rules=[CreationRule(frozenset({"ONE"}), "a", frozenset({"NOPE"}))])


def test_initial_state_must_be_start():
    t1 = models.trans1()
    reg = {"Trans1": t1}
    with pytest.raises(ModelError, match="non-start"):
        generate_ca([Configuration.of(reg, {"Trans1": "t1_ind"})], CreationPolicy(), reg)


def _drop_step(x: ConfigAutomaton, step) -> ConfigAutomaton:
    a = x.underlying
    under = Sioa(a.aut_id, a.states, a.starts, a.sig, a.steps - {step})
    return ConfigAutomaton(under, x.config_map, x.created_map, x.registry, x.frontier)


def test_missing_step_is_constraint_three(example):
    x = example.target("X")
    step = min(x.underlying.steps, key=lambda z: (z[1] in x.underlying.sig[z[0]].inputs, z))
    found = [v.tag for v in validate_ca(_drop_step(x, step)).violations]
    assert "CA3" in found


def test_missing_input_is_constraint_four(phone):
    reg = {a.aut_id: a for a in models.mobile_phone()}
    x = single(reg["Trans1"], reg=reg)
    a = x.underlying
    s = sorted(a.starts)[0]
    g = a.sig[s]
    sig = dict(a.sig)
    sig[s] = Signature(g.inputs - {"gain1"}, g.outputs, g.internals)
    steps = frozenset(z for z in a.steps if not (z[0] == s and z[1] == "gain1"))
    broken = ConfigAutomaton(Sioa(a.aut_id, a.states, a.starts, sig, steps), x.config_map,
                             x.created_map, x.registry, x.frontier)
    assert "CA4b" in [v.tag for v in validate_ca(broken).violations]


def test_frontier_is_exempt(one, sink):
    t1 = models.trans1()
    x = single(t1, depth=1)
    assert x.frontier and validate_ca(x).ok


def test_compose_single_is_identity(example):
    x = example.target("X")
    c = compose_ca([x])
    assert validate_ca(c).ok
    assert len(c.underlying.states) == len(x.underlying.states)
    assert enumerate_traces(c, 4, True) == enumerate_traces(x, 4, True)


def test_compose_shared_member(example):
    x = example.target("X")
    with pytest.raises(IncompatibleError, match="clause 1"):
        compose_ca([x, x])


def test_travel_impl_with_databases(travel):
    both = travel.target("ImplWithDBs")
    assert validate_ca(both).ok


def test_hide_ca(example):
    x = example.target("X")
    assert hide_ca(x, set()).underlying == x.underlying
    h = hide_ca(x, {"a"})
    assert validate_ca(h).ok
    state = next(s for s in h.underlying.states if "a" in x.underlying.sig[s].outputs)
    assert "a" in h.underlying.sig[state].internals
    assert "a" in h.config(state).sig_of("A").outputs


def test_hidden_spec_alphabet(travel):
    spec = travel.target("SpecCAHidden")
    under = spec.underlying
    outs = set().union(*(under.sig[s].outputs for s in under.states))
    assert outs == {"response_fl_T", "response_bot_F"}
    # hiding only converts outputs, so the database replies stay visible as inputs
    words = enumerate_traces(spec, 6, True)
    seen = {x for w in words for x in w}
    assert {"request", "response_fl_T"} <= seen
    assert all(x in {"request", "response_fl_T", "response_bot_F"}
               or x.startswith(("inform_", "conf_")) for x in seen)


def test_rename_identity(example):
    x = example.target("X")
    acts = set(x.underlying.acts())
    for k in x.member_ids():
        acts |= x.registry[k].acts()
    r = rename_ca(x, {a: a for a in acts})
    assert r.underlying == x.underlying and validate_ca(r).ok


def test_rename_swaps_transmitters():
    t1 = models.trans1()
    x = single(t1)
    r = rename_ca(x, index_swap(t1.acts()), {"Trans1": "Trans2"})
    assert validate_ca(r).ok
    assert all(r.config(s).ids == {"Trans2"} for s in r.underlying.states)
    assert "talk2" in r.registry["Trans2"].acts()


def test_rename_must_be_injective(one, sink):
    reg = {"ONE": one, "SINK": sink}
    init = Configuration.of(reg, {"ONE": next(iter(one.starts)), "SINK": next(iter(sink.starts))})
    x = generate_ca([init], CreationPolicy(), reg)
    with pytest.raises(ModelError, match="injective"):
        rename_ca(x, {a: a for a in one.acts() | sink.acts()}, {"ONE": "A", "SINK": "A"})


def test_two_level_nesting(example):
    inner = example.target("X")
    member = Sioa("Inner", inner.underlying.states, inner.underlying.starts,
                  inner.underlying.sig, inner.underlying.steps)
    starter = make_sioa("Boot", ["b0", "b1"], ["b0"],
                        {"b0": Signature.of((), ["go"]), "b1": Signature()}, [("b0", "go", "b1")])
    reg = {"Inner": member, "Boot": starter}
    outer = generate_ca([Configuration.of(reg, {"Boot": "b0"})],
                        CreationPolicy((CreationRule(frozenset({"Boot"}), "go", frozenset({"Inner"})),)),
                        reg, aut_id="Outer")
    assert validate_ca(outer).ok
    words = {word_text(w) for w in enumerate_traces(outer, 5, True)}
    assert {"go·c·a·d", "go·c·d·a"} <= words


def test_ca_text_lists_created_sets(example):
    text = ca_text(example.target("X"))
    assert "created: c -> {A}" in text
