import itertools
import random

from hypothesis import given
from hypothesis import strategies as st

from dioa.algebra import (compatible_signatures, compose_signatures, compose_sioa, hide_sioa,
                          rename_sioa)
from dioa.automata import compose_ca, hide_ca, rename_ca, validate_ca
from dioa.behavior import (Execution, is_execution, project_execution, reduce_pretrace,
                           stutter_equiv, trace_of, zip_check, zip_check_brute)
from dioa.config import (Configuration, config_compatible, intrinsic_signature,
                         intrinsic_successors, is_reduced, reduce_config)
from dioa.core import ExtSig, Signature, validate_sioa
from dioa.creation import (config_corresponds, find_RAB, project_member, seq_prefix, verify_RAB)
from dioa.explorer import enumerate_executions, enumerate_traces
from dioa.randgen import (random_config_automaton, random_family, random_member_pool,
                          random_renaming)

ACTS = ("a", "b", "c", "d", "e")
seeds = st.integers(0, 10**6)


@st.composite
def signatures(draw):
    roles = draw(st.lists(st.sampled_from("-ioh"), min_size=len(ACTS), max_size=len(ACTS)))
    pick = lambda r: [x for x, k in zip(ACTS, roles) if k == r]
    return Signature.of(pick("i"), pick("o"), pick("h"))


ext_sigs = st.builds(lambda g: g.external(), signatures())


@st.composite
def pretraces(draw):
    """Alternating signature/action sequences over a tiny alphabet, with stuttering."""
    sigs = [ExtSig(frozenset(), frozenset({"a"})), ExtSig(frozenset({"a"}), frozenset())]
    out = [draw(st.sampled_from(sigs))]
    for _ in range(draw(st.integers(0, 5))):
        if draw(st.booleans()):
            out.append(draw(st.sampled_from(sigs)))
        else:
            out += [draw(st.sampled_from("ab")), draw(st.sampled_from(sigs))]
    return tuple(out)


def family(seed):
    comps, _ = random_family(random.Random(seed))
    return comps


# ---------------------------------------------------------------- core and algebra


@given(seeds)
def test_validated_automata_are_disjoint_and_input_enabled(seed):
    for a in family(seed):
        assert validate_sioa(a).ok
        for s in a.states:
            g = a.sig[s]
            assert g.is_disjoint()
            assert all(any(x == i for x, _ in a.successors(s)) for i in g.inputs)
        assert validate_sioa(a) == validate_sioa(a)


@given(signatures(), signatures(), signatures())
def test_signature_composition_commutes_and_associates(g1, g2, g3):
    if not compatible_signatures([g1, g2, g3]):
        return
    assert compose_signatures([g1, g2]) == compose_signatures([g2, g1])
    left = compose_signatures([compose_signatures([g1, g2]), g3])
    right = compose_signatures([g1, compose_signatures([g2, g3])])
    assert left == right == compose_signatures([g1, g2, g3])


@given(seeds, st.sets(st.sampled_from("abcd")))
def test_hiding_keeps_the_action_union(seed, hidden):
    for a in family(seed):
        h = hide_sioa(a, hidden)
        assert validate_sioa(h).ok
        assert all(h.sig[s].actions() == a.sig[s].actions() for s in a.states)


@given(seeds)
def test_renaming_maps_steps_exactly(seed):
    rng = random.Random(seed)
    for a in family(seed):
        rho = random_renaming(rng, a.acts())
        r = rename_sioa(a, rho)
        assert validate_sioa(r).ok
        assert r.steps == {(s, rho[x], t) for s, x, t in a.steps}


@given(seeds)
def test_composition_validates(seed):
    assert validate_sioa(compose_sioa(family(seed))).ok


# ---------------------------------------------------------------- behavior


@given(pretraces())
def test_reduction_is_idempotent(gamma):
    assert reduce_pretrace(reduce_pretrace(gamma)) == reduce_pretrace(gamma)


@given(pretraces(), pretraces(), pretraces())
def test_stuttering_equivalence_is_an_equivalence(g1, g2, g3):
    assert stutter_equiv(g1, g1)
    assert stutter_equiv(g1, g2) == stutter_equiv(g2, g1)
    if stutter_equiv(g1, g2) and stutter_equiv(g2, g3):
        assert stutter_equiv(g1, g3)


@given(seeds)
def test_projections_are_executions(seed):
    a = compose_sioa(family(seed))
    for alpha in enumerate_executions(a, 4):
        for i, comp in enumerate(a.components):
            assert is_execution(comp, project_execution(a, alpha, i))


@given(seeds)
def test_composite_traces_zip_from_projections(seed):
    a = compose_sioa(family(seed))
    for alpha in itertools.islice(enumerate_executions(a, 4), 60):
        parts = [trace_of(c, project_execution(a, alpha, i)) for i, c in enumerate(a.components)]
        assert zip_check(trace_of(a, alpha), parts)


@given(seeds)
def test_traces_grow_with_depth(seed):
    a = compose_sioa(family(seed))
    for d in range(4):
        assert set(enumerate_traces(a, d)) <= set(enumerate_traces(a, d + 1))


def _tuples_up_to(total, composite, pools):
    for beta in composite:
        for parts in itertools.product(*pools):
            if len(beta) + sum(map(len, parts)) <= total:
                yield beta, parts


@given(seeds)
def test_zip_search_agrees_with_brute_force(seed):
    comps = family(seed)
    a = compose_sioa(comps)
    composite = enumerate_traces(a, 1)
    pools = [enumerate_traces(c, 1) for c in comps]
    for beta, parts in _tuples_up_to(5, composite, pools):
        assert zip_check(beta, parts) == zip_check_brute(beta, parts), (beta, parts)


# ---------------------------------------------------------------- configurations


def _pool(seed):
    rng = random.Random(seed)
    groups = random_member_pool(rng, 1, 3)
    return rng, {a.aut_id: a for a in groups[0]}


@given(seeds, st.data())
def test_intrinsic_successors_are_reduced_and_compatible(seed, data):
    rng, reg = _pool(seed)
    ids = sorted(reg)
    chosen = data.draw(st.sets(st.sampled_from(ids)))
    c = Configuration.of(reg, {k: rng.choice(reg[k].states) for k in chosen})
    c = reduce_config(c)
    assert reduce_config(c) == c and config_compatible(c)
    phi = frozenset(data.draw(st.sets(st.sampled_from(ids))))
    for x in sorted(intrinsic_signature(c).actions()):
        succ = intrinsic_successors(c, x, phi, reg)
        for d in succ:
            assert is_reduced(d) and config_compatible(d)
            assert d.ids <= c.ids | phi
        assert intrinsic_successors(c, x, phi & c.ids, reg) == intrinsic_successors(c, x, (), reg)


@given(seeds)
def test_configuration_automaton_operators_validate(seed):
    rng = random.Random(seed)
    g0, g1 = random_member_pool(rng)
    x = random_config_automaton(rng, g0, "X")
    y = random_config_automaton(rng, g1, "Y")
    assert validate_ca(x).ok and validate_ca(y).ok
    z = compose_ca([x, y])
    assert validate_ca(z).ok
    outs = set().union(*(z.underlying.sig[s].outputs for s in z.underlying.states))
    assert validate_ca(hide_ca(z, rng.sample(sorted(outs), len(outs) // 2))).ok
    acts = set(x.underlying.acts())
    for k in x.member_ids():
        acts |= x.registry[k].acts()
    assert validate_ca(rename_ca(x, random_renaming(rng, acts))).ok


# ---------------------------------------------------------------- creation analysis


@given(seeds)
def test_corresponding_configurations_share_external_signature(seed):
    rng, reg = _pool(seed)
    ids = sorted(reg)
    old = ids[0]
    new = old + "'"
    reg[new] = reg[old]
    others = {k: rng.choice(reg[k].states) for k in ids[1:] if rng.random() < 0.5}
    local = rng.choice(reg[old].states)
    c = Configuration.of(reg, {**others, old: local})
    d = Configuration.of(reg, {**others, new: local})
    if config_compatible(c):
        assert config_corresponds(c, d, old, new)
        assert intrinsic_signature(c).external() == intrinsic_signature(d).external()


def test_correspondence_witnesses_preserve_traces(fixture_model):
    x, y = fixture_model.target("X"), fixture_model.target("Y")
    for alpha in enumerate_executions(x, 6):
        got = find_RAB(alpha, x, y, "A", "B")
        assert verify_RAB(alpha, got.pi, got.index_map, x, y, "A", "B")
        assert trace_of(x.underlying, alpha) == trace_of(y.underlying, got.pi)


def test_member_projection_is_monotone_under_prefixes(fixture_model):
    x = fixture_model.target("X")
    for alpha in enumerate_executions(x, 6):
        full = project_member(x, alpha, "A")
        for k in range(len(alpha)):
            assert seq_prefix(project_member(x, alpha.prefix(k), "A"), full)


def test_execution_prefixes_are_executions(phone):
    a = phone.target("Phone")
    for alpha in itertools.islice(enumerate_executions(a, 5), 200):
        assert all(is_execution(a, alpha.prefix(k)) for k in range(len(alpha) + 1))
        assert isinstance(alpha, Execution)
