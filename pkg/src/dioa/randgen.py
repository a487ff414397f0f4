"""Seeded random automata and families for the property suites.

Families are compatible by construction: each action has at most one owner,
only the owner may use it as an output or internal action, and an action the
owner uses internally is never used by anyone else.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .automata import ConfigAutomaton, CreationPolicy, CreationRule, generate_ca
from .config import Configuration
from .core import Signature, Sioa, make_sioa
from .explorer import FamilyBundle

ACTIONS = ("a", "b", "c", "d")


@dataclass(frozen=True)
class Ownership:
    owner: dict  # action -> component index or None for the environment
    internal: frozenset  # actions their owner keeps internal


def random_ownership(rng: random.Random, n: int, actions=ACTIONS) -> Ownership:
    owner = {}
    internal = set()
    for x in actions:
        o = rng.randrange(n + 1)
        owner[x] = None if o == n else o
        if owner[x] is not None and rng.random() < 0.25:
            internal.add(x)
    return Ownership(owner, frozenset(internal))


def _random_signature(rng, idx, own: Ownership) -> Signature:
    ins, outs, ints = set(), set(), set()
    for x, o in own.owner.items():
        if o == idx:
            if rng.random() < 0.7:
                (ints if x in own.internal else outs).add(x)
        elif x not in own.internal and rng.random() < 0.4:
            ins.add(x)
    return Signature.of(ins, outs, ints)


def random_sioa(rng: random.Random, aut_id: str, idx: int, own: Ownership,
                max_states: int = 4, max_steps: int = 6) -> Sioa:
    n = rng.randint(1, max_states)
    states = [f"{aut_id.lower()}{i}" for i in range(n)]
    sig = {s: _random_signature(rng, idx, own) for s in states}
    steps: set = set()
    # input enabling first; drop inputs that do not fit in the step budget
    for s in states:
        for x in sorted(sig[s].inputs):
            if len(steps) < max_steps:
                steps.add((s, x, rng.choice(states)))
            else:
                g = sig[s]
                sig[s] = Signature(g.inputs - {x}, g.outputs, g.internals)
    extra = rng.randint(0, max_steps - len(steps))
    for _ in range(extra):
        s = rng.choice(states)
        local = sorted(sig[s].locally_controlled())
        if local:
            steps.add((s, rng.choice(local), rng.choice(states)))
    starts = {states[0]}
    if n > 1 and rng.random() < 0.2:
        starts.add(rng.choice(states[1:]))
    return make_sioa(aut_id, states, starts, sig, steps)


def random_family(rng: random.Random, max_components: int = 3, **kw) -> tuple[list, Ownership]:
    n = rng.randint(1, max_components)
    own = random_ownership(rng, n)
    return [random_sioa(rng, f"P{i}", i, own, **kw) for i in range(n)], own


def enlarge(rng: random.Random, a: Sioa, idx: int, own: Ownership, extra: int = 2) -> Sioa:
    """A variant with every behavior of ``a`` plus possibly more.

    Adds locally controlled steps and sometimes a fresh state reached by one.
    """
    states = list(a.states)
    sig = dict(a.sig)
    steps = set(a.steps)
    if rng.random() < 0.5:
        fresh = f"{a.aut_id.lower()}x"
        g = _random_signature(rng, idx, own)
        g = Signature(frozenset(), g.outputs, g.internals)  # no inputs, nothing to enable
        sources = [s for s in states if sig[s].locally_controlled()]
        if sources:
            s = rng.choice(sources)
            states.append(fresh)
            sig[fresh] = g
            steps.add((s, rng.choice(sorted(sig[s].locally_controlled())), fresh))
            for x in sorted(g.locally_controlled()):
                if rng.random() < 0.5:
                    steps.add((fresh, x, rng.choice(states)))
    for _ in range(extra):
        s = rng.choice(states)
        acts = sorted(sig[s].actions())
        if acts:
            steps.add((s, rng.choice(acts), rng.choice(states)))
    return make_sioa(a.aut_id, states, a.starts, sig, steps)


def split_state(rng: random.Random, a: Sioa) -> Sioa:
    """A trace-equivalent variant: one state gets a clone sharing its outgoing steps."""
    s = rng.choice(a.states)
    clone = f"{s}~"
    states = list(a.states) + [clone]
    sig = dict(a.sig)
    sig[clone] = a.sig[s]
    steps = set(a.steps)
    for x, t in a.successors(s):
        steps.add((clone, x, t))
    for p, x, t in a.steps:
        if t == s and rng.random() < 0.5:
            steps.add((p, x, clone))
            if rng.random() < 0.5:
                steps.discard((p, x, t))
    starts = set(a.starts)
    if s in starts and rng.random() < 0.5:
        starts = (starts - {s}) | {clone}
    return make_sioa(a.aut_id, states, starts, sig, steps)


def random_renaming(rng: random.Random, acts) -> dict:
    acts = sorted(acts)
    images = [f"{x}'" for x in acts]
    rng.shuffle(images)
    return dict(zip(acts, images))


def random_bundle(seed: int, theorem: str | None = None) -> FamilyBundle:
    """A random family with replacement components suited to ``theorem``."""
    rng = random.Random(seed)
    comps, own = random_family(rng)
    if theorem == "congruence":
        alts = [split_state(rng, c) for c in comps]
    else:
        alts = [enlarge(rng, c, i, own) for i, c in enumerate(comps)]
    hidden = frozenset(x for x in ACTIONS if rng.random() < 0.5)
    acts = set()
    for c in comps + alts:
        acts |= c.acts()
    return FamilyBundle(comps, alts, hidden, random_renaming(rng, acts), seed)


def random_member_pool(rng: random.Random, groups: int = 2, per_group: int = 2) -> list:
    """Member automata for configuration automata, one id prefix per group.

    All members share one ownership, so any mix of them is compatible.
    """
    n = groups * per_group
    own = random_ownership(rng, n)
    autos = [random_sioa(rng, f"M{g}{k}", g * per_group + k, own)
             for g in range(groups) for k in range(per_group)]
    return [autos[g * per_group:(g + 1) * per_group] for g in range(groups)]


def random_config_automaton(rng: random.Random, members: list, aut_id: str = "X",
                            depth: int = 3, rules: int = 3) -> ConfigAutomaton:
    """A generated configuration automaton over ``members`` with a random creation policy.

    Rules are drawn from (configuration, action) pairs that actually occur
    without creation, so most of them fire.
    """
    reg = {a.aut_id: a for a in members}
    live = [a for a in members if not a.sig[min(a.starts)].is_empty()]
    chosen = rng.sample(live, rng.randint(1, len(live))) if live else []
    init = Configuration.of(reg, {a.aut_id: min(a.starts) for a in chosen})
    probe = generate_ca([init], CreationPolicy(), reg, depth, aut_id)
    pairs = sorted((s, x) for s in probe.underlying.states
                   for x in probe.underlying.sig[s].actions())
    picked = []
    for s, x in rng.sample(pairs, min(rules, len(pairs))):
        create = frozenset(rng.sample(sorted(reg), rng.randint(1, len(reg))))
        picked.append(CreationRule(probe.config(s).ids, x, create))
    return generate_ca([init], CreationPolicy(tuple(picked)), reg, depth, aut_id)
