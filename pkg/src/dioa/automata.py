"""Configuration automata: generation, validation, composition, hiding, renaming."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .algebra import (IncompatibleError, check_renaming, compatible_signatures,
                      compose_sioa, hide_sioa, rename_sioa)
from .config import (Configuration, Registry, config_compatible, intrinsic_signature,
                     intrinsic_successors, is_reduced)
from .core import (ModelError, Signature, Sioa, State, ValidationReport, Violation,
                   state_key, state_text, validate_sioa)


@dataclass(frozen=True)
class CreationRule:
    """Create ``create`` when ``action`` runs in a configuration with exactly ``members``.

    ``state_constraints`` optionally restricts members to listed local states.
    """

    members: frozenset
    action: str
    create: frozenset
    state_constraints: Mapping = field(default_factory=dict, hash=False)

    def matches(self, c: Configuration, a: str) -> bool:
        if a != self.action or c.ids != self.members:
            return False
        for k, allowed in self.state_constraints.items():
            if c.state_of(k) not in allowed:
                return False
        return True


@dataclass(frozen=True)
class CreationPolicy:
    rules: tuple = ()

    def created(self, c: Configuration, a: str) -> frozenset:
        out: frozenset = frozenset()
        for r in self.rules:
            if r.matches(c, a):
                out |= r.create
        return out

    def mentioned(self) -> frozenset:
        out: set = set()
        for r in self.rules:
            out |= r.members | r.create | set(r.state_constraints)
        return frozenset(out)


@dataclass(frozen=True)
class ConfigAutomaton:
    underlying: Sioa
    config_map: Mapping
    created_map: Mapping  # (state, action) -> frozenset of ids, empty sets omitted
    registry: Registry
    frontier: frozenset = frozenset()

    @property
    def aut_id(self) -> str:
        return self.underlying.aut_id

    def config(self, x: State) -> Configuration:
        return self.config_map[x]

    def created(self, x: State, a: str) -> frozenset:
        return self.created_map.get((x, a), frozenset())

    def member_ids(self) -> frozenset:
        out: set = set()
        for c in self.config_map.values():
            out |= c.ids
        for phi in self.created_map.values():
            out |= phi
        return frozenset(out)


def generate_ca(initial: Iterable[Configuration], policy: CreationPolicy, registry: Registry,
                depth: int | None = None, aut_id: str = "X", max_states: int = 200_000) -> ConfigAutomaton:
    """Canonical automaton over configurations reachable from ``initial``.

    Breadth-first up to ``depth`` layers (``None`` explores to closure). One
    state per configuration, named by its canonical text. Unexpanded states
    are marked as frontier.
    """
    unknown = sorted(policy.mentioned() - set(registry))
    if unknown:
        raise ModelError("policy references unknown automata: " + ", ".join(unknown))
    starts = []
    for c in initial:
        c = Configuration(c.members, registry)
        for k, s in c.members:
            if k not in registry:
                raise ModelError(f"unknown automaton {k!r} in initial configuration")
            if s not in registry[k].starts:
                raise ModelError(f"initial configuration puts {k} in non-start state {state_text(s)}")
        if not is_reduced(c) or not config_compatible(c):
            raise ModelError(f"initial configuration {c} is not reduced and compatible")
        starts.append(c)
    if not starts:
        raise ModelError("no initial configuration")
    configs: dict = {}
    layer: dict = {}
    queue: deque = deque()
    for c in starts:
        x = str(c)
        if x not in configs:
            configs[x] = c
            layer[x] = 0
            queue.append(x)
    steps = set()
    created: dict = {}
    frontier = set()
    while queue:
        x = queue.popleft()
        c = configs[x]
        if depth is not None and layer[x] >= depth:
            frontier.add(x)
            continue
        for a in sorted(intrinsic_signature(c).actions()):
            phi = policy.created(c, a)
            if phi:
                created[(x, a)] = phi
            for d in intrinsic_successors(c, a, phi, registry):
                y = str(d)
                if y not in configs:
                    if len(configs) >= max_states:
                        raise ModelError(f"configuration automaton exceeds {max_states} states")
                    configs[y] = d
                    layer[y] = layer[x] + 1
                    queue.append(y)
                steps.add((x, a, y))
    states = tuple(sorted(configs))
    sig = {x: intrinsic_signature(configs[x]) for x in states}
    under = Sioa(aut_id, states, frozenset(str(c) for c in starts), sig, frozenset(steps))
    return ConfigAutomaton(under, configs, created, registry, frozenset(frontier))


def validate_ca(x: ConfigAutomaton) -> ValidationReport:
    """Constraints 1-4 of configuration automata, skipping completeness at the frontier."""
    a = x.underlying
    found = list(validate_sioa(a, skip_enabling=x.frontier).violations)
    for s in a.states:
        if s not in x.config_map:
            found.append(Violation("STRUCT", state_text(s), "no configuration"))
    if found:
        return ValidationReport(tuple(found))
    for s in a.states:
        c = x.config(s)
        if not config_compatible(c):
            found.append(Violation("STRUCT", state_text(s), f"configuration {c} is incompatible"))
        elif not is_reduced(c):
            found.append(Violation("STRUCT", state_text(s), f"configuration {c} is not reduced"))
    for (s, act), phi in sorted(x.created_map.items(), key=lambda kv: (state_key(kv[0][0]), kv[0][1])):
        if s not in a.state_set or act not in a.sig[s].actions():
            found.append(Violation("STRUCT", f"({state_text(s)},{act})", "created entry outside the signature"))
        for k in sorted(phi):
            if k not in x.registry:
                found.append(Violation("STRUCT", f"({state_text(s)},{act})", f"creates unknown {k}"))
    if found:
        return ValidationReport(tuple(found))
    for s in sorted(a.starts, key=state_key):
        for k, local in x.config(s).members:
            if local not in x.registry[k].starts:
                found.append(Violation("CA1", state_text(s), f"{k} not in a start state"))
    succ_cache: dict = {}

    def successors(s, act):
        key = (s, act)
        if key not in succ_cache:
            succ_cache[key] = intrinsic_successors(x.config(s), act, x.created(s, act), x.registry)
        return succ_cache[key]

    for s, act, t in sorted(a.steps, key=lambda z: (state_key(z[0]), z[1], state_key(z[2]))):
        if x.config(t) not in successors(s, act):
            found.append(Violation("CA2", f"({state_text(s)},{act},{state_text(t)})",
                                   "step is not an intrinsic transition"))
    for s in a.states:
        c = x.config(s)
        ic = intrinsic_signature(c)
        if s not in x.frontier:
            for act in sorted(ic.actions()):
                reached = {x.config(t) for b, t in a.successors(s) if b == act}
                for d in successors(s, act):
                    if d not in reached:
                        found.append(Violation("CA3", f"({state_text(s)},{act})",
                                               f"no step to {d}"))
        g = a.sig[s]
        if not g.outputs <= ic.outputs:
            found.append(Violation("CA4a", state_text(s), "output not in the configuration"))
        if g.inputs != ic.inputs:
            found.append(Violation("CA4b", state_text(s), "inputs differ from the configuration"))
        if not g.internals >= ic.internals:
            found.append(Violation("CA4c", state_text(s), "internal action of the configuration missing"))
        if g.outputs | g.internals != ic.outputs | ic.internals:
            found.append(Violation("CA4d", state_text(s), "locally controlled actions differ"))
    return ValidationReport(tuple(found))


def _merge_registries(cas) -> dict:
    reg: dict = {}
    for x in cas:
        for k, aut in x.registry.items():
            if k in reg and reg[k] != aut:
                raise ModelError(f"registries disagree on automaton {k!r}")
            reg[k] = aut
    return reg


def union_config(configs, registry) -> Configuration:
    pairs = []
    for c in configs:
        pairs.extend(c.members)
    return Configuration(tuple(sorted(pairs)), registry)


def ca_conflict(cas) -> tuple | None:
    """First (clause, state tuple) violating compatibility of configuration automata."""
    reg = _merge_registries(cas)
    for combo in itertools.product(*(x.underlying.states for x in cas)):
        cs = [x.config(s) for x, s in zip(cas, combo)]
        for i, j in itertools.combinations(range(len(cas)), 2):
            if cs[i].ids & cs[j].ids:
                return 1, combo
        u = union_config(cs, reg)
        if not is_reduced(u) or not config_compatible(u):
            return 2, combo
        sigs = [x.underlying.sig[s] for x, s in zip(cas, combo)]
        if not compatible_signatures(sigs):
            return 3, combo
        for i, j in itertools.combinations(range(len(cas)), 2):
            shared = sigs[i].actions() & sigs[j].actions()
            for act in shared:
                if cas[i].created(combo[i], act) & cas[j].created(combo[j], act):
                    return 4, combo
    return None


def compose_ca(cas, aut_id: str | None = None) -> ConfigAutomaton:
    cas = list(cas)
    if not cas:
        raise ValueError("composition needs at least one configuration automaton")
    bad = ca_conflict(cas)
    if bad is not None:
        clause, combo = bad
        raise IncompatibleError(f"clause {clause} fails at "
                                + "(" + ",".join(state_text(s) for s in combo) + ")", bad)
    reg = _merge_registries(cas)
    under = compose_sioa([x.underlying for x in cas], aut_id)
    config_map = {}
    created = {}
    for s in under.states:
        config_map[s] = union_config([x.config(t) for x, t in zip(cas, s)], reg)
        for act in under.sig[s].actions():
            phi: frozenset = frozenset()
            for x, t in zip(cas, s):
                if act in x.underlying.sig[t].actions():
                    phi |= x.created(t, act)
            if phi:
                created[(s, act)] = phi
    frontier = frozenset(s for s in under.states
                         if any(t in x.frontier for x, t in zip(cas, s)))
    return ConfigAutomaton(under, config_map, created, reg, frontier)


def hide_ca(x: ConfigAutomaton, hidden: Iterable[str]) -> ConfigAutomaton:
    return ConfigAutomaton(hide_sioa(x.underlying, hidden), x.config_map, x.created_map,
                           x.registry, x.frontier)


def rename_ca(x: ConfigAutomaton, mapping: Mapping[str, str],
              id_map: Mapping[str, str] | None = None, aut_id: str | None = None) -> ConfigAutomaton:
    """Rename actions of ``x`` and of every automaton it can contain.

    ``id_map`` names the renamed member automata (default: unchanged ids).
    """
    members = x.member_ids()
    acts = set(x.underlying.acts())
    for k in members:
        acts |= x.registry[k].acts()
    check_renaming(mapping, acts)
    ids = {k: (id_map or {}).get(k, k) for k in members}
    if len(set(ids.values())) != len(ids):
        raise ModelError("automaton id mapping is not injective")
    # the renamed automaton's registry holds exactly the renamed members
    reg = {ids[k]: rename_sioa(x.registry[k], mapping, ids[k]) for k in members}
    config_map = {s: Configuration(tuple(sorted((ids[k], t) for k, t in c.members)), reg)
                  for s, c in x.config_map.items()}
    created = {(s, mapping[act]): frozenset(ids[k] for k in phi)
               for (s, act), phi in x.created_map.items()}
    return ConfigAutomaton(rename_sioa(x.underlying, mapping, aut_id), config_map, created,
                           reg, x.frontier)


def ca_text(x: ConfigAutomaton) -> str:
    """Readable listing: states with their configuration and created sets."""
    lines = [f"automaton {x.aut_id}"]
    a = x.underlying
    for s in a.states:
        mark = " frontier" if s in x.frontier else ""
        start = " start" if s in a.starts else ""
        lines.append(f"state {state_text(s)}{start}{mark}")
        lines.append(f"  config: {x.config(s)}")
        lines.append(f"  sig: {a.sig[s]}")
        for act in sorted(a.sig[s].actions()):
            phi = x.created(s, act)
            if phi:
                lines.append(f"  created: {act} -> {{{', '.join(sorted(phi))}}}")
        for act, t in a.successors(s):
            lines.append(f"  {act} -> {state_text(t)}")
    return "\n".join(lines)
