"""Configurations: live automata paired with local states, and their intrinsic transitions."""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .algebra import IncompatibleError
from .core import ModelError, Signature, Sioa, State, state_key, state_text

Registry = Mapping[str, Sioa]


@dataclass(frozen=True)
class Configuration:
    """Sorted (automaton id, state) pairs; the registry resolves ids to automata."""

    members: tuple = ()
    registry: Registry = field(default_factory=dict, compare=False, repr=False, hash=False)

    @classmethod
    def of(cls, registry: Registry, pairs: Mapping[str, State] | Iterable) -> "Configuration":
        items = pairs.items() if isinstance(pairs, Mapping) else pairs
        members = tuple(sorted(((k, v) for k, v in items), key=lambda kv: kv[0]))
        ids = [k for k, _ in members]
        if len(set(ids)) != len(ids):
            raise ModelError("configuration lists an automaton twice")
        for k, s in members:
            if k not in registry:
                raise ModelError(f"unknown automaton {k!r}")
            if s not in registry[k].state_set:
                raise ModelError(f"{state_text(s)} is not a state of {k}")
        return cls(members, registry)

    @property
    def ids(self) -> frozenset:
        return frozenset(k for k, _ in self.members)

    def state_of(self, aut_id: str) -> State | None:
        for k, s in self.members:
            if k == aut_id:
                return s
        return None

    def sig_of(self, aut_id: str) -> Signature:
        return self.registry[aut_id].sig[self.state_of(aut_id)]

    def replace(self, pairs: Mapping[str, State]) -> "Configuration":
        return Configuration.of(self.registry, pairs)

    def as_dict(self) -> dict:
        return dict(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return "[" + ", ".join(f"{k}@{state_text(s)}" for k, s in self.members) + "]"


def config_text(c: Configuration) -> str:
    return str(c)


def config_conflict(c: Configuration) -> tuple | None:
    sigs = [(k, c.registry[k].sig[s]) for k, s in c.members]
    for (i, x), (j, y) in itertools.combinations(sigs, 2):
        if x.actions() & y.internals or y.actions() & x.internals or x.outputs & y.outputs:
            return i, j
    return None


def config_compatible(c: Configuration) -> bool:
    return config_conflict(c) is None


def intrinsic_signature(c: Configuration) -> Signature:
    clash = config_conflict(c)
    if clash is not None:
        raise IncompatibleError(f"configuration {c} is incompatible: {clash[0]} vs {clash[1]}", clash)
    ins, outs, ints = set(), set(), set()
    for k, s in c.members:
        g = c.registry[k].sig[s]
        ins |= g.inputs
        outs |= g.outputs
        ints |= g.internals
    return Signature(frozenset(ins - outs), frozenset(outs), frozenset(ints))


def reduce_config(c: Configuration) -> Configuration:
    kept = tuple((k, s) for k, s in c.members if not c.registry[k].sig[s].is_empty())
    return Configuration(kept, c.registry)


def is_reduced(c: Configuration) -> bool:
    return reduce_config(c) == c


def intrinsic_successors(c: Configuration, a: str, created: Iterable[str] = (),
                         registry: Registry | None = None) -> list:
    """Every configuration reachable from ``c`` by ``a`` while creating ``created``.

    Returned in canonical order. Candidates whose intermediate configuration is
    incompatible are dropped; survivors are reduced.
    """
    reg = registry if registry is not None else c.registry
    phi = frozenset(created)
    for k in sorted(phi):
        if k not in reg:
            raise ModelError(f"create set names unknown automaton {k!r}")
    if a not in intrinsic_signature(c).actions():
        return []
    choices = []
    for k, s in c.members:
        g = reg[k].sig[s]
        if a in g.actions():
            choices.append([(k, t) for x, t in reg[k].successors(s) if x == a])
        else:
            choices.append([(k, s)])
    for k in sorted(phi - c.ids):
        choices.append([(k, s0) for s0 in sorted(reg[k].starts, key=state_key)])
    out = {}
    for combo in itertools.product(*choices):
        mid = Configuration(tuple(sorted(combo)), reg)
        if not config_compatible(mid):
            continue
        d = reduce_config(mid)
        out[str(d)] = d
    return [out[k] for k in sorted(out)]


def destruction_warnings(a: Sioa) -> list:
    """(state, action) pairs whose targets mix empty and non-empty signatures."""
    found = []
    for s in a.states:
        by_action: dict = {}
        for x, t in a.successors(s):
            by_action.setdefault(x, set()).add(a.sig[t].is_empty())
        for x in sorted(by_action):
            if len(by_action[x]) > 1:
                found.append((s, x))
    return found


def warn_destruction(a: Sioa) -> list:
    found = destruction_warnings(a)
    for s, x in found:
        warnings.warn(f"{a.aut_id}: {x} from {state_text(s)} may or may not destroy the automaton",
                      stacklevel=2)
    return found
