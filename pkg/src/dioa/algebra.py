"""Composition, hiding and renaming of signatures and automata."""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from .core import ModelError, Signature, Sioa, state_text


class IncompatibleError(ModelError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def signature_conflict(sigs: Sequence[Signature]) -> tuple[int, int] | None:
    """First pair of positions whose signatures clash, or None."""
    for i, j in itertools.combinations(range(len(sigs)), 2):
        x, y = sigs[i], sigs[j]
        if x.actions() & y.internals or y.actions() & x.internals:
            return i, j
        if x.outputs & y.outputs:
            return i, j
    return None


def compatible_signatures(sigs: Sequence[Signature]) -> bool:
    return signature_conflict(sigs) is None


def compose_signatures(sigs: Sequence[Signature]) -> Signature:
    clash = signature_conflict(sigs)
    if clash is not None:
        i, j = clash
        raise IncompatibleError(f"signatures {i} and {j} are incompatible: {sigs[i]} vs {sigs[j]}", clash)
    ins = frozenset().union(*(g.inputs for g in sigs)) if sigs else frozenset()
    outs = frozenset().union(*(g.outputs for g in sigs)) if sigs else frozenset()
    ints = frozenset().union(*(g.internals for g in sigs)) if sigs else frozenset()
    return Signature(ins - outs, outs, ints)


def incompatible_tuple(autos: Sequence[Sioa]):
    """A state tuple whose signatures clash, scanning the full product."""
    # group states by signature so the product is over distinct signatures only
    buckets = []
    for a in autos:
        by_sig: dict = {}
        for s in a.states:
            by_sig.setdefault(a.sig[s], s)
        buckets.append(list(by_sig.items()))
    for combo in itertools.product(*buckets):
        if not compatible_signatures([g for g, _ in combo]):
            return tuple(s for _, s in combo)
    return None


def compatible_sioa(autos: Sequence[Sioa]) -> bool:
    return incompatible_tuple(autos) is None


def compose_sioa(autos: Sequence[Sioa], aut_id: str | None = None) -> Sioa:
    """Synchronized product over the full state product."""
    if not autos:
        raise ValueError("composition needs at least one automaton")
    bad = incompatible_tuple(autos)
    if bad is not None:
        raise IncompatibleError(
            "incompatible at " + "(" + ",".join(state_text(s) for s in bad) + ")", bad)
    states = list(itertools.product(*(a.states for a in autos)))
    sig = {x: compose_signatures([a.sig[s] for a, s in zip(autos, x)]) for x in states}
    starts = frozenset(itertools.product(*(sorted(a.starts, key=state_text) for a in autos)))
    steps = set()
    for x in states:
        for act in sorted(sig[x].actions()):
            options = []
            for a, s in zip(autos, x):
                if act in a.sig[s].actions():
                    options.append([t for b, t in a.successors(s) if b == act])
                else:
                    options.append([s])
            for y in itertools.product(*options):
                steps.add((x, act, y))
    name = aut_id or "||".join(a.aut_id for a in autos)
    return Sioa(name, tuple(states), starts, sig, frozenset(steps), tuple(autos))


def hide_signature(g: Signature, hidden: Iterable[str]) -> Signature:
    h = frozenset(hidden)
    return Signature(g.inputs, g.outputs - h, g.internals | (g.outputs & h))


def hide_sioa(a: Sioa, hidden: Iterable[str], aut_id: str | None = None) -> Sioa:
    h = frozenset(hidden)
    sig = {s: hide_signature(g, h) for s, g in a.sig.items()}
    return Sioa(aut_id or a.aut_id, a.states, a.starts, sig, a.steps, a.components)


def check_renaming(mapping: Mapping[str, str], acts: Iterable[str] = ()) -> None:
    images = list(mapping.values())
    if len(set(images)) != len(images):
        seen: dict = {}
        for k in sorted(mapping):
            v = mapping[k]
            if v in seen:
                raise ModelError(f"renaming is not injective: {seen[v]} and {k} both map to {v}")
            seen[v] = k
    missing = sorted(set(acts) - set(mapping))
    if missing:
        raise ModelError("renaming does not cover: " + ", ".join(missing))


def rename_signature(g: Signature, mapping: Mapping[str, str]) -> Signature:
    return Signature(frozenset(mapping[x] for x in g.inputs),
                     frozenset(mapping[x] for x in g.outputs),
                     frozenset(mapping[x] for x in g.internals))


def rename_sioa(a: Sioa, mapping: Mapping[str, str], aut_id: str | None = None) -> Sioa:
    check_renaming(mapping, a.acts())
    sig = {s: rename_signature(g, mapping) for s, g in a.sig.items()}
    steps = frozenset((s, mapping[x], t) for s, x, t in a.steps)
    return Sioa(aut_id or a.aut_id, a.states, a.starts, sig, steps)


def index_swap(acts: Iterable[str], left: str = "1", right: str = "2") -> dict[str, str]:
    """Renaming that exchanges a trailing index, e.g. ``talk1`` <-> ``talk2``."""
    out = {}
    for x in acts:
        if x.endswith(left):
            out[x] = x[: -len(left)] + right
        elif x.endswith(right):
            out[x] = x[: -len(right)] + left
        else:
            out[x] = x
    return out
