"""Signatures, signature I/O automata and their well-formedness checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping

State = Hashable
Step = tuple  # (source, action, target)


def _fs(items: Iterable[str] = ()) -> frozenset[str]:
    return frozenset(items)


def state_text(s: State) -> str:
    """Canonical text for a state id; composite states print as ``(a,b)``."""
    if isinstance(s, tuple):
        return "(" + ",".join(state_text(x) for x in s) + ")"
    return str(s)


def state_key(s: State):
    # total order over mixed atomic/composite state ids
    return state_text(s)


@dataclass(frozen=True)
class ExtSig:
    """External part of a signature: the (input, output) pair."""

    inputs: frozenset[str] = frozenset()
    outputs: frozenset[str] = frozenset()

    def actions(self) -> frozenset[str]:
        return self.inputs | self.outputs

    def __str__(self) -> str:
        return "{" + ",".join(sorted(self.inputs)) + "|" + ",".join(sorted(self.outputs)) + "}"


@dataclass(frozen=True)
class Signature:
    inputs: frozenset[str] = frozenset()
    outputs: frozenset[str] = frozenset()
    internals: frozenset[str] = frozenset()

    @classmethod
    def of(cls, inputs: Iterable[str] = (), outputs: Iterable[str] = (),
           internals: Iterable[str] = ()) -> "Signature":
        return cls(_fs(inputs), _fs(outputs), _fs(internals))

    def actions(self) -> frozenset[str]:
        """All actions of the signature (input, output and internal)."""
        return self.inputs | self.outputs | self.internals

    def external(self) -> ExtSig:
        return ExtSig(self.inputs, self.outputs)

    def locally_controlled(self) -> frozenset[str]:
        return self.outputs | self.internals

    def is_disjoint(self) -> bool:
        return not (self.inputs & self.outputs or self.inputs & self.internals
                    or self.outputs & self.internals)

    def is_empty(self) -> bool:
        return not (self.inputs or self.outputs or self.internals)

    def __str__(self) -> str:
        parts = (sorted(self.inputs), sorted(self.outputs), sorted(self.internals))
        return "<" + "; ".join(",".join(p) for p in parts) + ">"


EMPTY_SIG = Signature()


@dataclass(frozen=True)
class Sioa:
    """A finite signature I/O automaton.

    ``components`` is filled in by composition so that executions of the
    result can be projected back onto the automata it was built from.
    """

    aut_id: str
    states: tuple
    starts: frozenset
    sig: Mapping[State, Signature]
    steps: frozenset
    components: tuple = field(default=(), compare=False, repr=False)

    @cached_property
    def _succ(self) -> dict:
        out: dict = {s: [] for s in self.states}
        for s, a, t in self.steps:
            out.setdefault(s, []).append((a, t))
        for s in out:
            out[s].sort(key=lambda at: (at[0], state_key(at[1])))
        return out

    @cached_property
    def state_set(self) -> frozenset:
        return frozenset(self.states)

    def successors(self, s: State) -> list:
        """(action, target) pairs leaving ``s`` in canonical order."""
        return self._succ.get(s, [])

    @cached_property
    def encoded(self) -> "Encoding":
        """Integer encoding used by the enumeration kernels."""
        index = {s: i for i, s in enumerate(self.states)}
        sig_ids: dict = {}
        sigs = []
        for s in self.states:
            g = self.ext(s)
            if g not in sig_ids:
                sig_ids[g] = len(sigs)
                sigs.append(g)
        actions = sorted({a for _, a, _ in self.steps})
        act_ids = {a: i for i, a in enumerate(actions)}
        offsets = [0]
        act, tgt, ext = [], [], []
        for s in self.states:
            g = self.sig[s]
            for a, t in self.successors(s):
                act.append(act_ids[a])
                tgt.append(index[t])
                ext.append(a in g.inputs or a in g.outputs)
            offsets.append(len(act))
        return Encoding(index, [sig_ids[self.ext(s)] for s in self.states], sigs, actions,
                        offsets, act, tgt, ext)

    def acts(self) -> frozenset[str]:
        out: set[str] = set()
        for g in self.sig.values():
            out |= g.actions()
        return frozenset(out)

    def ext(self, s: State) -> ExtSig:
        return self.sig[s].external()


@dataclass(frozen=True)
class Encoding:
    index: dict
    sigid: list
    sigs: list
    actions: list
    offsets: list
    act: list
    tgt: list
    ext: list


@dataclass(frozen=True)
class Violation:
    tag: str  # C1, C2, C3 or STRUCT
    where: object
    message: str

    def __str__(self) -> str:
        return f"{self.tag} at {self.where}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


class ModelError(ValueError):
    """Raised when a model violates a structural or semantic constraint."""

    def __init__(self, message: str, report: ValidationReport | None = None):
        super().__init__(message)
        self.report = report


def make_sioa(aut_id: str, states: Iterable[State], starts: Iterable[State],
              sig: Mapping[State, Signature], steps: Iterable[tuple]) -> Sioa:
    """Build an automaton, sorting states into canonical order."""
    st = tuple(sorted(set(states), key=state_key))
    return Sioa(aut_id, st, frozenset(starts), dict(sig), frozenset(tuple(x) for x in steps))


def validate_sioa(a: Sioa, skip_enabling: Iterable[State] = ()) -> ValidationReport:
    """Check structure and constraints C1-C3.

    States listed in ``skip_enabling`` are exempt from input enabling; the
    configuration automaton generator uses this for its exploration frontier.
    """
    found: list[Violation] = []
    states = set(a.states)
    exempt = set(skip_enabling)
    if len(states) != len(a.states):
        found.append(Violation("STRUCT", a.aut_id, "duplicate state ids"))
    if not a.starts:
        found.append(Violation("STRUCT", a.aut_id, "empty start set"))
    for s in sorted(a.starts - states, key=state_key):
        found.append(Violation("STRUCT", state_text(s), "start state not declared"))
    for s in sorted(states, key=state_key):
        if s not in a.sig:
            found.append(Violation("STRUCT", state_text(s), "no signature"))
    for s in sorted(set(a.sig) - states, key=state_key):
        found.append(Violation("STRUCT", state_text(s), "signature for undeclared state"))
    for step in sorted(a.steps, key=lambda x: (state_key(x[0]), x[1], state_key(x[2]))):
        s, act, t = step
        where = f"({state_text(s)},{act},{state_text(t)})"
        if s not in states or t not in states:
            found.append(Violation("STRUCT", where, "step references undeclared state"))
            continue
        if s in a.sig and act not in a.sig[s].actions():
            found.append(Violation("C1", where, f"{act} not in the signature of {state_text(s)}"))
    for s in sorted(states, key=state_key):
        g = a.sig.get(s)
        if g is None:
            continue
        if not g.is_disjoint():
            found.append(Violation("C3", state_text(s), f"signature sets overlap: {g}"))
        if s in exempt:
            continue
        enabled = {act for act, _ in a.successors(s)}
        for act in sorted(g.inputs - enabled):
            found.append(Violation("C2", f"({state_text(s)},{act})", "input not enabled"))
    return ValidationReport(tuple(found))


def enabled_steps(a: Sioa, s: State) -> list:
    if s not in a.state_set:
        raise KeyError(f"unknown state {state_text(s)} in {a.aut_id}")
    return list(a.successors(s))
