"""Executions, traces, stuttering reduction, projection and pasting, zipping."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .core import ExtSig, Sioa, State, state_text

Pretrace = tuple  # alternating ExtSig / action-name elements


@dataclass(frozen=True)
class Execution:
    """An alternating state/action sequence; ``len`` counts transitions."""

    owner: str | None
    states: tuple
    actions: tuple = ()

    def __post_init__(self):
        if len(self.states) != len(self.actions) + 1:
            raise ValueError("execution must start and end with a state")

    def __len__(self) -> int:
        return len(self.actions)

    @property
    def seq(self) -> tuple:
        out = [self.states[0]]
        for a, s in zip(self.actions, self.states[1:]):
            out += [a, s]
        return tuple(out)

    @property
    def last(self) -> State:
        return self.states[-1]

    def prefix(self, n: int) -> "Execution":
        return Execution(self.owner, self.states[: n + 1], self.actions[:n])

    def segment(self, j: int, i: int) -> "Execution":
        """Fragment from state index j to state index i."""
        return Execution(self.owner, self.states[j: i + 1], self.actions[j:i])

    def extend(self, a: str, s: State) -> "Execution":
        return Execution(self.owner, self.states + (s,), self.actions + (a,))

    def __str__(self) -> str:
        return " ".join(x if isinstance(x, str) and i % 2 else state_text(x)
                        for i, x in enumerate(self.seq))


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome that remembers which clause failed and where."""

    ok: bool
    clause: str | None = None
    index: int | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "true"
        return f"false: clause {self.clause} at {self.index}: {self.message}"


TRUE = Verdict(True)


def is_signature(x) -> bool:
    return isinstance(x, ExtSig)


def is_execution(a: Sioa, alpha: Execution, fragment: bool = False) -> bool:
    if not fragment and alpha.states[0] not in a.starts:
        return False
    if any(s not in a.state_set for s in alpha.states):
        return False
    for s, x, t in zip(alpha.states, alpha.actions, alpha.states[1:]):
        if (s, x, t) not in a.steps:
            return False
    return True


def reduce_pretrace(gamma: Iterable) -> Pretrace:
    out: list = []
    for x in gamma:
        if out and is_signature(x) and out[-1] == x:
            continue
        out.append(x)
    return tuple(out)


def stutter_equiv(g1: Iterable, g2: Iterable) -> bool:
    return reduce_pretrace(g1) == reduce_pretrace(g2)


def trace_of(a: Sioa, alpha: Execution, check: bool = True) -> Pretrace:
    """The trace of an execution (fragment) of ``a``."""
    if check and not is_execution(a, alpha, fragment=True):
        raise ValueError(f"not an execution fragment of {a.aut_id}: {alpha}")
    out = [a.ext(alpha.states[0])]
    for s, x, t in zip(alpha.states, alpha.actions, alpha.states[1:]):
        g = a.ext(s)
        if x in g.inputs or x in g.outputs:
            out.append(x)
        out.append(a.ext(t))
    return reduce_pretrace(out)


def is_pretrace(gamma: Sequence) -> bool:
    if not gamma or not is_signature(gamma[0]) or not is_signature(gamma[-1]):
        return False
    for prev, x in zip(gamma, gamma[1:]):
        if not is_signature(x):
            if not is_signature(prev) or x not in prev.actions():
                return False
    return True


def is_trace(gamma: Sequence) -> bool:
    return is_pretrace(gamma) and reduce_pretrace(gamma) == tuple(gamma)


def trace_text(beta: Iterable) -> str:
    return " ".join(str(x) for x in beta)


def parse_trace(text: str) -> Pretrace:
    out: list = []
    for tok in text.split():
        if tok.startswith("{"):
            body = tok[1:-1]
            ins, _, outs = body.partition("|")
            out.append(ExtSig(frozenset(x for x in ins.split(",") if x),
                              frozenset(x for x in outs.split(",") if x)))
        else:
            out.append(tok)
    return tuple(out)


def action_projection(beta: Iterable) -> tuple:
    return tuple(x for x in beta if isinstance(x, str))


def product_ext(parts: Iterable[ExtSig]) -> ExtSig:
    ins: set = set()
    outs: set = set()
    for g in parts:
        ins |= g.inputs
        outs |= g.outputs
    return ExtSig(frozenset(ins - outs), frozenset(outs))


def project_execution(a: Sioa, alpha: Execution, i: int) -> Execution:
    """Projection of a sequence over composite states onto component ``i``."""
    if not a.components:
        raise ValueError(f"{a.aut_id} is not a composition")
    if not 0 <= i < len(a.components):
        raise IndexError(f"component index {i} out of range")
    comp = a.components[i]
    for s, x in zip(alpha.states, alpha.actions):
        if s not in a.state_set:
            raise ValueError(f"state {state_text(s)} not in {a.aut_id}")
        if x not in a.sig[s].actions():
            raise ValueError(f"{x} not in the signature of {state_text(s)}")
    if alpha.states[-1] not in a.state_set:
        raise ValueError(f"state {state_text(alpha.states[-1])} not in {a.aut_id}")
    states = [alpha.states[0][i]]
    actions = []
    for s, x, t in zip(alpha.states, alpha.actions, alpha.states[1:]):
        if x in comp.sig[s[i]].actions():
            actions.append(x)
            states.append(t[i])
    return Execution(comp.aut_id, tuple(states), tuple(actions))


def paste_check(a: Sioa, alpha: Execution) -> Verdict:
    """Hypotheses of execution pasting; when they hold, replay ``alpha``."""
    for i, comp in enumerate(a.components):
        proj = project_execution(a, alpha, i)
        if not is_execution(comp, proj):
            return Verdict(False, "1", i, f"projection onto {comp.aut_id} is not an execution")
    for j, (s, x, t) in enumerate(zip(alpha.states, alpha.actions, alpha.states[1:]), 1):
        for i, comp in enumerate(a.components):
            if x not in comp.sig[s[i]].actions() and s[i] != t[i]:
                return Verdict(False, "2", j,
                               f"{comp.aut_id} changes state on {x} outside its signature")
    if not is_execution(a, alpha):
        raise AssertionError(f"pasting self-check failed for {alpha}")
    return TRUE


def zips_check(gamma: Sequence, parts: Sequence[Sequence]) -> Verdict:
    """Literal evaluation of the four zipping clauses (positions are 0-based)."""
    if not parts:
        raise ValueError("zipping needs at least one part")
    n = len(gamma)
    if any(len(p) != n for p in parts):
        return Verdict(False, "1", None, "length mismatch")
    for i, x in enumerate(gamma):
        if is_signature(x):
            if not all(is_signature(p[i]) for p in parts):
                return Verdict(False, "3", i, "part holds an action at a signature position")
            if product_ext([p[i] for p in parts]) != x:
                return Verdict(False, "3", i, "signature is not the product of the parts")
            if i > 0 and is_signature(gamma[i - 1]):
                moved = [j for j, p in enumerate(parts) if p[i - 1] != p[i]]
                if len(moved) > 1:
                    return Verdict(False, "4", i, f"parts {moved} change together")
        elif i > 0:
            phi = [j for j, p in enumerate(parts) if p[i] == x]
            if not phi:
                return Verdict(False, "2a", i, f"no part performs {x}")
            for j, p in enumerate(parts):
                if j in phi:
                    continue
                here = p[i]
                if not is_signature(here) or p[i - 1] != here or x in here.actions():
                    return Verdict(False, "2b", i, f"part {j} is not idle across {x}")
                # a reference past the end is treated as vacuously satisfied
                if i + 1 < n and p[i + 1] != here:
                    return Verdict(False, "2b", i, f"part {j} is not idle across {x}")
    return TRUE


def zip_check(beta: Sequence, parts: Sequence[Sequence]) -> bool:
    """Whether stutterings of ``beta`` and ``parts`` exist that zip.

    Searches over cursor tuples into the reduced sequences. A signature move
    advances ``beta`` and at most one part by one signature; an action move
    advances ``beta`` and every participant past the action.
    """
    if not parts:
        raise ValueError("zipping needs at least one part")
    beta = tuple(beta)
    parts = tuple(tuple(p) for p in parts)
    if not beta or any(not p for p in parts):
        return False
    goal = (len(beta) - 1,) + tuple(len(p) - 1 for p in parts)

    def product_ok(cur) -> bool:
        b = beta[cur[0]]
        ps = [p[c] for p, c in zip(parts, cur[1:])]
        return is_signature(b) and all(is_signature(x) for x in ps) and product_ext(ps) == b

    start = (0,) * (len(parts) + 1)
    if not product_ok(start):
        return False
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        if cur == goal:
            return True
        for nxt in _zip_moves(beta, parts, cur):
            if nxt not in seen and product_ok(nxt):
                seen.add(nxt)
                stack.append(nxt)
    return False


def _zip_moves(beta, parts, cur):
    b = cur[0]
    cs = cur[1:]
    b_sig_next = b + 1 < len(beta) and is_signature(beta[b + 1])
    # signature move: beta stutters or advances, at most one part advances
    for nb in ((b, b + 1) if b_sig_next else (b,)):
        if nb != b:
            yield (nb,) + cs
        for k, (p, c) in enumerate(zip(parts, cs)):
            if c + 1 < len(p) and is_signature(p[c + 1]):
                yield (nb,) + cs[:k] + (c + 1,) + cs[k + 1:]
    # action move
    if b + 2 < len(beta) and not is_signature(beta[b + 1]):
        a = beta[b + 1]
        able = [k for k, (p, c) in enumerate(zip(parts, cs)) if c + 2 < len(p) and p[c + 1] == a]
        idle_ok = [a not in p[c].actions() for p, c in zip(parts, cs)]
        for r in range(1, len(able) + 1):
            for phi in itertools.combinations(able, r):
                if all(idle_ok[k] for k in range(len(parts)) if k not in phi):
                    yield (b + 2,) + tuple(c + 2 if k in phi else c for k, c in enumerate(cs))


def stutterings(beta: Sequence, length: int) -> Iterable[tuple]:
    """All pretraces of exactly ``length`` elements that reduce to ``beta``."""
    beta = tuple(beta)
    sig_pos = [i for i, x in enumerate(beta) if is_signature(x)]
    extra = length - len(beta)
    if extra < 0:
        return
    for counts in _compositions(extra, len(sig_pos)):
        out = []
        reps = dict(zip(sig_pos, counts))
        for i, x in enumerate(beta):
            out.extend([x] * (1 + reps.get(i, 0)))
        yield tuple(out)


@lru_cache(maxsize=None)
def _compositions(total: int, slots: int) -> tuple:
    if slots == 0:
        return ((),) if total == 0 else ()
    out = []
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            out.append((first,) + rest)
    return tuple(out)


def zip_check_brute(beta: Sequence, parts: Sequence[Sequence], bound: int | None = None) -> bool:
    """Reference oracle: try every stuttering up to ``bound`` and test zipping literally."""
    if bound is None:
        bound = len(beta) + sum(len(p) for p in parts)
    lo = max([len(beta)] + [len(p) for p in parts])
    for length in range(lo, bound + 1):
        gammas = list(stutterings(beta, length))
        if not gammas:
            continue
        options = [list(stutterings(p, length)) for p in parts]
        if any(not o for o in options):
            continue
        for g in gammas:
            for combo in itertools.product(*options):
                if zips_check(g, combo):
                    return True
    return False
