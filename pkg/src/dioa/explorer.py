"""Bounded enumeration of executions and traces, inclusion checks, theorem oracles."""

from __future__ import annotations

import itertools
import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import engine
from .algebra import compatible_sioa, compose_sioa, hide_sioa, rename_sioa
from .behavior import (Execution, action_projection, is_execution, paste_check,
                       product_ext, project_execution, reduce_pretrace, trace_of,
                       trace_text, zip_check)
from .core import Sioa, state_key

THEOREMS = ("projection", "pasting", "finite-trace-pasting", "substitutivity",
            "hiding-mono", "renaming-mono", "congruence", "creation-mono")


def as_sioa(m) -> Sioa:
    """The automaton behind ``m``; configuration automata expose theirs."""
    return getattr(m, "underlying", m)


def word_text(word: Sequence[str]) -> str:
    """Action sequences print by juxtaposition when every action is one character."""
    if not word:
        return "ε"
    if all(len(x) == 1 for x in word):
        return "".join(word)
    return "·".join(word)


def enumerate_executions(m, depth: int) -> Iterator[Execution]:
    """All executions with at most ``depth`` transitions, depth-first in canonical order."""
    a = as_sioa(m)
    for s0 in sorted(a.starts, key=state_key):
        stack = [Execution(a.aut_id, (s0,))]
        while stack:
            alpha = stack.pop()
            yield alpha
            if len(alpha) < depth:
                for x, t in reversed(a.successors(alpha.last)):
                    stack.append(alpha.extend(x, t))


def enumerate_traces(m, depth: int, actions_only: bool = False, pure: bool = False) -> list:
    """Traces (or action words) of executions of length <= ``depth``, canonically sorted."""
    a = as_sioa(m)
    enc = a.encoded
    starts = sorted(enc.index[s] for s in a.starts)
    builder = engine.python_trace_trie if pure else engine.trace_trie
    parent, symbol = builder(enc.offsets, enc.act, enc.tgt, enc.ext, enc.sigid, starts,
                             depth, len(enc.sigs), actions_only)
    nsig = len(enc.sigs)
    decoded: list = [None] * len(parent)
    for node, (p, sym) in enumerate(zip(parent, symbol)):
        if actions_only:
            tail = () if p < 0 else (enc.actions[sym - 1],)
        elif p < 0 or sym < nsig:
            tail = (enc.sigs[sym],)
        else:
            tail = (enc.actions[sym // nsig - 1], enc.sigs[sym % nsig])
        decoded[node] = tail if p < 0 else decoded[p] + tail
    return sorted(set(decoded), key=trace_key)


def trace_key(beta: Sequence) -> tuple:
    """Canonical order on traces and words: element-wise on their text forms."""
    return tuple(str(x) for x in beta)


def contains_trace(m, beta: Sequence) -> bool:
    """Exact (depth-unbounded) membership of a finite trace."""
    a = as_sioa(m)
    beta = reduce_pretrace(beta)
    if not beta:
        return False
    n = len(beta)
    todo = [(s, 0) for s in a.starts if a.ext(s) == beta[0]]
    seen = set(todo)
    while todo:
        s, p = todo.pop()
        if p == n - 1:
            return True
        g = a.sig[s]
        for x, t in a.successors(s):
            h = a.ext(t)
            if x in g.inputs or x in g.outputs:
                nxt = (t, p + 2) if p + 2 < n and beta[p + 1] == x and beta[p + 2] == h else None
            elif h == beta[p]:
                nxt = (t, p)
            elif p + 1 < n and beta[p + 1] == h:
                nxt = (t, p + 1)
            else:
                nxt = None
            if nxt is not None and nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return False


def contains_word(m, word: Sequence[str]) -> bool:
    """Exact membership of an external action sequence."""
    a = as_sioa(m)
    n = len(word)
    todo = [(s, 0) for s in a.starts]
    seen = set(todo)
    while todo:
        s, k = todo.pop()
        if k == n:
            return True
        g = a.sig[s]
        for x, t in a.successors(s):
            if x in g.inputs or x in g.outputs:
                nxt = (t, k + 1) if word[k] == x else None
            else:
                nxt = (t, k)
            if nxt is not None and nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return False


@dataclass(frozen=True)
class Inclusion:
    """Outcome of a bounded inclusion check.

    ``checked`` counts the left traces listed, or the state pairs explored by
    the subset search.
    """

    ok: bool
    witness: tuple | None = None
    checked: int = 0
    actions_only: bool = False

    def __bool__(self) -> bool:
        return self.ok

    def witness_text(self) -> str:
        if self.witness is None:
            return ""
        return word_text(self.witness) if self.actions_only else trace_text(self.witness)


def trace_inclusion(m, n, depth: int, actions_only: bool = False,
                    right_depth: int | None = None) -> Inclusion:
    """Check that every trace of ``m`` up to ``depth`` is a trace of ``n``.

    The right-hand side is decided exactly unless ``right_depth`` is given, in
    which case it is the set enumerated to that depth. The witness is the least
    failing trace in canonical order.
    """
    if right_depth is not None:
        return enumerated_inclusion(m, n, depth, actions_only, right_depth)
    return _subset_inclusion(as_sioa(m), as_sioa(n), depth, actions_only)


def enumerated_inclusion(m, n, depth: int, actions_only: bool = False,
                         right_depth: int | None = None) -> Inclusion:
    """Inclusion by listing the left traces; used to cross-check the subset search."""
    left = enumerate_traces(m, depth, actions_only)
    if right_depth is None:
        member = (lambda w: contains_word(n, w)) if actions_only else (lambda b: contains_trace(n, b))
    else:
        right = set(enumerate_traces(n, right_depth, actions_only))
        member = right.__contains__
    for beta in left:
        if not member(beta):
            return Inclusion(False, beta, len(left), actions_only)
    return Inclusion(True, None, len(left), actions_only)


class _Emitter:
    """What each step of an automaton contributes to its trace.

    A step emits nothing, a new signature, or an external action together
    with the signature it reaches (only the action in action-only mode).
    """

    def __init__(self, a: Sioa, actions_only: bool):
        self.a = a
        self.actions_only = actions_only
        self._cache: dict = {}
        self._adv: dict = {}

    def emissions(self, s) -> list:
        out = self._cache.get(s)
        if out is None:
            a = self.a
            g, here = a.sig[s], a.ext(s)
            out = []
            for x, t in a.successors(s):
                if x in g.inputs or x in g.outputs:
                    out.append(((x,) if self.actions_only else (x, a.ext(t)), t))
                elif self.actions_only or a.ext(t) == here:
                    out.append((None, t))
                else:
                    out.append(((a.ext(t),), t))
            self._cache[s] = out
        return out

    def closure(self, states) -> frozenset:
        seen = set(states)
        stack = list(seen)
        while stack:
            s = stack.pop()
            for sym, t in self.emissions(s):
                if sym is None and t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def advance(self, states: frozenset, sym) -> frozenset:
        key = (states, sym)
        out = self._adv.get(key)
        if out is None:
            out = self.closure({t for s in states for y, t in self.emissions(s) if y == sym})
            self._adv[key] = out
        return out


def _sym_key(sym) -> tuple:
    return tuple(str(x) for x in sym)


def _subset_inclusion(left: Sioa, right: Sioa, depth: int, actions_only: bool) -> Inclusion:
    """Bounded inclusion by pairing each left state with the right states sharing its trace.

    Pairs are explored breadth-first; a pair first reached with the fewest
    left steps dominates later visits. On failure the least witness is read
    off greedily using the distance from every pair to a failing one.
    """
    le, re_ = _Emitter(left, actions_only), _Emitter(right, actions_only)
    roots: dict = {}  # first symbol -> start pairs
    for s in sorted(left.starts, key=state_key):
        if actions_only:
            sym = ()
            rs = re_.closure(right.starts)
        else:
            sym = (left.ext(s),)
            rs = re_.closure({r for r in right.starts if right.ext(r) == sym[0]})
        roots.setdefault(sym, set()).add((s, rs))
    dist: dict = {}
    edges: dict = {}
    queue = deque()
    for nodes in roots.values():
        for node in nodes:
            if node not in dist:
                dist[node] = 0
                queue.append(node)
    while queue:
        node = queue.popleft()
        s, rs = node
        if not rs or dist[node] >= depth:
            continue
        out = []
        for sym, t in le.emissions(s):
            nxt = (t, rs if sym is None else re_.advance(rs, sym))
            out.append((sym, nxt))
            if nxt not in dist:
                dist[nxt] = dist[node] + 1
                queue.append(nxt)
        edges[node] = out
    failing = [node for node in dist if not node[1]]
    if not failing:
        return Inclusion(True, None, len(dist), actions_only)
    back: dict = {}
    for node, out in edges.items():
        for _, nxt in out:
            back.setdefault(nxt, []).append(node)
    to_fail = {node: 0 for node in failing}
    queue = deque(failing)
    while queue:
        node = queue.popleft()
        for prev in back.get(node, ()):
            if prev not in to_fail:
                to_fail[prev] = to_fail[node] + 1
                queue.append(prev)

    def viable(node, d):
        return node in to_fail and d + to_fail[node] <= depth

    def close(front: dict) -> dict:
        todo = list(front)
        while todo:
            node = todo.pop()
            d = front[node]
            for sym, nxt in edges.get(node, ()):
                if sym is None and d + 1 < front.get(nxt, depth + 1):
                    front[nxt] = d + 1
                    todo.append(nxt)
        return front

    word: list = []
    firsts = sorted((sym for sym, nodes in roots.items() if any(viable(n, 0) for n in nodes)),
                    key=_sym_key)
    word.extend(firsts[0])
    front = close({n: 0 for n in roots[firsts[0]]})
    while not any(not rs and viable((s, rs), d) for (s, rs), d in front.items()):
        options: dict = {}
        for node, d in front.items():
            if not viable(node, d):
                continue
            for sym, nxt in edges.get(node, ()):
                if sym is not None and viable(nxt, d + 1):
                    options.setdefault(sym, {})
                    if d + 1 < options[sym].get(nxt, depth + 1):
                        options[sym][nxt] = d + 1
        sym = min(options, key=_sym_key)
        word.extend(sym)
        front = close(options[sym])
    return Inclusion(False, tuple(word), len(dist), actions_only)


# ---------------------------------------------------------------- oracles


@dataclass
class FamilyBundle:
    """Inputs for the composition theorems.

    ``alternates`` are per-component replacements; ``hidden`` and ``renaming``
    parameterize the hiding and renaming monotonicity checks.
    """

    components: list
    alternates: list | None = None
    hidden: frozenset = frozenset()
    renaming: dict | None = None
    seed: int | None = None


@dataclass
class TheoremReport:
    theorem: str
    result: str  # pass, fail, vacuous or inconclusive
    witness: str | None = None
    detail: str = ""
    checked: int = 0

    def line(self) -> str:
        out = f"{self.theorem}: {self.result}"
        if self.witness:
            out += f" witness={self.witness}"
        if self.detail:
            out += f" ({self.detail})"
        return out

    def to_json(self) -> str:
        return json.dumps({"theorem": self.theorem, "result": self.result,
                           "witness": self.witness}, ensure_ascii=False)


def _vacuous(t: str, why: str) -> TheoremReport:
    return TheoremReport(t, "vacuous", None, why)


def _composite(bundle: FamilyBundle) -> Sioa | None:
    if not compatible_sioa(bundle.components):
        return None
    return compose_sioa(bundle.components)


def _check_projection(bundle, depth):
    a = _composite(bundle)
    if a is None:
        return _vacuous("projection", "family is not compatible")
    count = 0
    for alpha in enumerate_executions(a, depth):
        count += 1
        for i, comp in enumerate(a.components):
            proj = project_execution(a, alpha, i)
            if not is_execution(comp, proj):
                return TheoremReport("projection", "fail", str(alpha), f"component {comp.aut_id}", count)
    return TheoremReport("projection", "pass", checked=count)


def _mutations(a: Sioa, alpha: Execution, rng: random.Random, count: int):
    """Perturbed sequences over the composite state space, for the pasting check."""
    for _ in range(count):
        states = list(alpha.states)
        actions = list(alpha.actions)
        j = rng.randrange(len(states))
        i = rng.randrange(len(a.components))
        comp = a.components[i]
        local = list(states[j])
        local[i] = rng.choice(comp.states)
        states[j] = tuple(local)
        if actions and rng.random() < 0.3:
            k = rng.randrange(len(actions))
            choices = sorted(a.sig[states[k]].actions())
            if choices:
                actions[k] = rng.choice(choices)
        if all(x in a.sig[s].actions() for s, x in zip(states, actions)):
            yield Execution(a.aut_id, tuple(states), tuple(actions))


def _check_pasting(bundle, depth):
    a = _composite(bundle)
    if a is None:
        return _vacuous("pasting", "family is not compatible")
    rng = random.Random(bundle.seed)
    count = 0
    for alpha in enumerate_executions(a, depth):
        candidates = [alpha] + list(_mutations(a, alpha, rng, 2))
        for cand in candidates:
            count += 1
            try:
                verdict = paste_check(a, cand)
            except AssertionError:
                return TheoremReport("pasting", "fail", str(cand), "hypotheses hold but replay fails", count)
            if cand is alpha and not verdict:
                return TheoremReport("pasting", "fail", str(cand), f"execution rejected: {verdict}", count)
    return TheoremReport("pasting", "pass", checked=count)


def zip_products(parts: Sequence[Sequence]) -> set:
    """Every trace ``beta`` with ``zip(beta, parts)``, built from the cursor search."""
    parts = tuple(tuple(p) for p in parts)
    goal = tuple(len(p) - 1 for p in parts)
    memo: dict = {}

    def prod(cur):
        return product_ext([p[c] for p, c in zip(parts, cur)])

    def suffixes(cur) -> frozenset:
        if cur in memo:
            return memo[cur]
        memo[cur] = frozenset()  # cycles cannot occur: every move advances a cursor
        here = prod(cur)
        out = set()
        if cur == goal:
            out.add(())
        for k, (p, c) in enumerate(zip(parts, cur)):
            if c + 1 < len(p) and not isinstance(p[c + 1], str):
                nxt = cur[:k] + (c + 1,) + cur[k + 1:]
                g = prod(nxt)
                for tail in suffixes(nxt):
                    out.add(tail if g == here else (g,) + tail)
        acts = set()
        for p, c in zip(parts, cur):
            if c + 1 < len(p) and isinstance(p[c + 1], str):
                acts.add(p[c + 1])
        for x in acts:
            phi = [k for k, (p, c) in enumerate(zip(parts, cur)) if c + 1 < len(p) and p[c + 1] == x]
            idle = [k for k in range(len(parts)) if k not in phi]
            if any(x in parts[k][cur[k]].actions() for k in idle):
                continue
            nxt = tuple(c + 2 if k in phi else c for k, c in enumerate(cur))
            g = prod(nxt)
            for tail in suffixes(nxt):
                out.add((x, g) + tail)
        memo[cur] = frozenset(out)
        return memo[cur]

    start = (0,) * len(parts)
    first = prod(start)
    return {(first,) + tail for tail in suffixes(start)}


def _check_finite_trace_pasting(bundle, depth, combos: int = 12):
    name = "finite-trace-pasting"
    a = _composite(bundle)
    if a is None:
        return _vacuous(name, "family is not compatible")
    rng = random.Random(bundle.seed)
    count = 0
    tuples = set()
    for alpha in enumerate_executions(a, depth):
        beta = trace_of(a, alpha, check=False)
        parts = tuple(trace_of(c, project_execution(a, alpha, i), check=False)
                      for i, c in enumerate(a.components))
        count += 1
        if not zip_check(beta, parts):
            return TheoremReport(name, "fail", trace_text(beta), "projection parts do not zip", count)
        tuples.add(parts)
    # pasting direction: zip arbitrary component traces and look the result up
    per = [enumerate_traces(c, depth) for c in a.components]
    pool = sorted(tuples, key=lambda t: [trace_text(x) for x in t])
    rng.shuffle(pool)
    chosen = pool[:combos]
    for _ in range(combos):
        chosen.append(tuple(rng.choice(ts) for ts in per))
    for parts in chosen:
        for beta in sorted(zip_products(parts), key=trace_text):
            count += 1
            if not zip_check(beta, parts):
                return TheoremReport(name, "fail", trace_text(beta), "generated zip rejected", count)
            if not contains_trace(a, beta):
                return TheoremReport(name, "fail", trace_text(beta), "zipped trace not a trace of the composition", count)
    return TheoremReport(name, "pass", checked=count)


def _component_inclusion(lefts, rights, depth):
    for x, y in zip(lefts, rights):
        r = trace_inclusion(x, y, depth)
        if not r:
            return x.aut_id, r
    return None


def _check_substitutivity(bundle, depth):
    name = "substitutivity"
    alts = bundle.alternates
    if not alts or not compatible_sioa(bundle.components) or not compatible_sioa(alts):
        return _vacuous(name, "families missing or incompatible")
    if _component_inclusion(bundle.components, alts, depth):
        return _vacuous(name, "component inclusion fails")
    a, b = compose_sioa(bundle.components), compose_sioa(alts)
    r = trace_inclusion(a, b, depth)
    if not r:
        return TheoremReport(name, "fail", r.witness_text(), checked=r.checked)
    return TheoremReport(name, "pass", checked=r.checked)


def _check_congruence(bundle, depth):
    name = "congruence"
    alts = bundle.alternates
    if not alts or not compatible_sioa(bundle.components) or not compatible_sioa(alts):
        return _vacuous(name, "families missing or incompatible")
    if _component_inclusion(bundle.components, alts, depth) or _component_inclusion(alts, bundle.components, depth):
        return _vacuous(name, "components not trace equivalent")
    a, b = compose_sioa(bundle.components), compose_sioa(alts)
    for x, y in ((a, b), (b, a)):
        r = trace_inclusion(x, y, depth)
        if not r:
            return TheoremReport(name, "fail", r.witness_text(), checked=r.checked)
    return TheoremReport(name, "pass")


def _pair(bundle):
    if not bundle.alternates or not compatible_sioa(bundle.components) or not compatible_sioa(bundle.alternates):
        return None
    return compose_sioa(bundle.components), compose_sioa(bundle.alternates)


def _check_hiding(bundle, depth):
    name = "hiding-mono"
    pair = _pair(bundle)
    if pair is None:
        return _vacuous(name, "families missing or incompatible")
    a, b = pair
    if not trace_inclusion(a, b, depth):
        return _vacuous(name, "trace inclusion hypothesis fails")
    r = trace_inclusion(hide_sioa(a, bundle.hidden), hide_sioa(b, bundle.hidden), depth)
    if not r:
        return TheoremReport(name, "fail", r.witness_text(), checked=r.checked)
    return TheoremReport(name, "pass", checked=r.checked)


def _check_renaming(bundle, depth):
    name = "renaming-mono"
    pair = _pair(bundle)
    if pair is None or bundle.renaming is None:
        return _vacuous(name, "families or renaming missing")
    a, b = pair
    rho = bundle.renaming
    if not set(a.acts() | b.acts()) <= set(rho):
        return _vacuous(name, "renaming does not cover the actions")
    if not trace_inclusion(a, b, depth):
        return _vacuous(name, "trace inclusion hypothesis fails")
    r = trace_inclusion(rename_sioa(a, rho), rename_sioa(b, rho), depth)
    if not r:
        return TheoremReport(name, "fail", r.witness_text(), checked=r.checked)
    return TheoremReport(name, "pass", checked=r.checked)


_FAMILY_CHECKS = {
    "projection": _check_projection,
    "pasting": _check_pasting,
    "finite-trace-pasting": _check_finite_trace_pasting,
    "substitutivity": _check_substitutivity,
    "hiding-mono": _check_hiding,
    "renaming-mono": _check_renaming,
    "congruence": _check_congruence,
}


def check_theorem(theorem: str, bundle, depth: int) -> TheoremReport:
    """Run one theorem oracle on a bundle at a depth bound."""
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; expected one of {', '.join(THEOREMS)}")
    if theorem == "creation-mono":
        from .creation import CreationBundle, check_creation_mono
        if not isinstance(bundle, CreationBundle):
            raise ValueError("creation-mono needs a creation bundle")
        return check_creation_mono(bundle, depth)
    if not isinstance(bundle, FamilyBundle):
        raise ValueError(f"{theorem} needs a family bundle")
    return _FAMILY_CHECKS[theorem](bundle, depth)
