"""Replacing one created automaton by another: correspondence, member projection,
creation correspondence and execution-correspondence witnesses."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .automata import ConfigAutomaton
from .behavior import TRUE, Execution, Verdict, is_execution, reduce_pretrace, trace_of, trace_text
from .config import Configuration, destruction_warnings, intrinsic_signature
from .core import ModelError, Sioa, State, state_key, state_text
from .explorer import (TheoremReport, _Emitter, as_sioa, contains_trace, enumerate_executions,
                       enumerate_traces, trace_inclusion, trace_key)

DELIMITER = "⋄"


def subst_create_set(phi: Iterable[str], old: str, new: str) -> frozenset:
    """``phi`` with ``old`` replaced by ``new``; ``new`` must not already be in ``phi``."""
    phi = frozenset(phi)
    if new in phi and old != new:
        raise ModelError(f"{new} is already in the create set {{{', '.join(sorted(phi))}}}")
    if old in phi:
        return (phi - {old}) | {new}
    return phi


def config_corresponds(c: Configuration, d: Configuration, old: str, new: str) -> bool:
    """Whether ``d`` is ``c`` with member ``old`` replaced by ``new`` at an equal external signature."""
    if old != new and old in c.ids and new in c.ids:
        return False
    try:
        want = subst_create_set(c.ids, old, new)
    except ModelError:
        return False
    if d.ids != want:
        return False
    for k, s in c.members:
        if k == old:
            continue
        if d.state_of(k) != s:
            return False
    if old in c.ids:
        return c.sig_of(old).external() == d.sig_of(new).external()
    return True


def replace_member(c: Configuration, old: str, new: str, state: State,
                   registry) -> Configuration:
    pairs = [(k, s) for k, s in c.members if k != old]
    if old in c.ids:
        pairs.append((new, state))
    return Configuration(tuple(sorted(pairs)), registry)


# ---------------------------------------------------------------- terminating behavior


def _require_determinate_destruction(a: Sioa) -> None:
    bad = destruction_warnings(a)
    if bad:
        s, x = bad[0]
        raise ModelError(f"{a.aut_id}: {x} from {state_text(s)} may or may not destroy the automaton")


def _terminating_text(a: Sioa, states: Sequence, actions: Sequence) -> tuple:
    out = [a.ext(states[0])]
    for k, (s, x) in enumerate(zip(states, actions)):
        g = a.ext(s)
        if x in g.inputs or x in g.outputs:
            out.append(x)
        if k + 1 < len(actions):
            out.append(a.ext(states[k + 1]))
    return reduce_pretrace(out)


def terminating_trace(a: Sioa, states: Sequence, actions: Sequence) -> tuple:
    """Trace of a terminating execution given without its final state."""
    if len(actions) != len(states) or not actions:
        raise ValueError("a terminating execution ends in an action")
    return _terminating_text(a, states, actions)


def terminating_traces(a: Sioa, depth: int) -> list:
    """Traces of executions of length <= ``depth`` whose last step empties the signature."""
    _require_determinate_destruction(a)
    found = set()
    layer = {(s, (a.ext(s),)) for s in a.starts}
    for _ in range(depth):
        nxt = set()
        for s, pre in layer:
            g = a.sig[s]
            for x, t in a.successors(s):
                if x in g.inputs or x in g.outputs:
                    if a.sig[t].is_empty():
                        found.add(pre + (x,))
                    nxt.add((t, reduce_pretrace(pre + (x, a.ext(t)))))
                else:
                    if a.sig[t].is_empty():
                        found.add(pre)
                    nxt.add((t, reduce_pretrace(pre + (a.ext(t),))))
        layer = nxt
    return sorted(found, key=trace_key)


def _search_trace(a: Sioa, beta: tuple, terminating: bool):
    """An execution of ``a`` with trace ``beta``, as (states, actions), or None.

    With ``terminating`` the execution must end in a step to an empty
    signature and ``beta`` is read as a terminating trace.
    """
    beta = tuple(beta)
    ends_in_action = terminating and beta and isinstance(beta[-1], str)
    body = beta[:-1] if ends_in_action else beta
    n = len(body)
    if not n:
        return None
    parent: dict = {}
    todo = deque()
    for s in sorted(a.starts, key=state_key):
        if a.ext(s) == body[0] and (s, 0) not in parent:
            parent[(s, 0)] = None
            todo.append((s, 0))

    def unwind(node):
        states, actions = [node[0]], []
        while parent[node] is not None:
            node, x = parent[node]
            actions.append(x)
            states.append(node[0])
        return states[::-1], actions[::-1]

    while todo:
        node = todo.popleft()
        s, p = node
        g = a.sig[s]
        if p == n - 1:
            if not terminating:
                states, actions = unwind(node)
                return tuple(states), tuple(actions)
            for x, t in a.successors(s):
                if not a.sig[t].is_empty():
                    continue
                external = x in g.inputs or x in g.outputs
                if (external and ends_in_action and x == beta[-1]) or (not external and not ends_in_action):
                    states, actions = unwind(node)
                    return tuple(states), tuple(actions) + (x,)
        for x, t in a.successors(s):
            h = a.ext(t)
            if x in g.inputs or x in g.outputs:
                nxt = (t, p + 2) if p + 2 < n and body[p + 1] == x and body[p + 2] == h else None
            elif h == body[p]:
                nxt = (t, p)
            elif p + 1 < n and body[p + 1] == h:
                nxt = (t, p + 1)
            else:
                nxt = None
            if nxt is not None and nxt not in parent:
                parent[nxt] = (node, x)
                todo.append(nxt)
    return None


def contains_terminating(a: Sioa, beta: Sequence) -> bool:
    return _search_trace(a, tuple(beta), terminating=True) is not None


# ---------------------------------------------------------------- member projection


@dataclass(frozen=True)
class Lifetimes:
    """Delimited sequence of executions of one member automaton.

    Each segment alternates states and actions; a segment ending in an action
    is terminated (the member destroyed itself there).
    """

    member: str
    segments: tuple = ()

    def __len__(self) -> int:
        return len(self.segments)

    def __str__(self) -> str:
        if not self.segments:
            return "ε"
        return f" {DELIMITER} ".join(
            " ".join(x if i % 2 else state_text(x) for i, x in enumerate(seg))
            for seg in self.segments)


def is_terminated(seg: Sequence) -> bool:
    return len(seg) % 2 == 0


def project_member(x: ConfigAutomaton, alpha: Execution, member: str,
                   fragment: bool = False) -> Lifetimes:
    """The lifetimes of ``member`` along ``alpha``, one segment per lifetime."""
    if member not in x.registry:
        raise ModelError(f"{member} is not registered in {x.aut_id}")
    if not is_execution(x.underlying, alpha, fragment=fragment):
        raise ValueError(f"not an execution of {x.aut_id}: {alpha}")
    segments: list = []
    cur: list | None = None
    for i, s in enumerate(alpha.states):
        c = x.config(s)
        local = c.state_of(member)
        if local is None:
            continue
        if cur is None:
            cur = [local]
        else:
            cur.append(local)
        if i < len(alpha.actions):
            act = alpha.actions[i]
            if act not in c.sig_of(member).actions():
                # state replaced by the next one while the member idles
                cur.pop()
                continue
            cur.append(act)
            if member not in x.config(alpha.states[i + 1]).ids:
                segments.append(tuple(cur))
                cur = None
    if cur:
        segments.append(tuple(cur))
    return Lifetimes(member, tuple(segments))


def seq_prefix(xi: Lifetimes, chi: Lifetimes) -> bool:
    """Prefix order on lifetime sequences: equal leading segments, last one a prefix."""
    k, l = len(xi.segments), len(chi.segments)
    if k == 0:
        return True
    if k > l:
        return False
    if xi.segments[: k - 1] != chi.segments[: k - 1]:
        return False
    last, other = xi.segments[k - 1], chi.segments[k - 1]
    return other[: len(last)] == last


def segment_trace(a: Sioa, seg: Sequence) -> tuple:
    states = seg[0::2]
    actions = seg[1::2]
    if is_terminated(seg):
        return terminating_trace(a, states, actions)
    return trace_of(a, Execution(a.aut_id, tuple(states), tuple(actions)), check=False)


def seq_trace(a: Sioa, xi: Lifetimes) -> tuple:
    """Per-lifetime traces, delimiters kept implicit by the tuple structure."""
    return tuple(segment_trace(a, seg) for seg in xi.segments)


def seq_trace_text(traces: Sequence) -> str:
    if not traces:
        return "ε"
    return f" {DELIMITER} ".join(trace_text(t) for t in traces)


# ---------------------------------------------------------------- creation correspondence


def require_no_hiding(x: ConfigAutomaton) -> None:
    """Reject automata whose state signatures differ from their configurations'."""
    for s in x.underlying.states:
        if x.underlying.sig[s] != intrinsic_signature(x.config(s)):
            raise ModelError(f"{x.aut_id}: signature at {state_text(s)} differs from its "
                             "configuration's (hidden or renamed actions are not supported here)")


@dataclass(frozen=True)
class Correspondence:
    ok: bool
    clause: int | None = None
    trace: tuple | None = None
    states: tuple | None = None
    action: str | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "creation-corresponding"
        if self.clause == 1:
            return f"clause 1: {self.message}"
        return (f"clause 2 at trace {trace_text(self.trace)}, states "
                f"{state_text(self.states[0])} / {state_text(self.states[1])}, action "
                f"{self.action}: {self.message}")


def _shared_trace_pairs(x: ConfigAutomaton, y: ConfigAutomaton, depth: int) -> dict:
    """State pairs ending executions of ``x`` and ``y`` (each of length <= ``depth``) with equal traces.

    Maps each pair to one trace reaching it, found breadth-first.
    """
    xe, ye = _Emitter(x.underlying, False), _Emitter(y.underlying, False)
    xa, ya = x.underlying, y.underlying
    best: dict = {}  # pair -> non-dominated (dx, dy)
    parent: dict = {}
    queue: deque = deque()

    def push(node, via):
        xs, ys, dx, dy = node
        kept = best.setdefault((xs, ys), [])
        if any(px <= dx and py <= dy for px, py in kept):
            return
        kept[:] = [(px, py) for px, py in kept if not (dx <= px and dy <= py)] + [(dx, dy)]
        parent[node] = via
        queue.append(node)

    for xs in sorted(xa.starts, key=state_key):
        for ys in sorted(ya.starts, key=state_key):
            if xa.ext(xs) == ya.ext(ys):
                push((xs, ys, 0, 0), (None, (xa.ext(xs),)))
    while queue:
        node = queue.popleft()
        xs, ys, dx, dy = node
        xout = xe.emissions(xs) if dx < depth else []
        yout = ye.emissions(ys) if dy < depth else []
        for sym, t in xout:
            if sym is None:
                push((t, ys, dx + 1, dy), (node, ()))
        for sym, u in yout:
            if sym is None:
                push((xs, u, dx, dy + 1), (node, ()))
        for sym, t in xout:
            if sym is not None:
                for other, u in yout:
                    if other == sym:
                        push((t, u, dx + 1, dy + 1), (node, sym))
    out: dict = {}
    for node in parent:
        pair = node[:2]
        if pair in out:
            continue
        syms = []
        cur = node
        while cur is not None:
            cur, sym = parent[cur]
            syms.append(sym)
        out[pair] = tuple(z for sym in reversed(syms) for z in sym)
    return out


def check_creation_corresponding(x: ConfigAutomaton, y: ConfigAutomaton, old: str, new: str,
                                 depth: int) -> Correspondence:
    """Both creation-correspondence clauses, the second over executions up to ``depth``.

    Among clause-2 violations the least by (states, action) is reported, with a
    shortest trace leading to it.
    """
    require_no_hiding(x)
    require_no_hiding(y)
    for (s, act), phi in sorted(x.created_map.items(), key=lambda kv: (state_key(kv[0][0]), kv[0][1])):
        if new in phi and old != new:
            return Correspondence(False, 1, states=(s, None), action=act,
                                  message=f"{x.aut_id} creates {new} at {state_text(s)} on {act}")
    for (s, act), phi in sorted(y.created_map.items(), key=lambda kv: (state_key(kv[0][0]), kv[0][1])):
        if old in phi and old != new:
            return Correspondence(False, 1, states=(None, s), action=act,
                                  message=f"{y.aut_id} creates {old} at {state_text(s)} on {act}")
    bad = []
    for (xs, ys), beta in _shared_trace_pairs(x, y, depth).items():
        shared = x.underlying.sig[xs].actions() & y.underlying.sig[ys].actions()
        for act in shared:
            want = subst_create_set(x.created(xs, act), old, new)
            got = y.created(ys, act)
            if got != want:
                bad.append((state_key(xs), state_key(ys), act, beta, xs, ys, want, got))
    if not bad:
        return Correspondence(True)
    _, _, act, beta, xs, ys, want, got = min(bad, key=lambda z: z[:3])
    return Correspondence(False, 2, beta, (xs, ys), act,
                          f"created {{{', '.join(sorted(got))}}} in {y.aut_id}, expected "
                          f"{{{', '.join(sorted(want))}}}")


# ---------------------------------------------------------------- execution correspondence


def _fragment_member_trace(m: ConfigAutomaton, frag: Execution, member: str) -> tuple:
    lt = project_member(m, frag, member, fragment=True)
    return seq_trace(m.registry[member], lt)


def verify_RAB(alpha: Execution, pi: Execution, index_map: Sequence[int],
               x: ConfigAutomaton, y: ConfigAutomaton, old: str, new: str):
    """Check the five clauses relating ``alpha`` and ``pi`` through ``index_map``."""
    m = list(index_map)
    if len(m) != len(alpha) + 1:
        return Verdict(False, "map", None, "index map must cover every state of alpha")
    if any(not 0 <= j <= len(pi) for j in m) or any(p > q for p, q in zip(m, m[1:])):
        return Verdict(False, "map", None, "index map is not nondecreasing into pi")
    if m[0] != 0:
        return Verdict(False, "1", 0, f"m(0) = {m[0]}")
    if m[-1] != len(pi):
        return Verdict(False, "2", len(alpha), "index map is not cofinal")
    xa, ya = x.underlying, y.underlying
    for i in range(1, len(alpha) + 1):
        fa = alpha.segment(i - 1, i)
        fp = pi.segment(m[i - 1], m[i])
        if trace_of(ya, fp) != trace_of(xa, fa):
            return Verdict(False, "3", i, "fragment traces differ")
        if _fragment_member_trace(y, fp, new) != _fragment_member_trace(x, fa, old):
            return Verdict(False, "4", i, "member traces differ")
    for i, j in enumerate(m):
        if not config_corresponds(x.config(alpha.states[i]), y.config(pi.states[j]), old, new):
            return Verdict(False, "5", i, "configurations do not correspond")
    return TRUE


@dataclass(frozen=True)
class AssumptionCheck:
    number: int
    ok: bool
    message: str

    def __str__(self) -> str:
        return f"assumption {self.number}: {'ok' if self.ok else 'FAILS'} ({self.message})"


def _internal_destroyers(a: Sioa) -> list:
    return [(s, t, u) for s, t, u in sorted(a.steps, key=lambda z: (state_key(z[0]), z[1], state_key(z[2])))
            if t in a.sig[s].internals and a.sig[u].is_empty()]


def _internal_creations(m: ConfigAutomaton, member: str) -> list:
    found = []
    for (s, act), phi in m.created_map.items():
        c = m.config(s)
        if member in c.ids and act in c.sig_of(member).internals and phi:
            found.append((state_text(s), act))
    return sorted(found)


def lemma_assumptions(x: ConfigAutomaton, y: ConfigAutomaton, old: str, new: str,
                      depth: int) -> list:
    """Each hypothesis of the execution-correspondence lemma, at bounded depth where needed."""
    a, b = x.registry[old], y.registry[new]
    out = []
    problems = []
    if len(b.starts) != 1:
        problems.append(f"{new} has {len(b.starts)} start states")
    for aut in (a, b):
        bad = _internal_destroyers(aut)
        if bad:
            s, act, _ = bad[0]
            problems.append(f"{aut.aut_id} destroys itself on internal {act} from {state_text(s)}")
    out.append(AssumptionCheck(1, not problems, "; ".join(problems) or
                               f"{new} has one start state; no internal self-destruction"))
    problems = [f"{x.aut_id} creates on internal {act} at {s}" for s, act in _internal_creations(x, old)]
    problems += [f"{y.aut_id} creates on internal {act} at {s}" for s, act in _internal_creations(y, new)]
    out.append(AssumptionCheck(2, not problems, "; ".join(problems[:1]) or "internal actions create nothing"))
    missing = [xs for xs in sorted(x.underlying.starts, key=state_key)
               if not any(config_corresponds(x.config(xs), y.config(ys), old, new)
                          for ys in y.underlying.starts)]
    out.append(AssumptionCheck(3, not missing, f"no corresponding start for {state_text(missing[0])}"
                               if missing else "every start of X has a corresponding start of Y"))
    inc = trace_inclusion(a, b, depth)
    out.append(AssumptionCheck(4, inc.ok, f"{old} trace {inc.witness_text()} missing from {new}"
                               if not inc.ok else f"traces of {old} within {new} up to depth {depth}"))
    try:
        gone = [t for t in terminating_traces(a, depth) if not contains_terminating(b, t)]
        msg = (f"terminating trace {trace_text(gone[0])} of {old} missing from {new}" if gone
               else f"terminating traces of {old} within {new} up to depth {depth}")
        out.append(AssumptionCheck(5, not gone, msg))
    except ModelError as err:
        out.append(AssumptionCheck(5, False, str(err)))
    corr = check_creation_corresponding(x, y, old, new, depth)
    out.append(AssumptionCheck(6, corr.ok, str(corr)))
    return out


@dataclass(frozen=True)
class Correspondent:
    """Outcome of building a matching execution: ``pi`` and ``index_map`` or the failing case."""

    pi: Execution | None
    index_map: tuple | None
    case: int | None = None
    index: int | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.pi is not None


def _align(a: Sioa, b: Sioa, seg: tuple, bexec: tuple) -> list:
    """For each state of the member segment, the matching index into ``bexec``.

    Walks the replacement's execution greedily: an external action consumes
    internal steps up to and including that action; an internal action that
    changes the external signature consumes steps up to the first change.
    """
    bstates, bactions = bexec
    f = [0]
    j = 0
    states, actions = seg[0::2], seg[1::2]
    for k, act in enumerate(actions):
        s = states[k]
        g = a.sig[s]
        if act in g.inputs or act in g.outputs:
            while True:
                if j >= len(bactions):
                    raise ModelError("replacement execution ends early")
                y = bactions[j]
                j += 1
                h = b.sig[bstates[j - 1]]
                if y in h.inputs or y in h.outputs:
                    break
        else:
            target = a.ext(states[k + 1]) if k + 1 < len(states) else None
            if target is not None and target != a.ext(s):
                while b.ext(bstates[j]) != target:
                    if j >= len(bactions):
                        raise ModelError("replacement execution ends early")
                    j += 1
        f.append(j)
    return f


def find_RAB(alpha: Execution, x: ConfigAutomaton, y: ConfigAutomaton, old: str,
             new: str) -> Correspondent:
    """Build a matching execution of ``y`` by following the lemma's case split.

    Case numbers: 1 member absent throughout, 2 member created, 3 member idle,
    4 member external action, 5 member internal action, 6 and 8 member
    destroyed by an action outside its signature or by an internal action
    (both impossible under the assumptions), 7 member destroyed by an
    external action.
    """
    a, b = x.registry[old], y.registry[new]
    lt = project_member(x, alpha, old)
    bexecs = []
    aligns = []
    for seg in lt.segments:
        beta = segment_trace(a, seg)
        found = _search_trace(b, beta, terminating=is_terminated(seg))
        if found is None:
            return Correspondent(None, None, None, None,
                                 f"{new} has no execution with trace {trace_text(beta)}")
        if found[0][0] not in b.starts:
            return Correspondent(None, None, 2, None, "replacement does not start at its start state")
        bexecs.append(found)
        aligns.append(_align(a, b, seg, found))
    ya = y.underlying
    x0 = alpha.states[0]
    c0 = x.config(x0)
    starts = [ys for ys in sorted(ya.starts, key=state_key)
              if config_corresponds(c0, y.config(ys), old, new)]
    if c0.state_of(old) is not None:
        starts = [ys for ys in starts if y.config(ys).state_of(new) == bexecs[0][0][0]]
    if not starts:
        return Correspondent(None, None, 0, 0, "no corresponding start state in Y")
    pi = Execution(ya.aut_id, (starts[0],))
    index_map = [0]
    seg_no = 0 if c0.state_of(old) is not None else -1
    pos = 0  # index into the current segment's states

    def move(pi, act, target, case, i):
        for t_act, t in ya.successors(pi.last):
            if t_act == act and y.config(t) == target:
                return pi.extend(act, t), None
        return pi, Correspondent(None, None, case, i,
                                 f"Y has no {act}-step from {state_text(pi.last)} to {target}")

    def b_steps(pi, lo, hi, ci, case, i):
        bstates, bactions = bexecs[seg_no]
        for j in range(lo, hi):
            target = replace_member(ci, old, new, bstates[j + 1], y.registry)
            pi, err = move(pi, bactions[j], target, case, i)
            if err:
                return pi, err
        return pi, None

    for i, act in enumerate(alpha.actions, 1):
        ci0 = x.config(alpha.states[i - 1])
        ci1 = x.config(alpha.states[i])
        before, after = old in ci0.ids, old in ci1.ids
        if not before and not after:
            pi, err = move(pi, act, ci1, 1, i)
        elif not before:
            seg_no += 1
            pos = 0
            pi, err = move(pi, act, replace_member(ci1, old, new, bexecs[seg_no][0][0], y.registry), 2, i)
        else:
            sa = ci0.sig_of(old)
            f = aligns[seg_no]
            bstates, bactions = bexecs[seg_no]
            if act not in sa.actions():
                case = 6 if not after else 3
                if case == 6:
                    return Correspondent(None, None, 6, i, "member destroyed outside its signature")
                pi, err = move(pi, act, replace_member(ci1, old, new, bstates[f[pos]], y.registry), 3, i)
            elif act in sa.internals:
                if not after:
                    return Correspondent(None, None, 8, i, "member destroyed by an internal action")
                pi, err = b_steps(pi, f[pos], f[pos + 1], ci0, 5, i)
                pos += 1
            else:
                case = 4 if after else 7
                pi, err = b_steps(pi, f[pos], f[pos + 1] - 1, ci0, case, i)
                if not err:
                    t = bstates[f[pos + 1]] if after else None
                    target = replace_member(ci1, old, new, t, y.registry) if after else ci1
                    pi, err = move(pi, act, target, case, i)
                pos += 1
        if err:
            return err
        index_map.append(len(pi))
    return Correspondent(pi, tuple(index_map))


def find_RAB_brute(alpha: Execution, x: ConfigAutomaton, y: ConfigAutomaton, old: str,
                   new: str, fragment_bound: int = 4) -> Correspondent:
    """Search matching fragments of ``y`` step by step, checking the clauses directly."""
    ya = y.underlying
    xa = x.underlying

    def fragments(s, bound):
        stack = [Execution(ya.aut_id, (s,))]
        while stack:
            f = stack.pop()
            yield f
            if len(f) < bound:
                for act, t in reversed(ya.successors(f.last)):
                    stack.append(f.extend(act, t))

    dead = set()

    def search(i, pi, index_map):
        if i == len(alpha):
            return pi, index_map
        key = (i, pi.last)
        if key in dead:
            return None
        fa = alpha.segment(i, i + 1)
        want = trace_of(xa, fa)
        want_member = _fragment_member_trace(x, fa, old)
        c = x.config(alpha.states[i + 1])
        for fp in fragments(pi.last, fragment_bound):
            if trace_of(ya, fp) != want or not config_corresponds(c, y.config(fp.last), old, new):
                continue
            if _fragment_member_trace(y, fp, new) != want_member:
                continue
            ext = Execution(ya.aut_id, pi.states + fp.states[1:], pi.actions + fp.actions)
            got = search(i + 1, ext, index_map + (len(ext),))
            if got:
                return got
        dead.add(key)
        return None

    c0 = x.config(alpha.states[0])
    for ys in sorted(ya.starts, key=state_key):
        if config_corresponds(c0, y.config(ys), old, new):
            got = search(0, Execution(ya.aut_id, (ys,)), (0,))
            if got:
                return Correspondent(got[0], got[1])
    return Correspondent(None, None, None, None, "no matching execution within the fragment bound")


# ---------------------------------------------------------------- theorem oracle


@dataclass
class CreationBundle:
    """Two configuration automata differing in creating ``old`` versus ``new``.

    ``slack`` multiplies the depth used to explore ``y`` when it was generated
    with a bounded frontier.
    """

    x: ConfigAutomaton
    y: ConfigAutomaton
    old: str
    new: str
    slack: int = 2
    max_executions: int = 50_000
    notes: dict = field(default_factory=dict)


def check_creation_mono(bundle: CreationBundle, depth: int) -> TheoremReport:
    """Bounded finite-trace inclusion of ``x`` in ``y`` under the lemma's hypotheses.

    Every execution of ``x`` up to ``depth`` is also matched through
    ``find_RAB`` and the result replayed through ``verify_RAB``.
    """
    name = "creation-mono"
    checks = lemma_assumptions(bundle.x, bundle.y, bundle.old, bundle.new, depth)
    failed = [c for c in checks if not c.ok]
    if failed:
        return TheoremReport(name, "vacuous", None, "; ".join(str(c) for c in failed))
    count = 0
    capped = False
    for alpha in enumerate_executions(bundle.x, depth):
        if count == bundle.max_executions:
            capped = True
            break
        count += 1
        got = find_RAB(alpha, bundle.x, bundle.y, bundle.old, bundle.new)
        if not got:
            if bundle.y.frontier:
                return TheoremReport(name, "inconclusive", str(alpha),
                                     f"case {got.case}: {got.message}", count)
            return TheoremReport(name, "fail", str(alpha), f"case {got.case}: {got.message}", count)
        verdict = verify_RAB(alpha, got.pi, got.index_map, bundle.x, bundle.y, bundle.old, bundle.new)
        if not verdict:
            return TheoremReport(name, "fail", str(alpha), f"witness rejected: {verdict}", count)
    right_depth = None
    if bundle.y.frontier:
        right_depth = depth * bundle.slack
    inc = trace_inclusion(bundle.x, bundle.y, depth, right_depth=right_depth)
    if not inc.ok:
        result = "inconclusive" if bundle.y.frontier else "fail"
        return TheoremReport(name, result, inc.witness_text(), "trace inclusion", count)
    matched = f"first {count} executions matched" if capped else f"{count} executions matched"
    return TheoremReport(name, "pass", None, f"{matched}; inclusion explored {inc.checked}", count)


def check_creation_equivalence(bundle: CreationBundle, depth: int) -> tuple:
    """Inclusion both ways: ``x`` in ``y``, then ``y`` in ``x`` with the roles of the members swapped."""
    back = CreationBundle(bundle.y, bundle.x, bundle.new, bundle.old, bundle.slack,
                          bundle.max_executions, dict(bundle.notes))
    return check_creation_mono(bundle, depth), check_creation_mono(back, depth)
