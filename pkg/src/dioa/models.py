"""Builders for the bundled example models.

Each automaton is written as guarded commands over a small record of state
variables and expanded breadth-first into an explicit automaton.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable

from .core import Signature, Sioa, make_sioa


def expand(aut_id: str, starts: Iterable, signature: Callable, moves: Callable,
           name: Callable = str, skip_inputs: bool = True) -> Sioa:
    """Explicit automaton reachable from ``starts``.

    ``signature(v)`` gives the signature at state value ``v`` and ``moves(v)``
    the (action, next value) pairs. With ``skip_inputs`` an input that has no
    move loops in place.
    """
    starts = list(starts)
    seen = {name(v): v for v in starts}
    queue = deque(starts)
    sig, steps = {}, set()
    while queue:
        v = queue.popleft()
        s = name(v)
        g = signature(v)
        sig[s] = g
        enabled = set()
        for act, w in moves(v):
            if act not in g.actions():
                raise ValueError(f"{aut_id}: move {act} outside the signature at {s}")
            t = name(w)
            enabled.add(act)
            steps.add((s, act, t))
            if t not in seen:
                seen[t] = w
                queue.append(w)
        if skip_inputs:
            for act in g.inputs - enabled:
                steps.add((s, act, s))
    return make_sioa(aut_id, seen, [name(v) for v in starts], sig, steps)


def table(aut_id: str, starts, sigs: dict, steps) -> Sioa:
    """Automaton from an explicit table: ``sigs`` maps state -> (inputs, outputs, internals)."""
    return make_sioa(aut_id, sigs, starts,
                     {s: Signature.of(*g) for s, g in sigs.items()}, steps)


# ---------------------------------------------------------------- small fixtures


def one() -> Sioa:
    return table("ONE", ["u"], {"u": ((), ("a",), ())}, [("u", "a", "u")])


def sink() -> Sioa:
    return table("SINK", ["v"], {"v": (("a",), (), ())}, [("v", "a", "v")])


# ---------------------------------------------------------------- mobile phone


def car() -> Sioa:
    return table("Car", ["c1"], {
        "c1": (("switch1",), ("talk1",), ()),
        "c2": (("switch2",), ("talk2",), ()),
    }, [("c1", "talk1", "c1"), ("c1", "switch1", "c2"),
        ("c2", "talk2", "c2"), ("c2", "switch2", "c1")])


def _transmitter(i: str, active: bool) -> Sioa:
    lose, gain, talk, switch = f"lose{i}", f"gain{i}", f"talk{i}", f"switch{i}"

    def signature(v):
        act, transferring, connected = v
        return Signature.of({lose, gain} | ({talk} if connected else set()),
                            {switch} if connected else ())

    def moves(v):
        act, transferring, connected = v
        yield lose, ((False, True, connected) if act else v)
        yield gain, (True, transferring, True)
        if connected:
            yield talk, v
            if transferring:
                yield switch, (act, False, False)

    def name(v):
        act, transferring, connected = v
        return f"t{i}_{'a' if act else 'i'}{'x' if transferring else 'n'}{'c' if connected else 'd'}"

    return expand(f"Trans{i}", [(active, False, active)], signature, moves, name)


def trans1() -> Sioa:
    return _transmitter("1", True)


def trans2() -> Sioa:
    return _transmitter("2", False)


def control() -> Sioa:
    outs = ("lose1", "gain1", "lose2", "gain2")

    def moves(v):
        assigned, transferring = v
        if assigned == 1 and not transferring:
            yield "lose1", (2, True)
        if assigned == 2 and transferring:
            yield "gain2", (2, False)
        if assigned == 2 and not transferring:
            yield "lose2", (1, True)
        if assigned == 1 and transferring:
            yield "gain1", (1, False)

    return expand("Control", [(1, False)], lambda v: Signature.of((), outs), moves,
                  lambda v: f"k{v[0]}{'x' if v[1] else 'n'}")


def mobile_phone() -> list:
    return [car(), trans1(), trans2(), control()]


# ---------------------------------------------------------------- creation example and fixture


def creation_example() -> dict:
    """Two configuration automata that create look-alike members at different points.

    X creates ``A`` when ``C`` performs ``c``; Y lets ``C`` perform ``c`` and
    creates ``B`` on ``C``'s later internal step. ``A`` and ``B`` share the
    external signature ({} | {a,b}) at their start, but only ``B`` enables ``b``.
    """
    c = table("C", ["u0"], {
        "u0": ((), ("c",), ()),
        "u1": ((), (), ("tau",)),
        "u2": ((), ("d",), ()),
        "dead": ((), (), ()),
    }, [("u0", "c", "u1"), ("u0", "c", "u2"), ("u1", "tau", "dead"), ("u2", "d", "dead")])
    a = table("A", ["s0"], {"s0": ((), ("a", "b"), ()), "s1": ((), (), ())},
              [("s0", "a", "s1")])
    b = table("B", ["t0"], {"t0": ((), ("a", "b"), ()), "t1": ((), (), ())},
              [("t0", "a", "t1"), ("t0", "b", "t1")])
    return {
        "automata": [a, b, c],
        "cas": {
            "X": {"initial": [{"C": "u0"}],
                  "policy": [{"config_members": ["C"], "state_constraints": {"C": ["u0"]},
                              "action": "c", "create": ["A"]}]},
            "Y": {"initial": [{"C": "u0"}],
                  "policy": [{"config_members": ["C"], "state_constraints": {"C": ["u1"]},
                              "action": "tau", "create": ["B"]}]},
        },
    }


def creation_fixture() -> dict:
    """X and Y create ``A`` resp. ``B`` on the same action; ``B`` needs an internal step first."""
    c = table("C", ["u0"], {
        "u0": ((), ("c",), ()),
        "u1": ((), ("d", "g"), ()),
        "dead": ((), (), ()),
    }, [("u0", "c", "u1"), ("u1", "g", "u1"), ("u1", "d", "dead")])
    a = table("A", ["s0"], {
        "s0": ((), ("a",), ()),
        "s1": (("g",), ("e",), ("i",)),
        "s2": (("g",), ("e",), ()),
        "s3": ((), (), ()),
    }, [("s0", "a", "s1"), ("s1", "g", "s1"), ("s1", "i", "s2"), ("s1", "e", "s3"),
        ("s2", "g", "s2"), ("s2", "e", "s3")])
    b = table("B", ["t0"], {
        "t0": ((), ("a",), ("j",)),
        "t1": ((), ("a",), ("j",)),
        "t2": (("g",), ("e",), ()),
        "t3": ((), (), ()),
    }, [("t0", "j", "t1"), ("t1", "a", "t2"), ("t2", "g", "t2"), ("t2", "e", "t3")])
    return {
        "automata": [a, b, c],
        "cas": {
            "X": {"initial": [{"C": "u0"}],
                  "policy": [{"config_members": ["C"], "state_constraints": {},
                              "action": "c", "create": ["A"]}]},
            "Y": {"initial": [{"C": "u0"}],
                  "policy": [{"config_members": ["C"], "state_constraints": {},
                              "action": "c", "create": ["B"]}]},
        },
    }


# ---------------------------------------------------------------- travel agent

DATABASES = ("d1", "d2")
# flight descriptor of the single request; "bot" stands for no flight
RESULTS = (("fl", "T"), ("bot", "F"))


def _inform(d, found):
    return f"inform_{d}_{'fl' if found else 'none'}"


def _conf(d, fd, ok):
    return f"conf_{d}_{fd}_{ok}"


def _db_inputs(d) -> set:
    return {_inform(d, True), _inform(d, False)} | {_conf(d, fd, ok) for fd, ok in RESULTS}


def _db_outputs(d) -> set:
    return {f"query_{d}", f"buy_{d}"}


RESPONSES = tuple(f"response_{fd}_{ok}" for fd, ok in RESULTS)
AGENT_RESPONSES = tuple(f"req_agent_response_{fd}_{ok}" for fd, ok in RESULTS)


def client_agent() -> Sioa:
    # state: (requested, created, done, pending responses)
    def signature(v):
        requested, created, done, resps = v
        ins = {"request"}
        if created and not done:
            ins |= set(AGENT_RESPONSES)
        return Signature.of(ins, {"create"} | set(RESPONSES))

    def moves(v):
        requested, created, done, resps = v
        yield "request", (True, created, done, resps)
        if requested and not created:
            yield "create", (requested, True, done, resps)
        if created and not done:
            for (fd, ok), act in zip(RESULTS, AGENT_RESPONSES):
                yield act, (requested, created, True, resps | {(fd, ok)})
        for fd, ok in sorted(resps):
            yield f"response_{fd}_{ok}", (requested, created, done, resps - {(fd, ok)})

    def name(v):
        requested, created, done, resps = v
        flags = "".join(x if y else "-" for x, y in zip("rcd", (requested, created, done)))
        return f"ca_{flags}_" + ("+".join(f"{fd}{ok}" for fd, ok in sorted(resps)) or "0")

    return expand("ClientAgt", [(False, False, False, frozenset())], signature, moves, name)


def request_agent(aut_id: str = "ReqAgt", heuristic: bool = False) -> Sioa:
    """The request agent for the single request.

    With ``heuristic`` the destination of every move is fixed by ``next()``:
    first ``d1``, then whichever database remains.
    """
    moves_all = {f"move_c_{d}" for d in DATABASES} | {
        f"move_{d}_{e}" for d in DATABASES for e in DATABASES if d != e}
    # state: (location, status, trans, remaining, tkt, okflts, queried, ordered, destroyed)

    def signature(v):
        loc, status, trans, remaining, tkt, okflts, queried, ordered, gone = v
        if gone:
            return Signature()
        if loc == "c":
            return Signature.of((), AGENT_RESPONSES, moves_all)
        return Signature.of(_db_inputs(loc), _db_outputs(loc) | set(AGENT_RESPONSES), moves_all)

    def nxt(remaining):
        return min(remaining) if remaining else None

    def moves(v):
        loc, status, trans, remaining, tkt, okflts, queried, ordered, gone = v
        if gone:
            return
        if loc == "c":
            for d in DATABASES:
                if heuristic and d != nxt(remaining):
                    continue
                yield f"move_c_{d}", (d, status, trans | {d}, remaining - {d}, tkt, okflts,
                                      queried, ordered, gone)
            return
        d = loc
        if d not in queried:
            yield f"query_{d}", (loc, status, trans, remaining, tkt, okflts, queried | {d},
                                 ordered, gone)
        for found in (True, False):
            ok = okflts | ({d} if found else set())
            t = trans if d in ok else trans - {d}
            yield _inform(d, found), (loc, status, t, remaining, tkt, frozenset(ok), queried,
                                      ordered, gone)
        if d in okflts and tkt == "bot" and d in trans and d not in ordered:
            yield f"buy_{d}", (loc, status, trans, remaining, tkt, okflts, queried,
                               ordered | {d}, gone)
        for fd, ok in RESULTS:
            if ok == "T":
                after = (loc, "purchased", trans - {d}, remaining, fd, okflts, queried, ordered, gone)
            elif not remaining:
                after = (loc, "failed", trans - {d}, remaining, tkt, okflts, queried, ordered, gone)
            else:
                after = (loc, status, trans - {d}, remaining, tkt, okflts, queried, ordered, gone)
            yield _conf(d, fd, ok), after
        if status == "unknown":
            for e in sorted(remaining):
                if heuristic and e != nxt(remaining):
                    continue
                yield f"move_{d}_{e}", (e, status, trans | {e}, remaining - {e}, tkt, okflts,
                                        queried, ordered, gone)
        if status == "purchased" and tkt != "bot":
            yield f"req_agent_response_{tkt}_T", v[:-1] + (True,)
        if status == "failed":
            yield "req_agent_response_bot_F", v[:-1] + (True,)

    def name(v):
        loc, status, trans, remaining, tkt, okflts, queried, ordered, gone = v
        if gone:
            return "gone"
        sets = [trans, remaining, okflts, queried, ordered]
        return f"ra_{loc}_{status}_{tkt}_" + "_".join("".join(sorted(x)) or "0" for x in sets)

    empty = frozenset()
    start = ("c", "unknown", empty, frozenset(DATABASES), "bot", empty, empty, empty, False)
    return expand(aut_id, [start], signature, moves, name)


def spec_agent(bound: int = 1) -> Sioa:
    """The abstract agent, with every database queried at most ``bound`` times."""
    everything_in = set().union(*(_db_inputs(d) for d in DATABASES))
    everything_out = set().union(*(_db_outputs(d) for d in DATABASES))
    internals = {f"select_{d}" for d in DATABASES} | {"adjustsig"}
    # state: (status, trans, okflts, resps, budget, selected)

    def signature(v):
        status, trans, okflts, resps, budget, sel = v
        ins = {"request"} | (_db_inputs(sel) if sel else set())
        outs = set(RESPONSES) | (_db_outputs(sel) if sel else set())
        return Signature.of(ins, outs, internals)

    def moves(v):
        status, trans, okflts, resps, budget, sel = v
        yield "request", (("submitted" if status == "notsubmitted" else status),) + v[1:]
        for d in DATABASES:
            yield f"select_{d}", v[:-1] + (d,)
        yield "adjustsig", v[:-1] + (None,)
        if sel:
            d = sel
            i = DATABASES.index(d)
            if status == "submitted" and budget[i] > 0:
                nb = budget[:i] + (budget[i] - 1,) + budget[i + 1:]
                yield f"query_{d}", (status, trans | {d}, okflts, resps, nb, sel)
            for found in (True, False):
                yield _inform(d, found), (status, trans, okflts | ({d} if found else set()),
                                          resps, budget, sel)
            if status == "submitted" and d in okflts and d in trans:
                yield f"buy_{d}", v
            for fd, ok in RESULTS:
                t = trans - {d}
                if ok == "T":
                    after = ("computed", t, okflts, resps | {(fd, ok)}, budget, sel)
                elif all(x == 0 for x in budget):
                    after = ("computed", t, okflts, resps | {(fd, ok)}, budget, sel)
                else:
                    after = (status, t, okflts, resps, budget, sel)
                yield _conf(d, fd, ok), after
        if status == "computed":
            for fd, ok in sorted(resps):
                yield f"response_{fd}_{ok}", ("replied",) + v[1:]

    def name(v):
        status, trans, okflts, resps, budget, sel = v
        return (f"sp_{status}_{''.join(sorted(trans)) or '0'}_{''.join(sorted(okflts)) or '0'}_"
                + ("+".join(f"{fd}{ok}" for fd, ok in sorted(resps)) or "0")
                + "_" + "".join(str(x) for x in budget) + f"_{sel or 'none'}")

    start = ("notsubmitted", frozenset(), frozenset(), frozenset(), (bound,) * len(DATABASES), None)
    a = expand("Spec", [start], signature, moves, name)
    assert everything_in >= set().union(*(g.inputs for g in a.sig.values())) - {"request"}
    assert everything_out >= set().union(*(g.outputs for g in a.sig.values())) - set(RESPONSES)
    return a


def database(d: str, conforming: bool, available: bool) -> Sioa:
    """A database front end; ``conforming`` says whether it lists the flight."""
    # state: (received, ordered, avail)
    def moves(v):
        received, ordered, avail = v
        yield f"query_{d}", (True, ordered, avail)
        yield f"buy_{d}", (received, True, avail)
        if received:
            yield _inform(d, conforming), v
        if ordered:
            if conforming and avail:
                yield _conf(d, "fl", "T"), (received, False, False)
            else:
                yield _conf(d, "bot", "F"), (received, False, avail)

    return expand(f"DB_{d}", [(False, False, available)],
                  lambda v: Signature.of(_db_outputs(d), _db_inputs(d)), moves,
                  lambda v: f"db_{d}_" + "".join("1" if x else "0" for x in v))


TRAVEL_HIDDEN = tuple(sorted(
    {"create"} | set(AGENT_RESPONSES)
    | {f"move_c_{d}" for d in DATABASES}
    | {f"move_{d}_{e}" for d in DATABASES for e in DATABASES if d != e}
    | set().union(*(_db_outputs(d) for d in DATABASES))
    | set().union(*(_db_inputs(d) for d in DATABASES))
    | {f"select_{d}" for d in DATABASES} | {"adjustsig"}))


def travel_agent() -> dict:
    autos = [client_agent(), request_agent(), request_agent("ReqAgt2", heuristic=True),
             spec_agent(), database("d1", False, False), database("d2", True, True)]
    rule = {"config_members": ["ClientAgt"], "state_constraints": {}, "action": "create"}
    return {
        "automata": autos,
        "cas": {
            "Impl": {"initial": [{"ClientAgt": _client_start(autos[0])}],
                     "policy": [dict(rule, create=["ReqAgt"])]},
            "Impl2": {"initial": [{"ClientAgt": _client_start(autos[0])}],
                      "policy": [dict(rule, create=["ReqAgt2"])]},
            "DBs": {"initial": [{"DB_d1": next(iter(autos[4].starts)),
                                 "DB_d2": next(iter(autos[5].starts))}], "policy": []},
            "SpecCA": {"initial": [{"Spec": next(iter(autos[3].starts))}], "policy": []},
        },
    }


def _client_start(a: Sioa) -> str:
    return next(iter(a.starts))


# ---------------------------------------------------------------- bundled model files


def example_documents() -> dict:
    """The bundled model files, keyed by example name."""
    from .modelio import document

    ex, fx, ta = creation_example(), creation_fixture(), travel_agent()
    return {
        "basics": document(
            [one(), sink()], compositions=[{"id": "ONE_SINK", "of": ["ONE", "SINK"]}],
            description="An output-only automaton and a matching input-only sink."),
        "mobile_phone": document(
            mobile_phone(), compositions=[{"id": "Phone", "of": ["Car", "Trans1", "Trans2", "Control"]}],
            bundles=[{"id": "phone", "kind": "family",
                      "components": ["Car", "Trans1", "Trans2", "Control"]}],
            description="A car handed over between two transmitters by a controller. Control "
                        "enables gain_i only when transmitter i is not already active."),
        "creation_example": document(
            ex["automata"], ex["cas"],
            bundles=[{"id": "x-to-y", "kind": "creation", "x": "X", "y": "Y",
                      "old": "A", "new": "B"}],
            description="Reconstructed so that the action traces of X are c, ca, cad, cd, cda and "
                        "those of Y are c, ca, cb, cd. A and B both start with outputs {a,b}, but b "
                        "is not enabled at the start of A."),
        "creation_fixture": document(
            fx["automata"], fx["cas"],
            bundles=[{"id": "x-to-y", "kind": "creation", "x": "X", "y": "Y",
                      "old": "A", "new": "B"}],
            description="Y creates B where X creates A; B matches every trace of A after "
                        "extra internal steps."),
        "travel_agent": document(
            ta["automata"], ta["cas"],
            compositions=[{"id": "ImplWithDBs", "of": ["Impl", "DBs"]}],
            hidings=[{"id": "ImplHidden", "of": "Impl", "actions": list(TRAVEL_HIDDEN)},
                     {"id": "SpecHidden", "of": "Spec", "actions": list(TRAVEL_HIDDEN)},
                     {"id": "SpecCAHidden", "of": "SpecCA", "actions": list(TRAVEL_HIDDEN)}],
            bundles=[{"id": "heuristic", "kind": "creation", "x": "Impl2", "y": "Impl",
                      "old": "ReqAgt2", "new": "ReqAgt"}],
            description="One request, two databases (d1 unavailable and non-conforming, d2 "
                        "conforming), and at most one flight per database. Impl2 creates the "
                        "request agent variant that always moves to d1 first."),
    }
