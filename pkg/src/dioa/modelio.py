"""JSON model files: loading with full validation, and canonical emission.

A model file is a JSON object with ``"dioa_schema": 1`` and any of the lists
``automata``, ``configuration_automata``, ``compositions``, ``hidings``,
``renamings`` and ``bundles``. Everything is resolved and validated at load;
a file either loads completely or raises :class:`ModelLoadError`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .algebra import IncompatibleError, compose_sioa, hide_sioa, rename_sioa
from .automata import (ConfigAutomaton, CreationPolicy, CreationRule, compose_ca,
                       generate_ca, hide_ca, rename_ca, validate_ca)
from .config import Configuration
from .core import ModelError, Signature, Sioa, ValidationReport, make_sioa, state_key, validate_sioa
from .creation import CreationBundle
from .explorer import FamilyBundle

SCHEMA_VERSION = 1
SECTIONS = ("automata", "configuration_automata", "compositions", "hidings", "renamings",
            "bundles")


class ModelLoadError(ModelError):
    """A model file that cannot be loaded; ``where`` locates the problem."""

    def __init__(self, message: str, where: str = "", report: ValidationReport | None = None):
        text = f"{where}: {message}" if where else message
        if report is not None and not report.ok:
            text += "\n" + "\n".join(f"  {v}" for v in report.violations)
        super().__init__(text, report)
        self.where = where


@dataclass
class ModelFile:
    automata: dict = field(default_factory=dict)
    configuration_automata: dict = field(default_factory=dict)
    derived: dict = field(default_factory=dict)  # compositions, hidings and renamings
    bundles: dict = field(default_factory=dict)
    document: dict = field(default_factory=dict)  # canonical form, as emitted

    def names(self) -> list:
        return list(self.automata) + list(self.configuration_automata) + list(self.derived)

    def target(self, name: str) -> Sioa | ConfigAutomaton:
        for table in (self.automata, self.configuration_automata, self.derived):
            if name in table:
                return table[name]
        raise ModelLoadError(f"unknown target {name!r}; known: {', '.join(self.names()) or 'none'}")

    def bundle(self, name: str):
        if name not in self.bundles:
            raise ModelLoadError(f"unknown bundle {name!r}; known: {', '.join(self.bundles) or 'none'}")
        return self.bundles[name]


# ---------------------------------------------------------------- states as JSON


def state_from_json(v: Any, where: str):
    if isinstance(v, str):
        return v
    if isinstance(v, list) and v:
        return tuple(state_from_json(x, where) for x in v)
    raise ModelLoadError(f"state ids are strings or non-empty arrays, got {json.dumps(v)}", where)


def state_to_json(s) -> Any:
    if isinstance(s, tuple):
        return [state_to_json(x) for x in s]
    return str(s)


# ---------------------------------------------------------------- documents from objects


def automaton_doc(a: Sioa) -> dict:
    states = []
    for s in a.states:
        g = a.sig[s]
        states.append({"id": state_to_json(s), "start": s in a.starts,
                       "inputs": sorted(g.inputs), "outputs": sorted(g.outputs),
                       "internals": sorted(g.internals)})
    steps = sorted(a.steps, key=lambda z: (state_key(z[0]), z[1], state_key(z[2])))
    return {"id": a.aut_id, "states": states,
            "transitions": [[state_to_json(s), x, state_to_json(t)] for s, x, t in steps]}


def rule_doc(rule: Mapping) -> dict:
    return {"config_members": sorted(rule["config_members"]),
            "state_constraints": {k: sorted((state_to_json(s) for s in v), key=_canon)
                                  for k, v in sorted(rule.get("state_constraints", {}).items())},
            "action": rule["action"], "create": sorted(rule["create"])}


def ca_doc(name: str, initial, policy, depth: int | None = None) -> dict:
    inits = [{k: state_to_json(v) for k, v in sorted(c.items())} for c in initial]
    rules = [rule_doc(r) for r in policy]
    return {"id": name, "initial": sorted(inits, key=_canon),
            "policy": sorted(rules, key=_canon), "depth": depth}


def _canon(v) -> str:
    return json.dumps(v, sort_keys=True, ensure_ascii=False)


def document(automata=(), cas: Mapping | None = None, compositions=(), hidings=(),
             renamings=(), bundles=(), description: str = "") -> dict:
    """A schema-1 document from automata objects and plain-dict entries."""
    doc: dict = {"dioa_schema": SCHEMA_VERSION}
    if description:
        doc["description"] = description
    doc["automata"] = [automaton_doc(a) for a in automata]
    doc["configuration_automata"] = [
        ca_doc(name, spec["initial"], spec["policy"], spec.get("depth"))
        for name, spec in (cas or {}).items()]
    doc["compositions"] = [dict(x) for x in compositions]
    doc["hidings"] = [dict(x, actions=sorted(x["actions"])) for x in hidings]
    doc["renamings"] = [dict(x) for x in renamings]
    doc["bundles"] = [dict(x) for x in bundles]
    return doc


# ---------------------------------------------------------------- canonical text


def _dump(v, indent: int = 0, width: int = 100) -> str:
    flat = json.dumps(v, ensure_ascii=False, sort_keys=True)
    if len(flat) + indent <= width or not isinstance(v, (dict, list)) or not v:
        return flat
    pad = " " * (indent + 2)
    if isinstance(v, dict):
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_dump(v[k], indent + 2, width)}"
                 for k in sorted(v)]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    items = [pad + _dump(x, indent + 2, width) for x in v]
    return "[\n" + ",\n".join(items) + "\n" + " " * indent + "]"


def emit_document(doc: Mapping) -> str:
    """Byte-stable text: sorted keys, short values kept on one line."""
    return _dump(doc) + "\n"


def emit_model(model: ModelFile) -> str:
    return emit_document(model.document)


# ---------------------------------------------------------------- loading


def _expect(cond: bool, message: str, where: str):
    if not cond:
        raise ModelLoadError(message, where)


def _strings(v, where: str) -> list:
    _expect(isinstance(v, list) and all(isinstance(x, str) for x in v),
            "expected an array of strings", where)
    return v


def _check_keys(entry, allowed: set, required: set, where: str):
    _expect(isinstance(entry, dict), "expected an object", where)
    missing = sorted(required - set(entry))
    _expect(not missing, "missing " + ", ".join(missing), where)
    extra = sorted(set(entry) - allowed)
    _expect(not extra, "unexpected " + ", ".join(extra), where)


def _load_automaton(entry, where: str) -> Sioa:
    _check_keys(entry, {"id", "states", "transitions"}, {"id", "states"}, where)
    _expect(isinstance(entry["id"], str) and entry["id"], "id must be a non-empty string", where)
    _expect(isinstance(entry["states"], list) and entry["states"], "states must be a non-empty array",
            where)
    sig, starts, seen = {}, [], set()
    for i, st in enumerate(entry["states"]):
        w = f"{where}.states[{i}]"
        _check_keys(st, {"id", "start", "inputs", "outputs", "internals"}, {"id"}, w)
        s = state_from_json(st["id"], w)
        _expect(s not in seen, f"duplicate state {json.dumps(st['id'])}", w)
        seen.add(s)
        _expect(isinstance(st.get("start", False), bool), "start must be a boolean", w)
        if st.get("start", False):
            starts.append(s)
        sig[s] = Signature.of(*(_strings(st.get(k, []), f"{w}.{k}")
                                for k in ("inputs", "outputs", "internals")))
    steps = []
    for i, z in enumerate(entry.get("transitions", [])):
        w = f"{where}.transitions[{i}]"
        _expect(isinstance(z, list) and len(z) == 3 and isinstance(z[1], str),
                "transitions are [source, action, target]", w)
        steps.append((state_from_json(z[0], w), z[1], state_from_json(z[2], w)))
    a = make_sioa(entry["id"], seen, starts, sig, steps)
    report = validate_sioa(a)
    if not report.ok:
        raise ModelLoadError(f"automaton {a.aut_id} is not valid", where, report)
    return a


def _load_rule(r, where: str) -> CreationRule:
    keys = {"config_members", "state_constraints", "action", "create"}
    _check_keys(r, keys, {"config_members", "action", "create"}, where)
    _expect(isinstance(r["action"], str), "action must be a string", where)
    constraints = r.get("state_constraints", {})
    _expect(isinstance(constraints, dict), "state_constraints must be an object", where)
    cons = {}
    for k, v in constraints.items():
        _expect(isinstance(v, list), "state constraint must be an array", f"{where}.state_constraints.{k}")
        cons[k] = frozenset(state_from_json(x, f"{where}.state_constraints.{k}") for x in v)
    return CreationRule(frozenset(_strings(r["config_members"], f"{where}.config_members")),
                        r["action"], frozenset(_strings(r["create"], f"{where}.create")), cons)


def _load_ca(entry, registry: Mapping, where: str) -> ConfigAutomaton:
    _check_keys(entry, {"id", "initial", "policy", "depth"}, {"id", "initial"}, where)
    depth = entry.get("depth")
    _expect(depth is None or (isinstance(depth, int) and not isinstance(depth, bool) and depth >= 0),
            "depth must be a non-negative integer or null", where)
    _expect(isinstance(entry["initial"], list), "initial must be an array", where)
    initial = []
    for i, c in enumerate(entry["initial"]):
        w = f"{where}.initial[{i}]"
        _expect(isinstance(c, dict), "configurations are objects mapping automaton ids to states", w)
        try:
            initial.append(Configuration.of(registry, {k: state_from_json(v, w) for k, v in c.items()}))
        except ModelError as e:
            raise ModelLoadError(str(e), w) from None
    _expect(isinstance(entry.get("policy", []), list), "policy must be an array", where)
    rules = tuple(_load_rule(r, f"{where}.policy[{i}]") for i, r in enumerate(entry.get("policy", [])))
    try:
        x = generate_ca(initial, CreationPolicy(rules), registry, depth, aut_id=entry["id"])
    except ModelError as e:
        raise ModelLoadError(str(e), where) from None
    report = validate_ca(x)
    if not report.ok:
        raise ModelLoadError(f"configuration automaton {x.aut_id} is not valid", where, report)
    return x


def _derive(kind: str, entry, resolve, where: str):
    if kind == "compositions":
        _check_keys(entry, {"id", "of"}, {"id", "of"}, where)
        parts = [resolve(n) for n in _strings(entry["of"], f"{where}.of")]
        _expect(bool(parts), "a composition needs at least one part", where)
        if all(isinstance(p, ConfigAutomaton) for p in parts):
            return compose_ca(parts, entry["id"])
        return compose_sioa([getattr(p, "underlying", p) for p in parts], entry["id"])
    if kind == "hidings":
        _check_keys(entry, {"id", "of", "actions"}, {"id", "of", "actions"}, where)
        m = resolve(entry["of"])
        acts = _strings(entry["actions"], f"{where}.actions")
        if isinstance(m, ConfigAutomaton):
            x = hide_ca(m, acts)
            return ConfigAutomaton(_renamed_id(x.underlying, entry["id"]), x.config_map, x.created_map,
                                   x.registry, x.frontier)
        return _renamed_id(hide_sioa(m, acts), entry["id"])
    _check_keys(entry, {"id", "of", "mapping", "ids"}, {"id", "of", "mapping"}, where)
    m = resolve(entry["of"])
    mapping = entry["mapping"]
    _expect(isinstance(mapping, dict) and all(isinstance(v, str) for v in mapping.values()),
            "mapping must map actions to actions", where)
    acts = set(getattr(m, "underlying", m).acts())
    if isinstance(m, ConfigAutomaton):
        for k in m.member_ids():
            acts |= m.registry[k].acts()
    full = {x: mapping.get(x, x) for x in acts}
    if isinstance(m, ConfigAutomaton):
        return rename_ca(m, full, entry.get("ids"), entry["id"])
    return rename_sioa(m, full, entry["id"])


def _renamed_id(a: Sioa, aut_id: str) -> Sioa:
    return Sioa(aut_id, a.states, a.starts, a.sig, a.steps, a.components)


def _load_bundle(entry, model: ModelFile, where: str):
    _expect(isinstance(entry, dict) and entry.get("kind") in ("family", "creation"),
            'bundles need "kind": "family" or "creation"', where)
    if entry["kind"] == "creation":
        _check_keys(entry, {"id", "kind", "x", "y", "old", "new", "slack"},
                    {"id", "kind", "x", "y", "old", "new"}, where)
        x, y = model.target(entry["x"]), model.target(entry["y"])
        _expect(isinstance(x, ConfigAutomaton) and isinstance(y, ConfigAutomaton),
                "creation bundles relate configuration automata", where)
        return CreationBundle(x, y, entry["old"], entry["new"], entry.get("slack", 2))
    _check_keys(entry, {"id", "kind", "components", "alternates", "hidden", "renaming"},
                {"id", "kind", "components"}, where)

    def autos(names, w):
        return [getattr(model.target(n), "underlying", model.target(n)) for n in _strings(names, w)]

    comps = autos(entry["components"], f"{where}.components")
    alts = autos(entry["alternates"], f"{where}.alternates") if "alternates" in entry else None
    _expect(alts is None or len(alts) == len(comps), "alternates must match components one to one",
            where)
    return FamilyBundle(comps, alts, frozenset(_strings(entry.get("hidden", []), f"{where}.hidden")),
                        entry.get("renaming"))


def parse_document(text: str, source: str = "<string>") -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelLoadError(e.msg, f"{source}:{e.lineno}:{e.colno}") from None
    _expect(isinstance(doc, dict), "a model file is a JSON object", source)
    _expect(doc.get("dioa_schema") == SCHEMA_VERSION,
            f'expected "dioa_schema": {SCHEMA_VERSION}', source)
    extra = sorted(set(doc) - set(SECTIONS) - {"dioa_schema", "description"})
    _expect(not extra, "unknown sections " + ", ".join(extra), source)
    for sec in SECTIONS:
        _expect(isinstance(doc.get(sec, []), list), f"{sec} must be an array", source)
    return doc


def load_document(doc: Mapping, source: str = "<string>") -> ModelFile:
    model = ModelFile()
    taken: set = set()

    def claim(name, where):
        _expect(isinstance(name, str) and bool(name), "id must be a non-empty string", where)
        _expect(name not in taken, f"duplicate id {name!r}", where)
        taken.add(name)

    for i, entry in enumerate(doc.get("automata", [])):
        where = f"{source}: automata[{i}]"
        claim(entry.get("id") if isinstance(entry, dict) else None, where)
        model.automata[entry["id"]] = _load_automaton(entry, where)
    for i, entry in enumerate(doc.get("configuration_automata", [])):
        where = f"{source}: configuration_automata[{i}]"
        claim(entry.get("id") if isinstance(entry, dict) else None, where)
        model.configuration_automata[entry["id"]] = _load_ca(entry, model.automata, where)
    pending = []
    for kind in ("compositions", "hidings", "renamings"):
        for i, entry in enumerate(doc.get(kind, [])):
            where = f"{source}: {kind}[{i}]"
            claim(entry.get("id") if isinstance(entry, dict) else None, where)
            pending.append((kind, entry, where))
    # derived entries may refer to each other in any order
    while pending:
        left = []
        for kind, entry, where in pending:
            refs = entry.get("of", [])
            refs = refs if isinstance(refs, list) else [refs]
            if any(isinstance(r, str) and r in taken and r not in model.automata
                   and r not in model.configuration_automata and r not in model.derived for r in refs):
                left.append((kind, entry, where))
                continue
            try:
                model.derived[entry["id"]] = _derive(kind, entry, model.target, where)
            except ModelLoadError as e:
                raise ModelLoadError(str(e).removeprefix(f"{where}: "), where) from None
            except (ModelError, IncompatibleError, ValueError) as e:
                raise ModelLoadError(str(e), where) from None
        _expect(len(left) < len(pending), "derived entries refer to each other in a cycle",
                left[0][2] if left else source)
        pending = left
    for i, entry in enumerate(doc.get("bundles", [])):
        where = f"{source}: bundles[{i}]"
        claim(entry.get("id") if isinstance(entry, dict) else None, where)
        model.bundles[entry["id"]] = _load_bundle(entry, model, where)
    model.document = _canonical(doc, model)
    return model


def _canonical(doc: Mapping, model: ModelFile) -> dict:
    out: dict = {"dioa_schema": SCHEMA_VERSION}
    if doc.get("description"):
        out["description"] = doc["description"]
    out["automata"] = [automaton_doc(a) for a in model.automata.values()]
    cas = []
    for entry in doc.get("configuration_automata", []):
        rules = [dict(r, state_constraints={k: [state_from_json(x, "") for x in v]
                                            for k, v in r.get("state_constraints", {}).items()})
                 for r in entry.get("policy", [])]
        cas.append(ca_doc(entry["id"], [{k: state_from_json(v, "") for k, v in c.items()}
                                        for c in entry["initial"]], rules, entry.get("depth")))
    out["configuration_automata"] = cas
    for kind in ("compositions", "hidings", "renamings", "bundles"):
        out[kind] = [dict(e) for e in doc.get(kind, [])]
    for e in out["hidings"]:
        e["actions"] = sorted(e["actions"])
    return out


def loads_model(text: str, source: str = "<string>") -> ModelFile:
    return load_document(parse_document(text, source), source)


def load_model(path: str | Path) -> ModelFile:
    """Load and validate a model file, or a bundled example given by name."""
    p = Path(path)
    if not p.exists() and str(path) in example_names():
        return loads_model(example_text(str(path)), f"{path}.dioa.json")
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ModelLoadError(f"cannot read model file: {e.strerror}", str(path)) from None
    return loads_model(text, str(path))


# ---------------------------------------------------------------- bundled examples


def example_names() -> list:
    files = resources.files("dioa") / "data"
    return sorted(f.name.removesuffix(".dioa.json") for f in files.iterdir()
                  if f.name.endswith(".dioa.json"))


def example_text(name: str) -> str:
    f = resources.files("dioa") / "data" / f"{name}.dioa.json"
    if not f.is_file():
        raise ModelLoadError(f"no bundled example {name!r}; known: {', '.join(example_names())}")
    return f.read_text(encoding="utf-8")
