import warnings

import pytest

from dioa import models
from dioa.algebra import IncompatibleError
from dioa.config import (Configuration, config_compatible, destruction_warnings,
                         intrinsic_signature, intrinsic_successors, is_reduced, reduce_config,
                         warn_destruction)
from dioa.core import ModelError, Signature, make_sioa


@pytest.fixture
def reg(one, sink):
    other = make_sioa("ONE2", ["u2"], ["u2"], {"u2": Signature.of((), ["a"])}, [("u2", "a", "u2")])
    gone = make_sioa("G", ["g0", "g1"], ["g0"],
                     {"g0": Signature.of((), ["x"]), "g1": Signature()}, [("g0", "x", "g1")])
    return {a.aut_id: a for a in (one, sink, other, gone)}


def test_compatibility(reg):
    assert config_compatible(Configuration.of(reg, {"ONE": "u", "SINK": "v"}))
    assert not config_compatible(Configuration.of(reg, {"ONE": "u", "ONE2": "u2"}))
    assert config_compatible(Configuration.of(reg, {}))


def test_intrinsic_signature(reg):
    c = Configuration.of(reg, {"ONE": "u", "SINK": "v"})
    assert intrinsic_signature(c) == Signature.of((), ["a"])
    assert intrinsic_signature(Configuration.of(reg, {})) == Signature()
    with pytest.raises(IncompatibleError):
        intrinsic_signature(Configuration.of(reg, {"ONE": "u", "ONE2": "u2"}))


def test_phone_configuration_outputs():
    autos = models.mobile_phone()
    reg = {a.aut_id: a for a in autos}
    c = Configuration.of(reg, {a.aut_id: next(iter(a.starts)) for a in autos})
    assert intrinsic_signature(c).outputs == {"talk1", "switch1", "lose1", "gain1", "lose2", "gain2"}


def test_reduce(reg):
    dead = Configuration.of(reg, {"G": "g1"})
    assert reduce_config(dead) == Configuration.of(reg, {})
    live = Configuration.of(reg, {"ONE": "u", "G": "g0"})
    assert reduce_config(live) == live and is_reduced(live)
    mixed = Configuration.of(reg, {"ONE": "u", "G": "g1"})
    assert reduce_config(reduce_config(mixed)) == reduce_config(mixed)


def test_configuration_text(reg):
    assert str(Configuration.of(reg, {"SINK": "v", "ONE": "u"})) == "[ONE@u, SINK@v]"


def test_configuration_of_checks(reg):
    with pytest.raises(ModelError):
        Configuration.of(reg, {"NOPE": "u"})
    with pytest.raises(ModelError):
        Configuration.of(reg, {"ONE": "zz"})


def test_successor_examples(reg):
    assert intrinsic_successors(Configuration.of(reg, {}), "a") == []
    c = Configuration.of(reg, {"ONE": "u"})
    assert intrinsic_successors(c, "a") == [c]


def test_destruction_removes_member(reg):
    c = Configuration.of(reg, {"ONE": "u", "G": "g0"})
    assert intrinsic_successors(c, "x") == [Configuration.of(reg, {"ONE": "u"})]


def test_creation_on_c(example):
    x = example.target("X")
    reg = x.registry
    c = Configuration.of(reg, {"C": "u0"})
    got = intrinsic_successors(c, "c", {"A"}, reg)
    assert got == [Configuration.of(reg, {"A": "s0", "C": "u1"}),
                   Configuration.of(reg, {"A": "s0", "C": "u2"})]


def test_create_set_members_already_present_have_no_effect(reg):
    c = Configuration.of(reg, {"ONE": "u", "SINK": "v"})
    assert intrinsic_successors(c, "a", {"ONE"}) == intrinsic_successors(c, "a")


def test_incompatible_intermediate_is_dropped(reg):
    # creating ONE2 next to ONE clashes on output a, so no successor survives
    c = Configuration.of(reg, {"ONE": "u"})
    assert intrinsic_successors(c, "a", {"ONE2"}) == []


def test_unknown_created_id(reg):
    with pytest.raises(ModelError):
        intrinsic_successors(Configuration.of(reg, {"ONE": "u"}), "a", {"NOPE"})


def test_destruction_warnings():
    a = make_sioa("M", ["m0", "m1", "m2"], ["m0"],
                  {"m0": Signature.of((), ["x"]), "m1": Signature(), "m2": Signature.of((), ["x"])},
                  [("m0", "x", "m1"), ("m0", "x", "m2"), ("m2", "x", "m2")])
    assert destruction_warnings(a) == [("m0", "x")]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        warn_destruction(a)
    assert len(caught) == 1
