import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floerkit.config import ConfigError, format_rational, load_config, loads, normalize, parse_rational
from floerkit.filtered import map_by_ids
from floerkit.random_models import random_complex
from floerkit.serialize import chain_map_from_doc, chain_map_to_doc, dumps_complex, loads_complex
from floerkit.spectral import model_h_delta_a
from floerkit.radial import annulus
from floerkit.cli import preset_dir

BASIC = """
domain: annulus
hamiltonians:
  H: {H_delta_A: {delta: 0.1, A: [5, 2]}}
  S: {segments: {radii: ["3/10", 1], values: [-1, 0]}}
  T: {scale: {of: S, factor: "1/2"}}
diagrams:
  main: {slopes: ["1/2", 1.5]}
jobs:
  - {command: orbits, hamiltonian: H}
"""


@pytest.mark.parametrize("text,value", [(3, F(3)), ("3/6", F(1, 2)), ("0.1", F(1, 10)), (0.1, F(1, 10)),
                                        ([-3, 4], F(-3, 4)), (" -7 / 2 ", F(-7, 2)), ("1e3", None),
                                        (True, None), ("x", None), ([1, 0], None)])
def test_parse_rational(text, value):
    if value is None:
        with pytest.raises(ConfigError):
            parse_rational(text)
    else:
        assert parse_rational(text) == value


@given(st.fractions())
def test_rational_normal_form_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_normal_form_is_byte_stable():
    doc = loads(BASIC)
    text = doc.serialize()
    again = loads(text)
    assert again.serialize() == text
    assert again.raw == normalize(again.raw)
    assert again.hamiltonians["H"] == {"H_delta_A": {"delta": "1/10", "A": "5/2"}}


def test_shipped_bundles_round_trip():
    for name in ("annulus", "ball"):
        doc = load_config(preset_dir() / f"{name}.yaml")
        doc.check_references()
        assert loads(doc.serialize()).serialize() == doc.serialize()


def test_resolution():
    doc = loads(BASIC)
    assert doc.model("H").complex == model_h_delta_a(annulus(), F(1, 10), F(5, 2)).complex
    assert doc.profile("T").values == (F(-1, 2), F(0))
    assert doc.diagram("main").slopes == [F(1, 2), F(3, 2)]


@pytest.mark.parametrize("text,needle", [
    ("domain: annulus\nhamiltonians:\n  H: {zero: {}}\n  H: {zero: {}}\n", "duplicate key"),
    ("domain: torus\n", "unknown domain"),
    ("domain: annulus\nextra: 1\n", "unknown top-level"),
    ("domain: annulus\nhamiltonians:\n  H: {blob: {}}\n", "unknown constructor"),
    ("domain: annulus\nhamiltonians:\n  H: {H0A: {}}\n", "missing"),
    ("domain: annulus\nhamiltonians:\n  H: {zero: {}}\ndiagrams:\n  H: {slopes: [1]}\n", "used twice"),
    ("domain: annulus\njobs:\n  - {command: fly}\n", "unknown command"),
    ("[1, 2]\n", "mapping"),
])
def test_malformed_documents(text, needle):
    with pytest.raises(ConfigError, match=needle):
        loads(text)


@pytest.mark.parametrize("body,needle", [
    ("hamiltonians:\n  A: {negate: {of: B}}\n  B: {negate: {of: A}}\n", "circular"),
    ("hamiltonians:\n  A: {negate: {of: nowhere}}\n", "unresolved"),
    ("jobs:\n  - {command: orbits, hamiltonian: ghost}\n", "unresolved"),
    ("diagrams:\n  d: {slopes: [2, 3]}\n", "diagram"),
    ("hamiltonians:\n  A: {segments: {radii: [1, \"1/2\"], values: [0, 0]}}\n", "A"),
])
def test_broken_references(body, needle):
    doc = loads("domain: annulus\n" + body)
    with pytest.raises(ConfigError, match=needle):
        doc.check_references()


def test_noncompact_model_refused():
    doc = loads("domain: annulus\nhamiltonians:\n  K: {K: {r1: 1, tau: \"3/2\"}}\n")
    doc.profile("K")
    with pytest.raises(ConfigError, match="compact"):
        doc.model("K")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 12))
def test_complex_document_round_trip(seed, n):
    c, _ = random_complex(random.Random(seed), n)
    assert loads_complex(dumps_complex(c)) == c
    f = map_by_ids(c, c, F(1, 3), "id")
    g = chain_map_from_doc(chain_map_to_doc(f))
    assert (g.matrix, g.shift, g.name) == (f.matrix, f.shift, f.name)


def test_complex_document_rejects_garbage():
    with pytest.raises(ConfigError):
        loads_complex("generators:\n  - {id: a}\n")
    with pytest.raises(ConfigError):
        loads_complex("differential: []\n")
