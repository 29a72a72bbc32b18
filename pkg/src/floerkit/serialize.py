"""Complexes and chain maps as plain documents (YAML/JSON friendly, exact rationals as strings)."""
from __future__ import annotations

from fractions import Fraction
from typing import Any

from . import gf2
from .config import ConfigError, dump, load_yaml, parse_rational
from .filtered import INF, FilteredChainMap, FilteredComplex, OrbitGenerator


def action_str(x) -> str:
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return str(Fraction(x))


def complex_to_doc(c: FilteredComplex) -> dict:
    gens = []
    for g in c.generators:
        entry = {"id": g.id, "degree": g.degree, "action": action_str(g.action)}
        if g.kind != "constant" or g.family or g.morse_index:
            entry.update(kind=g.kind, family=g.family, morse_index=g.morse_index)
        if g.label:
            entry["label"] = g.label
        gens.append(entry)
    edges = [[c.generators[j].id, c.generators[i].id]
             for j, col in enumerate(c.differential.columns) for i in gf2.support(col)]
    return {"generators": gens, "differential": edges}


def complex_from_doc(doc: Any) -> FilteredComplex:
    """Inverse of :func:`complex_to_doc`; generators are re-sorted into canonical order."""
    if not isinstance(doc, dict) or "generators" not in doc:
        raise ConfigError("a complex document needs a generators list")
    try:
        gens = [OrbitGenerator(str(g["id"]), int(g["degree"]), parse_rational(g["action"], f"{g['id']}.action"),
                               g.get("kind", "constant"), int(g.get("family", 0)),
                               int(g.get("morse_index", 0)), g.get("label", ""))
                for g in doc["generators"]]
        edges = [(str(s), str(t)) for s, t in doc.get("differential", [])]
        return FilteredComplex.build(gens, edges)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed complex: {exc}") from None


def chain_map_to_doc(f: FilteredChainMap) -> dict:
    src, tgt = f.source.generators, f.target.generators
    return {"source": complex_to_doc(f.source), "target": complex_to_doc(f.target),
            "shift": str(f.shift), "name": f.name,
            "entries": [[src[j].id, tgt[i].id] for j, col in enumerate(f.matrix.columns)
                        for i in gf2.support(col)]}


def chain_map_from_doc(doc: dict) -> FilteredChainMap:
    try:
        s, t = complex_from_doc(doc["source"]), complex_from_doc(doc["target"])
        si = {g.id: k for k, g in enumerate(s.generators)}
        ti = {g.id: k for k, g in enumerate(t.generators)}
        cols = [0] * len(s)
        for a, b in doc.get("entries", []):
            cols[si[a]] ^= 1 << ti[b]
        return FilteredChainMap(s, t, gf2.Gf2Matrix(tuple(cols), len(t)),
                                parse_rational(doc.get("shift", 0), "shift"), doc.get("name", ""))
    except KeyError as exc:
        raise ConfigError(f"malformed chain map: unknown {exc}") from None


def dumps_complex(c: FilteredComplex) -> str:
    return dump(complex_to_doc(c))


def loads_complex(text: str) -> FilteredComplex:
    return complex_from_doc(load_yaml(text))
