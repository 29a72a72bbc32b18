"""YAML configuration documents: domains, named Hamiltonians, diagrams and jobs.

All numbers are exact rationals. They may be written as integers, "p/q"
strings, decimal strings or ``[p, q]`` pairs; the normal form writes every
rational as a "p/q" string (or "p" for integers).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import yaml

from .colimit import CofinalDiagram, k_diagram
from .radial import (PRESET_DOMAINS, DegreeRule, DomainModel, ExplicitPeriod, ModelError,
                     RadialProfile, ReebSpectrumModel, contract, h0a_compact, h_delta_a_compact,
                     make_K, negate, scale, tau_extension, zero_profile)
from .spectral import ModelHamiltonian

Q = Fraction
_RATIONAL = re.compile(r"^\s*[-+]?(\d+(\.\d*)?|\.\d+)(\s*/\s*[-+]?\d+)?\s*$")


class ConfigError(ValueError):
    """Unparseable document, unknown key or unresolved reference."""


# --- rationals --------------------------------------------------------------------

def parse_rational(x: Any, what: str = "value") -> Fraction:
    if isinstance(x, bool):
        raise ConfigError(f"{what}: expected a rational, got a boolean")
    if isinstance(x, int):
        return Q(x)
    if isinstance(x, float):
        return Q(repr(x))  # shortest decimal that round-trips, read exactly
    if isinstance(x, str) and _RATIONAL.match(x):
        try:
            return Q(x.replace(" ", ""))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"{what}: {exc}") from None
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        if x[1] == 0:
            raise ConfigError(f"{what}: zero denominator")
        return Q(x[0], x[1])
    raise ConfigError(f"{what}: cannot read {x!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(Q(q))


# --- YAML with duplicate detection ---------------------------------------------------

class _UniqueKeyLoader(yaml.SafeLoader):
    pass


def _construct_mapping(loader, node, deep=False):
    seen = set()
    for key_node, _ in node.value:
        key = loader.construct_object(key_node, deep=deep)
        if key in seen:
            raise ConfigError(f"duplicate key {key!r} (line {key_node.start_mark.line + 1})")
        seen.add(key)
    return yaml.SafeLoader.construct_mapping(loader, node, deep)


_UniqueKeyLoader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_mapping)


def load_yaml(text: str) -> dict:
    try:
        data = yaml.load(text, Loader=_UniqueKeyLoader)
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML: {exc}") from None
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("a config document must be a mapping")
    return data


# --- schema ---------------------------------------------------------------------------

TOP_KEYS = {"domain", "model", "hamiltonians", "diagrams", "jobs", "verify"}
COMMANDS = {"orbits", "barcode", "spectral", "gamma", "embed", "sh", "csh", "verify"}

# constructor -> (required params, optional params, params naming other Hamiltonians)
CONSTRUCTORS: dict[str, tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]] = {
    "zero": ((), (), ()),
    "segments": (("radii", "values"), ("final_slope",), ()),
    "H_delta_A": (("delta", "A"), (), ()),
    "H0A": (("A",), (), ()),
    "K": (("r1", "tau"), (), ()),
    "tau_extension": (("of", "tau"), ("eps",), ("of",)),
    "contract": (("of", "r"), (), ("of",)),
    "scale": (("of", "factor"), (), ("of",)),
    "negate": (("of",), (), ("of",)),
}


LIST_PARAMS = {"radii", "values"}


def _norm_value(x: Any, what: str) -> Any:
    """Rationals to canonical strings, recursively; names and flags untouched."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, dict):
        return {str(k): _norm_value(v, f"{what}.{k}") for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_norm_value(v, what) for v in x]
    if isinstance(x, (int, float)) or (isinstance(x, str) and _RATIONAL.match(x)):
        return format_rational(parse_rational(x, what))
    return x


def _norm_domain(x: Any) -> Any:
    if isinstance(x, str):
        if x not in PRESET_DOMAINS:
            raise ConfigError(f"unknown domain preset {x!r}; choose from {sorted(PRESET_DOMAINS)}")
        return x
    if not isinstance(x, dict):
        raise ConfigError("domain must be a preset name or a mapping")
    allowed = {"name", "spectrum", "dim", "filling", "boundary", "degree_rule", "differential"}
    extra = set(x) - allowed
    if extra:
        raise ConfigError(f"unknown domain keys {sorted(extra)}")
    out = dict(x)
    if "spectrum" in out:
        out["spectrum"] = _norm_value(out["spectrum"], "domain.spectrum")
    return out


def _norm_hamiltonian(name: str, spec: Any) -> dict:
    if not isinstance(spec, dict) or len(spec) != 1:
        raise ConfigError(f"hamiltonian {name!r}: give exactly one constructor")
    (kind, params), = spec.items()
    if kind not in CONSTRUCTORS:
        raise ConfigError(f"hamiltonian {name!r}: unknown constructor {kind!r}")
    params = params or {}
    if not isinstance(params, dict):
        raise ConfigError(f"hamiltonian {name!r}: parameters must be a mapping")
    req, opt, refs = CONSTRUCTORS[kind]
    missing = [k for k in req if k not in params]
    extra = [k for k in params if k not in req + opt]
    if missing or extra:
        raise ConfigError(f"hamiltonian {name!r} ({kind}): missing {missing}, unknown {extra}")
    out = {}
    for k, v in params.items():
        if k in refs:
            if not isinstance(v, str):
                raise ConfigError(f"hamiltonian {name!r}: {k} must name another hamiltonian")
            out[k] = v
        elif k in LIST_PARAMS:
            if not isinstance(v, list):
                raise ConfigError(f"hamiltonian {name!r}: {k} must be a list")
            out[k] = [format_rational(parse_rational(e, f"{name}.{k}")) for e in v]
        else:
            out[k] = format_rational(parse_rational(v, f"{name}.{k}"))
    return {kind: out}


def _norm_diagram(name: str, spec: Any) -> dict:
    if not isinstance(spec, dict):
        raise ConfigError(f"diagram {name!r} must be a mapping")
    extra = set(spec) - {"slopes", "r1", "stabilized"}
    if extra or "slopes" not in spec:
        raise ConfigError(f"diagram {name!r}: needs slopes; unknown keys {sorted(extra)}")
    if not isinstance(spec["slopes"], list) or not spec["slopes"]:
        raise ConfigError(f"diagram {name!r}: slopes must be a nonempty list")
    stab = spec.get("stabilized", True)
    if not isinstance(stab, bool):
        raise ConfigError(f"diagram {name!r}: stabilized must be true or false")
    return {"slopes": [format_rational(parse_rational(s, f"{name}.slopes")) for s in spec["slopes"]],
            "r1": format_rational(parse_rational(spec.get("r1", 1), f"{name}.r1")),
            "stabilized": stab}


def _norm_job(i: int, job: Any) -> dict:
    if not isinstance(job, dict) or "command" not in job:
        raise ConfigError(f"job {i}: needs a command")
    if job["command"] not in COMMANDS:
        raise ConfigError(f"job {i}: unknown command {job['command']!r}")
    return {k: (v if k in ("command", "hamiltonian", "diagram", "out", "format") else _norm_value(v, f"jobs[{i}].{k}"))
            for k, v in job.items()}


def normalize(data: dict) -> dict:
    """The canonical form of a raw document (also validates its shape)."""
    extra = set(data) - TOP_KEYS
    if extra:
        raise ConfigError(f"unknown top-level keys {sorted(extra)}")
    if "domain" not in data:
        raise ConfigError("config needs a domain")
    out: dict[str, Any] = {"domain": _norm_domain(data["domain"])}
    model = data.get("model") or {}
    if not isinstance(model, dict) or set(model) - {"tau", "eps"}:
        raise ConfigError("model settings accept only tau and eps")
    out["model"] = {k: format_rational(parse_rational(v, f"model.{k}")) for k, v in model.items()}
    hams = data.get("hamiltonians") or {}
    diags = data.get("diagrams") or {}
    if not isinstance(hams, dict) or not isinstance(diags, dict):
        raise ConfigError("hamiltonians and diagrams must be mappings of names")
    clash = set(map(str, hams)) & set(map(str, diags))
    if clash:
        raise ConfigError(f"names used twice: {sorted(clash)}")
    out["hamiltonians"] = {str(n): _norm_hamiltonian(str(n), s) for n, s in hams.items()}
    out["diagrams"] = {str(n): _norm_diagram(str(n), s) for n, s in diags.items()}
    jobs = data.get("jobs") or []
    if not isinstance(jobs, list):
        raise ConfigError("jobs must be a list")
    out["jobs"] = [_norm_job(i, j) for i, j in enumerate(jobs)]
    verify = data.get("verify") or {}
    if not isinstance(verify, dict):
        raise ConfigError("verify must be a mapping")
    out["verify"] = _norm_value(verify, "verify")
    return out


def dump(doc: dict) -> str:
    return yaml.safe_dump(doc, sort_keys=True, default_flow_style=False, allow_unicode=True)


# --- the resolved document -----------------------------------------------------------

def _build_domain(spec: Any) -> DomainModel:
    if isinstance(spec, str):
        return PRESET_DOMAINS[spec]()
    try:
        sp = spec.get("spectrum", {"kind": "arithmetic", "t0": "1"})
        if sp.get("kind", "arithmetic") == "arithmetic":
            reeb = ReebSpectrumModel("arithmetic", parse_rational(sp.get("t0", 1), "t0"))
        else:
            periods = tuple(ExplicitPeriod(parse_rational(p["period"], "period"), int(p.get("multiplicity", 1)),
                                           int(p.get("degree", 0))) for p in sp.get("periods", []))
            reeb = ReebSpectrumModel("explicit", periods=periods)
        rule = spec.get("degree_rule", [0, 0, 0])
        return DomainModel(str(spec.get("name", "custom")), reeb, int(spec.get("dim", 2)),
                           tuple(tuple(int(v) for v in pair) for pair in spec.get("filling", [[0, 1]])),
                           tuple(int(v) for v in spec.get("boundary", [0])),
                           DegreeRule(*(int(v) for v in rule)), str(spec.get("differential", "zero")))
    except (TypeError, KeyError, AttributeError) as exc:
        raise ConfigError(f"malformed domain: {exc}") from None
    except ModelError as exc:
        raise ConfigError(f"invalid domain: {exc}") from None


@dataclass
class ConfigDocument:
    raw: dict
    domain: DomainModel
    source: str = "<memory>"
    _profiles: dict[str, RadialProfile] = field(default_factory=dict, repr=False)

    @property
    def hamiltonians(self) -> dict:
        return self.raw["hamiltonians"]

    @property
    def diagrams(self) -> dict:
        return self.raw["diagrams"]

    @property
    def jobs(self) -> list:
        return self.raw["jobs"]

    @property
    def verify(self) -> dict:
        return self.raw["verify"]

    def serialize(self) -> str:
        return dump(self.raw)

    def profile(self, name: str, _stack: tuple[str, ...] = ()) -> RadialProfile:
        if name in self._profiles:
            return self._profiles[name]
        if name not in self.hamiltonians:
            raise ConfigError(f"unresolved hamiltonian {name!r}")
        if name in _stack:
            raise ConfigError(f"circular hamiltonian reference: {' -> '.join(_stack + (name,))}")
        (kind, p), = self.hamiltonians[name].items()
        r = {k: ([parse_rational(e) for e in v] if k in LIST_PARAMS else parse_rational(v))
             for k, v in p.items() if k != "of"}
        base = self.profile(p["of"], _stack + (name,)) if "of" in p else None
        try:
            if kind == "zero":
                h = zero_profile()
            elif kind == "segments":
                h = RadialProfile(tuple(r["radii"]), tuple(r["values"]), r.get("final_slope", Q(0)))
            elif kind == "H_delta_A":
                h = h_delta_a_compact(r["delta"], r["A"])
            elif kind == "H0A":
                h = h0a_compact(r["A"])
            elif kind == "K":
                h = make_K(self.domain, r["r1"], r["tau"])
            elif kind == "tau_extension":
                h = tau_extension(base, r["tau"], r.get("eps", Q(1, 2)), self.domain)
            elif kind == "contract":
                h = contract(base, r["r"])
            elif kind == "scale":
                h = scale(base, r["factor"])
            else:
                h = negate(base)
        except ModelError as exc:
            raise ConfigError(f"hamiltonian {name!r}: {exc}") from None
        self._profiles[name] = h
        return h

    def model(self, name: str) -> ModelHamiltonian:
        """The compactly supported Hamiltonian ``name`` with the configured extension."""
        h = self.profile(name)
        if not h.is_compact:
            raise ConfigError(f"hamiltonian {name!r} is not compactly supported")
        settings = {k: parse_rational(v) for k, v in self.raw["model"].items()}
        try:
            return ModelHamiltonian(self.domain, h, settings.get("tau"), settings.get("eps", Q(1, 2)),
                                    name=name)
        except ModelError as exc:
            raise ConfigError(f"hamiltonian {name!r}: {exc}") from None

    def diagram(self, name: str) -> CofinalDiagram:
        if name not in self.diagrams:
            raise ConfigError(f"unresolved diagram {name!r}")
        spec = self.diagrams[name]
        try:
            return k_diagram(self.domain, [parse_rational(s) for s in spec["slopes"]],
                             parse_rational(spec["r1"]), spec["stabilized"], name)
        except (ModelError, ValueError) as exc:
            raise ConfigError(f"diagram {name!r}: {exc}") from None

    def check_references(self):
        """Resolve every name once so broken references fail early."""
        for n in self.hamiltonians:
            self.profile(n)
        for n in self.diagrams:
            self.diagram(n)
        for i, job in enumerate(self.jobs):
            for key, table in (("hamiltonian", self.hamiltonians), ("diagram", self.diagrams)):
                if key in job and job[key] not in table:
                    raise ConfigError(f"job {i}: unresolved {key} {job[key]!r}")


def parse_config(data: dict, source: str = "<memory>") -> ConfigDocument:
    raw = normalize(data)
    return ConfigDocument(raw, _build_domain(raw["domain"]), source)


def load_config(path: str | Path) -> ConfigDocument:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    return parse_config(load_yaml(text), str(path))


def loads(text: str) -> ConfigDocument:
    return parse_config(load_yaml(text))
