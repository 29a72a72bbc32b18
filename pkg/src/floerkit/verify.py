"""The verification suite: one check per acceptance property, driven by a config bundle."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import gf2
from .chain_maps import (ChainHomotopy, factor_through_projection, project_homotopy,
                         restrict_and_project, validate_chain_map, verify_homotopy)
from .colimit import CofinalDiagram, c_sh, factorization_check, preset_diagram, sh_nonzero, thmB_bound_check
from .config import ConfigDocument, ConfigError, parse_rational
from .filtered import FilteredChainMap, cohomology, les_exactness_check
from .radial import (DomainModel, ModelError, RadialProfile, eta, make_H_delta_A, separation_check)
from .random_models import (random_bump_above, random_compact_profile, random_complex,
                            random_conjugate, random_degree_map, random_rational, random_sandwich)
from .spectral import (ModelHamiltonian, SpectralError, axiom_suite, c_unit, embedding_distance,
                       implicit_unit_check, model, model_h0a, model_h_delta_a,
                       skeleton_lemma_check, spectral_invariant)

Q = Fraction


class CheckFailure(AssertionError):
    pass


@dataclass(frozen=True)
class CheckResult:
    name: str
    criterion: int
    status: str  # "pass", "fail" or "skip"
    detail: str
    seconds: float

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        return {"check": self.name, "criterion": self.criterion, "status": self.status,
                "detail": self.detail, "seconds": round(self.seconds, 4)}

    def line(self) -> str:
        return f"[{self.status.upper():4}] {self.criterion:2d} {self.name}: {self.detail} ({self.seconds:.2f} s)"


class Skip(Exception):
    pass


def _expect(cond: bool, msg: str):
    if not cond:
        raise CheckFailure(msg)


# --- instance generation ------------------------------------------------------------------

def random_admissible(rng: random.Random, dom: DomainModel, a_max: Fraction = Q(12)) -> tuple[Fraction, Fraction]:
    """(delta, A) with T0 < A off the spectrum and delta*A below eta_A.

    Below T0 the admissible eps may exceed A, which puts A - eps under r_IV.
    """
    t0 = dom.reeb.T0
    while True:
        A = random_rational(rng, t0, a_max)
        if A <= t0 or dom.reeb.contains(A):
            continue
        e = eta(dom.reeb, A)
        delta = random_rational(rng, Q(0), min(Q(1), e / A), denominators=(10, 20, 40, 100))
        if 0 < delta < 1 and delta * A < e:
            return delta, A


def admissible_eps(dom: DomainModel, delta: Fraction, A: Fraction) -> Fraction:
    return (delta * A + eta(dom.reeb, A)) / 2


@dataclass
class Context:
    """Everything a check may need, resolved once from the config."""
    domain: DomainModel
    diagram: CofinalDiagram
    rng_seed: int
    params: dict
    doc: ConfigDocument | None = None

    def rng(self, salt: int) -> random.Random:
        return random.Random(self.rng_seed * 1000 + salt)

    def n(self, key: str, default: int) -> int:
        return int(self.params.get(key, default))

    def instances(self) -> list[tuple[Fraction, Fraction, Fraction | None]]:
        out = []
        for inst in self.params.get("instances", []):
            eps = parse_rational(inst["eps"]) if "eps" in inst else None
            out.append((parse_rational(inst["delta"]), parse_rational(inst["A"]), eps))
        rng = self.rng(1)
        for _ in range(self.n("random_instances", 50)):
            d, a = random_admissible(rng, self.domain)
            out.append((d, a, None))
        return out

    @property
    def sh_nonzero(self) -> bool:
        return sh_nonzero(self.diagram)


# --- checks ----------------------------------------------------------------------------

def check_windows(ctx: Context) -> str:
    n = 0
    for delta, A, _ in ctx.instances():
        c = make_H_delta_A(ctx.domain, delta, A)
        t0, e = ctx.domain.reeb.T0, c.eta_A
        _expect(c.r_I == (1 - delta) * A and c.actions("I") == [c.r_I], f"r_I at delta={delta}, A={A}")
        _expect(c.r_IV == 0 and c.actions("IV") == [0], f"r_IV at delta={delta}, A={A}")
        _expect(c.window_II == (delta * t0 + (1 - delta) * A, A - delta * e), "II window formula")
        _expect(c.window_III == (t0, A - e), "III window formula")
        for tag, (lo, hi) in (("II", c.window_II), ("III", c.window_III)):
            acts = c.actions(tag)
            _expect(all(lo <= x <= hi for x in acts), f"{tag} actions {acts} outside [{lo}, {hi}]")
            if acts:
                _expect(min(acts) == lo, f"{tag} window lower end {lo} not attained")
        n += 1
    return f"{n} instances exact"


def check_separation(ctx: Context) -> str:
    n = 0
    for delta, A, eps in ctx.instances():
        c = make_H_delta_A(ctx.domain, delta, A)
        eps = admissible_eps(ctx.domain, delta, A) if eps is None else eps
        fails = separation_check(c, eps)
        _expect(not fails, f"delta={delta}, A={A}, eps={eps}: {fails[0] if fails else ''}")
        for bad in (delta * A, c.eta_A, (delta * A) / 2):
            named = {f.inequality for f in separation_check(c, bad)}
            _expect(bool(named & {"delta*A < eps", "eps < eta_A"}), f"eps={bad} outside the interval not reported")
        n += 1
    return f"{n} instances strictly ordered; out-of-range eps reported"


def check_unit_lower_bound(ctx: Context) -> str:
    if not ctx.sh_nonzero:
        raise Skip("SH vanishes for this domain")
    n = 0
    for delta, A, eps in ctx.instances():
        eps = admissible_eps(ctx.domain, delta, A) if eps is None else eps
        rep = factorization_check(ctx.diagram, ctx.domain, delta, A, eps)
        _expect(rep.ok, f"c(1, H_delta_A) = {rep.c_unit} < A - eps = {A - eps} at delta={delta}, A={A}")
        n += 1
    values = []
    t0 = ctx.domain.reeb.T0
    for k in range(2, 21):
        A = (2 * k + 1) * t0 / 2
        values.append(c_unit(model_h_delta_a(ctx.domain, Q(1, 100), A)).value)
    _expect(all(a < b for a, b in zip(values, values[1:])), "c(1) not strictly increasing in A")
    _expect(values[-1] >= values[0] + 17 * t0, "c(1) does not grow with A")
    return f"{n} instances bounded below; c(1) rises from {values[0]} to {values[-1]}"


def check_skeleton_value(ctx: Context) -> str:
    if not ctx.sh_nonzero:
        raise Skip("the skeleton value needs SH != 0")
    rng = ctx.rng(4)
    As = [parse_rational(a) for a in ctx.params.get("h0a", [])]
    while len(As) < ctx.n("random_h0a", 20) + len(ctx.params.get("h0a", [])):
        A = random_rational(rng, Q(0), Q(15))
        if A > 0 and not ctx.domain.reeb.contains(A):
            As.append(A)
    for A in As:
        v = c_unit(model_h0a(ctx.domain, A)).value
        _expect(v == A, f"c(1, H_0A) = {v} != A = {A}")
    sandwiches = 0
    for _ in range(ctx.n("sandwiches", 20)):
        h, A = random_sandwich(rng, ctx.domain)
        rep = skeleton_lemma_check(model(ctx.domain, h), A)
        _expect(rep.ok, f"skeleton identity fails for A={A}: {rep}")
        sandwiches += 1
    return f"c(1, H_0A) = A for {len(As)} values; {sandwiches} sandwiched profiles"


def _random_models(ctx: Context, salt: int, count: int) -> list[ModelHamiltonian]:
    rng = ctx.rng(salt)
    return [model(ctx.domain, random_compact_profile(rng, ctx.domain), name=f"h{i}") for i in range(count)]


def check_nonnegativity(ctx: Context) -> str:
    ms = _random_models(ctx, 5, ctx.n("random_models", 200))
    worst = min(c_unit(m).value for m in ms)
    _expect(worst >= 0, f"c(1, H) = {worst} < 0")
    return f"{len(ms)} Hamiltonians, min c(1) = {worst}"


def check_contraction(ctx: Context) -> str:
    rng = ctx.rng(6)
    ms = _random_models(ctx, 16, ctx.n("contraction", 50))
    for m in ms:
        r = Q(rng.randint(1, 19), 20)
        a, b = c_unit(m.contracted(r)).value, c_unit(m).value
        _expect(a == r * b, f"{m.name}: c(1, H_r) = {a} != {r} * {b}")
    return f"{len(ms)} exact"


def _embedding_model(ctx: Context) -> ModelHamiltonian:
    emb = ctx.params.get("embedding", {})
    if ctx.doc is not None and "hamiltonian" in emb:
        return ctx.doc.model(emb["hamiltonian"])
    return model(ctx.domain, RadialProfile((Q(3, 10), Q(1)), (Q(-1), Q(0))), name="sandwich")


def check_embedding(ctx: Context) -> str:
    if not ctx.sh_nonzero:
        raise Skip("the embedding is isometric only when SH != 0")
    m = _embedding_model(ctx)
    emb = ctx.params.get("embedding", {})
    pairs = [(parse_rational(s), parse_rational(t)) for s, t in emb.get("pairs", [])]
    rng = ctx.rng(7)
    while len(pairs) < len(emb.get("pairs", [])) + int(emb.get("random_pairs", 50)):
        s, t = random_rational(rng, Q(-8), Q(8)), random_rational(rng, Q(-8), Q(8))
        try:
            m.scaled(s - t).complex if s != t else None
        except ModelError:
            continue
        pairs.append((s, t))
    for s, t in pairs:
        rep = embedding_distance(m, s, t)
        _expect(rep.upper == abs(s - t), f"Hofer bound {rep.upper} != |s - s'| at ({s}, {t})")
        _expect(rep.lower == abs(s - t), f"lower bound {rep.lower} != |s - s'| at ({s}, {t})")
        _expect(rep.distance == abs(s - t), f"distance {rep.distance} != {abs(s - t)} at ({s}, {t})")
    return f"{len(pairs)} pairs isometric"


def check_capacity_bound(ctx: Context) -> str:
    if ctx.sh_nonzero:
        raise Skip("the bound needs SH = 0")
    cap = c_sh(ctx.diagram)
    _expect(cap != float("inf"), "c_sh is infinite")
    hams = _random_models(ctx, 8, ctx.n("capacity_family", 30))
    hams += [model_h0a(ctx.domain, A) for A in (Q(1, 3), Q(5, 2), Q(19, 2))]
    rep = thmB_bound_check(ctx.diagram, hams)
    bad = [c for c in rep.checks if not c.ok]
    _expect(not bad, f"{bad[0].name}: c = {bad[0].c_H}, gamma = {bad[0].gamma}, c_sh = {cap}" if bad else "")
    return f"c_sh = {cap}, sup c(1) = {rep.sup}, max gamma = {max(c.gamma for c in rep.checks)}"


def check_implicit_unit(ctx: Context) -> str:
    rng = ctx.rng(9)
    ms = _random_models(ctx, 19, ctx.n("complexes", 100))
    for m in ms:
        c, t = random_conjugate(rng, m.complex, rng.randint(0, 3))
        unit = gf2.matvec(t, m.unit)
        classes = [gf2.matvec(t, v) for _, v in m.filling_classes]
        try:
            one, best = implicit_unit_check(c, unit, classes)
        except SpectralError as exc:
            raise CheckFailure(f"{m.name}: {exc}") from None
        _expect(one.value == c_unit(m).value, f"{m.name}: conjugation changed c(1)")
    return f"{len(ms)} complexes"


def check_oracle(ctx: Context) -> str:
    rng = ctx.rng(10)
    n = ctx.n("complexes", 100)
    classes = 0
    for _ in range(n):
        c, _ = random_complex(rng, rng.randint(1, 14))
        h = cohomology(c)
        for z in h.classes:
            a = spectral_invariant(c, z).value
            b = spectral_invariant(c, z, method="brute").value
            _expect(a == b, f"reduction {a} != brute force {b}")
            classes += 1
    return f"{n} complexes, {classes} classes"


def check_homological(ctx: Context) -> str:
    rng = ctx.rng(11)
    n = ctx.n("complexes", 100)
    for _ in range(n):
        c, _ = random_complex(rng, rng.randint(2, 10))
        cuts = sorted(rng.sample([Q(k, 4) for k in range(-19, 37, 2)], 3))
        fail = les_exactness_check(c, *cuts)
        _expect(fail is None, f"LES not exact: {fail}")
    for _ in range(n):
        c, p = random_complex(rng, rng.randint(2, 9), partition=True)
        psi = random_degree_map(rng, c, -1, p.tags)
        d = c.differential
        f = FilteredChainMap(c, c, gf2.identity(len(c)) + d @ psi + psi @ d)
        _expect(not validate_chain_map(f), "generated map is not a filtered chain map")
        _, f_c = restrict_and_project(f, p)
        _expect((factor_through_projection(f, p) + f_c.matrix).is_zero(), "quotient map not unique")
        h = ChainHomotopy(f, FilteredChainMap(c, c, gf2.identity(len(c))), psi)
        _expect(verify_homotopy(h) is None, "homotopy identity fails")
        _expect(verify_homotopy(project_homotopy(h, p)) is None, "projected homotopy fails")
    return f"{n} LES triples, {n} block instances"


def check_axioms(ctx: Context) -> str:
    rng = ctx.rng(12)
    ms = _random_models(ctx, 22, ctx.n("axiom_pairs", 40))
    pairs = []
    for a, b in zip(ms[::2], ms[1::2]):
        pairs += [(a, b), (b, a)]
    for m in ms:
        try:
            k = model(ctx.domain, random_bump_above(rng, m.compact, ctx.domain), name=m.name + "+bump")
            k.complex
        except (ModelError, RuntimeError):
            continue
        pairs.append((m, k))
    for m in ms[: len(ms) // 2]:
        sign = rng.choice((1, -1))
        s, t = sign * Q(rng.randint(1, 12), 4), sign * Q(rng.randint(1, 12), 4)
        try:
            pair = (m.scaled(s), m.scaled(t))
            pair[0].complex, pair[1].complex
        except ModelError:
            continue
        pairs.append(pair)
    rep = axiom_suite(pairs)
    bad = rep.failures()
    _expect(not bad, f"{bad[0].axiom} fails on {bad[0].instance}: {bad[0].detail}" if bad else "")
    counts = ", ".join(f"{a} {rep.count(a)}" for a in ("spectrality", "continuity", "monotonicity", "triangle"))
    return f"{len(pairs)} pairs: {counts}"


CHECKS: list[tuple[int, str, Callable[[Context], str]]] = [
    (1, "action_windows", check_windows),
    (2, "separation", check_separation),
    (3, "unit_lower_bound", check_unit_lower_bound),
    (4, "skeleton_value", check_skeleton_value),
    (5, "nonnegativity", check_nonnegativity),
    (6, "contraction", check_contraction),
    (7, "embedding_isometry", check_embedding),
    (8, "capacity_bound", check_capacity_bound),
    (9, "implicit_unit", check_implicit_unit),
    (10, "oracle_equivalence", check_oracle),
    (11, "homological_algebra", check_homological),
    (12, "axiom_suite", check_axioms),
]


def run_check(ctx: Context, criterion: int) -> CheckResult:
    num, name, fn = next(c for c in CHECKS if c[0] == criterion)
    start = time.perf_counter()
    try:
        detail, status = fn(ctx), "pass"
    except Skip as exc:
        detail, status = str(exc), "skip"
    except (CheckFailure, ModelError, SpectralError) as exc:
        detail, status = str(exc), "fail"
    return CheckResult(name, num, status, detail, time.perf_counter() - start)


def context_for(domain: DomainModel, params: dict | None = None, diagram: CofinalDiagram | None = None,
                doc: ConfigDocument | None = None) -> Context:
    params = dict(params or {})
    return Context(domain, diagram or preset_diagram(domain), int(params.get("seed", 0)), params, doc)


def context_from_config(doc: ConfigDocument) -> Context:
    params = doc.verify
    name = params.get("diagram")
    if name is not None:
        diagram = doc.diagram(name)
    elif doc.diagrams:
        diagram = doc.diagram(next(iter(doc.diagrams)))
    else:
        raise ConfigError("verify needs a diagram")
    return context_for(doc.domain, params, diagram, doc)


def run_all(ctx: Context, only: list[int] | None = None) -> list[CheckResult]:
    return [run_check(ctx, num) for num, _, _ in CHECKS if only is None or num in only]
