"""Finite cofinal diagrams, window colimits, unit tracking and the SH capacity."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import gf2
from .chain_maps import induced_on_cohomology, validate_chain_map
from .filtered import (INF, ComplexError, FilteredChainMap, FilteredComplex, Window,
                       cohomology, map_by_ids, window_indices)
from .radial import DomainModel, ModelError, build_complex, enumerate_orbits, make_K, separation_check
from .radial import make_H_delta_A, unit_vector
from .spectral import ModelHamiltonian, c_unit, gamma, model_h_delta_a

Q = Fraction


class DiagramError(ComplexError):
    """Raised for malformed or unstabilized diagrams."""


@dataclass(frozen=True)
class Stage:
    complex: FilteredComplex
    slope: Fraction
    unit: int = 0


@dataclass(frozen=True)
class CofinalDiagram:
    """Stages of increasing slope joined by action non-increasing chain maps."""
    stages: tuple[Stage, ...]
    maps: tuple[FilteredChainMap, ...]
    stabilized: bool = False
    t0: Fraction = Fraction(1)
    name: str = ""

    def __post_init__(self):
        if not self.stages:
            raise DiagramError("a diagram needs at least one stage")
        if len(self.maps) != len(self.stages) - 1:
            raise DiagramError("need exactly one map between consecutive stages")
        slopes = [s.slope for s in self.stages]
        if any(a >= b for a, b in zip(slopes, slopes[1:])):
            raise DiagramError(f"slopes must increase strictly, got {slopes}")
        if not slopes[0] < self.t0:
            raise DiagramError(f"stage 0 slope {slopes[0]} must lie below T0 = {self.t0}")
        for i, (f, s, t) in enumerate(zip(self.maps, self.stages, self.stages[1:])):
            if f.source != s.complex or f.target != t.complex:
                raise DiagramError(f"map {i} does not join stages {i} and {i + 1}")
            if f.shift > 0:
                raise DiagramError(f"map {i} raises action by {f.shift}")
            bad = validate_chain_map(f)
            if bad:
                raise DiagramError(f"map {i}: {bad[0]}")
        unit = self.stages[0].unit
        if unit and self.stages[0].complex.d(unit):
            raise DiagramError("stage 0 unit is not a cocycle")

    @property
    def slopes(self) -> list[Fraction]:
        return [s.slope for s in self.stages]

    @property
    def last(self) -> FilteredComplex:
        return self.stages[-1].complex

    def extended(self, stage: Stage, f: FilteredChainMap) -> "CofinalDiagram":
        return CofinalDiagram(self.stages + (stage,), self.maps + (f,), self.stabilized, self.t0, self.name)


def restrict_to_window(c: FilteredComplex, w: Window, v: int) -> int | None:
    """The image of a cocycle of the full complex in the window subquotient.

    Returns None when ``v`` reaches action ``>= w.b`` and so does not lie in
    the sublevel complex.
    """
    if c.max_action(v) >= w.b:
        return None
    pos = {i: k for k, i in enumerate(window_indices(c, w))}
    return gf2.vector(pos[i] for i in gf2.support(v) if i in pos)


@dataclass(frozen=True)
class ColimitSpace:
    window: Window
    dims: dict[int, int]
    unit_image: int
    unit_degree: int | None
    stage_of_stabilization: int
    maps_rank: tuple[int, ...] = field(default=())

    @property
    def unit_nonzero(self) -> bool:
        return self.unit_image != 0

    def to_json(self) -> dict:
        return {"window": str(self.window), "dims": {str(k): v for k, v in sorted(self.dims.items())},
                "unit": "nonzero" if self.unit_nonzero else "zero",
                "stage_of_stabilization": self.stage_of_stabilization}


def _require_stable(d: CofinalDiagram):
    if not d.stabilized:
        raise DiagramError("colimit is only defined for diagrams declared stabilized")


def colimit(d: CofinalDiagram, w: Window = Window()) -> ColimitSpace:
    """SH over ``w`` as the last stage's window cohomology, with the unit pushed forward."""
    _require_stable(d)
    induced = [induced_on_cohomology(f, w, w) for f in d.maps]
    h0 = cohomology(d.stages[0].complex, w)
    v = restrict_to_window(d.stages[0].complex, w, d.stages[0].unit)
    coords = h0.coordinates(v) if v is not None else 0
    for m in induced:
        coords = gf2.matvec(m.matrix, coords)
    h_last = cohomology(d.last, w)
    deg = None
    if coords:
        deg = h_last.complex.degree_of(h_last.representative(coords))
    stable = len(d.stages) - 1
    while stable > 0 and induced[stable - 1].is_isomorphism():
        stable -= 1
    return ColimitSpace(w, h_last.dims, coords, deg, stable, tuple(m.rank for m in induced))


def sh_nonzero(d: CofinalDiagram) -> bool:
    """A unital ring is nonzero iff its unit is."""
    return colimit(d).unit_nonzero


def _low_window_map_vanishes(d: CofinalDiagram, eps: Fraction, c: Fraction) -> bool:
    """Whether SH_(-inf, eps) -> SH_(-inf, c) is zero, computed on the last stage."""
    last = d.last
    lo, hi = Window(-INF, eps), Window(-INF, c)
    f = FilteredChainMap(last, last, gf2.identity(len(last)))
    return induced_on_cohomology(f, lo, hi).rank == 0


def c_sh(d: CofinalDiagram, eps: Fraction | None = None) -> Fraction | float:
    """Least c at which the low-action part of SH dies; +inf if it never does.

    The map is constant between consecutive spectrum values, so it suffices to
    test midpoints; the infimum is the spectrum value just below the first
    vanishing midpoint.
    """
    _require_stable(d)
    spec = d.last.spectrum
    positive = [x for x in spec if x > 0]
    if eps is None:
        eps = positive[0] / 2 if positive else Q(1, 2)
    eps = Q(eps)
    if positive and not 0 < eps < positive[0]:
        raise DiagramError(f"eps = {eps} must lie below the first positive action {positive[0]}")
    above = [x for x in spec if x > eps]
    probes = [(eps, (eps + above[0]) / 2)] if above else [(eps, eps + 1)]
    for k, x in enumerate(above):
        nxt = (x + above[k + 1]) / 2 if k + 1 < len(above) else x + 1
        probes.append((x, nxt))
    for value, probe in probes:
        if _low_window_map_vanishes(d, eps, probe):
            return Q(0) if value == eps else value
    return INF


# --- presets --------------------------------------------------------------------

def k_stage(dom: DomainModel, r1, tau) -> Stage:
    h = make_K(dom, r1, tau)
    c = build_complex(dom, h)
    return Stage(c, Q(tau), unit_vector(c, enumerate_orbits(dom, h), dom.differential))


def k_diagram(dom: DomainModel, slopes: Sequence, r1=Fraction(1), stabilized: bool = True,
              name: str = "") -> CofinalDiagram:
    """Stages K_{r1,tau} with generators matched by id along the diagram."""
    stages = tuple(k_stage(dom, r1, s) for s in slopes)
    maps = tuple(map_by_ids(a.complex, b.complex, name=f"{a.slope}->{b.slope}")
                 for a, b in zip(stages, stages[1:]))
    return CofinalDiagram(stages, maps, stabilized, dom.reeb.T0, name or dom.name)


PRESET_SLOPES = {
    "annulus": (Q(1, 2), Q(3, 2), Q(5, 2)),
    "ball": (Q(1, 2), Q(3, 2), Q(5, 2), Q(7, 2)),
}


def preset_diagram(dom: DomainModel) -> CofinalDiagram:
    return k_diagram(dom, PRESET_SLOPES[dom.name])


# --- consequences -------------------------------------------------------------------

@dataclass(frozen=True)
class BoundCheck:
    name: str
    c_H: Fraction
    gamma: Fraction
    c_sh: Fraction
    ok: bool


@dataclass
class BoundReport:
    c_sh: Fraction
    checks: list[BoundCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def sup(self) -> Fraction:
        return max(c.c_H for c in self.checks)


def thmB_bound_check(d: CofinalDiagram, hams: Sequence[ModelHamiltonian]) -> BoundReport:
    """c(1, H) <= c_sh and gamma(H) <= 2 c_sh for every supplied H."""
    if sh_nonzero(d):
        raise DiagramError("the bound needs a diagram with vanishing SH")
    cap = c_sh(d)
    checks = []
    for m in hams:
        c, g = c_unit(m).value, gamma(m)
        checks.append(BoundCheck(m.name, c, g, cap, c <= cap and g <= 2 * cap))
    return BoundReport(cap, checks)


@dataclass(frozen=True)
class FactorizationReport:
    delta: Fraction
    A: Fraction
    eps: Fraction
    survives: bool
    c_unit: Fraction

    @property
    def ok(self) -> bool:
        return self.survives and self.c_unit >= self.A - self.eps


def factorization_check(d: CofinalDiagram, dom: DomainModel, delta, A, eps,
                        sigma=None) -> FactorizationReport:
    """The unit survives projection to (A - eps, +inf), hence c(1, H_{delta,A}) >= A - eps."""
    delta, A, eps = Q(delta), Q(A), Q(eps)
    if not sh_nonzero(d):
        raise DiagramError("the factorization argument needs SH != 0")
    sigma = dom.reeb.T0 / 2 if sigma is None else Q(sigma)
    fails = separation_check(make_H_delta_A(dom, delta, A, sigma=sigma), eps)
    if fails:
        raise ModelError(f"separation fails: {fails[0]}")
    m = model_h_delta_a(dom, delta, A, sigma=sigma)
    w = Window(A - eps, INF)
    h = cohomology(m.complex, w)
    survives = bool(h.coordinates(restrict_to_window(m.complex, w, m.unit)))
    value = c_unit(m).value
    if survives and value < A - eps:
        raise ComplexError(f"unit survives above {A - eps} but c(1) = {value}")
    return FactorizationReport(delta, A, eps, survives, value)


def viterbo_image(d: CofinalDiagram, w: Window = Window()) -> gf2.Gf2Matrix:
    """Filling cohomology (stage 0 over the full window) pushed to the colimit over ``w``.

    Only windows unbounded above receive the full-window cohomology.
    """
    _require_stable(d)
    if w.b != INF:
        raise DiagramError("the Viterbo map lands in windows unbounded above")
    first = d.stages[0].complex
    f = FilteredChainMap(first, first, gf2.identity(len(first)))
    m = induced_on_cohomology(f, Window(), w).matrix
    for g in d.maps:
        m = induced_on_cohomology(g, w, w).matrix @ m
    return m


__all__ = ["BoundCheck", "BoundReport", "CofinalDiagram", "ColimitSpace", "DiagramError",
           "FactorizationReport", "PRESET_SLOPES", "Stage", "c_sh", "colimit", "factorization_check",
           "k_diagram", "k_stage", "preset_diagram", "restrict_to_window", "sh_nonzero",
           "thmB_bound_check", "viterbo_image"]
