"""Radial Hamiltonians on completed domains, modeled combinatorially.

A domain is described by the periods of its boundary Reeb orbits and the
cohomology of its filling. A radial Hamiltonian is a piecewise-linear
profile ``h(r)`` in the radial coordinate. One-periodic orbits are:

* constant orbits on every flat region of ``h`` (and at corners where
  the slope changes sign), with action ``-h``;
* circle families at every corner whose slope interval strictly contains
  a signed Reeb period ``q``, with action ``r*q - h(r)`` (the intercept of
  the tangent line of slope ``q``).

Each family splits into two generators of consecutive degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable

from .filtered import INF, ComplexError, FilteredComplex, OrbitGenerator, check

Q = Fraction


class ModelError(ValueError):
    """A profile, domain or construction violates its preconditions."""


# --- Reeb spectra and domains ------------------------------------------------------

@dataclass(frozen=True)
class ExplicitPeriod:
    period: Fraction
    multiplicity: int = 1
    degree: int = 0  # index-0 member degree at a convex crossing


@dataclass(frozen=True)
class ReebSpectrumModel:
    """Either all multiples of ``t0`` or a finite explicit list, truncated at ``cutoff``."""
    kind: str = "arithmetic"
    t0: Fraction | None = None
    periods: tuple[ExplicitPeriod, ...] = ()
    cutoff: Fraction = Fraction(1000)

    def __post_init__(self):
        object.__setattr__(self, "cutoff", Q(self.cutoff))
        if self.kind == "arithmetic":
            if self.t0 is None or Q(self.t0) <= 0:
                raise ModelError("arithmetic spectrum needs t0 > 0")
            object.__setattr__(self, "t0", Q(self.t0))
        elif self.kind == "explicit":
            ps = tuple(sorted((ExplicitPeriod(Q(p.period), p.multiplicity, p.degree) for p in self.periods),
                              key=lambda p: p.period))
            if not ps or ps[0].period <= 0:
                raise ModelError("explicit spectrum needs positive periods")
            if len({p.period for p in ps}) != len(ps) or any(p.multiplicity < 1 for p in ps):
                raise ModelError("explicit periods must be distinct with multiplicity >= 1")
            object.__setattr__(self, "periods", ps)
        else:
            raise ModelError(f"unknown spectrum kind {self.kind!r}")

    @property
    def T0(self) -> Fraction:
        return self.t0 if self.kind == "arithmetic" else self.periods[0].period

    def levels_between(self, lo: Fraction, hi: Fraction) -> list[tuple[int, Fraction, int]]:
        """Positive periods p with lo < p < hi (and p <= cutoff) as (level, period, multiplicity)."""
        out = []
        if self.kind == "arithmetic":
            k = max(1, math.floor(lo / self.t0) + 1)
            while k * self.t0 < hi and k * self.t0 <= self.cutoff:
                out.append((k, k * self.t0, 1))
                k += 1
        else:
            for level, p in enumerate(self.periods, 1):
                if lo < p.period < hi and p.period <= self.cutoff:
                    out.append((level, p.period, p.multiplicity))
        return out

    def signed_periods_between(self, lo: Fraction, hi: Fraction) -> list[tuple[int, Fraction, int]]:
        """Signed periods q in ±Spec strictly inside (lo, hi), as (signed level, q, multiplicity)."""
        pos = self.levels_between(max(lo, Q(0)), hi) if hi > 0 else []
        neg = self.levels_between(max(-hi, Q(0)), -lo) if lo < 0 else []
        return [(-k, -p, m) for k, p, m in reversed(neg)] + pos

    def contains(self, x: Fraction) -> bool:
        x = Q(x)
        if x <= 0 or x > self.cutoff:
            return False
        if self.kind == "arithmetic":
            return (x / self.t0).denominator == 1
        return any(p.period == x for p in self.periods)

    def degree_override(self, level: int) -> int | None:
        if self.kind == "explicit":
            return self.periods[level - 1].degree
        return None


def eta(reeb: ReebSpectrumModel, a: Fraction) -> Fraction:
    """Distance from ``a`` > 0 to the modeled spectrum."""
    a = Q(a)
    if a <= 0:
        raise ModelError("eta needs A > 0")
    if reeb.kind == "arithmetic":
        k = math.floor(a / reeb.t0)
        below = a - k * reeb.t0 if k >= 1 else None
        above = (k + 1) * reeb.t0 - a
        return min(above, below) if below is not None else above
    return min(abs(a - p.period) for p in reeb.periods if p.period <= reeb.cutoff)


@dataclass(frozen=True)
class DegreeRule:
    """Index-0 degree of a family at positive level k: base + per_period*k (+ concave_shift)."""
    base: int = 0
    per_period: int = 0
    concave_shift: int = 0


@dataclass(frozen=True)
class DomainModel:
    name: str
    reeb: ReebSpectrumModel
    dim: int = 2
    filling: tuple[tuple[int, int], ...] = ((0, 1),)  # (degree, dimension)
    boundary: tuple[int, ...] = (0,)  # generator degrees of an annular min-type region
    degree_rule: DegreeRule = DegreeRule()
    differential: str = "zero"  # "zero" or "unit_killing"

    def __post_init__(self):
        fill = dict(self.filling)
        if fill.get(0, 0) < 1:
            raise ModelError("filling cohomology needs a unit class in degree 0")
        if any(dim < 0 for _, dim in self.filling):
            raise ModelError("filling dimensions must be >= 0")
        if 0 not in self.boundary:
            raise ModelError("boundary degrees need a degree-0 generator to carry the unit")
        if self.differential not in ("zero", "unit_killing"):
            raise ModelError(f"unknown differential rule {self.differential!r}")

    @property
    def filling_degrees(self) -> list[int]:
        return [k for k, dim in sorted(self.filling) for _ in range(dim)]

    def family_degree(self, level: int, convex: bool) -> int:
        """Degree of the index-0 member; negative levels are the duals of positive ones."""
        if level < 0:
            return self.dim - self.family_degree(-level, not convex) - 1
        override = self.reeb.degree_override(level)
        r = self.degree_rule
        d = override if override is not None else r.base + r.per_period * level
        return d if convex else d + r.concave_shift


def annulus() -> DomainModel:
    """Cotangent disk bundle of the circle; the zero differential is the preset."""
    return DomainModel("annulus", ReebSpectrumModel("arithmetic", Q(1)), 2,
                       ((0, 1), (1, 1)), (0, 1), DegreeRule(0, 0, 0), "zero")


def ball() -> DomainModel:
    """The unit disk; the unit is killed by the first up-crossing family."""
    return DomainModel("ball", ReebSpectrumModel("arithmetic", Q(1)), 2,
                       ((0, 1),), (0, 1), DegreeRule(1, -2, 1), "unit_killing")


PRESET_DOMAINS = {"annulus": annulus, "ball": ball}


# --- profiles ------------------------------------------------------------------

@dataclass(frozen=True)
class RadialProfile:
    """Piecewise-linear ``h``: constant ``values[0]`` on ``[0, radii[0]]``,
    linear between breakpoints, slope ``final_slope`` after the last one.

    ``corner_tags`` label families at a corner radius; ``region_tags`` label
    the constant region containing a radius.
    """
    radii: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    final_slope: Fraction = Fraction(0)
    corner_tags: tuple[tuple[Fraction, str], ...] = ()
    region_tags: tuple[tuple[Fraction, str], ...] = ()

    def __post_init__(self):
        radii = tuple(Q(r) for r in self.radii)
        values = tuple(Q(v) for v in self.values)
        if not radii or len(radii) != len(values):
            raise ModelError("profile needs matching, nonempty radii and values")
        if radii[0] < 0 or any(b <= a for a, b in zip(radii, radii[1:])):
            raise ModelError("breakpoint radii must be >= 0 and strictly increasing")
        radii, values = _normalize(radii, values, Q(self.final_slope))
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "final_slope", Q(self.final_slope))
        object.__setattr__(self, "corner_tags", tuple((Q(r), t) for r, t in self.corner_tags))
        object.__setattr__(self, "region_tags", tuple((Q(r), t) for r, t in self.region_tags))

    @property
    def slopes(self) -> list[Fraction]:
        """Slope sequence: 0 on the inner disk, each segment, then the final slope."""
        seg = [(self.values[i + 1] - self.values[i]) / (self.radii[i + 1] - self.radii[i])
               for i in range(len(self.radii) - 1)]
        return [Q(0)] + seg + [self.final_slope]

    def __call__(self, r) -> Fraction:
        r = Q(r)
        rs, vs = self.radii, self.values
        if r <= rs[0]:
            return vs[0]
        for i in range(len(rs) - 1):
            if r <= rs[i + 1]:
                return vs[i] + (vs[i + 1] - vs[i]) * (r - rs[i]) / (rs[i + 1] - rs[i])
        return vs[-1] + self.final_slope * (r - rs[-1])

    @property
    def is_compact(self) -> bool:
        """Vanishes for r >= 1."""
        return self.final_slope == 0 and self.values[-1] == 0 and self.radii[-1] <= 1

    def min_value(self) -> Fraction:
        if self.final_slope < 0:
            raise ModelError("profile is unbounded below")
        return min(self.values)

    def max_value(self) -> Fraction:
        if self.final_slope > 0:
            raise ModelError("profile is unbounded above")
        return max(self.values)

    def tag_at_corner(self, r: Fraction) -> str:
        return dict(self.corner_tags).get(r, "other")

    def retag(self, corner_tags=(), region_tags=()) -> "RadialProfile":
        return replace(self, corner_tags=tuple(corner_tags), region_tags=tuple(region_tags))


def _normalize(radii, values, final_slope):
    """Drop breakpoints where the slope does not change; a constant profile keeps radius 0."""
    radii, values = list(radii), list(values)
    i = 0
    while len(radii) > 1 and i < len(radii):
        seg = [(values[k + 1] - values[k]) / (radii[k + 1] - radii[k]) for k in range(len(radii) - 1)]
        slopes = [Q(0)] + seg + [final_slope]
        if slopes[i] == slopes[i + 1]:
            del radii[i], values[i]
            i = 0
        else:
            i += 1
    if len(radii) == 1 and final_slope == 0:
        radii = [Q(0)]
    return tuple(radii), tuple(values)


def zero_profile() -> RadialProfile:
    return RadialProfile((Q(0),), (Q(0),))


def scale(h: RadialProfile, s: Fraction) -> RadialProfile:
    """The profile of s*H."""
    s = Q(s)
    if s == 0:
        return zero_profile()
    return RadialProfile(h.radii, tuple(s * v for v in h.values), s * h.final_slope,
                         h.corner_tags, h.region_tags)


def negate(h: RadialProfile) -> RadialProfile:
    return scale(h, Q(-1))


def contract(h: RadialProfile, r: Fraction) -> RadialProfile:
    """Pull back a compact profile by the Liouville rescaling: radii and values times r."""
    r = Q(r)
    if not 0 < r < 1:
        raise ModelError("contraction factor must lie in (0, 1)")
    if not h.is_compact:
        raise ModelError("contraction needs a compactly supported profile")
    return RadialProfile(tuple(r * x for x in h.radii), tuple(r * v for v in h.values), Q(0),
                         tuple((r * x, t) for x, t in h.corner_tags),
                         tuple((r * x, t) for x, t in h.region_tags))


def tau_extension(h: RadialProfile, tau: Fraction, eps: Fraction, domain: DomainModel | None = None,
                  t0: Fraction | None = None) -> RadialProfile:
    """Extend a compact profile by slope tau beyond the corner 1 + eps/2."""
    tau, eps = Q(tau), Q(eps)
    t0 = Q(t0) if t0 is not None else (domain.reeb.T0 if domain is not None else None)
    if not h.is_compact:
        raise ModelError("tau-extension needs a profile vanishing for r >= 1")
    if tau <= 0 or eps <= 0:
        raise ModelError("tau and eps must be positive")
    if t0 is not None and tau >= t0:
        raise ModelError(f"extension slope {tau} must lie below T0 = {t0}")
    corner = 1 + eps / 2
    radii, values = h.radii, h.values
    if radii == (Q(0),) and values == (Q(0),):
        radii, values = (), ()
    return RadialProfile(radii + (corner,), values + (Q(0),), tau, h.corner_tags, h.region_tags)


# --- orbit inventory -----------------------------------------------------------------

@dataclass(frozen=True)
class ConstantRegion:
    index: int
    lo: Fraction
    hi: Fraction | float
    value: Fraction
    kind: str  # "min" or "max"
    innermost: bool
    degrees: tuple[int, ...]
    tag: str = "other"

    @property
    def action(self) -> Fraction:
        return -self.value


@dataclass(frozen=True)
class OrbitFamily:
    index: int
    corner: int
    radius: Fraction
    period: Fraction  # signed
    level: int  # signed
    copy: int
    convex: bool
    action: Fraction
    degrees: tuple[int, int]
    tag: str = "other"


@dataclass(frozen=True)
class OrbitInventory:
    regions: tuple[ConstantRegion, ...]
    families: tuple[OrbitFamily, ...]

    @property
    def actions(self) -> list[Fraction]:
        return sorted({r.action for r in self.regions} | {f.action for f in self.families})

    def tagged(self, tag: str) -> tuple[list[ConstantRegion], list[OrbitFamily]]:
        return ([r for r in self.regions if r.tag == tag],
                [f for f in self.families if f.tag == tag])

    def n_generators(self) -> int:
        return sum(len(r.degrees) for r in self.regions) + 2 * len(self.families)


def _region_tag(h: RadialProfile, lo, hi) -> str:
    for r, t in h.region_tags:
        if lo <= r <= hi:
            return t
    return "other"


def check_profile(d: DomainModel, h: RadialProfile) -> None:
    for s in h.slopes:
        if s != 0 and d.reeb.contains(abs(s)):
            raise ModelError(f"slope {s} lies in the Reeb spectrum (degenerate)")


def enumerate_orbits(d: DomainModel, h: RadialProfile) -> OrbitInventory:
    check_profile(d, h)
    slopes = h.slopes
    radii, values = h.radii, h.values
    n = len(radii)
    # constant regions in radial order: (lo, hi, value, kind)
    raw: list[tuple] = []
    first = next((s for s in slopes[1:] if s != 0), Q(0))
    inner_hi = INF if all(s == 0 for s in slopes) else radii[0]
    raw.append((Q(0), inner_hi, values[0], "max" if first < 0 else "min", True))
    for i in range(n):
        left, right = slopes[i], slopes[i + 1]
        if i > 0 and left * right < 0:
            raw.append((radii[i], radii[i], values[i], "min" if left < 0 else "max", False))
        if right == 0 and i > 0:
            hi = radii[i + 1] if i + 1 < n else INF
            after = slopes[i + 2] if i + 2 < len(slopes) else None
            kind = "max" if (left > 0 and after is not None and after < 0) else "min"
            raw.append((radii[i], hi, values[i], kind, False))
    fill = d.filling_degrees
    regions = []
    for k, (lo, hi, v, kind, inner) in enumerate(raw):
        if inner:
            degs = tuple(fill)
        else:
            degs = tuple(x + (1 if kind == "max" else 0) for x in d.boundary)
        regions.append(ConstantRegion(k, lo, hi, v, kind, inner, degs, _region_tag(h, lo, hi)))
    families = []
    for i in range(n):
        left, right = slopes[i], slopes[i + 1]
        lo, hi = min(left, right), max(left, right)
        convex = right > left
        for level, q, mult in d.reeb.signed_periods_between(lo, hi):
            deg = d.family_degree(level, convex)
            for copy in range(mult):
                families.append(OrbitFamily(len(families), i, radii[i], q, level, copy, convex,
                                            radii[i] * q - values[i], (deg, deg + 1),
                                            h.tag_at_corner(radii[i])))
    return OrbitInventory(tuple(regions), tuple(families))


# --- named constructions ----------------------------------------------------------

@dataclass(frozen=True)
class HDeltaA:
    """H_{delta,A} with its window data for the four orbit types."""
    delta: Fraction
    A: Fraction
    r0: Fraction
    sigma: Fraction
    t0: Fraction
    eta_A: Fraction
    compact: RadialProfile
    profile: RadialProfile
    inventory: OrbitInventory

    @property
    def r_I(self) -> Fraction:
        return (1 - self.delta) * self.A

    @property
    def r_IV(self) -> Fraction:
        return Q(0)

    @property
    def window_II(self) -> tuple[Fraction, Fraction]:
        return (self.delta * self.t0 + (1 - self.delta) * self.A, self.A - self.delta * self.eta_A)

    @property
    def window_III(self) -> tuple[Fraction, Fraction]:
        return (self.t0, self.A - self.eta_A)

    def actions(self, tag: str) -> list[Fraction]:
        regions, fams = self.inventory.tagged(tag)
        return sorted({r.action for r in regions} | {f.action for f in fams})


def _require_not_in_spectrum(d: DomainModel, x: Fraction, what: str):
    if d.reeb.contains(x):
        raise ModelError(f"{what} = {x} lies in the Reeb spectrum")


def h_delta_a_compact(delta: Fraction, A: Fraction) -> RadialProfile:
    delta, A = Q(delta), Q(A)
    return RadialProfile((delta, Q(1)), (A * (delta - 1), Q(0)), Q(0),
                         corner_tags=((delta, "II"), (Q(1), "III")),
                         region_tags=((Q(0), "I"), (Q(1), "IV")))


def make_H_delta_A(d: DomainModel, delta, A, r0=Fraction(3, 2), sigma=Fraction(1, 2)) -> HDeltaA:
    delta, A, r0, sigma = Q(delta), Q(A), Q(r0), Q(sigma)
    if not 0 < delta < 1:
        raise ModelError("delta must lie in (0, 1)")
    if A <= 0:
        raise ModelError("A must be positive")
    _require_not_in_spectrum(d, A, "A")
    if not 0 < sigma < d.reeb.T0:
        raise ModelError(f"sigma must lie in (0, T0 = {d.reeb.T0})")
    if r0 <= 1:
        raise ModelError("r0 must exceed 1")
    compact = h_delta_a_compact(delta, A)
    profile = tau_extension(compact, sigma, 2 * (r0 - 1), d)
    return HDeltaA(delta, A, r0, sigma, d.reeb.T0, eta(d.reeb, A), compact, profile,
                   enumerate_orbits(d, profile))


def h0a_compact(A: Fraction) -> RadialProfile:
    A = Q(A)
    return RadialProfile((Q(0), Q(1)), (-A, Q(0)), Q(0),
                         corner_tags=((Q(0), "II"), (Q(1), "III")),
                         region_tags=((Q(0), "I"), (Q(1), "IV")))


def make_H0A(d: DomainModel, A, r0=Fraction(3, 2), sigma=Fraction(1, 2)) -> RadialProfile:
    """The delta -> 0 limit: value -A on the skeleton, slope A up to r = 1."""
    A = Q(A)
    _require_not_in_spectrum(d, A, "A")
    return tau_extension(h0a_compact(A), Q(sigma), 2 * (Q(r0) - 1), d)


@dataclass(frozen=True)
class SeparationFailure:
    inequality: str
    left: Fraction | float
    right: Fraction | float

    def __str__(self):
        return f"{self.inequality} fails: {self.left} >= {self.right}"


def separation_check(c: HDeltaA, eps: Fraction) -> list[SeparationFailure]:
    """Check r_IV < sup III < A - eps < r_I < inf II using the realized orbit actions.

    The hypotheses delta*A < eps < eta_A are checked first. Also checks that
    the realized II and III actions lie in their windows. Empty windows (no
    period below A) make their inequalities vacuous.
    """
    eps = Q(eps)
    out = []
    if not c.delta * c.A < eps:
        out.append(SeparationFailure("delta*A < eps", c.delta * c.A, eps))
    if not eps < c.eta_A:
        out.append(SeparationFailure("eps < eta_A", eps, c.eta_A))
    iii, ii = c.actions("III"), c.actions("II")
    cut = c.A - eps
    chain: list[tuple[str, object]] = [("r_IV", c.r_IV)]
    if iii:
        chain.append(("sup III", max(iii)))
    chain.append(("A-eps", cut))
    chain.append(("r_I", c.r_I))
    if ii:
        chain.append(("inf II", min(ii)))
    for (na, a), (nb, b) in zip(chain, chain[1:]):
        if not a < b:
            out.append(SeparationFailure(f"{na} < {nb}", a, b))
    for name, acts, (lo, hi) in (("II", ii, c.window_II), ("III", iii, c.window_III)):
        for x in acts:
            if not lo <= x <= hi:
                out.append(SeparationFailure(f"{name} action {x} in [{lo}, {hi}]", x, hi))
    if c.actions("I") != [c.r_I]:
        out.append(SeparationFailure("type I action equals r_I", Q(0), Q(0)))
    if c.actions("IV") != [c.r_IV]:
        out.append(SeparationFailure("type IV action equals r_IV", Q(0), Q(0)))
    return out


def make_K(d: DomainModel, r1, tau) -> RadialProfile:
    """Zero on [0, r1], slope tau beyond; constants are type I', families at r1 type II'."""
    r1, tau = Q(r1), Q(tau)
    if r1 <= 0 or tau <= 0:
        raise ModelError("r1 and tau must be positive")
    _require_not_in_spectrum(d, tau, "tau")
    return RadialProfile((r1,), (Q(0),), tau, corner_tags=((r1, "II'"),), region_tags=((Q(0), "I'"),))


def k_window(d: DomainModel, r1, tau) -> tuple[Fraction, Fraction]:
    """[r1*T0, r1*tau - r1*eta_tau]."""
    r1, tau = Q(r1), Q(tau)
    return r1 * d.reeb.T0, r1 * tau - r1 * eta(d.reeb, tau)


# --- complexes ------------------------------------------------------------------

def region_generator_id(region: ConstantRegion, j: int) -> str:
    return f"R{region.index}:{j}"


def family_generator_id(f: OrbitFamily, member: int) -> str:
    return f"F{f.corner}:{f.level:+d}:{f.copy}{'ab'[member]}"


def inventory_generators(inv: OrbitInventory) -> list[OrbitGenerator]:
    gens = []
    for r in inv.regions:
        for j, deg in enumerate(r.degrees):
            gens.append(OrbitGenerator(region_generator_id(r, j), deg, r.action, "constant",
                                       r.index, 0, f"{r.tag}:{r.kind}"))
    offset = len(inv.regions)
    for f in inv.families:
        for m in (0, 1):
            gens.append(OrbitGenerator(family_generator_id(f, m), f.degrees[m], f.action, "family",
                                       offset + f.index, m, f"{f.tag}:q={f.period}"))
    return gens


def unit_generator_id(region: ConstantRegion) -> str | None:
    if region.kind != "min":
        return None
    return region_generator_id(region, region.degrees.index(0))


def unit_killing_entries(inv: OrbitInventory) -> list[tuple[str, str]]:
    """Chain the local minima of ``r - h(r)`` into one class, per level-one copy.

    Level-one crossings alternate outward as up, down, up, ... Each up-crossing
    U_i gets d(U_i.a) = X_{i-1} + D_i where X_0 is the degree-0 generator of the
    innermost region, X_i = D_i.a, and D_i is the next down-crossing (omitted
    when there is none). Between consecutive crossings the slope stays on one
    side of the first period, so ``r - h(r)`` is monotone and no entry raises
    action.
    """
    center = inv.regions[0]
    x0 = region_generator_id(center, center.degrees.index(0))
    entries = []
    for copy in sorted({f.copy for f in inv.families if f.level == 1}):
        crossings = sorted((f for f in inv.families if f.level == 1 and f.copy == copy),
                           key=lambda f: f.radius)
        prev, src = x0, None
        for f in crossings:
            if f.convex:
                src = family_generator_id(f, 0)
                entries.append((src, prev))
            else:
                if src is None:
                    raise ModelError("level-one down-crossing without an up-crossing inside")
                prev = family_generator_id(f, 0)
                entries.append((src, prev))
                src = None
    return entries


def build_complex(d: DomainModel, h: RadialProfile, differential="preset") -> FilteredComplex:
    """Assemble and validate the complex of ``h``.

    ``differential`` is "preset" (the domain's rule), "zero", or an iterable
    of (source id, target id) entries.
    """
    inv = enumerate_orbits(d, h)
    gens = inventory_generators(inv)
    if differential == "preset":
        differential = d.differential
    if differential == "zero":
        entries: Iterable = ()
    elif differential == "unit_killing":
        entries = unit_killing_entries(inv)
    elif isinstance(differential, str):
        raise ModelError(f"unknown differential {differential!r}")
    else:
        entries = differential
    try:
        return check(FilteredComplex.build(gens, entries))
    except ComplexError as exc:
        raise ModelError(f"differential rejected: {exc}") from None


def unit_vector(c: FilteredComplex, inv: OrbitInventory, rule: str = "zero") -> int:
    """The designated unit cocycle.

    Under the zero rule it is the sum of the degree-0 units of all min-type
    regions. Under the unit-killing rule it is the innermost degree-0
    generator plus the outermost region's unit when that region is a distinct
    min-type plateau.
    """
    if rule == "unit_killing":
        center, outer = inv.regions[0], inv.regions[-1]
        v = 1 << c.index(region_generator_id(center, center.degrees.index(0)))
        if outer is not center and outer.kind == "min":
            v ^= 1 << c.index(unit_generator_id(outer))
        return v
    v = 0
    for r in inv.regions:
        u = unit_generator_id(r)
        if u is not None:
            v ^= 1 << c.index(u)
    return v


def filling_class_vectors(c: FilteredComplex, d: DomainModel, inv: OrbitInventory,
                          rule: str = "zero") -> list[tuple[int, int]]:
    """(degree, cocycle) for each filling basis class, matching :func:`unit_vector`.

    On the innermost region the j-th filling class is the j-th generator; on
    annular regions it restricts to the first boundary generator of its degree.
    The zero rule sums over all min-type regions, the unit-killing rule over
    the innermost and outermost ones.
    """
    if rule == "unit_killing":
        outer = inv.regions[-1]
        support = [inv.regions[0]] + ([outer] if len(inv.regions) > 1 and outer.kind == "min" else [])
    else:
        support = [r for r in inv.regions if r.kind == "min"]
    out = []
    for j, deg in enumerate(d.filling_degrees):
        v = 0
        for r in support:
            if r.innermost:
                v ^= 1 << c.index(region_generator_id(r, j))
            elif deg in r.degrees:
                v ^= 1 << c.index(region_generator_id(r, r.degrees.index(deg)))
        out.append((deg, v))
    return out
