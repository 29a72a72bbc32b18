"""Spectral invariants, the spectral norm and checks of their axioms.

The spectral invariant of a class is the least action level at which the
class has a representative: the minimum over all cocycles ``z`` in the
class of the largest generator action in ``z``. Reduction of ``z``
against the differential in filtration order finds an optimal
representative directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import gf2
from .filtered import (INF, ComplexError, FilteredComplex, cohomology, min_max_action,
                       min_max_action_brute)
from .radial import (DomainModel, ModelError, OrbitInventory, RadialProfile, build_complex, contract,
                     enumerate_orbits, filling_class_vectors, h0a_compact, h_delta_a_compact, negate,
                     scale, tau_extension, unit_vector, zero_profile)

Q = Fraction
BRUTE_LIMIT = 20


class SpectralError(AssertionError):
    """A statement that must hold exactly was found to fail."""


@dataclass(frozen=True)
class SpectralResult:
    class_label: str
    value: Fraction | float  # -inf for the zero class
    witness: int
    method: str

    @property
    def is_zero_class(self) -> bool:
        return self.method == "zero-class"


def spectral_invariant(c: FilteredComplex, beta: int, label: str = "beta",
                       method: str = "reduction") -> SpectralResult:
    """c(beta) for the class of the cocycle ``beta``; the zero class gives -inf."""
    if c.d(beta):
        raise ComplexError(f"{label} is not a cocycle")
    if method == "brute":
        if len(gf2.image_basis(c.differential)) > BRUTE_LIMIT:
            raise ComplexError("brute force limited to small coboundary spaces")
        value, witness = min_max_action_brute(c, beta)
    elif method == "reduction":
        value, witness = min_max_action(c, beta)
    else:
        raise ValueError(f"unknown method {method!r}")
    if witness == 0:
        return SpectralResult(label, -INF, 0, "zero-class")
    return SpectralResult(label, value, witness, method)


def class_span(vectors: Sequence[int]) -> Iterable[tuple[int, int]]:
    """Every nonzero combination as (mask, vector)."""
    for mask in range(1, 1 << len(vectors)):
        v = 0
        for k, x in enumerate(vectors):
            if mask >> k & 1:
                v ^= x
        yield mask, v


def implicit_unit_check(c: FilteredComplex, unit: int, classes: Sequence[int]) -> tuple[SpectralResult, Fraction]:
    """Compare c(1) with the max of c(beta) over every nonzero combination of ``classes``."""
    one = spectral_invariant(c, unit, "1")
    best = -INF
    for _, v in class_span(list(classes)):
        r = spectral_invariant(c, v)
        if not r.is_zero_class:
            best = max(best, r.value)
    if one.value != best:
        raise SpectralError(f"c(1) = {one.value} but max over classes = {best}")
    return one, best


# --- model Hamiltonians -----------------------------------------------------------

@dataclass(frozen=True)
class ModelHamiltonian:
    """A compactly supported radial Hamiltonian with its extension and unit designation.

    The unit is the sum of the degree-0 generators of all min-type constant
    regions; other filling classes are sums of their restrictions.
    """
    domain: DomainModel
    compact: RadialProfile
    tau: Fraction | None = None
    eps: Fraction = Fraction(1, 2)
    differential: object = "preset"
    name: str = ""

    def __post_init__(self):
        if not self.compact.is_compact:
            raise ModelError("model Hamiltonians are compactly supported profiles")
        if self.tau is None:
            object.__setattr__(self, "tau", self.domain.reeb.T0 / 2)
        object.__setattr__(self, "tau", Q(self.tau))
        object.__setattr__(self, "eps", Q(self.eps))

    @cached_property
    def profile(self) -> RadialProfile:
        return tau_extension(self.compact, self.tau, self.eps, self.domain)

    @cached_property
    def inventory(self) -> OrbitInventory:
        return enumerate_orbits(self.domain, self.profile)

    @cached_property
    def complex(self) -> FilteredComplex:
        return build_complex(self.domain, self.profile, self.differential)

    @property
    def rule(self) -> str:
        """The differential rule in force, with "preset" resolved."""
        if self.differential == "preset":
            return self.domain.differential
        return self.differential if isinstance(self.differential, str) else "explicit"

    @cached_property
    def unit(self) -> int:
        v = unit_vector(self.complex, self.inventory, self.rule)
        h = cohomology(self.complex)
        if self.complex.degree_of(v) != 0 or h.is_coboundary(v):
            raise ModelError("designated unit is not a nonzero degree-0 class")
        return v

    @cached_property
    def filling_classes(self) -> list[tuple[int, int]]:
        return filling_class_vectors(self.complex, self.domain, self.inventory, self.rule)

    def _derived(self, compact: RadialProfile, suffix: str) -> "ModelHamiltonian":
        return ModelHamiltonian(self.domain, compact, self.tau, self.eps, "preset", self.name + suffix)

    def bar(self) -> "ModelHamiltonian":
        return self._derived(negate(self.compact), "~bar")

    def scaled(self, s) -> "ModelHamiltonian":
        return self._derived(scale(self.compact, Q(s)), f"*{s}")

    def contracted(self, r) -> "ModelHamiltonian":
        return self._derived(contract(self.compact, Q(r)), f"@{r}")


def model(domain: DomainModel, compact: RadialProfile, name: str = "", **kw) -> ModelHamiltonian:
    return ModelHamiltonian(domain, compact, name=name, **kw)


def model_h_delta_a(domain: DomainModel, delta, A, r0=Fraction(3, 2), sigma=Fraction(1, 2)) -> ModelHamiltonian:
    return ModelHamiltonian(domain, h_delta_a_compact(delta, A), Q(sigma), 2 * (Q(r0) - 1),
                            name=f"H_delta_A({delta},{A})")


def model_h0a(domain: DomainModel, A, sigma=Fraction(1, 2)) -> ModelHamiltonian:
    return ModelHamiltonian(domain, h0a_compact(A), Q(sigma), name=f"H_0_A({A})")


def c_unit(m: ModelHamiltonian) -> SpectralResult:
    """c(1, H), asserting the implicit formula against every filling class combination."""
    one, _ = implicit_unit_check(m.complex, m.unit, [v for _, v in m.filling_classes])
    return one


def hofer_norm(m: ModelHamiltonian) -> Fraction:
    return max(m.compact.values) - min(m.compact.values)


def gamma(m: ModelHamiltonian) -> Fraction:
    return c_unit(m).value + c_unit(m.bar()).value


# --- the embedding of the real line ----------------------------------------------------

@dataclass(frozen=True)
class EmbeddingReport:
    s: Fraction
    s_prime: Fraction
    distance: Fraction
    lower: Fraction  # c(1, |s - s'| H)
    upper: Fraction  # Hofer norm of (s - s') H

    @property
    def exact(self) -> bool:
        return self.lower == self.distance == self.upper == abs(self.s - self.s_prime)


def check_sandwich(h: RadialProfile, A: Fraction) -> None:
    """H = -A on an inner disk of positive radius and -A <= H <= 0."""
    if h.radii[0] <= 0 or h.values[0] != -A:
        raise ModelError(f"profile is not -{A} on a neighbourhood of the skeleton")
    if min(h.values) < -A or max(h.values) > 0:
        raise ModelError(f"profile violates -{A} <= H <= 0")


def embedding_distance(m: ModelHamiltonian, s, s_prime, require_isometry: bool = False) -> EmbeddingReport:
    """d_gamma(phi_{sH}, phi_{s'H}) = gamma((s - s') H) with both bounds."""
    s, s_prime = Q(s), Q(s_prime)
    check_sandwich(m.compact, Q(1))
    t = s - s_prime
    if t == 0:
        return EmbeddingReport(s, s_prime, Q(0), Q(0), Q(0))
    diff = m.scaled(t)
    dist = gamma(diff)
    lower = c_unit(m.scaled(abs(t))).value
    upper = hofer_norm(diff)
    if not lower <= dist <= upper:
        raise SpectralError(f"bounds violated: {lower} <= {dist} <= {upper}")
    rep = EmbeddingReport(s, s_prime, dist, lower, upper)
    if require_isometry and not rep.exact:
        raise SpectralError(f"distance {dist} != |s - s'| = {abs(t)}")
    return rep


# --- axioms ----------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    instance: str
    ok: bool
    detail: str = ""


@dataclass
class AxiomReport:
    checks: list[AxiomCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.ok]

    def count(self, axiom: str) -> int:
        return sum(1 for c in self.checks if c.axiom == axiom)


def difference_range(h: RadialProfile, k: RadialProfile) -> tuple[Fraction | float, Fraction | float]:
    """(min, max) of k - h over r >= 0; both are attained at breakpoints for PL profiles."""
    points = sorted(set(h.radii) | set(k.radii) | {Q(0)})
    vals = [k(r) - h(r) for r in points]
    tail = k.final_slope - h.final_slope
    lo, hi = min(vals), max(vals)
    if tail > 0:
        hi = INF
    elif tail < 0:
        lo = -INF
    return lo, hi


def proportionality(h: RadialProfile, k: RadialProfile) -> Fraction | None:
    """t with k = t*h, if any (h nonzero)."""
    if h.radii != k.radii or not any(h.values):
        return None
    j = next(i for i, v in enumerate(h.values) if v)
    t = k.values[j] / h.values[j]
    if all(kv == t * hv for hv, kv in zip(h.values, k.values)) and k.final_slope == t * h.final_slope:
        return t
    return None


def axiom_suite(pairs: Sequence[tuple[ModelHamiltonian, ModelHamiltonian]]) -> AxiomReport:
    """Spectrality, continuity, monotonicity and (on rescaling pairs) the triangle inequality."""
    report = AxiomReport()
    for h, k in pairs:
        label = f"({h.name or 'H'}, {k.name or 'K'})"
        ch, ck = c_unit(h), c_unit(k)
        for m, r in ((h, ch), (k, ck)):
            report.checks.append(AxiomCheck("spectrality", m.name or label,
                                            r.value in set(m.complex.actions), f"c = {r.value}"))
        lo, hi = difference_range(h.profile, k.profile)
        delta = ch.value - ck.value
        report.checks.append(AxiomCheck("continuity", label, lo <= delta <= hi,
                                        f"{lo} <= {delta} <= {hi}"))
        if hi <= 0:  # k <= h
            report.checks.append(AxiomCheck("monotonicity", label, ck.value >= ch.value,
                                            f"K <= H: c(K) = {ck.value} >= c(H) = {ch.value}"))
        if lo >= 0:  # h <= k
            report.checks.append(AxiomCheck("monotonicity", label, ch.value >= ck.value,
                                            f"H <= K: c(H) = {ch.value} >= c(K) = {ck.value}"))
        t = proportionality(h.compact, k.compact)
        if t is not None:
            try:
                total = c_unit(h.scaled(1 + t)).value
            except ModelError:
                total = None  # the sum lands on a degenerate slope
            if total is not None:
                report.checks.append(AxiomCheck("triangle", label, total <= ch.value + ck.value,
                                                f"{total} <= {ch.value} + {ck.value}"))
    return report


# --- value near the skeleton ----------------------------------------------------------

@dataclass(frozen=True)
class SkeletonReport:
    A: Fraction
    r_prime: Fraction
    c_F: Fraction
    c_F_contracted: Fraction
    c_H: Fraction
    upper_bound: Fraction

    @property
    def ok(self) -> bool:
        return self.c_F_contracted == self.A == self.c_H == self.upper_bound


def skeleton_lemma_check(m: ModelHamiltonian, A) -> SkeletonReport:
    """Replay the proof that c(1, H) = A for H = -A near the skeleton and -A <= H <= 0.

    F = H_{0, A/r'} is contracted by r' <= (radius of the inner disk), so that
    F_{r'} >= H. Contraction gives c(1, F_{r'}) = r' c(1, F); monotonicity gives
    c(1, H) >= c(1, F_{r'}); continuity against 0 gives c(1, H) <= A.
    """
    A = Q(A)
    check_sandwich(m.compact, A)
    rho = min(m.compact.radii[0], Q(1, 2))
    r_prime = next(rho * Q(k, k + 1) for k in itertools.count(1)
                   if not m.domain.reeb.contains(A / (rho * Q(k, k + 1))))
    F = model(m.domain, h0a_compact(A / r_prime), tau=m.tau, eps=m.eps)
    Fr = F.contracted(r_prime)
    lo, _ = difference_range(m.compact, Fr.compact)
    if lo < 0:
        raise SpectralError("contracted comparison profile does not dominate H")
    c_F = c_unit(F).value
    c_Fr = c_unit(Fr).value
    if c_Fr != r_prime * c_F:
        raise SpectralError(f"contraction principle fails: {c_Fr} != {r_prime} * {c_F}")
    c_H = c_unit(m).value
    if c_H < c_Fr:
        raise SpectralError(f"monotonicity fails: c(1,H) = {c_H} < c(1,F_r') = {c_Fr}")
    _, upper = difference_range(m.profile, tau_extension(zero_profile(), m.tau, m.eps, m.domain))
    return SkeletonReport(A, r_prime, c_F, c_Fr, c_H, upper)
