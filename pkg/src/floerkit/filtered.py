"""Action-filtered, graded cochain complexes over GF(2).

Generators carry an exact rational action and an integer degree. The
differential raises degree by one and never raises action, so every
sublevel set ``{action < a}`` spans a subcomplex and every window
``(a, b)`` gives a subquotient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import gf2
from .gf2 import Gf2Matrix, Gf2Vector

ActionValue = Fraction
Endpoint = Union[Fraction, float]  # float only for +/-inf

INF = math.inf


class ComplexError(ValueError):
    """A complex, window or map violates a structural invariant."""


class WindowError(ComplexError):
    pass


@dataclass(frozen=True)
class OrbitGenerator:
    id: str
    degree: int
    action: ActionValue
    kind: str = "constant"  # "constant" or "family"
    family: int = 0  # region id for constants, family id for split circles
    morse_index: int = 0
    label: str = ""

    def __post_init__(self):
        if self.kind not in ("constant", "family"):
            raise ComplexError(f"unknown provenance {self.kind!r}")
        if self.morse_index not in (0, 1):
            raise ComplexError(f"morse index must be 0 or 1, got {self.morse_index}")
        object.__setattr__(self, "action", Fraction(self.action))

    @property
    def sort_key(self):
        return (self.action, self.family, self.morse_index)


@dataclass(frozen=True)
class Violation:
    rule: str
    source: int | None = None
    target: int | None = None
    detail: str = ""

    def __str__(self):
        where = ""
        if self.source is not None:
            where = f" (source {self.source} -> target {self.target})"
        return f"{self.rule}{where}: {self.detail}" if self.detail else f"{self.rule}{where}"


@dataclass(frozen=True)
class FilteredComplex:
    generators: tuple[OrbitGenerator, ...]
    differential: Gf2Matrix

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        n = len(self.generators)
        if self.differential.shape != (n, n):
            raise ComplexError(f"differential shape {self.differential.shape} != ({n}, {n})")

    @classmethod
    def build(cls, generators: Iterable[OrbitGenerator],
              entries: Iterable[tuple[str, str]] = ()) -> "FilteredComplex":
        """Sort generators into canonical order and assemble the differential.

        ``entries`` are (source id, target id) pairs; repeated pairs cancel.
        """
        gens = sorted(generators, key=lambda g: g.sort_key)
        index = {g.id: i for i, g in enumerate(gens)}
        if len(index) != len(gens):
            raise ComplexError("duplicate generator ids")
        cols = [0] * len(gens)
        for src, tgt in entries:
            try:
                cols[index[src]] ^= 1 << index[tgt]
            except KeyError as exc:
                raise ComplexError(f"unknown generator {exc.args[0]!r}") from None
        return cls(tuple(gens), Gf2Matrix(tuple(cols), len(gens)))

    @classmethod
    def empty(cls) -> "FilteredComplex":
        return cls((), gf2.zeros(0, 0))

    def __len__(self):
        return len(self.generators)

    @property
    def actions(self) -> list[ActionValue]:
        return [g.action for g in self.generators]

    @property
    def degrees(self) -> list[int]:
        return [g.degree for g in self.generators]

    @property
    def spectrum(self) -> list[ActionValue]:
        return sorted(set(self.actions))

    def index(self, gen_id: str) -> int:
        for i, g in enumerate(self.generators):
            if g.id == gen_id:
                return i
        raise KeyError(gen_id)

    def ids(self, v: Gf2Vector) -> list[str]:
        return [self.generators[i].id for i in gf2.support(v)]

    def vector(self, ids: Iterable[str]) -> Gf2Vector:
        return gf2.vector(self.index(i) for i in ids)

    def d(self, v: Gf2Vector) -> Gf2Vector:
        return gf2.matvec(self.differential, v)

    def max_action(self, v: Gf2Vector) -> Endpoint:
        if not v:
            return -INF
        return max(self.generators[i].action for i in gf2.support(v))

    def degree_of(self, v: Gf2Vector) -> int | None:
        """Common degree of a homogeneous vector; None if zero or mixed."""
        degs = {self.generators[i].degree for i in gf2.support(v)}
        return degs.pop() if len(degs) == 1 else None

    def with_actions(self, scale: Fraction) -> "FilteredComplex":
        gens = [OrbitGenerator(g.id, g.degree, g.action * scale, g.kind, g.family,
                               g.morse_index, g.label) for g in self.generators]
        return FilteredComplex(tuple(gens), self.differential)


def validate(c: FilteredComplex) -> list[Violation]:
    """Check d^2 = 0, the +1 grading, action monotonicity and canonical order."""
    out: list[Violation] = []
    gens = c.generators
    for j, col in enumerate(c.differential.columns):
        for i in gf2.support(col):
            if gens[i].degree != gens[j].degree + 1:
                out.append(Violation("degree", j, i,
                                     f"{gens[j].degree} -> {gens[i].degree}"))
            if gens[i].action > gens[j].action:
                out.append(Violation("action", j, i,
                                     f"{gens[j].action} -> {gens[i].action}"))
    dd = c.differential @ c.differential
    for i, j in dd.entries():
        out.append(Violation("d_squared", j, i, "d(d(x)) has a nonzero entry"))
    keys = [g.sort_key for g in gens]
    for k in range(len(keys) - 1):
        if keys[k] > keys[k + 1]:
            out.append(Violation("order", k, k + 1, "generators not sorted by (action, family, index)"))
    return out


def check(c: FilteredComplex) -> FilteredComplex:
    problems = validate(c)
    if problems:
        raise ComplexError("; ".join(str(p) for p in problems[:5]))
    return c


# --- windows ----------------------------------------------------------------

@dataclass(frozen=True)
class Window:
    a: Endpoint = -INF
    b: Endpoint = INF

    def __post_init__(self):
        for name in ("a", "b"):
            v = getattr(self, name)
            if not (isinstance(v, float) and math.isinf(v)):
                object.__setattr__(self, name, Fraction(v))
        if not self.a < self.b:
            raise WindowError(f"window needs a < b, got ({self.a}, {self.b})")

    def __contains__(self, x) -> bool:
        return self.a < x < self.b

    def check_against(self, c: FilteredComplex) -> "Window":
        spec = set(c.actions)
        for v in (self.a, self.b):
            if v in spec:
                raise WindowError(f"window endpoint {v} lies in the action spectrum")
        return self

    def __str__(self):
        return f"({_fmt(self.a)}, {_fmt(self.b)})"


FULL = Window()


def _fmt(x) -> str:
    if isinstance(x, float):
        return "inf" if x > 0 else "-inf"
    return str(x)


def window_indices(c: FilteredComplex, w: Window) -> list[int]:
    w.check_against(c)
    return [i for i, g in enumerate(c.generators) if g.action in w]


def window_subquotient(c: FilteredComplex, w: Window) -> FilteredComplex:
    """The subquotient spanned by generators with action strictly inside ``w``.

    Entries of the differential landing below ``w.a`` are dropped; this is
    legitimate because the sublevel set below ``a`` is a subcomplex.
    """
    idx = window_indices(c, w)
    gens = tuple(c.generators[i] for i in idx)
    return FilteredComplex(gens, gf2.select(c.differential, idx, idx))


# --- filtration order and reduction ------------------------------------------

def filtration_order(c: FilteredComplex) -> list[int]:
    """Generator indices sorted so every differential entry points backwards.

    Ties in action are broken by decreasing degree; since the differential
    raises degree, targets then precede sources within an action level.
    """
    return sorted(range(len(c)), key=lambda i: (c.generators[i].action, -c.generators[i].degree, i))


@dataclass
class Reduction:
    """Column reduction of the differential in filtration order."""
    complex: FilteredComplex
    order: list[int]
    position: dict[int, int]
    reduced: Gf2Matrix
    transform: Gf2Matrix
    pivots: dict[int, int]

    @classmethod
    def of(cls, c: FilteredComplex) -> "Reduction":
        order = filtration_order(c)
        position = {g: k for k, g in enumerate(order)}
        permuted = gf2.select(c.differential, order, order)
        reduced, transform = gf2.reduce(permuted)
        return cls(c, order, position, reduced, transform, gf2.pivot_map(reduced))

    def to_order(self, v: Gf2Vector) -> Gf2Vector:
        return gf2.vector(self.position[i] for i in gf2.support(v))

    def from_order(self, v: Gf2Vector) -> Gf2Vector:
        return gf2.vector(self.order[k] for k in gf2.support(v))

    def minimize(self, z: Gf2Vector) -> Gf2Vector:
        """Representative of ``z + im(d)`` whose top generator is lowest."""
        residue, _ = gf2.reduce_vector(self.to_order(z), self.reduced, self.transform, self.pivots)
        return self.from_order(residue)


def min_max_action(c: FilteredComplex, z: Gf2Vector,
                   reduction: Reduction | None = None) -> tuple[Endpoint, Gf2Vector]:
    """min over ``y`` of max action of ``z + d(y)``, with an optimal representative."""
    red = reduction or Reduction.of(c)
    best = red.minimize(z)
    return c.max_action(best), best


def min_max_action_brute(c: FilteredComplex, z: Gf2Vector) -> tuple[Endpoint, Gf2Vector]:
    """Exhaustive oracle: enumerate the full coset ``z + im(d)``."""
    basis = gf2.image_basis(c.differential)
    best_val, best_vec = c.max_action(z), z
    for mask in range(1, 1 << len(basis)):
        v = z
        for k, b in enumerate(basis):
            if mask >> k & 1:
                v ^= b
        val = c.max_action(v)
        if val < best_val:
            best_val, best_vec = val, v
    return best_val, best_vec


# --- cohomology --------------------------------------------------------------

class CohomologyBasis:
    """A basis of ker d / im d, degree by degree, with coordinate extraction."""

    def __init__(self, c: FilteredComplex, window: Window = FULL):
        self.window = window
        self.complex = c
        n = len(c)
        d = c.differential
        by_degree: dict[int, list[int]] = {}
        for i, g in enumerate(c.generators):
            by_degree.setdefault(g.degree, []).append(i)
        image = []
        classes: list[Gf2Vector] = []
        degrees: list[int] = []
        for k in sorted(by_degree):
            idx = by_degree[k]
            local = Gf2Matrix(tuple(d.columns[i] for i in idx), n)
            kernel = [_lift(v, idx) for v in gf2.kernel_basis(local)]
            image_k = gf2.image_basis(Gf2Matrix(tuple(d.columns[i] for i in by_degree.get(k - 1, [])), n))
            # classes are the kernel vectors independent modulo the image
            span = list(image_k)
            for v in kernel:
                m = Gf2Matrix(tuple(span), n)
                if not gf2.in_span(m, v):
                    span.append(v)
                    classes.append(v)
                    degrees.append(k)
            image.extend(image_k)
        self.image = image
        self.classes = classes
        self.degrees = degrees
        self._system = Gf2Matrix(tuple(image) + tuple(classes), n)
        self._red = gf2.reduce(self._system)
        self._piv = gf2.pivot_map(self._red[0])

    def __len__(self):
        return len(self.classes)

    @property
    def dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for k in self.degrees:
            out[k] = out.get(k, 0) + 1
        return out

    def dim(self, degree: int) -> int:
        return self.dims.get(degree, 0)

    def coordinates(self, v: Gf2Vector) -> Gf2Vector:
        """Coordinates of the class of cocycle ``v`` in this basis."""
        if self.complex.d(v):
            raise ComplexError("vector is not a cocycle")
        residue, x = gf2.reduce_vector(v, *self._red, self._piv)
        if residue:
            raise ComplexError("cocycle not spanned by basis and coboundaries")
        return x >> len(self.image)

    def is_coboundary(self, v: Gf2Vector) -> bool:
        return self.coordinates(v) == 0

    def representative(self, coords: Gf2Vector) -> Gf2Vector:
        out = 0
        for k in gf2.support(coords):
            out ^= self.classes[k]
        return out


def _lift(v: Gf2Vector, idx: Sequence[int]) -> Gf2Vector:
    return gf2.vector(idx[k] for k in gf2.support(v))


def cohomology(c: FilteredComplex, w: Window = FULL) -> CohomologyBasis:
    return CohomologyBasis(window_subquotient(c, w), w)


# --- maps between windows -------------------------------------------------------

@dataclass(frozen=True)
class FilteredChainMap:
    """A degree-0 map between filtered complexes raising action by at most ``shift``."""
    source: FilteredComplex
    target: FilteredComplex
    matrix: Gf2Matrix
    shift: Fraction = Fraction(0)
    name: str = ""

    def __post_init__(self):
        if self.matrix.shape != (len(self.target), len(self.source)):
            raise ComplexError(
                f"map matrix shape {self.matrix.shape} != ({len(self.target)}, {len(self.source)})")
        object.__setattr__(self, "shift", Fraction(self.shift))

    def __call__(self, v: Gf2Vector) -> Gf2Vector:
        return gf2.matvec(self.matrix, v)

    def then(self, other: "FilteredChainMap") -> "FilteredChainMap":
        """``other`` after ``self``."""
        if other.source is not self.target and other.source != self.target:
            raise ComplexError("maps are not composable")
        return FilteredChainMap(self.source, other.target, other.matrix @ self.matrix,
                                self.shift + other.shift)


def identity_map(c: FilteredComplex) -> FilteredChainMap:
    return FilteredChainMap(c, c, gf2.identity(len(c)))


def map_by_ids(source: FilteredComplex, target: FilteredComplex,
               shift: Fraction = Fraction(0), name: str = "") -> FilteredChainMap:
    """Send each source generator to the target generator with the same id (or 0)."""
    index = {g.id: i for i, g in enumerate(target.generators)}
    cols = [(1 << index[g.id]) if g.id in index else 0 for g in source.generators]
    return FilteredChainMap(source, target, Gf2Matrix(tuple(cols), len(target)), shift, name)


def window_map(c: FilteredComplex, w_from: Window, w_to: Window) -> FilteredChainMap:
    """The natural map CF_(a,b) -> CF_(a',b') for a <= a' and b <= b'."""
    if not (w_from.a <= w_to.a and w_from.b <= w_to.b):
        raise WindowError(f"no natural map from {w_from} to {w_to}")
    src = window_subquotient(c, w_from)
    tgt = window_subquotient(c, w_to)
    return map_by_ids(src, tgt, name=f"{w_from}->{w_to}")


def inclusion_map(c: FilteredComplex, w_small: Window, w_big: Window) -> FilteredChainMap:
    if w_small.a != w_big.a or w_small.b > w_big.b:
        raise WindowError(f"inclusion needs equal lower ends and b <= b', got {w_small}, {w_big}")
    return window_map(c, w_small, w_big)


def projection_map(c: FilteredComplex, w_big: Window, w_quot: Window) -> FilteredChainMap:
    if w_big.b != w_quot.b or w_big.a > w_quot.a:
        raise WindowError(f"projection needs equal upper ends and a <= a', got {w_big}, {w_quot}")
    return window_map(c, w_big, w_quot)


def induced_matrix(f: FilteredChainMap, hs: CohomologyBasis, ht: CohomologyBasis) -> Gf2Matrix:
    """Matrix of [f] from ``hs`` (on f.source) to ``ht`` (on f.target)."""
    return Gf2Matrix(tuple(ht.coordinates(f(z)) for z in hs.classes), len(ht))


def connecting_matrix(c: FilteredComplex, a: Endpoint, b: Endpoint, cc: Endpoint,
                      h_ab: CohomologyBasis, h_bc: CohomologyBasis) -> Gf2Matrix:
    """Matrix of the connecting map HF_(b,c) -> HF_(a,b) (degree +1)."""
    sub_ac = window_subquotient(c, Window(a, cc))
    ids_ac = {g.id: i for i, g in enumerate(sub_ac.generators)}
    ids_ab = {g.id: i for i, g in enumerate(h_ab.complex.generators)}
    cols = []
    for z in h_bc.classes:
        lifted = gf2.vector(ids_ac[h_bc.complex.generators[i].id] for i in gf2.support(z))
        dz = sub_ac.d(lifted)
        pushed = 0
        for i in gf2.support(dz):
            gid = sub_ac.generators[i].id
            if gid not in ids_ab:
                raise ComplexError("zig-zag left the lower window")
            pushed |= 1 << ids_ab[gid]
        cols.append(h_ab.coordinates(pushed))
    return Gf2Matrix(tuple(cols), len(h_ab))


@dataclass
class ExactnessFailure:
    position: str
    degree: int
    detail: str

    def __str__(self):
        return f"exactness fails at {self.position} in degree {self.degree}: {self.detail}"


def _restrict(m: Gf2Matrix, src_deg: list[int], tgt_deg: list[int], k_src: int, k_tgt: int) -> Gf2Matrix:
    rows = [i for i, d in enumerate(tgt_deg) if d == k_tgt]
    cols = [j for j, d in enumerate(src_deg) if d == k_src]
    return gf2.select(m, rows, cols)


def les_exactness_check(c: FilteredComplex, a: Endpoint, b: Endpoint, cc: Endpoint) -> ExactnessFailure | None:
    """Verify exactness of HF_(a,b) -> HF_(a,c) -> HF_(b,c) -> HF_(a,b)[+1].

    Returns ``None`` when exact at all three positions in every degree.
    """
    w_ab, w_ac, w_bc = Window(a, b), Window(a, cc), Window(b, cc)
    for w in (w_ab, w_ac, w_bc):
        w.check_against(c)
    h_ab, h_ac, h_bc = cohomology(c, w_ab), cohomology(c, w_ac), cohomology(c, w_bc)
    inc = induced_matrix(inclusion_map(c, w_ab, w_ac), h_ab, h_ac)
    proj = induced_matrix(projection_map(c, w_ac, w_bc), h_ac, h_bc)
    conn = connecting_matrix(c, a, b, cc, h_ab, h_bc)
    degrees = sorted(set(h_ab.degrees) | set(h_ac.degrees) | set(h_bc.degrees)
                     | {k - 1 for k in h_ab.degrees})
    # each position: (incoming map, its source degrees, outgoing map, ...)
    for k in degrees:
        checks = [
            ("HF(a,c)", _restrict(inc, h_ab.degrees, h_ac.degrees, k, k),
             _restrict(proj, h_ac.degrees, h_bc.degrees, k, k), h_ac.dim(k)),
            ("HF(b,c)", _restrict(proj, h_ac.degrees, h_bc.degrees, k, k),
             _restrict(conn, h_bc.degrees, h_ab.degrees, k, k + 1), h_bc.dim(k)),
            ("HF(a,b)", _restrict(conn, h_bc.degrees, h_ab.degrees, k - 1, k),
             _restrict(inc, h_ab.degrees, h_ac.degrees, k, k), h_ab.dim(k)),
        ]
        for position, incoming, outgoing, dim_mid in checks:
            if not (outgoing @ incoming).is_zero():
                return ExactnessFailure(position, k, "composite of consecutive maps is nonzero")
            r_in, r_out = gf2.rank(incoming), gf2.rank(outgoing)
            if r_in != dim_mid - r_out:
                return ExactnessFailure(position, k, f"rank(in)={r_in}, dim={dim_mid}, rank(out)={r_out}")
    return None


# --- barcodes -------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Bar:
    birth: ActionValue
    death: Endpoint
    degree: int

    @property
    def infinite(self) -> bool:
        return isinstance(self.death, float) and math.isinf(self.death)


def barcode(c: FilteredComplex, keep_empty: bool = False) -> list[Bar]:
    """Persistence of the sublevel cohomologies under inclusion.

    A reduced column with pivot ``i`` pairs generator ``i`` (birth) with the
    column's generator (death). Zero-length bars are dropped unless
    ``keep_empty`` is set.
    """
    red = Reduction.of(c)
    gens = c.generators
    paired_rows = set(red.pivots)
    bars = []
    for k, col in enumerate(red.reduced.columns):
        src = gens[red.order[k]]
        if col:
            born = gens[red.order[col.bit_length() - 1]]
            if keep_empty or born.action != src.action:
                bars.append(Bar(born.action, src.action, born.degree))
        elif k not in paired_rows:
            bars.append(Bar(src.action, INF, src.degree))
    return sorted(bars, key=lambda bar: (bar.degree, bar.birth, bar.death))


def barcode_csv(bars: Sequence[Bar]) -> str:
    lines = ["birth,death,degree"]
    for bar in bars:
        lines.append(f"{bar.birth},{_fmt(bar.death) if bar.infinite else bar.death},{bar.degree}")
    return "\n".join(lines) + "\n"
