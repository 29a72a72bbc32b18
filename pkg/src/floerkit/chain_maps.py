"""Filtered chain maps, barricade block structure and chain homotopies.

Barricade convention: a partition tags every generator ``b`` (inside the
barricaded region) or ``c`` (its complement). A matrix respects the
barricade when every column indexed by a ``b`` generator has support in
``b`` rows only. For a differential this makes the ``b`` generators a
subcomplex, with the ``c`` generators spanning the quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import gf2
from .filtered import (CohomologyBasis, ComplexError, FilteredChainMap, FilteredComplex,
                       Violation, Window, cohomology, window_subquotient)
from .gf2 import Gf2Matrix


@dataclass(frozen=True)
class BlockPartition:
    tags: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "tags", tuple(self.tags))
        bad = set(self.tags) - {"b", "c"}
        if bad:
            raise ValueError(f"partition tags must be 'b' or 'c', got {sorted(bad)}")

    def __len__(self):
        return len(self.tags)

    def indices(self, tag: str) -> list[int]:
        return [i for i, t in enumerate(self.tags) if t == tag]

    @classmethod
    def uniform(cls, n: int, tag: str) -> "BlockPartition":
        return cls((tag,) * n)


def validate_chain_map(f: FilteredChainMap) -> list[Violation]:
    """Commutation with differentials, degree 0 and the action-shift bound."""
    out = []
    src, tgt = f.source.generators, f.target.generators
    for i, j in f.matrix.entries():
        if tgt[i].degree != src[j].degree:
            out.append(Violation("degree", j, i, f"{src[j].degree} -> {tgt[i].degree}"))
        if tgt[i].action > src[j].action + f.shift:
            out.append(Violation("action", j, i,
                                 f"{src[j].action} -> {tgt[i].action} exceeds shift {f.shift}"))
    defect = f.matrix @ f.source.differential + f.target.differential @ f.matrix
    for i, j in defect.entries():
        out.append(Violation("commutation", j, i, "f d != d f"))
    return out


def compose(f: FilteredChainMap, g: FilteredChainMap) -> FilteredChainMap:
    """``g`` after ``f``."""
    return f.then(g)


def barricade_check(m: Gf2Matrix, p_source: BlockPartition,
                    p_target: BlockPartition | None = None) -> list[Violation]:
    """Entries sending a b-generator to a c-generator."""
    p_target = p_target or p_source
    if len(p_source) != m.n_cols or len(p_target) != m.n_rows:
        raise ComplexError("partition does not cover the matrix")
    return [Violation("barricade", j, i, "b -> c entry")
            for i, j in m.entries()
            if p_source.tags[j] == "b" and p_target.tags[i] == "c"]


def _block(c: FilteredComplex, idx: list[int]) -> FilteredComplex:
    return FilteredComplex(tuple(c.generators[i] for i in idx), gf2.select(c.differential, idx, idx))


def subcomplex_b(c: FilteredComplex, p: BlockPartition) -> FilteredComplex:
    if barricade_check(c.differential, p):
        raise ComplexError("differential violates the barricade")
    return _block(c, p.indices("b"))


def quotient_c(c: FilteredComplex, p: BlockPartition) -> FilteredComplex:
    if barricade_check(c.differential, p):
        raise ComplexError("differential violates the barricade")
    return _block(c, p.indices("c"))


def quotient_projection(c: FilteredComplex, p: BlockPartition) -> FilteredChainMap:
    q = quotient_c(c, p)
    pos = {i: k for k, i in enumerate(p.indices("c"))}
    cols = tuple((1 << pos[j]) if j in pos else 0 for j in range(len(c)))
    return FilteredChainMap(c, q, Gf2Matrix(cols, len(q)), name="pi_c")


def restrict_and_project(f: FilteredChainMap, p_source: BlockPartition,
                         p_target: BlockPartition | None = None) -> tuple[FilteredChainMap, FilteredChainMap]:
    """Split a barricade-respecting map into its b-restriction and c-quotient."""
    p_target = p_target or p_source
    if barricade_check(f.matrix, p_source, p_target):
        raise ComplexError("map violates the barricade")
    sb, tb = p_source.indices("b"), p_target.indices("b")
    sc, tc = p_source.indices("c"), p_target.indices("c")
    f_b = FilteredChainMap(subcomplex_b(f.source, p_source), subcomplex_b(f.target, p_target),
                           gf2.select(f.matrix, tb, sb), f.shift, "f_b")
    f_c = FilteredChainMap(quotient_c(f.source, p_source), quotient_c(f.target, p_target),
                           gf2.select(f.matrix, tc, sc), f.shift, "f_c")
    return f_b, f_c


def factor_through_projection(f: FilteredChainMap, p_source: BlockPartition,
                              p_target: BlockPartition | None = None) -> Gf2Matrix:
    """Solve ``g . pi_s = pi_t . f`` for ``g``, asserting the solution is unique.

    Every lift of each quotient basis vector must give the same column;
    this is the uniqueness half of the factorisation through quotients.
    """
    p_target = p_target or p_source
    pi_s = quotient_projection(f.source, p_source)
    pi_t = quotient_projection(f.target, p_target)
    rhs = pi_t.matrix @ f.matrix
    kernel = gf2.kernel_basis(pi_s.matrix)
    cols = []
    for k in range(len(pi_s.target)):
        lift = gf2.solve(pi_s.matrix, 1 << k)
        if lift is None:
            raise ComplexError("projection is not surjective")
        col = gf2.matvec(rhs, lift)
        for v in kernel:
            if gf2.matvec(rhs, lift ^ v) != col:
                raise ComplexError("map does not descend to the quotient")
        cols.append(col)
    return Gf2Matrix(tuple(cols), len(pi_t.target))


@dataclass(frozen=True)
class ChainHomotopy:
    """``f + g = d psi + psi d`` with ``psi`` of degree -1 (signs vanish mod 2)."""
    f: FilteredChainMap
    g: FilteredChainMap
    psi: Gf2Matrix

    def __post_init__(self):
        if self.f.matrix.shape != self.g.matrix.shape or self.psi.shape != self.f.matrix.shape:
            raise ComplexError("homotopy shapes disagree")


def homotopy_defect(h: ChainHomotopy) -> Gf2Matrix:
    d_s, d_t = h.f.source.differential, h.f.target.differential
    return h.f.matrix + h.g.matrix + d_t @ h.psi + h.psi @ d_s


def verify_homotopy(h: ChainHomotopy) -> Gf2Matrix | None:
    """``None`` if the homotopy relation holds exactly, else the nonzero defect."""
    src, tgt = h.f.source.generators, h.f.target.generators
    for i, j in h.psi.entries():
        if tgt[i].degree != src[j].degree - 1:
            raise ComplexError(f"psi entry {j}->{i} is not of degree -1")
    defect = homotopy_defect(h)
    return None if defect.is_zero() else defect


def project_homotopy(h: ChainHomotopy, p_source: BlockPartition,
                     p_target: BlockPartition | None = None) -> ChainHomotopy:
    p_target = p_target or p_source
    if barricade_check(h.psi, p_source, p_target):
        raise ComplexError("homotopy violates the barricade")
    _, f_c = restrict_and_project(h.f, p_source, p_target)
    _, g_c = restrict_and_project(h.g, p_source, p_target)
    psi_c = gf2.select(h.psi, p_target.indices("c"), p_source.indices("c"))
    return ChainHomotopy(f_c, g_c, psi_c)


@dataclass
class InducedMap:
    matrix: Gf2Matrix
    source: CohomologyBasis
    target: CohomologyBasis

    @property
    def rank(self) -> int:
        return gf2.rank(self.matrix)

    def is_isomorphism(self) -> bool:
        return len(self.source) == len(self.target) == self.rank


def induced_on_cohomology(f: FilteredChainMap, w_source: Window = Window(),
                          w_target: Window = Window()) -> InducedMap:
    """The map [f]: HF_(a,b)(source) -> HF_(a',b')(target)."""
    if not (w_source.a + f.shift <= w_target.a and w_source.b + f.shift <= w_target.b):
        raise ComplexError(f"windows {w_source} -> {w_target} incompatible with shift {f.shift}")
    sub_s = window_subquotient(f.source, w_source)
    sub_t = window_subquotient(f.target, w_target)
    s_idx = {g.id: i for i, g in enumerate(f.source.generators)}
    t_pos = {g.id: k for k, g in enumerate(sub_t.generators)}
    t_ids = [g.id for g in f.target.generators]
    cols = []
    for g in sub_s.generators:
        col = 0
        for i in gf2.support(f.matrix.columns[s_idx[g.id]]):
            k = t_pos.get(t_ids[i])
            if k is not None:
                col |= 1 << k
        cols.append(col)
    m = FilteredChainMap(sub_s, sub_t, Gf2Matrix(tuple(cols), len(sub_t)), f.shift)
    problems = [v for v in validate_chain_map(m) if v.rule == "commutation"]
    if problems:
        raise ComplexError("map is not a chain map on the chosen windows")
    hs, ht = cohomology(f.source, w_source), cohomology(f.target, w_target)
    for b in hs.image:
        if ht.coordinates(m(b)):
            raise ComplexError("induced map depends on the representative")
    matrix = Gf2Matrix(tuple(ht.coordinates(m(z)) for z in hs.classes), len(ht))
    return InducedMap(matrix, hs, ht)


def zero_map(source: FilteredComplex, target: FilteredComplex, shift=Fraction(0)) -> FilteredChainMap:
    return FilteredChainMap(source, target, gf2.zeros(len(target), len(source)), shift)
