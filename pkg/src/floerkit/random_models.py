"""Random instances for property checks.

Complexes are produced as a direct sum of cancelling pairs and isolated
generators, then conjugated by a random automorphism that preserves
degree, never raises action and (optionally) respects a block partition.
Every invariant of a filtered complex therefore holds by construction,
while the differential and the class representatives look generic.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from . import gf2
from .chain_maps import BlockPartition
from .filtered import FilteredComplex, OrbitGenerator, filtration_order
from .gf2 import Gf2Matrix


def random_generators(rng: random.Random, n: int, degrees: Sequence[int] = (-1, 0, 1, 2),
                      actions: Sequence[Fraction] | None = None) -> list[OrbitGenerator]:
    if actions is None:
        actions = [Fraction(k, 2) for k in range(-4, 9)]
    gens = [OrbitGenerator(f"g{i}", rng.choice(degrees), rng.choice(actions), "constant", i, 0)
            for i in range(n)]
    return sorted(gens, key=lambda g: g.sort_key)


def _allowed(gens, i, j, tags=None) -> bool:
    """May a map send generator j to generator i (same degree, no action gain, barricade)?"""
    if gens[i].degree != gens[j].degree or gens[i].action > gens[j].action:
        return False
    if tags is not None and tags[j] == "b" and tags[i] != "b":
        return False
    return True


def random_filtered_automorphism(rng: random.Random, gens, tags=None, density: float = 0.5):
    """Return (T, T^-1): unitriangular in filtration order, degree 0, action non-increasing."""
    tmp = FilteredComplex(tuple(gens), gf2.zeros(len(gens), len(gens)))
    order = filtration_order(tmp)
    cols = [1 << j for j in range(len(gens))]
    for pos_j, j in enumerate(order):
        for i in order[:pos_j]:
            if _allowed(gens, i, j, tags) and rng.random() < density:
                cols[j] |= 1 << i
    t = Gf2Matrix(tuple(cols), len(gens))
    inv_cols = []
    for j in range(len(gens)):
        x = gf2.solve(t, 1 << j)
        assert x is not None
        inv_cols.append(x)
    return t, Gf2Matrix(tuple(inv_cols), len(gens))


def random_complex(rng: random.Random, n: int, *, degrees=(-1, 0, 1, 2), actions=None,
                   partition: bool = False, pair_prob: float = 0.6,
                   density: float = 0.5) -> tuple[FilteredComplex, BlockPartition | None]:
    """A random validated complex, optionally with a barricade partition it respects."""
    gens = random_generators(rng, n, degrees, actions)
    tags = [rng.choice("bc") for _ in gens] if partition else None
    free = list(range(n))
    rng.shuffle(free)
    cols = [0] * n
    used = set()
    for j in free:
        if j in used or rng.random() > pair_prob:
            continue
        candidates = [i for i in range(n) if i not in used and i != j
                      and gens[i].degree == gens[j].degree + 1
                      and gens[i].action <= gens[j].action
                      and (tags is None or tags[j] != "b" or tags[i] == "b")]
        if candidates:
            i = rng.choice(candidates)
            cols[j] = 1 << i
            used.update((i, j))
    d0 = Gf2Matrix(tuple(cols), n)
    t, t_inv = random_filtered_automorphism(rng, gens, tags, density)
    d = t @ d0 @ t_inv
    c = FilteredComplex(tuple(gens), d)
    return c, (BlockPartition(tuple(tags)) if tags is not None else None)


def random_degree_map(rng: random.Random, c: FilteredComplex, shift_degree: int,
                      tags=None, density: float = 0.4) -> Gf2Matrix:
    """Random map C -> C of the given degree that never raises action (and respects tags)."""
    gens = c.generators
    cols = []
    for j, gj in enumerate(gens):
        col = 0
        for i, gi in enumerate(gens):
            if gi.degree != gj.degree + shift_degree or gi.action > gj.action:
                continue
            if tags is not None and tags[j] == "b" and tags[i] != "b":
                continue
            if rng.random() < density:
                col |= 1 << i
        cols.append(col)
    return Gf2Matrix(tuple(cols), len(gens))


def random_rational(rng: random.Random, lo: Fraction, hi: Fraction, denominators=(2, 3, 4, 5, 7, 8, 10)) -> Fraction:
    q = rng.choice(denominators)
    a = int(lo * q) + 1
    b = int(hi * q)
    if b < a:
        return (lo + hi) / 2
    return Fraction(rng.randint(a, b), q)


def random_compact_profile(rng: random.Random, domain, max_breaks: int = 4, value_range: int = 4,
                           den: int = 20, tries: int = 200):
    """A random nondegenerate piecewise-linear profile vanishing for r >= 1."""
    from .radial import ModelError, RadialProfile, check_profile
    for _ in range(tries):
        n = rng.randint(1, max_breaks)
        radii = sorted({Fraction(rng.randint(0, den - 1), den) for _ in range(n)} | {Fraction(1)})
        values = [Fraction(rng.randint(-value_range * den, value_range * den), den) for _ in radii[:-1]]
        h = RadialProfile(tuple(radii), tuple(values) + (Fraction(0),))
        try:
            check_profile(domain, h)
        except ModelError:
            continue
        return h
    raise RuntimeError("no nondegenerate profile found")


def random_bump_above(rng: random.Random, h, domain, tries: int = 200):
    """A nondegenerate profile ``k >= h``: ``h`` plus a random nonnegative compact bump."""
    from .radial import ModelError, RadialProfile, check_profile
    for _ in range(tries):
        b = random_compact_profile(rng, domain)
        radii = tuple(sorted(set(h.radii) | set(b.radii)))
        k = RadialProfile(radii, tuple(h(r) + abs(b(r)) if r < 1 else h(r) for r in radii))
        try:
            check_profile(domain, k)
        except ModelError:
            continue
        return k
    raise RuntimeError("no nondegenerate bump found")


def random_sandwich(rng: random.Random, domain, tries: int = 200):
    """(profile, A): equal to -A near the skeleton and between -A and 0 elsewhere."""
    from .radial import ModelError, RadialProfile, check_profile
    for _ in range(tries):
        A = random_rational(rng, Fraction(0), Fraction(6))
        rho = Fraction(rng.randint(1, 9), 10)
        mid = Fraction(rng.randint(int(rho * 20) + 1, 20), 20)
        if mid < 1:
            h = RadialProfile((rho, mid, Fraction(1)), (-A, -A * Fraction(rng.randint(0, 10), 10), Fraction(0)))
        else:
            h = RadialProfile((rho, Fraction(1)), (-A, Fraction(0)))
        try:
            check_profile(domain, h)
        except ModelError:
            continue
        if domain.reeb.contains(A):
            continue
        return h, A
    raise RuntimeError("no nondegenerate sandwich found")


def random_conjugate(rng: random.Random, c: FilteredComplex, n_pairs: int = 2,
                     density: float = 0.5) -> tuple[FilteredComplex, Gf2Matrix]:
    """Add ``n_pairs`` cancelling pairs, then conjugate by a random filtered automorphism T.

    Returns the new complex and T restricted to the old generators, which
    carries cocycles of ``c`` to cocycles with the same spectral invariants.
    """
    gens = list(c.generators)
    n = len(gens)
    degrees = sorted({g.degree for g in gens}) or [0]
    actions = sorted(set(c.actions)) or [Fraction(0)]
    for k in range(n_pairs):
        deg = rng.choice(degrees)
        hi = rng.choice(actions) + Fraction(rng.randint(0, 4), 4)
        lo = hi - Fraction(rng.randint(0, 4), 4)
        gens.append(OrbitGenerator(f"p{k}x", deg - 1, hi, "constant", n + 2 * k, 0))
        gens.append(OrbitGenerator(f"p{k}y", deg, lo, "constant", n + 2 * k + 1, 0))
    m = len(gens)
    order = sorted(range(m), key=lambda i: gens[i].sort_key)
    where = {old: new for new, old in enumerate(order)}

    def move(v: int) -> int:
        return gf2.vector(where[i] for i in gf2.support(v))

    cols = list(c.differential.columns) + [0] * (m - n)
    for k in range(n_pairs):
        cols[n + 2 * k] = 1 << (n + 2 * k + 1)
    gens = [gens[i] for i in order]
    d0 = Gf2Matrix(tuple(move(cols[i]) for i in order), m)
    t, t_inv = random_filtered_automorphism(rng, gens, None, density)
    out = FilteredComplex(tuple(gens), t @ d0 @ t_inv)
    embed = Gf2Matrix(tuple(1 << where[j] for j in range(n)), m)
    return out, t @ embed
