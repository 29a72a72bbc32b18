import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floerkit import gf2
from floerkit.chain_maps import (BlockPartition, ChainHomotopy, barricade_check, compose,
                                 factor_through_projection, induced_on_cohomology,
                                 project_homotopy, quotient_projection, restrict_and_project,
                                 validate_chain_map, verify_homotopy, zero_map)
from floerkit.filtered import (ComplexError, FilteredChainMap, FilteredComplex, OrbitGenerator,
                               Window, check, cohomology, identity_map)
from floerkit.gf2 import Gf2Matrix
from floerkit.random_models import random_complex, random_degree_map


def block4():
    """b-part {b1, b0} acyclic, c-part {c1, c0} with d(c0) = c1 + b1."""
    gens = [OrbitGenerator("b1", 1, 0, family=0), OrbitGenerator("b0", 0, 1, family=1),
            OrbitGenerator("c1", 1, 2, family=2), OrbitGenerator("c0", 0, 3, family=3)]
    c = check(FilteredComplex.build(gens, [("b0", "b1"), ("c0", "c1"), ("c0", "b1")]))
    return c, BlockPartition(("b", "b", "c", "c"))


def map_from(c, images):
    cols = [c.vector(images.get(g.id, [g.id])) for g in c.generators]
    return FilteredChainMap(c, c, Gf2Matrix(tuple(cols), len(c)))


def acyclic_pair():
    return check(FilteredComplex.build([OrbitGenerator("g1", 1, 0), OrbitGenerator("g0", 0, 1)],
                                       [("g0", "g1")]))


def null_homotopic(rng, c, tags=None):
    """id + d psi + psi d for a random action non-increasing psi of degree -1."""
    psi = random_degree_map(rng, c, -1, tags)
    d = c.differential
    m = gf2.identity(len(c)) + d @ psi + psi @ d
    return FilteredChainMap(c, c, m), psi


# --- validate_chain_map ----------------------------------------------------------

def test_identity_and_zero_valid():
    c, _ = block4()
    assert validate_chain_map(identity_map(c)) == []
    assert validate_chain_map(zero_map(c, c)) == []


def test_action_raising_rejected():
    c, _ = block4()
    f = map_from(c, {"b1": ["c1"]})
    assert "action" in {v.rule for v in validate_chain_map(f)}
    lifted = FilteredChainMap(c, c, f.matrix, shift=F(2))
    assert "action" not in {v.rule for v in validate_chain_map(lifted)}


def test_non_chain_map_rejected():
    c, _ = block4()
    f = map_from(c, {"c1": ["c1", "b1"]})
    assert "commutation" in {v.rule for v in validate_chain_map(f)}


def test_degree_violation():
    c, _ = block4()
    f = map_from(c, {"c0": ["c0", "c1"]})
    assert "degree" in {v.rule for v in validate_chain_map(f)}


# --- barricade -----------------------------------------------------------------

def test_barricade_trivial_cases():
    c, p = block4()
    assert barricade_check(gf2.zeros(4, 4), p) == []
    assert barricade_check(c.differential, BlockPartition.uniform(4, "b")) == []
    assert barricade_check(c.differential, p) == []


def test_barricade_violation():
    c, _ = block4()
    p = BlockPartition(("c", "b", "c", "c"))  # d(b0) = b1 now crosses b -> c
    hits = barricade_check(c.differential, p)
    assert [(v.source, v.target) for v in hits] == [(1, 0)]


def test_bad_tag():
    with pytest.raises(ValueError):
        BlockPartition(("b", "x"))


# --- restrict and project ---------------------------------------------------------

def test_restrict_identity():
    c, p = block4()
    f_b, f_c = restrict_and_project(identity_map(c), p)
    assert f_b.matrix == gf2.identity(2) and f_c.matrix == gf2.identity(2)


def test_restrict_block_example():
    c, p = block4()
    f = map_from(c, {"c1": ["c1", "b1"], "c0": ["c0", "b0"]})
    assert validate_chain_map(f) == []
    f_b, f_c = restrict_and_project(f, p)
    assert f_c.matrix.to_rows() == [[1, 0], [0, 1]]
    assert f_b.matrix == gf2.identity(2)
    pi = quotient_projection(c, p)
    assert f_c.matrix @ pi.matrix == pi.matrix @ f.matrix
    assert factor_through_projection(f, p) == f_c.matrix


def test_image_in_b_projects_to_zero():
    c, p = block4()
    g = map_from(c, {"c1": ["b1"], "c0": ["b0"], "b1": [], "b0": []})
    assert validate_chain_map(g) == []
    _, g_c = restrict_and_project(g, p)
    assert g_c.matrix.is_zero()


def test_restrict_rejects_barricade_violation():
    c, p = block4()
    f = map_from(c, {"b0": ["b0", "c0"]})
    with pytest.raises(ComplexError):
        restrict_and_project(f, p)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_restrict_functorial_and_unique(seed):
    rng = random.Random(seed)
    c, p = random_complex(rng, 9, partition=True)
    f, _ = null_homotopic(rng, c, p.tags)
    g, _ = null_homotopic(rng, c, p.tags)
    assert validate_chain_map(f) == [] and barricade_check(f.matrix, p) == []
    gf = compose(f, g)
    assert validate_chain_map(gf) == []
    _, f_c = restrict_and_project(f, p)
    _, g_c = restrict_and_project(g, p)
    _, gf_c = restrict_and_project(gf, p)
    assert gf_c.matrix == g_c.matrix @ f_c.matrix
    # any map making the square commute equals f_c
    assert (factor_through_projection(f, p) + f_c.matrix).is_zero()


# --- homotopies ----------------------------------------------------------------

def test_homotopy_trivial():
    c, _ = block4()
    f = identity_map(c)
    assert verify_homotopy(ChainHomotopy(f, f, gf2.zeros(4, 4))) is None


def test_homotopy_acyclic_pair():
    c = acyclic_pair()
    psi = Gf2Matrix((c.vector(["g0"]), 0), 2)  # g1 -> g0
    assert verify_homotopy(ChainHomotopy(identity_map(c), zero_map(c, c), psi)) is None


def test_homotopy_wrong_psi():
    c = acyclic_pair()
    defect = verify_homotopy(ChainHomotopy(identity_map(c), zero_map(c, c), gf2.zeros(2, 2)))
    assert defect == gf2.identity(2)


def test_homotopy_wrong_degree():
    c = acyclic_pair()
    psi = Gf2Matrix((0, c.vector(["g1"])), 2)  # g0 -> g1 raises degree
    with pytest.raises(ComplexError):
        verify_homotopy(ChainHomotopy(identity_map(c), zero_map(c, c), psi))


def test_project_homotopy_block_example():
    c, p = block4()
    g = map_from(c, {"c1": ["c1", "b1"], "c0": ["c0", "b0"]})
    psi = Gf2Matrix((0, 0, c.vector(["b0"]), 0), 4)
    h = ChainHomotopy(identity_map(c), g, psi)
    assert verify_homotopy(h) is None
    hc = project_homotopy(h, p)
    assert hc.psi.is_zero()
    assert hc.f.matrix == hc.g.matrix == gf2.identity(2)
    assert verify_homotopy(hc) is None


def test_project_homotopy_all_c():
    c = acyclic_pair()
    psi = Gf2Matrix((c.vector(["g0"]), 0), 2)
    h = ChainHomotopy(identity_map(c), zero_map(c, c), psi)
    hc = project_homotopy(h, BlockPartition.uniform(2, "c"))
    assert hc.psi == psi and verify_homotopy(hc) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_project_homotopy_random(seed):
    rng = random.Random(seed)
    c, p = random_complex(rng, 9, partition=True)
    f, psi = null_homotopic(rng, c, p.tags)
    h = ChainHomotopy(f, identity_map(c), psi)
    assert verify_homotopy(h) is None
    assert verify_homotopy(project_homotopy(h, p)) is None


# --- induced maps ------------------------------------------------------------------

def test_induced_identity():
    c, _ = block4()
    ind = induced_on_cohomology(identity_map(c))
    assert ind.matrix == gf2.identity(len(ind.source))


def test_induced_to_acyclic_is_zero():
    c = acyclic_pair()
    src = FilteredComplex.build([OrbitGenerator("x", 1, 5)])
    f = FilteredChainMap(src, c, Gf2Matrix((c.vector(["g1"]),), 2))
    assert validate_chain_map(f) == []
    assert induced_on_cohomology(f).matrix.shape == (0, 1)


def test_induced_window_shift_incompatible():
    c, _ = block4()
    f = FilteredChainMap(c, c, gf2.identity(4), shift=F(1))
    with pytest.raises(ComplexError):
        induced_on_cohomology(f, Window(F(-1, 2), F(5, 2)), Window(F(-1, 2), F(5, 2)))
    ind = induced_on_cohomology(f, Window(F(-1, 2), F(5, 2)), Window(F(3, 2), F(7, 2)))
    assert ind.matrix.n_cols == len(cohomology(c, Window(F(-1, 2), F(5, 2))))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_homotopic_to_identity_induces_identity(seed):
    rng = random.Random(seed)
    c, _ = random_complex(rng, 9)
    f, _ = null_homotopic(rng, c)
    g, _ = null_homotopic(rng, c)
    ind = induced_on_cohomology(compose(g, f))
    assert ind.matrix == gf2.identity(len(ind.source))
    w = Window(F(-1, 8), F(23, 8))
    assert induced_on_cohomology(f, w, w).is_isomorphism()
