import math
import random

import pytest

from ditrace.errors import (
    ForeignElementError,
    NonInjectiveMapError,
    NotADMapError,
    SwapViolationError,
)
from ditrace.fixtures import diamond_graph, random_grid_embedding, swiss_flag
from ditrace.modules import check_module_axioms, check_module_morphism
from ditrace.monoid import (
    ONE,
    ZERO,
    check_axioms_sampled,
    check_morphism,
    identity_morphism,
    morphisms_equal_on,
)
from ditrace.oracles import dihomotopy_partition_sweep, partition_of_classes
from ditrace.pointed import STAR
from ditrace.spaces import (
    DPath,
    GraphMap,
    GridEmbedding,
    GridSpace,
    class_of_path,
    compose_space_maps,
    concat_action,
    concat_action_right,
    dihomotopy_classes,
    enumerate_dipaths,
    identity_space_map,
    path_element,
    pi1_map,
    pi1_module,
    trace_bimodule,
    trace_monoid,
    trace_monoid_map,
)

EMPTY3 = GridSpace(3, 3)
HOLE3 = GridSpace(3, 3, frozenset({(1, 1)}))


# ---------------------------------------------------------------------------
# trace monoid


def test_non_composable_paths_multiply_to_zero():
    m = trace_monoid(EMPTY3)
    p = m.element_of(DPath.grid((0, 0), "R"))
    q = m.element_of(DPath.grid((2, 2), "U"))
    assert m.mul(p, q) == ZERO


def test_one_is_neutral_for_traces():
    m = trace_monoid(EMPTY3)
    p = m.element_of(DPath.grid((1, 1), "RU"))
    assert m.mul(ONE, p) == p
    assert m.mul(p, ONE) == p


def test_unit_square_element_count():
    m = trace_monoid(GridSpace(1, 1))
    elems = m.sample_elements(4)
    # four constant paths, four unit steps, RU and UR from the corner
    assert len([x for x in elems if not (x.is_zero or x.is_one)]) == 10


def test_constant_paths_are_local_units_only():
    m = trace_monoid(EMPTY3)
    c = m.element_of(DPath.grid((1, 1)))
    p = m.element_of(DPath.grid((1, 1), "R"))
    q = m.element_of(DPath.grid((0, 0), "R"))
    assert m.mul(c, p) == p
    assert m.mul(c, q) == ZERO
    assert m.mul(c, c) == c


def test_trace_monoid_laws_exhaustive_up_to_bound():
    # every triple of traces of length <= 3, not just a sample
    m = trace_monoid(GridSpace(2, 2))
    assert check_axioms_sampled(m, bound=3, limit=None).ok
    g = trace_monoid(diamond_graph())
    assert check_axioms_sampled(g, bound=3, limit=None).ok


def test_foreign_path_rejected():
    m = trace_monoid(GridSpace(1, 1))
    with pytest.raises(ForeignElementError):
        m.element_of(DPath.grid((0, 0), "RR"))  # leaves the grid


# ---------------------------------------------------------------------------
# concatenation action


def test_concat_action_unit_and_mismatch():
    m = trace_monoid(EMPTY3)
    p = m.element_of(DPath.grid((0, 0), "RU"))
    assert concat_action(m, ONE, p) == p
    t = m.element_of(DPath.grid((0, 0), "R"))
    assert concat_action(m, t, p) == ZERO  # end (1,0) is not the start (0,0)
    assert concat_action_right(m, p, t) == ZERO


def test_concat_action_associative_exhaustively_on_small_grid():
    space = GridSpace(2, 2)
    m = trace_monoid(space)
    paths = [path_element(p) for p in space.all_paths(4)]
    scalars = [ZERO, ONE] + paths
    for t in scalars:
        for u in scalars:
            tu = m.mul(t, u)
            for p in paths:
                left = concat_action(m, tu, p)
                inner = concat_action(m, u, p)
                right = ZERO if inner.is_zero else concat_action(m, t, inner)
                assert left == right


def test_trace_bimodule_axioms():
    bm = trace_bimodule(GridSpace(2, 2), bound=4)
    report = check_module_axioms(bm, bound=4, scalar_limit=20, carrier_limit=20)
    assert report.ok


# ---------------------------------------------------------------------------
# path enumeration


def test_constant_path_for_equal_endpoints():
    paths = enumerate_dipaths(EMPTY3, (1, 1), (1, 1))
    assert paths == [DPath.grid((1, 1))]


def test_three_paths_to_two_one():
    assert len(enumerate_dipaths(EMPTY3, (0, 0), (2, 1))) == 3


def test_twenty_paths_corner_to_corner():
    paths = enumerate_dipaths(EMPTY3, (0, 0), (3, 3))
    assert len(paths) == 20 == math.comb(6, 3)


def test_enumeration_is_lexicographic():
    paths = enumerate_dipaths(EMPTY3, (0, 0), (1, 1))
    assert [p.step_word() for p in paths] == ["RU", "UR"]


def test_unreachable_endpoints_enumerate_nothing():
    assert enumerate_dipaths(EMPTY3, (2, 2), (0, 0)) == []


def test_binomial_counts_hold_for_all_endpoint_pairs():
    for dx in range(4):
        for dy in range(4):
            got = len(enumerate_dipaths(EMPTY3, (0, 0), (dx, dy)))
            assert got == math.comb(dx + dy, dx)


# ---------------------------------------------------------------------------
# dihomotopy classes


def test_empty_grid_has_one_class():
    assert len(dihomotopy_classes(EMPTY3, (0, 0), (3, 3))) == 1


def test_hole_splits_paths_into_two_classes():
    classes = dihomotopy_classes(HOLE3, (0, 0), (3, 3))
    assert len(classes) == 2
    assert partition_of_classes(classes) == \
        dihomotopy_partition_sweep(HOLE3, (0, 0), (3, 3))
    assert sum(len(c.members) for c in classes) == 20


def test_swiss_flag_count_matches_sweep_oracle():
    space = swiss_flag()
    classes = dihomotopy_classes(space, (0, 0), (5, 5))
    assert partition_of_classes(classes) == \
        dihomotopy_partition_sweep(space, (0, 0), (5, 5))
    assert len(classes) == 8  # frozen from the two independent closures


def test_classes_have_lexicographically_least_representatives():
    for c in dihomotopy_classes(HOLE3, (0, 0), (3, 3)):
        assert c.rep == min(c.members, key=lambda p: p.steps)


def test_graph_paths_are_their_own_classes():
    g = diamond_graph()
    classes = dihomotopy_classes(g, "p", "s")
    assert len(classes) == 2
    assert all(len(c.members) == 1 for c in classes)


def test_class_of_path_lookup():
    p = DPath.grid((0, 0), "RRRUUU")
    c = class_of_path(HOLE3, p)
    assert p in c.members


# ---------------------------------------------------------------------------
# the first dihomotopy module


def test_pi1_of_graph_acts_by_concatenation():
    g = diamond_graph()
    mod = pi1_module(g)
    m = mod.scalars
    c = mod.class_of(DPath("q", ("e2",)))
    t = m.element_of(DPath("p", ("e1",)))
    image = mod.act_left(t, c)
    assert image.rep == DPath("p", ("e1", "e2"))


def test_pi1_action_on_empty_grid_hits_the_unique_class():
    mod = pi1_module(EMPTY3)
    m = mod.scalars
    c = mod.classes((1, 0), (3, 3))[0]
    t = m.element_of(DPath.grid((0, 0), "R"))
    image = mod.act_left(t, c)
    assert image == mod.classes((0, 0), (3, 3))[0]
    assert mod.act_left(ZERO, c) is STAR
    assert mod.act_left(ONE, c) == c


def test_pi1_prefix_action_consistent_across_representatives():
    mod = pi1_module(HOLE3)
    m = mod.scalars
    t = m.element_of(DPath.grid((0, 0), "U"))
    for c in mod.classes((0, 1), (3, 3)):
        images = {mod.class_of(DPath((0, 0), ("U",) + member.steps))
                  for member in c.members}
        assert len(images) == 1
        assert images == {mod.act_left(t, c)}


def test_pi1_right_action_mirrors_left():
    mod = pi1_module(HOLE3)
    m = mod.scalars
    c = mod.classes((0, 0), (3, 3))[0]
    t = m.element_of(DPath.grid((0, 0), "R"))  # valid but not composable on the right
    assert mod.act_right(c, t) is STAR
    wide = pi1_module(GridSpace(4, 3, frozenset({(1, 1)})))
    c = wide.classes((0, 0), (3, 3))[0]
    t2 = wide.scalars.element_of(DPath.grid((3, 3), "R"))
    image = wide.act_right(c, t2)
    assert image.start == (0, 0) and image.end == (4, 3)


def test_pi1_bimodule_axioms_bounded():
    mod = pi1_module(GridSpace(2, 2, frozenset({(0, 0)})), bound=4)
    report = check_module_axioms(mod, bound=3, scalar_limit=14, carrier_limit=14)
    assert report.ok


# ---------------------------------------------------------------------------
# functors induced by space maps


def test_identity_map_gives_identity_morphism():
    f = identity_space_map(HOLE3)
    tf = trace_monoid_map(f)
    m = trace_monoid(HOLE3)
    assert morphisms_equal_on(tf, identity_morphism(m), m.sample_elements(3))


def test_translation_preserves_composability_both_ways():
    f = GridEmbedding(GridSpace(2, 2), GridSpace(4, 4), 1, 1)
    src = trace_monoid(f.source)
    tgt = trace_monoid(f.target)
    tf = trace_monoid_map(f)
    paths = [path_element(p) for p in f.source.all_paths(2)]
    for p in paths:
        for q in paths:
            pq = src.mul(p, q)
            image = tgt.mul(tf.apply(p), tf.apply(q))
            if pq == ZERO:
                assert image == ZERO
            else:
                assert image == tf.apply(pq)
    assert check_morphism(tf, bound=2, limit=16).ok


def test_functor_respects_composition():
    f = GridEmbedding(GridSpace(1, 1), GridSpace(2, 2), 1, 0)
    g = GridEmbedding(GridSpace(2, 2), GridSpace(4, 4), 0, 2)
    comp = compose_space_maps(g, f)
    lhs = trace_monoid_map(comp)
    sample = trace_monoid(f.source).sample_elements(4)
    tg, tf = trace_monoid_map(g), trace_monoid_map(f)
    for x in sample:
        assert lhs.apply(x) == tg.apply(tf.apply(x))


def test_graph_map_functoriality_and_errors():
    g = diamond_graph()
    ident = identity_space_map(g)
    assert check_morphism(trace_monoid_map(ident), bound=3, limit=12).ok
    with pytest.raises(NonInjectiveMapError):
        GraphMap(g, g,
                 tuple((v, "p") for v in g.vertices),
                 tuple((lab, lab) for lab in sorted(g.edge_by_label)))
    with pytest.raises(NotADMapError):
        GraphMap(g, g,
                 tuple((v, v) for v in g.vertices),
                 (("e1", "e2"), ("e2", "e1"), ("e3", "e3"), ("e4", "e4")))


def test_out_of_bounds_translation_rejected():
    with pytest.raises(NotADMapError):
        GridEmbedding(GridSpace(3, 3), GridSpace(3, 3), 1, 0)


def test_pi1_map_requires_free_cells_to_stay_free():
    src = GridSpace(2, 2)
    tgt = GridSpace(3, 3, frozenset({(1, 1)}))
    with pytest.raises(SwapViolationError):
        pi1_map(GridEmbedding(src, tgt, 0, 0))


def test_pi1_map_of_embedding_between_empty_grids():
    f = GridEmbedding(GridSpace(2, 2), GridSpace(3, 3), 0, 1)
    pm = pi1_map(f, bound=4)
    src_mod, tgt_mod = pm.source, pm.target
    c = src_mod.classes((0, 0), (2, 2))[0]
    image = pm(c)
    assert image == tgt_mod.classes((0, 1), (2, 3))[0]
    assert check_module_morphism(pm, bound=3, scalar_limit=10,
                                 carrier_limit=10).ok


def test_pi1_map_respects_classes_against_target_recomputation():
    src = GridSpace(3, 3, frozenset({(1, 1)}))
    tgt = GridSpace(4, 4, frozenset({(1, 1), (3, 3)}))
    f = GridEmbedding(src, tgt, 0, 0)
    pm = pi1_map(f, bound=6)
    for c in pm.source.classes((0, 0), (3, 3)):
        images = {pm.target.class_of(f.path(member)) for member in c.members}
        assert len(images) == 1
        assert images == {pm(c)}


def test_random_embeddings_pass_the_module_morphism_law():
    rng = random.Random(13)
    for _ in range(8):
        f = random_grid_embedding(rng)
        pm = pi1_map(f, bound=4)
        assert check_module_morphism(pm, bound=3, scalar_limit=10,
                                     carrier_limit=10).ok


# ---------------------------------------------------------------------------
# model invariants


def test_swap_cells_are_location_accurate():
    p = DPath.grid((0, 0), "RURU")
    assert EMPTY3.swap_cell(p, 0) == (0, 0)
    assert EMPTY3.swap_cell(p, 1) == (1, 0)
    assert EMPTY3.swap_cell(p, 2) == (1, 1)
    assert HOLE3.allowed_swaps(p) == [0, 1]  # position 2 sweeps the hole


def test_forbidden_cells_never_block_paths():
    blocked = GridSpace(2, 2, frozenset({(0, 0), (1, 1), (0, 1), (1, 0)}))
    assert len(enumerate_dipaths(blocked, (0, 0), (2, 2))) == 6
    assert len(dihomotopy_classes(blocked, (0, 0), (2, 2))) == 6  # no swaps at all


def test_quotient_of_trace_monoid_kills_paths_through_a_vertex():
    from ditrace.monoid import SubMonoid, quotient
    m = trace_monoid(GridSpace(2, 2))
    const = m.element_of(DPath.grid((1, 1)))
    q = quotient(m, SubMonoid(m, frozenset([ZERO, const])))
    through = m.element_of(DPath.grid((0, 0), "RURU"))
    around = m.element_of(DPath.grid((0, 0), "RRUU"))
    assert q.project(through) == ZERO
    assert q.project(around) == around


def test_partition_independent_of_closure_strategy_on_random_grids():
    rng = random.Random(17)
    for _ in range(10):
        w, h = rng.randint(2, 4), rng.randint(2, 4)
        forbidden = frozenset((i, j) for i in range(w) for j in range(h)
                              if rng.random() < 0.3)
        space = GridSpace(w, h, forbidden)
        a, b = (0, 0), (w, h)
        assert partition_of_classes(dihomotopy_classes(space, a, b)) == \
            dihomotopy_partition_sweep(space, a, b)
