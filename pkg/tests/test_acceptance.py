"""Acceptance suite: one test per advertised guarantee, at full size.

Each test prints a PASS line on success (run with -s to see them) and pins
the runtime limits where one is stated.
"""
import random
import time

from ditrace import verify
from ditrace.fixtures import (
    adjunction_instance,
    all_submonoids,
    bundled_table,
    bundled_tables,
    mon_adjunction_instances,
    random_transition_system,
)
from ditrace.modules import (
    module_from_transition_system,
    transition_system_from_module,
    trivial_module,
)
from ditrace.monoid import quotient
from ditrace.oracles import (
    congruence_quotient_partition,
    dihomotopy_partition_sweep,
    ideal_quotient_partition,
    partition_of_classes,
)
from ditrace.scalars import (
    adjunction_left_check,
    adjunction_right_check,
    group_preservation_check,
)
from ditrace.spaces import GridSpace, dihomotopy_classes


def _report(name):
    print(f"ACCEPTANCE {name}: PASS")


def test_absorption_monoid_axiom_suite():
    start = time.time()
    sizes = {m.data.size for _, m in bundled_tables()}
    assert sizes == {2, 3, 4, 5}
    result = verify.check_monoid_axioms()
    elapsed = time.time() - start
    assert result.ok, result.detail
    assert elapsed < 10.0, f"axiom suite took {elapsed:.1f}s"
    _report("monoid-axioms")


def test_quotient_oracle_equivalence():
    checked = 0
    for _, m in bundled_tables():
        for sub in all_submonoids(m):
            q = quotient(m, sub)
            assert ideal_quotient_partition(q) == \
                congruence_quotient_partition(m, sub)
            checked += 1
    assert checked >= 40
    _report("quotient-oracle")


def test_module_axiom_suite():
    result = verify.check_module_suite(seed=1, ts_count=100,
                                       grid_size=4, path_bound=6)
    assert result.ok, result.detail
    _report("module-axioms")


def test_transition_system_round_trip():
    rng = random.Random(1)
    for _ in range(100):
        ts = random_transition_system(rng, n_states=rng.randint(2, 5))
        back = transition_system_from_module(module_from_transition_system(ts))
        assert back.states == ts.states
        assert back.alphabet == ts.alphabet
        assert back.step == ts.step
    _report("ts-roundtrip")


def test_adjunctions_on_generated_corpus():
    start = time.time()
    rng = random.Random(1)
    instances = 0
    for _ in range(50):
        l, mod_src, mod_tgt = adjunction_instance(rng, max_size=3)
        left = adjunction_left_check(l, mod_src, mod_tgt)
        right = adjunction_right_check(l, mod_tgt, mod_src)
        assert left.ok, left.failures
        assert right.ok, right.failures
        assert left.left_count == left.right_count
        assert right.left_count == right.right_count
        instances += 1
    for l, mod_src, mod_tgt in mon_adjunction_instances():
        left = adjunction_left_check(l, mod_src, mod_tgt)
        right = adjunction_right_check(l, mod_tgt, mod_src)
        assert left.ok and right.ok
        instances += 1
    elapsed = time.time() - start
    assert instances >= 50
    assert elapsed < 60.0, f"adjunction corpus took {elapsed:.1f}s"
    _report("adjunctions")


def test_group_preservation_under_extension():
    bool2 = bundled_table("bool2")
    for carrier_name in ("z2adj", "z3adj"):
        carrier = bundled_table(carrier_name)
        mod = trivial_module(bool2, carrier)
        from ditrace.fixtures import all_monoid_morphisms
        for l in all_monoid_morphisms(bool2, bundled_table("z2adj")):
            report = group_preservation_check(l, mod, max_len=3)
            assert report.ok, report.failures
    result = verify.check_group_preservation(max_len=3)
    assert result.ok, result.detail
    _report("group-preservation")


def test_simplicial_identity_families():
    result = verify.check_simplicial_identities(seed=1, points=1000, n_max=5)
    assert result.ok, result.detail
    _report("simplicial-identities")


def test_dihomotopy_class_counts():
    cases = [
        ("empty", GridSpace(3, 3), 1),
        ("hole", GridSpace(3, 3, frozenset({(1, 1)})), 2),
        ("swiss", None, None),
    ]
    from ditrace.fixtures import swiss_flag
    cases[2] = ("swiss", swiss_flag(), None)
    for name, space, expected in cases:
        start = time.time()
        b = (space.width, space.height)
        classes = dihomotopy_classes(space, (0, 0), b)
        sweep = dihomotopy_partition_sweep(space, (0, 0), b)
        elapsed = time.time() - start
        assert partition_of_classes(classes) == sweep, name
        if expected is not None:
            assert len(classes) == expected, name
        assert elapsed < 5.0, f"{name} took {elapsed:.1f}s"
    _report("dihomotopy-counts")


def test_pi1_action_well_defined():
    result = verify.check_pi1_action(trace_len=3)
    assert result.ok, result.detail
    _report("pi1-action")


def test_functoriality_on_random_embeddings():
    result = verify.check_functoriality(seed=1, count=20)
    assert result.ok, result.detail
    _report("functoriality")
