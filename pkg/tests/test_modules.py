import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ditrace.errors import (
    NondeterminismError,
    NotASubmoduleError,
    ScalarsNotFreeError,
)
from ditrace.fixtures import bundled_table, random_transition_system
from ditrace.modules import (
    ALGEBRA_ZERO,
    Bimodule,
    LeftModuleSet,
    ModuleMorphism,
    MonoidAlgebraElement,
    RightModuleSet,
    TransitionSystem,
    algebra_add,
    algebra_multiply,
    algebra_scale,
    check_module_axioms,
    check_module_morphism,
    module_coproduct,
    module_from_transition_system,
    module_product,
    module_quotient,
    regular_set_module,
    sub_module,
    transition_system_from_module,
    trivial_module,
)
from ditrace.monoid import ONE, ZERO, FreeMonoid, identity_morphism
from ditrace.oracles import algebra_multiply_distributive, fold_word_action
from ditrace.pointed import STAR, pointed

BOOL2 = bundled_table("bool2")
Z2 = bundled_table("z2adj")
Z3 = bundled_table("z3adj")
NIL3 = bundled_table("nil3")


# ---------------------------------------------------------------------------
# axiom checking


def test_left_multiplication_on_itself_is_a_set_module():
    for m in (BOOL2, Z2, Z3, NIL3):
        assert check_module_axioms(regular_set_module(m)).ok


def test_trivial_set_action_over_bool2():
    carrier = pointed("s")
    mod = LeftModuleSet(BOOL2, carrier,
                        lambda t, s: STAR if t.is_zero else s)
    assert check_module_axioms(mod).ok


def test_planted_association_violation_is_cited():
    carrier = pointed("s0", "s1")
    g = Z2.handle("g")
    table = {("s0",): "s1", ("s1",): "s1"}

    def action(t, s):
        if s is STAR or t.is_zero:
            return STAR
        if t.is_one:
            return s
        return table[(s,)]

    report = check_module_axioms(LeftModuleSet(Z2, carrier, action))
    assert not report.ok
    assert any(v.law == "action-associativity" for v in report.violations)


def test_right_module_adapter_mirrors_laws():
    mod = RightModuleSet(Z2, pointed("x"),
                         lambda s, t: STAR if t.is_zero else s)
    assert check_module_axioms(mod).ok


def test_bimodule_compatibility_checked():
    car = pointed("x")

    def left(t, s):
        return STAR if t.is_zero or s is STAR else s

    def right(s, t):
        return STAR if t.is_zero or s is STAR else s

    bm = Bimodule(Z2, car, left, right)
    assert check_module_axioms(bm).ok


# ---------------------------------------------------------------------------
# categorical constructions


def test_product_of_one_module_is_isomorphic_copy():
    mod = regular_set_module(Z2)
    p = module_product([mod])
    assert check_module_axioms(p).ok
    for t in Z2.elements():
        for s in mod.carrier.elements:
            assert p.act(p.scalars.from_tuple([t]), (s,)) == (mod.act(t, s),)


def test_product_and_coproduct_of_set_modules_pass_axioms():
    mods = [regular_set_module(BOOL2), regular_set_module(Z2)]
    assert check_module_axioms(module_product(mods)).ok
    cop = module_coproduct(mods)
    assert check_module_axioms(cop).ok
    assert set(cop.carrier.elements) == set(module_product(mods).carrier.elements)


def test_quotient_by_basepoint_is_isomorphic_copy():
    mod = regular_set_module(Z2)
    q = module_quotient(mod, [mod.basepoint])
    assert check_module_axioms(q).ok
    assert set(q.carrier.elements) == set(mod.carrier.elements)


def test_quotient_of_regular_action_matches_congruence_closure():
    mod = regular_set_module(Z3)
    a = Z3.handle("a")
    orbit = {Z3.mul(t, a) for t in Z3.elements()} | {a}
    q = module_quotient(mod, orbit)
    assert check_module_axioms(q).ok
    # closure oracle: identify orbit members with the basepoint, propagate
    classes = {x: {x} for x in mod.carrier.elements}
    pending = [(n, mod.basepoint) for n in orbit]
    while pending:
        u, v = pending.pop()
        if classes[u] is classes[v]:
            continue
        union = classes[u] | classes[v]
        for x in union:
            classes[x] = union
        for t in Z3.elements():
            pending.append((mod.act(t, u), mod.act(t, v)))
    partition = frozenset(frozenset(c) for c in classes.values())
    expected = frozenset([frozenset(orbit | {mod.basepoint})] +
                         [frozenset([x]) for x in mod.carrier.elements
                          if x not in orbit and x != mod.basepoint])
    assert partition == expected
    surviving = set(q.carrier.elements)
    assert surviving == {mod.basepoint} | {
        x for x in mod.carrier.elements if x != mod.basepoint and x not in orbit}


def test_action_unstable_subset_rejected():
    mod = regular_set_module(Z2)
    with pytest.raises(NotASubmoduleError):
        sub_module(mod, {ONE})  # g*1 = g escapes the subset


def test_mon_quotient_action_descends():
    mod = trivial_module(BOOL2, bundled_table("nil4"))
    nil4 = mod.carrier
    q = module_quotient(mod, {ZERO, nil4.handle("b")})
    assert check_module_axioms(q).ok
    a = nil4.handle("a")
    assert q.carrier.project(nil4.mul(a, a)) == ZERO  # a*a = b falls into the ideal
    assert q.carrier.project(a) == a


# ---------------------------------------------------------------------------
# transition systems


def test_empty_relation_sends_every_word_to_star():
    ts = TransitionSystem(("s0", "s1"), ("a",), ())
    mod = module_from_transition_system(ts)
    for w in ("a", "aa", "aaa"):
        assert mod.act(mod.scalars.word(w), "s0") is STAR


def test_two_state_cycle():
    ts = TransitionSystem(("s0", "s1"), ("a",),
                          (("s0", "a", "s1"), ("s1", "a", "s0")))
    mod = module_from_transition_system(ts)
    assert mod.act(mod.scalars.word("aa"), "s0") == "s0"
    assert mod.act(mod.scalars.word("a"), "s0") == "s1"
    assert check_module_axioms(mod, scalar_limit=15).ok


def test_word_action_equals_stepwise_fold():
    rng = random.Random(5)
    for _ in range(10):
        ts = random_transition_system(rng, n_states=4, n_letters=2)
        mod = module_from_transition_system(ts)
        words = [w for w in mod.scalars.sample_elements(3) if not w.is_zero]
        for w in words:
            for s in ts.states:
                expected = fold_word_action(ts, w, s)
                got = mod.act(w, s)
                assert got == (expected if expected is not None else STAR)


def test_round_trip_on_cycle_and_random_systems():
    ts = TransitionSystem(("s0", "s1"), ("a",),
                          (("s0", "a", "s1"), ("s1", "a", "s0")))
    assert transition_system_from_module(module_from_transition_system(ts)) == ts
    rng = random.Random(11)
    for _ in range(25):
        ts = random_transition_system(rng, n_states=5, n_letters=2)
        back = transition_system_from_module(module_from_transition_system(ts))
        assert back.states == ts.states
        assert back.alphabet == ts.alphabet
        assert back.step == ts.step


def test_letter_acting_as_star_everywhere_yields_no_transitions():
    scalars = FreeMonoid(("a", "b"))
    carrier = pointed("s0", "s1")
    flip = {"s0": "s1", "s1": "s0"}

    def action(t, s):
        if s is STAR or t.is_zero:
            return STAR
        for letter in reversed(t.word):
            if s is STAR:
                return STAR
            s = flip[s] if letter == "a" else STAR
        return s

    ts = transition_system_from_module(LeftModuleSet(scalars, carrier, action))
    assert all(letter != "b" for _, letter, _ in ts.transitions)


def test_nondeterminism_rejected():
    with pytest.raises(NondeterminismError):
        TransitionSystem(("s0", "s1"), ("a",),
                         (("s0", "a", "s0"), ("s0", "a", "s1")))


def test_to_ts_needs_free_scalars():
    with pytest.raises(ScalarsNotFreeError):
        transition_system_from_module(regular_set_module(BOOL2))


# ---------------------------------------------------------------------------
# monoid algebra


FREE_AB = FreeMonoid(("a", "b"))


def _alg(*pairs):
    return MonoidAlgebraElement.from_terms(pairs)


def test_single_terms_multiply_to_the_product_term():
    x = _alg((FREE_AB.word("a"), 1))
    y = _alg((FREE_AB.word("b"), 1))
    assert algebra_multiply(x, y, FREE_AB) == _alg((FREE_AB.word("ab"), 1))


def test_product_landing_on_zero_vanishes():
    a = NIL3.handle("a")
    x = _alg((a, 1))
    assert algebra_multiply(x, x, NIL3) == ALGEBRA_ZERO


def test_two_by_two_expansion():
    a, b = FREE_AB.word("a"), FREE_AB.word("b")
    left = _alg((a, 2), (b, 3))
    right = _alg((a, 1), (b, 1))
    got = algebra_multiply(left, right, FREE_AB)
    expected = _alg((FREE_AB.word("aa"), 2), (FREE_AB.word("ab"), 2),
                    (FREE_AB.word("ba"), 3), (FREE_AB.word("bb"), 3))
    assert got == expected
    assert got == algebra_multiply_distributive(left, right, FREE_AB)


def test_algebra_associative_and_distributive_exhaustively():
    elements = [x for x in Z3.elements() if not x.is_zero]
    coeffs = (1, 2, -1)
    supports = [list(zip(combo, coeffs))
                for r in range(1, 4)
                for combo in itertools.combinations(elements, r)]
    values = [_alg(*s) for s in supports]
    for x in values:
        for y in values:
            xy = algebra_multiply(x, y, Z3)
            assert xy == algebra_multiply_distributive(x, y, Z3)
            for z in values:
                assert algebra_multiply(xy, z, Z3) == \
                    algebra_multiply(x, algebra_multiply(y, z, Z3), Z3)
                assert algebra_multiply(x, algebra_add(y, z), Z3) == \
                    algebra_add(algebra_multiply(x, y, Z3),
                                algebra_multiply(x, z, Z3))


def test_zero_element_never_stored():
    assert _alg((ZERO, 5)) == ALGEBRA_ZERO
    assert _alg((ONE, 0)) == ALGEBRA_ZERO
    assert algebra_scale(0, _alg((ONE, 3))) == ALGEBRA_ZERO


@given(st.integers(-3, 3), st.integers(-3, 3))
def test_scaling_is_linear(r, s):
    x = _alg((FREE_AB.word("a"), 1), (FREE_AB.word("b"), 2))
    assert algebra_add(algebra_scale(r, x), algebra_scale(s, x)) == \
        algebra_scale(r + s, x)


# ---------------------------------------------------------------------------
# module morphisms


def test_identity_module_morphism_is_clean():
    mod = regular_set_module(Z2)
    ident = ModuleMorphism(mod, mod, lambda s: s, identity_morphism(Z2))
    assert check_module_morphism(ident).ok


def test_non_equivariant_map_is_reported():
    mod = regular_set_module(Z2)
    collapse = ModuleMorphism(mod, mod,
                              lambda s: ZERO if s == Z2.handle("g") else s,
                              identity_morphism(Z2))
    report = check_module_morphism(collapse)
    assert not report.ok


def test_module_morphism_law_closed_under_composition():
    mod = regular_set_module(Z2)
    g = Z2.handle("g")

    def mul_by_g(s):  # equivariant: Z2 is commutative
        return Z2.mul(g, s)

    f1 = ModuleMorphism(mod, mod, mul_by_g, identity_morphism(Z2))
    assert check_module_morphism(f1).ok
    composed = ModuleMorphism(mod, mod, lambda s: f1.f(f1.f(s)),
                              identity_morphism(Z2))
    assert check_module_morphism(composed).ok
