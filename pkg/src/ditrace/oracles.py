"""Independent brute-force oracles.

These deliberately re-derive results through a different route than the main
implementations (generic congruence closure instead of the ideal rule,
seed-and-sweep closure instead of union-find, stepwise folds instead of the
module action).  They back the test suite and the bundled verification runs;
production code never calls them.
"""
from __future__ import annotations

from .monoid import ZERO, AbsMonoid, MonElement, QuotientMonoid, SubMonoid
from .modules import TransitionSystem
from .spaces import GridSpace, Space


def table_congruence_partition(m: AbsMonoid, seed_pairs) -> frozenset:
    """Congruence closure on a finite monoid: seed identifications propagated
    through left and right multiplication until a fixpoint."""
    elems = m.elements()
    cls = {x: {x} for x in elems}

    def merge(a, b):
        if cls[a] is cls[b]:
            return False
        union = cls[a] | cls[b]
        for x in union:
            cls[x] = union
        return True

    pending = [(a, b) for a, b in seed_pairs]
    while pending:
        a, b = pending.pop()
        if not merge(a, b):
            continue
        for x in elems:
            pending.append((m.mul(x, a), m.mul(x, b)))
            pending.append((m.mul(a, x), m.mul(b, x)))
    return frozenset(frozenset(c) for c in cls.values())


def congruence_quotient_partition(m: AbsMonoid, killed: SubMonoid) -> frozenset:
    """Partition of a finite monoid by the congruence generated by n ~ 0."""
    return table_congruence_partition(m, [(n, ZERO) for n in killed.nonzero])


def ideal_quotient_partition(q: QuotientMonoid) -> frozenset:
    """Partition induced by the ideal-membership rule, for comparison."""
    zero_class = {ZERO}
    singles = []
    for x in q.base.elements():
        if x.is_zero:
            continue
        if q.is_killed(x):
            zero_class.add(x)
        else:
            singles.append(frozenset([x]))
    return frozenset([frozenset(zero_class)] + singles)


def word_congruence_partition(free, killed: SubMonoid, bound: int) -> frozenset:
    """Bounded congruence closure on all words of length <= bound.

    Context products that would leave the bounded universe are skipped;
    the partition is exact on the universe because classes only ever merge
    into the zero class.
    """
    universe = set(free.sample_elements(bound))
    cls = {x: {x} for x in universe}

    def merge(a, b):
        if cls[a] is cls[b]:
            return False
        union = cls[a] | cls[b]
        for x in union:
            cls[x] = union
        return True

    pending = [(n, ZERO) for n in killed.nonzero if n in universe]
    while pending:
        a, b = pending.pop()
        if not merge(a, b):
            continue
        for x in universe:
            for pair in (((free.mul(x, a)), (free.mul(x, b))),
                         ((free.mul(a, x)), (free.mul(b, x)))):
                if pair[0] in universe and pair[1] in universe:
                    pending.append(pair)
    return frozenset(frozenset(c) for c in cls.values())


def bounded_ideal_partition(q: QuotientMonoid, bound: int) -> frozenset:
    universe = q.base.sample_elements(bound)
    zero_class = {ZERO}
    singles = []
    for x in universe:
        if x.is_zero:
            continue
        if q.is_killed(x):
            zero_class.add(x)
        else:
            singles.append(frozenset([x]))
    return frozenset([frozenset(zero_class)] + singles)


# ---------------------------------------------------------------------------
# dihomotopy oracle: seed-and-sweep closure in reversed orders


def dihomotopy_partition_sweep(space: Space, a, b, bound: int = 6) -> frozenset:
    """Components of the path set under allowed swaps, computed by repeated
    breadth-first sweeps seeded in reversed enumeration order, applying swap
    positions right-to-left."""
    if isinstance(space, GridSpace):
        paths = space.paths_between(a, b)
    else:
        paths = space.paths_between(a, b, bound)
        return frozenset(frozenset([p]) for p in paths)
    unassigned = list(reversed(paths))
    assigned = set()
    groups = []
    for seed in unassigned:
        if seed in assigned:
            continue
        group = {seed}
        queue = [seed]
        while queue:
            p = queue.pop(0)
            for i in reversed(space.allowed_swaps(p)):
                q = space.swapped(p, i)
                if q not in group:
                    group.add(q)
                    queue.append(q)
        assigned |= group
        groups.append(frozenset(group))
    return frozenset(groups)


def partition_of_classes(classes) -> frozenset:
    """Canonical partition shape of a dihomotopy class list."""
    return frozenset(frozenset(c.members) for c in classes)


# ---------------------------------------------------------------------------
# transition systems: stepwise fold of the transition relation


def fold_word_action(ts: TransitionSystem, word: MonElement, state):
    """Apply a word to a state one letter at a time, rightmost letter first."""
    if word.is_zero:
        return None
    if word.is_one:
        return state
    step = ts.step
    current = state
    for letter in reversed(word.word):
        if current is None:
            return None
        current = step.get((current, letter))
    return current


# ---------------------------------------------------------------------------
# algebra expansion by repeated single-term distribution


def algebra_multiply_distributive(x, y, t: AbsMonoid):
    """Expand (sum r_i t_i)(sum s_j u_j) term pair by term pair via addition."""
    from .modules import ALGEBRA_ZERO, MonoidAlgebraElement, algebra_add

    acc = ALGEBRA_ZERO
    for e1, c1 in x.terms:
        for e2, c2 in y.terms:
            p = t.mul(e1, e2)
            single = MonoidAlgebraElement.from_terms([(p, c1 * c2)])
            acc = algebra_add(acc, single)
    return acc
