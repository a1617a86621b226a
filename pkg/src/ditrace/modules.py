"""Modules over absorption monoids, with pointed-set or pointed-monoid carriers.

A left module is a carrier plus an evaluable action ``act(t, x)``; the module
laws are never assumed, they are what :func:`check_module_axioms` verifies.
Right modules and bimodules reuse the left-module engine through the
opposite-monoid trick.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import (
    DitraceError,
    ForeignElementError,
    NondeterminismError,
    NotASubmoduleError,
    ScalarsNotFreeError,
)
from .monoid import (
    ONE,
    WORD_BOUND_DEFAULT,
    ZERO,
    AbsMonoid,
    AxiomReport,
    FreeMonoid,
    MonElement,
    MonoidMorphism,
    OppositeMonoid,
    QuotientMonoid,
    SubMonoid,
    Violation,
    _sorted_violations,
    coproduct,
    element_key,
    product,
    word_element,
)
from .pointed import STAR, PointedSet


class LazyCarrier:
    """Pointed carrier that is only enumerable up to a bound.

    `contains` may be None when membership is not cheaply decidable; checkers
    then trust the sample.
    """

    def __init__(self, basepoint, sample: Callable[[int], list], contains=None):
        self.basepoint = basepoint
        self._sample = sample
        self._contains = contains

    def sample(self, bound: int) -> list:
        return self._sample(bound)

    def __contains__(self, x):
        if self._contains is None:
            return True
        return self._contains(x)


def _carrier_sample(carrier, bound):
    if isinstance(carrier, PointedSet):
        return list(carrier.elements)
    if isinstance(carrier, AbsMonoid):
        return carrier.sample_elements(bound)
    return carrier.sample(bound)


def _carrier_basepoint(carrier):
    if isinstance(carrier, PointedSet):
        return carrier.basepoint
    if isinstance(carrier, AbsMonoid):
        return ZERO
    return carrier.basepoint


class LeftModuleSet:
    """Pointed set with a left action of an absorption monoid."""

    carrier_kind = "set"
    side = "left"

    def __init__(self, scalars: AbsMonoid, carrier, action: Callable, label: str = ""):
        self.scalars = scalars
        self.carrier = carrier
        self._action = action
        self.label = label or "module"

    def __repr__(self):
        return f"{self.label} over {self.scalars.describe()}"

    @property
    def basepoint(self):
        return _carrier_basepoint(self.carrier)

    def act(self, t: MonElement, x):
        self.scalars.require(t)
        return self._action(t, x)

    def carrier_sample(self, bound: int = WORD_BOUND_DEFAULT) -> list:
        return _carrier_sample(self.carrier, bound)

    def scalar_sample(self, bound: int = WORD_BOUND_DEFAULT, limit=None) -> list:
        return self.scalars.sample_elements(bound, limit=limit)


class LeftModuleMon(LeftModuleSet):
    """Absorption monoid with a left action of another absorption monoid."""

    carrier_kind = "mon"

    def __init__(self, scalars: AbsMonoid, carrier: AbsMonoid, action: Callable, label: str = ""):
        if not isinstance(carrier, AbsMonoid):
            raise DitraceError("Mon-star module carrier must be an absorption monoid")
        super().__init__(scalars, carrier, action, label)


class RightModuleSet:
    """Right action adapter: stores the left module over the opposite monoid."""

    carrier_kind = "set"
    side = "right"

    def __init__(self, scalars: AbsMonoid, carrier, action: Callable, label: str = ""):
        self.scalars = scalars
        self.carrier = carrier
        self._mirror = LeftModuleSet(OppositeMonoid(scalars), carrier,
                                     lambda t, x: action(x, t), label)
        self.label = label or "right module"

    @property
    def basepoint(self):
        return _carrier_basepoint(self.carrier)

    def act(self, x, t: MonElement):
        return self._mirror.act(t, x)

    def as_left(self) -> LeftModuleSet:
        return self._mirror


class Bimodule:
    """Simultaneous left and right actions; compatibility is checked, not assumed."""

    def __init__(self, scalars: AbsMonoid, carrier, act_left: Callable,
                 act_right: Callable, carrier_kind: str = "set", label: str = ""):
        self.scalars = scalars
        self.carrier = carrier
        self.carrier_kind = carrier_kind
        self._act_left = act_left
        self._act_right = act_right
        self.label = label or "bimodule"
        cls = LeftModuleMon if carrier_kind == "mon" else LeftModuleSet
        self.left_view = cls(scalars, carrier, act_left, label + " (left)")
        self.right_view = cls(OppositeMonoid(scalars), carrier,
                              lambda t, x: act_right(x, t), label + " (right)")

    def __repr__(self):
        return f"{self.label} over {self.scalars.describe()}"

    @property
    def basepoint(self):
        return _carrier_basepoint(self.carrier)

    def act_left(self, t, x):
        return self._act_left(t, x)

    def act_right(self, x, t):
        return self._act_right(x, t)

    def carrier_sample(self, bound: int = WORD_BOUND_DEFAULT) -> list:
        return _carrier_sample(self.carrier, bound)

    def scalar_sample(self, bound: int = WORD_BOUND_DEFAULT, limit=None) -> list:
        return self.scalars.sample_elements(bound, limit=limit)


def check_module_axioms(mod, bound: int = WORD_BOUND_DEFAULT,
                        scalar_sample: Sequence | None = None,
                        carrier_sample: Sequence | None = None,
                        scalar_limit: int | None = 16,
                        carrier_limit: int | None = 16) -> AxiomReport:
    """Check the module laws on (a sample of) scalars and carrier elements.

    Finite structures with no explicit sample are checked exhaustively; the
    note says which. Bimodules are checked on both sides plus compatibility.
    """
    if isinstance(mod, RightModuleSet):
        return check_module_axioms(mod.as_left(), bound, scalar_sample,
                                   carrier_sample, scalar_limit, carrier_limit)
    if isinstance(mod, Bimodule):
        return _check_bimodule(mod, bound, scalar_sample, carrier_sample,
                               scalar_limit, carrier_limit)

    exhaustive = mod.scalars.is_finite and isinstance(mod.carrier, (PointedSet, AbsMonoid)) \
        and (not isinstance(mod.carrier, AbsMonoid) or mod.carrier.is_finite) \
        and scalar_sample is None and carrier_sample is None
    if scalar_sample is None:
        scalar_sample = mod.scalar_sample(bound, limit=None if mod.scalars.is_finite else scalar_limit)
    if carrier_sample is None:
        carrier_sample = mod.carrier_sample(bound)
        if not exhaustive and carrier_limit is not None:
            carrier_sample = carrier_sample[:carrier_limit]

    star = mod.basepoint
    bad = []
    checked = 0
    for x in carrier_sample:
        checked += 2
        if mod.act(ONE, x) != x:
            bad.append(Violation("unit", (repr(x),), "1*x != x"))
        if mod.act(ZERO, x) != star:
            bad.append(Violation("zero-scalar", (repr(x),), "0*x != basepoint"))
    for t in scalar_sample:
        checked += 1
        if mod.act(t, star) != star:
            bad.append(Violation("zero-carrier", (repr(t),), "t*basepoint != basepoint"))
    for t in scalar_sample:
        for u in scalar_sample:
            tu = mod.scalars.mul(t, u)
            for x in carrier_sample:
                checked += 1
                if mod.act(tu, x) != mod.act(t, mod.act(u, x)):
                    bad.append(Violation("action-associativity",
                                         (repr(t), repr(u), repr(x)),
                                         "(t*u)*x != t*(u*x)"))
    if mod.carrier_kind == "mon":
        car = mod.carrier
        for t in scalar_sample:
            for x in carrier_sample:
                tx = mod.act(t, x)
                for y in carrier_sample:
                    checked += 1
                    if mod.act(t, car.mul(x, y)) != car.mul(tx, mod.act(t, y)):
                        bad.append(Violation("distributes-over-product",
                                             (repr(t), repr(x), repr(y)),
                                             "t*(x y) != (t*x)(t*y)"))
    note = "exhaustive" if exhaustive else \
        f"sample: {len(scalar_sample)} scalars x {len(carrier_sample)} carrier elements"
    return AxiomReport(repr(mod), _sorted_violations(bad), checked, note)


def _check_bimodule(mod, bound, scalar_sample, carrier_sample, scalar_limit, carrier_limit):
    left = check_module_axioms(mod.left_view, bound, scalar_sample, carrier_sample,
                               scalar_limit, carrier_limit)
    rsample = scalar_sample
    right = check_module_axioms(mod.right_view, bound, rsample, carrier_sample,
                                scalar_limit, carrier_limit)
    if scalar_sample is None:
        scalar_sample = mod.scalars.sample_elements(
            bound, limit=None if mod.scalars.is_finite else scalar_limit)
    if carrier_sample is None:
        carrier_sample = _carrier_sample(mod.carrier, bound)
        if carrier_limit is not None and not isinstance(mod.carrier, PointedSet):
            carrier_sample = carrier_sample[:carrier_limit]
    bad = list(left.violations) + list(right.violations)
    checked = left.checked + right.checked
    for t in scalar_sample:
        for x in carrier_sample:
            tx = mod.act_left(t, x)
            for u in scalar_sample:
                checked += 1
                if mod.act_right(tx, u) != mod.act_left(t, mod.act_right(x, u)):
                    bad.append(Violation("bimodule-compatibility",
                                         (repr(t), repr(x), repr(u)),
                                         "(t*x)*u != t*(x*u)"))
    return AxiomReport(repr(mod), _sorted_violations(bad), checked,
                       f"both sides; {left.note}")


# ---------------------------------------------------------------------------
# module morphisms


@dataclass
class ModuleMorphism:
    """A pair (carrier map, scalar morphism) intended to satisfy f(t*x) = h(t)*f(x)."""

    source: object
    target: object
    f: Callable
    h: MonoidMorphism
    label: str = "module morphism"

    def apply(self, x):
        return self.f(x)

    def __call__(self, x):
        return self.f(x)


def check_module_morphism(m: ModuleMorphism, bound: int = WORD_BOUND_DEFAULT,
                          scalar_sample=None, carrier_sample=None,
                          scalar_limit: int | None = 16,
                          carrier_limit: int | None = 64) -> AxiomReport:
    if scalar_sample is None:
        scalar_sample = m.source.scalar_sample(
            bound, limit=None if m.source.scalars.is_finite else scalar_limit)
    if carrier_sample is None:
        carrier_sample = m.source.carrier_sample(bound)
        if carrier_limit is not None:
            carrier_sample = carrier_sample[:carrier_limit]
    two_sided = isinstance(m.source, Bimodule)
    bad = []
    checked = 1
    if m.f(m.source.basepoint) != m.target.basepoint:
        bad.append(Violation("basepoint", ("*",), "f(*) != *"))
    for t in scalar_sample:
        ht = m.h.apply(t)
        for x in carrier_sample:
            checked += 1
            if two_sided:
                if m.f(m.source.act_left(t, x)) != m.target.act_left(ht, m.f(x)):
                    bad.append(Violation("equivariance-left", (repr(t), repr(x)),
                                         "f(t*x) != h(t)*f(x)"))
                if m.f(m.source.act_right(x, t)) != m.target.act_right(m.f(x), ht):
                    bad.append(Violation("equivariance-right", (repr(t), repr(x)),
                                         "f(x*t) != f(x)*h(t)"))
            elif m.f(m.source.act(t, x)) != m.target.act(ht, m.f(x)):
                bad.append(Violation("equivariance", (repr(t), repr(x)),
                                     "f(t*x) != h(t)*f(x)"))
    if getattr(m.source, "carrier_kind", "set") == "mon":
        src, tgt = m.source.carrier, m.target.carrier
        for x in carrier_sample:
            for y in carrier_sample:
                checked += 1
                if m.f(src.mul(x, y)) != tgt.mul(m.f(x), m.f(y)):
                    bad.append(Violation("multiplicative", (repr(x), repr(y)),
                                         "f(x y) != f(x) f(y)"))
    return AxiomReport(m.label, _sorted_violations(bad), checked, "")


# ---------------------------------------------------------------------------
# regular actions and categorical constructions


def regular_set_module(m: AbsMonoid) -> LeftModuleSet:
    """`m` acting on itself by left multiplication, in pointed sets.

    Left multiplication satisfies the three pointed-set module laws but not
    the product-distribution law of monoid carriers, so the regular action
    only lives on the Set side.
    """
    if not m.is_finite:
        carrier = LazyCarrier(ZERO, m.sample_elements, m.contains)
    else:
        carrier = PointedSet(tuple(m.elements()), ZERO)
    return LeftModuleSet(m, carrier, m.mul, label=f"regular set action of {m.describe()}")


def trivial_module(scalars: AbsMonoid, carrier: AbsMonoid) -> LeftModuleMon:
    """Every nonzero scalar acts as the identity; zero kills.

    Lawful only for scalars without zero divisors: t*t' = 0 with t, t'
    nonzero would have to kill while t and t' separately do nothing.
    """

    def action(t, x):
        carrier.require(x)
        return ZERO if t.is_zero else x

    return LeftModuleMon(scalars, carrier, action,
                         label=f"trivial action on {carrier.describe()}")


def annihilator_module(scalars: AbsMonoid, carrier: AbsMonoid) -> LeftModuleMon:
    """One acts as the identity, every other scalar kills.

    Lawful whenever one admits no factorization through non-units, which
    covers the nilpotent scalars where the trivial action is unlawful.
    """

    def action(t, x):
        carrier.require(x)
        return x if t.is_one else ZERO

    return LeftModuleMon(scalars, carrier, action,
                         label=f"annihilating action on {carrier.describe()}")


def endomorphism_module(scalars: AbsMonoid, carrier: AbsMonoid,
                        endos: dict) -> LeftModuleMon:
    """Monoid-carrier module where each scalar acts by a chosen endomorphism.

    `endos` maps nonzero non-one scalar handles to callables on carrier
    handles; One acts as identity and Zero as the constant-zero map.  Whether
    the assignment satisfies the module laws is up to check_module_axioms.
    """

    def action(t, x):
        carrier.require(x)
        if t.is_zero:
            return ZERO
        if t.is_one:
            return x
        return endos[t](x)

    return LeftModuleMon(scalars, carrier, action,
                         label=f"endomorphism action on {carrier.describe()}")


def module_product(mods: Sequence[LeftModuleSet]) -> LeftModuleSet:
    """Product module: product scalars act componentwise on the product carrier."""
    if not mods:
        raise DitraceError("need at least one module")
    kinds = {m.carrier_kind for m in mods}
    if len(kinds) != 1:
        raise DitraceError("cannot mix set and monoid carriers")
    scalars = product([m.scalars for m in mods])
    return _tuple_module(mods, scalars, kinds.pop(), "product")


def module_coproduct(mods: Sequence[LeftModuleSet]) -> LeftModuleSet:
    """Coproduct module per the finite-support construction (finite index list)."""
    if not mods:
        raise DitraceError("need at least one module")
    kinds = {m.carrier_kind for m in mods}
    if len(kinds) != 1:
        raise DitraceError("cannot mix set and monoid carriers")
    scalars = coproduct([m.scalars for m in mods])
    return _tuple_module(mods, scalars, kinds.pop(), "coproduct")


def _tuple_module(mods, scalars, kind, label):
    if kind == "mon":
        build = product if label == "product" else coproduct
        carrier = build([m.carrier for m in mods])

        def action(t, x):
            ts = scalars.tuple_of(t)
            xs = carrier.tuple_of(x)
            return carrier.from_tuple(tuple(m.act(ti, xi) for m, ti, xi in zip(mods, ts, xs)))

        return LeftModuleMon(scalars, carrier, action, label=f"{label} module")

    base = tuple(m.carrier.elements for m in mods)
    stars = tuple(m.basepoint for m in mods)
    elems = tuple(itertools.product(*base))
    carrier = PointedSet(elems, stars)

    def action(t, x):
        ts = scalars.tuple_of(t)
        return tuple(m.act(ti, xi) for m, ti, xi in zip(mods, ts, x))

    return LeftModuleSet(scalars, carrier, action, label=f"{label} module")


@dataclass(frozen=True)
class SubModule:
    """A pointed subset (or sub-monoid) stable under the scalar action."""

    module: object
    members: frozenset


def sub_module(mod, members: Iterable, bound: int = WORD_BOUND_DEFAULT) -> SubModule:
    members = frozenset(members) | {mod.basepoint}
    for t in mod.scalar_sample(bound, limit=None if mod.scalars.is_finite else 16):
        for n in members:
            if mod.act(t, n) not in members:
                raise NotASubmoduleError(
                    f"not action-stable: {t!r} * {n!r} leaves the subset")
    return SubModule(mod, members)


def module_quotient(mod, sub: SubModule | Iterable, bound: int = WORD_BOUND_DEFAULT):
    """Collapse an action-stable subset to the basepoint.

    For monoid carriers the subset must be a sub-monoid; the carrier becomes
    the corresponding quotient monoid and the action descends to classes.
    """
    if not isinstance(sub, SubModule):
        sub = sub_module(mod, sub, bound)
    if sub.module is not mod:
        raise NotASubmoduleError("sub-module belongs to a different module")

    if mod.carrier_kind == "mon":
        killed = SubMonoid.explicit(mod.carrier, sub.members)
        qcar = QuotientMonoid(mod.carrier, killed)

        def action(t, x):
            return qcar.project(mod.act(t, x))

        return LeftModuleMon(mod.scalars, qcar, action, label=f"quotient of {mod.label}")

    members = sub.members
    star = mod.basepoint
    keep = tuple(x for x in mod.carrier.elements if x == star or x not in members)
    carrier = PointedSet(keep, star)

    def action(t, x):
        y = mod.act(t, x)
        return star if y in members else y

    return LeftModuleSet(mod.scalars, carrier, action, label=f"quotient of {mod.label}")


# ---------------------------------------------------------------------------
# transition systems


@dataclass(frozen=True)
class TransitionSystem:
    states: tuple
    alphabet: tuple
    transitions: tuple  # tuple of (state, letter, state), deterministic

    def __post_init__(self):
        seen = {}
        for s, a, s2 in self.transitions:
            if s not in self.states or s2 not in self.states:
                raise DitraceError(f"transition {s}-{a}->{s2} uses unknown state")
            if a not in self.alphabet:
                raise DitraceError(f"transition {s}-{a}->{s2} uses unknown letter")
            if (s, a) in seen and seen[(s, a)] != s2:
                raise NondeterminismError(
                    f"two successors for ({s}, {a}): {seen[(s, a)]} and {s2}")
            seen[(s, a)] = s2

    @property
    def step(self) -> dict:
        return {(s, a): s2 for s, a, s2 in self.transitions}


def module_from_transition_system(ts: TransitionSystem) -> LeftModuleSet:
    """States plus a fresh basepoint, acted on by the free monoid on the alphabet.

    A word acts by applying its letters rightmost first, which is what the
    action associativity law forces; missing transitions fall to the basepoint.
    """
    scalars = FreeMonoid(tuple(ts.alphabet))
    carrier = PointedSet((STAR,) + tuple(ts.states), STAR)
    step = ts.step

    def action(t: MonElement, s):
        if s not in carrier:
            raise ForeignElementError(f"{s!r} is not a state")
        if t.is_zero:
            return STAR
        if t.is_one:
            return s
        for letter in reversed(t.word):
            if s is STAR:
                return STAR
            s = step.get((s, letter), STAR)
        return s

    return LeftModuleSet(scalars, carrier, action, label="transition-system module")


def transition_system_from_module(mod: LeftModuleSet) -> TransitionSystem:
    """Inverse of `module_from_transition_system` for free scalar monoids."""
    if not isinstance(mod.scalars, FreeMonoid):
        raise ScalarsNotFreeError("module scalars are not a free absorption monoid")
    states = tuple(s for s in mod.carrier.elements if s != mod.basepoint)
    trans = []
    for s in states:
        for letter in mod.scalars.letters:
            s2 = mod.act(word_element(letter), s)
            if s2 != mod.basepoint:
                trans.append((s, letter, s2))
    return TransitionSystem(states, tuple(mod.scalars.letters), tuple(trans))


# ---------------------------------------------------------------------------
# monoid algebra (integer coefficients, contracted at the monoid zero)


@dataclass(frozen=True)
class MonoidAlgebraElement:
    """Formal integer combination of nonzero monoid elements."""

    terms: tuple  # tuple of (MonElement, int), canonically sorted, no zeros

    @staticmethod
    def from_terms(pairs: Iterable) -> "MonoidAlgebraElement":
        acc = {}
        for elt, coeff in pairs:
            if elt.is_zero or coeff == 0:
                continue  # the monoid zero is identified with the algebra zero
            acc[elt] = acc.get(elt, 0) + coeff
        terms = tuple(sorted(((e, c) for e, c in acc.items() if c != 0),
                             key=lambda ec: element_key(ec[0])))
        return MonoidAlgebraElement(terms)

    def coefficient(self, elt: MonElement) -> int:
        for e, c in self.terms:
            if e == elt:
                return c
        return 0

    @property
    def is_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "<0>"
        return " + ".join(f"{c}.{e!r}" for e, c in self.terms)


ALGEBRA_ZERO = MonoidAlgebraElement(())


def algebra_add(x: MonoidAlgebraElement, y: MonoidAlgebraElement) -> MonoidAlgebraElement:
    return MonoidAlgebraElement.from_terms(list(x.terms) + list(y.terms))


def algebra_scale(r: int, x: MonoidAlgebraElement) -> MonoidAlgebraElement:
    return MonoidAlgebraElement.from_terms((e, r * c) for e, c in x.terms)


def algebra_multiply(x: MonoidAlgebraElement, y: MonoidAlgebraElement,
                     t: AbsMonoid) -> MonoidAlgebraElement:
    """Bilinear extension of the monoid product; products hitting 0 vanish."""
    pairs = []
    for e1, c1 in x.terms:
        for e2, c2 in y.terms:
            p = t.mul(e1, e2)
            if not p.is_zero:
                pairs.append((p, c1 * c2))
    return MonoidAlgebraElement.from_terms(pairs)
