"""Change-of-coefficients functors along a morphism of absorption monoids.

Given l: T -> T', a module over T' restricts to one over T, and a module over
T extends (or co-extends) to one over T'.  Extension classes are pairs
(t', x) glued by the balanced relation (t' * l(t), x) ~ (t', t * x); for
monoid carriers a word layer with merge rules sits on top.  The two
adjunction checkers enumerate both Hom sets exhaustively on finite instances
and verify that the canonical transforms are mutually inverse.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    DitraceError,
    InfiniteInputError,
    NormalizationBudgetError,
    ScalarMismatchError,
)
from .monoid import (
    ONE,
    WORD_TAG,
    ZERO,
    AbsMonoid,
    MonElement,
    MonoidMorphism,
    check_morphism,
)
from .modules import (
    Bimodule,
    LeftModuleMon,
    LeftModuleSet,
    ModuleMorphism,
    RightModuleSet,
)
from .pointed import PointedSet
from .unionfind import UnionFind

REWRITE_BUDGET_DEFAULT = 10_000


@dataclass(frozen=True)
class ScalarChange:
    """A validated morphism of absorption monoids used to move coefficients."""

    l: MonoidMorphism

    def __post_init__(self):
        report = check_morphism(self.l)
        if not report.ok:
            raise DitraceError(f"not a morphism of absorption monoids:\n{report}")

    @property
    def source(self):
        return self.l.source

    @property
    def target(self):
        return self.l.target

    def apply(self, x):
        return self.l.apply(x)


def _as_change(l) -> ScalarChange:
    return l if isinstance(l, ScalarChange) else ScalarChange(l)


# ---------------------------------------------------------------------------
# restriction


def restrict(l, mod):
    """Same carrier, action pulled back through l; works for all module flavours."""
    l = _as_change(l)
    if isinstance(mod, Bimodule):
        if mod.scalars != l.target:
            raise ScalarMismatchError("module scalars do not match the morphism target")
        return Bimodule(l.source, mod.carrier,
                        lambda t, x: mod.act_left(l.apply(t), x),
                        lambda x, t: mod.act_right(x, l.apply(t)),
                        carrier_kind=mod.carrier_kind,
                        label=f"restriction of {mod.label}")
    if isinstance(mod, RightModuleSet):
        if mod.scalars != l.target:
            raise ScalarMismatchError("module scalars do not match the morphism target")
        return RightModuleSet(l.source, mod.carrier,
                              lambda x, t: mod.act(x, l.apply(t)),
                              label=f"restriction of {mod.label}")
    if mod.scalars != l.target:
        raise ScalarMismatchError("module scalars do not match the morphism target")
    cls = LeftModuleMon if mod.carrier_kind == "mon" else LeftModuleSet
    return cls(l.source, mod.carrier, lambda t, x: mod.act(l.apply(t), x),
               label=f"restriction of {mod.label}")


def restrict_morphism(l, f: ModuleMorphism, src, tgt) -> ModuleMorphism:
    """Restriction acts as the identity on carrier maps."""
    l = _as_change(l)
    return ModuleMorphism(src, tgt, f.f, l.l, label=f"restricted {f.label}")


# ---------------------------------------------------------------------------
# extension classes (shared by the set and monoid variants)


@dataclass(frozen=True)
class ExtensionClass:
    """One orbit of pairs (t', x) under the balanced-relation moves."""

    orbit: frozenset
    rep: tuple  # lexicographically least pair by (t' index, x index)

    def __repr__(self):
        return f"<{self.rep[0]!r}|{self.rep[1]!r}>"


_ZERO_NODE = ("zero-node",)


def _extension_orbits(l: ScalarChange, scalars_sample, carrier_sample, act,
                      tp_index, x_index, one_collapse: bool):
    """Union-find closure of pairs under (t'*l(t), x) ~ (t', t*x).

    Returns (pair -> value) where value is an ExtensionClass, ZERO for
    zero-tainted orbits, or ONE for orbits touching a carrier unit (monoid
    carriers only).  The pair domain excludes zero first components and the
    carrier basepoint/zero.
    """
    tp = l.target
    domain = [(s, x) for s in tp_index for x in x_index]
    uf = UnionFind()
    uf.find(_ZERO_NODE)

    def node(s, x):
        if s.is_zero or _is_base(x):
            return _ZERO_NODE
        return (s, x)

    for (s, x) in domain:
        uf.find((s, x))
        for t in scalars_sample:
            a = node(tp.mul(s, l.apply(t)), x)
            b = node(s, act(t, x))
            if a == _ZERO_NODE and b == _ZERO_NODE:
                continue
            uf.union(a, b)

    tp_rank = {s: i for i, s in enumerate(tp_index)}
    x_rank = {x: i for i, x in enumerate(x_index)}
    member_lists = {}
    for (s, x) in domain:
        member_lists.setdefault(uf.find((s, x)), []).append((s, x))
    zero_root = uf.find(_ZERO_NODE)

    values = {}
    for root, members in member_lists.items():
        if root == zero_root:
            for p in members:
                values[p] = ZERO
            continue
        if one_collapse and any(x.is_one for (_, x) in members):
            for p in members:
                values[p] = ONE
            continue
        members.sort(key=lambda p: (tp_rank[p[0]], x_rank[p[1]]))
        cls = ExtensionClass(frozenset(members), members[0])
        for p in members:
            values[p] = cls
    return values


def _is_base(x):
    return isinstance(x, MonElement) and x.is_zero


def _require_finite(*monoids):
    for m in monoids:
        if not m.is_finite:
            raise InfiniteInputError(f"{m.describe()} must be finite here")


# ---------------------------------------------------------------------------
# extension of scalars, pointed-set carriers


class SetExtension(LeftModuleSet):
    """Pointed-set extension: classes <t', s> with action s'' * <t', s> = <s'' t', s>."""

    def __init__(self, l: ScalarChange, mod: LeftModuleSet):
        _require_finite(l.source, l.target)
        if mod.scalars != l.source:
            raise ScalarMismatchError("module scalars do not match the morphism source")
        if not isinstance(mod.carrier, PointedSet):
            raise InfiniteInputError("set extension needs a finite pointed carrier")
        self.change = l
        self.base = mod
        star = mod.basepoint
        tp_index = [s for s in l.target.elements() if not s.is_zero]
        x_index = [x for x in mod.carrier.elements if x != star]

        def act_base(t, x):
            y = mod.act(t, x)
            return ZERO if y == star else y

        values = _extension_orbits(l, l.source.elements(), x_index, act_base,
                                   tp_index, x_index, one_collapse=False)
        self.pair_value = values
        classes = []
        seen = set()
        for (s, x) in sorted(values, key=lambda p: (tp_index.index(p[0]),
                                                    x_index.index(p[1]))):
            v = values[(s, x)]
            if isinstance(v, ExtensionClass) and v not in seen:
                seen.add(v)
                classes.append(v)
        self.classes = classes
        carrier = PointedSet((star,) + tuple(classes), star)
        tp = l.target

        def action(sp: MonElement, c):
            if c == star or sp.is_zero:
                return star
            if sp.is_one:
                return c
            t2 = tp.mul(sp, c.rep[0])
            if t2.is_zero:
                return star
            v = self.pair_value[(t2, c.rep[1])]
            return star if v is ZERO else v

        super().__init__(tp, carrier, action, label=f"set extension of {mod.label}")

    def class_of_pair(self, tp_elt: MonElement, s):
        """Value of the pair (t', s): a class or the basepoint."""
        if tp_elt.is_zero or s == self.base.basepoint:
            return self.basepoint
        v = self.pair_value[(tp_elt, s)]
        return self.basepoint if v is ZERO else v


def extend_set(l, mod: LeftModuleSet) -> SetExtension:
    return SetExtension(_as_change(l), mod)


def extend_set_morphism(l, f_carrier, src_ext: SetExtension,
                        tgt_ext: SetExtension) -> ModuleMorphism:
    """Functorial action on a morphism of T-modules: <t', s> -> <t', f(s)>."""
    star = src_ext.basepoint

    def on_class(c):
        if c == star:
            return tgt_ext.basepoint
        t, s = c.rep
        return tgt_ext.class_of_pair(t, f_carrier(s))

    from .monoid import identity_morphism
    return ModuleMorphism(src_ext, tgt_ext, on_class,
                          identity_morphism(src_ext.scalars),
                          label="extended morphism")


# ---------------------------------------------------------------------------
# extension of scalars, monoid carriers (the word layer)


class MonExtension(AbsMonoid):
    """Words of extension classes modulo the collapse and merge rules.

    Normalization explores every applicable merge (breadth-first, deduplicated
    by resulting word) and returns the least irreducible word reached; the
    rewrite budget bounds the search and raises when exhausted.
    """

    def __init__(self, l: ScalarChange, mod: LeftModuleMon,
                 budget: int = REWRITE_BUDGET_DEFAULT):
        _require_finite(l.source, l.target, mod.carrier)
        if mod.scalars != l.source:
            raise ScalarMismatchError("module scalars do not match the morphism source")
        self.change = l
        self.base = mod
        self.budget = budget
        tp_index = [s for s in l.target.elements() if not s.is_zero]
        x_index = [x for x in mod.carrier.elements() if not x.is_zero]
        self._tp_index = {s: i for i, s in enumerate(tp_index)}
        self._x_index = {x: i for i, x in enumerate(x_index)}
        self.pair_value = _extension_orbits(
            l, l.source.elements(), x_index, mod.act,
            tp_index, x_index, one_collapse=True)
        # a zero-tainted (t', 1) pair forces 1 = 0: the whole extension collapses
        car_one = mod.carrier.one
        self.unit_collapsed = any(
            self.pair_value[(s, car_one)] is ZERO for s in tp_index
            if (s, car_one) in self.pair_value)
        if self.unit_collapsed:
            self.pair_value = {p: ZERO for p in self.pair_value}
        letters = []
        seen = set()
        for p in sorted(self.pair_value, key=self._pair_key):
            v = self.pair_value[p]
            if isinstance(v, ExtensionClass) and v not in seen:
                seen.add(v)
                letters.append(v)
        self.letters = letters

    def _pair_key(self, p):
        return (self._tp_index[p[0]], self._x_index[p[1]])

    def describe(self):
        return f"scalar extension of {self.base.label}"

    @property
    def one(self):
        return ZERO if self.unit_collapsed else ONE

    def letter_value(self, tp_elt: MonElement, x: MonElement):
        """ZERO, ONE, or the ExtensionClass of the pair (t', x).

        Pairs with a unit carrier component go through the orbit table too:
        they may be zero-tainted rather than One.
        """
        if tp_elt.is_zero or x.is_zero:
            return ZERO
        return self.pair_value[(tp_elt, x)]

    def word_of(self, values) -> MonElement:
        """Assemble letter values into a normalized element handle."""
        if self.unit_collapsed:
            return ZERO
        letters = []
        for v in values:
            if v is ZERO:
                return ZERO
            if v is ONE:
                continue
            letters.append(v)
        if not letters:
            return ONE
        return self._normalize(tuple(letters))

    def _letter_key(self, c: ExtensionClass):
        return self._pair_key(c.rep)

    def _word_key(self, w):
        return (len(w), tuple(self._letter_key(c) for c in w))

    def _merge_results(self, c1: ExtensionClass, c2: ExtensionClass):
        """Distinct values reachable by one shared-t' merge of adjacent letters."""
        car = self.base.carrier
        by_tp1 = {}
        for (s, m) in c1.orbit:
            by_tp1.setdefault(s, []).append(m)
        out = []
        seen = set()
        for (s, m2) in sorted(c2.orbit, key=self._pair_key):
            for m1 in by_tp1.get(s, ()):
                prod = car.mul(m1, m2)
                v = self.letter_value(s, prod)
                key = id(v) if v in (ZERO, ONE) else v
                if key not in seen:
                    seen.add(key)
                    out.append(v)
        return out

    def _rewrites(self, w):
        """All words reachable by one merge step; ZERO means total collapse."""
        for i in range(len(w) - 1):
            for v in self._merge_results(w[i], w[i + 1]):
                if v is ZERO:
                    yield ZERO
                elif v is ONE:
                    yield w[:i] + w[i + 2:]
                else:
                    yield w[:i] + (v,) + w[i + 2:]

    def _normalize(self, w) -> MonElement:
        frontier = {w}
        seen = {w}
        irreducible = set()
        steps = 0
        while frontier:
            nxt = set()
            for word in frontier:
                reduced = False
                for r in self._rewrites(word):
                    steps += 1
                    if steps > self.budget:
                        raise NormalizationBudgetError(
                            f"rewrite budget {self.budget} exhausted on a word "
                            f"of length {len(w)}")
                    reduced = True
                    if r is ZERO:
                        return ZERO
                    if r not in seen:
                        seen.add(r)
                        nxt.add(r)
                if not reduced:
                    irreducible.add(word)
            frontier = nxt
        best = min(irreducible, key=self._word_key)
        if not best:
            return ONE
        return MonElement(WORD_TAG, best)

    def equal_undecided(self, a: MonElement, b: MonElement):
        """Three-valued equality: True/False, or None when the budget runs out."""
        try:
            na = a if a.tag != WORD_TAG else self._normalize(a.word)
            nb = b if b.tag != WORD_TAG else self._normalize(b.word)
        except NormalizationBudgetError:
            return None
        return na == nb

    def saturated_elements(self, max_len: int = 4):
        """The full carrier when words stop producing new normal forms, else None."""
        if not hasattr(self, "_saturated"):
            result = None
            prev = None
            for n in range(1, max_len + 1):
                cur = frozenset(self._bounded_elements(n))
                if prev is not None and cur == prev:
                    result = sorted(cur, key=self._element_key)
                    break
                prev = cur
            self._saturated = result
        return self._saturated

    def _element_key(self, x: MonElement):
        if x.is_zero:
            return (0, ())
        if x.is_one:
            return (1, ())
        return (2, self._word_key(x.word))

    @property
    def is_finite(self):
        return self.saturated_elements() is not None

    def elements(self):
        elems = self.saturated_elements()
        if elems is None:
            raise InfiniteInputError("extension carrier did not saturate")
        return list(elems)

    def contains(self, x):
        if isinstance(x, MonElement) and x.is_one and self.unit_collapsed:
            return False
        return super().contains(x)

    def _contains_word(self, x):
        return not self.unit_collapsed and \
            all(isinstance(c, ExtensionClass) and c in set(self.letters)
                for c in x.word)

    def _mul_words(self, a, b):
        return self._normalize(a.word + b.word)

    def _bounded_elements(self, bound):
        if self.unit_collapsed:
            return [ZERO]
        out = [ZERO, ONE]
        seen = {ZERO, ONE}
        for n in range(1, bound + 1):
            for combo in itertools.product(self.letters, repeat=n):
                w = self.word_of(combo)
                if w not in seen:
                    seen.add(w)
                    out.append(w)
        return out


class MonExtensionModule(LeftModuleMon):
    """The extension monoid with the letterwise action of the new scalars."""

    def __init__(self, l: ScalarChange, mod: LeftModuleMon,
                 budget: int = REWRITE_BUDGET_DEFAULT):
        monoid = MonExtension(l, mod, budget)
        self.extension = monoid
        tp = l.target
        car_one = mod.carrier.one

        def action(sp: MonElement, x: MonElement):
            if sp.is_zero or x.is_zero:
                return ZERO
            if sp.is_one:
                return x
            if x.is_one:
                # One is the class of (1, 1); acting may collapse it
                return monoid.word_of([monoid.letter_value(sp, car_one)])
            values = []
            for c in x.word:
                t2 = tp.mul(sp, c.rep[0])
                values.append(monoid.letter_value(t2, c.rep[1]))
            return monoid.word_of(values)

        super().__init__(tp, monoid, action, label=f"extension of {mod.label}")


def extend_mon(l, mod: LeftModuleMon, budget: int = REWRITE_BUDGET_DEFAULT) -> MonExtensionModule:
    return MonExtensionModule(_as_change(l), mod, budget)


# ---------------------------------------------------------------------------
# co-extension of scalars


@dataclass(frozen=True)
class CoextensionElement:
    """A total map from the new scalars to the carrier, stored as sorted pairs."""

    assignments: tuple

    @cached_property
    def _lookup(self):
        return dict(self.assignments)

    def apply(self, tp_elt):
        return self._lookup[tp_elt]

    def __call__(self, tp_elt):
        return self.apply(tp_elt)

    def __repr__(self):
        return "{" + ", ".join(f"{k!r}:{v!r}" for k, v in self.assignments) + "}"


def _coextension_maps_set(l: ScalarChange, mod: LeftModuleSet):
    """All pointed maps g: T' -> S with g(l(t) t') = t * g(t')."""
    tp = l.target
    t_elems = l.source.elements()
    tp_elems = tp.elements()
    star = mod.basepoint
    slots = [s for s in tp_elems if not s.is_zero]
    out = []
    for choice in itertools.product(mod.carrier.elements, repeat=len(slots)):
        g = {ZERO: star}
        g.update(dict(zip(slots, choice)))
        if all(g[tp.mul(l.apply(t), s)] == _act_star(mod, t, g[s], star)
               for t in t_elems for s in tp_elems):
            out.append(CoextensionElement(
                tuple(sorted(g.items(), key=lambda kv: tp_elems.index(kv[0])))))
    return out


def _act_star(mod, t, x, star):
    if x == star:
        return star
    return mod.act(t, x)


class SetCoextension(LeftModuleSet):
    """Carrier of action-compatible maps T' -> S, acted on by argument shift."""

    def __init__(self, l: ScalarChange, mod: LeftModuleSet):
        _require_finite(l.source, l.target)
        if mod.scalars != l.source:
            raise ScalarMismatchError("module scalars do not match the morphism source")
        if not isinstance(mod.carrier, PointedSet):
            raise InfiniteInputError("set co-extension needs a finite pointed carrier")
        self.change = l
        self.base = mod
        maps = _coextension_maps_set(l, mod)
        star_map = CoextensionElement(tuple(sorted(
            ((s, mod.basepoint) for s in l.target.elements()),
            key=lambda kv: l.target.elements().index(kv[0]))))
        if star_map not in maps:
            raise DitraceError("constant-basepoint map unexpectedly invalid")
        carrier = PointedSet(tuple(maps), star_map)
        tp = l.target
        tp_elems = tp.elements()

        def action(t2: MonElement, g):
            pairs = tuple(sorted(((s, g.apply(tp.mul(s, t2))) for s in tp_elems),
                                 key=lambda kv: tp_elems.index(kv[0])))
            return CoextensionElement(pairs)

        super().__init__(tp, carrier, action, label=f"set co-extension of {mod.label}")


def coextend_set(l, mod: LeftModuleSet) -> SetCoextension:
    return SetCoextension(_as_change(l), mod)


def _coextension_maps_mon(l: ScalarChange, mod: LeftModuleMon):
    """Maps that are additionally monoid morphisms with g(1) = 1."""
    tp = l.target
    t_elems = l.source.elements()
    tp_elems = tp.elements()
    car = mod.carrier
    slots = [s for s in tp_elems if not (s.is_zero or s.is_one)]
    out = []
    for choice in itertools.product(car.elements(), repeat=len(slots)):
        g = {ZERO: ZERO, ONE: car.one}
        g.update(dict(zip(slots, choice)))
        if not all(g[tp.mul(a, b)] == car.mul(g[a], g[b])
                   for a in tp_elems for b in tp_elems):
            continue
        if all(g[tp.mul(l.apply(t), s)] == mod.act(t, g[s])
               for t in t_elems for s in tp_elems):
            out.append(CoextensionElement(
                tuple(sorted(g.items(), key=lambda kv: tp_elems.index(kv[0])))))
    return out


class CoextensionMonoid(AbsMonoid):
    """The found maps under componentwise product.

    The construction does not guarantee an absorption monoid for every
    instance; unit and absorber are searched for and their absence raises.
    """

    def __init__(self, l: ScalarChange, mod: LeftModuleMon):
        self.change = l
        self.base = mod
        self.maps = _coextension_maps_mon(l, mod)
        if not self.maps:
            raise DitraceError("co-extension carrier is empty")
        self._tp_elems = l.target.elements()
        unit = [u for u in self.maps
                if all(self._pointwise(u, g) == g == self._pointwise(g, u)
                       for g in self.maps)]
        zero = [z for z in self.maps
                if all(self._pointwise(z, g) == z == self._pointwise(g, z)
                       for g in self.maps)]
        if not unit or not zero:
            raise DitraceError(
                "co-extension maps do not form an absorption monoid here")
        self.unit_map = unit[0]
        self.zero_map = zero[0]

    is_finite = True

    def describe(self):
        return f"co-extension monoid of {self.base.label}"

    def _pointwise(self, g1, g2):
        car = self.base.carrier
        pairs = tuple(sorted(
            ((s, car.mul(g1.apply(s), g2.apply(s))) for s in self._tp_elems),
            key=lambda kv: self._tp_elems.index(kv[0])))
        return CoextensionElement(pairs)

    @property
    def one(self):
        return ZERO if self.unit_map == self.zero_map else ONE

    def handle_of(self, g: CoextensionElement) -> MonElement:
        if g == self.zero_map:
            return ZERO
        if g == self.unit_map:
            return ONE
        return MonElement(WORD_TAG, (g,))

    def map_of(self, x: MonElement) -> CoextensionElement:
        if x.is_zero:
            return self.zero_map
        if x.is_one:
            return self.unit_map
        return x.word[0]

    def elements(self):
        return [self.handle_of(g) for g in self.maps]

    def _contains_word(self, x):
        return len(x.word) == 1 and x.word[0] in self.maps \
            and x.word[0] not in (self.zero_map, self.unit_map)

    def _mul_words(self, a, b):
        return self.handle_of(self._pointwise(self.map_of(a), self.map_of(b)))


class MonCoextension(LeftModuleMon):
    def __init__(self, l: ScalarChange, mod: LeftModuleMon):
        _require_finite(l.source, l.target, mod.carrier)
        if mod.scalars != l.source:
            raise ScalarMismatchError("module scalars do not match the morphism source")
        self.change = l
        self.base = mod
        monoid = CoextensionMonoid(l, mod)
        self.maps_monoid = monoid
        tp = l.target
        tp_elems = tp.elements()

        def action(t2: MonElement, x: MonElement):
            if t2.is_zero or x.is_zero:
                return ZERO
            g = monoid.map_of(x)
            pairs = tuple(sorted(((s, g.apply(tp.mul(s, t2))) for s in tp_elems),
                                 key=lambda kv: tp_elems.index(kv[0])))
            return monoid.handle_of(CoextensionElement(pairs))

        super().__init__(tp, monoid, action, label=f"co-extension of {mod.label}")


def coextend_mon(l, mod: LeftModuleMon) -> MonCoextension:
    return MonCoextension(_as_change(l), mod)


def coextend(l, mod):
    """Dispatch on the carrier kind."""
    if mod.carrier_kind == "mon":
        return coextend_mon(l, mod)
    return coextend_set(l, mod)


# ---------------------------------------------------------------------------
# Hom-set enumeration (finite pointed-set modules over shared scalars)


def set_module_homs(src: LeftModuleSet, tgt: LeftModuleSet) -> list:
    """Every basepoint- and action-preserving map, as sorted assignment tuples."""
    if src.scalars != tgt.scalars:
        raise ScalarMismatchError("hom sets need a common scalar monoid")
    scalars = src.scalars.elements()
    s_elems = list(src.carrier.elements)
    others = [s for s in s_elems if s != src.basepoint]
    out = []
    for choice in itertools.product(tgt.carrier.elements, repeat=len(others)):
        f = {src.basepoint: tgt.basepoint}
        f.update(dict(zip(others, choice)))
        if all(f[src.act(t, s)] == tgt.act(t, f[s])
               for t in scalars for s in s_elems):
            out.append(tuple(sorted(f.items(), key=lambda kv: s_elems.index(kv[0]))))
    return out


def apply_hom(hom: tuple, x):
    return dict(hom)[x]


def coextend_set_morphism(l, f_carrier, src_coext: SetCoextension,
                          tgt_coext: SetCoextension) -> ModuleMorphism:
    """Functorial action on a morphism of T-modules: post-compose each map."""
    tp_elems = src_coext.scalars.elements()

    def on_map(g):
        pairs = tuple(sorted(((s, f_carrier(g.apply(s))) for s in tp_elems),
                             key=lambda kv: tp_elems.index(kv[0])))
        return CoextensionElement(pairs)

    from .monoid import identity_morphism
    return ModuleMorphism(src_coext, tgt_coext, on_map,
                          identity_morphism(src_coext.scalars),
                          label="co-extended morphism")


def mon_module_homs(src: LeftModuleMon, tgt: LeftModuleMon) -> list:
    """Equivariant absorption-monoid morphisms between finite monoid carriers."""
    if src.scalars != tgt.scalars:
        raise ScalarMismatchError("hom sets need a common scalar monoid")
    scalars = src.scalars.elements()
    s_car, t_car = src.carrier, tgt.carrier
    s_elems = s_car.elements()
    others = [x for x in s_elems if not (x.is_zero or x == s_car.one)]
    out = []
    for choice in itertools.product(t_car.elements(), repeat=len(others)):
        f = {ZERO: ZERO, s_car.one: t_car.one}
        f.update(dict(zip(others, choice)))
        # collapsed carriers can make zero/one preservation unsatisfiable
        if f[ZERO] != ZERO or f[s_car.one] != t_car.one:
            continue
        if not all(f[s_car.mul(a, b)] == t_car.mul(f[a], f[b])
                   for a in s_elems for b in s_elems):
            continue
        if all(f[src.act(t, x)] == tgt.act(t, f[x])
               for t in scalars for x in s_elems):
            out.append(tuple(sorted(f.items(), key=lambda kv: s_elems.index(kv[0]))))
    return out


# ---------------------------------------------------------------------------
# adjunction checks


@dataclass
class AdjunctionReport:
    side: str
    left_count: int
    right_count: int
    failures: list

    @property
    def ok(self):
        return not self.failures and self.left_count == self.right_count

    def __str__(self):
        status = "ok" if self.ok else "FAILED"
        lines = [f"adjunction {self.side}: {status} "
                 f"(homs {self.left_count} / {self.right_count})"]
        lines += [f"  counterexample: {f}" for f in self.failures]
        return "\n".join(lines)


def adjunction_left_check(l, mod_t, mod_tp) -> AdjunctionReport:
    """Extension is left adjoint to restriction, on one finite instance.

    Enumerates Hom(extension of mod_t, mod_tp) over T' and
    Hom(mod_t, restriction of mod_tp) over T, then checks that the transforms
    f -> f(<1, .>) and h -> (<t', s> -> t' * h(s)) are mutually inverse.
    Monoid carriers need the extension words to saturate to a finite carrier.
    """
    if getattr(mod_t, "carrier_kind", "set") == "mon":
        return _adjunction_left_mon(_as_change(l), mod_t, mod_tp)
    l = _as_change(l)
    ext = extend_set(l, mod_t)
    res = restrict(l, mod_tp)
    homs_ext = set_module_homs(ext, mod_tp)
    homs_res = set_module_homs(mod_t, res)
    failures = []

    star_t, star_p = mod_t.basepoint, mod_tp.basepoint

    def bar(f):  # Hom(ext, mod_tp) -> Hom(mod_t, res)
        fd = dict(f)
        pairs = []
        for s in mod_t.carrier.elements:
            if s == star_t:
                pairs.append((s, star_p))
            else:
                pairs.append((s, fd[ext.class_of_pair(ONE, s)]))
        return tuple(pairs)

    def under(h):  # Hom(mod_t, res) -> Hom(ext, mod_tp)
        hd = dict(h)
        pairs = []
        for c in ext.carrier.elements:
            if c == ext.basepoint:
                pairs.append((c, star_p))
            else:
                t2, s = c.rep
                pairs.append((c, mod_tp.act(t2, hd[s])))
        return tuple(pairs)

    ext_set = set(homs_ext)
    res_set = set(homs_res)
    for f in homs_ext:
        b = bar(f)
        if b not in res_set:
            failures.append(("bar leaves the hom set", f))
        elif under(b) != f:
            failures.append(("round trip under(bar(f)) != f", f))
    for h in homs_res:
        u = under(h)
        if u not in ext_set:
            failures.append(("under leaves the hom set", h))
        elif bar(u) != h:
            failures.append(("round trip bar(under(h)) != h", h))
    if len(homs_ext) != len(homs_res):
        failures.append(("hom counts differ", (len(homs_ext), len(homs_res))))

    # naturality squares on sampled endomorphisms of both arguments
    tp_endos = set_module_homs(mod_tp, mod_tp)[:3]
    t_endos = set_module_homs(mod_t, mod_t)[:3]
    for f in homs_ext[:3]:
        fd = dict(f)
        barf = bar(f)
        for phi in tp_endos:
            pd = dict(phi)
            post = tuple((c, pd[v]) for c, v in f)
            if bar(post) != tuple((s, pd[v]) for s, v in barf):
                failures.append(("naturality in the target", (f, phi)))
        for psi in t_endos:
            pd = dict(psi)
            ext_psi = extend_set_morphism(l, pd.__getitem__, ext, ext)
            pre = tuple((c, fd[ext_psi(c)]) for c in ext.carrier.elements)
            expected = tuple((s, dict(barf)[pd[s]])
                             for s in mod_t.carrier.elements)
            if bar(pre) != expected:
                failures.append(("naturality in the source", (f, psi)))
    return AdjunctionReport("extension -| restriction",
                            len(homs_ext), len(homs_res), failures)


def adjunction_right_check(l, mod_tp, mod_t) -> AdjunctionReport:
    """Restriction is left adjoint to co-extension, on one finite instance.

    Enumerates Hom(restriction of mod_tp, mod_t) over T and
    Hom(mod_tp, co-extension of mod_t) over T', with transforms
    f -> (m' -> (t' -> f(t' * m'))) and k -> (m' -> k(m')(1)).
    """
    if getattr(mod_t, "carrier_kind", "set") == "mon":
        return _adjunction_right_mon(_as_change(l), mod_tp, mod_t)
    l = _as_change(l)
    res = restrict(l, mod_tp)
    coext = coextend_set(l, mod_t)
    homs_res = set_module_homs(res, mod_t)
    homs_coext = set_module_homs(mod_tp, coext)
    failures = []
    tp = l.target
    tp_elems = tp.elements()

    def bar(f):  # Hom(res, mod_t) -> Hom(mod_tp, coext)
        fd = dict(f)
        pairs = []
        for mp in mod_tp.carrier.elements:
            g = CoextensionElement(tuple(sorted(
                ((s, fd[mod_tp.act(s, mp)]) for s in tp_elems),
                key=lambda kv: tp_elems.index(kv[0]))))
            pairs.append((mp, g))
        return tuple(pairs)

    def under(k):  # Hom(mod_tp, coext) -> Hom(res, mod_t)
        kd = dict(k)
        return tuple((mp, kd[mp].apply(ONE)) for mp in mod_tp.carrier.elements)

    res_set = set(homs_res)
    coext_set = set(homs_coext)
    for f in homs_res:
        b = bar(f)
        if b not in coext_set:
            failures.append(("bar leaves the hom set", f))
        elif under(b) != f:
            failures.append(("round trip under(bar(f)) != f", f))
    for k in homs_coext:
        u = under(k)
        if u not in res_set:
            failures.append(("under leaves the hom set", k))
        elif bar(u) != k:
            failures.append(("round trip bar(under(k)) != k", k))
    if len(homs_res) != len(homs_coext):
        failures.append(("hom counts differ", (len(homs_res), len(homs_coext))))

    # naturality square on sampled endomorphisms of the co-extended module
    t_endos = set_module_homs(mod_t, mod_t)[:3]
    for f in homs_res[:3]:
        barf = bar(f)
        for phi in t_endos:
            pd = dict(phi)
            post = tuple((mp, pd[v]) for mp, v in f)
            coext_phi = coextend_set_morphism(l, pd.__getitem__, coext, coext)
            expected = tuple((mp, coext_phi(g)) for mp, g in barf)
            if bar(post) != expected:
                failures.append(("naturality in the target", (f, phi)))
    return AdjunctionReport("restriction -| co-extension",
                            len(homs_res), len(homs_coext), failures)


def _adjunction_left_mon(l: ScalarChange, mod_t: LeftModuleMon,
                         mod_tp: LeftModuleMon) -> AdjunctionReport:
    ext_mod = extend_mon(l, mod_t)
    monoid = ext_mod.extension
    if not monoid.is_finite:
        raise InfiniteInputError("extension words do not saturate; cannot enumerate homs")
    res = restrict(l, mod_tp)
    homs_ext = mon_module_homs(ext_mod, mod_tp)
    homs_res = mon_module_homs(mod_t, res)
    failures = []

    def embed(m):
        return monoid.word_of([monoid.letter_value(ONE, m)])

    def bar(f):
        fd = dict(f)
        return tuple((m, fd[embed(m)]) for m in mod_t.carrier.elements())

    tp = l.target
    tgt_car = mod_tp.carrier

    def under(h):
        hd = dict(h)
        pairs = []
        for x in monoid.elements():
            if x.is_zero:
                pairs.append((x, ZERO))
            elif x.is_one:
                pairs.append((x, tgt_car.one))
            else:
                acc = tgt_car.one
                for c in x.word:
                    t2, m = c.rep
                    acc = tgt_car.mul(acc, mod_tp.act(t2, hd[m]))
                pairs.append((x, acc))
        return tuple(pairs)

    ext_set = set(homs_ext)
    res_set = set(homs_res)
    for f in homs_ext:
        b = bar(f)
        if b not in res_set:
            failures.append(("bar leaves the hom set", f))
        elif under(b) != f:
            failures.append(("round trip under(bar(f)) != f", f))
    for h in homs_res:
        u = under(h)
        if u not in ext_set:
            failures.append(("under leaves the hom set", h))
        elif bar(u) != h:
            failures.append(("round trip bar(under(h)) != h", h))
    if len(homs_ext) != len(homs_res):
        failures.append(("hom counts differ", (len(homs_ext), len(homs_res))))
    return AdjunctionReport("extension -| restriction (monoid carriers)",
                            len(homs_ext), len(homs_res), failures)


def _adjunction_right_mon(l: ScalarChange, mod_tp: LeftModuleMon,
                          mod_t: LeftModuleMon) -> AdjunctionReport:
    res = restrict(l, mod_tp)
    coext = coextend_mon(l, mod_t)
    monoid = coext.maps_monoid
    homs_res = mon_module_homs(res, mod_t)
    homs_coext = mon_module_homs(mod_tp, coext)
    failures = []
    tp = l.target
    tp_elems = tp.elements()

    def bar(f):
        # module morphisms preserve zero; the pointwise formula covers the rest
        fd = dict(f)
        pairs = []
        for mp in mod_tp.carrier.elements():
            if mp.is_zero:
                pairs.append((mp, ZERO))
                continue
            g = CoextensionElement(tuple(sorted(
                ((s, fd[mod_tp.act(s, mp)]) for s in tp_elems),
                key=lambda kv: tp_elems.index(kv[0]))))
            if g not in monoid.maps:
                return None
            pairs.append((mp, monoid.handle_of(g)))
        return tuple(pairs)

    def under(k):
        kd = dict(k)
        return tuple((mp, ZERO if mp.is_zero else monoid.map_of(kd[mp]).apply(ONE))
                     for mp in mod_tp.carrier.elements())

    res_set = set(homs_res)
    coext_set = set(homs_coext)
    for f in homs_res:
        b = bar(f)
        if b is None or b not in coext_set:
            failures.append(("bar leaves the hom set", f))
        elif under(b) != f:
            failures.append(("round trip under(bar(f)) != f", f))
    for k in homs_coext:
        u = under(k)
        if u not in res_set:
            failures.append(("under leaves the hom set", k))
        elif bar(u) != k:
            failures.append(("round trip bar(under(k)) != k", k))
    if len(homs_res) != len(homs_coext):
        failures.append(("hom counts differ", (len(homs_res), len(homs_coext))))
    return AdjunctionReport("restriction -| co-extension (monoid carriers)",
                            len(homs_res), len(homs_coext), failures)


# ---------------------------------------------------------------------------
# group preservation under extension


@dataclass
class GroupPreservationReport:
    checked: int
    failures: list

    @property
    def ok(self):
        return not self.failures

    def __str__(self):
        status = "ok" if self.ok else "FAILED"
        lines = [f"group preservation: {status} ({self.checked} words)"]
        lines += [f"  counterexample: {w}" for w in self.failures]
        return "\n".join(lines)


def group_preservation_check(l, mod: LeftModuleMon, max_len: int = 3,
                             budget: int = REWRITE_BUDGET_DEFAULT) -> GroupPreservationReport:
    """Every word of letters has the reversed word of inverted letters as inverse.

    Requires the module carrier to be an absorption group; the inverse of a
    letter <t', m> is the letter of (t', inverse of m).
    """
    from .monoid import TableMonoid, is_absorption_group

    car = mod.carrier
    if not (isinstance(car, TableMonoid) and is_absorption_group(car)):
        raise DitraceError("group preservation needs an absorption-group table carrier")
    inv = {}
    nonzero = [x for x in car.elements() if not x.is_zero]
    for a in nonzero:
        for b in nonzero:
            if car.mul(a, b).is_one and car.mul(b, a).is_one:
                inv[a] = b
    ext_mod = extend_mon(l, mod, budget)
    monoid = ext_mod.extension
    failures = []
    checked = 0
    for n in range(1, max_len + 1):
        for combo in itertools.product(monoid.letters, repeat=n):
            w = monoid.word_of(combo)
            if w.is_zero or w.is_one:
                continue
            checked += 1
            letters = w.word if w.tag == WORD_TAG else ()
            inverse_values = [monoid.letter_value(c.rep[0], inv[c.rep[1]])
                              for c in reversed(letters)]
            iw = monoid.word_of(inverse_values)
            if not (monoid.mul(w, iw).is_one and monoid.mul(iw, w).is_one):
                failures.append((w, iw))
    return GroupPreservationReport(checked, failures)
