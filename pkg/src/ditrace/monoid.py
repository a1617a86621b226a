"""Absorption monoids: monoids carrying a two-sided absorbing element.

Every monoid in this package hands out canonical element handles
(:class:`MonElement`), so element equality is plain handle equality within
one monoid instance.  The absorbing element and the unit are the shared
singletons ``ZERO`` and ``ONE``; everything else is a ``word`` handle whose
entries depend on the kind of monoid (table element names, free letters,
path steps, component tuples).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .errors import (
    CompositionError,
    DitraceError,
    ForeignElementError,
    InfiniteInputError,
    NotASubmonoidError,
)
from .pointed import PointedSet

WORD_BOUND_DEFAULT = 6

ZERO_TAG = "zero"
ONE_TAG = "one"
WORD_TAG = "word"


@dataclass(frozen=True)
class MonElement:
    """Canonical element handle: the absorbing zero, the unit, or a word."""

    tag: str
    word: tuple = ()

    def __repr__(self):
        if self.tag == ZERO_TAG:
            return "0"
        if self.tag == ONE_TAG:
            return "1"
        return "w" + repr(self.word)

    @property
    def is_zero(self):
        return self.tag == ZERO_TAG

    @property
    def is_one(self):
        return self.tag == ONE_TAG


ZERO = MonElement(ZERO_TAG)
ONE = MonElement(ONE_TAG)


def word_element(*entries) -> MonElement:
    if not entries:
        return ONE
    return MonElement(WORD_TAG, tuple(entries))


def element_key(x: MonElement):
    """Deterministic sort key: zero, then one, then words by length and repr."""
    if x.is_zero:
        return (0, 0, "")
    if x.is_one:
        return (1, 0, "")
    return (2, len(x.word), repr(x.word))


# ---------------------------------------------------------------------------
# axiom reports


@dataclass(frozen=True, order=True)
class Violation:
    law: str
    operands: tuple
    detail: str

    def __str__(self):
        ops = ", ".join(str(o) for o in self.operands)
        return f"{self.law} at ({ops}): {self.detail}"


@dataclass(frozen=True)
class AxiomReport:
    subject: str
    violations: tuple
    checked: int
    note: str = ""

    @property
    def ok(self):
        return not self.violations

    def __str__(self):
        head = f"{self.subject}: {len(self.violations)} violation(s), {self.checked} instance(s) checked"
        if self.note:
            head += f" ({self.note})"
        return "\n".join([head] + [str(v) for v in self.violations])


def _sorted_violations(vs):
    return tuple(sorted(vs))


# ---------------------------------------------------------------------------
# raw finite tables


@dataclass(frozen=True)
class FiniteAbsMonoid:
    """A raw multiplication table; may violate the axioms (see check_axioms)."""

    names: tuple
    zero_index: int
    one_index: int
    table: tuple  # tuple of rows, each a tuple of element indices

    def __post_init__(self):
        n = len(self.names)
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise DitraceError("table dimensions do not match element count")
        if not (0 <= self.zero_index < n and 0 <= self.one_index < n):
            raise DitraceError("zero/one index out of range")
        for row in self.table:
            for v in row:
                if not (0 <= v < n):
                    raise DitraceError("table entry out of range")

    @property
    def size(self):
        return len(self.names)


def check_axioms(m: FiniteAbsMonoid) -> AxiomReport:
    """Exhaustively check associativity, unit, and absorption on a table.

    The report lists every violated instance; it is empty exactly when the
    table defines an absorption monoid.
    """
    t = m.table
    names = m.names
    z, e = m.zero_index, m.one_index
    bad = []
    n = m.size
    checked = 0
    for a in range(n):
        for b in range(n):
            for c in range(n):
                checked += 1
                left = t[t[a][b]][c]
                right = t[a][t[b][c]]
                if left != right:
                    bad.append(Violation(
                        "associativity", (names[a], names[b], names[c]),
                        f"({names[a]}*{names[b]})*{names[c]} = {names[left]} "
                        f"but {names[a]}*({names[b]}*{names[c]}) = {names[right]}"))
    for a in range(n):
        checked += 4
        if t[a][e] != a:
            bad.append(Violation("right-unit", (names[a], names[e]),
                                 f"{names[a]}*1 = {names[t[a][e]]}, expected {names[a]}"))
        if t[e][a] != a:
            bad.append(Violation("left-unit", (names[e], names[a]),
                                 f"1*{names[a]} = {names[t[e][a]]}, expected {names[a]}"))
        if t[a][z] != z:
            bad.append(Violation("right-zero", (names[a], names[z]),
                                 f"{names[a]}*0 = {names[t[a][z]]}, expected 0"))
        if t[z][a] != z:
            bad.append(Violation("left-zero", (names[z], names[a]),
                                 f"0*{names[a]} = {names[t[z][a]]}, expected 0"))
    return AxiomReport("table axioms", _sorted_violations(bad), checked, "exhaustive")


def is_absorption_group(m: FiniteAbsMonoid | "TableMonoid") -> bool:
    """True iff the nonzero part is closed and every nonzero element is invertible."""
    raw = m.data if isinstance(m, TableMonoid) else m
    t, z, e = raw.table, raw.zero_index, raw.one_index
    nonzero = [i for i in range(raw.size) if i != z]
    for a in nonzero:
        if any(t[a][b] == z for b in nonzero):
            return False
        if not any(t[a][b] == e and t[b][a] == e for b in nonzero):
            return False
    return True


def is_absorption_abelian_group(m: FiniteAbsMonoid | "TableMonoid") -> bool:
    raw = m.data if isinstance(m, TableMonoid) else m
    if not is_absorption_group(raw):
        return False
    t, z = raw.table, raw.zero_index
    nonzero = [i for i in range(raw.size) if i != z]
    return all(t[a][b] == t[b][a] for a in nonzero for b in nonzero)


# ---------------------------------------------------------------------------
# the monoid kinds


class AbsMonoid:
    """Base class: total multiplication on canonical handles, Eqs-style laws."""

    is_finite = False

    @property
    def zero(self) -> MonElement:
        return ZERO

    @property
    def one(self) -> MonElement:
        return ONE

    def mul(self, a: MonElement, b: MonElement) -> MonElement:
        self.require(a)
        self.require(b)
        if a.is_zero or b.is_zero:
            return ZERO
        if a.is_one:
            return b
        if b.is_one:
            return a
        return self._mul_words(a, b)

    def contains(self, x) -> bool:
        if not isinstance(x, MonElement):
            return False
        if x.tag in (ZERO_TAG, ONE_TAG):
            return True
        if not x.word:
            return False
        return self._contains_word(x)

    def require(self, x):
        if not self.contains(x):
            raise ForeignElementError(f"{x!r} is not an element of {self.describe()}")

    def describe(self) -> str:
        return type(self).__name__

    # finite protocol -------------------------------------------------
    def elements(self) -> list:
        raise InfiniteInputError(f"{self.describe()} has no finite element list")

    def sample_elements(self, bound: int = WORD_BOUND_DEFAULT, limit: int | None = None) -> list:
        """Finite kinds return everything; infinite kinds return words up to `bound`."""
        if self.is_finite:
            elems = self.elements()
        else:
            elems = self._bounded_elements(bound)
        if limit is not None:
            elems = elems[:limit]
        return elems

    def index_of(self, x: MonElement) -> int:
        return self._index_map[x]

    @cached_property
    def _index_map(self):
        return {x: i for i, x in enumerate(self.elements())}

    def generators(self) -> list:
        raise InfiniteInputError(f"{self.describe()} does not expose generators")

    # kind hooks --------------------------------------------------------
    def _mul_words(self, a, b) -> MonElement:
        raise NotImplementedError

    def _contains_word(self, x) -> bool:
        raise NotImplementedError

    def _bounded_elements(self, bound) -> list:
        raise InfiniteInputError(f"{self.describe()} has no bounded enumeration")


def multiply(m: AbsMonoid, a: MonElement, b: MonElement) -> MonElement:
    """Product of two handles in `m`; Zero absorbs and One is neutral."""
    return m.mul(a, b)


def check_axioms_sampled(m: AbsMonoid, sample: Sequence[MonElement] | None = None,
                         bound: int = WORD_BOUND_DEFAULT, limit: int | None = 24) -> AxiomReport:
    """Check Eqs-style monoid laws on a finite sample of handles.

    Exhaustive when `m` is finite and no explicit sample is given; otherwise a
    bounded check, reported as such in the note.
    """
    if sample is None:
        sample = m.sample_elements(bound, limit=None if m.is_finite else limit)
    note = "exhaustive" if m.is_finite and limit is None else f"sample of {len(sample)}"
    bad = []
    checked = 0
    for a in sample:
        checked += 4
        if m.mul(a, m.one) != a:
            bad.append(Violation("right-unit", (a,), "a*1 != a"))
        if m.mul(m.one, a) != a:
            bad.append(Violation("left-unit", (a,), "1*a != a"))
        if m.mul(a, ZERO) != ZERO:
            bad.append(Violation("right-zero", (a,), "a*0 != 0"))
        if m.mul(ZERO, a) != ZERO:
            bad.append(Violation("left-zero", (a,), "0*a != 0"))
    for a in sample:
        for b in sample:
            ab = m.mul(a, b)
            for c in sample:
                checked += 1
                if m.mul(ab, c) != m.mul(a, m.mul(b, c)):
                    bad.append(Violation("associativity", (a, b, c),
                                         "(a*b)*c != a*(b*c)"))
    return AxiomReport(m.describe(), _sorted_violations(
        (Violation(v.law, tuple(repr(o) for o in v.operands), v.detail) for v in bad)),
        checked, note)


@dataclass(frozen=True)
class TableMonoid(AbsMonoid):
    """Finite monoid given by a validated multiplication table."""

    data: FiniteAbsMonoid

    def __post_init__(self):
        report = check_axioms(self.data)
        if not report.ok:
            raise DitraceError(f"table is not an absorption monoid:\n{report}")
        if len(set(self.data.names)) != len(self.data.names):
            raise DitraceError("element names must be unique")

    is_finite = True

    def describe(self):
        return f"table monoid on {{{', '.join(self.data.names)}}}"

    @cached_property
    def _handles(self):
        hs = []
        for i, name in enumerate(self.data.names):
            if i == self.data.zero_index:
                hs.append(ZERO)
            elif i == self.data.one_index:
                hs.append(ONE)
            else:
                hs.append(word_element(name))
        return tuple(hs)

    @cached_property
    def _name_to_index(self):
        return {n: i for i, n in enumerate(self.data.names)}

    def handle(self, name: str) -> MonElement:
        return self._handles[self._name_to_index[name]]

    def name_of(self, x: MonElement) -> str:
        if x.is_zero:
            return self.data.names[self.data.zero_index]
        if x.is_one:
            return self.data.names[self.data.one_index]
        return x.word[0]

    def elements(self):
        return list(self._handles)

    def generators(self):
        return [h for h in self._handles if not (h.is_zero or h.is_one)]

    def _raw_index(self, x):
        if x.is_zero:
            return self.data.zero_index
        if x.is_one:
            return self.data.one_index
        return self._name_to_index[x.word[0]]

    def _mul_words(self, a, b):
        i = self.data.table[self._raw_index(a)][self._raw_index(b)]
        return self._handles[i]

    def _contains_word(self, x):
        return len(x.word) == 1 and x.word[0] in self._name_to_index and \
            self._name_to_index[x.word[0]] not in (self.data.zero_index, self.data.one_index)


def table_monoid(names: Sequence[str], rows: Sequence[Sequence[str]],
                 zero: str | None = None, one: str | None = None) -> TableMonoid:
    """Convenience builder from names; defaults: first name is 0, second is 1."""
    names = tuple(names)
    zero = names[0] if zero is None else zero
    one = names[1] if one is None else one
    idx = {n: i for i, n in enumerate(names)}
    table = tuple(tuple(idx[v] for v in row) for row in rows)
    return TableMonoid(FiniteAbsMonoid(names, idx[zero], idx[one], table))


@dataclass(frozen=True)
class FreeMonoid(AbsMonoid):
    """Free absorption monoid: words over the letters, Zero adjoined."""

    letters: tuple

    def __post_init__(self):
        if len(set(self.letters)) != len(self.letters):
            raise DitraceError("letters must be distinct")

    def describe(self):
        return f"free monoid on {{{', '.join(map(str, self.letters))}}}"

    def word(self, letters: Iterable) -> MonElement:
        w = word_element(*letters)
        self.require(w)
        return w

    def generators(self):
        return [word_element(a) for a in self.letters]

    def _mul_words(self, a, b):
        return MonElement(WORD_TAG, a.word + b.word)

    def _contains_word(self, x):
        return all(c in self.letters for c in x.word)

    def _bounded_elements(self, bound):
        out = [ZERO, ONE]
        for n in range(1, bound + 1):
            for w in itertools.product(self.letters, repeat=n):
                out.append(MonElement(WORD_TAG, w))
        return out


def free_absorption_monoid(alphabet: PointedSet) -> FreeMonoid:
    """Free absorption monoid over a pointed alphabet; the basepoint becomes Zero."""
    return FreeMonoid(tuple(a for a in alphabet.elements if a != alphabet.basepoint))


class _TupleMonoid(AbsMonoid):
    """Shared carrier logic for products and coproducts over a finite index list."""

    def __post_init__(self):
        if not self.factors:
            raise DitraceError("need at least one factor")

    @property
    def is_finite(self):
        return all(f.is_finite for f in self.factors)

    def tuple_of(self, x: MonElement) -> tuple:
        """Expand a canonical handle into its component handles."""
        self.require(x)
        k = len(self.factors)
        if x.is_zero:
            return (ZERO,) * k
        if x.is_one:
            return (ONE,) * k
        return x.word

    def from_tuple(self, comps: Sequence[MonElement]) -> MonElement:
        comps = tuple(comps)
        if len(comps) != len(self.factors):
            raise ForeignElementError("component count mismatch")
        for f, c in zip(self.factors, comps):
            f.require(c)
        if all(c.is_zero for c in comps):
            return ZERO
        if all(c.is_one for c in comps):
            return ONE
        return MonElement(WORD_TAG, comps)

    def _mul_words(self, a, b):
        ta, tb = self.tuple_of(a), self.tuple_of(b)
        return self.from_tuple(tuple(f.mul(x, y) for f, x, y in zip(self.factors, ta, tb)))

    def _contains_word(self, x):
        if len(x.word) != len(self.factors):
            return False
        if all(isinstance(c, MonElement) and f.contains(c)
               for f, c in zip(self.factors, x.word)):
            # all-zero and all-one tuples are non-canonical spellings
            return not (all(c.is_zero for c in x.word) or all(c.is_one for c in x.word))
        return False

    def elements(self):
        lists = [f.elements() for f in self.factors]
        return [self.from_tuple(t) for t in itertools.product(*lists)]


@dataclass(frozen=True)
class ProductMonoid(_TupleMonoid):
    """Componentwise product; zero is the all-zeros tuple, one the all-ones."""

    factors: tuple

    def describe(self):
        return "product(" + ", ".join(f.describe() for f in self.factors) + ")"


@dataclass(frozen=True)
class CoproductMonoid(_TupleMonoid):
    """Finite-support sequences under componentwise product.

    Over a finite index list the support condition is vacuous, so the carrier
    coincides with the product carrier; the kind is kept distinct anyway.
    """

    factors: tuple

    def describe(self):
        return "coproduct(" + ", ".join(f.describe() for f in self.factors) + ")"


def product(ms: Sequence[AbsMonoid]) -> ProductMonoid:
    return ProductMonoid(tuple(ms))


def coproduct(ms: Sequence[AbsMonoid]) -> CoproductMonoid:
    return CoproductMonoid(tuple(ms))


# ---------------------------------------------------------------------------
# sub-monoids and quotients


@dataclass(frozen=True)
class SubMonoid:
    """A sub-absorption-monoid given by an explicit element set.

    For infinite parents the set is the closure of the generators up to the
    word-length bound used at construction time.
    """

    parent: AbsMonoid
    members: frozenset

    def __post_init__(self):
        for x in self.members:
            self.parent.require(x)
        if ZERO not in self.members:
            raise NotASubmonoidError("a sub-monoid must contain 0")

    @staticmethod
    def from_generators(parent: AbsMonoid, gens: Iterable[MonElement],
                        bound: int = WORD_BOUND_DEFAULT) -> "SubMonoid":
        gens = list(gens)
        for g in gens:
            parent.require(g)
        closed = {ZERO} | set(gens)
        frontier = list(closed)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(closed):
                    for p in (parent.mul(a, b), parent.mul(b, a)):
                        if p in closed:
                            continue
                        if not parent.is_finite and p.tag == WORD_TAG and len(p.word) > bound:
                            continue
                        closed.add(p)
                        nxt.append(p)
            frontier = nxt
        return SubMonoid(parent, frozenset(closed))

    @staticmethod
    def explicit(parent: AbsMonoid, members: Iterable[MonElement]) -> "SubMonoid":
        members = frozenset(members)
        sub = SubMonoid(parent, members)
        for a in members:
            for b in members:
                if parent.mul(a, b) not in members:
                    raise NotASubmonoidError(
                        f"not closed: {a!r} * {b!r} = {parent.mul(a, b)!r} is outside")
        return sub

    @property
    def nonzero(self):
        return [x for x in self.members if not x.is_zero]


@dataclass(frozen=True)
class QuotientMonoid(AbsMonoid):
    """Quotient by the congruence generated by n ~ 0 for n in the kill-set.

    Only the two-sided ideal generated by the kill-set collapses (to Zero);
    all other classes are singletons, so base handles stay canonical.
    """

    base: AbsMonoid
    killed: SubMonoid

    def __post_init__(self):
        if self.killed.parent != self.base:
            raise NotASubmonoidError("kill-set does not live in the quotient base")

    @property
    def is_finite(self):
        return self.base.is_finite

    def describe(self):
        return f"quotient of {self.base.describe()}"

    @cached_property
    def _ideal(self):
        """Finite bases only: the full two-sided ideal generated by the kill-set."""
        elems = self.base.elements()
        ideal = set()
        for n in self.killed.nonzero:
            for x in elems:
                xn = self.base.mul(x, n)
                for y in elems:
                    ideal.add(self.base.mul(xn, y))
        ideal.discard(ZERO)
        return frozenset(ideal)

    def _killed_word(self, x: MonElement) -> bool:
        """Word-like bases: does some nonzero kill-set element factor out of x?"""
        for n in self.killed.nonzero:
            if n.is_one:
                return True
            if _occurs_as_factor(self.base, n, x):
                return True
        return False

    def is_killed(self, x: MonElement) -> bool:
        if x.is_zero:
            return False
        if self.base.is_finite:
            return x in self._ideal
        if x.is_one:
            return ONE in self.killed.members
        return self._killed_word(x)

    def project(self, x: MonElement) -> MonElement:
        """Canonical class handle of a base element."""
        self.base.require(x)
        return ZERO if self.is_killed(x) else x

    @property
    def one(self):
        return self.project(ONE)

    def contains(self, x):
        if not isinstance(x, MonElement):
            return False
        if x.is_zero:
            return True
        if x.is_one:
            return not self.is_killed(ONE)
        return self.base.contains(x) and not self.is_killed(x)

    def mul(self, a, b):
        self.require(a)
        self.require(b)
        if a.is_zero or b.is_zero:
            return ZERO
        return self.project(self.base.mul(a, b))

    def elements(self):
        return [x for x in self.base.elements() if self.contains(x)]

    def _bounded_elements(self, bound):
        return [x for x in self.base.sample_elements(bound) if self.contains(x)]


def _occurs_as_factor(m: AbsMonoid, n: MonElement, x: MonElement) -> bool:
    """x = left * n * right for some handles of the word-like monoid `m`."""
    hook = getattr(m, "factor_occurrence", None)
    if hook is not None:
        return hook(n, x)
    if isinstance(m, FreeMonoid):
        if n.is_one:
            return True
        nw, xw = n.word, x.word
        return any(xw[i:i + len(nw)] == nw for i in range(len(xw) - len(nw) + 1))
    raise DitraceError(f"quotient factor test unsupported for {m.describe()}")


def quotient(m: AbsMonoid, n: SubMonoid | Iterable[MonElement]) -> QuotientMonoid:
    """Quotient of `m` by the sub-monoid `n` (an iterable is closed first)."""
    if not isinstance(n, SubMonoid):
        n = SubMonoid.explicit(m, set(n) | {ZERO})
    return QuotientMonoid(m, n)


@dataclass(frozen=True)
class OppositeMonoid(AbsMonoid):
    """Same carrier, reversed multiplication; backs the right-module adapters."""

    base: AbsMonoid

    @property
    def is_finite(self):
        return self.base.is_finite

    def describe(self):
        return f"opposite of {self.base.describe()}"

    def _mul_words(self, a, b):
        return self.base.mul(b, a)

    def _contains_word(self, x):
        return self.base.contains(x)

    def elements(self):
        return self.base.elements()

    def generators(self):
        return self.base.generators()

    def _bounded_elements(self, bound):
        return self.base.sample_elements(bound)


# ---------------------------------------------------------------------------
# morphisms


class MonoidMorphism:
    """A map of absorption monoids, given on a table, on generators, or as a function.

    Zero and One are always preserved by construction; whether the rest of the
    laws hold is what :func:`check_morphism` verifies.
    """

    def __init__(self, source: AbsMonoid, target: AbsMonoid, *,
                 element_map: dict | None = None,
                 generator_map: dict | None = None,
                 word_fn: Callable | None = None,
                 label: str = ""):
        if sum(x is not None for x in (element_map, generator_map, word_fn)) != 1:
            raise DitraceError("exactly one of element_map/generator_map/word_fn required")
        self.source = source
        self.target = target
        self.element_map = element_map
        self.generator_map = generator_map
        self.word_fn = word_fn
        self.label = label or "morphism"
        for mapping in (element_map, generator_map):
            if mapping:
                for k, v in mapping.items():
                    source.require(k)
                    target.require(v)

    def __repr__(self):
        return f"{self.label}: {self.source.describe()} -> {self.target.describe()}"

    def apply(self, x: MonElement) -> MonElement:
        self.source.require(x)
        if x.is_zero:
            return ZERO
        if x.is_one:
            return self.target.one
        if self.element_map is not None:
            try:
                return self.element_map[x]
            except KeyError:
                raise ForeignElementError(f"no image recorded for {x!r}")
        if self.word_fn is not None:
            return self.word_fn(x)
        acc = self.target.one
        for entry in x.word:
            img = self.generator_map.get(word_element(entry))
            if img is None:
                raise ForeignElementError(f"no image recorded for generator {entry!r}")
            acc = self.target.mul(acc, img)
            if acc.is_zero:
                return ZERO
        return acc

    def __call__(self, x):
        return self.apply(x)


def identity_morphism(m: AbsMonoid) -> MonoidMorphism:
    return MonoidMorphism(m, m, word_fn=lambda x: x, label="id")


def compose_morphisms(g: MonoidMorphism, f: MonoidMorphism) -> MonoidMorphism:
    """g after f; raises CompositionError when the middle objects disagree."""
    if f.target != g.source:
        raise CompositionError(f"cannot compose {g!r} after {f!r}")
    return MonoidMorphism(f.source, g.target,
                          word_fn=lambda x: g.apply(f.apply(x)),
                          label=f"{g.label}.{f.label}")


def check_morphism(f: MonoidMorphism, bound: int = WORD_BOUND_DEFAULT,
                   limit: int | None = 24) -> AxiomReport:
    """Verify multiplicativity and preservation of 1 and 0.

    Exhaustive on finite sources, bounded to words of length <= `bound`
    otherwise (capped at `limit` sample elements).
    """
    src = f.source
    sample = src.sample_elements(bound, limit=None if src.is_finite else limit)
    bad = []
    checked = 2
    if f.apply(src.one) != f.target.one:
        bad.append(Violation("unit-preserved", ("1",), "f(1) != 1"))
    if f.apply(ZERO) != ZERO:
        bad.append(Violation("zero-preserved", ("0",), "f(0) != 0"))
    for a in sample:
        fa = f.apply(a)
        for b in sample:
            checked += 1
            if f.apply(src.mul(a, b)) != f.target.mul(fa, f.apply(b)):
                bad.append(Violation("multiplicative", (repr(a), repr(b)),
                                     "f(a*b) != f(a)*f(b)"))
    note = "exhaustive" if src.is_finite else f"words up to length {bound}"
    return AxiomReport(repr(f), _sorted_violations(bad), checked, note)


def morphisms_equal_on(f: MonoidMorphism, g: MonoidMorphism,
                       sample: Sequence[MonElement]) -> bool:
    return all(f.apply(x) == g.apply(x) for x in sample)
