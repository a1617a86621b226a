"""Bundled property suite: every check returns a CheckResult with a detail line.

The CLI `verify all` runs these with desk-scale defaults; the acceptance test
module runs the same functions at the full advertised counts.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import fixtures, oracles
from .monoid import (
    check_axioms,
    check_axioms_sampled,
    coproduct,
    identity_morphism,
    product,
    quotient,
)
from .modules import (
    annihilator_module,
    check_module_axioms,
    check_module_morphism,
    module_from_transition_system,
    transition_system_from_module,
    trivial_module,
    regular_set_module,
)


def _zero_divisor_free(m) -> bool:
    elems = [x for x in m.elements() if not x.is_zero]
    return all(not m.mul(a, b).is_zero for a in elems for b in elems)
from .scalars import (
    adjunction_left_check,
    adjunction_right_check,
    group_preservation_check,
)
from .simplex import TOLERANCE, degeneracy_map, face_map, random_simplex_point
from .spaces import (
    GridSpace,
    compose_space_maps,
    dihomotopy_classes,
    identity_space_map,
    pi1_map,
    pi1_module,
    trace_bimodule,
    trace_monoid,
    trace_monoid_map,
)
from .monoid import FreeMonoid, morphisms_equal_on


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"check {self.name}: {'PASS' if self.ok else 'FAIL'} ({self.detail})"


# ---------------------------------------------------------------------------
# absorption monoid suite


def check_monoid_axioms(bound: int = 4) -> CheckResult:
    """Bundled tables exhaustively, plus products, coproducts, quotients, free."""
    failures = []
    count = 0
    tables = fixtures.bundled_tables()
    for name, m in tables:
        count += 1
        if not check_axioms(m.data).ok:
            failures.append(name)
    small = [(n, m) for n, m in tables if m.data.size <= 3]
    for (n1, m1) in small:
        for (n2, m2) in small:
            count += 2
            if not check_axioms_sampled(product([m1, m2]), limit=None).ok:
                failures.append(f"product({n1},{n2})")
            if not check_axioms_sampled(coproduct([m1, m2]), limit=None).ok:
                failures.append(f"coproduct({n1},{n2})")
    for name, m in tables:
        for sub in fixtures.all_submonoids(m):
            count += 1
            if not check_axioms_sampled(quotient(m, sub), limit=None).ok:
                failures.append(f"quotient({name})")
    free = FreeMonoid(("a", "b"))
    count += 1
    if not check_axioms_sampled(free, bound=3, limit=15).ok:
        failures.append("free(a,b)")
    return CheckResult("monoid-axioms", not failures,
                       f"{count} structures" if not failures else f"failed: {failures}")


def check_quotient_oracle() -> CheckResult:
    """Ideal-membership quotients match generic congruence closure exactly."""
    mismatches = []
    count = 0
    for name, m in fixtures.bundled_tables():
        for sub in fixtures.all_submonoids(m):
            count += 1
            q = quotient(m, sub)
            if oracles.ideal_quotient_partition(q) != \
                    oracles.congruence_quotient_partition(m, sub):
                mismatches.append((name, sorted(map(repr, sub.members))))
    return CheckResult("quotient-oracle", not mismatches,
                       f"{count} (monoid, sub-monoid) pairs"
                       if not mismatches else f"mismatch: {mismatches}")


# ---------------------------------------------------------------------------
# module suite


def check_module_suite(seed: int = 1, ts_count: int = 100,
                       grid_size: int = 4, path_bound: int = 6) -> CheckResult:
    failures = []
    count = 0
    for name, m in fixtures.bundled_tables():
        count += 2
        if not check_module_axioms(regular_set_module(m)).ok:
            failures.append(f"regular({name})")
        # trivial action needs zero-divisor-free scalars; nilpotents annihilate
        mon_mod = trivial_module(m, m) if _zero_divisor_free(m) \
            else annihilator_module(m, m)
        if not check_module_axioms(mon_mod).ok:
            failures.append(f"mon({name})")
    rng = random.Random(seed)
    for i in range(ts_count):
        count += 1
        ts = fixtures.random_transition_system(rng, n_states=rng.randint(2, 5))
        mod = module_from_transition_system(ts)
        if not check_module_axioms(mod, bound=3, scalar_limit=15).ok:
            failures.append(f"ts#{i}")
    for w in range(2, grid_size + 1):
        count += 1
        grid = GridSpace(w, w)
        bm = trace_bimodule(grid, bound=path_bound)
        r = check_module_axioms(bm, bound=path_bound,
                                scalar_limit=24, carrier_limit=24)
        if not r.ok:
            failures.append(f"trace-bimodule({w}x{w})")
    return CheckResult("module-axioms", not failures,
                       f"{count} modules" if not failures else f"failed: {failures}")


def check_ts_roundtrip(seed: int = 1, count: int = 100) -> CheckResult:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        ts = fixtures.random_transition_system(rng, n_states=rng.randint(2, 5))
        back = transition_system_from_module(module_from_transition_system(ts))
        if back.states != ts.states or back.alphabet != ts.alphabet \
                or back.step != ts.step:
            bad += 1
    return CheckResult("ts-roundtrip", bad == 0, f"{count} systems, {bad} failures")


# ---------------------------------------------------------------------------
# scalar functors suite


def check_adjunctions(seed: int = 1, count: int = 50, max_size: int = 3) -> CheckResult:
    """Random pointed-set instances plus the curated monoid-carrier family."""
    rng = random.Random(seed)
    failures = []
    for i in range(count):
        l, mod_src, mod_tgt = fixtures.adjunction_instance(rng, max_size)
        left = adjunction_left_check(l, mod_src, mod_tgt)
        right = adjunction_right_check(l, mod_tgt, mod_src)
        if not left.ok:
            failures.append(f"left#{i}: {left.failures[:1]}")
        if not right.ok:
            failures.append(f"right#{i}: {right.failures[:1]}")
    mon = fixtures.mon_adjunction_instances()
    for i, (l, mod_src, mod_tgt) in enumerate(mon):
        left = adjunction_left_check(l, mod_src, mod_tgt)
        right = adjunction_right_check(l, mod_tgt, mod_src)
        if not left.ok:
            failures.append(f"mon-left#{i}: {left.failures[:1]}")
        if not right.ok:
            failures.append(f"mon-right#{i}: {right.failures[:1]}")
    return CheckResult("adjunctions", not failures,
                       f"{count} set instances + {len(mon)} monoid instances, both sides"
                       if not failures else f"failed: {failures[:3]}")


def check_group_preservation(max_len: int = 3) -> CheckResult:
    bool2 = fixtures.bundled_table("bool2")
    z2 = fixtures.bundled_table("z2adj")
    z3 = fixtures.bundled_table("z3adj")
    failures = []
    checked = 0
    cases = []
    for carrier in (z2, z3):
        for target in (z2, z3):
            for l in fixtures.all_monoid_morphisms(bool2, target):
                cases.append((l, trivial_module(bool2, carrier)))
    inv_action = _inversion_module(z2, z3)
    if inv_action is not None:
        for l in fixtures.all_monoid_morphisms(z2, z2):
            cases.append((l, inv_action))
    for l, mod in cases:
        rep = group_preservation_check(l, mod, max_len=max_len)
        checked += rep.checked
        if not rep.ok:
            failures.append(rep.failures[:1])
    return CheckResult("group-preservation", not failures,
                       f"{checked} words across {len(cases)} instances"
                       if not failures else f"failed: {failures[:3]}")


def _inversion_module(z2, z3):
    """Z/2-with-zero acting on Z/3-with-zero by group inversion."""
    from .modules import endomorphism_module
    from .monoid import ZERO

    def invert(x):
        if x.is_zero or x.is_one:
            return x
        for y in z3.elements():
            if z3.mul(x, y).is_one:
                return y
        return ZERO

    g = z2.handle("g")
    mod = endomorphism_module(z2, z3, {g: invert})
    return mod if check_module_axioms(mod).ok else None


# ---------------------------------------------------------------------------
# simplicial identities


def check_simplicial_identities(seed: int = 1, points: int = 1000,
                                n_max: int = 5) -> CheckResult:
    """The five identity families, numerically at the shared tolerance."""
    rng = random.Random(seed)
    worst = 0.0
    combos = 0
    failures = []

    def sample(dim):
        return [random_simplex_point(rng, dim) for _ in range(points)]

    # faces then faces: d_j d_k = d_k d_{j-1} for k < j
    for n in range(1, n_max):
        pts = sample(n - 1)
        for j in range(n + 2):
            for k in range(j):
                if k > n or j > n + 1:
                    continue
                combos += 1
                dev = max(face_map(j, face_map(k, x))
                          .distance(face_map(k, face_map(j - 1, x))) for x in pts)
                worst = max(worst, dev)
                if dev > TOLERANCE:
                    failures.append(("dd", n, j, k, dev))
    # degeneracies then degeneracies: s_j s_k = s_k s_{j+1} for k <= j
    for n in range(1, n_max):
        pts = sample(n + 1)
        for j in range(n):
            for k in range(j + 1):
                combos += 1
                dev = max(degeneracy_map(j, degeneracy_map(k, x))
                          .distance(degeneracy_map(k, degeneracy_map(j + 1, x)))
                          for x in pts)
                worst = max(worst, dev)
                if dev > TOLERANCE:
                    failures.append(("ss", n, j, k, dev))
    # mixed: s_j d_k
    for n in range(1, n_max):
        pts = sample(n)
        for j in range(n + 1):
            for k in range(n + 2):
                combos += 1
                lhs = [degeneracy_map(j, face_map(k, x)) for x in pts]
                if k < j:
                    rhs = [face_map(k, degeneracy_map(j - 1, x)) for x in pts]
                elif k in (j, j + 1):
                    rhs = pts
                else:
                    rhs = [face_map(k - 1, degeneracy_map(j, x)) for x in pts]
                dev = max(a.distance(b) for a, b in zip(lhs, rhs))
                worst = max(worst, dev)
                if dev > TOLERANCE:
                    failures.append(("sd", n, j, k, dev))
    return CheckResult("simplicial-identities", not failures,
                       f"{combos} (family, n, j, k) combos x {points} points, "
                       f"max deviation {worst:.2e}"
                       if not failures else f"failed: {failures[:3]}")


# ---------------------------------------------------------------------------
# directed spaces


def check_dihomotopy_counts() -> CheckResult:
    failures = []
    empty = fixtures.bundled_space("empty3")
    hole = fixtures.bundled_space("hole3")
    swiss = fixtures.bundled_space("swiss5")
    cases = [
        ("empty3", empty, (0, 0), (3, 3), 1),
        ("hole3", hole, (0, 0), (3, 3), 2),
        ("swiss5", swiss, (0, 0), (5, 5), None),
    ]
    details = []
    for name, space, a, b, expected in cases:
        classes = dihomotopy_classes(space, a, b)
        sweep = oracles.dihomotopy_partition_sweep(space, a, b)
        if oracles.partition_of_classes(classes) != sweep:
            failures.append(f"{name}: closure strategies disagree")
        if expected is not None and len(classes) != expected:
            failures.append(f"{name}: {len(classes)} classes, expected {expected}")
        details.append(f"{name}={len(classes)}")
    return CheckResult("dihomotopy-counts", not failures,
                       ", ".join(details) if not failures else f"failed: {failures}")


def check_pi1_action(trace_len: int = 3, graph_bound: int = 6) -> CheckResult:
    """Acting on every member of every class agrees with acting on the rep.

    Grids materialize every endpoint pair; graphs every pair reachable by a
    path within the bound.
    """
    from .spaces import DPath, GridSpace, element_path

    failures = []
    checked = 0
    for name, space in fixtures.bundled_spaces():
        mod = pi1_module(space, bound=graph_bound)
        monoid = mod.scalars
        if isinstance(space, GridSpace):
            vertices = space.vertices()
            pairs = [(a, b) for a in vertices for b in vertices
                     if a[0] <= b[0] and a[1] <= b[1]]
        else:
            pairs = sorted({(p.start, space.path_end(p))
                            for p in space.all_paths(graph_bound)})
        traces = [t for t in monoid.sample_elements(trace_len) if t.tag == "word"]
        by_end = {}
        for t in traces:
            by_end.setdefault(space.path_end(element_path(t)), []).append(t)
        for (a, b) in pairs:
            for c in mod.classes(a, b):
                for t in by_end.get(c.start, ()):
                    p = element_path(t)
                    images = {mod.act_left(t, c)}
                    for member in c.members:
                        images.add(mod.class_of(DPath(p.start, p.steps + member.steps)))
                    checked += 1
                    if len(images) != 1:
                        failures.append((name, repr(c), repr(t)))
    return CheckResult("pi1-action", not failures,
                       f"{checked} (class, trace) pairs across all endpoint pairs"
                       if not failures else f"failed: {failures[:3]}")


def check_functoriality(seed: int = 1, count: int = 20) -> CheckResult:
    rng = random.Random(seed)
    failures = []
    for i in range(count):
        f = fixtures.random_grid_embedding(rng)
        ident = identity_space_map(f.source)
        tid = trace_monoid_map(ident)
        sample = trace_monoid(f.source).sample_elements(3)
        if not morphisms_equal_on(tid, identity_morphism(trace_monoid(f.source)), sample):
            failures.append(f"T(id)#{i}")
        # composite with a further translation into a padded target
        pad = GridSpace(f.target.width + 1, f.target.height + 1, f.target.forbidden)
        g = type(f)(f.target, pad, 0, 0)
        comp = compose_space_maps(g, f)
        lhs = trace_monoid_map(comp)
        rhs_g, rhs_f = trace_monoid_map(g), trace_monoid_map(f)
        composed = [rhs_g.apply(rhs_f.apply(x)) for x in sample]
        direct = [lhs.apply(x) for x in sample]
        if composed != direct:
            failures.append(f"T(gof)#{i}")
        try:
            pm = pi1_map(f, bound=4)
        except Exception:
            failures.append(f"pi1-map raised#{i}")
            continue
        rep = check_module_morphism(pm, bound=3, scalar_limit=12, carrier_limit=12)
        if not rep.ok:
            failures.append(f"pi1-morphism-law#{i}")
    return CheckResult("functoriality", not failures,
                       f"{count} embeddings" if not failures else f"failed: {failures[:3]}")


# ---------------------------------------------------------------------------


def run_all(seed: int = 1, max_size: int = 3, ts_count: int = 100,
            adjunction_count: int = 50, simplex_points: int = 200,
            embedding_count: int = 20) -> list:
    return [
        check_monoid_axioms(),
        check_quotient_oracle(),
        check_module_suite(seed=seed, ts_count=ts_count),
        check_ts_roundtrip(seed=seed, count=ts_count),
        check_adjunctions(seed=seed, count=adjunction_count, max_size=max_size),
        check_group_preservation(),
        check_simplicial_identities(seed=seed, points=simplex_points),
        check_dihomotopy_counts(),
        check_pi1_action(),
        check_functoriality(seed=seed, count=embedding_count),
    ]
