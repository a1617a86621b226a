"""Command-line front end.

Verbs: `monoid check|product|coproduct|quotient`, `module check|from-ts|to-ts`,
`scalars restrict|extend|coextend|adjoint-test`, `space classes|pi1-act|functor-test`,
and `verify all`.  Reports are deterministic for a fixed seed: exit 0 means
every check passed, 1 a verification failure, 2 a parse or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import verify as verify_mod
from .errors import DitraceError, ParseError
from .modelio import (
    load_abs_monoid,
    load_module,
    load_monoid,
    load_morphism,
    load_space,
    load_transition_system,
    parse_element,
)
from .monoid import (
    FreeMonoid,
    SubMonoid,
    check_axioms,
    check_axioms_sampled,
    coproduct,
    product,
    quotient,
)
from .modules import (
    check_module_axioms,
    module_from_transition_system,
    transition_system_from_module,
)
from .scalars import (
    ScalarChange,
    adjunction_left_check,
    adjunction_right_check,
    coextend,
    extend_mon,
    extend_set,
    restrict,
)
from .spaces import DPath, GridSpace, dihomotopy_classes, pi1_module
from .pointed import STAR

WORD_BOUND_DEFAULT = 6
MAX_SIZE_DEFAULT = 4
BUDGET_DEFAULT = 10_000


@dataclass
class RunConfig:
    command: str
    paths: list = field(default_factory=list)
    bound: int = WORD_BOUND_DEFAULT
    max_size: int = MAX_SIZE_DEFAULT
    budget: int = BUDGET_DEFAULT
    seed: int = 1
    fmt: str = "text"
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.bound <= 0 or self.max_size <= 0 or self.budget <= 0:
            raise DitraceError("bounds must be positive")


class Report:
    """Ordered facts; identical content whether rendered as text or JSON."""

    def __init__(self):
        self.facts = []

    def add(self, key, value):
        if isinstance(value, (list, tuple)):
            value = [str(v) for v in value]
        elif not isinstance(value, int):
            value = str(value)
        self.facts.append([str(key), value])

    def to_text(self) -> str:
        lines = []
        for key, value in self.facts:
            if isinstance(value, list):
                lines.append(f"{key}:")
                lines.extend(f"  - {v}" for v in value)
            else:
                lines.append(f"{key}: {value}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({"facts": self.facts}, sort_keys=True) + "\n"

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_text()

    @staticmethod
    def parse_text(text: str) -> list:
        """Inverse of to_text, used to compare the two output formats."""
        facts = []
        for line in text.splitlines():
            if line.startswith("  - "):
                facts[-1][1].append(line[4:])
            elif line.endswith(":") and ": " not in line:
                facts.append([line[:-1], []])
            else:
                key, _, value = line.partition(": ")
                try:
                    facts.append([key, int(value)])
                except ValueError:
                    facts.append([key, value])
        return facts


# ---------------------------------------------------------------------------
# verb implementations; each returns (exit_code, Report)


def _monoid_check(cfg: RunConfig):
    rep = Report()
    rep.add("command", "monoid check")
    loaded = load_monoid(cfg.paths[0])
    if isinstance(loaded, FreeMonoid):
        rep.add("kind", "free")
        rep.add("letters", list(map(str, loaded.letters)))
        result = check_axioms_sampled(loaded, bound=min(cfg.bound, 3), limit=15)
        rep.add("note", result.note)
    else:
        rep.add("kind", "table")
        rep.add("elements", len(loaded.names))
        result = check_axioms(loaded)
    rep.add("violations", len(result.violations))
    if result.violations:
        rep.add("violation-list", [str(v) for v in result.violations])
    return (0 if result.ok else 1), rep


def _monoid_combine(cfg: RunConfig, op):
    rep = Report()
    rep.add("command", f"monoid {op}")
    monoids = [load_abs_monoid(p) for p in cfg.paths]
    for m in monoids:
        if isinstance(m, FreeMonoid):
            raise DitraceError(f"monoid {op} needs finite table operands")
    combined = product(monoids) if op == "product" else coproduct(monoids)
    elems = combined.elements()
    rep.add("elements", len(elems))
    result = check_axioms_sampled(combined, limit=None)
    rep.add("violations", len(result.violations))
    rep.add("element-list", [repr(x) for x in elems])
    return (0 if result.ok else 1), rep


def _monoid_quotient(cfg: RunConfig):
    rep = Report()
    rep.add("command", "monoid quotient")
    base = load_abs_monoid(cfg.paths[0])
    gens = []
    for token in cfg.options["kill"]:
        try:
            gens.append(parse_element(base, token))
        except ValueError as exc:
            raise DitraceError(str(exc))
    sub = SubMonoid.from_generators(base, gens, bound=cfg.bound)
    q = quotient(base, sub)
    if base.is_finite:
        elems = q.elements()
        rep.add("elements", len(elems))
        rep.add("element-list", [repr(x) for x in elems])
        result = check_axioms_sampled(q, limit=None)
    else:
        sample = q.sample_elements(min(cfg.bound, 4))
        rep.add("surviving-words-up-to-bound", len(sample))
        result = check_axioms_sampled(q, bound=min(cfg.bound, 3), limit=12)
        rep.add("note", result.note)
    rep.add("violations", len(result.violations))
    return (0 if result.ok else 1), rep


def _module_check(cfg: RunConfig):
    rep = Report()
    rep.add("command", "module check")
    mod = load_module(cfg.paths[0])
    rep.add("kind", mod.carrier_kind)
    rep.add("scalars", mod.scalars.describe())
    result = check_module_axioms(mod, bound=cfg.bound, scalar_limit=16)
    rep.add("note", result.note)
    rep.add("violations", len(result.violations))
    if result.violations:
        rep.add("violation-list", [str(v) for v in result.violations])
    return (0 if result.ok else 1), rep


def _module_from_ts(cfg: RunConfig):
    rep = Report()
    rep.add("command", "module from-ts")
    ts = load_transition_system(cfg.paths[0])
    mod = module_from_transition_system(ts)
    rep.add("letters", list(map(str, mod.scalars.letters)))
    rep.add("carrier", [str(s) for s in mod.carrier.elements])
    acts = []
    for s in mod.carrier.others:
        for letter in mod.scalars.letters:
            out = mod.act(mod.scalars.word([letter]), s)
            acts.append(f"act {letter} {s} {out}")
    rep.add("action", acts)
    result = check_module_axioms(mod, scalar_limit=12)
    rep.add("violations", len(result.violations))
    return (0 if result.ok else 1), rep


def _module_to_ts(cfg: RunConfig):
    rep = Report()
    rep.add("command", "module to-ts")
    mod = load_module(cfg.paths[0])
    ts = transition_system_from_module(mod)
    rep.add("states", list(map(str, ts.states)))
    rep.add("letters", list(map(str, ts.alphabet)))
    rep.add("transitions", [f"trans {s} {a} {d}" for s, a, d in ts.transitions])
    return 0, rep


def _scalars_apply(cfg: RunConfig, op: str):
    rep = Report()
    rep.add("command", f"scalars {op}")
    l = ScalarChange(load_morphism(cfg.options["l"]))
    mod = load_module(cfg.options["module"])
    if op == "restrict":
        out = restrict(l, mod)
    elif op == "extend":
        out = extend_set(l, mod) if mod.carrier_kind == "set" \
            else extend_mon(l, mod, budget=cfg.budget)
    else:
        out = coextend(l, mod)
    rep.add("scalars", out.scalars.describe())
    if op == "extend" and mod.carrier_kind == "set":
        rep.add("classes", [repr(c) for c in out.classes])
    if op == "coextend":
        size = len(out.carrier.elements) if mod.carrier_kind == "set" \
            else len(out.carrier.elements())
        rep.add("carrier-size", size)
    result = check_module_axioms(out, bound=min(cfg.bound, 3),
                                 scalar_limit=12, carrier_limit=12)
    rep.add("violations", len(result.violations))
    if result.violations:
        rep.add("violation-list", [str(v) for v in result.violations[:10]])
    return (0 if result.ok else 1), rep


def _scalars_adjoint_test(cfg: RunConfig):
    import random

    from . import fixtures

    rep = Report()
    rep.add("command", "scalars adjoint-test")
    side = cfg.options.get("side", "left")
    count = cfg.options.get("count", 20)
    rng = random.Random(cfg.seed)
    rep.add("side", side)
    rep.add("instances", count)
    failures = []
    for i in range(count):
        l, mod_src, mod_tgt = fixtures.adjunction_instance(rng, cfg.max_size)
        if side == "left":
            r = adjunction_left_check(l, mod_src, mod_tgt)
        else:
            r = adjunction_right_check(l, mod_tgt, mod_src)
        if not r.ok:
            failures.append(f"instance {i}: {r.failures[:1]}")
    rep.add("failures", len(failures))
    if failures:
        rep.add("failure-list", failures)
    return (0 if not failures else 1), rep


def _parse_grid_vertex(token: str):
    x, _, y = token.partition(",")
    return (int(x), int(y))


def _parse_path_token(space, token: str) -> DPath:
    head, _, steps = token.partition(":")
    if isinstance(space, GridSpace):
        return DPath(_parse_grid_vertex(head), tuple(steps))
    labels = tuple(steps.split(".")) if steps else ()
    return DPath(head, labels)


def _format_path(space, p: DPath) -> str:
    if isinstance(space, GridSpace):
        return f"{p.start[0]},{p.start[1]}:{p.step_word()}"
    return f"{p.start}:{'.'.join(map(str, p.steps))}"


def _space_classes(cfg: RunConfig):
    rep = Report()
    rep.add("command", "space classes")
    space = load_space(cfg.options["model"])
    if isinstance(space, GridSpace):
        a = _parse_grid_vertex(cfg.options["src"])
        b = _parse_grid_vertex(cfg.options["dst"])
    else:
        a, b = cfg.options["src"], cfg.options["dst"]
    classes = dihomotopy_classes(space, a, b, bound=cfg.bound)
    rep.add("classes", len(classes))
    rep.add("representatives", [_format_path(space, c.rep) for c in classes])
    return 0, rep


def _space_pi1_act(cfg: RunConfig):
    rep = Report()
    rep.add("command", "space pi1-act")
    space = load_space(cfg.options["model"])
    mod = pi1_module(space, bound=cfg.bound)
    monoid = mod.scalars
    t_path = _parse_path_token(space, cfg.options["trace"])
    c_path = _parse_path_token(space, cfg.options["cls"])
    t = monoid.element_of(t_path)
    c = mod.class_of(c_path)
    image = mod.act_left(t, c)
    rep.add("trace", _format_path(space, t_path))
    rep.add("class", _format_path(space, c.rep))
    rep.add("image", "*" if image is STAR else _format_path(space, image.rep))
    return 0, rep


def _space_functor_test(cfg: RunConfig):
    rep = Report()
    rep.add("command", "space functor-test")
    count = cfg.options.get("count", 20)
    result = verify_mod.check_functoriality(seed=cfg.seed, count=count)
    rep.add("instances", count)
    rep.add("status", "pass" if result.ok else "fail")
    rep.add("detail", result.detail)
    return (0 if result.ok else 1), rep


def _verify_all(cfg: RunConfig):
    rep = Report()
    rep.add("command", "verify all")
    rep.add("seed", cfg.seed)
    rep.add("max-size", cfg.max_size)
    results = verify_mod.run_all(seed=cfg.seed, max_size=cfg.max_size,
                                 ts_count=cfg.options.get("ts_count", 100),
                                 adjunction_count=cfg.options.get("adjunction_count", 50),
                                 simplex_points=cfg.options.get("simplex_points", 200),
                                 embedding_count=cfg.options.get("embedding_count", 20))
    ok = True
    for r in results:
        rep.add(f"check {r.name}", f"{'PASS' if r.ok else 'FAIL'} ({r.detail})")
        ok = ok and r.ok
    rep.add("result", "pass" if ok else "fail")
    return (0 if ok else 1), rep


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    # shared flags are accepted both before and after the verb
    common = argparse.ArgumentParser(add_help=False,
                                     argument_default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("text", "json"))
    common.add_argument("--seed", type=int)
    common.add_argument("--bound", type=int,
                        help="word-length bound for infinite structures")
    common.add_argument("--max-size", dest="max_size", type=int)
    common.add_argument("--budget", type=int,
                        help="rewrite budget for extension-word normalization")

    top = argparse.ArgumentParser(prog="ditrace", parents=[common],
                                  description="absorption monoids, modules, and "
                                              "dihomotopy of combinatorial directed spaces")
    sub = top.add_subparsers(dest="group", required=True)

    def verb(group, name, **kwargs):
        return group.add_parser(name, parents=[common], **kwargs)

    monoid = sub.add_parser("monoid").add_subparsers(dest="verb", required=True)
    p = verb(monoid, "check")
    p.add_argument("file")
    for name in ("product", "coproduct"):
        p = verb(monoid, name)
        p.add_argument("files", nargs="+")
    p = verb(monoid, "quotient")
    p.add_argument("file")
    p.add_argument("--kill", nargs="+", required=True)

    module = sub.add_parser("module").add_subparsers(dest="verb", required=True)
    p = verb(module, "check")
    p.add_argument("--module", required=True)
    p = verb(module, "from-ts")
    p.add_argument("file")
    p = verb(module, "to-ts")
    p.add_argument("--module", required=True)

    scal = sub.add_parser("scalars").add_subparsers(dest="verb", required=True)
    for name in ("restrict", "extend", "coextend"):
        p = verb(scal, name)
        p.add_argument("--l", required=True, help="morphism file")
        p.add_argument("--module", required=True)
    p = verb(scal, "adjoint-test")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--count", type=int, default=20)

    space = sub.add_parser("space").add_subparsers(dest="verb", required=True)
    p = verb(space, "classes")
    p.add_argument("--model", required=True)
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)
    p = verb(space, "pi1-act")
    p.add_argument("--model", required=True)
    p.add_argument("--trace", required=True)
    p.add_argument("--class", dest="cls", required=True)
    p = verb(space, "functor-test")
    p.add_argument("--count", type=int, default=20)

    ver = sub.add_parser("verify").add_subparsers(dest="verb", required=True)
    verb(ver, "all")
    return top


_HANDLERS = {
    ("monoid", "check"): _monoid_check,
    ("monoid", "product"): lambda cfg: _monoid_combine(cfg, "product"),
    ("monoid", "coproduct"): lambda cfg: _monoid_combine(cfg, "coproduct"),
    ("monoid", "quotient"): _monoid_quotient,
    ("module", "check"): _module_check,
    ("module", "from-ts"): _module_from_ts,
    ("module", "to-ts"): _module_to_ts,
    ("scalars", "restrict"): lambda cfg: _scalars_apply(cfg, "restrict"),
    ("scalars", "extend"): lambda cfg: _scalars_apply(cfg, "extend"),
    ("scalars", "coextend"): lambda cfg: _scalars_apply(cfg, "coextend"),
    ("scalars", "adjoint-test"): _scalars_adjoint_test,
    ("space", "classes"): _space_classes,
    ("space", "pi1-act"): _space_pi1_act,
    ("space", "functor-test"): _space_functor_test,
    ("verify", "all"): _verify_all,
}


def config_from_args(args) -> RunConfig:
    seed = getattr(args, "seed", 1)
    if "DITRACE_SEED" in os.environ:
        seed = int(os.environ["DITRACE_SEED"])
    paths = []
    options = {}
    for key in ("file", "files", "module", "l", "model", "src", "dst",
                "trace", "cls", "kill", "side", "count"):
        value = getattr(args, key, None)
        if value is None:
            continue
        if key == "files":
            paths.extend(value)
        elif key == "file":
            paths.append(value)
        elif key == "module":
            paths.append(value)
            options["module"] = value
        else:
            options[key] = value
    return RunConfig(command=f"{args.group} {args.verb}", paths=paths,
                     bound=getattr(args, "bound", WORD_BOUND_DEFAULT),
                     max_size=getattr(args, "max_size", MAX_SIZE_DEFAULT),
                     budget=getattr(args, "budget", BUDGET_DEFAULT),
                     seed=seed, fmt=getattr(args, "format", "text"),
                     options=options)


def run(config: RunConfig):
    """Execute one verb; returns (exit_code, rendered report)."""
    handler = _HANDLERS[tuple(config.command.split(" ", 1))]
    code, rep = handler(config)
    return code, rep.render(config.fmt)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        code, text = run(config)
    except ParseError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except DitraceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
