"""Plain-text model files: monoids, transition systems, spaces, modules, morphisms.

One datum per line, `#` starts a comment.  Parse failures raise ParseError
with the offending path and line number.
"""
from __future__ import annotations

import os

from .errors import ParseError
from .monoid import (
    ONE,
    ZERO,
    AbsMonoid,
    FiniteAbsMonoid,
    FreeMonoid,
    MonElement,
    MonoidMorphism,
    TableMonoid,
    word_element,
)
from .modules import LeftModuleMon, LeftModuleSet, TransitionSystem
from .pointed import PointedSet
from .spaces import DirectedGraph, GridSpace


def _lines(path):
    with open(path, encoding="utf-8") as fh:
        for i, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                yield i, line


def _fail(path, line, msg):
    raise ParseError(path, line, msg)


# ---------------------------------------------------------------------------
# monoid files


def load_monoid(path) -> FiniteAbsMonoid | FreeMonoid:
    """`monoid table` files return the raw table; `monoid free` files a FreeMonoid."""
    rows = {}
    names = None
    kind = None
    letters = None
    header_line = 0
    for i, line in _lines(path):
        parts = line.split()
        if kind is None:
            if parts[0] != "monoid" or len(parts) != 2 or parts[1] not in ("table", "free"):
                _fail(path, i, "expected header 'monoid table' or 'monoid free'")
            kind = parts[1]
            header_line = i
            continue
        if kind == "free":
            if parts[0] == "letters":
                letters = tuple(parts[1:])
            else:
                _fail(path, i, f"unexpected directive {parts[0]!r} in a free monoid file")
            continue
        if parts[0] == "elements":
            if len(parts) < 3:
                _fail(path, i, "need at least two element names (zero and one)")
            names = tuple(parts[1:])
            if len(set(names)) != len(names):
                _fail(path, i, "element names must be distinct")
        elif parts[0] == "row":
            if names is None:
                _fail(path, i, "'row' before 'elements'")
            if not parts[1].endswith(":"):
                _fail(path, i, "expected 'row <name>: <name>...'")
            rname = parts[1][:-1]
            if rname not in names:
                _fail(path, i, f"unknown row element {rname!r}")
            entries = parts[2:]
            if len(entries) != len(names):
                _fail(path, i, f"row {rname!r} needs {len(names)} entries")
            for e in entries:
                if e not in names:
                    _fail(path, i, f"unknown element {e!r} in row {rname!r}")
            rows[rname] = entries
        else:
            _fail(path, i, f"unexpected directive {parts[0]!r} in a table monoid file")
    if kind is None:
        _fail(path, 1, "empty monoid file")
    if kind == "free":
        if letters is None:
            _fail(path, header_line, "free monoid file needs a 'letters' line")
        return FreeMonoid(letters)
    if names is None:
        _fail(path, header_line, "table monoid file needs an 'elements' line")
    idx = {n: k for k, n in enumerate(names)}
    zero, one = names[0], names[1]
    table = []
    for n in names:
        if n in rows:
            table.append(tuple(idx[e] for e in rows[n]))
        elif n == zero:
            table.append(tuple(idx[zero] for _ in names))
        elif n == one:
            table.append(tuple(idx[e] for e in names))
        else:
            _fail(path, header_line, f"missing row for element {n!r}")
    return FiniteAbsMonoid(names, idx[zero], idx[one], tuple(table))


def load_abs_monoid(path) -> AbsMonoid:
    """Like load_monoid but tables are validated and wrapped."""
    raw = load_monoid(path)
    if isinstance(raw, FreeMonoid):
        return raw
    return TableMonoid(raw)


def render_table_monoid(m: AbsMonoid) -> str:
    """Serialize any finite monoid in table-file format (generated names)."""
    elems = m.elements()
    names = {}
    counter = 0
    for x in elems:
        if x.is_zero:
            names[x] = "0"
        elif x == m.one:
            names[x] = "1"
        else:
            names[x] = f"e{counter}"
            counter += 1
    order = sorted(elems, key=lambda x: (names[x] not in ("0",),
                                         names[x] not in ("0", "1"),
                                         names[x]))
    lines = ["monoid table", "elements " + " ".join(names[x] for x in order)]
    for x in order:
        row = " ".join(names[m.mul(x, y)] for y in order)
        lines.append(f"row {names[x]}: {row}")
    for x in order:
        if names[x] not in ("0", "1"):
            lines.append(f"# {names[x]} = {x!r}")
    return "\n".join(lines) + "\n"


def parse_element(m: AbsMonoid, token: str) -> MonElement:
    """Element reference: table names, or words over free letters ('.'-separated
    when letters are not single characters); '0' and '1' are zero and one."""
    if isinstance(m, TableMonoid):
        if token in m.data.names:
            return m.handle(token)
        raise ValueError(f"unknown element {token!r}")
    if token == "0":
        return ZERO
    if token == "1":
        return ONE
    if isinstance(m, FreeMonoid):
        entries = tuple(token.split(".")) if "." in token else tuple(token)
        x = word_element(*entries)
        if not m.contains(x):
            raise ValueError(f"{token!r} is not a word over {m.letters}")
        return x
    raise ValueError(f"cannot parse elements of {m.describe()}")


# ---------------------------------------------------------------------------
# transition systems


def load_transition_system(path) -> TransitionSystem:
    states = letters = None
    trans = []
    seen_header = False
    for i, line in _lines(path):
        parts = line.split()
        if not seen_header:
            if parts != ["ts"]:
                _fail(path, i, "expected header 'ts'")
            seen_header = True
            continue
        if parts[0] == "states":
            states = tuple(parts[1:])
        elif parts[0] == "letters":
            letters = tuple(parts[1:])
        elif parts[0] == "trans":
            if len(parts) != 4:
                _fail(path, i, "expected 'trans <state> <letter> <state>'")
            trans.append((parts[1], parts[2], parts[3]))
        else:
            _fail(path, i, f"unexpected directive {parts[0]!r}")
    if not seen_header:
        _fail(path, 1, "empty transition-system file")
    if states is None or letters is None:
        _fail(path, 1, "need 'states' and 'letters' lines")
    try:
        return TransitionSystem(states, letters, tuple(trans))
    except Exception as exc:
        _fail(path, 1, str(exc))


def render_transition_system(ts: TransitionSystem) -> str:
    lines = ["ts",
             "states " + " ".join(ts.states),
             "letters " + " ".join(ts.alphabet)]
    for s, a, s2 in ts.transitions:
        lines.append(f"trans {s} {a} {s2}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# spaces


def load_space(path) -> GridSpace | DirectedGraph:
    kind = None
    size = None
    rects = []
    vertices = []
    edges = []
    for i, line in _lines(path):
        parts = line.split()
        if kind is None:
            if parts[0] != "space" or len(parts) != 2 or parts[1] not in ("grid", "graph"):
                _fail(path, i, "expected header 'space grid' or 'space graph'")
            kind = parts[1]
            continue
        if kind == "grid":
            if parts[0] == "size" and len(parts) == 3:
                try:
                    size = (int(parts[1]), int(parts[2]))
                except ValueError:
                    _fail(path, i, "size needs two integers")
            elif parts[:2] == ["forbidden", "rect"] and len(parts) == 6:
                try:
                    rects.append(tuple(int(v) for v in parts[2:]))
                except ValueError:
                    _fail(path, i, "forbidden rect needs four integers")
            else:
                _fail(path, i, f"unexpected grid directive {line!r}")
        else:
            if parts[0] == "vertex" and len(parts) == 2:
                vertices.append(parts[1])
            elif parts[0] == "edge" and len(parts) == 4:
                edges.append((parts[2], parts[3], parts[1]))
            else:
                _fail(path, i, f"unexpected graph directive {line!r}")
    if kind is None:
        _fail(path, 1, "empty space file")
    if kind == "grid":
        if size is None:
            _fail(path, 1, "grid file needs a 'size W H' line")
        try:
            return GridSpace.from_rects(size[0], size[1], rects)
        except Exception as exc:
            _fail(path, 1, str(exc))
    try:
        return DirectedGraph(tuple(vertices), tuple(edges))
    except Exception as exc:
        _fail(path, 1, str(exc))


# ---------------------------------------------------------------------------
# modules and morphisms


def load_module(path) -> LeftModuleSet | LeftModuleMon:
    """Module file: kind, a scalars monoid file reference, carrier, action table.

    Action lines name (scalar, element, result); pairs without a line act to
    the basepoint (set carriers) or zero (monoid carriers).  Free scalars take
    action lines for single letters; words act letterwise, rightmost first.
    """
    base = os.path.dirname(os.path.abspath(path))
    kind = None
    scalars = None
    carrier_names = None
    carrier_monoid = None
    acts = []
    for i, line in _lines(path):
        parts = line.split()
        if kind is None:
            if parts[0] != "module" or len(parts) != 2 or parts[1] not in ("set", "mon"):
                _fail(path, i, "expected header 'module set' or 'module mon'")
            kind = parts[1]
            continue
        if parts[0] == "scalars" and len(parts) == 2:
            scalars = load_abs_monoid(os.path.join(base, parts[1]))
        elif parts[0] == "carrier" and kind == "set":
            carrier_names = tuple(parts[1:])
        elif parts[0] == "carrier-monoid" and kind == "mon" and len(parts) == 2:
            carrier_monoid = load_abs_monoid(os.path.join(base, parts[1]))
        elif parts[0] == "act" and len(parts) == 4:
            acts.append((i, parts[1], parts[2], parts[3]))
        else:
            _fail(path, i, f"unexpected directive {line!r}")
    if kind is None:
        _fail(path, 1, "empty module file")
    if scalars is None:
        _fail(path, 1, "module file needs a 'scalars <monoid-file>' line")

    if kind == "set":
        if not carrier_names:
            _fail(path, 1, "set module needs a 'carrier <basepoint> <name>...' line")
        carrier = PointedSet(carrier_names, carrier_names[0])
        table = {}
        for (i, t_tok, s_tok, r_tok) in acts:
            if s_tok not in carrier_names or r_tok not in carrier_names:
                _fail(path, i, "action line names an unknown carrier element")
            try:
                t = parse_element(scalars, t_tok)
            except ValueError as exc:
                _fail(path, i, str(exc))
            table[(t, s_tok)] = r_tok
        return _set_module_from_table(scalars, carrier, table)

    if carrier_monoid is None:
        _fail(path, 1, "mon module needs a 'carrier-monoid <monoid-file>' line")
    table = {}
    for (i, t_tok, m_tok, r_tok) in acts:
        try:
            t = parse_element(scalars, t_tok)
            x = parse_element(carrier_monoid, m_tok)
            r = parse_element(carrier_monoid, r_tok)
        except ValueError as exc:
            _fail(path, i, str(exc))
        table[(t, x)] = r

    def action(t, x):
        if t.is_zero or x.is_zero:
            return ZERO
        if t.is_one:
            return x
        return table.get((t, x), ZERO)

    return LeftModuleMon(scalars, carrier_monoid, action, label=os.path.basename(path))


def _set_module_from_table(scalars, carrier, table):
    star = carrier.basepoint
    letter_mode = isinstance(scalars, FreeMonoid)

    def action(t, s):
        if s == star or t.is_zero:
            return star
        if t.is_one:
            return s
        if letter_mode:
            cur = s
            for letter in reversed(t.word):
                if cur == star:
                    return star
                cur = table.get((word_element(letter), cur), star)
            return cur
        return table.get((t, s), star)

    return LeftModuleSet(scalars, carrier, action, label="module file")


def load_morphism(path) -> MonoidMorphism:
    """Morphism file: source/target monoid file references plus generator map lines."""
    base = os.path.dirname(os.path.abspath(path))
    seen_header = False
    source = target = None
    raw_map = []
    for i, line in _lines(path):
        parts = line.split()
        if not seen_header:
            if parts != ["morphism"]:
                _fail(path, i, "expected header 'morphism'")
            seen_header = True
            continue
        if parts[0] == "source" and len(parts) == 2:
            source = load_abs_monoid(os.path.join(base, parts[1]))
        elif parts[0] == "target" and len(parts) == 2:
            target = load_abs_monoid(os.path.join(base, parts[1]))
        elif parts[0] == "map" and len(parts) == 3:
            raw_map.append((i, parts[1], parts[2]))
        else:
            _fail(path, i, f"unexpected directive {line!r}")
    if not seen_header:
        _fail(path, 1, "empty morphism file")
    if source is None or target is None:
        _fail(path, 1, "morphism file needs 'source' and 'target' lines")
    mapping = {}
    for (i, a, b) in raw_map:
        try:
            mapping[parse_element(source, a)] = parse_element(target, b)
        except ValueError as exc:
            _fail(path, i, str(exc))
    if isinstance(source, TableMonoid):
        full = {ZERO: ZERO, ONE: ONE}
        full.update(mapping)
        missing = [x for x in source.elements() if x not in full]
        if missing:
            _fail(path, 1, f"morphism map misses elements: {missing}")
        return MonoidMorphism(source, target, element_map=full,
                              label=os.path.basename(path))
    if isinstance(source, FreeMonoid):
        gens = {word_element(a) for a in source.letters}
        missing = gens - set(mapping)
        if missing:
            _fail(path, 1, f"morphism map misses letters: {sorted(map(repr, missing))}")
        return MonoidMorphism(source, target, generator_map=mapping,
                              label=os.path.basename(path))
    _fail(path, 1, "morphism sources must be table or free monoids")
