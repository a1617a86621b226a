import json
import os
import subprocess
import sys

import pytest

from ditrace.cli import Report, RunConfig, build_parser, config_from_args, main, run
from ditrace.errors import ParseError
from ditrace.modelio import (
    load_module,
    load_monoid,
    load_morphism,
    load_space,
    load_transition_system,
    parse_element,
    render_table_monoid,
    render_transition_system,
)
from ditrace.monoid import FreeMonoid, TableMonoid
from ditrace.spaces import DirectedGraph, GridSpace

MODELS = os.path.join(os.path.dirname(__file__), os.pardir, "models")


def model(name):
    return os.path.join(MODELS, name)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


# ---------------------------------------------------------------------------
# parsing


def test_load_table_monoid(tmp_path):
    path = write(tmp_path, "m.mon", "monoid table\nelements 0 1 a\nrow a: 0 a 1\n")
    raw = load_monoid(path)
    assert raw.names == ("0", "1", "a")
    assert TableMonoid(raw)


def test_missing_row_is_a_parse_error(tmp_path):
    path = write(tmp_path, "m.mon", "monoid table\nelements 0 1 a b\nrow a: 0 a 1 b\n")
    with pytest.raises(ParseError):
        load_monoid(path)


def test_parse_error_carries_line_number(tmp_path):
    path = write(tmp_path, "m.mon", "monoid table\nelements 0 1 a\nrow b: 0 a 1\n")
    with pytest.raises(ParseError) as err:
        load_monoid(path)
    assert err.value.line == 3


def test_load_free_monoid(tmp_path):
    path = write(tmp_path, "f.mon", "monoid free\nletters x y\n")
    m = load_monoid(path)
    assert isinstance(m, FreeMonoid)
    assert m.letters == ("x", "y")


def test_load_spaces():
    grid = load_space(model("hole3.grid"))
    assert isinstance(grid, GridSpace)
    assert grid.forbidden == frozenset({(1, 1)})
    graph = load_space(model("diamond.graph"))
    assert isinstance(graph, DirectedGraph)
    assert len(graph.edges) == 4


def test_load_transition_system_round_trip(tmp_path):
    ts = load_transition_system(model("cycle2.ts"))
    text = render_transition_system(ts)
    again = load_transition_system(write(tmp_path, "c.ts", text))
    assert again == ts


def test_load_module_and_morphism():
    mod = load_module(model("regular_z2.mod"))
    assert mod.carrier_kind == "set"
    morph = load_morphism(model("incl_bool2_z2.morph"))
    assert morph.source.data.size == 2


def test_rendered_table_reloads(tmp_path):
    from ditrace.monoid import product
    from ditrace.fixtures import bundled_table
    p = product([bundled_table("bool2"), bundled_table("z2adj")])
    text = render_table_monoid(p)
    reloaded = TableMonoid(load_monoid(write(tmp_path, "p.mon", text)))
    assert reloaded.data.size == 6


def test_parse_element_free_words(tmp_path):
    m = FreeMonoid(("ab", "c"))
    x = parse_element(m, "ab.c")
    assert x.word == ("ab", "c")


# ---------------------------------------------------------------------------
# the CLI


def run_cli(*argv):
    parser = build_parser()
    args = parser.parse_args(list(argv))
    config = config_from_args(args)
    return run(config)


def test_monoid_check_passes_on_bundled_models():
    code, text = run_cli("monoid", "check", model("bool2.mon"))
    assert code == 0
    assert "violations: 0" in text


def test_monoid_check_flags_violations(tmp_path):
    bad = tmp_path / "bad.mon"
    # a*0 = a breaks the right-zero law; the report must name the pair
    bad.write_text("monoid table\nelements 0 1 a\n"
                   "row 0: 0 0 0\nrow a: a a 1\n")
    code, text = run_cli("monoid", "check", str(bad))
    assert code == 1
    assert "right-zero" in text
    assert "(a, 0)" in text


def test_space_classes_verb():
    code, text = run_cli("space", "classes", "--model", model("empty3.grid"),
                         "--from", "0,0", "--to", "3,3")
    assert code == 0
    assert "classes: 1" in text


def test_space_classes_on_graph_model():
    code, text = run_cli("space", "classes", "--model", model("diamond.graph"),
                         "--from", "p", "--to", "s")
    assert code == 0
    assert "classes: 2" in text
    assert "p:e1.e2" in text


def test_module_check_mon_carrier():
    code, text = run_cli("module", "check", "--module", model("trivial_mon.mod"))
    assert code == 0
    assert "kind: mon" in text


def test_space_pi1_act_verb():
    code, text = run_cli("space", "pi1-act", "--model", model("hole3.grid"),
                         "--trace", "0,0:R", "--class", "1,0:RRUUU")
    assert code == 0
    assert "image: 0,0:RRRUUU" in text
    code, text = run_cli("space", "pi1-act", "--model", model("hole3.grid"),
                         "--trace", "0,0:U", "--class", "1,0:RRUUU")
    assert "image: *" in text


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "broken.mon"
    bad.write_text("monoid table\nrow a: 0 a 1\n")
    assert main(["monoid", "check", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "broken.mon:2" in err


def test_json_and_text_carry_the_same_facts():
    for argv in (
        ["monoid", "check", model("z2adj.mon")],
        ["space", "classes", "--model", model("hole3.grid"),
         "--from", "0,0", "--to", "3,3"],
        ["module", "check", "--module", model("regular_z2.mod")],
    ):
        code_t, text = run_cli(*argv)
        code_j, blob = run_cli(*argv, "--format", "json")
        assert code_t == code_j
        assert Report.parse_text(text) == json.loads(blob)["facts"]


def test_reports_are_byte_deterministic():
    argv = ["scalars", "adjoint-test", "--side", "left", "--count", "4",
            "--seed", "5"]
    assert run_cli(*argv) == run_cli(*argv)


def test_env_seed_overrides_flag(monkeypatch):
    argv = ["scalars", "adjoint-test", "--count", "2", "--seed", "1"]
    base = run_cli(*argv)
    monkeypatch.setenv("DITRACE_SEED", "99")
    override = run_cli(*argv)
    monkeypatch.delenv("DITRACE_SEED")
    assert base[0] == override[0] == 0
    # the report itself carries no seed-dependent facts beyond pass/fail,
    # so assert the override was honoured via the config layer
    args = build_parser().parse_args(argv)
    monkeypatch.setenv("DITRACE_SEED", "99")
    assert config_from_args(args).seed == 99


def test_run_config_rejects_nonpositive_bounds():
    from ditrace.errors import DitraceError
    with pytest.raises(DitraceError):
        RunConfig(command="verify all", bound=0)


def test_module_round_trip_verbs(tmp_path):
    code, text = run_cli("module", "from-ts", model("cycle2.ts"))
    assert code == 0
    assert "act a s0 s1" in text
    code, text = run_cli("module", "to-ts", "--module", model("two_state.mod"))
    assert code == 0
    assert "trans s0 a s1" in text


def test_monoid_quotient_on_a_table():
    code, text = run_cli("monoid", "quotient", model("z2adj.mon"), "--kill", "0")
    assert code == 0
    assert "elements: 3" in text  # killing zero changes nothing


def test_space_functor_test_verb():
    code, text = run_cli("space", "functor-test", "--count", "3", "--seed", "4")
    assert code == 0
    assert "status: pass" in text


def test_scalars_verbs_run_clean():
    for verb in ("restrict",):
        code, _ = run_cli("scalars", verb, "--l", model("incl_bool2_z2.morph"),
                          "--module", model("regular_z2.mod"))
        assert code == 0
    for verb in ("extend", "coextend"):
        code, _ = run_cli("scalars", verb, "--l", model("incl_bool2_z2.morph"),
                          "--module", model("point_bool2.mod"))
        assert code == 0


def test_cli_entry_point_subprocess():
    out = subprocess.run(
        [sys.executable, "-m", "ditrace", "monoid", "check", model("bool2.mon")],
        capture_output=True, text=True)
    assert out.returncode == 0
    assert "violations: 0" in out.stdout


def test_verify_all_exits_zero_on_the_bundled_corpus():
    code, text = run_cli("verify", "all", "--seed", "1", "--max-size", "3")
    assert code == 0
    assert "result: pass" in text
    assert text.count("PASS") == 10
