import json

import pytest

from evoshader.cli import OracleSelector, main
from evoshader.evolution import EvolutionParams, default_lattice, init_population
from evoshader.expr import deserialize


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEvolve:
    def test_reports_one_json_line_per_generation(self, capsys):
        code, out, _ = run(
            capsys, "evolve", "--target", "(sin x)", "--generations", "3", "--seed", "7"
        )
        assert code == 0
        lines = [json.loads(line) for line in out.splitlines()]
        assert [line["generation"] for line in lines] == [0, 1, 2, 3]
        for line in lines:
            assert set(line) == {"generation", "best_distance", "best_sexpr"}
            assert line["best_distance"] >= 0.0
            deserialize(line["best_sexpr"])

    def test_zero_generations_prints_only_the_initial_line(self, capsys):
        code, out, _ = run(
            capsys, "evolve", "--target", "(sin x)", "--generations", "0", "--seed", "1"
        )
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 1
        assert json.loads(lines[0])["generation"] == 0

    def test_byte_identical_across_runs(self, capsys):
        args = ("evolve", "--target", "(sin x)", "--generations", "10", "--seed", "7")
        code_a, out_a, _ = run(capsys, *args)
        code_b, out_b, _ = run(capsys, *args)
        assert code_a == code_b == 0
        assert out_a == out_b

    def test_custom_population_flags(self, capsys):
        code, out, _ = run(
            capsys,
            "evolve", "--target", "z", "--generations", "1",
            "--seed", "3", "--pop", "20", "--subset", "4",
        )
        assert code == 0
        assert len(out.splitlines()) == 2

    def test_unparseable_target_exits_2(self, capsys):
        code, out, err = run(capsys, "evolve", "--target", "(div x", "--generations", "1")
        assert code == 2
        assert out == ""
        assert "error" in err

    def test_negative_generations_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["evolve", "--target", "x", "--generations", "-1"])
        assert exc.value.code == 2


class TestEmitAndEval:
    def test_emit_contains_protected_division(self, capsys):
        code, out, _ = run(capsys, "emit", "--expr", "(div x (add x z))")
        assert code == 0
        assert "pdiv(x, (x + z))" in out
        assert "gl_Position" in out

    def test_eval_constant(self, capsys):
        code, out, _ = run(capsys, "eval", "--expr", "(const 0.25)", "--at", "0,0,0,0")
        assert code == 0
        assert out.strip() == "0.25"

    def test_eval_sample_tree(self, capsys):
        code, out, _ = run(capsys, "eval", "--expr", "(div x (add x z))", "--at", "1,0,1,0")
        assert code == 0
        assert float(out) == 0.5

    def test_eval_bad_point_exits_2(self, capsys):
        code, _, err = run(capsys, "eval", "--expr", "x", "--at", "1,2,3")
        assert code == 2
        assert "error" in err

    def test_emit_bad_expression_exits_2(self, capsys):
        code, _, err = run(capsys, "emit", "--expr", "(")
        assert code == 2


class TestServeArgs:
    def test_bad_port_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["serve", "--port", "not-a-port"])
        assert exc.value.code == 2

    def test_out_of_range_port_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["serve", "--port", "70000"])
        assert exc.value.code == 2

    def test_unknown_command_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2


class TestOracleSelector:
    def test_picks_the_nearest_candidate(self):
        params = EvolutionParams(population_size=12, subset_size=4, seed=13)
        session = init_population(params)
        target = session.population[session.display[2]].expr
        oracle = OracleSelector(target, default_lattice())
        assert oracle.best_slot(session) == 2
        assert oracle.distances(session)[2] == 0.0

    def test_deterministic_given_candidates(self):
        params = EvolutionParams(population_size=12, subset_size=4, seed=13)
        session = init_population(params)
        oracle = OracleSelector(deserialize("(sin x)"), default_lattice())
        assert oracle.best_slot(session) == oracle.best_slot(session)
