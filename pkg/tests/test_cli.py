import json

import pytest

from horadam import catalog
from horadam.catalog import Identity
from horadam.cli import main

GOLDEN_EVAL = (
    '{"command":"eval","kind":"u","method":"iterative","n":10,'
    '"params":{"a":"0","b":"1","p":"1","q":"-1"},"schema_version":1,"value":"55"}\n'
)
GOLDEN_VERIFY = (
    '{"command":"verify","params":{"a":"0","b":"1","p":"1","q":"-1"},'
    '"report":{"assignment":{"m":3,"n":1,"r":2,"s":0},"equal":true,"error":null,'
    '"identity":"H","lhs":"3","rhs":"3"},"schema_version":1}\n'
)
GOLDEN_FUZZ = (
    '{"all_passed":true,"bound":9,"command":"fuzz",'
    '"identities":[{"counterexample":null,"identity":"H","passes":3,"trials":3},'
    '{"counterexample":null,"identity":"mul.16","passes":3,"trials":3}],'
    '"max_index":5,"schema_version":1,"seed":7,"trials":3}\n'
)
GOLDEN_SUM = (
    '{"command":"sum","params":{"a":"0","b":"1","p":"1","q":"-1"},'
    '"report":{"assignment":{"k":1,"m":2,"n":9,"r":1,"s":0},"closed_form":"123",'
    '"direct_sum":"123","equal":true,"kind":"w","lemma_engine":"123","notes":[],'
    '"theorem":5,"variant":1},"schema_version":1}\n'
)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGolden:
    def test_eval_bytes(self, capsys):
        code, out, err = run(capsys, ["eval", "--preset", "fibonacci",
                                      "--kind", "u", "--n", "10", "--json"])
        assert (code, err) == (0, "")
        assert out == GOLDEN_EVAL

    def test_verify_bytes(self, capsys):
        code, out, err = run(capsys, ["verify", "--id", "H", "--preset", "fibonacci",
                                      "--assign", "n=1,m=3,r=2,s=0", "--json"])
        assert (code, err) == (0, "")
        assert out == GOLDEN_VERIFY

    def test_fuzz_bytes(self, capsys):
        argv = ["fuzz", "--ids", "H,mul.16", "--trials", "3", "--seed", "7",
                "--max-index", "5", "--json"]
        code, out, err = run(capsys, argv)
        assert (code, err) == (0, "")
        assert out == GOLDEN_FUZZ

    def test_sum_bytes(self, capsys):
        argv = ["sum", "--theorem", "5", "--variant", "1", "--preset", "fibonacci",
                "--assign", "n=9,m=2,r=1,s=0,k=1", "--json"]
        code, out, err = run(capsys, argv)
        assert (code, err) == (0, "")
        assert out == GOLDEN_SUM

    def test_repeat_runs_byte_identical(self, capsys):
        argv = ["fuzz", "--ids", "all", "--trials", "2", "--seed", "123", "--json"]
        _, first, _ = run(capsys, argv)
        _, second, _ = run(capsys, argv)
        assert first == second
        assert json.loads(first)["all_passed"] is True


class TestEval:
    def test_plain_value(self, capsys):
        code, out, _ = run(capsys, ["eval", "--preset", "fibonacci",
                                    "--kind", "u", "--n", "10"])
        assert code == 0 and out == "55\n"

    def test_lucas_v0(self, capsys):
        code, out, _ = run(capsys, ["eval", "--preset", "fibonacci",
                                    "--kind", "v", "--n", "0"])
        assert code == 0 and out == "2\n"

    def test_methods_agree(self, capsys):
        values = {}
        for method in ("iterative", "doubling", "binet"):
            code, out, _ = run(capsys, ["eval", "--preset", "pell", "--kind", "u",
                                        "--n", "12", "--method", method])
            assert code == 0
            values[method] = out
        assert len(set(values.values())) == 1

    def test_negative_rational_flags(self, capsys):
        code, out, _ = run(capsys, ["eval", "--p", "1/2", "--q=-3/7", "--a", "2",
                                    "--b=-5/3", "--kind", "w", "--n", "-4"])
        assert code == 0 and out == "29645/486\n"


class TestExitCodes:
    def test_degenerate_root_is_3(self, capsys):
        code, _, err = run(capsys, ["eval", "--p", "2", "--q", "1", "--kind", "u",
                                    "--n", "5", "--method", "binet"])
        assert code == 3 and "p^2 - 4q" in err

    def test_unknown_identity_is_2(self, capsys):
        code, _, err = run(capsys, ["verify", "--id", "nosuch",
                                    "--preset", "fibonacci", "--assign", "n=1"])
        assert code == 2 and "nosuch" in err

    def test_singular_summand_is_5(self, capsys):
        code, _, err = run(capsys, ["sum", "--theorem", "5", "--variant", "1",
                                    "--preset", "fibonacci",
                                    "--assign", "n=2,m=2,r=1,s=0,k=2"])
        assert code == 5 and "denominator" in err

    def test_guard_violation_is_6(self, capsys):
        code, _, err = run(capsys, ["sum", "--theorem", "2", "--variant", "1",
                                    "--preset", "fibonacci",
                                    "--assign", "n=4,m=2,r=1,s=1,k=2"])
        assert code == 6 and "guard" in err

    def test_composite_modulus_is_2(self, capsys):
        code, _, err = run(capsys, ["bench", "--n", "100", "--mod", "10"])
        assert code == 2 and "not prime" in err

    def test_bad_arguments_are_2(self, capsys):
        assert run(capsys, ["eval", "--kind", "u", "--n", "1"])[0] == 2  # no params
        assert run(capsys, ["eval", "--preset", "fibonacci", "--p", "1", "--q", "1",
                            "--kind", "u", "--n", "1"])[0] == 2  # two sources
        assert run(capsys, ["eval", "--preset", "nosuch",
                            "--kind", "u", "--n", "1"])[0] == 2
        assert run(capsys, ["nosuchcommand"])[0] == 2

    def test_verify_inequality_is_4(self, capsys, monkeypatch):
        broken = Identity(key="broken", tag="x", variables=("n",),
                          lhs=lambda t, n: t.u(n),
                          rhs=lambda t, n: t.u(n) + 1,
                          formula="u(n) = u(n) + 1")
        registry = dict(catalog.REGISTRY)
        registry["broken"] = broken
        monkeypatch.setattr(catalog, "REGISTRY", registry)
        code, out, _ = run(capsys, ["verify", "--id", "broken",
                                    "--preset", "fibonacci", "--assign", "n=2"])
        assert code == 4
        code, out, _ = run(capsys, ["fuzz", "--ids", "broken", "--trials", "2",
                                    "--seed", "1", "--json"])
        assert code == 4
        assert json.loads(out)["all_passed"] is False

    def test_success_paths_keep_stderr_clean(self, capsys):
        for argv in (
            ["eval", "--preset", "fibonacci", "--kind", "u", "--n", "5"],
            ["verify", "--id", "H", "--preset", "fibonacci",
             "--assign", "n=1,m=3,r=2,s=0"],
            ["fuzz", "--ids", "H", "--trials", "1", "--seed", "1"],
            ["bench", "--n", "64", "--mod", "97"],
        ):
            _, _, err = run(capsys, argv)
            assert err == ""


class TestSumCommand:
    def test_guarded_k0_note_present(self, capsys):
        code, out, _ = run(capsys, ["sum", "--theorem", "2", "--variant", "1",
                                    "--preset", "fibonacci", "--a", "3", "--b", "2",
                                    "--assign", "n=4,m=2,r=1,s=0,k=0", "--json"])
        assert code == 0
        notes = json.loads(out)["report"]["notes"]
        assert notes and "outside the stated hypothesis" in notes[0]

    def test_scan_mode(self, capsys):
        code, out, _ = run(capsys, ["sum", "--theorem", "5", "--variant", "1",
                                    "--preset", "fibonacci",
                                    "--assign", "n=2,m=2,r=1,s=0,k=2", "--scan",
                                    "--json"])
        assert code == 0  # scanning is diagnostic, not an error
        doc = json.loads(out)
        assert doc["safe"] is False
        assert any(e["zero"] and e["index"] == 0 for e in doc["scan"])

    def test_kind_specialization(self, capsys):
        argv = ["sum", "--theorem", "4", "--variant", "3", "--kind", "u",
                "--preset", "pell", "--assign", "n=5,m=3,r=2,s=1,k=2", "--json"]
        code, out, _ = run(capsys, argv)
        assert code == 0 and json.loads(out)["report"]["equal"] is True


class TestPresets:
    def test_preset_file(self, tmp_path, capsys):
        preset = tmp_path / "custom.preset"
        preset.write_text("# golden-ratio-free example\np=3\nq=2\na=1\nb=4\n")
        code, out, _ = run(capsys, ["eval", "--preset-file", str(preset),
                                    "--kind", "w", "--n", "5"])
        assert code == 0
        # w follows w_n = 3 w_{n-1} - 2 w_{n-2} from (1, 4)
        w = [1, 4]
        for _ in range(4):
            w.append(3 * w[-1] - 2 * w[-2])
        assert out.strip() == str(w[5])

    def test_preset_dir_env(self, tmp_path, capsys, monkeypatch):
        (tmp_path / "mine.preset").write_text("p=1\nq=-1\na=3\nb=2\n")
        monkeypatch.setenv("HORADAM_PRESETS", str(tmp_path))
        code, out, _ = run(capsys, ["eval", "--preset", "mine",
                                    "--kind", "w", "--n", "4"])
        assert code == 0 and out == "12\n"

    def test_ab_override(self, capsys):
        code, out, _ = run(capsys, ["eval", "--preset", "fibonacci", "--a", "3",
                                    "--b", "2", "--kind", "w", "--n", "4"])
        assert code == 0 and out == "12\n"

    def test_bad_preset_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.preset"
        bad.write_text("p=1\n")  # q missing
        code, _, err = run(capsys, ["eval", "--preset-file", str(bad),
                                    "--kind", "u", "--n", "1"])
        assert code == 2 and "missing" in err

    def test_builtin_presets(self, capsys):
        for name, expect in (("fibonacci", "55"), ("lucas", "123"), ("pell", "2378")):
            code, out, _ = run(capsys, ["eval", "--preset", name,
                                        "--kind", "w", "--n", "10"])
            assert code == 0 and out.strip() == expect


class TestBench:
    def test_modular_bench_matches(self, capsys):
        code, out, _ = run(capsys, ["bench", "--p", "1", "--q", "-1", "--n", "5000",
                                    "--mod", "1000000007", "--json"])
        assert code == 0
        doc = json.loads(out)
        assert doc["results_match"] is True
        assert doc["doubling_steps"] < doc["iterative_steps"]

    def test_exact_bench_small_n(self, capsys):
        code, out, _ = run(capsys, ["bench", "--n", "1", "--json"])
        assert code == 0
        doc = json.loads(out)
        assert doc["results_match"] is True and doc["u"] == "1"

    def test_bench_value_cross_check(self, capsys):
        # modular result must reduce the exact value
        code, out, _ = run(capsys, ["bench", "--n", "200", "--mod", "97", "--json"])
        doc = json.loads(out)
        from horadam.sequences import PRESETS, SequenceKind, term
        exact = term(PRESETS["fibonacci"], SequenceKind.U, 200)
        assert int(doc["u"]) == exact.numerator % 97
