"""CLI contract tests: exit codes, output formats, determinism, batch mode."""
import json

import pytest

from logq.cli import main
from logq.jsonio import dumps

S2_CONFIG = {"kind": "s2_family", "payload": {"n1": 0, "n2": 3}}

NOT_PROPER_CONFIG = {
    "kind": "toric",
    "payload": {
        "rank": 1,
        "components": ["A", "B"],
        "walls": [
            {"id": "w1", "residue": ["-1/1"], "joins": ["A", "B"]},
            {"id": "w2", "residue": ["1/1"], "joins": ["A", "B"]},
        ],
        "pieces": [
            {
                "component": "A",
                "region": {
                    "rank": 1,
                    "halfspaces": [
                        {"normal": ["1/1"], "offset": "0/1"},
                        {"normal": ["-1/1"], "offset": "-1/1"},
                    ],
                },
            }
        ],
        "strata": [["w1", "w2"]],
        "base_component": "A",
        "global_sign": 1,
    },
}

UNBOUNDED_CONFIG = {
    "kind": "toric",
    "payload": {
        "rank": 1,
        "components": ["A"],
        "walls": [],
        "pieces": [
            {
                "component": "A",
                "region": {"rank": 1, "halfspaces": [{"normal": ["1/1"], "offset": "0/1"}]},
            }
        ],
        "strata": [],
        "base_component": "A",
        "global_sign": 1,
    },
}


def square_config(side):
    return {
        "kind": "delzant",
        "payload": {
            "rank": 2,
            "halfspaces": [
                {"normal": ["1/1", "0/1"], "offset": "0/1"},
                {"normal": ["-1/1", "0/1"], "offset": f"{-side}/1"},
                {"normal": ["0/1", "1/1"], "offset": "0/1"},
                {"normal": ["0/1", "-1/1"], "offset": f"{-side}/1"},
            ],
        },
    }


def run(tmp_path, command, config, *extra):
    path = tmp_path / "job.json"
    path.write_text(dumps(config))
    return main([command, "--config", str(path), *extra])


def run_json(tmp_path, capsys, command, config, *extra):
    code = run(tmp_path, command, config, *extra)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestValidateCommand:
    def test_s2_passes(self, tmp_path, capsys):
        code, payload = run_json(tmp_path, capsys, "validate", S2_CONFIG)
        assert code == 0
        assert payload["ok"] is True

    def test_not_proper_exit_2(self, tmp_path, capsys):
        code, payload = run_json(tmp_path, capsys, "validate", NOT_PROPER_CONFIG)
        assert code == 2
        failing = [c for c in payload["checks"] if not c["passed"]]
        assert [c["name"] for c in failing] == ["properness"]

    def test_truncated_json_exit_3(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"kind": "s2_family", "payload": {"n1"')
        code = main(["validate", "--config", str(path)])
        assert code == 3
        assert json.loads(capsys.readouterr().out)["error"]["type"] == "MalformedConfig"

    def test_missing_config_exit_3(self, capsys):
        assert main(["validate"]) == 3

    def test_mincoupling_kind_not_toric(self, tmp_path, capsys):
        cfg = {"kind": "mincoupling", "payload": {"base_degree": 1, "fibre": {"rank": 1, "terms": []}}}
        assert run(tmp_path, "validate", cfg) == 3


class TestQuantizeCommand:
    def test_s2_table(self, tmp_path, capsys):
        code, payload = run_json(tmp_path, capsys, "quantize", S2_CONFIG)
        assert code == 0
        assert payload["terms"] == [
            {"weight": [0], "mult": 1},
            {"weight": [1], "mult": 1},
            {"weight": [2], "mult": 1},
        ]

    def test_unit_square_four_rows(self, tmp_path, capsys):
        code, payload = run_json(tmp_path, capsys, "quantize", square_config(1))
        assert code == 0
        assert len(payload["terms"]) == 4
        assert all(e["mult"] == 1 for e in payload["terms"])

    def test_unbounded_exit_4(self, tmp_path, capsys):
        code, payload = run_json(tmp_path, capsys, "quantize", UNBOUNDED_CONFIG)
        assert code == 4
        assert payload["error"]["type"] == "InfiniteSupport"

    def test_not_proper_exit_2(self, tmp_path, capsys):
        assert run(tmp_path, "quantize", NOT_PROPER_CONFIG) == 2

    def test_box_cap_flag(self, tmp_path, capsys):
        code, payload = run_json(
            tmp_path, capsys, "quantize", square_config(2), "--box-cap", "3"
        )
        assert code == 2
        assert payload["error"]["type"] == "SizeLimit"

    def test_box_cap_env(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("LOGQ_BOX_CAP", "3")
        assert run(tmp_path, "quantize", square_config(2)) == 2
        monkeypatch.setenv("LOGQ_BOX_CAP", "1000000")
        assert run(tmp_path, "quantize", square_config(2)) == 0


class TestQRCheckCommand:
    def test_s2_auto_terms(self, tmp_path, capsys):
        code, payload = run_json(tmp_path, capsys, "qr-check", S2_CONFIG)
        assert code == 0
        assert payload["agree"] is True

    def test_delzant_auto_terms(self, tmp_path, capsys):
        code, payload = run_json(tmp_path, capsys, "qr-check", square_config(2))
        assert code == 0
        assert payload["agree"] is True

    def test_tampered_terms_exit_5(self, tmp_path, capsys):
        cfg = dict(S2_CONFIG)
        cfg["fixed_terms"] = [
            {"sign": 1, "mu": [0], "weights": [[1]]},
            {"sign": -1, "mu": [4], "weights": [[1]]},
        ]
        code, payload = run_json(tmp_path, capsys, "qr-check", cfg)
        assert code == 5
        assert payload["agree"] is False
        diff = [
            row
            for row in payload["per_weight_table"]
            if row["lattice"] != row["fixed_point"]
        ]
        assert [row["weight"] for row in diff] == [[3]]

    def test_toric_kind_needs_terms(self, tmp_path, capsys):
        cfg = {
            "kind": "toric",
            "payload": json.loads(dumps(NOT_PROPER_CONFIG["payload"])),
        }
        cfg["payload"]["strata"] = [["w1"], ["w2"]]
        cfg["payload"]["pieces"] = []
        assert run(tmp_path, "qr-check", cfg) == 3

    def test_batch_mode(self, tmp_path, capsys):
        good = dict(S2_CONFIG)
        bad = {
            **S2_CONFIG,
            "fixed_terms": [
                {"sign": 1, "mu": [0], "weights": [[1]]},
                {"sign": -1, "mu": [4], "weights": [[1]]},
            ],
        }
        (tmp_path / "a_good.json").write_text(dumps(good))
        (tmp_path / "b_bad.json").write_text(dumps(bad))
        (tmp_path / "c_broken.json").write_text("{nope")
        code = main(["qr-check", "--batch", str(tmp_path)])
        out = json.loads(capsys.readouterr().out)
        assert code == 5
        assert out["overall_exit"] == 5
        by_file = {r["file"]: r for r in out["results"]}
        assert by_file["a_good.json"]["exit_code"] == 0
        assert by_file["b_bad.json"]["exit_code"] == 5
        assert by_file["c_broken.json"]["exit_code"] == 3


class TestMincouplingCommand:
    def test_degree_one_window(self, tmp_path, capsys):
        cfg = {
            "kind": "mincoupling",
            "payload": {
                "base_degree": 1,
                "fibre": {
                    "rank": 1,
                    "terms": [
                        {"weight": [0], "mult": 1},
                        {"weight": [1], "mult": 1},
                    ],
                },
            },
        }
        code, payload = run_json(tmp_path, capsys, "mincoupling", cfg)
        assert code == 0
        assert payload["terms"] == [{"j": 1, "mult": 1}, {"j": 2, "mult": 1}]

    def test_empty_fibre(self, tmp_path, capsys):
        cfg = {"kind": "mincoupling", "payload": {"base_degree": 1, "fibre": {"rank": 1, "terms": []}}}
        code, payload = run_json(tmp_path, capsys, "mincoupling", cfg)
        assert code == 0
        assert payload["terms"] == []

    def test_vanishing_line_bundle(self, tmp_path, capsys):
        cfg = {
            "kind": "mincoupling",
            "payload": {
                "base_degree": 1,
                "fibre": {"rank": 1, "terms": [{"weight": [-2], "mult": 1}]},
            },
        }
        code, payload = run_json(tmp_path, capsys, "mincoupling", cfg)
        assert code == 0
        assert payload["terms"] == []

    def test_wrong_kind_exit_3(self, tmp_path, capsys):
        assert run(tmp_path, "mincoupling", S2_CONFIG) == 3


class TestPrequantCommand:
    def test_s2_parameters(self, tmp_path, capsys):
        code, payload = run_json(tmp_path, capsys, "prequant", S2_CONFIG)
        assert code == 0
        assert payload["prequantizable"] is True
        assert payload["s2_params"]["n"] == 3
        assert payload["s2_params"]["a"] == "-0.905148253645"

    def test_half_integer_segment(self, tmp_path, capsys):
        cfg = {
            "kind": "delzant",
            "payload": {
                "rank": 1,
                "halfspaces": [
                    {"normal": ["1/1"], "offset": "1/2"},
                    {"normal": ["-1/1"], "offset": "-2/1"},
                ],
            },
        }
        code, payload = run_json(tmp_path, capsys, "prequant", cfg)
        assert code == 0
        assert payload["prequantizable"] is False

    def test_symmetric_family_a_zero(self, tmp_path, capsys):
        cfg = {"kind": "s2_family", "payload": {"n1": 2, "n2": 2}}
        code, payload = run_json(tmp_path, capsys, "prequant", cfg)
        assert code == 0
        assert float(payload["s2_params"]["a"]) == 0.0


class TestOutputContract:
    def test_default_format_is_json(self, tmp_path, capsys):
        run(tmp_path, "quantize", S2_CONFIG)
        out = capsys.readouterr().out
        json.loads(out)  # the whole stdout is one JSON document

    def test_both_format_has_fenced_json(self, tmp_path, capsys):
        run(tmp_path, "quantize", S2_CONFIG, "--format", "both")
        out = capsys.readouterr().out
        assert "```json" in out
        fenced = out.split("```json")[1].split("```")[0]
        assert json.loads(fenced)["terms"]

    def test_table_format(self, tmp_path, capsys):
        run(tmp_path, "quantize", S2_CONFIG, "--format", "table")
        out = capsys.readouterr().out
        assert "multiplicity" in out
        assert "dimension: 3" in out

    def test_quiet_suppresses_stdout(self, tmp_path, capsys):
        code = run(tmp_path, "quantize", S2_CONFIG, "--quiet")
        assert code == 0
        assert capsys.readouterr().out == ""

    def test_byte_stable_output(self, tmp_path, capsys):
        run(tmp_path, "qr-check", S2_CONFIG)
        first = capsys.readouterr().out
        run(tmp_path, "qr-check", S2_CONFIG)
        second = capsys.readouterr().out
        assert first == second

    def test_quantize_and_qr_check_report_same_lattice_character(self, tmp_path, capsys):
        for cfg in (S2_CONFIG, square_config(2)):
            _, quantized = run_json(tmp_path, capsys, "quantize", cfg)
            _, checked = run_json(tmp_path, capsys, "qr-check", cfg)
            assert checked["lattice_char"] == quantized

    def test_stdin_input(self, tmp_path, capsys, monkeypatch):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO(dumps(S2_CONFIG)))
        assert main(["quantize", "--stdin"]) == 0

    def test_format_from_config_options(self, tmp_path, capsys):
        cfg = {**S2_CONFIG, "options": {"output_format": "table"}}
        run(tmp_path, "quantize", cfg)
        out = capsys.readouterr().out
        assert "dimension: 3" in out
        with pytest.raises(json.JSONDecodeError):
            json.loads(out)
