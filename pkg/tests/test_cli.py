import json
import subprocess
import sys

import numpy as np
import pytest

from vsabench.cli import main
from vsabench.vsaf import feature_map_set, read_hypervectors, write_feature_file, write_hypervectors


@pytest.fixture()
def feature_file(tmp_path):
    rng = np.random.default_rng(0)
    fm = feature_map_set([
        ("conv1", rng.standard_normal((8, 8, 4))),
        ("conv2", rng.standard_normal((4, 4, 8))),
    ])
    path = tmp_path / "features.vsaf"
    write_feature_file(fm, path)
    return path


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEncode:
    def test_encode_round(self, feature_file, tmp_path, capsys):
        out = tmp_path / "hv.vsaf"
        code, stdout, _ = run_cli([
            "encode", "--features-in", str(feature_file), "--out", str(out),
            "--patch-sizes", "4,2", "--dim", "128", "--seed", "3",
        ], capsys)
        assert code == 0
        info = json.loads(stdout)
        assert info == {"patch_count": 4, "m": 96, "n": 128, "seed": 3}
        assert read_hypervectors(out).shape == (4, 128)

    def test_encode_deterministic(self, feature_file, tmp_path, capsys):
        outs = []
        for name in ("a.vsaf", "b.vsaf"):
            out = tmp_path / name
            code, _, _ = run_cli([
                "encode", "--features-in", str(feature_file), "--out", str(out),
                "--patch-sizes", "4,2", "--dim", "64", "--seed", "5",
            ], capsys)
            assert code == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_per_layer_norm_scope(self, feature_file, tmp_path, capsys):
        outs = {}
        for scope in ("vector", "per_layer"):
            out = tmp_path / f"{scope}.vsaf"
            code, _, _ = run_cli([
                "encode", "--features-in", str(feature_file), "--out", str(out),
                "--patch-sizes", "4,2", "--dim", "64", "--seed", "5",
                "--norm-scope", scope,
            ], capsys)
            assert code == 0
            outs[scope] = read_hypervectors(out)
        assert not np.array_equal(outs["vector"], outs["per_layer"])
        assert np.all(np.abs(outs["per_layer"]) <= 1.0)

    def test_mismatched_patch_spec_exit_3(self, feature_file, tmp_path, capsys):
        out = tmp_path / "hv.vsaf"
        code, stdout, stderr = run_cli([
            "encode", "--features-in", str(feature_file), "--out", str(out),
            "--patch-sizes", "4,4", "--dim", "64",
        ], capsys)
        assert code == 3
        assert "conv2" in stderr
        assert not out.exists()

    def test_bad_magic_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.vsaf"
        bad.write_bytes(b"JUNKJUNKJUNK")
        code, _, _ = run_cli([
            "encode", "--features-in", str(bad), "--out", str(tmp_path / "o.vsaf"),
            "--patch-sizes", "4",
        ], capsys)
        assert code == 2

    def test_missing_args_exit_1(self, capsys):
        code, _, _ = run_cli(["encode"], capsys)
        assert code == 1


class TestMap:
    def test_paired_identity_mapping(self, tmp_path, capsys):
        hvs = np.random.default_rng(1).integers(0, 2, size=(3, 64)).astype(np.float64) * 2 - 1
        src = tmp_path / "src.vsaf"
        write_hypervectors(hvs, src)
        out = tmp_path / "u.vsaf"
        code, stdout, _ = run_cli([
            "map", "--src", str(src), "--tgt", str(src), "--out", str(out),
            "--mode", "paired",
        ], capsys)
        assert code == 0
        assert json.loads(stdout)["patch_count"] == 3
        np.testing.assert_array_equal(read_hypervectors(out), np.ones((3, 64)))

    def test_paired_bipolar_reproduces_target(self, tmp_path, capsys):
        rng = np.random.default_rng(2)
        src = rng.integers(0, 2, size=(4, 128)).astype(np.float64) * 2 - 1
        tgt = rng.integers(0, 2, size=(4, 128)).astype(np.float64) * 2 - 1
        sp, tp, up = tmp_path / "s.vsaf", tmp_path / "t.vsaf", tmp_path / "u.vsaf"
        write_hypervectors(src, sp)
        write_hypervectors(tgt, tp)
        code, _, _ = run_cli(["map", "--src", str(sp), "--tgt", str(tp), "--out", str(up)], capsys)
        assert code == 0
        u = read_hypervectors(up)
        np.testing.assert_array_equal(src * u, tgt)

    def test_random_mode_deterministic(self, tmp_path, capsys):
        src = tmp_path / "s.vsaf"
        write_hypervectors(np.ones((2, 32)), src)
        blobs = []
        for name in ("u1.vsaf", "u2.vsaf"):
            out = tmp_path / name
            code, _, _ = run_cli([
                "map", "--src", str(src), "--out", str(out), "--mode", "random", "--seed", "9",
            ], capsys)
            assert code == 0
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1]


class TestLoss:
    def test_identical_files_zero_vsa(self, tmp_path, capsys):
        hvs = np.random.default_rng(3).standard_normal((3, 64))
        p = tmp_path / "x.vsaf"
        write_hypervectors(hvs, p)
        code, stdout, _ = run_cli(["loss", "--x", str(p), "--cycled", str(p)], capsys)
        assert code == 0
        metrics = json.loads(stdout)
        assert metrics["vsa"] == pytest.approx(0.0, abs=1e-6)
        assert metrics["config"]["lambda"] == 10.0

    def test_lambda_zero_total_equals_gan(self, tmp_path, capsys):
        hvs = np.random.default_rng(4).standard_normal((2, 32))
        xp, cp = tmp_path / "x.vsaf", tmp_path / "c.vsaf"
        write_hypervectors(hvs, xp)
        write_hypervectors(-hvs, cp)
        scores = {}
        for name, vals in (("r", [0.5, 1.5]), ("ft", [-0.5]), ("fm", [0.2])):
            sp = tmp_path / f"{name}.json"
            sp.write_text(json.dumps(vals))
            scores[name] = str(sp)
        code, stdout, _ = run_cli([
            "loss", "--x", str(xp), "--cycled", str(cp), "--lambda", "0",
            "--scores-real", scores["r"], "--scores-fake-translated", scores["ft"],
            "--scores-fake-mapped", scores["fm"], "--variant", "hinge",
        ], capsys)
        assert code == 0
        metrics = json.loads(stdout)
        assert metrics["total"] == pytest.approx(metrics["gan_g"])
        assert metrics["vsa"] == pytest.approx(2.0)

    def test_zero_vector_exit_2_with_index(self, tmp_path, capsys):
        hvs = np.ones((2, 16))
        hvs[1] = 0.0
        p = tmp_path / "x.vsaf"
        write_hypervectors(hvs, p)
        code, _, stderr = run_cli(["loss", "--x", str(p), "--cycled", str(p)], capsys)
        assert code == 2
        assert "[1]" in stderr


class TestBench:
    def test_two_rows(self, capsys):
        code, stdout, _ = run_cli([
            "bench", "--axis", "dim", "--grid", "128,512", "--trials", "5", "--seed", "1",
        ], capsys)
        assert code == 0
        lines = stdout.strip().split("\n")
        assert len(lines) == 3
        assert lines[0].startswith("axis,value,dim,k,mapping,")

    def test_same_seed_identical_csv_bytes(self, tmp_path, capsys):
        blobs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            code, _, _ = run_cli([
                "bench", "--axis", "dim", "--grid", "128,512", "--trials", "5",
                "--seed", "2", "--out", str(out),
            ], capsys)
            assert code == 0
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1]

    def test_config_file_with_flag_override(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"axis": "k", "grid": "1,2", "trials": 5, "seed": 3, "dim": 256}))
        code, stdout, _ = run_cli(["bench", "--config", str(cfg), "--trials", "4"], capsys)
        assert code == 0
        rows = stdout.strip().split("\n")[1:]
        assert all(row.split(",")[0] == "k" for row in rows)
        assert all(row.split(",")[5] == "4" for row in rows)

    def test_env_seed_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("VSAIT_SEED", "17")
        code, stdout, _ = run_cli([
            "bench", "--axis", "dim", "--grid", "128", "--trials", "3",
        ], capsys)
        assert code == 0
        assert stdout.strip().split("\n")[1].endswith(",17")


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "vsabench.cli", "bench", "--axis", "dim",
         "--grid", "128", "--trials", "2", "--seed", "0"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("axis,value,dim,")


def test_no_subcommand_exit_1(capsys):
    assert main([]) == 1
