import numpy as np
import pytest

from udisc.cli import main
from udisc.discriminator import Povm
from udisc.io import write_density, write_povm, write_states
from udisc.tensor_algebra import SubsystemLayout


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_kv(out):
    pairs = {}
    for line in out.strip().splitlines():
        key, _, value = line.partition("=")
        pairs[key.strip()] = value.strip()
    return pairs


def orthonormal_pair_file(tmp_path, m=3):
    path = tmp_path / "pair.txt"
    write_states(path, np.eye(m, dtype=complex)[:2])
    return str(path)


def leaky_povm_file(tmp_path):
    dim = 8
    eye = np.eye(dim, dtype=complex)
    povm = Povm(m=2, n=2, elements=(eye / 2, eye / 2, np.zeros((dim, dim), dtype=complex)),
                layout=SubsystemLayout.uniform(2, 3))
    path = tmp_path / "leaky.povm"
    write_povm(path, povm)
    return str(path)


class TestBuild:
    def test_universal_prints_c(self, tmp_path, capsys):
        out_file = str(tmp_path / "u.povm")
        code, out, _ = run(capsys, "build", "--m", "3", "--n", "2",
                           "--family", "universal", "--out", out_file)
        assert code == 0
        assert "c = 0.5" in out
        assert "elements = 3" in out and "dim = 27" in out

    def test_optimal_prints_c(self, tmp_path, capsys):
        out_file = str(tmp_path / "o.povm")
        code, out, _ = run(capsys, "build", "--m", "2", "--n", "2",
                           "--family", "optimal", "--out", out_file)
        assert code == 0
        assert "c = 0.666666666667" in out

    def test_wrong_regime_exits_2(self, tmp_path, capsys):
        code, _, err = run(capsys, "build", "--m", "2", "--n", "3",
                           "--family", "universal", "--out", str(tmp_path / "x.povm"))
        assert code == 2
        assert "m > n" in err

    def test_cap_exceeded_exits_2(self, tmp_path, capsys):
        code, _, err = run(capsys, "build", "--m", "3", "--n", "2", "--family", "universal",
                           "--out", str(tmp_path / "x.povm"), "--cap", "256")
        assert code == 2
        assert "exceeds" in err


class TestVerify:
    @pytest.mark.parametrize(
        "m,n,family",
        [(2, 2, "optimal"), (3, 3, "optimal"), (3, 2, "universal"),
         (4, 3, "universal"), (3, 2, "trivial")],
    )
    def test_round_trip_passes(self, tmp_path, capsys, m, n, family):
        povm_file = str(tmp_path / "p.povm")
        code, _, _ = run(capsys, "build", "--m", str(m), "--n", str(n),
                         "--family", family, "--out", povm_file)
        assert code == 0
        code, out, _ = run(capsys, "verify", povm_file, "--trials", "3")
        assert code == 0
        assert "verdict = pass" in out

    def test_leaky_file_fails(self, tmp_path, capsys):
        code, out, _ = run(capsys, "verify", leaky_povm_file(tmp_path), "--trials", "1")
        assert code == 1
        assert "verdict = fail" in out
        leakage = [line for line in out.splitlines() if line.startswith("leakage_1")]
        assert float(leakage[0].split("=")[1]) > 1e-3

    def test_truncated_file_exits_2(self, tmp_path, capsys):
        povm_file = str(tmp_path / "p.povm")
        run(capsys, "build", "--m", "3", "--n", "2", "--family", "universal", "--out", povm_file)
        content = open(povm_file).read().splitlines()
        with open(povm_file, "w") as fh:
            fh.write("\n".join(content[:10]) + "\n")
        code, _, err = run(capsys, "verify", povm_file)
        assert code == 2
        assert "error:" in err


class TestProb:
    def test_orthonormal_pair_universal(self, tmp_path, capsys):
        code, out, _ = run(capsys, "prob", orthonormal_pair_file(tmp_path),
                           "--family", "universal")
        assert code == 0
        assert "p_analytic = 0.25" in out
        assert "p_operational = 0.25" in out
        assert "p_s = 1" in out
        assert "bound_lower = 0.25" in out and "bound_upper = 0.25" in out

    def test_pair_with_overlap(self, tmp_path, capsys):
        states = np.array([[1, 0, 0], [0.6, 0.8, 0]], dtype=complex)
        path = tmp_path / "overlap.txt"
        write_states(path, states)
        code, out, _ = run(capsys, "prob", str(path), "--family", "universal")
        assert code == 0
        assert "p_analytic = 0.16" in out

    def test_optimal_family_needs_square_regime(self, tmp_path, capsys):
        code, _, err = run(capsys, "prob", orthonormal_pair_file(tmp_path),
                           "--family", "optimal")
        assert code == 2
        assert "m = n" in err

    def test_dependent_triple_warns(self, tmp_path, capsys):
        states = np.array(
            [[1, 0, 0, 0], [0, 1, 0, 0],
             [1 / np.sqrt(2), 1 / np.sqrt(2), 0, 0]], dtype=complex)
        path = tmp_path / "dep.txt"
        write_states(path, states)
        code, out, err = run(capsys, "prob", str(path), "--family", "universal")
        assert code == 0
        assert "linearly dependent" in err
        assert "p_analytic = 0" in out


class TestSample:
    def test_forbidden_outcome_never_fires(self, tmp_path, capsys):
        code, out, _ = run(capsys, "sample", orthonormal_pair_file(tmp_path),
                           "--which", "1", "--shots", "20000", "--seed", "4")
        assert code == 0
        assert "count_2 = 0" in out
        freq = [line for line in out.splitlines() if line.startswith("freq_1")]
        assert abs(float(freq[0].split("=")[1]) - 0.25) < 0.01  # ~3 se at 20k shots

    def test_seed_repeatability(self, tmp_path, capsys):
        pair = orthonormal_pair_file(tmp_path)
        _, out1, _ = run(capsys, "sample", pair, "--which", "1", "--shots", "5000", "--seed", "7")
        _, out2, _ = run(capsys, "sample", pair, "--which", "1", "--shots", "5000", "--seed", "7")
        assert out1 == out2

    def test_auto_family_matches_regime(self, tmp_path, capsys):
        path = tmp_path / "pair22.txt"
        write_states(path, np.eye(2, dtype=complex))
        code, out, _ = run(capsys, "sample", str(path), "--which", "1", "--shots", "100")
        assert code == 0
        assert "family = optimal" in out


class TestMixed:
    def test_orthogonal_pair(self, tmp_path, capsys):
        r1, r2 = str(tmp_path / "r1.txt"), str(tmp_path / "r2.txt")
        write_density(r1, np.diag([1.0, 0.0]).astype(complex))
        write_density(r2, np.diag([0.0, 1.0]).astype(complex))
        code, out, _ = run(capsys, "mixed", r1, r2, "--data", "1", "--shots", "2000")
        assert code == 0
        assert "discriminable = true" in out
        assert "part_prob_2 = 0" in out
        assert "bounds = pass" in out
        assert "count_part_2 = 0" in out

    def test_half_mixed_not_discriminable(self, tmp_path, capsys):
        r1, r2 = str(tmp_path / "r1.txt"), str(tmp_path / "r2.txt")
        write_density(r1, np.eye(2) / 2)
        write_density(r2, np.diag([1.0, 0.0]).astype(complex))
        code, out, _ = run(capsys, "mixed", r1, r2, "--data", "1", "--shots", "1000")
        assert code == 1
        assert "core_trace_2 = 0" in out
        assert "discriminable = false" in out

    def test_identical_densities(self, tmp_path, capsys):
        r1, r2 = str(tmp_path / "r1.txt"), str(tmp_path / "r2.txt")
        write_density(r1, np.diag([1.0, 0.0]).astype(complex))
        write_density(r2, np.diag([1.0, 0.0]).astype(complex))
        code, out, err = run(capsys, "mixed", r1, r2, "--data", "1")
        assert code == 1
        assert "discriminable = false" in out
        assert "fewer than two" in err

    def test_near_degenerate_program(self, tmp_path, capsys):
        eps = 1e-7
        a = np.array([1.0, 0.0], dtype=complex)
        b = np.array([np.cos(eps), np.sin(eps)], dtype=complex)
        r1, r2 = str(tmp_path / "r1.txt"), str(tmp_path / "r2.txt")
        write_density(r1, np.outer(a, a.conj()))
        write_density(r2, np.outer(b, b.conj()))
        code, out, err = run(capsys, "mixed", r1, r2, "--data", "1")
        assert code == 1
        assert "program = not_independent" in out
        assert "independent" in err

    def test_bad_data_index(self, tmp_path, capsys):
        r1, r2 = str(tmp_path / "r1.txt"), str(tmp_path / "r2.txt")
        write_density(r1, np.diag([1.0, 0.0]).astype(complex))
        write_density(r2, np.diag([0.0, 1.0]).astype(complex))
        code, _, err = run(capsys, "mixed", r1, r2, "--data", "5")
        assert code == 2


class TestMachineMode:
    def test_kv_matches_text_numbers(self, tmp_path, capsys):
        pair = orthonormal_pair_file(tmp_path)
        _, text_out, _ = run(capsys, "prob", pair, "--family", "universal")
        _, kv_out, _ = run(capsys, "prob", pair, "--family", "universal", "--format", "kv")
        text_pairs = {}
        for line in text_out.strip().splitlines():
            key, _, value = line.partition(" = ")
            text_pairs[key] = value
        kv_pairs = parse_kv(kv_out)
        assert text_pairs == kv_pairs
        assert "=" in kv_out and " = " not in kv_out

    def test_kv_one_pair_per_line(self, tmp_path, capsys):
        out_file = str(tmp_path / "u.povm")
        _, out, _ = run(capsys, "build", "--m", "3", "--n", "2", "--family", "universal",
                        "--out", out_file, "--format", "kv")
        for line in out.strip().splitlines():
            assert line.count("=") == 1


class TestEnvironmentCap:
    def test_env_cap_applies(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("UDISC_CAP", "256")
        code, _, err = run(capsys, "build", "--m", "3", "--n", "2",
                           "--family", "universal", "--out", str(tmp_path / "x.povm"))
        assert code == 2
        assert "exceeds" in err

    def test_env_cap_invalid(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("UDISC_CAP", "many")
        code, _, err = run(capsys, "build", "--m", "3", "--n", "2",
                           "--family", "universal", "--out", str(tmp_path / "x.povm"))
        assert code == 2
        assert "UDISC_CAP" in err

    def test_flag_overrides_env(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("UDISC_CAP", "256")
        code, _, _ = run(capsys, "build", "--m", "3", "--n", "2", "--family", "universal",
                         "--out", str(tmp_path / "ok.povm"), "--cap", str(2**24))
        assert code == 0
