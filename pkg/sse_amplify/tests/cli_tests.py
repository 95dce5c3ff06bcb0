import pytest

from sse_amplify.main import cli
from sse_amplify.schemas import Verdict
from sse_amplify.services import GraphService
from sse_amplify.utils import CorpusUtils
from sse_amplify.utils.constants import EXIT_CODES


def run(runner, *args):
    return runner.invoke(cli, [str(a) for a in args])


def test_amplify_writes_degree_preserving_graph(runner, repository, data_dir, tmp_path, parse_records):
    out = tmp_path / "g8.el"
    result = run(runner, "amplify", "--in", data_dir / "c6.el", "--t", 8, "--out", out,
                 "--format", "records")
    assert result.exit_code == 0, result.output
    report = parse_records(result.output, "amplify")[0]
    assert report["t"] == "8"
    assert report["squarings"] == "3"

    source = repository.read_edge_list(data_dir / "c6.el")
    powered = repository.read_edge_list(out, allow_loops=True)
    assert powered.degrees == pytest.approx(source.degrees, rel=1e-9)


def test_amplify_from_epsilon(runner, data_dir, parse_records):
    result = run(runner, "amplify", "--in", data_dir / "c6.el", "--epsilon", 0.01,
                 "--f-scale", 1, "--f-exp", 0.3333, "--format", "records")
    assert result.exit_code == 0, result.output
    assert parse_records(result.output, "amplify")[0]["t"] == "1379"
    assert float(parse_records(result.output, "amplify")[0]["soundnessFigure"]) >= 0.5
    assert parse_records(result.output, "config")[0]["t"] == "1379"


def test_amplify_completeness_report(runner, data_dir, parse_records):
    result = run(runner, "amplify", "--in", data_dir / "barbell5.el", "--t", 4,
                 "--set", "0 1 2 3 4", "--delta", 0.25, "--format", "records")
    assert result.exit_code == 0, result.output
    report = parse_records(result.output, "amplify")[0]
    assert float(report["amplifiedExpansion"]) <= float(report["completenessBound"])
    assert report["soundnessFloor"] != "none"


def test_amplify_zero_steps(runner, data_dir):
    result = run(runner, "amplify", "--in", data_dir / "c6.el", "--t", 0)
    assert result.exit_code == EXIT_CODES["INVALID_PARAMETERS"]
    assert "InvalidStepCountError" in result.output


def test_amplify_needs_length(runner, data_dir):
    result = run(runner, "amplify", "--in", data_dir / "c6.el")
    assert result.exit_code == EXIT_CODES["USAGE"]


def test_profile_cycle(runner, data_dir, parse_records):
    result = run(runner, "profile", "--in", data_dir / "c6.el", "--delta", "1/3",
                 "--delta", 0.5, "--format", "records")
    assert result.exit_code == 0, result.output
    first, second = parse_records(result.output, "profile")
    assert float(first["phi"]) == 0.5
    assert first["setMembers"] == "0,1"
    assert first["exact"] == "true"
    assert float(second["phi"]) == pytest.approx(1 / 3)


def test_profile_full_delta(runner, data_dir, parse_records):
    result = run(runner, "profile", "--in", data_dir / "barbell5.el", "--delta", 1.0,
                 "--format", "records")
    record = parse_records(result.output, "profile")[0]
    assert float(record["phi"]) == pytest.approx(1 / 21)


def test_profile_over_cap(runner, graph_service, repository, tmp_path):
    path = tmp_path / "c100.el"
    repository.write_edge_list(CorpusUtils.cycle_graph(graph_service, 100), path)
    result = run(runner, "profile", "--in", path, "--delta", 0.1)
    assert result.exit_code == EXIT_CODES["ORACLE_CAP"]


def test_profile_heuristic_on_large_graph(runner, graph_service, repository, tmp_path, parse_records):
    path = tmp_path / "c100.el"
    repository.write_edge_list(CorpusUtils.cycle_graph(graph_service, 100), path)
    result = run(runner, "profile", "--in", path, "--delta", 0.1, "--heuristic",
                 "--format", "records")
    assert result.exit_code == 0, result.output
    assert parse_records(result.output, "profile")[0]["exact"] == "false"


def test_exact_cap_flag(runner, data_dir):
    result = run(runner, "profile", "--in", data_dir / "c6.el", "--delta", 0.5, "--exact-cap", 4)
    assert result.exit_code == EXIT_CODES["ORACLE_CAP"]


def test_exact_cap_env(runner, data_dir, monkeypatch):
    monkeypatch.setenv("SSE_AMPLIFY_EXACT_CAP", "4")
    result = run(runner, "profile", "--in", data_dir / "c6.el", "--delta", 0.5)
    assert result.exit_code == EXIT_CODES["ORACLE_CAP"]


def test_classify(runner, data_dir, parse_records):
    result = run(runner, "classify", "--in", data_dir / "two_triangles.el", "--delta", 0.5,
                 "--c", 0.9, "--s", 0.1, "--variant", "sse", "--format", "records")
    assert result.exit_code == 0, result.output
    assert parse_records(result.output, "classify")[0]["verdict"] == "CompletenessHolds"


def test_classify_invalid_gap(runner, data_dir):
    result = run(runner, "classify", "--in", data_dir / "c6.el", "--delta", 0.5,
                 "--c", 0.2, "--s", 0.4)
    assert result.exit_code == EXIT_CODES["INVALID_PARAMETERS"]


def test_classify_unknown_variant(runner, data_dir):
    result = run(runner, "classify", "--in", data_dir / "c6.el", "--delta", 0.5,
                 "--c", 0.9, "--s", 0.4, "--variant", "sse-star")
    assert result.exit_code == EXIT_CODES["USAGE"]


def test_classify_soundness_on_clique(runner, data_dir, parse_records):
    result = run(runner, "classify", "--in", data_dir / "k12.el", "--delta", "1/12",
                 "--c", 0.9, "--s", 0.5, "--format", "records")
    assert result.exit_code == 0, result.output
    assert parse_records(result.output, "classify")[0]["verdict"] == "SoundnessHolds"


def test_classify_rejects_forged_witness(runner, data_dir, monkeypatch):
    original = GraphService.classify_instance

    def forged(self, *args, **kwargs):
        verdict = original(self, *args, **kwargs)
        return verdict.model_copy(update={"completeness_phi": verdict.completeness_phi + 0.05})

    monkeypatch.setattr(GraphService, "classify_instance", forged)
    result = run(runner, "classify", "--in", data_dir / "two_triangles.el", "--delta", 0.5,
                 "--c", 0.9, "--s", 0.1)
    assert result.exit_code == EXIT_CODES["VERIFICATION_FAILED"]


def test_classify_rejects_inconsistent_verdict(runner, data_dir, monkeypatch):
    original = GraphService.classify_instance

    def flipped(self, *args, **kwargs):
        verdict = original(self, *args, **kwargs)
        return verdict.model_copy(update={"verdict": Verdict.SOUNDNESS_HOLDS, "witness": None})

    monkeypatch.setattr(GraphService, "classify_instance", flipped)
    result = run(runner, "classify", "--in", data_dir / "two_triangles.el", "--delta", 0.5,
                 "--c", 0.9, "--s", 0.1)
    assert result.exit_code == EXIT_CODES["VERIFICATION_FAILED"]


def test_extract_certificate(runner, data_dir, parse_records):
    result = run(runner, "extract", "--in", data_dir / "two_k8.el", "--set", "0 1 2 3 4 5 6 7",
                 "--t", 16, "--eta", 0.5, "--beta", 0.5, "--format", "records")
    assert result.exit_code == 0, result.output
    certificate = parse_records(result.output, "certificate")[0]
    assert float(certificate["expansion"]) < 0.5
    assert float(certificate["volume"]) <= float(certificate["volumeBound"])
    for key in ("stepIndex", "theta", "betaHat", "ratios", "setMembers"):
        assert key in certificate


def test_extract_premise_unmet(runner, data_dir, parse_records):
    result = run(runner, "extract", "--in", data_dir / "k12.el", "--set", "0", "--t", 16,
                 "--eta", 0.5, "--beta", 0.1, "--format", "records")
    assert result.exit_code == EXIT_CODES["NEGATIVE_ANSWER"]
    assert parse_records(result.output, "premise")[0]["holds"] == "false"


def test_regularize_star(runner, repository, data_dir, tmp_path, parse_records):
    out = tmp_path / "star4.el"
    result = run(runner, "regularize", "--in", data_dir / "star3.el", "--out", out,
                 "--format", "records")
    assert result.exit_code == 0, result.output
    assert parse_records(result.output, "regularize")[0]["nPrime"] == "6"

    regular = repository.read_edge_list(out, allow_loops=True)
    assert regular.degrees.tolist() == [4.0] * 6
    assert (tmp_path / "star4.el.map").read_text().splitlines()[0] == "0 0 3"


def test_regularize_with_projection(runner, data_dir, parse_records):
    result = run(runner, "regularize", "--in", data_dir / "triangle.el", "--project", "0 1 2",
                 "--format", "records")
    assert result.exit_code == 0, result.output
    projection = parse_records(result.output, "projection")[0]
    assert projection["projectedMembers"] == "0,1"
    assert projection["chainHolds"] == "true"


def test_regularize_weighted_input(runner, tmp_path):
    path = tmp_path / "weighted.el"
    path.write_text("2 1\n0 1 2\n")
    result = run(runner, "regularize", "--in", path)
    assert result.exit_code == EXIT_CODES["REDUCTION"]


def test_peel_expander_not_found(runner, data_dir):
    result = run(runner, "peel", "--in", data_dir / "k12.el", "--delta", 0.25, "--s", 0.5)
    assert result.exit_code == EXIT_CODES["NEGATIVE_ANSWER"]
    assert "not found" in result.output


def test_peel_found(runner, data_dir, parse_records):
    result = run(runner, "peel", "--in", data_dir / "two_triangles.el", "--delta", 0.6,
                 "--s", 0.5, "--format", "records")
    assert result.exit_code == 0, result.output
    record = parse_records(result.output, "peel")[0]
    assert record["found"] == "true"
    assert record["setMembers"] == "0,1,2"


def test_bad_input_file(runner, tmp_path):
    path = tmp_path / "bad.el"
    path.write_text("3 1\n0 1 1\n")
    result = run(runner, "profile", "--in", path, "--delta", 0.5)
    assert result.exit_code == EXIT_CODES["GRAPH_INPUT"]


def test_self_loop_needs_flag(runner, tmp_path):
    path = tmp_path / "loop.el"
    path.write_text("2 2\n0 0 1\n0 1 1\n")
    assert run(runner, "profile", "--in", path, "--delta", 0.5).exit_code == EXIT_CODES["GRAPH_INPUT"]
    assert run(runner, "profile", "--in", path, "--delta", 0.5, "--allow-loops").exit_code == 0


def test_text_format_echoes_config(runner, data_dir):
    result = run(runner, "profile", "--in", data_dir / "c6.el", "--delta", 0.5)
    assert result.exit_code == 0
    assert "[config]" in result.output
    assert "  exactCap: 20" in result.output
    assert "[profile]" in result.output


def test_deterministic_records(runner, data_dir):
    args = ("regularize", "--in", data_dir / "two_triangles.el", "--seed", 7, "--format", "records")
    assert run(runner, *args).output == run(runner, *args).output


def test_verify_quick(runner, parse_records):
    result = run(runner, "verify", "--quick", "--seed", 3, "--format", "records")
    assert result.exit_code == 0, result.output
    suites = parse_records(result.output, "suite")
    assert len(suites) == 10
    assert all(suite["violations"] == "0" for suite in suites)
