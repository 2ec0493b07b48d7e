import json
import shutil
from io import StringIO
from pathlib import Path

import pytest

from plancontrast.cli import main
from plancontrast.metrics import ROW_HEADER
from plancontrast.ontology import assert_plan, new_kb
from plancontrast.scenarios import RESTRICTED_NARRATIVE, RUNNING_EXAMPLE_NARRATIVE, running_example_kb

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def run(*argv):
    out = StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


def ws(text):
    return " ".join(text.split())


@pytest.fixture
def manifest(tmp_path):
    for name in ("manifest.json", "tea.plan", "cola.plan"):
        shutil.copy(SCENARIOS / name, tmp_path / name)
    return tmp_path / "manifest.json"


@pytest.fixture
def snapshot(tmp_path):
    path = tmp_path / "example.kb"
    path.write_text(running_example_kb().dump())
    return path


def test_ingest_prints_plan_table(manifest, tmp_path):
    code, out = run("ingest", "--manifest", manifest, "--kb", tmp_path / "r.kb")
    assert code == 0
    rows = [line.split()[-3:] for line in out.splitlines()[1:]]
    assert rows == [["6", "27", "27"], ["8", "59", "59"]]
    assert (tmp_path / "r.kb").exists()


def test_ingest_errors(manifest, tmp_path, capsys):
    assert run("ingest", "--manifest", tmp_path / "missing.json")[0] == 1
    kb = tmp_path / "r.kb"
    assert run("ingest", "--manifest", manifest, "--kb", kb)[0] == 0
    assert run("ingest", "--manifest", manifest, "--kb", kb)[0] == 1
    assert "DuplicatePlanError" in capsys.readouterr().err


def test_bad_trace_is_input_error(tmp_path):
    (tmp_path / "bad.plan").write_text("this is not a trace\n")
    (tmp_path / "m.json").write_text(json.dumps({"plans": [{"name": "bad", "trace": "bad.plan"}]}))
    assert run("ingest", "--manifest", tmp_path / "m.json")[0] == 1


def test_usage_errors_exit_1():
    with pytest.raises(SystemExit) as exc:
        main(["narrate", "--specificity", "7"], StringIO())
    assert exc.value.code == 1


def test_compare_prints_both_directions(manifest, tmp_path):
    kb = tmp_path / "r.kb"
    run("ingest", "--manifest", manifest, "--kb", kb)
    code, out = run("compare", "--kb", kb)
    assert code == 0
    lines = {tuple(line.split("\t")) for line in out.splitlines()}
    tea, cola = "bringing tea", "bringing cola"
    for rel in ("isBetterPlanThan", "isCheaperPlanThan", "isFasterPlanThan", "isShorterPlanThan"):
        assert (tea, rel, cola) in lines
    assert (cola, "isWorsePlanThan", tea) in lines and len(lines) == 8


def test_compare_single_plan_and_conflict(tmp_path):
    kb = new_kb()
    assert_plan(kb, "solo", ["T0-x"], 1, 1)
    path = tmp_path / "solo.kb"
    path.write_text(kb.dump())
    assert run("compare", "--kb", path) == (0, "no pairs\n")

    assert_plan(kb, "rival", ["T0-x"], 2, 0.5)
    path.write_text(kb.dump())
    code, out = run("compare", "--kb", path)
    assert code == 0
    assert "rival / solo: no dominance relation" in out
    assert "Better" not in out and "Worse" not in out


def test_narrate_golden(snapshot):
    code, out = run("narrate", "--kb", snapshot)
    assert code == 0
    header, text = out.splitlines()
    assert header.startswith("[") and ws(text) == ws(RUNNING_EXAMPLE_NARRATIVE)
    code, out = run("narrate", "--kb", snapshot, "--restrict-class", "Quality")
    assert ws(out.splitlines()[1]) == ws(RESTRICTED_NARRATIVE)


def test_narrate_level1_is_one_sentence(snapshot):
    _, out = run("narrate", "--kb", snapshot, "--specificity", "1")
    text = out.splitlines()[1]
    assert text.count(". ") == 0 and text.endswith(".")


def test_narrate_rows(snapshot):
    _, out = run("narrate", "--kb", snapshot, "--rows", "--restrict-class", "Quality")
    [record] = [json.loads(line) for line in out.splitlines()]
    assert record["specificity"] == 3 and len(record["divergent_tuples"]) == 7


def test_narrate_from_manifest_without_snapshot(manifest):
    code, out = run("narrate", "--manifest", manifest, "--specificity", "1")
    assert code == 0 and "is worse plan than" in out


def test_narrate_custom_labels(snapshot, tmp_path):
    labels = tmp_path / "labels.tsv"
    labels.write_text("hasDataValue\tis worth\n")
    _, out = run("narrate", "--kb", snapshot, "--labels", labels)
    assert "is worth `59'" in out


def test_eval_rows(manifest):
    code, out = run("eval", "--manifest", manifest, "--rows")
    lines = out.splitlines()
    assert code == 0 and lines[0] == ROW_HEADER and len(lines) == 7
    cells = {(r.split(",")[0], r.split(",")[1]): int(r.split(",")[2]) for r in lines[1:]}
    assert cells[("acxon", "3")] < cells[("baseline", "3")]


def test_eval_empty_snapshot(tmp_path):
    path = tmp_path / "empty.kb"
    path.write_text(new_kb().dump())
    code, out = run("eval", "--kb", path, "--rows")
    assert code == 0 and out.splitlines() == [ROW_HEADER]


def test_pipeline_is_deterministic(manifest, tmp_path):
    outputs = []
    for i in range(2):
        kb = tmp_path / f"r{i}.kb"
        run("ingest", "--manifest", manifest, "--kb", kb)
        run("compare", "--kb", kb)
        outputs.append((kb.read_text(), run("narrate", "--kb", kb)[1]))
    assert outputs[0] == outputs[1]


def test_snapshot_round_trip(snapshot):
    kb = new_kb().load(snapshot.read_text())
    assert kb == running_example_kb()
