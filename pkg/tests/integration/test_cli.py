# Copyright 2025 Google LLC
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
from pathlib import Path
from typing import Any

import pytest

from app.cli import EXIT_INPUT, EXIT_OK, main

P_WORD = {"n": 4, "factors": [[1, 3], [1, 2], [3, 4], [1, 3], [1, 4]]}
CARET = [[1, 2], 3]


def run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, dict[str, Any]]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else {}


@pytest.fixture
def write(tmp_path: Path) -> Any:
    """Write a JSON document into the test directory and return its path."""

    def _write(name: str, body: Any) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(body))
        return str(path)

    return _write


def test_moduli_fvector(capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "moduli", "--n", "4", "--variant", "bar", "--emit", "fvector")
    assert code == EXIT_OK
    assert report["status"] == "success"
    assert report["outputs"]["fvector"] == [15, 30, 12]
    assert report["schema_version"] == 1
    assert "timings" not in report, "Timings are opt-in"


def test_moduli_chi_and_small_case(capsys: pytest.CaptureFixture[str]) -> None:
    _, report = run(capsys, "moduli", "--n", "4", "--variant", "bar", "--emit", "chi")
    assert report["outputs"]["chi"] == -3
    _, report = run(capsys, "moduli", "--n", "3", "--variant", "tilde", "--emit", "fvector")
    assert report["outputs"]["fvector"] == [6, 6]


def test_moduli_betti(capsys: pytest.CaptureFixture[str]) -> None:
    _, report = run(capsys, "moduli", "--n", "4", "--variant", "bar-unrooted", "--emit", "betti")
    assert report["outputs"]["betti"] == [1, 5, 1]


def test_reports_are_deterministic(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ("moduli", "--n", "4", "--variant", "tilde", "--emit", "fvector")
    main(list(argv))
    first = capsys.readouterr().out
    main(list(argv))
    assert capsys.readouterr().out == first


def test_timings_flag(capsys: pytest.CaptureFixture[str]) -> None:
    _, report = run(capsys, "moduli", "--n", "3", "--timings")
    assert "total" in report["timings"]


def test_out_file(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    out = tmp_path / "report.json"
    code = main(["moduli", "--n", "3", "--out", str(out)])
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["outputs"]["fvector"] == [3, 3]


def test_input_errors_exit_with_two(capsys: pytest.CaptureFixture[str], write: Any) -> None:
    code, report = run(capsys, "moduli", "--n", "2")
    assert code == EXIT_INPUT and report["outputs"]["kind"] == "input"
    code, _ = run(capsys, "qb", "len", "--word", "/nonexistent/word.json")
    assert code == EXIT_INPUT
    code, _ = run(capsys, "qb", "len", "--word", write("bad.json", {"n": 2, "factors": [[1, 5]]}))
    assert code == EXIT_INPUT
    assert main(["moduli"]) == EXIT_INPUT, "--n is required"
    assert main(["qb", "len"]) == EXIT_INPUT, "len needs a word"


def test_qb_commands(capsys: pytest.CaptureFixture[str], write: Any) -> None:
    p = write("p.json", P_WORD)
    code, report = run(capsys, "qb", "len", "--word", p)
    assert code == EXIT_OK and report["outputs"]["length"] == 1
    assert p in report["inputs"], "Input documents are recorded with their digest"
    _, report = run(capsys, "qb", "phi", "--word", p)
    assert report["outputs"]["phi"] == [1, 2, 3, 4]
    _, report = run(capsys, "qb", "check-cert")
    assert all(report["outputs"]["certificates"].values())
    _, report = run(capsys, "qb", "expand", "--element", write("a.json", {"word": {"n": 3}, "hat": 1}))
    assert report["outputs"]["pure"] is True
    _, report = run(capsys, "qb", "ball", "--n", "3", "--radius", "1")
    assert report["outputs"]["ball"]["reduced_words"] == 4


def test_group_compose(capsys: pytest.CaptureFixture[str], write: Any) -> None:
    swap = write("swap.json", {"target": CARET, "source": CARET, "perm": [2, 1, 3]})
    code, report = run(capsys, "group", "compose", swap, swap)
    assert code == EXIT_OK
    assert report["outputs"]["symbol"]["perm"] == [1]
    _, report = run(capsys, "group", "classify", swap)
    assert report["outputs"]["class"] == "V"
    code, _ = run(capsys, "group", "inverse", swap, swap)
    assert code == EXIT_INPUT


def test_tower_commands(capsys: pytest.CaptureFixture[str], write: Any) -> None:
    cell = write("cell.json", {"variant": "bar", "level": 1, "labels": [0, 1, 2, 3, 4, 5]})
    _, report = run(capsys, "tower", "kinf", "--cell", cell)
    assert report["outputs"]["in_k_infinity"] is True
    rotation = write(
        "rotation.json",
        {"target": [1, 2, 3], "source": [1, 2, 3], "perm": [2, 3, 1], "cyclic": True},
    )
    code, report = run(capsys, "tower", "act", "--cell", cell, "--group", rotation)
    assert code == EXIT_OK
    assert report["outputs"]["cell"]["variant"] == "bar"
    _, legacy = run(capsys, "tower", "act", "--cell", cell, "--element", rotation)
    assert legacy["outputs"] == report["outputs"], "--element is an alias of --group"
    assert main(["tower", "act", "--cell", cell]) == EXIT_INPUT, "act needs a group element"
    swap = write("swap.json", {"target": CARET, "source": CARET, "perm": [2, 1, 3]})
    code, report = run(capsys, "tower", "act", "--cell", cell, "--group", swap)
    assert code == EXIT_INPUT and report["outputs"]["kind"] == "input"


def test_euler_commands(capsys: pytest.CaptureFixture[str], write: Any) -> None:
    code, report = run(capsys, "euler", "pair")
    assert code == EXIT_OK
    assert report["outputs"]["pairing"] == 1
    assert report["outputs"]["offset"] == 2
    _, report = run(capsys, "euler", "p-check")
    assert report["outputs"]["stable_length_is_one"] is True
    swap = write("swap.json", {"target": CARET, "source": CARET, "perm": [2, 1, 3]})
    code, report = run(capsys, "euler", "cocycle", "-f", swap, "-g", swap)
    assert code == EXIT_OK
    assert set(report["outputs"]["cocycle"]) >= {"preperiod", "period"}
    assert main(["euler", "cocycle", "-f", swap]) == EXIT_INPUT, "cocycle needs both elements"


def test_verify_quick(capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "verify", "--suite", "quick", "--seed", "1")
    failed = [name for name, check in report["outputs"]["checks"].items() if not check["passed"]]
    assert code == EXIT_OK, f"Failed checks: {failed}"


@pytest.mark.slow
def test_verify_acceptance(capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "verify", "--suite", "acceptance")
    assert code == EXIT_OK, report["outputs"].get("message")
