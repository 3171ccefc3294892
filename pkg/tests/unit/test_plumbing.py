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

import hashlib
import json
from collections.abc import Iterator
from pathlib import Path

import pytest
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import SimpleSpanProcessor
from pydantic import ValidationError

from app.config import Settings, get_settings
from app.tools.common import (
    InputError,
    handle_errors,
    read_document,
    to_cell,
    to_lifted,
    to_symbol,
    to_word,
    validates,
)
from app.utils.tracing import (
    MAX_ATTRIBUTES_BYTES,
    LoggingSpanExporter,
    compact_attributes,
    setup_tracing,
)
from app.utils.type import LiftedSymbol, Symbol, TowerCellDoc, Word


@pytest.fixture
def clean_settings(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """Clear cached settings before and after the test."""
    for name in ("MODULI_MAX_N", "MODULI_JOBS", "MODULI_SEED", "MODULI_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def test_settings_from_environment(
    clean_settings: None, monkeypatch: pytest.MonkeyPatch
) -> None:
    monkeypatch.setenv("MODULI_MAX_N", "6")
    monkeypatch.setenv("MODULI_SEED", "99")
    settings = get_settings()
    assert settings.max_n == 6
    assert settings.seed == 99
    assert settings.service_name == "moduli-tower"


def test_invalid_settings_are_rejected(
    clean_settings: None, monkeypatch: pytest.MonkeyPatch
) -> None:
    monkeypatch.setenv("MODULI_MAX_N", "2")
    with pytest.raises(ValidationError):
        get_settings()


def test_tracing_is_off_by_default() -> None:
    assert setup_tracing(Settings()) is None


def test_compact_attributes_replaces_large_payloads() -> None:
    small = {"attributes": {"argv": "verify --suite quick"}}
    assert compact_attributes(dict(small)) == small
    big = {"attributes": {"blob": "x" * (MAX_ATTRIBUTES_BYTES + 1)}}
    compacted = compact_attributes(big)
    assert set(compacted["attributes"]) == {"payload_sha256", "payload_bytes"}


def test_logging_exporter_writes_span_records(caplog: pytest.LogCaptureFixture) -> None:
    provider = TracerProvider()
    provider.add_span_processor(SimpleSpanProcessor(LoggingSpanExporter()))
    with caplog.at_level("INFO"):
        with provider.get_tracer("test").start_as_current_span("verify.tiling") as span:
            span.set_attribute("argv", "verify --suite quick")
    provider.shutdown()
    lines = [r.getMessage() for r in caplog.records if r.getMessage().startswith("span ")]
    assert len(lines) == 1, "One record per finished span"
    record = json.loads(lines[0].removeprefix("span "))
    assert record["name"] == "verify.tiling"
    assert record["attributes"] == {"argv": "verify --suite quick"}
    assert len(record["span_id"]) <= 16


def test_handle_errors_classifies_failures() -> None:
    @handle_errors
    def bad_input() -> dict:
        raise InputError("no such label")

    @handle_errors
    def broken() -> dict:
        raise RuntimeError("lost an invariant")

    @handle_errors
    def failing_step() -> dict:
        raise ValueError("no factor pair at position 7")

    assert bad_input() == {"status": "error", "kind": "input", "message": "no such label"}
    result = broken()
    assert result["status"] == "error" and result["kind"] == "computation"
    assert "RuntimeError" in result["message"]
    assert failing_step()["kind"] == "computation", "A ValueError while computing is not an input error"


def test_converters_report_input_errors() -> None:
    @validates
    def parse(text: str) -> int:
        return int(text)

    assert parse("3") == 3
    with pytest.raises(InputError):
        parse("three")
    with pytest.raises(InputError):
        to_word(Word(n=3, factors=[(1, 4)]))
    symbol = Symbol(target=[[1, 2], 3], source=[[1, 2], 3], perm=[2, 1, 3])
    with pytest.raises(InputError, match="induces"):
        to_lifted(LiftedSymbol(base=symbol, word=Word(n=3, factors=[(2, 3)])))


def test_read_document_returns_digest(tmp_path: Path) -> None:
    path = tmp_path / "word.json"
    path.write_text(json.dumps({"n": 3, "factors": [[1, 2]]}))
    doc, digest = read_document(str(path), Word)
    assert doc.factors == [(1, 2)]
    assert digest == hashlib.sha256(path.read_bytes()).hexdigest()


def test_read_document_validates(tmp_path: Path) -> None:
    path = tmp_path / "word.json"
    path.write_text(json.dumps({"n": 0}))
    with pytest.raises(ValidationError):
        read_document(str(path), Word)


def test_union_documents(tmp_path: Path) -> None:
    symbol = {"target": [[1, 2], 3], "source": [[1, 2], 3], "perm": [2, 1, 3]}
    lifted = {"base": symbol, "word": {"n": 3, "factors": [[1, 2]]}}
    plain_path, lifted_path = tmp_path / "f.json", tmp_path / "g.json"
    plain_path.write_text(json.dumps(symbol))
    lifted_path.write_text(json.dumps(lifted))
    plain, _ = read_document(str(plain_path), LiftedSymbol | Symbol)
    full, _ = read_document(str(lifted_path), LiftedSymbol | Symbol)
    assert isinstance(plain, Symbol) and isinstance(full, LiftedSymbol)
    assert to_lifted(full).base.perm == to_symbol(plain).perm


def test_cells_need_their_labels() -> None:
    with pytest.raises(InputError):
        to_cell(TowerCellDoc(variant="tilde", level=1))
    with pytest.raises(InputError):
        to_cell(TowerCellDoc(variant="bar", level=0))
    cell = to_cell(TowerCellDoc(variant="bar", level=0, labels=[0, 1, 2]))
    assert cell.level == 0
