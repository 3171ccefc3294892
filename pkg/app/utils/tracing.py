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
import logging
from collections.abc import Sequence
from typing import Any

from google.cloud import logging as google_cloud_logging
from opentelemetry import trace
from opentelemetry.exporter.cloud_trace import CloudTraceSpanExporter
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import ReadableSpan, TracerProvider, export
from opentelemetry.sdk.trace.export import SpanExporter, SpanExportResult
from opentelemetry.trace import StatusCode

from app.config import Settings

# Cloud Logging rejects entries above 256 KB.
MAX_ATTRIBUTES_BYTES = 255 * 1024


def compact_attributes(span_dict: dict[str, Any]) -> dict[str, Any]:
    """
    Replace an oversized attribute payload by its SHA-256 digest and size.

    :param span_dict: The span data dictionary
    :return: The updated span dictionary
    """
    attributes = span_dict.get("attributes") or {}
    payload = json.dumps(attributes, sort_keys=True).encode()
    if len(payload) > MAX_ATTRIBUTES_BYTES:
        span_dict["attributes"] = {
            "payload_sha256": hashlib.sha256(payload).hexdigest(),
            "payload_bytes": len(payload),
        }
        logging.info(
            f"Span attributes of {len(payload)} bytes replaced by their digest "
            "to avoid large log entry errors"
        )
    return span_dict


def span_record(span: ReadableSpan) -> dict[str, Any]:
    """JSON form of a finished span with hex ids and compacted attributes."""
    record = compact_attributes(json.loads(span.to_json()))
    context = span.get_span_context()
    record["trace_id"] = format(context.trace_id, "x")
    record["span_id"] = format(context.span_id, "x")
    return record


class LoggingSpanExporter(SpanExporter):
    """Writes every finished span as one JSON line through ``logging``."""

    def export(self, spans: Sequence[ReadableSpan]) -> SpanExportResult:
        for span in spans:
            logging.info(f"span {json.dumps(span_record(span), sort_keys=True)}")
        return SpanExportResult.SUCCESS

    def shutdown(self) -> None:
        return None


class CloudTraceLoggingSpanExporter(CloudTraceSpanExporter):
    """
    Sends spans to Cloud Trace and keeps a structured copy in Cloud Logging.

    Cloud Trace cuts attribute values at 256 characters, so command arguments
    and check details are only fully visible in the logged copy. Spans of
    failed commands or checks are logged with ERROR severity.
    """

    def __init__(
        self,
        logging_client: google_cloud_logging.Client | None = None,
        service_name: str = "moduli-tower",
        debug: bool = False,
        **kwargs: Any,
    ) -> None:
        """
        :param logging_client: Client to write with; one is created for the project otherwise
        :param service_name: Value of the ``service_name`` label
        :param debug: Also log each record locally
        :param kwargs: Forwarded to ``CloudTraceSpanExporter``
        """
        super().__init__(**kwargs)
        self.debug = debug
        self.service_name = service_name
        self.logging_client = logging_client or google_cloud_logging.Client(
            project=self.project_id
        )
        self.logger = self.logging_client.logger(service_name)

    def export(self, spans: Sequence[ReadableSpan]) -> SpanExportResult:
        for span in spans:
            record = span_record(span)
            record["trace"] = f"projects/{self.project_id}/traces/{record['trace_id']}"
            if self.debug:
                logging.debug(f"span {record}")
            failed = span.status.status_code is StatusCode.ERROR
            self.logger.log_struct(
                record,
                labels={"type": "computation_telemetry", "service_name": self.service_name},
                severity="ERROR" if failed else "INFO",
            )
        return super().export(spans)


def setup_tracing(settings: Settings) -> TracerProvider | None:
    """Install the tracer provider selected by ``settings.trace_exporter``."""
    if settings.trace_exporter == "none":
        return None
    exporter: SpanExporter
    if settings.trace_exporter == "cloud":
        exporter = CloudTraceLoggingSpanExporter(
            service_name=settings.service_name, project_id=settings.project_id
        )
    else:
        exporter = LoggingSpanExporter()
    provider = TracerProvider(resource=Resource.create({"service.name": settings.service_name}))
    provider.add_span_processor(export.BatchSpanProcessor(exporter))
    trace.set_tracer_provider(provider)
    logging.debug(f"Tracing through {type(exporter).__name__}")
    return provider
