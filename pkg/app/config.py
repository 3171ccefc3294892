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
"""Runtime settings read from the environment (and a local ``.env`` file)."""

import os
from functools import lru_cache
from typing import Literal

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()


class Settings(BaseModel):
    max_n: int = Field(default=7, ge=3)
    jobs: int = Field(default=1, ge=1)
    seed: int = 20240611
    trace_exporter: Literal["none", "logging", "cloud"] = "none"
    project_id: str | None = None
    log_level: str = "INFO"
    service_name: Literal["moduli-tower"] = "moduli-tower"


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Build the settings once per process; invalid values raise ValidationError."""
    values: dict[str, str] = {
        field: raw
        for field, raw in (
            ("max_n", os.getenv("MODULI_MAX_N")),
            ("jobs", os.getenv("MODULI_JOBS")),
            ("seed", os.getenv("MODULI_SEED")),
            ("trace_exporter", os.getenv("MODULI_TRACE_EXPORTER")),
            ("project_id", os.getenv("GOOGLE_CLOUD_PROJECT")),
            ("log_level", os.getenv("MODULI_LOG_LEVEL")),
        )
        if raw
    }
    return Settings.model_validate(values)
