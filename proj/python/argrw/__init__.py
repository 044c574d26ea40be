# Copyright 2026 The argrw Authors
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

"""Argument reweighting post-selection for quantum error correction decoders."""

import json

from ._core import (
    Decoder,
    DecodeError,
    DemParseError,
    DetectorErrorModel,
    ShotSampler,
    exact_logical_error_rate,
    reweight,
    wilson_interval,
    window_decode,
)
from . import _core

__version__ = "0.1.0"

__all__ = [
    "Decoder",
    "DecodeError",
    "DemParseError",
    "DetectorErrorModel",
    "ShotSampler",
    "check_bounds",
    "exact_logical_error_rate",
    "load_model",
    "reweight",
    "run_experiment",
    "sweep_report",
    "wilson_interval",
    "window_decode",
]


def run_experiment(config, workers=None):
    """Runs a config (dict, or path to a JSON file) and returns the results dict."""
    if not isinstance(config, dict):
        with open(config) as f:
            config = json.load(f)
    return json.loads(_core._run_experiment(json.dumps(config), workers or 0))


def sweep_report(documents):
    """Merges results dicts; returns (report dict, TSV text)."""
    doc, tsv = _core._sweep_report([json.dumps(d) for d in documents])
    return json.loads(doc), tsv


def check_bounds(model):
    """Per-syndrome error bounds for a small model, as a dict."""
    if isinstance(model, str):
        model = load_model(model)
    return json.loads(_core._check_bounds(model))


def load_model(source):
    """Builds a model from "repetition:distance=3,p=0.1"-style text or a DEM path."""
    return _core._model_spec(source)
