# Copyright 2026 The mpsforge Authors
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

"""Genome encoding and layered MPS state preparation.

Circuits are plain dicts in the same JSON layout the command-line tool
writes.
"""

import json

from . import _core
from ._core import (
    ResourceError,
    UsageError,
    ValidationError,
    bond_dims,
    encode,
    epsilon_from_delta,
    fidelity,
    parse_fasta,
    qubit_count,
    sample_shots,
    truncation_error,
)

__version__ = _core.__version__

__all__ = [
    "ResourceError",
    "UsageError",
    "ValidationError",
    "bond_dims",
    "emit_qasm",
    "encode",
    "epsilon_from_delta",
    "fidelity",
    "parse_fasta",
    "parse_qasm",
    "qubit_count",
    "run",
    "sample_shots",
    "synthesize",
    "transpile",
    "truncation_error",
]


def synthesize(amplitudes, fidelity=0.99, max_layers=200, chi_cap=None):
    """Returns (circuit, report) for a normalized statevector."""
    circuit, report = _core.synthesize(amplitudes, fidelity, max_layers, chi_cap)
    return json.loads(circuit), json.loads(report)


def transpile(circuit, simplify=True):
    """Lowers a layered circuit to {ry, rz, cx}. Returns (native, stats)."""
    native, stats = _core.transpile(json.dumps(circuit), simplify)
    return json.loads(native), json.loads(stats)


def emit_qasm(circuit):
    """OpenQASM 2 text for a native or layered circuit."""
    return _core.emit_qasm(json.dumps(circuit))


def parse_qasm(text):
    return json.loads(_core.parse_qasm(text))


def run(circuit):
    """Statevector prepared from |0...0> by a circuit dict or QASM string."""
    if isinstance(circuit, str):
        return _core.run_qasm(circuit)
    return _core.run(json.dumps(circuit))
