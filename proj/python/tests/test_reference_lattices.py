# Copyright 2026 The qabench Authors
#
#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at
#
#        http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.

"""Edge-for-edge comparison with the dwave-networkx lattice generators,
which share the linear qubit numbering. Skipped when they are absent."""

import importlib.util
import sys
import types

import pytest

import qabench as qb


def _generators():
    if importlib.util.find_spec("dwave_networkx") is None:
        pytest.skip("dwave_networkx not installed")
    if "dimod" not in sys.modules and importlib.util.find_spec("dimod") is None:
        # The generators only need dimod for decorators elsewhere in the package.
        stub = types.ModuleType("dimod")
        stub.decorators = types.SimpleNamespace()
        sys.modules.setdefault("dimod", stub)
        sys.modules.setdefault("dimod.decorators", stub.decorators)
    try:
        from dwave_networkx.generators.chimera import chimera_graph
        from dwave_networkx.generators.pegasus import pegasus_graph
        from dwave_networkx.generators.zephyr import zephyr_graph
    except Exception as exc:  # pragma: no cover
        pytest.skip(f"dwave_networkx unusable: {exc}")
    return chimera_graph, pegasus_graph, zephyr_graph


def _edges(graph):
    return {tuple(sorted(e)) for e in graph.edges()}


@pytest.mark.parametrize("family,m", [("chimera", 16), ("pegasus", 3), ("pegasus", 16), ("zephyr", 2), ("zephyr", 4)])
def test_lattice_matches_reference(family, m):
    chimera_graph, pegasus_graph, zephyr_graph = _generators()
    ref = {
        "chimera": lambda: chimera_graph(m),
        "pegasus": lambda: pegasus_graph(m, fabric_only=False),
        "zephyr": lambda: zephyr_graph(m),
    }[family]()
    ours = qb.make_topology(f"{family}:{m}")
    assert set(ours.qubits) == set(ref.nodes())
    assert {tuple(c) for c in ours.couplers} == _edges(ref)
