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

import itertools
import json
import math
import pathlib

import numpy as np
import pytest

import qabench as qb

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def brute_cliques(g):
    best, found = 0, []
    for mask in range(1 << g.num_vertices):
        members = [v for v in range(g.num_vertices) if mask >> v & 1]
        if any(not g.has_edge(u, v) for u, v in itertools.combinations(members, 2)):
            continue
        if len(members) > best:
            best, found = len(members), []
        if len(members) == best:
            found.append(members)
    return best, sorted(found)


def test_graphs_are_seeded():
    a = qb.generate_gnp(20, 0.4, 7)
    assert a == qb.generate_gnp(20, 0.4, 7)
    assert a.num_edges == len(a.edges)
    assert qb.density(a) == pytest.approx(a.num_edges / 190)
    assert qb.parse_edge_list(qb.to_edge_list(a)) == a
    assert qb.density_bin(0.05) == 0 and qb.density_bin(0.95) == 9


def test_clique_qubo_minimisers_are_the_maximum_cliques():
    for seed in range(10):
        g = qb.generate_gnp(9, 0.5, seed)
        q = qb.max_clique_qubo(g)
        energies = {}
        for bits in itertools.product((0, 1), repeat=9):
            energies[bits] = q.energy(bits)
        low = min(energies.values())
        argmin = sorted([v for v in range(9) if b[v]] for b, e in energies.items() if e == low)
        omega, cliques = qb.all_maximum_cliques(g)
        assert (omega, cliques) == brute_cliques(g)
        assert low == -omega
        assert argmin == cliques


def test_cut_oracles_and_ising():
    g = qb.generate_gnp(12, 0.5, 3)
    best = max(
        sum((mask >> u & 1) != (mask >> v & 1) for u, v in g.edges) for mask in range(1 << 12)
    )
    cut, witness = qb.max_cut_exact(g)
    assert cut == best
    spins = [1 if w else -1 for w in witness]
    assert qb.cut_size(spins, g) == best
    m = qb.max_cut_ising(g)
    assert (g.num_edges - m.energy(spins)) / 2 == best
    ref, _ = qb.reference_cut(g, sweeps=2000, restarts=4, seed=1)
    assert ref <= best
    with pytest.raises(qb.InstanceTooLarge):
        qb.max_cut_exact(qb.generate_gnp(30, 0.5, 1))


def test_model_conversions_preserve_energy():
    rng = np.random.default_rng(0)
    m = qb.IsingModel(5)
    for i in range(5):
        m.set_linear(i, float(rng.normal()))
    for u, v in itertools.combinations(range(5), 2):
        m.set_quadratic(u, v, float(rng.normal()))
    q = qb.ising_to_qubo(m)
    for bits in itertools.product((0, 1), repeat=5):
        spins = [2 * b - 1 for b in bits]
        assert q.energy(bits) == pytest.approx(m.energy(spins), abs=1e-12)
    assert qb.IsingModel.from_dict(m.to_dict()) == m


def test_lattice_sizes():
    c, p, z = qb.chimera(16), qb.pegasus(16), qb.zephyr(4)
    assert (c.num_qubits, c.num_couplers) == (2048, 6016)
    assert (p.num_qubits, p.num_couplers) == (5760, 40656)
    assert (z.num_qubits, z.num_couplers) == (576, 5032)
    assert qb.make_topology("zephyr:4") == z
    damaged = qb.apply_defects(c, qubits=[0])
    assert damaged.num_qubits == 2047 and not damaged.has_qubit(0)


def test_embeddings():
    t = qb.chimera(16)
    e = qb.chimera_clique_embedding(52, 16)
    assert qb.chain_stats(e) == (14, 14.0, 14)
    assert qb.validate_embedding(e, t, 52) == []
    p = qb.load_embedding(DATA / "embeddings" / "pegasus16_k52.json", qb.pegasus(16))
    lo, mean, hi = qb.chain_stats(p)
    assert (lo, round(mean, 2), hi) == (5, 5.81, 6)
    broken = qb.apply_defects(t, couplers=[(e.chains[0][0], e.chains[0][1])])
    kinds = {k for k, _ in qb.validate_embedding(e, broken, 52)}
    assert "disconnected chain" in kinds


def test_sampling_is_reproducible_and_finds_the_ground_state():
    m = qb.IsingModel(16)
    for i in range(15):
        m.set_quadratic(i, i + 1, -1.0)
    params = qb.SamplerParams(num_reads=16, num_sweeps=200, seed=5)
    a = qb.sample_ising(m, params)
    b = qb.sample_ising(m, params)
    assert a.spins.shape == (16, 16) and a.spins.dtype == np.int8
    assert np.array_equal(a.spins, b.spins)
    assert np.allclose(a.energies, -15.0)
    assert "generic" in qb.annealer_kernels()


def test_embed_sample_unembed():
    g = qb.generate_gnp(8, 0.5, 2)
    logical = qb.qubo_to_ising(qb.max_clique_qubo(g))
    e = qb.chimera_clique_embedding(8, 16)
    t = qb.chimera(16)
    pp = qb.embed_problem(logical, e, t, chain_strength=2.0)
    assert pp.chain_couplers == sum(len(c) - 1 for c in e.chains)
    s = qb.sample_ising(pp.model, qb.SamplerParams(num_reads=64, num_sweeps=500, seed=3))
    reads = qb.unembed(s, e)
    assert len(reads) == 64
    omega, _ = qb.all_maximum_cliques(g)
    best = min(logical.energy(r) for r in reads if r is not None)
    assert best == pytest.approx(-omega)


def test_metrics():
    assert qb.time_to_solution(1.0, 1000, 1.0) == pytest.approx(1e-3)
    assert qb.time_to_solution(1.0, 1000, 0.0) is None
    assert qb.time_to_solution(1.0, 1000, 0.5) == pytest.approx(
        1e-3 * math.log(0.01) / math.log(0.5), rel=1e-9
    )
    f = qb.fair_sampling_entropy([20, 20, 20])
    assert f["eligible"] and f["entropy_bits"] == pytest.approx(math.log2(3), abs=1e-12)
    low = qb.fair_sampling_entropy([10, 5])
    assert not low["eligible"] and low["reason"]
    assert qb.chain_break_runs([0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1]) == 2
    assert qb.chain_break_runs([1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1]) == 3


def test_grid_run_resume_and_exports(tmp_path):
    cfg = qb.ExperimentConfig()
    cfg.num_graphs = 2
    cfg.n = 10
    cfg.stratified = True
    cfg.chain_strengths = [0.5, 2.0, 4.0]
    cfg.annealing_times_us = [1.0, 20.0]
    cfg.num_reads = 50
    cfg.seed = 4
    cfg.output = tmp_path / "runs.jsonl"
    first = qb.run_grid(cfg)
    assert (len(first["records"]), first["computed"], first["errors"]) == (12, 12, 0)
    again = qb.run_grid(cfg)
    assert (again["computed"], again["resumed"]) == (0, 12)
    records, issues = qb.read_records(cfg.output)
    assert len(records) == 12 and issues == []
    assert qb.ExperimentConfig.parse(cfg.to_text()) == cfg

    curves = tmp_path / "curves.csv"
    qb.export_curves(cfg.output, curves)
    lines = curves.read_text().splitlines()
    assert lines[0] == qb.CURVES_HEADER
    tts = tmp_path / "tts.csv"
    qb.export_tts(cfg.output, tts)
    assert tts.read_text().splitlines()[0] == qb.TTS_HEADER


def test_config_errors_carry_line_numbers():
    with pytest.raises(qb.ParseError, match="line 2"):
        qb.ExperimentConfig.parse("problem = clique\nbogus = 1\n")


def test_wire_format_roundtrip():
    m = qb.IsingModel(3)
    m.set_quadratic(0, 1, 1.0)
    m.set_quadratic(1, 2, 1.0)
    request = {
        "schema_version": 1,
        "model": m.to_dict(),
        "params": {"num_reads": 4, "num_sweeps": 50, "beta_hot": 0.1, "beta_cold": 10.0,
                   "seed": 1, "num_threads": 1},
    }
    reply = json.loads(qb.serve_sample_request(json.dumps(request)))
    assert len(reply["energies"]) == 4
    bad = json.loads(qb.serve_sample_request("{}"))
    assert bad["error"]["kind"] == "validation"
