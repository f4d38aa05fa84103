// Copyright 2026 The qabench Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "qabench/backend.hpp"
#include "qabench/config.hpp"
#include "qabench/graph.hpp"
#include "qabench/metrics.hpp"

namespace qabench {

struct GraphInstance {
    int id = 0;
    Graph graph;
    /// Density the generator was asked for; the realised density differs.
    double target_density = 0.0;
    std::uint64_t seed = 0;
};

/// Generated graphs (or the loaded graph_files) in id order. Graph i depends
/// only on (seed, i) and the density settings.
std::vector<GraphInstance> make_graphs(const ExperimentConfig& cfg);

/// mix_seed of (master, graph id, bit pattern of chain strength, bit pattern
/// of annealing time). Embedding noise and the sampler use sub-streams 1 and
/// 2 of this seed.
std::uint64_t cell_seed(std::uint64_t master, int graph_id, double chain_strength,
                        double annealing_time_us);

struct RunOptions {
    /// Defaults to the in-process annealer.
    std::shared_ptr<SamplerBackend> backend;
    /// Skip cells already present in the output file.
    bool resume = true;
    /// Called once per new record, serialised.
    std::function<void(const ExperimentRecord&)> on_record;
};

struct RunResult {
    /// Every record of the grid (resumed ones included), sorted by
    /// (graph id, chain strength, annealing time).
    std::vector<ExperimentRecord> records;
    int computed = 0;
    int resumed = 0;
    int errors = 0;
};

/// Runs every (graph, chain strength, annealing time) cell: build model,
/// embed, sample, unembed, score. Cells run concurrently on cfg.threads
/// workers and each new record is appended to cfg.output as one JSON line.
/// A failing cell yields an error record; configuration problems (bad
/// topology, unreadable graph files, output written by a different config)
/// throw.
RunResult run_grid(const ExperimentConfig& cfg, const RunOptions& options = {});

}  // namespace qabench
