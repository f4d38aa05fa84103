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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qabench/metrics.hpp"
#include "qabench/oracles.hpp"
#include "qabench/topology.hpp"

namespace qabench {

enum class DensitySampling {
    /// Each graph draws its density uniformly from [density_min, density_max].
    Uniform,
    /// Graph i draws uniformly from interval (i mod 10) of ten equal
    /// intervals of [density_min, density_max], so small runs cover all bins.
    Stratified,
};

/// One benchmark grid. Text form is `key = value` per line, `#` starts a
/// comment, lists are comma separated:
///
///   problem             clique | cut
///   graphs              number of generated graphs
///   graph_files         edge-list files used instead of generated graphs
///   n                   vertices per generated graph
///   density_min/max     density range of generated graphs
///   density_sampling    uniform | stratified
///   topology            family:size, e.g. chimera:16, pegasus:16, zephyr:4
///   embedding           generated | path to an embedding file (Chimera only
///                       when generated)
///   chain_strengths     list of positive reals
///   annealing_times_us  list of positive reals
///   num_reads, sweeps_per_us, beta_hot, beta_cold, noise_sigma
///   seed                master seed
///   output              JSONL path ("" keeps records in memory only)
///   threads             concurrent cells, 0 = hardware concurrency
///   gsp_normalization   all | unbroken
///   reference_sweeps, reference_restarts, exact_cut_limit
///
/// Relative paths are resolved against the config file's directory.
struct ExperimentConfig {
    ProblemKind problem = ProblemKind::Clique;
    int num_graphs = 200;
    std::vector<std::filesystem::path> graph_files;
    int n = 52;
    double density_min = 0.05;
    double density_max = 0.95;
    DensitySampling density_sampling = DensitySampling::Uniform;
    std::string topology = "chimera:16";
    /// Empty for a generated clique embedding.
    std::filesystem::path embedding_file;
    std::vector<double> chain_strengths = {0.5, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    std::vector<double> annealing_times_us = {1, 10, 100, 1000, 2000};
    int num_reads = 1000;
    double sweeps_per_us = 10.0;
    double beta_hot = 0.1;
    double beta_cold = 10.0;
    double noise_sigma = 0.03;
    std::uint64_t seed = 0;
    std::filesystem::path output;
    int threads = 1;
    GspNormalization gsp_normalization = GspNormalization::AllReads;
    int reference_sweeps = 20000;
    int reference_restarts = 8;
    int exact_cut_limit = kDefaultExactCutLimit;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

    /// Number of graphs actually run.
    int graph_count() const noexcept {
        return graph_files.empty() ? num_graphs : static_cast<int>(graph_files.size());
    }

    /// Throws std::invalid_argument naming the offending key.
    void validate() const;
};

/// Throws ParseError with the 1-based line of the offending entry.
ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);
/// Text form that parse_config reads back to an equal config.
std::string format_config(const ExperimentConfig& cfg);

/// "chimera:16" -> {Chimera, 16}. Throws std::invalid_argument.
TopologyShape parse_topology_spec(const std::string& spec);

}  // namespace qabench
