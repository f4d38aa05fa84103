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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qabench/embedding.hpp"
#include "qabench/graph.hpp"

namespace qabench {

enum class ProblemKind { Clique, Cut };

const char* to_string(ProblemKind k) noexcept;
ProblemKind problem_from_string(const std::string& name);

/// Objective of an unbroken sample: for cliques, minus the Eq.-7 style QUBO
/// energy (the clique size for valid cliques, lower when penalties fire);
/// for cuts, the cut size.
int sample_objective(std::span<const Value> spins, ProblemKind kind, const Graph& g);

/// Broken reads score 0. Otherwise max(0, objective) / optimum.
/// Throws std::invalid_argument for a non-positive optimum.
double approximation_ratio(const LogicalSample& s, ProblemKind kind, const Graph& g, int optimum);

/// Mean over all reads with broken reads counted as 0.
double mean_approximation_ratio(std::span<const LogicalSample> samples, ProblemKind kind,
                                const Graph& g, int optimum);

/// Fraction of reads with at least one broken chain.
double chain_break_proportion(std::span<const LogicalSample> samples);

enum class GspNormalization { AllReads, UnbrokenReads };

/// Unbroken reads attaining the optimum. Always counts broken reads as
/// failures in the numerator; the denominator is selectable.
int ground_state_reads(std::span<const LogicalSample> samples, ProblemKind kind, const Graph& g,
                       int optimum);
double ground_state_probability(std::span<const LogicalSample> samples, ProblemKind kind,
                                const Graph& g, int optimum,
                                GspNormalization norm = GspNormalization::AllReads);

/// Expected time to reach the optimum with 99% confidence:
///   (elapsed / reads) * log(1 - 0.99) / log(1 - p),  p = 1 -> elapsed / reads.
/// Returns nullopt when p = 0 (undefined). Throws std::invalid_argument
/// for p outside [0, 1], reads < 1 or elapsed <= 0.
std::optional<double> time_to_solution(double elapsed_seconds, int num_reads, double p);

struct FairSampling {
    bool eligible = false;
    /// Why the input was excluded; empty when eligible.
    std::string reason;
    int num_optima = 0;
    long total = 0;
    double entropy_bits = 0.0;
    double max_bits = 0.0;
};

inline constexpr int kFairMinOptima = 2;
inline constexpr int kFairMaxOptima = 5;
inline constexpr long kFairMinGroundReads = 30;

/// Base-2 Shannon entropy of the ground-state count distribution, one entry
/// per optimum of the instance (zeros included). Eligible only with 2..5
/// optima and at least 30 ground-state reads in total.
FairSampling fair_sampling_entropy(std::span<const long> counts);

/// Per-maximum-clique hit counts over unbroken reads. `cliques` must be the
/// sorted list from all_maximum_cliques.
std::vector<long> clique_ground_state_counts(std::span<const LogicalSample> samples,
                                             const std::vector<std::vector<int>>& cliques);

/// Number of maximal constant runs in a broken chain's physical pattern.
/// Throws std::invalid_argument for an empty or unanimous pattern.
int chain_break_runs(std::span<const Value> pattern);

/// Histogram run count -> number of broken chains over all reads.
std::map<int, long> chain_break_run_distribution(std::span<const LogicalSample> samples);

inline constexpr int kRecordSchemaVersion = 1;

/// One grid cell of a benchmark run.
struct ExperimentRecord {
    int graph_id = 0;
    int n = 0;
    int num_edges = 0;
    double density = 0.0;
    int density_bin = 0;
    ProblemKind problem = ProblemKind::Clique;
    std::string topology;
    double chain_strength = 0.0;
    double annealing_time_us = 0.0;
    int num_sweeps = 0;
    int num_reads = 0;
    int optimum = 0;
    bool optimum_exact = true;
    double mean_ar = 0.0;
    double chain_break_proportion = 0.0;
    double gsp = 0.0;
    int ground_state_reads = 0;
    std::optional<double> tts_seconds;
    double elapsed_seconds = 0.0;
    std::uint64_t seed = 0;
    /// Number of maximum cliques (clique problems only).
    int num_optima = 0;
    /// Hits per maximum clique, present when 2..5 optima exist.
    std::vector<long> ground_state_counts;
    std::map<int, long> chain_break_runs;
    /// Set when the cell failed; metric fields are then meaningless.
    std::optional<std::string> error;
};

nlohmann::json record_to_json(const ExperimentRecord& r);
/// Throws ParseError on a malformed record.
ExperimentRecord record_from_json(const nlohmann::json& j);

struct CurvePoint {
    ProblemKind problem = ProblemKind::Clique;
    double annealing_time_us = 0.0;
    double chain_strength = 0.0;
    int density_bin = 0;
    double mean_ar = 0.0;
    double mean_cbp = 0.0;
    int n_graphs = 0;
};

/// Mean of mean_ar and chain_break_proportion per (problem, annealing time,
/// chain strength, density bin), sorted by that key. Error records are
/// skipped; bins without members are absent.
std::vector<CurvePoint> aggregate_by_density_bin(std::span<const ExperimentRecord> records);

/// True iff any unbroken read of any cell reached the optimum. Records must
/// belong to one graph and carry an exact optimum.
bool success_any(std::span<const ExperimentRecord> records_for_graph);

}  // namespace qabench
