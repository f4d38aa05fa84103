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
#include <vector>

#include "json.hpp"
#include "qabench/annealer.hpp"
#include "qabench/graph.hpp"
#include "qabench/models.hpp"
#include "qabench/topology.hpp"

namespace qabench {

/// Logical variable i is represented by the physical qubits chains[i], in
/// path order where the construction provides one.
struct Embedding {
    TopologyShape target;
    std::vector<std::vector<int>> chains;

    int size() const noexcept { return static_cast<int>(chains.size()); }
    std::size_t num_qubits() const noexcept;

    friend bool operator==(const Embedding&, const Embedding&) = default;
};

struct ChainStats {
    int min = 0;
    double mean = 0.0;
    int max = 0;
};

/// Throws std::invalid_argument for an empty embedding.
ChainStats chain_stats(const Embedding& e);

enum class ViolationKind {
    ShapeMismatch,
    EmptyChain,
    MissingQubit,
    Overlap,
    DisconnectedChain,
    MissingCoupler,
    SizeMismatch,
};

const char* to_string(ViolationKind k) noexcept;

struct Violation {
    ViolationKind kind;
    int chain_a = -1;
    int chain_b = -1;
    int qubit = -1;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool has(ViolationKind k) const noexcept;
    /// First few violations joined into one line.
    std::string summary(std::size_t limit = 5) const;
};

/// Checks chain disjointness, chain connectivity and that every logical
/// edge is realised by at least one physical coupler.
ValidationReport validate_embedding(const Embedding& e, const Topology& t, const Graph& logical);
/// Same, for the complete graph on the first `clique_size` chains.
ValidationReport validate_embedding(const Embedding& e, const Topology& t, int clique_size);

/// Triangular clique embedding on a k x k block of Chimera cells with
/// k = ceil(n / 4). Variable 4c + r owns the horizontal qubits of row c in
/// columns 0..c and the vertical qubits of column c in rows c..k-1 (index r
/// inside each half cell), so every chain is a path of k + 1 qubits. Cell
/// (i, j) with i >= j couples chains of block c = j (vertical) and c = i
/// (horizontal). Throws std::invalid_argument when n > 4m.
Embedding chimera_clique_embedding(int n, int m);

/// {"schema_version": 1, "family": ..., "shape": {"m": ..., "t": 4},
///  "chains": {"0": [q, ...], "1": [...], ...}}
nlohmann::json embedding_to_json(const Embedding& e);
/// Throws ParseError on malformed input.
Embedding embedding_from_json(const nlohmann::json& j);
void save_embedding(const Embedding& e, const std::filesystem::path& path);
/// Parses and validates as an all-to-all embedding on `target`. Throws
/// EmbeddingError naming the failing chain or pair.
Embedding load_embedding(const std::filesystem::path& path, const Topology& target);

/// Logical Ising mapped onto hardware qubits.
struct PhysicalProblem {
    /// Variables are physical qubit ids (n = ideal qubit count of the
    /// target); qubits outside every chain carry no terms.
    IsingModel model;
    Embedding embedding;
    double chain_strength = 1.0;
    /// Factor applied to every coefficient so the largest magnitude is 1.
    double scale = 1.0;
    double noise_sigma = 0.0;
    /// Number of intra-chain couplers, each programmed at -chain_strength
    /// before scaling.
    int chain_couplers = 0;
};

/// Splits each field uniformly along its chain and each coupling uniformly
/// over the couplers joining the two chains, sets every intra-chain coupler
/// to -chain_strength, rescales so max |coefficient| = 1 and finally adds
/// i.i.d. N(0, noise_sigma^2) to every programmed coefficient, clipped to
/// [-1, 1]. Throws EmbeddingError if a nonzero logical coupling has no
/// physical coupler, std::invalid_argument on bad parameters.
PhysicalProblem embed_problem(const IsingModel& logical, const Embedding& e, const Topology& t,
                              double chain_strength, double noise_sigma, std::uint64_t seed);

/// Physical values of a chain that did not agree, in chain order.
struct BrokenChain {
    int variable = 0;
    std::vector<Value> pattern;
};

struct LogicalSample {
    /// Logical spins; empty when the read is broken.
    std::vector<Value> spins;
    bool broken = false;
    std::vector<BrokenChain> broken_chains;
};

/// No repair: a read with any non-unanimous chain is flagged broken and its
/// broken chains are recorded.
std::vector<LogicalSample> unembed(const SampleSet& samples, const Embedding& e);

}  // namespace qabench
