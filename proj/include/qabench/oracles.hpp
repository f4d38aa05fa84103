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
#include <vector>

#include "qabench/graph.hpp"
#include "qabench/models.hpp"

namespace qabench {

struct MaximumCliques {
    int size = 0;
    /// Every clique of maximum size, each sorted ascending; list sorted.
    std::vector<std::vector<int>> cliques;
};

/// Complete enumeration of maximum cliques: Bron-Kerbosch with Tomita
/// pivoting over bitsets, pruned by a greedy-colouring bound that keeps
/// ties. Exponential in the worst case; fast on G(52, p) instances.
MaximumCliques all_maximum_cliques(const Graph& g);

struct ExactCut {
    int cut = 0;
    /// Binary side assignment achieving `cut`; the last vertex is on side 0.
    std::vector<Value> witness;
};

inline constexpr int kDefaultExactCutLimit = 26;

/// Exhaustive maximum cut by Gray-code enumeration of the 2^(n-1)
/// partitions with the last vertex pinned. Throws InstanceTooLarge when
/// n > max_vertices.
ExactCut max_cut_exact(const Graph& g, int max_vertices = kDefaultExactCutLimit);

struct ReferenceCut {
    int cut = 0;
    bool exact = false;
    std::vector<Value> spins;
};

/// Best cut found by `restarts` independent annealing runs of `sweeps`
/// sweeps each on the max-cut Ising, each polished by greedy single-flip
/// descent. A lower bound on the maximum cut; never flagged exact.
ReferenceCut reference_cut(const Graph& g, int sweeps, int restarts, std::uint64_t seed);

}  // namespace qabench
