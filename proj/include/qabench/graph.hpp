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
#include <utility>
#include <vector>

namespace qabench {

/// Unordered vertex pair, stored canonically with first < second.
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// Undirected simple graph on vertices [0, n). Immutable once built.
class Graph {
  public:
    Graph() = default;

    /// Throws std::invalid_argument on self-loops, duplicate edges or
    /// out-of-range endpoints. Edges may be given in any orientation/order.
    Graph(int n, std::vector<Edge> edges);

    int num_vertices() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }

    /// Sorted, canonical (u < v) edge list.
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    /// Sorted neighbour list of v.
    const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }
    int min_degree() const noexcept;
    bool has_edge(int u, int v) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

  private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

/// G(n, p): every pair independently with probability p, then each vertex
/// left isolated is joined to one uniformly chosen other vertex.
/// Deterministic in (n, p, seed).
Graph generate_gnp(int n, double p, std::uint64_t seed);

/// |E| / C(n, 2).
double density(const Graph& g);

/// Index of the density interval among 10 equal intervals spanning
/// [0.05, 0.95]; values outside clamp to the end bins.
int density_bin(double d);

Graph complement(const Graph& g);
Graph complete_graph(int n);

/// Edge-list text: header "n m", then one "u v" line per edge with u < v,
/// lines sorted.
std::string to_edge_list(const Graph& g);
Graph parse_edge_list(std::string_view text);
void save_graph(const Graph& g, const std::filesystem::path& path);
Graph load_graph(const std::filesystem::path& path);

}  // namespace qabench
