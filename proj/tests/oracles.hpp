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

// Reference computations used only by tests. They share no code with the
// library beyond its data types: exhaustive enumeration, direct sums and
// textbook formulas.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <tuple>
#include <vector>

#include "qabench/graph.hpp"
#include "qabench/metrics.hpp"
#include "qabench/models.hpp"

namespace oracle {

using qabench::Graph;
using qabench::Value;

inline bool is_clique(const Graph& g, std::uint32_t mask) {
    const int n = g.num_vertices();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if ((mask >> u & 1) && (mask >> v & 1) && !g.has_edge(u, v)) return false;
    return true;
}

// Every maximum clique as a bit mask, found by checking all subsets.
inline std::vector<std::uint32_t> maximum_cliques(const Graph& g, int& omega) {
    const int n = g.num_vertices();
    omega = 0;
    std::vector<std::uint32_t> best;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const int size = std::popcount(mask);
        if (size < omega || !is_clique(g, mask)) continue;
        if (size > omega) {
            omega = size;
            best.clear();
        }
        best.push_back(mask);
    }
    return best;
}

inline std::vector<Value> bits(std::uint32_t mask, int n) {
    std::vector<Value> x(n);
    for (int i = 0; i < n; ++i) x[i] = static_cast<Value>(mask >> i & 1);
    return x;
}

inline std::vector<Value> spins(std::uint32_t mask, int n) {
    std::vector<Value> s(n);
    for (int i = 0; i < n; ++i) s[i] = (mask >> i & 1) ? 1 : -1;
    return s;
}

// Direct evaluation of sum h_i x_i + sum J_ij x_i x_j + offset.
template <typename Model>
double energy(const Model& m, const std::vector<Value>& x) {
    double e = m.offset();
    for (int i = 0; i < m.num_variables(); ++i) e += m.linear(i) * x[i];
    for (const auto& [key, b] : m.quadratic_terms()) e += b * x[key.first] * x[key.second];
    return e;
}

// Minimum energy and all minimising assignments (as masks). Ties within
// 1e-9 count as equal.
template <typename Model>
double minimise(const Model& m, std::vector<std::uint32_t>& argmin, bool spin) {
    const int n = m.num_variables();
    double best = std::numeric_limits<double>::infinity();
    argmin.clear();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const double e = energy(m, spin ? spins(mask, n) : bits(mask, n));
        if (e < best - 1e-9) {
            best = e;
            argmin.clear();
        }
        if (std::abs(e - best) <= 1e-9) argmin.push_back(mask);
    }
    return best;
}

inline int cut_of(const Graph& g, std::uint32_t mask) {
    int cut = 0;
    for (auto [u, v] : g.edges()) cut += ((mask >> u) ^ (mask >> v)) & 1;
    return cut;
}

inline int max_cut(const Graph& g) {
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << g.num_vertices()); ++mask)
        best = std::max(best, cut_of(g, mask));
    return best;
}

// Per (problem, time, chain strength, bin) plain means of the member
// records, computed with a running sum in record order.
struct Curve {
    double ar = 0, cbp = 0;
    int count = 0;
};
inline std::map<std::tuple<int, double, double, int>, Curve> aggregate(
    const std::vector<qabench::ExperimentRecord>& records) {
    std::map<std::tuple<int, double, double, int>, Curve> out;
    for (const auto& r : records) {
        if (r.error) continue;
        auto& c = out[{static_cast<int>(r.problem), r.annealing_time_us, r.chain_strength,
                       r.density_bin}];
        c.ar += r.mean_ar;
        c.cbp += r.chain_break_proportion;
        ++c.count;
    }
    for (auto& [k, c] : out) {
        c.ar /= c.count;
        c.cbp /= c.count;
    }
    return out;
}

}  // namespace oracle
