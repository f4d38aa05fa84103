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

#include "qabench/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qabench/error.hpp"
#include "qabench/rng.hpp"

namespace qabench {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), adj_(n < 0 ? 0 : n) {
    if (n < 0) throw std::invalid_argument("graph: negative vertex count");
    for (auto& e : edges) {
        if (e.first == e.second)
            throw std::invalid_argument("graph: self-loop at vertex " + std::to_string(e.first));
        e = make_edge(e.first, e.second);
        if (e.first < 0 || e.second >= n)
            throw std::invalid_argument("graph: edge (" + std::to_string(e.first) + "," +
                                        std::to_string(e.second) + ") out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end())
        throw std::invalid_argument("graph: duplicate edge (" + std::to_string(dup->first) + "," +
                                    std::to_string(dup->second) + ")");
    edges_ = std::move(edges);
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

int Graph::min_degree() const noexcept {
    int best = n_ == 0 ? 0 : static_cast<int>(adj_[0].size());
    for (const auto& nb : adj_) best = std::min(best, static_cast<int>(nb.size()));
    return best;
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
    const auto& nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

Graph generate_gnp(int n, double p, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("generate_gnp: need n >= 2");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("generate_gnp: need 0 < p < 1");

    Rng rng(seed);
    std::vector<Edge> edges;
    std::vector<int> deg(n, 0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform() < p) {
                edges.emplace_back(u, v);
                ++deg[u];
                ++deg[v];
            }

    for (int v = 0; v < n; ++v) {
        if (deg[v] != 0) continue;
        int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
        if (u >= v) ++u;
        edges.push_back(make_edge(u, v));
        ++deg[u];
        ++deg[v];
    }
    return Graph(n, std::move(edges));
}

double density(const Graph& g) {
    const int n = g.num_vertices();
    if (n < 2) throw std::invalid_argument("density: need n >= 2");
    return static_cast<double>(g.num_edges()) / (0.5 * n * (n - 1.0));
}

int density_bin(double d) {
    // Nudge by a few ulps so that exact interval edges such as 0.50 land in
    // the bin they open rather than one below due to rounding.
    const double x = (d - 0.05) / 0.09 + 1e-9;
    return std::clamp(static_cast<int>(std::floor(x)), 0, 9);
}

Graph complement(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
        const auto& nb = g.neighbors(u);
        auto it = std::upper_bound(nb.begin(), nb.end(), u);
        for (int v = u + 1; v < n; ++v) {
            if (it != nb.end() && *it == v) {
                ++it;
                continue;
            }
            edges.emplace_back(u, v);
        }
    }
    return Graph(n, std::move(edges));
}

Graph complete_graph(int n) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

namespace {

bool parse_ints(std::string_view line, int& a, int& b) {
    auto skip = [&](const char*& p, const char* end) {
        while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    };
    const char* p = line.data();
    const char* end = p + line.size();
    skip(p, end);
    auto r1 = std::from_chars(p, end, a);
    if (r1.ec != std::errc{}) return false;
    p = r1.ptr;
    skip(p, end);
    auto r2 = std::from_chars(p, end, b);
    if (r2.ec != std::errc{}) return false;
    p = r2.ptr;
    skip(p, end);
    return p == end;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
    std::size_t line_no = 0;
    int n = -1, m = -1;
    std::vector<Edge> edges;
    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        int a, b;
        if (!parse_ints(line, a, b)) throw ParseError("expected two integers", line_no);
        if (n < 0) {
            if (a < 0 || b < 0) throw ParseError("negative header value", line_no);
            n = a;
            m = b;
            continue;
        }
        if (a < 0 || b < 0 || a >= n || b >= n || a == b)
            throw ParseError("invalid edge " + std::to_string(a) + " " + std::to_string(b), line_no);
        edges.push_back(make_edge(a, b));
    }
    if (n < 0) throw ParseError("missing header");
    if (static_cast<std::size_t>(m) != edges.size())
        throw ParseError("header declares " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));
    try {
        return Graph(n, std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

void save_graph(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << to_edge_list(g);
}

Graph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_edge_list(ss.str());
}

}  // namespace qabench
