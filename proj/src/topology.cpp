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

#include "qabench/topology.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qabench/error.hpp"

namespace qabench {

const char* to_string(Family f) noexcept {
    switch (f) {
        case Family::Chimera: return "chimera";
        case Family::Pegasus: return "pegasus";
        case Family::Zephyr: return "zephyr";
    }
    return "?";
}

Family family_from_string(const std::string& name) {
    if (name == "chimera") return Family::Chimera;
    if (name == "pegasus") return Family::Pegasus;
    if (name == "zephyr") return Family::Zephyr;
    throw std::invalid_argument("unknown topology family '" + name + "'");
}

int TopologyShape::ideal_qubits() const noexcept {
    switch (family) {
        case Family::Chimera: return 8 * m * m;
        case Family::Pegasus: return 24 * m * (m - 1);
        case Family::Zephyr: return 16 * m * (2 * m + 1);
    }
    return 0;
}

std::string TopologyShape::name() const {
    const char letter = family == Family::Chimera ? 'C' : family == Family::Pegasus ? 'P' : 'Z';
    return letter + std::to_string(m);
}

int chimera_id(int m, int i, int j, int u, int k) noexcept { return ((i * m + j) * 2 + u) * 4 + k; }

int pegasus_id(int m, int u, int w, int k, int z) noexcept {
    return ((u * m + w) * 12 + k) * (m - 1) + z;
}

int zephyr_id(int m, int u, int w, int k, int j, int z) noexcept {
    return (((u * (2 * m + 1) + w) * 4 + k) * 2 + j) * m + z;
}

Topology::Topology(TopologyShape shape, std::vector<int> qubits, std::vector<Edge> couplers,
                   std::vector<int> removed_qubits, std::vector<Edge> removed_couplers)
    : shape_(shape),
      qubits_(std::move(qubits)),
      couplers_(std::move(couplers)),
      removed_qubits_(std::move(removed_qubits)),
      removed_couplers_(std::move(removed_couplers)) {
    const int ideal = shape_.ideal_qubits();
    if (ideal <= 0) throw std::invalid_argument("topology: invalid shape " + shape_.name());
    std::sort(qubits_.begin(), qubits_.end());
    if (std::adjacent_find(qubits_.begin(), qubits_.end()) != qubits_.end())
        throw std::invalid_argument("topology: duplicate qubit");
    present_.assign(ideal, 0);
    for (int q : qubits_) {
        if (q < 0 || q >= ideal)
            throw std::invalid_argument("topology: qubit " + std::to_string(q) + " outside " +
                                        shape_.name());
        present_[q] = 1;
    }
    for (auto& c : couplers_) {
        c = make_edge(c.first, c.second);
        if (c.first == c.second || !has_qubit(c.first) || !has_qubit(c.second))
            throw std::invalid_argument("topology: coupler (" + std::to_string(c.first) + "," +
                                        std::to_string(c.second) + ") references a missing qubit");
    }
    std::sort(couplers_.begin(), couplers_.end());
    if (std::adjacent_find(couplers_.begin(), couplers_.end()) != couplers_.end())
        throw std::invalid_argument("topology: duplicate coupler");
    std::sort(removed_qubits_.begin(), removed_qubits_.end());
    for (auto& c : removed_couplers_) c = make_edge(c.first, c.second);
    std::sort(removed_couplers_.begin(), removed_couplers_.end());

    std::vector<int> degree(ideal, 0);
    for (auto [a, b] : couplers_) {
        ++degree[a];
        ++degree[b];
    }
    row_.assign(ideal + 1, 0);
    for (int q = 0; q < ideal; ++q) row_[q + 1] = row_[q] + degree[q];
    adj_.resize(row_.back());
    std::vector<int> fill(row_.begin(), row_.end() - 1);
    for (auto [a, b] : couplers_) {
        adj_[fill[a]++] = b;
        adj_[fill[b]++] = a;
    }
    for (int q = 0; q < ideal; ++q) std::sort(adj_.begin() + row_[q], adj_.begin() + row_[q + 1]);
}

bool Topology::has_qubit(int q) const noexcept {
    return q >= 0 && q < static_cast<int>(present_.size()) && present_[q];
}

bool Topology::has_coupler(int a, int b) const noexcept {
    if (!has_qubit(a) || !has_qubit(b)) return false;
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

std::span<const int> Topology::neighbors(int q) const {
    if (q < 0 || q >= static_cast<int>(present_.size()))
        throw std::out_of_range("topology: qubit id out of range");
    return {adj_.data() + row_[q], static_cast<std::size_t>(row_[q + 1] - row_[q])};
}

namespace {

std::vector<int> iota_ids(int n) {
    std::vector<int> ids(n);
    for (int q = 0; q < n; ++q) ids[q] = q;
    return ids;
}

}  // namespace

Topology chimera(int m) {
    if (m < 1) throw std::invalid_argument("chimera: need m >= 1");
    std::vector<Edge> couplers;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            for (int k = 0; k < 4; ++k)
                for (int kk = 0; kk < 4; ++kk)
                    couplers.emplace_back(chimera_id(m, i, j, 0, k), chimera_id(m, i, j, 1, kk));
            for (int k = 0; k < 4; ++k) {
                if (i + 1 < m)
                    couplers.emplace_back(chimera_id(m, i, j, 0, k), chimera_id(m, i + 1, j, 0, k));
                if (j + 1 < m)
                    couplers.emplace_back(chimera_id(m, i, j, 1, k), chimera_id(m, i, j + 1, 1, k));
            }
        }
    return Topology({Family::Chimera, m}, iota_ids(8 * m * m), std::move(couplers));
}

Topology pegasus(int m) {
    if (m < 2) throw std::invalid_argument("pegasus: need m >= 2");
    // Standard shift pattern for vertical (0) and horizontal (1) qubits.
    static constexpr int shift0[12] = {2, 2, 2, 2, 10, 10, 10, 10, 6, 6, 6, 6};
    static constexpr int shift1[12] = {6, 6, 6, 6, 2, 2, 2, 2, 10, 10, 10, 10};
    const int m1 = m - 1;
    std::vector<Edge> couplers;
    for (int u = 0; u < 2; ++u)
        for (int w = 0; w < m; ++w)
            for (int k = 0; k < 12; ++k)
                for (int z = 0; z < m1; ++z) {
                    if (z + 1 < m1)
                        couplers.emplace_back(pegasus_id(m, u, w, k, z), pegasus_id(m, u, w, k, z + 1));
                    if (k % 2 == 0)
                        couplers.emplace_back(pegasus_id(m, u, w, k, z), pegasus_id(m, u, w, k + 1, z));
                }
    for (int w = 0; w < m; ++w)
        for (int kk = 0; kk < 12; ++kk) {
            const int k_begin = w > 0 ? 0 : shift1[kk];
            const int k_end = w < m1 ? 12 : shift1[kk];
            for (int k = k_begin; k < k_end; ++k)
                for (int z = 0; z < m1; ++z)
                    couplers.emplace_back(
                        pegasus_id(m, 0, w, k, z),
                        pegasus_id(m, 1, z + (kk < shift0[k] ? 1 : 0), kk, w - (k < shift1[kk] ? 1 : 0)));
        }
    return Topology({Family::Pegasus, m}, iota_ids(24 * m * m1), std::move(couplers));
}

Topology zephyr(int m) {
    if (m < 1) throw std::invalid_argument("zephyr: need m >= 1");
    constexpr int t = 4;
    const int big = 2 * m + 1;
    std::vector<Edge> couplers;
    for (int u = 0; u < 2; ++u)
        for (int w = 0; w < big; ++w)
            for (int k = 0; k < t; ++k) {
                for (int j = 0; j < 2; ++j)
                    for (int z = 0; z + 1 < m; ++z)
                        couplers.emplace_back(zephyr_id(m, u, w, k, j, z), zephyr_id(m, u, w, k, j, z + 1));
                for (int a = 0; a < 2; ++a)
                    for (int z = a; z < m; ++z)
                        couplers.emplace_back(zephyr_id(m, u, w, k, 0, z), zephyr_id(m, u, w, k, 1, z - a));
            }
    for (int w = 0; w < m; ++w)
        for (int z = 0; z < m; ++z)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            for (int k = 0; k < t; ++k)
                                for (int h = 0; h < t; ++h)
                                    couplers.emplace_back(
                                        zephyr_id(m, 0, 2 * w + 1 + a * (2 * i - 1), k, j, z),
                                        zephyr_id(m, 1, 2 * z + 1 + b * (2 * j - 1), h, i, w));
    return Topology({Family::Zephyr, m}, iota_ids(16 * m * big), std::move(couplers));
}

Topology make_topology(TopologyShape shape) {
    switch (shape.family) {
        case Family::Chimera: return chimera(shape.m);
        case Family::Pegasus: return pegasus(shape.m);
        case Family::Zephyr: return zephyr(shape.m);
    }
    throw std::invalid_argument("make_topology: unknown family");
}

Topology apply_defects(const Topology& t, std::span<const int> remove_qubits,
                       std::span<const Edge> remove_couplers) {
    std::vector<char> drop_q(t.shape().ideal_qubits(), 0);
    for (int q : remove_qubits) {
        if (!t.has_qubit(q))
            throw std::invalid_argument("apply_defects: qubit " + std::to_string(q) + " not present");
        drop_q[q] = 1;
    }
    std::vector<Edge> drop_c;
    for (auto c : remove_couplers) {
        if (!t.has_coupler(c.first, c.second))
            throw std::invalid_argument("apply_defects: coupler (" + std::to_string(c.first) + "," +
                                        std::to_string(c.second) + ") not present");
        drop_c.push_back(make_edge(c.first, c.second));
    }
    std::sort(drop_c.begin(), drop_c.end());

    std::vector<int> qubits;
    for (int q : t.qubits())
        if (!drop_q[q]) qubits.push_back(q);
    std::vector<Edge> couplers;
    for (auto c : t.couplers())
        if (!drop_q[c.first] && !drop_q[c.second] &&
            !std::binary_search(drop_c.begin(), drop_c.end(), c))
            couplers.push_back(c);

    auto removed_q = t.removed_qubits();
    removed_q.insert(removed_q.end(), remove_qubits.begin(), remove_qubits.end());
    auto removed_c = t.removed_couplers();
    removed_c.insert(removed_c.end(), drop_c.begin(), drop_c.end());
    return Topology(t.shape(), std::move(qubits), std::move(couplers), std::move(removed_q),
                    std::move(removed_c));
}

nlohmann::json topology_to_json(const Topology& t) {
    auto pairs = [](const std::vector<Edge>& es) {
        nlohmann::json a = nlohmann::json::array();
        for (auto [x, y] : es) a.push_back({x, y});
        return a;
    };
    return {{"schema_version", 1},
            {"family", to_string(t.family())},
            {"shape", {{"m", t.shape().m}, {"t", 4}}},
            {"qubits", t.qubits()},
            {"couplers", pairs(t.couplers())},
            {"defects", {{"qubits", t.removed_qubits()}, {"couplers", pairs(t.removed_couplers())}}}};
}

Topology topology_from_json(const nlohmann::json& j) {
    try {
        TopologyShape shape{family_from_string(j.at("family").get<std::string>()),
                            j.at("shape").at("m").get<int>()};
        if (j.at("shape").value("t", 4) != 4) throw ParseError("topology: only t = 4 is supported");
        auto read_pairs = [](const nlohmann::json& a) {
            std::vector<Edge> es;
            for (const auto& p : a) {
                if (!p.is_array() || p.size() != 2) throw ParseError("topology: coupler must be a pair");
                es.emplace_back(p[0].get<int>(), p[1].get<int>());
            }
            return es;
        };
        std::vector<int> removed_q;
        std::vector<Edge> removed_c;
        if (j.contains("defects")) {
            removed_q = j["defects"].value("qubits", std::vector<int>{});
            if (j["defects"].contains("couplers")) removed_c = read_pairs(j["defects"]["couplers"]);
        }
        return Topology(shape, j.at("qubits").get<std::vector<int>>(), read_pairs(j.at("couplers")),
                        std::move(removed_q), std::move(removed_c));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("topology: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

nlohmann::json parse_json_text(std::string_view text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
        const std::size_t line =
            1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + pos, '\n'));
        throw ParseError(e.what(), line);
    }
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

Topology parse_topology(std::string_view text) { return topology_from_json(parse_json_text(text)); }

void save_topology(const Topology& t, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << topology_to_json(t).dump() << '\n';
}

Topology load_topology(const std::filesystem::path& path) {
    return topology_from_json(read_json_file(path));
}

}  // namespace qabench
