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

#include <set>

#include "doctest.h"
#include "qabench/error.hpp"
#include "qabench/topology.hpp"

using namespace qabench;

TEST_CASE("chimera counts follow the cell formula") {
    for (int m = 1; m <= 16; ++m) {
        const auto t = chimera(m);
        CHECK(t.num_qubits() == static_cast<std::size_t>(8 * m * m));
        // 16 inside each K44 cell, 4 per adjacent cell pair in each direction.
        CHECK(t.num_couplers() == static_cast<std::size_t>(16 * m * m + 2 * 4 * m * (m - 1)));
    }
    const auto c16 = chimera(16);
    CHECK(c16.num_qubits() == 2048);
    CHECK(c16.num_couplers() == 6016);
}

TEST_CASE("chimera degrees and bipartiteness") {
    const int m = 5;
    const auto t = chimera(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int u = 0; u < 2; ++u)
                for (int k = 0; k < 4; ++k) {
                    const int q = chimera_id(m, i, j, u, k);
                    const int along = u == 0 ? i : j;
                    const int expected = 4 + (along > 0) + (along < m - 1);
                    CHECK(t.degree(q) == expected);
                }
    // Colour by (i + j + u) parity: every coupler joins opposite colours.
    auto colour = [m](int q) {
        const int k = q % 4, rest = q / 4, u = rest % 2, cell = rest / 2;
        (void)k;
        return (cell / m + cell % m + u) % 2;
    };
    for (auto [a, b] : t.couplers()) CHECK(colour(a) != colour(b));
}

TEST_CASE("pegasus and zephyr sizes") {
    CHECK(pegasus(16).num_qubits() == 5760);
    CHECK(zephyr(4).num_qubits() == 576);
    for (int m = 2; m <= 6; ++m) CHECK(pegasus(m).num_qubits() == static_cast<std::size_t>(24 * m * (m - 1)));
    for (int m = 1; m <= 5; ++m) CHECK(zephyr(m).num_qubits() == static_cast<std::size_t>(16 * m * (2 * m + 1)));
}

TEST_CASE("lattice degrees stay within the family maximum") {
    const std::pair<Topology, int> cases[] = {{chimera(16), 6}, {pegasus(16), 15}, {zephyr(4), 20}};
    for (const auto& [t, max_degree] : cases) {
        int peak = 0;
        for (int q : t.qubits()) peak = std::max(peak, t.degree(q));
        CHECK(peak == max_degree);
    }
}

TEST_CASE("linear coordinates are a bijection onto the id range") {
    const int m = 4;
    std::set<int> pe, ze;
    for (int u = 0; u < 2; ++u)
        for (int w = 0; w < m; ++w)
            for (int k = 0; k < 12; ++k)
                for (int z = 0; z < m - 1; ++z) pe.insert(pegasus_id(m, u, w, k, z));
    CHECK(pe.size() == static_cast<std::size_t>(24 * m * (m - 1)));
    CHECK(*pe.rbegin() == 24 * m * (m - 1) - 1);
    for (int u = 0; u < 2; ++u)
        for (int w = 0; w <= 2 * m; ++w)
            for (int k = 0; k < 4; ++k)
                for (int j = 0; j < 2; ++j)
                    for (int z = 0; z < m; ++z) ze.insert(zephyr_id(m, u, w, k, j, z));
    CHECK(ze.size() == static_cast<std::size_t>(16 * m * (2 * m + 1)));
    CHECK(*ze.rbegin() == 16 * m * (2 * m + 1) - 1);
}

TEST_CASE("topology rejects inconsistent graphs") {
    CHECK_THROWS_AS(Topology({Family::Chimera, 1}, {0, 1}, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Topology({Family::Chimera, 1}, {0, 0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Topology({Family::Chimera, 1}, {0, 9}, {}), std::invalid_argument);
    CHECK_THROWS_AS(pegasus(1), std::invalid_argument);
}

TEST_CASE("defects remove qubits with their couplers") {
    const auto t = chimera(2);
    const int q = chimera_id(2, 0, 0, 0, 0);
    const int degree = t.degree(q);
    const std::vector<int> qs = {q};
    const std::vector<Edge> cs = {make_edge(chimera_id(2, 1, 1, 0, 0), chimera_id(2, 1, 1, 1, 0))};
    const auto d = apply_defects(t, qs, cs);
    CHECK(d.num_qubits() == t.num_qubits() - 1);
    CHECK(d.num_couplers() == t.num_couplers() - degree - 1);
    CHECK_FALSE(d.has_qubit(q));
    CHECK_FALSE(d.has_coupler(cs[0].first, cs[0].second));
    CHECK(d.removed_qubits() == qs);
    const std::vector<int> missing = {q};
    CHECK_THROWS_AS(apply_defects(d, missing, {}), std::invalid_argument);
}

TEST_CASE("topology json round trip, defects included") {
    const std::vector<int> qs = {3, 17};
    const auto t = apply_defects(pegasus(3), qs, {});
    const auto back = topology_from_json(topology_to_json(t));
    CHECK(back == t);
    CHECK(parse_topology(topology_to_json(zephyr(2)).dump()) == zephyr(2));
    CHECK_THROWS_AS(parse_topology("{\"schema_version\": 1,"), ParseError);
    auto j = topology_to_json(chimera(1));
    j["couplers"].push_back({0, 99});
    CHECK_THROWS_AS(topology_from_json(j), ParseError);
}
