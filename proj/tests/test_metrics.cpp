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

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qabench/error.hpp"
#include "qabench/metrics.hpp"
#include "qabench/rng.hpp"

using namespace qabench;

namespace {

LogicalSample from_set(int n, std::initializer_list<int> members) {
    LogicalSample s;
    s.spins.assign(n, -1);
    for (int v : members) s.spins[v] = 1;
    return s;
}

LogicalSample broken_sample() {
    LogicalSample s;
    s.broken = true;
    s.broken_chains.push_back({0, {1, 1, -1}});
    return s;
}

// Five-vertex clique plus a pendant path; omega = 5.
Graph k5_with_tail() {
    std::vector<Edge> edges;
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) edges.emplace_back(u, v);
    edges.emplace_back(4, 5);
    edges.emplace_back(5, 6);
    return Graph(7, edges);
}

ExperimentRecord record(int graph, int bin, double cs, double t, double ar, double cbp) {
    ExperimentRecord r;
    r.graph_id = graph;
    r.density_bin = bin;
    r.chain_strength = cs;
    r.annealing_time_us = t;
    r.mean_ar = ar;
    r.chain_break_proportion = cbp;
    return r;
}

}  // namespace

TEST_CASE("clique approximation ratio") {
    const auto g = k5_with_tail();
    CHECK(approximation_ratio(from_set(7, {0, 1, 2, 3}), ProblemKind::Clique, g, 5) == 0.8);
    CHECK(approximation_ratio(from_set(7, {0, 1, 2, 3, 4}), ProblemKind::Clique, g, 5) == 1.0);
    CHECK(approximation_ratio(broken_sample(), ProblemKind::Clique, g, 5) == 0.0);
    // Three vertices, one missing edge: 3 - 2 = 1.
    CHECK(approximation_ratio(from_set(7, {4, 5, 6}), ProblemKind::Clique, g, 5) == doctest::Approx(0.2));
    CHECK(approximation_ratio(from_set(7, {0, 1, 6}), ProblemKind::Clique, g, 5) == 0.0);
    CHECK(approximation_ratio(from_set(7, {}), ProblemKind::Clique, g, 5) == 0.0);
    CHECK_THROWS_AS(approximation_ratio(from_set(7, {0}), ProblemKind::Clique, g, 0), std::invalid_argument);
}

TEST_CASE("clique objective equals minus the qubo energy") {
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        const auto g = generate_gnp(10, 0.5, t);
        const auto q = max_clique_qubo(g);
        const auto mask = static_cast<std::uint32_t>(rng()) & 1023;
        const auto s = oracle::spins(mask, 10);
        CHECK(sample_objective(s, ProblemKind::Clique, g) == -oracle::energy(q, oracle::bits(mask, 10)));
    }
}

TEST_CASE("cut approximation ratio") {
    const Graph sq(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    CHECK(approximation_ratio(from_set(4, {0, 2}), ProblemKind::Cut, sq, 4) == 1.0);
    CHECK(approximation_ratio(from_set(4, {0}), ProblemKind::Cut, sq, 4) == 0.5);
}

TEST_CASE("mean ratio, chain breaks and ground-state probability") {
    const auto g = k5_with_tail();
    std::vector<LogicalSample> all_opt(1000, from_set(7, {0, 1, 2, 3, 4}));
    CHECK(mean_approximation_ratio(all_opt, ProblemKind::Clique, g, 5) == 1.0);
    CHECK(chain_break_proportion(all_opt) == 0.0);
    CHECK(ground_state_probability(all_opt, ProblemKind::Clique, g, 5) == 1.0);

    std::vector<LogicalSample> half(500, from_set(7, {0, 1, 2, 3, 4}));
    half.insert(half.end(), 500, broken_sample());
    CHECK(mean_approximation_ratio(half, ProblemKind::Clique, g, 5) == 0.5);
    CHECK(chain_break_proportion(half) == 0.5);
    CHECK(ground_state_probability(half, ProblemKind::Clique, g, 5) == 0.5);
    CHECK(ground_state_probability(half, ProblemKind::Clique, g, 5, GspNormalization::UnbrokenReads) == 1.0);

    // 137 broken, 30 optimal, the rest size-3 cliques.
    std::vector<LogicalSample> planted(137, broken_sample());
    planted.insert(planted.end(), 30, from_set(7, {0, 1, 2, 3, 4}));
    planted.insert(planted.end(), 833, from_set(7, {1, 2, 3}));
    CHECK(chain_break_proportion(planted) == doctest::Approx(0.137));
    CHECK(ground_state_probability(planted, ProblemKind::Clique, g, 5) == doctest::Approx(0.03));
    CHECK(mean_approximation_ratio(planted, ProblemKind::Clique, g, 5) ==
          doctest::Approx((30 * 1.0 + 833 * 0.6) / 1000));
    CHECK(ground_state_probability(planted, ProblemKind::Clique, g, 4) == 0.0);

    const std::vector<LogicalSample> none;
    CHECK_THROWS_AS(mean_approximation_ratio(none, ProblemKind::Clique, g, 5), std::invalid_argument);
    CHECK_THROWS_AS(chain_break_proportion(none), std::invalid_argument);
}

TEST_CASE("time to solution") {
    CHECK(*time_to_solution(1.0, 1000, 1.0) == 1e-3);
    const double expected = 1e-3 * std::log(0.01) / std::log(0.5);
    CHECK(std::abs(*time_to_solution(1.0, 1000, 0.5) - expected) <= 1e-9 * expected);
    CHECK(*time_to_solution(1.0, 1000, 0.5) == doctest::Approx(6.644e-3).epsilon(1e-3));
    CHECK_FALSE(time_to_solution(1.0, 1000, 0.0).has_value());
    CHECK_THROWS_AS(time_to_solution(1.0, 1000, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(time_to_solution(1.0, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(time_to_solution(0.0, 10, 0.5), std::invalid_argument);
    // Decreasing in p.
    double last = INFINITY;
    for (int i = 1; i <= 100; ++i) {
        const double t = *time_to_solution(2.0, 100, i / 100.0);
        CHECK(t <= last);
        last = t;
    }
}

TEST_CASE("fair sampling entropy") {
    const std::vector<long> even = {15, 15};
    CHECK(fair_sampling_entropy(even).entropy_bits == 1.0);
    const std::vector<long> skewed = {30, 0, 0, 0};
    const auto s = fair_sampling_entropy(skewed);
    CHECK(s.eligible);
    CHECK(s.entropy_bits == 0.0);
    CHECK(s.max_bits == 2.0);
    const std::vector<long> three = {10, 10, 10};
    CHECK(fair_sampling_entropy(three).entropy_bits == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
    for (int k = 2; k <= 5; ++k) {
        const std::vector<long> uniform(k, 30);
        CHECK(std::abs(fair_sampling_entropy(uniform).entropy_bits - std::log2(k)) <= 1e-12);
    }
    // Permutation invariance.
    const std::vector<long> a = {3, 20, 9}, b = {20, 9, 3};
    CHECK(fair_sampling_entropy(a).entropy_bits == doctest::Approx(fair_sampling_entropy(b).entropy_bits));

    const std::vector<long> few = {10, 19};
    CHECK_FALSE(fair_sampling_entropy(few).eligible);
    CHECK(fair_sampling_entropy(few).reason.find("ineligible") != std::string::npos);
    const std::vector<long> one = {100};
    CHECK_FALSE(fair_sampling_entropy(one).eligible);
    const std::vector<long> six(6, 10);
    CHECK_FALSE(fair_sampling_entropy(six).eligible);
}

TEST_CASE("ground-state counts per clique") {
    const Graph two(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
    const std::vector<std::vector<int>> cliques = {{0, 1, 2}, {3, 4, 5}};
    std::vector<LogicalSample> s;
    s.insert(s.end(), 7, from_set(6, {0, 1, 2}));
    s.insert(s.end(), 4, from_set(6, {3, 4, 5}));
    s.insert(s.end(), 3, from_set(6, {2, 3}));
    s.push_back(broken_sample());
    CHECK(clique_ground_state_counts(s, cliques) == std::vector<long>{7, 4});
}

TEST_CASE("chain break runs") {
    const std::vector<Value> row1 = {-1, -1, -1, -1, -1, -1, 1, 1, 1, 1, 1, 1, 1, 1};
    const std::vector<Value> row2 = {1, 1, -1, -1, -1, -1, 1, 1, 1, 1, 1, 1, 1, 1};
    const std::vector<Value> alt = {-1, 1, -1, 1};
    CHECK(chain_break_runs(row1) == 2);
    CHECK(chain_break_runs(row2) == 3);
    CHECK(chain_break_runs(alt) == 4);
    const std::vector<Value> same = {1, 1, 1};
    CHECK_THROWS_AS(chain_break_runs(same), std::invalid_argument);
    CHECK_THROWS_AS(chain_break_runs(std::vector<Value>{}), std::invalid_argument);

    std::vector<LogicalSample> s(3, broken_sample());
    s[1].broken_chains.push_back({2, alt});
    CHECK(chain_break_run_distribution(s) == std::map<int, long>{{2, 3}, {4, 1}});
}

TEST_CASE("density-bin aggregation") {
    std::vector<ExperimentRecord> one = {record(0, 3, 2, 100, 0.7, 0.1)};
    auto c = aggregate_by_density_bin(one);
    REQUIRE(c.size() == 1);
    CHECK(c[0].mean_ar == 0.7);
    CHECK(c[0].density_bin == 3);
    CHECK(c[0].n_graphs == 1);

    std::vector<ExperimentRecord> two = {record(0, 3, 2, 100, 0.4, 0.2), record(1, 3, 2, 100, 0.6, 0.4)};
    c = aggregate_by_density_bin(two);
    REQUIRE(c.size() == 1);
    CHECK(c[0].mean_ar == doctest::Approx(0.5));
    CHECK(c[0].mean_cbp == doctest::Approx(0.3));

    // Synthetic 200 records against a direct recomputation.
    Rng rng(12);
    std::vector<ExperimentRecord> many;
    const double cs[] = {0.5, 2, 4};
    const double ts[] = {1, 100};
    for (int i = 0; i < 200; ++i) {
        auto r = record(i, static_cast<int>(rng.below(10)), cs[rng.below(3)], ts[rng.below(2)], rng.uniform(),
                        rng.uniform());
        if (i % 37 == 0) r.error = "planted failure";
        many.push_back(r);
    }
    const auto expected = oracle::aggregate(many);
    const auto got = aggregate_by_density_bin(many);
    REQUIRE(got.size() == expected.size());
    for (const auto& p : got) {
        const auto& e = expected.at({static_cast<int>(p.problem), p.annealing_time_us, p.chain_strength, p.density_bin});
        CHECK(p.mean_ar == doctest::Approx(e.ar).epsilon(1e-12));
        CHECK(p.mean_cbp == doctest::Approx(e.cbp).epsilon(1e-12));
        CHECK(p.n_graphs == e.count);
    }
    CHECK(aggregate_by_density_bin(std::vector<ExperimentRecord>{}).empty());
}

TEST_CASE("success_any") {
    std::vector<ExperimentRecord> rs(4, record(3, 1, 2, 100, 0.5, 0.1));
    CHECK_FALSE(success_any(rs));
    rs[2].ground_state_reads = 1;
    CHECK(success_any(rs));
    rs[2].optimum_exact = false;
    CHECK_THROWS_AS(success_any(rs), std::invalid_argument);
}

TEST_CASE("record json round trip") {
    auto r = record(5, 4, 2.5, 2000, 0.75, 0.125);
    r.problem = ProblemKind::Clique;
    r.n = 52;
    r.num_edges = 700;
    r.density = 700.0 / 1326;
    r.topology = "C16";
    r.num_sweeps = 20000;
    r.num_reads = 1000;
    r.optimum = 11;
    r.gsp = 0.031;
    r.ground_state_reads = 31;
    r.tts_seconds = 0.5;
    r.elapsed_seconds = 3.25;
    r.seed = 0xfedcba9876543210ULL;
    r.num_optima = 2;
    r.ground_state_counts = {14, 17};
    r.chain_break_runs = {{2, 90}, {3, 4}};
    const auto back = record_from_json(record_to_json(r));
    CHECK(record_to_json(back) == record_to_json(r));
    CHECK(back.seed == r.seed);
    CHECK(back.tts_seconds == r.tts_seconds);

    r.tts_seconds.reset();
    CHECK_FALSE(record_from_json(record_to_json(r)).tts_seconds.has_value());
    r.error = "embedding failed";
    CHECK(*record_from_json(record_to_json(r)).error == "embedding failed");
    CHECK_THROWS_AS(record_from_json(nlohmann::json{{"schema_version", 1}}), ParseError);
}
