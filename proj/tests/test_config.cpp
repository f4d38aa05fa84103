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

#include "doctest.h"
#include "qabench/config.hpp"
#include "qabench/error.hpp"

using namespace qabench;

TEST_CASE("defaults describe the full clique grid") {
    const ExperimentConfig cfg;
    CHECK(cfg.num_graphs == 200);
    CHECK(cfg.n == 52);
    CHECK(cfg.chain_strengths.size() == 13);
    CHECK(cfg.annealing_times_us.size() == 5);
    CHECK(cfg.num_reads == 1000);
    CHECK(cfg.graph_count() * cfg.chain_strengths.size() * cfg.annealing_times_us.size() == 13000);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config parsing") {
    const auto cfg = parse_config(R"(
# toy grid
problem = cut
graphs = 3        # trailing comment
n = 14
density_sampling = stratified
topology = pegasus:6
embedding = emb/k14.json
chain_strengths = 0.5, 1,2
annealing_times_us = 0.5,2000
num_reads = 50
seed = 18446744073709551615
output = runs/out.jsonl
gsp_normalization = unbroken
)", "/base");
    CHECK(cfg.problem == ProblemKind::Cut);
    CHECK(cfg.num_graphs == 3);
    CHECK(cfg.n == 14);
    CHECK(cfg.density_sampling == DensitySampling::Stratified);
    CHECK(cfg.topology == "pegasus:6");
    CHECK(cfg.embedding_file == std::filesystem::path("/base/emb/k14.json"));
    CHECK(cfg.chain_strengths == std::vector<double>{0.5, 1, 2});
    CHECK(cfg.annealing_times_us == std::vector<double>{0.5, 2000});
    CHECK(cfg.seed == 18446744073709551615ULL);
    CHECK(cfg.output == std::filesystem::path("/base/runs/out.jsonl"));
    CHECK(cfg.gsp_normalization == GspNormalization::UnbrokenReads);
}

TEST_CASE("config round trip through its text form") {
    ExperimentConfig cfg;
    cfg.chain_strengths = {0.1, 1.0 / 3.0, 7};
    cfg.noise_sigma = 0.0;
    cfg.seed = 99;
    cfg.output = "/tmp/x.jsonl";
    CHECK(parse_config(format_config(cfg)) == cfg);
}

TEST_CASE("config errors carry line numbers") {
    auto line_of = [](const char* text) {
        try {
            parse_config(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{999};
    };
    CHECK(line_of("problem = clique\nbogus = 1\n") == 2);
    CHECK(line_of("\n\nnum_reads = ten\n") == 3);
    CHECK(line_of("seed = 1\nseed = 2\n") == 2);
    CHECK(line_of("just words\n") == 1);
    CHECK(line_of("problem = tsp\n") == 1);
    CHECK(line_of("topology = chimera\n") == 1);
    CHECK(line_of("chain_strengths = 1, , 2\n") == 1);
    CHECK(line_of("density_sampling = sometimes\n") == 1);
    // Whole-config constraints have no single line.
    CHECK(line_of("chain_strengths = 1, -2\n") == 0);
    CHECK(line_of("annealing_times_us =\n") == 0);
    CHECK(line_of("num_reads = 0\n") == 0);
    CHECK(line_of("beta_hot = 20\n") == 0);
}

TEST_CASE("topology specs") {
    CHECK(parse_topology_spec("chimera:16") == TopologyShape{Family::Chimera, 16});
    CHECK(parse_topology_spec("zephyr:4") == TopologyShape{Family::Zephyr, 4});
    CHECK_THROWS_AS(parse_topology_spec("pegasus:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_topology_spec("king:3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_topology_spec("chimera:x"), std::invalid_argument);
}
