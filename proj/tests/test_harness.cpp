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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "qabench/error.hpp"
#include "qabench/exports.hpp"
#include "qabench/harness.hpp"

using namespace qabench;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

ExperimentConfig toy(const fs::path& output) {
    ExperimentConfig cfg;
    cfg.num_graphs = 2;
    cfg.n = 10;
    cfg.density_sampling = DensitySampling::Stratified;
    cfg.chain_strengths = {0.5, 2, 4};
    cfg.annealing_times_us = {1, 50};
    cfg.num_reads = 40;
    cfg.seed = 5;
    cfg.output = output;
    cfg.threads = 2;
    return cfg;
}

// Record fields that must reproduce exactly; wall-clock fields removed.
std::string metric_fields(const ExperimentRecord& r) {
    auto j = record_to_json(r);
    j.erase("elapsed_seconds");
    j.erase("tts_seconds");
    return j.dump();
}

std::vector<std::string> lines_of(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("graph instances are reproducible and stratified") {
    ExperimentConfig cfg;
    cfg.num_graphs = 20;
    cfg.density_sampling = DensitySampling::Stratified;
    cfg.seed = 3;
    const auto a = make_graphs(cfg);
    const auto b = make_graphs(cfg);
    REQUIRE(a.size() == 20);
    for (int i = 0; i < 20; ++i) {
        CHECK(a[i].graph == b[i].graph);
        CHECK(density_bin(a[i].target_density) == i % 10);
        CHECK(a[i].graph.min_degree() >= 1);
    }
    cfg.num_graphs = 5;
    const auto prefix = make_graphs(cfg);
    for (int i = 0; i < 5; ++i) CHECK(prefix[i].graph == a[i].graph);
}

TEST_CASE("cell seeds separate every coordinate") {
    std::set<std::uint64_t> seeds;
    for (int g = 0; g < 10; ++g)
        for (double cs : {0.5, 1.0, 2.0})
            for (double t : {1.0, 10.0}) seeds.insert(cell_seed(7, g, cs, t));
    CHECK(seeds.size() == 60);
    CHECK(cell_seed(7, 1, 2.0, 10.0) == cell_seed(7, 1, 2.0, 10.0));
    CHECK(cell_seed(7, 1, 2.0, 10.0) != cell_seed(8, 1, 2.0, 10.0));
}

TEST_CASE("toy grid yields one record per cell and reproduces") {
    TempDir dir("qabench_harness_repro");
    const auto a = run_grid(toy(dir.path / "a.jsonl"));
    CHECK(a.records.size() == 12);
    CHECK(a.computed == 12);
    CHECK(a.errors == 0);
    CHECK(lines_of(dir.path / "a.jsonl").size() == 12);
    for (const auto& r : a.records) {
        CHECK(r.mean_ar >= 0.0);
        CHECK(r.mean_ar <= 1.0);
        CHECK(r.num_sweeps == map_anneal_time(r.annealing_time_us));
        CHECK(r.optimum_exact);
    }

    auto cfg = toy(dir.path / "b.jsonl");
    cfg.threads = 1;
    const auto b = run_grid(cfg);
    REQUIRE(b.records.size() == 12);
    for (int i = 0; i < 12; ++i) CHECK(metric_fields(a.records[i]) == metric_fields(b.records[i]));
}

TEST_CASE("interrupted runs resume without recomputing") {
    TempDir dir("qabench_harness_resume");
    const auto cfg = toy(dir.path / "run.jsonl");
    const auto full = run_grid(cfg);
    const auto lines = lines_of(cfg.output);
    {
        // Five complete records and half of a sixth, as after a crash.
        std::ofstream out(cfg.output, std::ios::trunc);
        for (int i = 0; i < 5; ++i) out << lines[i] << '\n';
        out << lines[5].substr(0, lines[5].size() / 2);
    }
    const auto resumed = run_grid(cfg);
    CHECK(resumed.resumed == 5);
    CHECK(resumed.computed == 7);
    REQUIRE(resumed.records.size() == 12);
    for (int i = 0; i < 12; ++i) CHECK(metric_fields(resumed.records[i]) == metric_fields(full.records[i]));

    std::vector<RecordIssue> issues;
    const auto back = read_records(cfg.output, issues);
    CHECK(back.size() == 12);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].line == 6);

    auto other = cfg;
    other.seed = 6;
    CHECK_THROWS_AS(run_grid(other), Error);
}

TEST_CASE("failing cells become error records") {
    TempDir dir("qabench_harness_errors");
    auto cfg = toy(dir.path / "run.jsonl");
    auto e = chimera_clique_embedding(10, 16);
    e.chains.pop_back();
    save_embedding(e, dir.path / "nine.json");
    cfg.embedding_file = dir.path / "nine.json";
    const auto result = run_grid(cfg);
    CHECK(result.records.size() == 12);
    CHECK(result.errors == 12);
    for (const auto& r : result.records) REQUIRE(r.error);
    std::vector<RecordIssue> issues;
    CHECK(read_records(cfg.output, issues).size() == 12);
    CHECK(issues.empty());
    // Error records carry no metrics, so exports only have headers.
    std::ostringstream curves;
    write_curves(curves, result.records);
    CHECK(curves.str() == std::string(kCurvesHeader) + "\n");
}

TEST_CASE("cut grids use exact optima on small graphs") {
    TempDir dir("qabench_harness_cut");
    auto cfg = toy(dir.path / "cut.jsonl");
    cfg.problem = ProblemKind::Cut;
    const auto result = run_grid(cfg);
    const auto graphs = make_graphs(cfg);
    for (const auto& r : result.records) {
        REQUIRE_FALSE(r.error);
        CHECK(r.optimum_exact);
        CHECK(r.optimum == oracle::max_cut(graphs[r.graph_id].graph));
    }
    cfg.exact_cut_limit = 8;
    cfg.output = dir.path / "ref.jsonl";
    cfg.reference_sweeps = 200;
    for (const auto& r : run_grid(cfg).records) CHECK_FALSE(r.optimum_exact);
}

TEST_CASE("a remote backend over the loopback gives the same records") {
    auto cfg = toy("");
    const auto local = run_grid(cfg);
    RunOptions options;
    options.backend = std::make_shared<RemoteBackend>(loopback_transport(std::make_shared<LocalBackend>()));
    const auto remote = run_grid(cfg, options);
    REQUIRE(remote.records.size() == local.records.size());
    for (std::size_t i = 0; i < local.records.size(); ++i)
        CHECK(metric_fields(remote.records[i]) == metric_fields(local.records[i]));
}

TEST_CASE("curve export matches an independent aggregation") {
    TempDir dir("qabench_export_curves");
    auto cfg = toy(dir.path / "run.jsonl");
    cfg.num_graphs = 6;
    const auto result = run_grid(cfg);
    {
        std::ofstream out(cfg.output, std::ios::app);
        out << "{\"schema_version\": 1, \"graph_id\": \n";
    }
    const auto issues = export_curves(cfg.output, dir.path / "curves.csv");
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].line == 37);

    const auto expected = oracle::aggregate(result.records);
    const auto rows = lines_of(dir.path / "curves.csv");
    REQUIRE(rows.size() == expected.size() + 1);
    CHECK(rows[0] == kCurvesHeader);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::istringstream ss(rows[i]);
        std::string problem, t, cs, bin, ar, cbp, n;
        std::getline(ss, problem, ',');
        std::getline(ss, t, ',');
        std::getline(ss, cs, ',');
        std::getline(ss, bin, ',');
        std::getline(ss, ar, ',');
        std::getline(ss, cbp, ',');
        std::getline(ss, n, ',');
        const auto& e = expected.at({0, std::stod(t), std::stod(cs), std::stoi(bin)});
        CHECK(problem == "clique");
        CHECK(std::stod(ar) == doctest::Approx(e.ar).epsilon(1e-12));
        CHECK(std::stod(cbp) == doctest::Approx(e.cbp).epsilon(1e-12));
        CHECK(std::stoi(n) == e.count);
    }

    fs::path empty = dir.path / "empty.jsonl";
    std::ofstream(empty).close();
    export_curves(empty, dir.path / "empty.csv");
    CHECK(slurp(dir.path / "empty.csv") == std::string(kCurvesHeader) + "\n");
}

TEST_CASE("tts export lists defined cells and the best per graph") {
    auto make = [](int graph, double cs, double t, double gsp, std::optional<double> tts) {
        ExperimentRecord r;
        r.graph_id = graph;
        r.chain_strength = cs;
        r.annealing_time_us = t;
        r.gsp = gsp;
        r.tts_seconds = tts;
        return r;
    };
    std::ostringstream none;
    write_tts(none, {make(0, 1, 1, 0, std::nullopt), make(1, 1, 1, 0, std::nullopt)});
    CHECK(none.str() == std::string(kTtsHeader) + "\n");

    std::ostringstream one;
    write_tts(one, {make(0, 2, 10, 1.0, *time_to_solution(1.0, 1000, 1.0))});
    CHECK(one.str() == std::string(kTtsHeader) + "\nclique,0,0,0,2,10,1,0.001,cell\nclique,0,0,0,2,10,1,0.001,optimal\n");

    std::vector<ExperimentRecord> grid = {
        make(0, 1, 1, 0.1, 0.5), make(0, 2, 1, 0.2, 0.25), make(0, 4, 1, 0.0, std::nullopt),
        make(1, 1, 1, 0.3, 0.75), make(1, 2, 1, 0.4, 0.125),
    };
    std::ostringstream out;
    write_tts(out, grid);
    std::vector<std::string> optimal;
    std::istringstream in(out.str());
    int cells = 0;
    for (std::string line; std::getline(in, line);) {
        if (line.ends_with(",optimal")) optimal.push_back(line);
        if (line.ends_with(",cell")) ++cells;
    }
    CHECK(cells == 4);
    REQUIRE(optimal.size() == 2);
    CHECK(optimal[0] == "clique,0,0,0,2,1,0.2,0.25,optimal");
    CHECK(optimal[1] == "clique,1,0,0,2,1,0.4,0.125,optimal");
}
