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

// qabench command line: instance generation, lattices, embeddings, grid
// runs, analysis and CSV export.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qabench/config.hpp"
#include "qabench/embedding.hpp"
#include "qabench/error.hpp"
#include "qabench/exports.hpp"
#include "qabench/harness.hpp"
#include "qabench/oracles.hpp"
#include "qabench/topology.hpp"

namespace fs = std::filesystem;
using namespace qabench;

namespace {

struct Globals {
    std::optional<std::uint64_t> seed;
    std::string config;
    std::string out;
    std::optional<int> threads;
    bool quiet = false;
};

// Raised for a failed check (as opposed to a failed command).
struct CheckFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kExitError = 1;
constexpr int kExitCheckFailed = 3;

std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

// Writes to --out when given, stdout otherwise.
class Output {
  public:
    explicit Output(const std::string& path) {
        if (path.empty()) return;
        const fs::path p(path);
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
        file_.open(p);
        if (!file_) throw Error("cannot open " + path + " for writing");
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

ExperimentConfig config_from(const Globals& g) {
    ExperimentConfig cfg = g.config.empty() ? ExperimentConfig{} : load_config(g.config);
    if (g.seed) cfg.seed = *g.seed;
    if (g.threads) cfg.threads = *g.threads;
    return cfg;
}

fs::path records_path(const std::string& explicit_path, const Globals& g) {
    if (!explicit_path.empty()) return explicit_path;
    if (!g.config.empty()) {
        const auto cfg = load_config(g.config);
        if (!cfg.output.empty()) return cfg.output;
    }
    throw std::invalid_argument("no records file: pass --records or a --config with an output");
}

void report_issues(const fs::path& path, const std::vector<RecordIssue>& issues) {
    for (const auto& i : issues)
        std::cerr << "warning: " << path.string() << ":" << i.line << ": " << one_line(i.message)
                  << '\n';
}

// ---- generate --------------------------------------------------------------

struct GenerateArgs {
    std::optional<int> count;
    std::optional<int> n;
    std::optional<double> density;
    std::optional<double> density_min, density_max;
    bool stratified = false;
};

void cmd_generate(const GenerateArgs& a, const Globals& g) {
    auto cfg = config_from(g);
    cfg.graph_files.clear();
    if (a.count) cfg.num_graphs = *a.count;
    if (a.n) cfg.n = *a.n;
    if (a.density_min) cfg.density_min = *a.density_min;
    if (a.density_max) cfg.density_max = *a.density_max;
    if (a.density) cfg.density_min = cfg.density_max = *a.density;
    if (a.stratified) cfg.density_sampling = DensitySampling::Stratified;
    cfg.validate();
    const fs::path dir = g.out.empty() ? fs::path("graphs") : fs::path(g.out);
    fs::create_directories(dir);
    for (const auto& gi : make_graphs(cfg)) {
        char name[32];
        std::snprintf(name, sizeof name, "graph_%04d.txt", gi.id);
        save_graph(gi.graph, dir / name);
        if (!g.quiet)
            std::cout << name << " n=" << gi.graph.num_vertices() << " edges=" << gi.graph.num_edges()
                      << " density=" << format_double(density(gi.graph))
                      << " bin=" << density_bin(density(gi.graph)) << '\n';
    }
}

// ---- topology --------------------------------------------------------------

struct TopologyArgs {
    std::string spec = "chimera:16";
    std::string validate;
};

void print_topology(const Topology& t) {
    std::cout << t.shape().name() << " qubits=" << t.num_qubits() << " couplers=" << t.num_couplers()
              << " ideal_qubits=" << t.shape().ideal_qubits() << '\n';
}

void cmd_topology(const TopologyArgs& a, const Globals& g) {
    if (!a.validate.empty()) {
        print_topology(load_topology(a.validate));
        return;
    }
    const auto t = make_topology(parse_topology_spec(a.spec));
    if (!g.out.empty()) save_topology(t, g.out);
    if (!g.quiet || g.out.empty()) print_topology(t);
}

// ---- embed -----------------------------------------------------------------

struct EmbedArgs {
    std::optional<int> n;
    std::optional<std::string> spec;
    std::string load;
    std::string check;
};

void print_stats(const Embedding& e) {
    const auto s = chain_stats(e);
    std::cout << "target=" << e.target.name() << " chains=" << e.size() << " qubits=" << e.num_qubits()
              << " min=" << s.min << " mean=" << format_double(s.mean) << " max=" << s.max << '\n';
}

void cmd_embed(const EmbedArgs& a, const Globals& g) {
    if (!a.check.empty()) {
        const auto e = embedding_from_json(read_json_file(a.check));
        const auto shape = a.spec ? parse_topology_spec(*a.spec) : e.target;
        const auto t = make_topology(shape);
        const int size = a.n.value_or(e.size());
        const auto report = validate_embedding(e, t, size);
        if (!report.ok()) throw CheckFailed("embedding invalid: " + report.summary());
        std::cout << "ok K" << size << " on " << shape.name() << '\n';
        print_stats(e);
        return;
    }
    // Flags win over the config; the config's file and clique size fill gaps.
    const auto cfg = config_from(g);
    const auto shape = parse_topology_spec(a.spec.value_or(cfg.topology));
    const auto t = make_topology(shape);
    fs::path file = a.load;
    if (file.empty() && !a.spec && !g.config.empty()) file = cfg.embedding_file;
    Embedding e;
    if (!file.empty()) {
        e = load_embedding(file, t);
    } else {
        if (shape.family != Family::Chimera)
            throw std::invalid_argument("only chimera clique embeddings can be generated");
        e = chimera_clique_embedding(a.n.value_or(g.config.empty() ? 52 : cfg.n), shape.m);
    }
    if (!g.out.empty()) save_embedding(e, g.out);
    print_stats(e);
}

// ---- run -------------------------------------------------------------------

struct RunArgs {
    bool fresh = false;
};

void cmd_run(const RunArgs& a, const Globals& g) {
    if (g.config.empty()) throw std::invalid_argument("run needs --config");
    auto cfg = config_from(g);
    if (!g.out.empty()) cfg.output = g.out;
    RunOptions options;
    options.resume = !a.fresh;
    if (!g.quiet)
        options.on_record = [](const ExperimentRecord& r) {
            std::cerr << "graph=" << r.graph_id << " cs=" << format_double(r.chain_strength)
                      << " t_us=" << format_double(r.annealing_time_us);
            if (r.error)
                std::cerr << " error=" << one_line(*r.error) << '\n';
            else
                std::cerr << " ar=" << format_double(r.mean_ar)
                          << " cbp=" << format_double(r.chain_break_proportion)
                          << " gsp=" << format_double(r.gsp) << '\n';
        };
    const auto result = run_grid(cfg, options);
    std::cout << "records=" << result.records.size() << " computed=" << result.computed
              << " resumed=" << result.resumed << " errors=" << result.errors;
    if (!cfg.output.empty()) std::cout << " output=" << cfg.output.string();
    std::cout << '\n';
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
    std::string records;
    std::vector<std::string> exact;
    bool success = false;
    bool fair = false;
    bool chain_breaks = false;
    int exact_cut_limit = kDefaultExactCutLimit;
};

void analyze_exact(const AnalyzeArgs& a, std::ostream& out) {
    out << "graph,n,edges,density,clique_number,num_max_cliques,max_cut\n";
    for (const auto& path : a.exact) {
        const auto g = load_graph(path);
        const auto cliques = all_maximum_cliques(g);
        out << path << ',' << g.num_vertices() << ',' << g.num_edges() << ','
            << format_double(density(g)) << ',' << cliques.size << ',' << cliques.cliques.size()
            << ',';
        if (g.num_vertices() <= a.exact_cut_limit) out << max_cut_exact(g, a.exact_cut_limit).cut;
        out << '\n';
    }
}

void analyze_success(const std::vector<ExperimentRecord>& records, std::ostream& out) {
    out << "problem,graph_id,density,density_bin,cells,success\n";
    std::map<std::pair<ProblemKind, int>, std::vector<ExperimentRecord>> by_graph;
    for (const auto& r : records)
        if (!r.error) by_graph[{r.problem, r.graph_id}].push_back(r);
    for (const auto& [key, rs] : by_graph) {
        const auto& r0 = rs.front();
        out << to_string(key.first) << ',' << key.second << ',' << format_double(r0.density) << ','
            << r0.density_bin << ',' << rs.size() << ',';
        if (!r0.optimum_exact)
            out << "unknown";
        else
            out << (success_any(rs) ? "true" : "false");
        out << '\n';
    }
}

void analyze_fair(const std::vector<ExperimentRecord>& records, std::ostream& out) {
    out << "graph_id,chain_strength,annealing_time_us,num_optima,ground_state_reads,entropy_bits,"
           "max_bits,status\n";
    for (const auto& r : records) {
        if (r.error || r.problem != ProblemKind::Clique) continue;
        out << r.graph_id << ',' << format_double(r.chain_strength) << ','
            << format_double(r.annealing_time_us) << ',' << r.num_optima << ',';
        if (r.ground_state_counts.empty()) {
            out << r.ground_state_reads << ",,,ineligible: " << r.num_optima
                << " maximum cliques (needs " << kFairMinOptima << ".." << kFairMaxOptima << ")\n";
            continue;
        }
        const auto fs = fair_sampling_entropy(r.ground_state_counts);
        out << fs.total << ',';
        if (fs.eligible)
            out << format_double(fs.entropy_bits) << ',' << format_double(fs.max_bits) << ",ok\n";
        else
            out << ",,ineligible: " << fs.reason << '\n';
    }
}

void analyze_chain_breaks(const std::vector<ExperimentRecord>& records, std::ostream& out) {
    std::map<int, long> total;
    long chains = 0;
    for (const auto& r : records)
        for (auto [runs, count] : r.chain_break_runs) {
            total[runs] += count;
            chains += count;
        }
    out << "runs,broken_chains,fraction\n";
    for (auto [runs, count] : total)
        out << runs << ',' << count << ','
            << format_double(static_cast<double>(count) / static_cast<double>(chains)) << '\n';
}

void cmd_analyze(const AnalyzeArgs& a, const Globals& g) {
    if (a.exact.empty() && !a.success && !a.fair && !a.chain_breaks)
        throw std::invalid_argument("analyze needs one of --exact, --success, --fair-sampling, --chain-breaks");
    Output o(g.out);
    auto& out = o.stream();
    if (!a.exact.empty()) analyze_exact(a, out);
    if (!a.success && !a.fair && !a.chain_breaks) return;
    const auto path = records_path(a.records, g);
    std::vector<RecordIssue> issues;
    const auto records = read_records(path, issues);
    report_issues(path, issues);
    if (a.success) analyze_success(records, out);
    if (a.fair) analyze_fair(records, out);
    if (a.chain_breaks) analyze_chain_breaks(records, out);
}

// ---- export ----------------------------------------------------------------

struct ExportArgs {
    std::string records;
    std::string curves;
    std::string tts;
};

void cmd_export(const ExportArgs& a, const Globals& g) {
    const auto path = records_path(a.records, g);
    fs::path curves = a.curves, tts = a.tts;
    if (curves.empty() && tts.empty()) {
        const fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
        curves = dir / "curves.csv";
        tts = dir / "tts.csv";
    }
    if (!curves.empty()) {
        report_issues(path, export_curves(path, curves));
        if (!g.quiet) std::cout << "wrote " << curves.string() << '\n';
    }
    if (!tts.empty()) {
        // Issues were already reported for the curves pass.
        const auto issues = export_tts(path, tts);
        if (curves.empty()) report_issues(path, issues);
        if (!g.quiet) std::cout << "wrote " << tts.string() << '\n';
    }
}

const char* error_kind(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "parse";
    if (dynamic_cast<const EmbeddingError*>(&e)) return "embedding";
    if (dynamic_cast<const InstanceTooLarge*>(&e)) return "too-large";
    if (dynamic_cast<const TransportError*>(&e)) return "transport";
    if (dynamic_cast<const SolverError*>(&e)) return "solver";
    if (dynamic_cast<const CheckFailed*>(&e)) return "check";
    if (dynamic_cast<const std::invalid_argument*>(&e)) return "invalid-argument";
    if (dynamic_cast<const fs::filesystem_error*>(&e)) return "io";
    return "runtime";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmark toolkit for embedded clique and cut problems on annealer lattices",
                 "qabench"};
    app.require_subcommand(1);
    app.fallthrough();
    app.failure_message(CLI::FailureMessage::help);

    Globals g;
    app.add_option("--seed", g.seed, "Master seed (overrides the config)");
    app.add_option("--config", g.config, "Experiment config file")->check(CLI::ExistingFile);
    app.add_option("--out", g.out, "Output file or directory");
    app.add_option("--threads", g.threads, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
    app.add_flag("--quiet", g.quiet, "Only print results");

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write G(n, p) instances as edge lists");
    generate->add_option("--count", gen.count, "Number of graphs");
    generate->add_option("--n", gen.n, "Vertices per graph");
    generate->add_option("--density", gen.density, "Fixed density");
    generate->add_option("--density-min", gen.density_min, "Lower density bound");
    generate->add_option("--density-max", gen.density_max, "Upper density bound");
    generate->add_flag("--stratified", gen.stratified, "Spread densities over the ten bins");

    TopologyArgs topo;
    auto* topology = app.add_subcommand("topology", "Emit or validate a hardware lattice");
    topology->add_option("--topology", topo.spec, "family:size, e.g. chimera:16")->capture_default_str();
    topology->add_option("--validate", topo.validate, "Topology file to load and check");

    EmbedArgs emb;
    auto* embed = app.add_subcommand("embed", "Generate, load or check a clique embedding");
    embed->add_option("--n", emb.n, "Clique size (default 52, or the chain count with --check)");
    embed->add_option("--topology", emb.spec, "family:size target");
    embed->add_option("--load", emb.load, "Embedding file to load and validate");
    embed->add_option("--check", emb.check, "Embedding file to validate; nonzero exit if invalid");

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Run the grid described by --config");
    run->add_flag("--fresh", run_args.fresh, "Overwrite the output instead of resuming");

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "Exact optima and reports over run records");
    analyze->add_option("--records", an.records, "JSONL records (default: the config's output)");
    analyze->add_option("--exact", an.exact, "Graph files to solve exactly");
    analyze->add_option("--exact-cut-limit", an.exact_cut_limit, "Largest n for the exact max cut");
    analyze->add_flag("--success", an.success, "Per-graph table: any ground state across the grid");
    analyze->add_flag("--fair-sampling", an.fair, "Ground-state entropy per cell");
    analyze->add_flag("--chain-breaks", an.chain_breaks, "Run-count distribution of broken chains");

    ExportArgs ex;
    auto* exp = app.add_subcommand("export", "Write curve and TTS CSV files");
    exp->add_option("--records", ex.records, "JSONL records (default: the config's output)");
    exp->add_option("--curves", ex.curves, "Curve CSV path");
    exp->add_option("--tts", ex.tts, "TTS CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*generate) cmd_generate(gen, g);
        if (*topology) cmd_topology(topo, g);
        if (*embed) cmd_embed(emb, g);
        if (*run) cmd_run(run_args, g);
        if (*analyze) cmd_analyze(an, g);
        if (*exp) cmd_export(ex, g);
    } catch (const std::exception& e) {
        std::cerr << "qabench: error: " << error_kind(e) << ": " << one_line(e.what()) << '\n';
        return dynamic_cast<const CheckFailed*>(&e) ? kExitCheckFailed : kExitError;
    }
    return 0;
}
