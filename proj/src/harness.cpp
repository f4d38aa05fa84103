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

#include "qabench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <thread>
#include <tuple>

#include "qabench/embedding.hpp"
#include "qabench/error.hpp"
#include "qabench/exports.hpp"
#include "qabench/models.hpp"
#include "qabench/oracles.hpp"
#include "qabench/rng.hpp"
#include "qabench/topology.hpp"

namespace qabench {

namespace {

constexpr std::uint64_t kGraphTag = 0x6772617068736565;  // "graphsee"
constexpr int kStrata = 10;

using CellKey = std::tuple<int, double, double>;

CellKey key_of(const ExperimentRecord& r) {
    return {r.graph_id, r.chain_strength, r.annealing_time_us};
}

// Everything a cell needs about its graph, computed once.
struct GraphContext {
    std::once_flag once;
    std::optional<std::string> error;
    IsingModel logical;
    int optimum = 0;
    bool optimum_exact = true;
    MaximumCliques cliques;
};

void prepare_graph(const ExperimentConfig& cfg, const GraphInstance& gi, const Embedding* emb,
                   const Topology& topo, GraphContext& ctx) {
    const Graph& g = gi.graph;
    try {
        if (!emb) throw EmbeddingError("no embedding available");
        if (emb->size() < g.num_vertices())
            throw EmbeddingError("embedding has " + std::to_string(emb->size()) + " chains for " +
                                 std::to_string(g.num_vertices()) + " variables");
        if (cfg.problem == ProblemKind::Clique) {
            ctx.logical = qubo_to_ising(max_clique_qubo(g));
            ctx.cliques = all_maximum_cliques(g);
            ctx.optimum = ctx.cliques.size;
        } else {
            ctx.logical = max_cut_ising(g);
            if (g.num_vertices() <= cfg.exact_cut_limit) {
                ctx.optimum = max_cut_exact(g, cfg.exact_cut_limit).cut;
            } else {
                ctx.optimum = reference_cut(g, cfg.reference_sweeps, cfg.reference_restarts,
                                            mix_seed({gi.seed, 2}))
                                  .cut;
                ctx.optimum_exact = false;
            }
        }
        Embedding used{emb->target, {emb->chains.begin(), emb->chains.begin() + g.num_vertices()}};
        // The logical interaction graph: complement edges carry the clique
        // penalties, graph edges carry the cut couplings.
        const Graph interactions = cfg.problem == ProblemKind::Clique ? complement(g) : g;
        if (const auto report = validate_embedding(used, topo, interactions); !report.ok())
            throw EmbeddingError(report.summary());
    } catch (const std::exception& e) {
        ctx.error = e.what();
    }
}

ExperimentRecord run_cell(const ExperimentConfig& cfg, const GraphInstance& gi,
                          GraphContext& ctx, const Embedding* emb, const Topology& topo,
                          double cs, double t, SamplerBackend& backend, int sampler_threads) {
    const Graph& g = gi.graph;
    ExperimentRecord r;
    r.graph_id = gi.id;
    r.n = g.num_vertices();
    r.num_edges = static_cast<int>(g.num_edges());
    r.density = density(g);
    r.density_bin = density_bin(r.density);
    r.problem = cfg.problem;
    r.topology = topo.shape().name();
    r.chain_strength = cs;
    r.annealing_time_us = t;
    r.num_sweeps = map_anneal_time(t, cfg.sweeps_per_us);
    r.num_reads = cfg.num_reads;
    r.seed = cell_seed(cfg.seed, gi.id, cs, t);
    try {
        if (ctx.error) throw EmbeddingError(*ctx.error);
        Embedding used{emb->target, {emb->chains.begin(), emb->chains.begin() + g.num_vertices()}};
        const auto phys =
            embed_problem(ctx.logical, used, topo, cs, cfg.noise_sigma, mix_seed({r.seed, 1}));
        SamplerParams sp;
        sp.num_reads = cfg.num_reads;
        sp.num_sweeps = r.num_sweeps;
        sp.beta_hot = cfg.beta_hot;
        sp.beta_cold = cfg.beta_cold;
        sp.seed = mix_seed({r.seed, 2});
        sp.num_threads = sampler_threads;
        const auto set = backend.sample(phys.model, sp);
        if (set.num_reads() != cfg.num_reads || set.num_variables != phys.model.num_variables())
            throw SolverError("backend returned a sample set of the wrong shape");
        const auto samples = unembed(set, phys.embedding);

        r.optimum = ctx.optimum;
        r.optimum_exact = ctx.optimum_exact;
        r.mean_ar = mean_approximation_ratio(samples, cfg.problem, g, ctx.optimum);
        r.chain_break_proportion = chain_break_proportion(samples);
        r.ground_state_reads = ground_state_reads(samples, cfg.problem, g, ctx.optimum);
        r.gsp = ground_state_probability(samples, cfg.problem, g, ctx.optimum,
                                         cfg.gsp_normalization);
        r.elapsed_seconds = set.elapsed_seconds;
        if (r.elapsed_seconds > 0.0)
            r.tts_seconds = time_to_solution(r.elapsed_seconds, cfg.num_reads, r.gsp);
        if (cfg.problem == ProblemKind::Clique) {
            r.num_optima = static_cast<int>(ctx.cliques.cliques.size());
            if (r.num_optima >= kFairMinOptima && r.num_optima <= kFairMaxOptima)
                r.ground_state_counts = clique_ground_state_counts(samples, ctx.cliques.cliques);
        }
        r.chain_break_runs = chain_break_run_distribution(samples);
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

}  // namespace

std::vector<GraphInstance> make_graphs(const ExperimentConfig& cfg) {
    std::vector<GraphInstance> out;
    if (!cfg.graph_files.empty()) {
        for (std::size_t i = 0; i < cfg.graph_files.size(); ++i) {
            GraphInstance gi;
            gi.id = static_cast<int>(i);
            gi.graph = load_graph(cfg.graph_files[i]);
            gi.target_density = density(gi.graph);
            gi.seed = mix_seed({cfg.seed, kGraphTag, i});
            out.push_back(std::move(gi));
        }
        return out;
    }
    const double span = cfg.density_max - cfg.density_min;
    for (int i = 0; i < cfg.num_graphs; ++i) {
        GraphInstance gi;
        gi.id = i;
        gi.seed = mix_seed({cfg.seed, kGraphTag, static_cast<std::uint64_t>(i)});
        Rng rng(gi.seed);
        const double u = rng.uniform();
        gi.target_density = cfg.density_sampling == DensitySampling::Uniform
                                ? cfg.density_min + span * u
                                : cfg.density_min + span * ((i % kStrata) + u) / kStrata;
        gi.target_density = std::clamp(gi.target_density, cfg.density_min, cfg.density_max);
        gi.graph = generate_gnp(cfg.n, gi.target_density, mix_seed({gi.seed, 1}));
        out.push_back(std::move(gi));
    }
    return out;
}

std::uint64_t cell_seed(std::uint64_t master, int graph_id, double chain_strength,
                        double annealing_time_us) {
    return mix_seed({master, static_cast<std::uint64_t>(graph_id),
                     std::bit_cast<std::uint64_t>(chain_strength),
                     std::bit_cast<std::uint64_t>(annealing_time_us)});
}

RunResult run_grid(const ExperimentConfig& cfg, const RunOptions& options) {
    cfg.validate();
    const auto shape = parse_topology_spec(cfg.topology);
    const Topology topo = make_topology(shape);
    const auto graphs = make_graphs(cfg);
    const int max_n = std::max_element(graphs.begin(), graphs.end(), [](auto& a, auto& b) {
                          return a.graph.num_vertices() < b.graph.num_vertices();
                      })->graph.num_vertices();

    // One embedding for the largest graph; smaller graphs use its leading
    // chains. Failures here become error records for every cell.
    std::optional<Embedding> embedding;
    std::string embedding_error;
    try {
        if (!cfg.embedding_file.empty()) {
            embedding = load_embedding(cfg.embedding_file, topo);
        } else {
            if (shape.family != Family::Chimera)
                throw EmbeddingError("generated embeddings need a chimera topology");
            embedding = chimera_clique_embedding(max_n, shape.m);
        }
    } catch (const std::exception& e) {
        embedding_error = e.what();
    }

    RunResult result;
    std::map<CellKey, ExperimentRecord> done;
    if (options.resume && !cfg.output.empty() && std::filesystem::exists(cfg.output)) {
        std::vector<RecordIssue> issues;
        for (auto& r : read_records(cfg.output, issues)) {
            if (r.problem != cfg.problem || r.num_reads != cfg.num_reads ||
                r.topology != shape.name() || r.graph_id >= static_cast<int>(graphs.size()) ||
                r.seed != cell_seed(cfg.seed, r.graph_id, r.chain_strength, r.annealing_time_us))
                throw Error(cfg.output.string() + " holds records from a different configuration");
            done.emplace(key_of(r), std::move(r));
        }
    }

    struct Cell {
        int graph;
        double cs;
        double t;
    };
    std::vector<Cell> pending;
    for (int gidx = 0; gidx < static_cast<int>(graphs.size()); ++gidx)
        for (double cs : cfg.chain_strengths)
            for (double t : cfg.annealing_times_us) {
                if (auto it = done.find({gidx, cs, t}); it != done.end()) {
                    result.records.push_back(it->second);
                    ++result.resumed;
                } else {
                    pending.push_back({gidx, cs, t});
                }
            }

    std::ofstream out;
    if (!cfg.output.empty() && !pending.empty()) {
        if (cfg.output.has_parent_path()) std::filesystem::create_directories(cfg.output.parent_path());
        bool needs_newline = false;
        if (std::filesystem::exists(cfg.output) && std::filesystem::file_size(cfg.output) > 0) {
            std::ifstream in(cfg.output, std::ios::binary);
            in.seekg(-1, std::ios::end);
            needs_newline = in.get() != '\n';
        }
        out.open(cfg.output, options.resume ? std::ios::app : std::ios::trunc);
        if (!out) throw Error("cannot open " + cfg.output.string() + " for writing");
        if (needs_newline && options.resume) out << '\n';
    }

    auto backend = options.backend ? options.backend : std::make_shared<LocalBackend>();
    int threads = cfg.threads > 0 ? cfg.threads
                                  : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(pending.size())));
    // Spare threads go to the sampler when there are fewer cells than threads.
    const int sampler_threads = std::max(1, threads / workers);

    std::vector<GraphContext> contexts(graphs.size());
    std::vector<ExperimentRecord> fresh(pending.size());
    std::mutex write_mutex;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < pending.size();) {
            const Cell& c = pending[i];
            auto& ctx = contexts[c.graph];
            const Embedding* emb = embedding ? &*embedding : nullptr;
            std::call_once(ctx.once, [&] {
                prepare_graph(cfg, graphs[c.graph], emb, topo, ctx);
                if (!emb) ctx.error = embedding_error;
            });
            auto r = run_cell(cfg, graphs[c.graph], ctx, emb, topo, c.cs, c.t, *backend,
                              sampler_threads);
            std::lock_guard lock(write_mutex);
            try {
                if (out.is_open()) {
                    out << record_to_json(r).dump() << '\n';
                    out.flush();
                    if (!out) throw Error("write to " + cfg.output.string() + " failed");
                }
                if (options.on_record) options.on_record(r);
            } catch (...) {
                if (!failure) failure = std::current_exception();
                next = pending.size();
            }
            fresh[i] = std::move(r);
        }
    };
    {
        std::vector<std::jthread> pool;
        for (int w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }
    if (failure) std::rethrow_exception(failure);

    for (auto& r : fresh) {
        if (r.error) ++result.errors;
        result.records.push_back(std::move(r));
    }
    result.computed = static_cast<int>(fresh.size());
    std::sort(result.records.begin(), result.records.end(),
              [](const auto& a, const auto& b) { return key_of(a) < key_of(b); });
    return result;
}

}  // namespace qabench
