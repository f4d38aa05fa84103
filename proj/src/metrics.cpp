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

#include "qabench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "qabench/error.hpp"

namespace qabench {

const char* to_string(ProblemKind k) noexcept { return k == ProblemKind::Clique ? "clique" : "cut"; }

ProblemKind problem_from_string(const std::string& name) {
    if (name == "clique") return ProblemKind::Clique;
    if (name == "cut") return ProblemKind::Cut;
    throw std::invalid_argument("unknown problem kind '" + name + "'");
}

int sample_objective(std::span<const Value> spins, ProblemKind kind, const Graph& g) {
    if (kind == ProblemKind::Cut) return cut_size(spins, g);
    if (spins.size() != static_cast<std::size_t>(g.num_vertices()))
        throw std::invalid_argument("sample dimension does not match graph");
    std::vector<int> chosen;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (spins[v] > 0) chosen.push_back(v);
    int missing = 0;
    for (std::size_t a = 0; a < chosen.size(); ++a)
        for (std::size_t b = a + 1; b < chosen.size(); ++b) missing += !g.has_edge(chosen[a], chosen[b]);
    return static_cast<int>(chosen.size()) - 2 * missing;
}

double approximation_ratio(const LogicalSample& s, ProblemKind kind, const Graph& g, int optimum) {
    if (optimum <= 0) throw std::invalid_argument("approximation ratio needs a positive optimum");
    if (s.broken) return 0.0;
    const int obj = sample_objective(s.spins, kind, g);
    return std::max(0, obj) / static_cast<double>(optimum);
}

double mean_approximation_ratio(std::span<const LogicalSample> samples, ProblemKind kind,
                                const Graph& g, int optimum) {
    if (samples.empty()) throw std::invalid_argument("mean approximation ratio of no samples");
    double sum = 0.0;
    for (const auto& s : samples) sum += approximation_ratio(s, kind, g, optimum);
    return sum / static_cast<double>(samples.size());
}

double chain_break_proportion(std::span<const LogicalSample> samples) {
    if (samples.empty()) throw std::invalid_argument("chain break proportion of no samples");
    const auto broken = std::count_if(samples.begin(), samples.end(), [](const auto& s) { return s.broken; });
    return static_cast<double>(broken) / static_cast<double>(samples.size());
}

int ground_state_reads(std::span<const LogicalSample> samples, ProblemKind kind, const Graph& g,
                       int optimum) {
    if (optimum <= 0) throw std::invalid_argument("ground state probability needs a positive optimum");
    int hits = 0;
    for (const auto& s : samples)
        if (!s.broken && sample_objective(s.spins, kind, g) == optimum) ++hits;
    return hits;
}

double ground_state_probability(std::span<const LogicalSample> samples, ProblemKind kind,
                                const Graph& g, int optimum, GspNormalization norm) {
    if (samples.empty()) throw std::invalid_argument("ground state probability of no samples");
    const int hits = ground_state_reads(samples, kind, g, optimum);
    std::size_t denom = samples.size();
    if (norm == GspNormalization::UnbrokenReads)
        denom = static_cast<std::size_t>(
            std::count_if(samples.begin(), samples.end(), [](const auto& s) { return !s.broken; }));
    return denom == 0 ? 0.0 : hits / static_cast<double>(denom);
}

std::optional<double> time_to_solution(double elapsed_seconds, int num_reads, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("TTS: success probability outside [0, 1]");
    if (num_reads < 1) throw std::invalid_argument("TTS: need at least one read");
    if (!(elapsed_seconds > 0.0)) throw std::invalid_argument("TTS: elapsed time must be positive");
    if (p == 0.0) return std::nullopt;
    const double per_read = elapsed_seconds / num_reads;
    if (p == 1.0) return per_read;
    return per_read * std::log(1.0 - 0.99) / std::log1p(-p);
}

FairSampling fair_sampling_entropy(std::span<const long> counts) {
    FairSampling f;
    f.num_optima = static_cast<int>(counts.size());
    for (long c : counts) {
        if (c < 0) throw std::invalid_argument("fair sampling: negative count");
        f.total += c;
    }
    if (f.num_optima < kFairMinOptima || f.num_optima > kFairMaxOptima) {
        f.reason = "ineligible for fair-sampling analysis: " + std::to_string(f.num_optima) +
                   " optima (need 2..5)";
        return f;
    }
    if (f.total < kFairMinGroundReads) {
        f.reason = "ineligible for fair-sampling analysis: " + std::to_string(f.total) +
                   " ground-state reads (need >= 30)";
        return f;
    }
    f.eligible = true;
    f.max_bits = std::log2(static_cast<double>(f.num_optima));
    double h = 0.0;
    for (long c : counts) {
        if (c == 0) continue;
        const double q = static_cast<double>(c) / static_cast<double>(f.total);
        h -= q * std::log2(q);
    }
    f.entropy_bits = std::clamp(h, 0.0, f.max_bits);
    return f;
}

std::vector<long> clique_ground_state_counts(std::span<const LogicalSample> samples,
                                             const std::vector<std::vector<int>>& cliques) {
    std::vector<long> counts(cliques.size(), 0);
    std::vector<int> chosen;
    for (const auto& s : samples) {
        if (s.broken) continue;
        chosen.clear();
        for (int v = 0; v < static_cast<int>(s.spins.size()); ++v)
            if (s.spins[v] > 0) chosen.push_back(v);
        auto it = std::lower_bound(cliques.begin(), cliques.end(), chosen);
        if (it != cliques.end() && *it == chosen) ++counts[it - cliques.begin()];
    }
    return counts;
}

int chain_break_runs(std::span<const Value> pattern) {
    if (pattern.empty()) throw std::invalid_argument("chain_break_runs: empty pattern");
    int runs = 1;
    for (std::size_t i = 1; i < pattern.size(); ++i) runs += pattern[i] != pattern[i - 1];
    if (runs < 2) throw std::invalid_argument("chain_break_runs: pattern is unanimous, chain not broken");
    return runs;
}

std::map<int, long> chain_break_run_distribution(std::span<const LogicalSample> samples) {
    std::map<int, long> hist;
    for (const auto& s : samples)
        for (const auto& bc : s.broken_chains) ++hist[chain_break_runs(bc.pattern)];
    return hist;
}

nlohmann::json record_to_json(const ExperimentRecord& r) {
    nlohmann::json j = {
        {"schema_version", kRecordSchemaVersion},
        {"graph_id", r.graph_id},
        {"n", r.n},
        {"num_edges", r.num_edges},
        {"density", r.density},
        {"density_bin", r.density_bin},
        {"problem", to_string(r.problem)},
        {"topology", r.topology},
        {"chain_strength", r.chain_strength},
        {"annealing_time_us", r.annealing_time_us},
        {"num_sweeps", r.num_sweeps},
        {"num_reads", r.num_reads},
        {"seed", r.seed},
    };
    if (r.error) {
        j["error"] = *r.error;
        return j;
    }
    j["optimum"] = r.optimum;
    j["optimum_exact"] = r.optimum_exact;
    j["mean_ar"] = r.mean_ar;
    j["chain_break_proportion"] = r.chain_break_proportion;
    j["gsp"] = r.gsp;
    j["ground_state_reads"] = r.ground_state_reads;
    j["tts_seconds"] = r.tts_seconds ? nlohmann::json(*r.tts_seconds) : nlohmann::json(nullptr);
    j["elapsed_seconds"] = r.elapsed_seconds;
    if (r.problem == ProblemKind::Clique) j["num_optima"] = r.num_optima;
    if (!r.ground_state_counts.empty()) j["ground_state_counts"] = r.ground_state_counts;
    nlohmann::json runs = nlohmann::json::object();
    for (auto [k, v] : r.chain_break_runs) runs[std::to_string(k)] = v;
    j["chain_break_runs"] = std::move(runs);
    return j;
}

ExperimentRecord record_from_json(const nlohmann::json& j) {
    try {
        ExperimentRecord r;
        if (j.at("schema_version").get<int>() != kRecordSchemaVersion)
            throw ParseError("record: unsupported schema_version");
        r.graph_id = j.at("graph_id").get<int>();
        r.n = j.at("n").get<int>();
        r.num_edges = j.at("num_edges").get<int>();
        r.density = j.at("density").get<double>();
        r.density_bin = j.at("density_bin").get<int>();
        r.problem = problem_from_string(j.at("problem").get<std::string>());
        r.topology = j.at("topology").get<std::string>();
        r.chain_strength = j.at("chain_strength").get<double>();
        r.annealing_time_us = j.at("annealing_time_us").get<double>();
        r.num_sweeps = j.at("num_sweeps").get<int>();
        r.num_reads = j.at("num_reads").get<int>();
        r.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("error")) {
            r.error = j["error"].get<std::string>();
            return r;
        }
        r.optimum = j.at("optimum").get<int>();
        r.optimum_exact = j.at("optimum_exact").get<bool>();
        r.mean_ar = j.at("mean_ar").get<double>();
        r.chain_break_proportion = j.at("chain_break_proportion").get<double>();
        r.gsp = j.at("gsp").get<double>();
        r.ground_state_reads = j.at("ground_state_reads").get<int>();
        if (!j.at("tts_seconds").is_null()) r.tts_seconds = j["tts_seconds"].get<double>();
        r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
        r.num_optima = j.value("num_optima", 0);
        r.ground_state_counts = j.value("ground_state_counts", std::vector<long>{});
        if (j.contains("chain_break_runs"))
            for (const auto& [k, v] : j["chain_break_runs"].items()) r.chain_break_runs[std::stoi(k)] = v.get<long>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("record: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("record: ") + e.what());
    }
}

std::vector<CurvePoint> aggregate_by_density_bin(std::span<const ExperimentRecord> records) {
    struct Members {
        std::vector<double> ar, cbp;
    };
    using Key = std::tuple<int, double, double, int>;
    std::map<Key, Members> groups;
    for (const auto& r : records) {
        if (r.error) continue;
        auto& g = groups[{static_cast<int>(r.problem), r.annealing_time_us, r.chain_strength, r.density_bin}];
        g.ar.push_back(r.mean_ar);
        g.cbp.push_back(r.chain_break_proportion);
    }
    // Sorted summation keeps the result independent of record order.
    auto mean = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        double sum = 0.0;
        for (double x : v) sum += x;
        return sum / static_cast<double>(v.size());
    };
    std::vector<CurvePoint> out;
    out.reserve(groups.size());
    for (auto& [key, g] : groups) {
        const auto& [problem, time, cs, bin] = key;
        out.push_back({static_cast<ProblemKind>(problem), time, cs, bin, mean(g.ar), mean(g.cbp),
                       static_cast<int>(g.ar.size())});
    }
    return out;
}

bool success_any(std::span<const ExperimentRecord> records_for_graph) {
    bool any = false;
    for (const auto& r : records_for_graph) {
        if (r.error) continue;
        if (!r.optimum_exact) throw std::invalid_argument("success_any needs an exact optimum");
        if (!records_for_graph.empty() && r.graph_id != records_for_graph.front().graph_id)
            throw std::invalid_argument("success_any: records span several graphs");
        any = any || r.ground_state_reads > 0;
    }
    return any;
}

}  // namespace qabench
