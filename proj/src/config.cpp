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

#include "qabench/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qabench/error.hpp"

namespace qabench {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view s) {
    s = trim(s);
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    if constexpr (std::is_floating_point_v<T>)
        if (!std::isfinite(value)) throw std::invalid_argument("not finite: " + std::string(s));
    return value;
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> items;
    while (true) {
        const auto comma = s.find(',');
        items.push_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    if (items.size() == 1 && items[0].empty()) items.clear();
    return items;
}

std::vector<double> parse_reals(std::string_view s) {
    std::vector<double> out;
    for (auto item : split_list(s)) out.push_back(parse_number<double>(item));
    return out;
}

std::filesystem::path resolve(std::string_view value, const std::filesystem::path& base) {
    std::filesystem::path p{std::string(value)};
    if (p.empty() || p.is_absolute() || base.empty()) return p;
    return base / p;
}

std::string format_real(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_reals(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_real(v[i]);
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& key, const std::string& why) {
        throw std::invalid_argument(key + ": " + why);
    };
    if (graph_files.empty() && num_graphs < 1) fail("graphs", "must be at least 1");
    if (graph_files.empty() && n < 2) fail("n", "must be at least 2");
    if (!(0.0 < density_min && density_min <= density_max && density_max < 1.0))
        fail("density_min/density_max", "need 0 < density_min <= density_max < 1");
    parse_topology_spec(topology);
    if (chain_strengths.empty()) fail("chain_strengths", "grid is empty");
    for (double c : chain_strengths)
        if (!(c > 0.0)) fail("chain_strengths", "values must be positive");
    if (annealing_times_us.empty()) fail("annealing_times_us", "grid is empty");
    for (double t : annealing_times_us)
        if (!(t > 0.0)) fail("annealing_times_us", "values must be positive");
    if (num_reads < 1) fail("num_reads", "must be at least 1");
    if (!(sweeps_per_us > 0.0)) fail("sweeps_per_us", "must be positive");
    if (!(beta_hot > 0.0 && beta_hot < beta_cold)) fail("beta_hot/beta_cold", "need 0 < beta_hot < beta_cold");
    if (!(noise_sigma >= 0.0)) fail("noise_sigma", "must be non-negative");
    if (threads < 0) fail("threads", "must be non-negative");
    if (reference_sweeps < 1) fail("reference_sweeps", "must be at least 1");
    if (reference_restarts < 1) fail("reference_restarts", "must be at least 1");
    if (exact_cut_limit < 2 || exact_cut_limit > 40) fail("exact_cut_limit", "must be in [2, 40]");
}

TopologyShape parse_topology_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("topology '" + spec + "' is not of the form family:size");
    TopologyShape shape;
    shape.family = family_from_string(std::string(trim(std::string_view(spec).substr(0, colon))));
    shape.m = parse_number<int>(std::string_view(spec).substr(colon + 1));
    const int min_m = shape.family == Family::Pegasus ? 2 : 1;
    if (shape.m < min_m || shape.m > 64)
        throw std::invalid_argument("topology '" + spec + "' has an unsupported size");
    return shape;
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    ExperimentConfig cfg;
    using Setter = std::function<void(std::string_view)>;
    const std::map<std::string, Setter, std::less<>> setters = {
        {"problem", [&](auto v) { cfg.problem = problem_from_string(std::string(v)); }},
        {"graphs", [&](auto v) { cfg.num_graphs = parse_number<int>(v); }},
        {"graph_files",
         [&](auto v) {
             cfg.graph_files.clear();
             for (auto item : split_list(v)) cfg.graph_files.push_back(resolve(item, base_dir));
         }},
        {"n", [&](auto v) { cfg.n = parse_number<int>(v); }},
        {"density_min", [&](auto v) { cfg.density_min = parse_number<double>(v); }},
        {"density_max", [&](auto v) { cfg.density_max = parse_number<double>(v); }},
        {"density_sampling",
         [&](auto v) {
             if (v == "uniform")
                 cfg.density_sampling = DensitySampling::Uniform;
             else if (v == "stratified")
                 cfg.density_sampling = DensitySampling::Stratified;
             else
                 throw std::invalid_argument("expected uniform or stratified");
         }},
        {"topology",
         [&](auto v) {
             cfg.topology = std::string(v);
             parse_topology_spec(cfg.topology);
         }},
        {"embedding",
         [&](auto v) {
             cfg.embedding_file = v == "generated" ? std::filesystem::path{} : resolve(v, base_dir);
         }},
        {"chain_strengths", [&](auto v) { cfg.chain_strengths = parse_reals(v); }},
        {"annealing_times_us", [&](auto v) { cfg.annealing_times_us = parse_reals(v); }},
        {"num_reads", [&](auto v) { cfg.num_reads = parse_number<int>(v); }},
        {"sweeps_per_us", [&](auto v) { cfg.sweeps_per_us = parse_number<double>(v); }},
        {"beta_hot", [&](auto v) { cfg.beta_hot = parse_number<double>(v); }},
        {"beta_cold", [&](auto v) { cfg.beta_cold = parse_number<double>(v); }},
        {"noise_sigma", [&](auto v) { cfg.noise_sigma = parse_number<double>(v); }},
        {"seed", [&](auto v) { cfg.seed = parse_number<std::uint64_t>(v); }},
        {"output", [&](auto v) { cfg.output = resolve(v, base_dir); }},
        {"threads", [&](auto v) { cfg.threads = parse_number<int>(v); }},
        {"gsp_normalization",
         [&](auto v) {
             if (v == "all")
                 cfg.gsp_normalization = GspNormalization::AllReads;
             else if (v == "unbroken")
                 cfg.gsp_normalization = GspNormalization::UnbrokenReads;
             else
                 throw std::invalid_argument("expected all or unbroken");
         }},
        {"reference_sweeps", [&](auto v) { cfg.reference_sweeps = parse_number<int>(v); }},
        {"reference_restarts", [&](auto v) { cfg.reference_restarts = parse_number<int>(v); }},
        {"exact_cut_limit", [&](auto v) { cfg.exact_cut_limit = parse_number<int>(v); }},
    };

    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) throw ParseError("unknown key '" + std::string(key) + "'", line_no);
        if (!seen.insert(std::string(key)).second)
            throw ParseError("duplicate key '" + std::string(key) + "'", line_no);
        try {
            it->second(value);
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string(key) + ": " + e.what(), line_no);
        }
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str(), path.parent_path());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string format_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "problem = " << to_string(cfg.problem) << '\n';
    if (cfg.graph_files.empty()) {
        out << "graphs = " << cfg.num_graphs << '\n' << "n = " << cfg.n << '\n';
    } else {
        out << "graph_files = ";
        for (std::size_t i = 0; i < cfg.graph_files.size(); ++i)
            out << (i ? ", " : "") << cfg.graph_files[i].string();
        out << '\n';
    }
    out << "density_min = " << format_real(cfg.density_min) << '\n'
        << "density_max = " << format_real(cfg.density_max) << '\n'
        << "density_sampling = "
        << (cfg.density_sampling == DensitySampling::Uniform ? "uniform" : "stratified") << '\n'
        << "topology = " << cfg.topology << '\n'
        << "embedding = " << (cfg.embedding_file.empty() ? "generated" : cfg.embedding_file.string())
        << '\n'
        << "chain_strengths = " << format_reals(cfg.chain_strengths) << '\n'
        << "annealing_times_us = " << format_reals(cfg.annealing_times_us) << '\n'
        << "num_reads = " << cfg.num_reads << '\n'
        << "sweeps_per_us = " << format_real(cfg.sweeps_per_us) << '\n'
        << "beta_hot = " << format_real(cfg.beta_hot) << '\n'
        << "beta_cold = " << format_real(cfg.beta_cold) << '\n'
        << "noise_sigma = " << format_real(cfg.noise_sigma) << '\n'
        << "seed = " << cfg.seed << '\n';
    if (!cfg.output.empty()) out << "output = " << cfg.output.string() << '\n';
    out << "threads = " << cfg.threads << '\n'
        << "gsp_normalization = "
        << (cfg.gsp_normalization == GspNormalization::AllReads ? "all" : "unbroken") << '\n'
        << "reference_sweeps = " << cfg.reference_sweeps << '\n'
        << "reference_restarts = " << cfg.reference_restarts << '\n'
        << "exact_cut_limit = " << cfg.exact_cut_limit << '\n';
    return out.str();
}

}  // namespace qabench
