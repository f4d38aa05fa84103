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

#include "qabench/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qabench/error.hpp"
#include "qabench/rng.hpp"

namespace qabench {

std::size_t Embedding::num_qubits() const noexcept {
    std::size_t total = 0;
    for (const auto& c : chains) total += c.size();
    return total;
}

ChainStats chain_stats(const Embedding& e) {
    if (e.chains.empty()) throw std::invalid_argument("chain_stats: empty embedding");
    ChainStats s{static_cast<int>(e.chains[0].size()), 0.0, 0};
    for (const auto& c : e.chains) {
        const int len = static_cast<int>(c.size());
        s.min = std::min(s.min, len);
        s.max = std::max(s.max, len);
    }
    s.mean = static_cast<double>(e.num_qubits()) / static_cast<double>(e.chains.size());
    return s;
}

const char* to_string(ViolationKind k) noexcept {
    switch (k) {
        case ViolationKind::ShapeMismatch: return "shape mismatch";
        case ViolationKind::EmptyChain: return "empty chain";
        case ViolationKind::MissingQubit: return "missing qubit";
        case ViolationKind::Overlap: return "overlapping chains";
        case ViolationKind::DisconnectedChain: return "disconnected chain";
        case ViolationKind::MissingCoupler: return "missing coupler";
        case ViolationKind::SizeMismatch: return "size mismatch";
    }
    return "?";
}

bool ValidationReport::has(ViolationKind k) const noexcept {
    return std::any_of(violations.begin(), violations.end(),
                       [k](const Violation& v) { return v.kind == k; });
}

std::string ValidationReport::summary(std::size_t limit) const {
    if (ok()) return "ok";
    std::string s;
    for (std::size_t i = 0; i < violations.size() && i < limit; ++i) {
        if (i) s += "; ";
        s += violations[i].message;
    }
    if (violations.size() > limit)
        s += "; ... (" + std::to_string(violations.size() - limit) + " more)";
    return s;
}

namespace {

// Structural checks shared by both validation entry points. Fills `owner`
// (qubit -> chain) for the pairwise coupler check.
void check_chains(const Embedding& e, const Topology& t, std::vector<int>& owner,
                  ValidationReport& report) {
    auto add = [&](ViolationKind k, int a, int b, int q, std::string msg) {
        report.violations.push_back({k, a, b, q, std::move(msg)});
    };
    if (!(e.target == t.shape()))
        add(ViolationKind::ShapeMismatch, -1, -1, -1,
            "embedding targets " + e.target.name() + " but topology is " + t.shape().name());

    owner.assign(t.shape().ideal_qubits(), -1);
    for (int c = 0; c < e.size(); ++c) {
        const auto& chain = e.chains[c];
        if (chain.empty()) add(ViolationKind::EmptyChain, c, -1, -1, "chain " + std::to_string(c) + " is empty");
        for (int q : chain) {
            if (!t.has_qubit(q)) {
                add(ViolationKind::MissingQubit, c, -1, q,
                    "chain " + std::to_string(c) + " uses unavailable qubit " + std::to_string(q));
                continue;
            }
            if (owner[q] == c) {
                add(ViolationKind::Overlap, c, c, q,
                    "chain " + std::to_string(c) + " lists qubit " + std::to_string(q) + " twice");
            } else if (owner[q] >= 0) {
                add(ViolationKind::Overlap, owner[q], c, q,
                    "chains " + std::to_string(owner[q]) + " and " + std::to_string(c) +
                        " overlap at qubit " + std::to_string(q));
            } else {
                owner[q] = c;
            }
        }
    }

    // Connectivity: flood fill inside each chain over topology couplers.
    std::vector<char> seen(owner.size(), 0);
    std::vector<int> stack;
    for (int c = 0; c < e.size(); ++c) {
        std::vector<int> members;
        for (int q : e.chains[c])
            if (t.has_qubit(q) && owner[q] == c) members.push_back(q);
        if (members.empty()) continue;
        std::size_t reached = 0;
        stack.assign(1, members[0]);
        seen[members[0]] = 1;
        while (!stack.empty()) {
            const int q = stack.back();
            stack.pop_back();
            ++reached;
            for (int nb : t.neighbors(q))
                if (owner[nb] == c && !seen[nb]) {
                    seen[nb] = 1;
                    stack.push_back(nb);
                }
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        if (reached != members.size())
            add(ViolationKind::DisconnectedChain, c, -1, -1,
                "disconnected chain " + std::to_string(c) + ": " + std::to_string(reached) + " of " +
                    std::to_string(members.size()) + " qubits reachable");
    }
}

// linked[a * n + b] != 0 when some coupler joins chains a and b.
std::vector<char> chain_links(const Embedding& e, const Topology& t, const std::vector<int>& owner) {
    const int n = e.size();
    std::vector<char> linked(static_cast<std::size_t>(n) * n, 0);
    for (auto [a, b] : t.couplers()) {
        const int ca = owner[a], cb = owner[b];
        if (ca < 0 || cb < 0 || ca == cb) continue;
        linked[ca * n + cb] = linked[cb * n + ca] = 1;
    }
    return linked;
}

void missing_link(ValidationReport& report, int u, int v) {
    report.violations.push_back({ViolationKind::MissingCoupler, u, v, -1,
                                 "missing coupler for logical pair (" + std::to_string(u) + ", " +
                                     std::to_string(v) + ")"});
}

}  // namespace

ValidationReport validate_embedding(const Embedding& e, const Topology& t, const Graph& logical) {
    ValidationReport report;
    if (logical.num_vertices() != e.size()) {
        report.violations.push_back({ViolationKind::SizeMismatch, -1, -1, -1,
                                     "logical graph has " + std::to_string(logical.num_vertices()) +
                                         " vertices, embedding has " + std::to_string(e.size()) + " chains"});
        return report;
    }
    std::vector<int> owner;
    check_chains(e, t, owner, report);
    const auto linked = chain_links(e, t, owner);
    for (auto [u, v] : logical.edges())
        if (!linked[u * e.size() + v]) missing_link(report, u, v);
    return report;
}

ValidationReport validate_embedding(const Embedding& e, const Topology& t, int clique_size) {
    ValidationReport report;
    if (clique_size < 0 || clique_size > e.size()) {
        report.violations.push_back({ViolationKind::SizeMismatch, -1, -1, -1,
                                     "clique of size " + std::to_string(clique_size) +
                                         " exceeds embedding size " + std::to_string(e.size())});
        return report;
    }
    std::vector<int> owner;
    check_chains(e, t, owner, report);
    const auto linked = chain_links(e, t, owner);
    for (int u = 0; u < clique_size; ++u)
        for (int v = u + 1; v < clique_size; ++v)
            if (!linked[u * e.size() + v]) missing_link(report, u, v);
    return report;
}

Embedding chimera_clique_embedding(int n, int m) {
    if (m < 1) throw std::invalid_argument("chimera_clique_embedding: need m >= 1");
    if (n < 1 || n > 4 * m)
        throw std::invalid_argument("chimera_clique_embedding: K" + std::to_string(n) +
                                    " does not fit on C" + std::to_string(m) + " (limit " +
                                    std::to_string(4 * m) + ")");
    const int k = (n + 3) / 4;
    Embedding e{{Family::Chimera, m}, {}};
    e.chains.reserve(n);
    for (int v = 0; v < n; ++v) {
        const int c = v / 4, r = v % 4;
        std::vector<int> chain;
        chain.reserve(k + 1);
        for (int j = 0; j <= c; ++j) chain.push_back(chimera_id(m, c, j, 1, r));
        for (int i = c; i < k; ++i) chain.push_back(chimera_id(m, i, c, 0, r));
        e.chains.push_back(std::move(chain));
    }
    return e;
}

nlohmann::json embedding_to_json(const Embedding& e) {
    nlohmann::json chains = nlohmann::json::object();
    for (int i = 0; i < e.size(); ++i) chains[std::to_string(i)] = e.chains[i];
    return {{"schema_version", 1},
            {"family", to_string(e.target.family)},
            {"shape", {{"m", e.target.m}, {"t", 4}}},
            {"chains", std::move(chains)}};
}

Embedding embedding_from_json(const nlohmann::json& j) {
    try {
        Embedding e;
        e.target = {family_from_string(j.at("family").get<std::string>()), j.at("shape").at("m").get<int>()};
        const auto& chains = j.at("chains");
        if (!chains.is_object()) throw ParseError("embedding: 'chains' must be an object");
        e.chains.resize(chains.size());
        std::vector<char> filled(chains.size(), 0);
        for (const auto& [key, qubits] : chains.items()) {
            std::size_t pos = 0;
            int id = -1;
            try {
                id = std::stoi(key, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != key.size() || id < 0 || id >= static_cast<int>(chains.size()) || filled[id])
                throw ParseError("embedding: logical ids must be 0..N-1, got '" + key + "'");
            filled[id] = 1;
            e.chains[id] = qubits.get<std::vector<int>>();
        }
        return e;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("embedding: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw ParseError(std::string("embedding: ") + ex.what());
    }
}

void save_embedding(const Embedding& e, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << embedding_to_json(e).dump() << '\n';
}

Embedding load_embedding(const std::filesystem::path& path, const Topology& target) {
    Embedding e = embedding_from_json(read_json_file(path));
    const auto report = validate_embedding(e, target, e.size());
    if (!report.ok()) throw EmbeddingError("invalid embedding " + path.string() + ": " + report.summary());
    return e;
}

PhysicalProblem embed_problem(const IsingModel& logical, const Embedding& e, const Topology& t,
                              double chain_strength, double noise_sigma, std::uint64_t seed) {
    if (!(chain_strength > 0.0)) throw std::invalid_argument("chain strength must be positive");
    if (!(noise_sigma >= 0.0)) throw std::invalid_argument("noise sigma must be non-negative");
    if (logical.num_variables() != e.size())
        throw std::invalid_argument("embed_problem: model has " + std::to_string(logical.num_variables()) +
                                    " variables, embedding has " + std::to_string(e.size()) + " chains");
    if (!(e.target == t.shape())) throw EmbeddingError("embed_problem: embedding targets another lattice");

    const int nq = t.shape().ideal_qubits();
    std::vector<int> owner(nq, -1);
    for (int c = 0; c < e.size(); ++c)
        for (int q : e.chains[c]) {
            if (!t.has_qubit(q)) throw EmbeddingError("embed_problem: qubit " + std::to_string(q) + " unavailable");
            if (owner[q] >= 0) throw EmbeddingError("embed_problem: chains overlap at qubit " + std::to_string(q));
            owner[q] = c;
        }

    // Couplers between each pair of chains, and inside each chain.
    std::map<Edge, std::vector<Edge>> between;
    std::vector<Edge> inside;
    for (auto [a, b] : t.couplers()) {
        const int ca = owner[a], cb = owner[b];
        if (ca < 0 || cb < 0) continue;
        if (ca == cb)
            inside.emplace_back(a, b);
        else
            between[make_edge(ca, cb)].emplace_back(a, b);
    }

    PhysicalProblem p;
    p.model = IsingModel(nq);
    p.embedding = e;
    p.chain_strength = chain_strength;
    p.noise_sigma = noise_sigma;
    p.chain_couplers = static_cast<int>(inside.size());

    for (int c = 0; c < e.size(); ++c) {
        const double share = logical.linear(c) / static_cast<double>(e.chains[c].size());
        for (int q : e.chains[c]) p.model.add_linear(q, share);
    }
    for (const auto& [key, j] : logical.quadratic_terms()) {
        if (j == 0.0) continue;
        auto it = between.find(key);
        if (it == between.end())
            throw EmbeddingError("embed_problem: missing coupler for logical pair (" +
                                 std::to_string(key.first) + ", " + std::to_string(key.second) + ")");
        const double share = j / static_cast<double>(it->second.size());
        for (auto [a, b] : it->second) p.model.add_quadratic(a, b, share);
    }
    for (auto [a, b] : inside) p.model.add_quadratic(a, b, -chain_strength);

    const double peak = p.model.max_abs_coefficient();
    p.scale = peak > 0.0 ? 1.0 / peak : 1.0;
    IsingModel scaled(nq);
    for (int q = 0; q < nq; ++q)
        if (owner[q] >= 0) scaled.set_linear(q, p.model.linear(q) * p.scale);
    for (const auto& [key, b] : p.model.quadratic_terms()) scaled.set_quadratic(key.first, key.second, b * p.scale);
    scaled.set_offset(logical.offset() * p.scale);

    if (noise_sigma > 0.0) {
        Rng rng(seed);
        auto perturb = [&](double x) { return std::clamp(x + noise_sigma * rng.normal(), -1.0, 1.0); };
        for (int q = 0; q < nq; ++q)
            if (owner[q] >= 0) scaled.set_linear(q, perturb(scaled.linear(q)));
        for (const auto& [key, b] : p.model.quadratic_terms())
            scaled.set_quadratic(key.first, key.second, perturb(scaled.quadratic(key.first, key.second)));
    }
    p.model = std::move(scaled);
    return p;
}

std::vector<LogicalSample> unembed(const SampleSet& samples, const Embedding& e) {
    for (const auto& chain : e.chains)
        for (int q : chain)
            if (q < 0 || q >= samples.num_variables)
                throw std::invalid_argument("unembed: chain qubit " + std::to_string(q) +
                                            " outside the sample dimension");
    std::vector<LogicalSample> out(samples.num_reads());
    for (int r = 0; r < samples.num_reads(); ++r) {
        const auto read = samples.read(r);
        auto& ls = out[r];
        std::vector<Value> spins(e.size(), 0);
        for (int c = 0; c < e.size(); ++c) {
            const auto& chain = e.chains[c];
            if (chain.empty()) continue;
            const Value first = read[chain[0]];
            const bool unanimous =
                std::all_of(chain.begin(), chain.end(), [&](int q) { return read[q] == first; });
            if (unanimous) {
                spins[c] = first;
            } else {
                ls.broken = true;
                BrokenChain bc{c, {}};
                bc.pattern.reserve(chain.size());
                for (int q : chain) bc.pattern.push_back(read[q]);
                ls.broken_chains.push_back(std::move(bc));
            }
        }
        if (!ls.broken) ls.spins = std::move(spins);
    }
    return out;
}

}  // namespace qabench
