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

#include "qabench/models.hpp"

#include <cmath>
#include <stdexcept>

#include "qabench/error.hpp"

namespace qabench {

const char* to_string(Vartype v) noexcept { return v == Vartype::Spin ? "spin" : "binary"; }

template <Vartype V>
Edge QuadraticModel<V>::checked_key(int u, int v) const {
    const int n = num_variables();
    if (u == v) throw std::invalid_argument("quadratic term on a single variable");
    if (u < 0 || v < 0 || u >= n || v >= n)
        throw std::invalid_argument("quadratic term (" + std::to_string(u) + "," + std::to_string(v) +
                                    ") out of range");
    return make_edge(u, v);
}

template <Vartype V>
double QuadraticModel<V>::quadratic(int u, int v) const {
    auto it = quadratic_.find(make_edge(u, v));
    return it == quadratic_.end() ? 0.0 : it->second;
}

template <Vartype V>
double QuadraticModel<V>::energy(std::span<const Value> x) const {
    if (x.size() != linear_.size())
        throw std::invalid_argument("assignment has " + std::to_string(x.size()) +
                                    " values, model has " + std::to_string(linear_.size()));
    double e = offset_;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Value xi = x[i];
        if constexpr (V == Vartype::Spin) {
            if (xi != 1 && xi != -1)
                throw std::invalid_argument("spin value " + std::to_string(xi) + " at variable " +
                                            std::to_string(i));
        } else {
            if (xi != 0 && xi != 1)
                throw std::invalid_argument("binary value " + std::to_string(xi) + " at variable " +
                                            std::to_string(i));
        }
        e += linear_[i] * xi;
    }
    for (const auto& [key, bias] : quadratic_) e += bias * x[key.first] * x[key.second];
    return e;
}

template <Vartype V>
double QuadraticModel<V>::max_abs_coefficient() const noexcept {
    double m = 0.0;
    for (double b : linear_) m = std::max(m, std::abs(b));
    for (const auto& [key, b] : quadratic_) m = std::max(m, std::abs(b));
    return m;
}

template class QuadraticModel<Vartype::Spin>;
template class QuadraticModel<Vartype::Binary>;

QuboModel max_clique_qubo(const Graph& g, double a, double b) {
    const int n = g.num_vertices();
    QuboModel q(n);
    for (int i = 0; i < n; ++i) q.set_linear(i, -a);
    const Graph missing = complement(g);
    for (auto [u, v] : missing.edges()) q.set_quadratic(u, v, b);
    return q;
}

IsingModel max_cut_ising(const Graph& g) {
    IsingModel m(g.num_vertices());
    for (auto [u, v] : g.edges()) m.set_quadratic(u, v, 1.0);
    return m;
}

long spin_binary_cut_objective(std::span<const Value> z, const Graph& g) {
    if (z.size() != static_cast<std::size_t>(g.num_vertices()))
        throw std::invalid_argument("binary vector dimension does not match graph");
    for (Value v : z)
        if (v != 0 && v != 1) throw std::invalid_argument("binary vector holds a non-binary value");
    long c = 0;
    for (auto [u, v] : g.edges()) c += (2 * z[u] - 1) * (2 * z[v] - 1);
    return c;
}

int cut_size(std::span<const Value> spins, const Graph& g) {
    if (spins.size() != static_cast<std::size_t>(g.num_vertices()))
        throw std::invalid_argument("spin vector dimension does not match graph");
    int c = 0;
    for (auto [u, v] : g.edges()) c += spins[u] != spins[v];
    return c;
}

IsingModel qubo_to_ising(const QuboModel& q) {
    const int n = q.num_variables();
    IsingModel m(n);
    double offset = q.offset();
    for (int i = 0; i < n; ++i) {
        m.add_linear(i, 0.5 * q.linear(i));
        offset += 0.5 * q.linear(i);
    }
    for (const auto& [key, b] : q.quadratic_terms()) {
        m.add_quadratic(key.first, key.second, 0.25 * b);
        m.add_linear(key.first, 0.25 * b);
        m.add_linear(key.second, 0.25 * b);
        offset += 0.25 * b;
    }
    m.set_offset(offset);
    return m;
}

QuboModel ising_to_qubo(const IsingModel& m) {
    const int n = m.num_variables();
    QuboModel q(n);
    double offset = m.offset();
    for (int i = 0; i < n; ++i) {
        q.add_linear(i, 2.0 * m.linear(i));
        offset -= m.linear(i);
    }
    for (const auto& [key, j] : m.quadratic_terms()) {
        q.add_quadratic(key.first, key.second, 4.0 * j);
        q.add_linear(key.first, -2.0 * j);
        q.add_linear(key.second, -2.0 * j);
        offset += j;
    }
    q.set_offset(offset);
    return q;
}

std::vector<Value> spins_to_binary(std::span<const Value> s) {
    std::vector<Value> x(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) x[i] = s[i] > 0 ? 1 : 0;
    return x;
}

std::vector<Value> binary_to_spins(std::span<const Value> x) {
    std::vector<Value> s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] ? 1 : -1;
    return s;
}

template <Vartype V>
nlohmann::json model_to_json(const QuadraticModel<V>& m) {
    nlohmann::json lin = nlohmann::json::array();
    for (int i = 0; i < m.num_variables(); ++i)
        if (m.linear(i) != 0.0) lin.push_back({i, m.linear(i)});
    nlohmann::json quad = nlohmann::json::array();
    for (const auto& [key, b] : m.quadratic_terms()) quad.push_back({key.first, key.second, b});
    return {{"domain", to_string(V)},
            {"n", m.num_variables()},
            {"linear", std::move(lin)},
            {"quadratic", std::move(quad)},
            {"offset", m.offset()}};
}

template <Vartype V>
QuadraticModel<V> model_from_json(const nlohmann::json& j) {
    try {
        const auto domain = j.at("domain").get<std::string>();
        if (domain != to_string(V))
            throw ParseError("model domain is '" + domain + "', expected '" + to_string(V) + "'");
        QuadraticModel<V> m(j.at("n").get<int>());
        for (const auto& t : j.at("linear")) m.set_linear(t.at(0).get<int>(), t.at(1).get<double>());
        for (const auto& t : j.at("quadratic"))
            m.set_quadratic(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<double>());
        m.set_offset(j.value("offset", 0.0));
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("model: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw ParseError(std::string("model: variable out of range: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("model: ") + e.what());
    }
}

template nlohmann::json model_to_json(const IsingModel&);
template nlohmann::json model_to_json(const QuboModel&);
template IsingModel model_from_json<Vartype::Spin>(const nlohmann::json&);
template QuboModel model_from_json<Vartype::Binary>(const nlohmann::json&);

}  // namespace qabench
