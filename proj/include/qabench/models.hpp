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

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qabench/graph.hpp"

namespace qabench {

enum class Vartype { Spin, Binary };

/// Single variable value: +1/-1 for spin models, 0/1 for binary models.
using Value = std::int8_t;

const char* to_string(Vartype v) noexcept;

/// Quadratic polynomial over n variables of one domain:
///   E(x) = offset + sum_i linear_i x_i + sum_{i<j} quadratic_ij x_i x_j
/// Quadratic keys are canonical (i < j).
template <Vartype V>
class QuadraticModel {
  public:
    static constexpr Vartype vartype = V;

    QuadraticModel() = default;
    explicit QuadraticModel(int n) : linear_(static_cast<std::size_t>(n), 0.0) {}

    int num_variables() const noexcept { return static_cast<int>(linear_.size()); }
    std::size_t num_interactions() const noexcept { return quadratic_.size(); }

    double linear(int i) const { return linear_.at(static_cast<std::size_t>(i)); }
    const std::vector<double>& linear_terms() const noexcept { return linear_; }
    void set_linear(int i, double bias) { linear_.at(static_cast<std::size_t>(i)) = bias; }
    void add_linear(int i, double bias) { linear_.at(static_cast<std::size_t>(i)) += bias; }

    /// 0 when absent.
    double quadratic(int u, int v) const;
    const std::map<Edge, double>& quadratic_terms() const noexcept { return quadratic_; }
    void set_quadratic(int u, int v, double bias) { quadratic_[checked_key(u, v)] = bias; }
    void add_quadratic(int u, int v, double bias) { quadratic_[checked_key(u, v)] += bias; }

    double offset() const noexcept { return offset_; }
    void set_offset(double c) noexcept { offset_ = c; }
    void add_offset(double c) noexcept { offset_ += c; }

    /// Exact evaluation. Throws std::invalid_argument on a dimension
    /// mismatch or a value outside the model's domain.
    double energy(std::span<const Value> x) const;

    /// Largest |coefficient| over linear and quadratic terms (offset excluded).
    double max_abs_coefficient() const noexcept;

    friend bool operator==(const QuadraticModel&, const QuadraticModel&) = default;

  private:
    Edge checked_key(int u, int v) const;

    std::vector<double> linear_;
    std::map<Edge, double> quadratic_;
    double offset_ = 0.0;
};

using IsingModel = QuadraticModel<Vartype::Spin>;
using QuboModel = QuadraticModel<Vartype::Binary>;

extern template class QuadraticModel<Vartype::Spin>;
extern template class QuadraticModel<Vartype::Binary>;

/// Maximum-clique QUBO: -a * sum_i x_i + b * sum_{(u,v) not in E} x_u x_v.
/// With a = 1, b = 2 the minimum energy is -omega(G) and the minimisers are
/// exactly the indicator vectors of the maximum cliques.
QuboModel max_clique_qubo(const Graph& g, double a = 1.0, double b = 2.0);

/// Maximum-cut Ising: J_uv = +1 on every edge, no fields. For spins s,
/// cut(s) = (|E| - E(s)) / 2.
IsingModel max_cut_ising(const Graph& g);

/// sum over edges of (2 z_i - 1)(2 z_j - 1) for a binary vector z.
long spin_binary_cut_objective(std::span<const Value> z, const Graph& g);

/// Number of edges crossing the partition given by spins (+1/-1).
int cut_size(std::span<const Value> spins, const Graph& g);

/// Energy-preserving change of variables x = (s + 1) / 2.
IsingModel qubo_to_ising(const QuboModel& q);
/// Energy-preserving change of variables s = 2x - 1.
QuboModel ising_to_qubo(const IsingModel& m);

std::vector<Value> spins_to_binary(std::span<const Value> s);
std::vector<Value> binary_to_spins(std::span<const Value> x);

/// {"domain": "spin"|"binary", "n": ..., "linear": [[i, bias], ...],
///  "quadratic": [[u, v, bias], ...], "offset": ...}
template <Vartype V>
nlohmann::json model_to_json(const QuadraticModel<V>& m);
/// Throws ParseError when the document is malformed or tagged with the
/// other domain.
template <Vartype V>
QuadraticModel<V> model_from_json(const nlohmann::json& j);

}  // namespace qabench
