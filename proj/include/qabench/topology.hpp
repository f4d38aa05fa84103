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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qabench/graph.hpp"

namespace qabench {

enum class Family { Chimera, Pegasus, Zephyr };

const char* to_string(Family f) noexcept;
/// Throws std::invalid_argument for unknown names.
Family family_from_string(const std::string& name);

/// Lattice identity: family plus size. Chimera and Zephyr use tile
/// parameter t = 4; Pegasus has its fixed 12-qubit tiles.
struct TopologyShape {
    Family family = Family::Chimera;
    int m = 1;

    /// Qubit count of the defect-free lattice; also the id space size.
    int ideal_qubits() const noexcept;
    std::string name() const;  // e.g. "C16", "P16", "Z4"

    friend bool operator==(const TopologyShape&, const TopologyShape&) = default;
};

/// Chimera (i, j, u, k): row, column, orientation (0 vertical, 1 horizontal),
/// index within the half cell.  id = ((i * m + j) * 2 + u) * 4 + k
int chimera_id(int m, int i, int j, int u, int k) noexcept;
/// Pegasus (u, w, k, z): orientation, perpendicular offset, qubit index in
/// [0, 12), parallel offset in [0, m - 1).  id = ((u * m + w) * 12 + k) * (m - 1) + z
int pegasus_id(int m, int u, int w, int k, int z) noexcept;
/// Zephyr (u, w, k, j, z) with t = 4: w in [0, 2m], k in [0, t), j in {0, 1},
/// z in [0, m).  id = (((u * (2m + 1) + w) * t + k) * 2 + j) * m + z
int zephyr_id(int m, int u, int w, int k, int j, int z) noexcept;

/// Hardware graph. Qubit ids follow the family's linear coordinates above
/// and are stable: removing qubits leaves gaps rather than renumbering.
class Topology {
  public:
    /// Validates that qubits are in range and unique, couplers reference
    /// present qubits and are unique. Throws std::invalid_argument otherwise.
    Topology(TopologyShape shape, std::vector<int> qubits, std::vector<Edge> couplers,
             std::vector<int> removed_qubits = {}, std::vector<Edge> removed_couplers = {});

    const TopologyShape& shape() const noexcept { return shape_; }
    Family family() const noexcept { return shape_.family; }

    std::size_t num_qubits() const noexcept { return qubits_.size(); }
    std::size_t num_couplers() const noexcept { return couplers_.size(); }
    const std::vector<int>& qubits() const noexcept { return qubits_; }
    const std::vector<Edge>& couplers() const noexcept { return couplers_; }
    const std::vector<int>& removed_qubits() const noexcept { return removed_qubits_; }
    const std::vector<Edge>& removed_couplers() const noexcept { return removed_couplers_; }

    bool has_qubit(int q) const noexcept;
    bool has_coupler(int a, int b) const noexcept;
    std::span<const int> neighbors(int q) const;
    int degree(int q) const { return static_cast<int>(neighbors(q).size()); }

    friend bool operator==(const Topology& a, const Topology& b) {
        return a.shape_ == b.shape_ && a.qubits_ == b.qubits_ && a.couplers_ == b.couplers_ &&
               a.removed_qubits_ == b.removed_qubits_ && a.removed_couplers_ == b.removed_couplers_;
    }

  private:
    TopologyShape shape_;
    std::vector<int> qubits_;
    std::vector<Edge> couplers_;
    std::vector<int> removed_qubits_;
    std::vector<Edge> removed_couplers_;
    std::vector<char> present_;
    std::vector<int> row_;
    std::vector<int> adj_;
};

/// m x m grid of K_{4,4} cells: 8m^2 qubits, 16m^2 + 8m(m - 1) couplers.
Topology chimera(int m);
/// Full Pegasus lattice, 24m(m - 1) qubits, with the standard (index 0)
/// shift pattern for internal couplers.
Topology pegasus(int m);
/// Zephyr lattice with t = 4: 16m(2m + 1) qubits.
Topology zephyr(int m);
Topology make_topology(TopologyShape shape);

/// Removes qubits (with all incident couplers) and couplers. Throws
/// std::invalid_argument when an id is not present.
Topology apply_defects(const Topology& t, std::span<const int> remove_qubits,
                       std::span<const Edge> remove_couplers);

/// {"schema_version": 1, "family": ..., "shape": {"m": ..., "t": 4},
///  "qubits": [...], "couplers": [[a, b], ...],
///  "defects": {"qubits": [...], "couplers": [[a, b], ...]}}
nlohmann::json topology_to_json(const Topology& t);
/// Throws ParseError (with line context for syntax errors) on malformed or
/// inconsistent input.
Topology topology_from_json(const nlohmann::json& j);
Topology parse_topology(std::string_view text);
void save_topology(const Topology& t, const std::filesystem::path& path);
Topology load_topology(const std::filesystem::path& path);

/// Loads a JSON document, converting syntax errors into ParseError with the
/// line number.
nlohmann::json parse_json_text(std::string_view text);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace qabench
