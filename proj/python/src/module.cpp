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

// Python bindings. Records cross the boundary as dicts; long-running calls
// release the GIL.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "qabench/annealer.hpp"
#include "qabench/backend.hpp"
#include "qabench/config.hpp"
#include "qabench/embedding.hpp"
#include "qabench/error.hpp"
#include "qabench/exports.hpp"
#include "qabench/graph.hpp"
#include "qabench/harness.hpp"
#include "qabench/metrics.hpp"
#include "qabench/models.hpp"
#include "qabench/oracles.hpp"
#include "qabench/topology.hpp"

namespace py = pybind11;
using namespace qabench;

namespace {

py::object to_python(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json from_python(const py::handle& obj) {
    return nlohmann::json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

std::vector<Value> values_of(const py::handle& seq) {
    std::vector<Value> out;
    for (auto item : py::iter(seq)) out.push_back(static_cast<Value>(item.cast<int>()));
    return out;
}

template <Vartype V>
void bind_model(py::module_& m, const char* name) {
    using M = QuadraticModel<V>;
    py::class_<M>(m, name)
        .def(py::init<int>(), py::arg("num_variables"))
        .def_property_readonly("num_variables", &M::num_variables)
        .def_property_readonly("linear", &M::linear_terms)
        .def_property_readonly("quadratic",
                               [](const M& q) {
                                   py::dict d;
                                   for (const auto& [k, b] : q.quadratic_terms())
                                       d[py::make_tuple(k.first, k.second)] = b;
                                   return d;
                               })
        .def_property("offset", &M::offset, &M::set_offset)
        .def("set_linear", &M::set_linear, py::arg("i"), py::arg("bias"))
        .def("set_quadratic", &M::set_quadratic, py::arg("u"), py::arg("v"), py::arg("bias"))
        .def("energy", [](const M& q, const py::handle& x) { return q.energy(values_of(x)); })
        .def("to_dict", [](const M& q) { return to_python(model_to_json(q)); })
        .def_static("from_dict",
                    [](const py::handle& d) { return model_from_json<V>(from_python(d)); })
        .def("__eq__", [](const M& a, const M& b) { return a == b; })
        .def("__repr__", [name](const M& q) {
            return std::string(name) + "(num_variables=" + std::to_string(q.num_variables()) +
                   ", interactions=" + std::to_string(q.num_interactions()) + ")";
        });
}

py::dict fair_to_dict(const FairSampling& f) {
    py::dict d;
    d["eligible"] = f.eligible;
    d["reason"] = f.reason;
    d["num_optima"] = f.num_optima;
    d["total"] = f.total;
    d["entropy_bits"] = f.entropy_bits;
    d["max_bits"] = f.max_bits;
    return d;
}

py::list records_to_list(const std::vector<ExperimentRecord>& records) {
    py::list out;
    for (const auto& r : records) out.append(to_python(record_to_json(r)));
    return out;
}

py::list issues_to_list(const std::vector<RecordIssue>& issues) {
    py::list out;
    for (const auto& i : issues) out.append(py::make_tuple(i.line, i.message));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Annealer benchmark toolkit: models, oracles, lattices, embeddings and sampling";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", error);
    py::register_exception<InstanceTooLarge>(m, "InstanceTooLarge", error);
    py::register_exception<EmbeddingError>(m, "EmbeddingError", error);
    py::register_exception<TransportError>(m, "TransportError", error);
    py::register_exception<SolverError>(m, "SolverError", error);

    // Graphs.
    py::class_<Graph>(m, "Graph")
        .def(py::init<int, std::vector<Edge>>(), py::arg("n"), py::arg("edges"))
        .def_property_readonly("num_vertices", &Graph::num_vertices)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def_property_readonly("edges", &Graph::edges)
        .def("neighbors", &Graph::neighbors)
        .def("degree", &Graph::degree)
        .def("has_edge", &Graph::has_edge)
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.num_vertices()) +
                   ", edges=" + std::to_string(g.num_edges()) + ")";
        });
    m.def("generate_gnp", &generate_gnp, py::arg("n"), py::arg("p"), py::arg("seed"));
    m.def("density", &density);
    m.def("density_bin", &density_bin);
    m.def("complement", &complement);
    m.def("complete_graph", &complete_graph);
    m.def("to_edge_list", &to_edge_list);
    m.def("parse_edge_list", [](const std::string& text) { return parse_edge_list(text); });
    m.def("load_graph", &load_graph);
    m.def("save_graph", &save_graph);

    // Models.
    bind_model<Vartype::Spin>(m, "IsingModel");
    bind_model<Vartype::Binary>(m, "QuboModel");
    m.def("max_clique_qubo", &max_clique_qubo, py::arg("graph"), py::arg("a") = 1.0,
          py::arg("b") = 2.0);
    m.def("max_cut_ising", &max_cut_ising);
    m.def("qubo_to_ising", &qubo_to_ising);
    m.def("ising_to_qubo", &ising_to_qubo);
    m.def("cut_size", [](const py::handle& spins, const Graph& g) { return cut_size(values_of(spins), g); });

    // Exact and reference optima.
    m.def(
        "all_maximum_cliques",
        [](const Graph& g) {
            MaximumCliques r;
            {
                py::gil_scoped_release release;
                r = all_maximum_cliques(g);
            }
            return py::make_tuple(r.size, r.cliques);
        },
        "(clique number, sorted list of every maximum clique)");
    m.def(
        "max_cut_exact",
        [](const Graph& g, int limit) {
            ExactCut r;
            {
                py::gil_scoped_release release;
                r = max_cut_exact(g, limit);
            }
            return py::make_tuple(r.cut, std::vector<int>(r.witness.begin(), r.witness.end()));
        },
        py::arg("graph"), py::arg("max_vertices") = kDefaultExactCutLimit);
    m.def(
        "reference_cut",
        [](const Graph& g, int sweeps, int restarts, std::uint64_t seed) {
            ReferenceCut r;
            {
                py::gil_scoped_release release;
                r = reference_cut(g, sweeps, restarts, seed);
            }
            return py::make_tuple(r.cut, std::vector<int>(r.spins.begin(), r.spins.end()));
        },
        py::arg("graph"), py::arg("sweeps") = 20000, py::arg("restarts") = 8, py::arg("seed") = 0);

    // Lattices.
    py::class_<Topology>(m, "Topology")
        .def_property_readonly("family", [](const Topology& t) { return to_string(t.family()); })
        .def_property_readonly("m", [](const Topology& t) { return t.shape().m; })
        .def_property_readonly("name", [](const Topology& t) { return t.shape().name(); })
        .def_property_readonly("ideal_qubits", [](const Topology& t) { return t.shape().ideal_qubits(); })
        .def_property_readonly("num_qubits", &Topology::num_qubits)
        .def_property_readonly("num_couplers", &Topology::num_couplers)
        .def_property_readonly("qubits", &Topology::qubits)
        .def_property_readonly("couplers", &Topology::couplers)
        .def("has_qubit", &Topology::has_qubit)
        .def("has_coupler", &Topology::has_coupler)
        .def("degree", &Topology::degree)
        .def("neighbors",
             [](const Topology& t, int q) {
                 const auto n = t.neighbors(q);
                 return std::vector<int>(n.begin(), n.end());
             })
        .def("__eq__", [](const Topology& a, const Topology& b) { return a == b; })
        .def("__repr__", [](const Topology& t) {
            return "Topology(" + t.shape().name() + ", qubits=" + std::to_string(t.num_qubits()) +
                   ", couplers=" + std::to_string(t.num_couplers()) + ")";
        });
    m.def("chimera", &chimera);
    m.def("pegasus", &pegasus);
    m.def("zephyr", &zephyr);
    m.def(
        "make_topology", [](const std::string& spec) { return make_topology(parse_topology_spec(spec)); },
        "From a family:size spec such as \"pegasus:16\".");
    m.def("apply_defects", [](const Topology& t, const std::vector<int>& qubits,
                              const std::vector<Edge>& couplers) {
        return apply_defects(t, qubits, couplers);
    }, py::arg("topology"), py::arg("qubits") = std::vector<int>{}, py::arg("couplers") = std::vector<Edge>{});
    m.def("load_topology", &load_topology);
    m.def("save_topology", &save_topology);

    // Embeddings.
    py::class_<Embedding>(m, "Embedding")
        .def_property_readonly("target", [](const Embedding& e) { return e.target.name(); })
        .def_readonly("chains", &Embedding::chains)
        .def_property_readonly("size", &Embedding::size)
        .def_property_readonly("num_qubits", &Embedding::num_qubits)
        .def("__eq__", [](const Embedding& a, const Embedding& b) { return a == b; });
    m.def("chimera_clique_embedding", &chimera_clique_embedding, py::arg("n"), py::arg("m"));
    m.def("chain_stats", [](const Embedding& e) {
        const auto s = chain_stats(e);
        return py::make_tuple(s.min, s.mean, s.max);
    });
    auto violations = [](const ValidationReport& r) {
        py::list out;
        for (const auto& v : r.violations) out.append(py::make_tuple(to_string(v.kind), v.message));
        return out;
    };
    m.def(
        "validate_embedding",
        [violations](const Embedding& e, const Topology& t, int clique_size) {
            return violations(validate_embedding(e, t, clique_size));
        },
        "List of (kind, message); empty when the embedding is valid.");
    m.def("validate_embedding", [violations](const Embedding& e, const Topology& t, const Graph& g) {
        return violations(validate_embedding(e, t, g));
    });
    m.def("load_embedding", &load_embedding);
    m.def("save_embedding", &save_embedding);

    py::class_<PhysicalProblem>(m, "PhysicalProblem")
        .def_readonly("model", &PhysicalProblem::model)
        .def_readonly("embedding", &PhysicalProblem::embedding)
        .def_readonly("chain_strength", &PhysicalProblem::chain_strength)
        .def_readonly("scale", &PhysicalProblem::scale)
        .def_readonly("noise_sigma", &PhysicalProblem::noise_sigma)
        .def_readonly("chain_couplers", &PhysicalProblem::chain_couplers);
    m.def("embed_problem", &embed_problem, py::arg("logical"), py::arg("embedding"),
          py::arg("topology"), py::arg("chain_strength"), py::arg("noise_sigma") = 0.0,
          py::arg("seed") = 0);

    // Sampling.
    py::class_<SamplerParams>(m, "SamplerParams")
        .def(py::init([](int num_reads, int num_sweeps, double beta_hot, double beta_cold,
                         std::uint64_t seed, int num_threads) {
                 SamplerParams p;
                 p.num_reads = num_reads;
                 p.num_sweeps = num_sweeps;
                 p.beta_hot = beta_hot;
                 p.beta_cold = beta_cold;
                 p.seed = seed;
                 p.num_threads = num_threads;
                 p.validate();
                 return p;
             }),
             py::arg("num_reads") = 1000, py::arg("num_sweeps") = 1000, py::arg("beta_hot") = 0.1,
             py::arg("beta_cold") = 10.0, py::arg("seed") = 0, py::arg("num_threads") = 1)
        .def_readwrite("num_reads", &SamplerParams::num_reads)
        .def_readwrite("num_sweeps", &SamplerParams::num_sweeps)
        .def_readwrite("beta_hot", &SamplerParams::beta_hot)
        .def_readwrite("beta_cold", &SamplerParams::beta_cold)
        .def_readwrite("seed", &SamplerParams::seed)
        .def_readwrite("num_threads", &SamplerParams::num_threads);

    py::class_<SampleSet>(m, "SampleSet")
        .def_readonly("num_variables", &SampleSet::num_variables)
        .def_property_readonly("num_reads", &SampleSet::num_reads)
        .def_readonly("elapsed_seconds", &SampleSet::elapsed_seconds)
        .def_property_readonly("spins",
                               [](const SampleSet& s) {
                                   py::array_t<std::int8_t> a({s.num_reads(), s.num_variables});
                                   std::copy(s.spins.begin(), s.spins.end(), a.mutable_data());
                                   return a;
                               },
                               "Reads as an int8 array of shape (num_reads, num_variables).")
        .def_property_readonly("energies", [](const SampleSet& s) {
            py::array_t<double> a(static_cast<py::ssize_t>(s.energies.size()));
            std::copy(s.energies.begin(), s.energies.end(), a.mutable_data());
            return a;
        });
    m.def("sample_ising", &sample_ising, py::arg("model"), py::arg("params"),
          py::call_guard<py::gil_scoped_release>());
    m.def("annealer_kernels", &SimulatedAnnealer::kernels);
    m.def("map_anneal_time", &map_anneal_time, py::arg("annealing_time_us"),
          py::arg("sweeps_per_us") = kDefaultSweepsPerMicrosecond);
    m.def(
        "unembed",
        [](const SampleSet& s, const Embedding& e) {
            py::list out;
            for (const auto& ls : unembed(s, e)) {
                if (ls.broken)
                    out.append(py::none());
                else
                    out.append(std::vector<int>(ls.spins.begin(), ls.spins.end()));
            }
            return out;
        },
        "Logical spins per read, None for reads with a broken chain.");
    m.def(
        "serve_sample_request",
        [](const std::string& request) {
            LocalBackend backend;
            py::gil_scoped_release release;
            return serve_sample_request(request, backend);
        },
        "Answers one wire-format request with the in-process annealer.");

    // Metrics.
    m.def("time_to_solution", &time_to_solution, py::arg("elapsed_seconds"), py::arg("num_reads"),
          py::arg("p"));
    m.def("fair_sampling_entropy",
          [](const std::vector<long>& counts) { return fair_to_dict(fair_sampling_entropy(counts)); });
    m.def("chain_break_runs", [](const py::handle& p) { return chain_break_runs(values_of(p)); });

    // Grid runs and exports.
    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_static("parse", &parse_config, py::arg("text"), py::arg("base_dir") = std::filesystem::path{})
        .def_static("load", &load_config)
        .def("to_text", [](const ExperimentConfig& c) { return format_config(c); })
        .def("validate", &ExperimentConfig::validate)
        .def_property(
            "problem", [](const ExperimentConfig& c) { return to_string(c.problem); },
            [](ExperimentConfig& c, const std::string& s) { c.problem = problem_from_string(s); })
        .def_readwrite("num_graphs", &ExperimentConfig::num_graphs)
        .def_readwrite("graph_files", &ExperimentConfig::graph_files)
        .def_readwrite("n", &ExperimentConfig::n)
        .def_readwrite("density_min", &ExperimentConfig::density_min)
        .def_readwrite("density_max", &ExperimentConfig::density_max)
        .def_property(
            "stratified",
            [](const ExperimentConfig& c) { return c.density_sampling == DensitySampling::Stratified; },
            [](ExperimentConfig& c, bool s) {
                c.density_sampling = s ? DensitySampling::Stratified : DensitySampling::Uniform;
            })
        .def_readwrite("topology", &ExperimentConfig::topology)
        .def_readwrite("embedding_file", &ExperimentConfig::embedding_file)
        .def_readwrite("chain_strengths", &ExperimentConfig::chain_strengths)
        .def_readwrite("annealing_times_us", &ExperimentConfig::annealing_times_us)
        .def_readwrite("num_reads", &ExperimentConfig::num_reads)
        .def_readwrite("sweeps_per_us", &ExperimentConfig::sweeps_per_us)
        .def_readwrite("beta_hot", &ExperimentConfig::beta_hot)
        .def_readwrite("beta_cold", &ExperimentConfig::beta_cold)
        .def_readwrite("noise_sigma", &ExperimentConfig::noise_sigma)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("output", &ExperimentConfig::output)
        .def_readwrite("threads", &ExperimentConfig::threads)
        .def("__eq__", [](const ExperimentConfig& a, const ExperimentConfig& b) { return a == b; });
    m.def(
        "run_grid",
        [](const ExperimentConfig& cfg, bool resume) {
            RunOptions options;
            options.resume = resume;
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run_grid(cfg, options);
            }
            py::dict d;
            d["records"] = records_to_list(r.records);
            d["computed"] = r.computed;
            d["resumed"] = r.resumed;
            d["errors"] = r.errors;
            return d;
        },
        py::arg("config"), py::arg("resume") = true);
    m.def(
        "read_records",
        [](const std::filesystem::path& path) {
            std::vector<RecordIssue> issues;
            auto records = read_records(path, issues);
            return py::make_tuple(records_to_list(records), issues_to_list(issues));
        },
        "(records, [(line, message)] for malformed lines)");
    m.def("export_curves", [](const std::filesystem::path& records, const std::filesystem::path& out) {
        return issues_to_list(export_curves(records, out));
    });
    m.def("export_tts", [](const std::filesystem::path& records, const std::filesystem::path& out) {
        return issues_to_list(export_tts(records, out));
    });
    m.attr("CURVES_HEADER") = kCurvesHeader;
    m.attr("TTS_HEADER") = kTtsHeader;
}
