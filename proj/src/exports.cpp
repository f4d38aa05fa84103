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

#include "qabench/exports.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include "qabench/error.hpp"

namespace qabench {

namespace {

using CellKey = std::tuple<ProblemKind, int, double, double>;

CellKey key_of(const ExperimentRecord& r) {
    return {r.problem, r.graph_id, r.chain_strength, r.annealing_time_us};
}

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::vector<ExperimentRecord> read_records(const std::filesystem::path& path,
                                           std::vector<RecordIssue>& issues) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open records " + path.string());
    std::vector<ExperimentRecord> records;
    std::set<CellKey> seen;
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            auto r = record_from_json(nlohmann::json::parse(line));
            if (seen.insert(key_of(r)).second) records.push_back(std::move(r));
        } catch (const std::exception& e) {
            issues.push_back({line_no, e.what()});
        }
    }
    // Exports must not depend on the order workers finished in.
    std::sort(records.begin(), records.end(),
              [](const auto& a, const auto& b) { return key_of(a) < key_of(b); });
    return records;
}

void write_curves(std::ostream& out, const std::vector<ExperimentRecord>& records) {
    out << kCurvesHeader << '\n';
    for (const auto& p : aggregate_by_density_bin(records))
        out << to_string(p.problem) << ',' << format_double(p.annealing_time_us) << ','
            << format_double(p.chain_strength) << ',' << p.density_bin << ','
            << format_double(p.mean_ar) << ',' << format_double(p.mean_cbp) << ',' << p.n_graphs
            << '\n';
}

void write_tts(std::ostream& out, const std::vector<ExperimentRecord>& records) {
    out << kTtsHeader << '\n';
    std::map<std::pair<ProblemKind, int>, const ExperimentRecord*> best;
    auto row = [&](const ExperimentRecord& r, const char* kind) {
        out << to_string(r.problem) << ',' << r.graph_id << ',' << format_double(r.density) << ','
            << r.density_bin << ',' << format_double(r.chain_strength) << ','
            << format_double(r.annealing_time_us) << ',' << format_double(r.gsp) << ','
            << format_double(*r.tts_seconds) << ',' << kind << '\n';
    };
    for (const auto& r : records) {
        if (r.error || !r.tts_seconds) continue;
        row(r, "cell");
        auto& b = best[{r.problem, r.graph_id}];
        if (!b || *r.tts_seconds < *b->tts_seconds) b = &r;
    }
    for (const auto& [key, r] : best) row(*r, "optimal");
}

std::vector<RecordIssue> export_curves(const std::filesystem::path& records,
                                       const std::filesystem::path& output) {
    std::vector<RecordIssue> issues;
    const auto rs = read_records(records, issues);
    auto out = open_output(output);
    write_curves(out, rs);
    return issues;
}

std::vector<RecordIssue> export_tts(const std::filesystem::path& records,
                                    const std::filesystem::path& output) {
    std::vector<RecordIssue> issues;
    const auto rs = read_records(records, issues);
    auto out = open_output(output);
    write_tts(out, rs);
    return issues;
}

}  // namespace qabench
