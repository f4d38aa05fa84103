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
#include <ostream>
#include <string>
#include <vector>

#include "qabench/metrics.hpp"

namespace qabench {

struct RecordIssue {
    std::size_t line = 0;
    std::string message;
};

/// Parses a JSONL record file. Malformed lines are skipped and reported in
/// `issues` with their 1-based line number. When a cell key appears more
/// than once, the first record wins. Throws ParseError if the file cannot
/// be opened.
std::vector<ExperimentRecord> read_records(const std::filesystem::path& path,
                                           std::vector<RecordIssue>& issues);

inline constexpr const char* kCurvesHeader =
    "problem,annealing_time_us,chain_strength,density_bin,mean_ar,mean_cbp,n_graphs";
inline constexpr const char* kTtsHeader =
    "problem,graph_id,density,density_bin,chain_strength,annealing_time_us,gsp,tts_seconds,kind";

/// Density-bin curves, one CSV row per aggregated point.
void write_curves(std::ostream& out, const std::vector<ExperimentRecord>& records);

/// One "cell" row per grid cell with a defined TTS, then one "optimal" row
/// per graph holding its smallest TTS. Cells with p = 0 are omitted.
void write_tts(std::ostream& out, const std::vector<ExperimentRecord>& records);

/// File wrappers. Issues from reading are returned; the CSV is written
/// regardless.
std::vector<RecordIssue> export_curves(const std::filesystem::path& records,
                                       const std::filesystem::path& output);
std::vector<RecordIssue> export_tts(const std::filesystem::path& records,
                                    const std::filesystem::path& output);

/// Shortest round-trip decimal form used in CSV output.
std::string format_double(double v);

}  // namespace qabench
