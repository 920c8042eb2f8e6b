/*
 * Copyright (c) 2026 The guireuse Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GUIREUSE_EVAL_HARNESS_HPP
#define GUIREUSE_EVAL_HARNESS_HPP

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "guireuse/app_model.hpp"
#include "guireuse/config.hpp"
#include "guireuse/reuse_engine.hpp"

namespace guireuse {

struct TruthEntry {
    std::size_t source_index = 0;
    std::string widget_id;
    Action action = Action::click;

    bool operator==(const TruthEntry &) const = default;
};

/// Expected target event for each source event, plus source indexes that
/// deduplication may legitimately drop.
struct GroundTruth {
    std::string test_id;
    std::vector<TruthEntry> entries;
    std::set<std::size_t> droppable;

    const TruthEntry *find(std::size_t source_index) const;
    /// Throws ValidationError for out-of-range or duplicate indexes.
    void validate_against(const TestCase &source) const;
};

GroundTruth load_ground_truth(std::string_view document);
GroundTruth load_ground_truth_file(const std::filesystem::path &path);

struct Metrics {
    double gui_precision = 1.0;
    double gui_recall = 0.0;
    double oracle_precision = 1.0;
    double oracle_recall = 0.0;
    bool success = false;
    double elapsed_ms = 0.0;
};

/// Throws std::invalid_argument when result, truth, and source name different tests.
Metrics compute_metrics(const MatchedTest &result, const GroundTruth &truth, const TestCase &source,
                        double elapsed_ms = 0.0);

struct SuiteTuple {
    std::string name;
    std::string group;
    std::filesystem::path source_app;
    std::filesystem::path target_app;
    std::filesystem::path test;
    std::filesystem::path truth;
    std::filesystem::path embeddings;
};

struct SuiteConfig {
    std::vector<SuiteTuple> tuples;
    RunConfig run;
};

/// Suite file (TOML): optional top-level `embeddings` and `config` paths, then one
/// [[tuple]] table per run with name, group, source_app, target_app, test, truth, and
/// an optional embeddings override. Paths resolve against the suite file's directory.
SuiteConfig parse_suite_config(std::string_view text, const std::filesystem::path &base_dir);
SuiteConfig load_suite_config(const std::filesystem::path &path);

struct TupleResult {
    std::string name;
    std::string group;
    bool completed = false;
    std::string error;
    Metrics metrics;
    PhaseTimings timings;
    std::size_t pairs = 0;
    double average_similarity = 0.0;
    OracleStatus oracle_status = OracleStatus::not_run;
    MatchedTest final_test;
    std::size_t probes = 0;
};

struct GroupRow {
    std::string group;
    std::size_t tuples = 0;
    std::size_t completed = 0;
    double gui_precision = 0.0;
    double gui_recall = 0.0;
    double oracle_precision = 0.0;
    double oracle_recall = 0.0;
    /// Successful tuples over all tuples of the group, failed ones included.
    double success_rate = 0.0;
    double average_ms = 0.0;
};

struct Report {
    std::vector<TupleResult> tuples;
    std::vector<GroupRow> groups;  // in order of first appearance

    bool all_completed() const;
    nlohmann::json to_json(bool include_timings) const;
    std::string to_text(bool include_timings) const;
};

/// Runs every tuple through the full pipeline. Failures are recorded per tuple.
Report run_benchmark(const SuiteConfig &suite);

}  // namespace guireuse

#endif  // GUIREUSE_EVAL_HARNESS_HPP
