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

#include "guireuse/eval_harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <future>
#include <map>
#include <stdexcept>

#include <toml.hpp>

#include "guireuse/errors.hpp"

namespace guireuse {

using nlohmann::json;

const TruthEntry *GroundTruth::find(std::size_t source_index) const
{
    for (const auto &e : entries) {
        if (e.source_index == source_index) {
            return &e;
        }
    }
    return nullptr;
}

void GroundTruth::validate_against(const TestCase &source) const
{
    std::vector<Violation> errs;
    if (test_id != source.test_id) {
        errs.push_back({"$.test_id", "'" + test_id + "' does not name test '" + source.test_id + "'"});
    }
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string path = "$.entries[" + std::to_string(i) + "].source_index";
        if (entries[i].source_index >= source.events.size()) {
            errs.push_back({path, "out of range"});
        }
        if (!seen.insert(entries[i].source_index).second) {
            errs.push_back({path, "duplicate source_index"});
        }
    }
    for (std::size_t d : droppable) {
        if (d >= source.events.size()) {
            errs.push_back({"$.droppable", "index " + std::to_string(d) + " out of range"});
        }
    }
    if (!errs.empty()) {
        throw ValidationError(std::move(errs));
    }
}

GroundTruth load_ground_truth(std::string_view document)
{
    json doc;
    try {
        doc = json::parse(document.begin(), document.end());
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    std::vector<Violation> errs;
    GroundTruth gt;
    if (!doc.is_object()) {
        throw ValidationError(std::vector<Violation>{{"$", "expected an object"}});
    }
    for (const auto &[key, value] : doc.items()) {
        if (key != "test_id" && key != "entries" && key != "droppable") {
            errs.push_back({"$." + key, "unknown key"});
        }
    }
    if (!doc.contains("test_id") || !doc["test_id"].is_string()) {
        errs.push_back({"$.test_id", "expected a string"});
    } else {
        gt.test_id = doc["test_id"].get<std::string>();
    }
    if (!doc.contains("entries") || !doc["entries"].is_array()) {
        errs.push_back({"$.entries", "expected an array"});
    } else {
        const json &arr = doc["entries"];
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const json &e = arr[i];
            const std::string path = "$.entries[" + std::to_string(i) + "]";
            if (!e.is_object() || !e.contains("source_index") || !e["source_index"].is_number_unsigned() ||
                !e.contains("target_widget_id") || !e["target_widget_id"].is_string() ||
                !e.contains("target_action") || !e["target_action"].is_string()) {
                errs.push_back({path, "expected {source_index, target_widget_id, target_action}"});
                continue;
            }
            TruthEntry t;
            t.source_index = e["source_index"].get<std::size_t>();
            t.widget_id = e["target_widget_id"].get<std::string>();
            auto action = parse_action(e["target_action"].get<std::string>());
            if (!action) {
                errs.push_back({path + ".target_action", "unknown action"});
                continue;
            }
            t.action = *action;
            gt.entries.push_back(std::move(t));
        }
    }
    if (doc.contains("droppable")) {
        const json &d = doc["droppable"];
        if (!d.is_array()) {
            errs.push_back({"$.droppable", "expected an array"});
        } else {
            for (std::size_t i = 0; i < d.size(); ++i) {
                if (!d[i].is_number_unsigned()) {
                    errs.push_back({"$.droppable[" + std::to_string(i) + "]", "expected an index"});
                } else {
                    gt.droppable.insert(d[i].get<std::size_t>());
                }
            }
        }
    }
    if (!errs.empty()) {
        throw ValidationError(std::move(errs));
    }
    return gt;
}

GroundTruth load_ground_truth_file(const std::filesystem::path &path)
{
    return load_ground_truth(read_text_file(path));
}

Metrics compute_metrics(const MatchedTest &result, const GroundTruth &truth, const TestCase &source,
                        double elapsed_ms)
{
    if (result.test_id != truth.test_id || result.test_id != source.test_id) {
        throw std::invalid_argument("result '" + result.test_id + "', truth '" + truth.test_id + "' and source '" +
                                    source.test_id + "' do not name the same test");
    }
    struct Tally {
        std::size_t matched = 0;
        std::size_t correct = 0;
        std::set<std::size_t> recalled;
        std::size_t expected = 0;
    };
    Tally gui;
    Tally oracle;
    auto kind_of = [&source](std::size_t index) {
        return index < source.events.size() ? source.events[index].kind : EventKind::gui;
    };
    auto is_correct = [&truth](const MatchPair &p) {
        const TruthEntry *t = truth.find(p.source_index);
        return !p.skip && t != nullptr && t->widget_id == p.concrete.widget_id && t->action == p.concrete.action;
    };

    for (const auto &p : result.pairs) {
        if (p.skip && truth.droppable.count(p.source_index) != 0) {
            continue;
        }
        Tally &t = p.kind == EventKind::oracle ? oracle : gui;
        ++t.matched;
        if (is_correct(p)) {
            ++t.correct;
            if (truth.droppable.count(p.source_index) == 0) {
                t.recalled.insert(p.source_index);
            }
        }
    }
    for (const auto &e : truth.entries) {
        if (truth.droppable.count(e.source_index) == 0) {
            ++(kind_of(e.source_index) == EventKind::oracle ? oracle : gui).expected;
        }
    }

    auto ratio = [](std::size_t num, std::size_t den) {
        return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    Metrics m;
    m.gui_precision = ratio(gui.correct, gui.matched);
    m.gui_recall = ratio(gui.recalled.size(), gui.expected);
    m.oracle_precision = ratio(oracle.correct, oracle.matched);
    m.oracle_recall = ratio(oracle.recalled.size(), oracle.expected);
    m.elapsed_ms = elapsed_ms;

    const MatchPair *final_oracle = nullptr;
    for (auto it = result.pairs.rbegin(); it != result.pairs.rend(); ++it) {
        if (it->kind == EventKind::oracle) {
            final_oracle = &*it;
            break;
        }
    }
    m.success = final_oracle != nullptr && is_correct(*final_oracle) && result.oracle_status == OracleStatus::pass;
    return m;
}

SuiteConfig parse_suite_config(std::string_view text, const std::filesystem::path &base_dir)
{
    toml::table root;
    try {
        root = toml::parse(text);
    } catch (const toml::parse_error &e) {
        throw ParseError("malformed suite TOML at line " + std::to_string(e.source().begin.line) + ": " +
                         std::string(e.description()));
    }
    auto resolve = [&base_dir](const std::string &p) {
        std::filesystem::path path(p);
        return path.is_relative() ? base_dir / path : path;
    };
    auto str = [](const toml::table &t, std::string_view key, const std::string &where, bool required) {
        const toml::node *n = t.get(key);
        if (n == nullptr) {
            if (required) {
                throw ConfigError("missing '" + where + "'");
            }
            return std::string();
        }
        if (!n->is_string()) {
            throw ConfigError("'" + where + "' must be a string");
        }
        return *n->value<std::string>();
    };

    SuiteConfig suite;
    for (const auto &[key, value] : root) {
        if (key != "embeddings" && key != "config" && key != "tuple") {
            throw ConfigError("unknown key '" + std::string(key.str()) + "'");
        }
    }
    if (root.contains("config")) {
        suite.run = load_run_config(resolve(str(root, "config", "config", true)));
    }
    std::filesystem::path default_embeddings;
    if (root.contains("embeddings")) {
        default_embeddings = resolve(str(root, "embeddings", "embeddings", true));
    } else if (suite.run.embeddings) {
        default_embeddings = *suite.run.embeddings;
    }

    if (const toml::node *tuples = root.get("tuple")) {
        const toml::array *arr = tuples->as_array();
        if (arr == nullptr) {
            throw ConfigError("'tuple' must be an array of tables");
        }
        for (std::size_t i = 0; i < arr->size(); ++i) {
            const toml::table *t = (*arr)[i].as_table();
            const std::string where = "tuple[" + std::to_string(i) + "]";
            if (t == nullptr) {
                throw ConfigError("'" + where + "' must be a table");
            }
            for (const auto &[key, value] : *t) {
                static const std::set<std::string_view> known = {"name", "group", "source_app", "target_app",
                                                                 "test", "truth", "embeddings"};
                if (known.count(key.str()) == 0) {
                    throw ConfigError("unknown key '" + where + "." + std::string(key.str()) + "'");
                }
            }
            SuiteTuple tuple;
            tuple.name = str(*t, "name", where + ".name", true);
            tuple.group = str(*t, "group", where + ".group", true);
            tuple.source_app = resolve(str(*t, "source_app", where + ".source_app", true));
            tuple.target_app = resolve(str(*t, "target_app", where + ".target_app", true));
            tuple.test = resolve(str(*t, "test", where + ".test", true));
            tuple.truth = resolve(str(*t, "truth", where + ".truth", true));
            const std::string emb = str(*t, "embeddings", where + ".embeddings", false);
            tuple.embeddings = emb.empty() ? default_embeddings : resolve(emb);
            if (tuple.embeddings.empty()) {
                throw ConfigError("'" + where + "' has no embeddings file");
            }
            suite.tuples.push_back(std::move(tuple));
        }
    }
    return suite;
}

SuiteConfig load_suite_config(const std::filesystem::path &path)
{
    return parse_suite_config(read_text_file(path), path.parent_path());
}

namespace {

TupleResult run_tuple(const SuiteTuple &tuple, const ReuseConfig &config)
{
    TupleResult r;
    r.name = tuple.name;
    r.group = tuple.group;
    try {
        const auto start = std::chrono::steady_clock::now();
        load_app_model_file(tuple.source_app);
        const AppModel target = load_app_model_file(tuple.target_app);
        const TestCase source = load_test_file(tuple.test);
        const GroundTruth truth = load_ground_truth_file(tuple.truth);
        truth.validate_against(source);
        auto table = std::make_shared<const EmbeddingTable>(EmbeddingTable::load(tuple.embeddings));

        ReuseEngine engine(target, table, config);
        RunResult run = engine.run(source);
        const double elapsed =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

        r.metrics = compute_metrics(run.final_test, truth, source, elapsed);
        r.timings = run.timings;
        r.pairs = run.final_test.pairs.size();
        r.average_similarity = run.final_test.average_similarity();
        r.oracle_status = run.final_test.oracle_status;
        r.probes = engine.explorer().stats().probes;
        r.final_test = std::move(run.final_test);
        r.completed = true;
    } catch (const std::exception &e) {
        r.completed = false;
        r.error = e.what();
    }
    return r;
}

}  // namespace

Report run_benchmark(const SuiteConfig &suite)
{
    Report report;
    if (suite.run.deterministic) {
        for (const auto &t : suite.tuples) {
            report.tuples.push_back(run_tuple(t, suite.run.reuse));
        }
    } else {
        std::vector<std::future<TupleResult>> jobs;
        for (const auto &t : suite.tuples) {
            jobs.push_back(std::async(std::launch::async, run_tuple, std::cref(t), std::cref(suite.run.reuse)));
        }
        for (auto &j : jobs) {
            report.tuples.push_back(j.get());
        }
    }

    std::map<std::string, std::size_t> position;
    for (const auto &t : report.tuples) {
        auto [it, inserted] = position.emplace(t.group, report.groups.size());
        if (inserted) {
            report.groups.push_back({});
            report.groups.back().group = t.group;
        }
        GroupRow &g = report.groups[it->second];
        ++g.tuples;
        if (!t.completed) {
            continue;
        }
        ++g.completed;
        g.gui_precision += t.metrics.gui_precision;
        g.gui_recall += t.metrics.gui_recall;
        g.oracle_precision += t.metrics.oracle_precision;
        g.oracle_recall += t.metrics.oracle_recall;
        g.success_rate += t.metrics.success ? 1.0 : 0.0;
        g.average_ms += t.metrics.elapsed_ms;
    }
    for (auto &g : report.groups) {
        if (g.completed > 0) {
            const double n = static_cast<double>(g.completed);
            g.gui_precision /= n;
            g.gui_recall /= n;
            g.oracle_precision /= n;
            g.oracle_recall /= n;
            g.average_ms /= n;
        }
        g.success_rate /= static_cast<double>(g.tuples);
    }
    return report;
}

bool Report::all_completed() const
{
    return std::all_of(tuples.begin(), tuples.end(), [](const TupleResult &t) { return t.completed; });
}

json Report::to_json(bool include_timings) const
{
    json groups_json = json::array();
    for (const auto &g : groups) {
        json row = {{"group", g.group},
                    {"tuples", g.tuples},
                    {"completed", g.completed},
                    {"gui_precision", g.gui_precision},
                    {"gui_recall", g.gui_recall},
                    {"oracle_precision", g.oracle_precision},
                    {"oracle_recall", g.oracle_recall},
                    {"success_rate", g.success_rate}};
        if (include_timings) {
            row["average_ms"] = g.average_ms;
        }
        groups_json.push_back(row);
    }
    json tuples_json = json::array();
    for (const auto &t : tuples) {
        json row = {{"name", t.name}, {"group", t.group}, {"completed", t.completed}};
        if (!t.completed) {
            row["error"] = t.error;
        } else {
            row["gui_precision"] = t.metrics.gui_precision;
            row["gui_recall"] = t.metrics.gui_recall;
            row["oracle_precision"] = t.metrics.oracle_precision;
            row["oracle_recall"] = t.metrics.oracle_recall;
            row["success"] = t.metrics.success;
            row["pairs"] = t.pairs;
            row["average_similarity"] = t.average_similarity;
            row["oracle_status"] = to_string(t.oracle_status);
            row["result"] = guireuse::to_json(t.final_test, std::nullopt);
            if (include_timings) {
                row["elapsed_ms"] = t.metrics.elapsed_ms;
                row["phase_timings_ms"] = {{"generation", t.timings.generation_ms},
                                           {"deduplication", t.timings.deduplication_ms},
                                           {"adaptation", t.timings.adaptation_ms}};
            }
        }
        tuples_json.push_back(row);
    }
    return json{{"groups", groups_json}, {"tuples", tuples_json}};
}

namespace {

std::string fmt(double v, int precision = 3)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

std::string render(const std::vector<std::vector<std::string>> &rows)
{
    std::vector<std::size_t> width;
    for (const auto &row : rows) {
        width.resize(std::max(width.size(), row.size()));
        for (std::size_t c = 0; c < row.size(); ++c) {
            width[c] = std::max(width[c], row[c].size());
        }
    }
    std::string out;
    for (const auto &row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line += row[c];
            if (c + 1 < row.size()) {
                line += std::string(width[c] - row[c].size() + 2, ' ');
            }
        }
        out += line + "\n";
    }
    return out;
}

}  // namespace

std::string Report::to_text(bool include_timings) const
{
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head = {"group", "tuples", "done", "gui_P", "gui_R", "oracle_P", "oracle_R", "success"};
    if (include_timings) {
        head.push_back("avg_ms");
    }
    rows.push_back(head);
    for (const auto &g : groups) {
        std::vector<std::string> row = {g.group,
                                        std::to_string(g.tuples),
                                        std::to_string(g.completed),
                                        fmt(g.gui_precision),
                                        fmt(g.gui_recall),
                                        fmt(g.oracle_precision),
                                        fmt(g.oracle_recall),
                                        fmt(g.success_rate)};
        if (include_timings) {
            row.push_back(fmt(g.average_ms, 1));
        }
        rows.push_back(row);
    }
    std::string out = render(rows);

    rows.clear();
    rows.push_back({"tuple", "group", "status", "pairs", "avg_sim", "oracle", "success"});
    for (const auto &t : tuples) {
        if (!t.completed) {
            std::string error = t.error;
            std::replace(error.begin(), error.end(), '\n', ' ');
            rows.push_back({t.name, t.group, "failed: " + error, "-", "-", "-", "-"});
            continue;
        }
        rows.push_back({t.name, t.group, "ok", std::to_string(t.pairs), fmt(t.average_similarity),
                        std::string(to_string(t.oracle_status)), t.metrics.success ? "yes" : "no"});
    }
    if (!tuples.empty()) {
        out += "\n" + render(rows);
    }
    return out;
}

}  // namespace guireuse
