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

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "guireuse/config.hpp"
#include "guireuse/errors.hpp"
#include "guireuse/eval_harness.hpp"
#include "guireuse/reuse_engine.hpp"
#include "guireuse/simulator.hpp"

namespace {

using namespace guireuse;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFailed = 2;

void write_output(const std::string &path, const std::string &text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << text;
}

RunConfig load_config(const std::string &path)
{
    return path.empty() ? RunConfig{} : load_run_config(path);
}

std::shared_ptr<const EmbeddingTable> load_embeddings(const std::string &flag, const RunConfig &cfg)
{
    if (!flag.empty()) {
        return std::make_shared<const EmbeddingTable>(EmbeddingTable::load(flag));
    }
    if (cfg.embeddings) {
        return std::make_shared<const EmbeddingTable>(EmbeddingTable::load(*cfg.embeddings));
    }
    throw ConfigError("no embeddings file: pass --embeddings or set run.embeddings");
}

struct ReuseArgs {
    std::string source_app;
    std::string target_app;
    std::string test;
    std::string embeddings;
    std::string config;
    std::string out;
    std::string dump_cache;
    bool no_timings = false;
};

int cmd_reuse(const ReuseArgs &a)
{
    const RunConfig cfg = load_config(a.config);
    load_app_model_file(a.source_app);
    const AppModel target = load_app_model_file(a.target_app);
    const TestCase source = load_test_file(a.test);
    auto table = load_embeddings(a.embeddings, cfg);

    ReuseEngine engine(target, table, cfg.reuse);
    const RunResult run = engine.run(source);
    std::optional<PhaseTimings> timings;
    if (!a.no_timings) {
        timings = run.timings;
    }
    write_output(a.out, to_json(run.final_test, timings).dump(2) + "\n");
    if (!a.dump_cache.empty()) {
        write_output(a.dump_cache, engine.explorer().cache().to_json().dump(2) + "\n");
    }
    return run.final_test.oracle_status == OracleStatus::pass ? kExitOk : kExitFailed;
}

int cmd_evaluate(const std::string &suite_path, const std::string &out, bool no_timings)
{
    const SuiteConfig suite = load_suite_config(suite_path);
    const Report report = run_benchmark(suite);
    std::cout << report.to_text(!no_timings);
    if (!out.empty()) {
        write_output(out, report.to_json(!no_timings).dump(2) + "\n");
    }
    return report.all_completed() ? kExitOk : kExitError;
}

int cmd_simulate(const std::string &app_path, const std::string &test_path, const std::string &embeddings,
                 const std::string &config, const std::string &out)
{
    const RunConfig cfg = load_config(config);
    const AppModel app = load_app_model_file(app_path);
    const auto events = load_concrete_events(read_text_file(test_path));

    OraclePolicy policy;
    policy.accept_threshold = cfg.reuse.oracle_threshold;
    std::shared_ptr<const EmbeddingTable> table;
    if (!embeddings.empty() || cfg.embeddings) {
        table = load_embeddings(embeddings, cfg);
        auto matcher = std::make_shared<Matcher>(table, cfg.reuse.matcher);
        policy.similarity = [matcher](const Widget &a, const Widget &b) { return matcher->widget_similarity(a, b); };
    }

    Session session = Session::reset(app);
    const ExecutionTrace trace = execute_test(session, events, policy);
    write_output(out, outcomes_to_jsonl(events, trace));
    if (!trace.completed() || trace.final_oracle == OutcomeStatus::oracle_fail) {
        return kExitFailed;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Reuse GUI tests across apps of the same category"};
    app.require_subcommand(1);

    ReuseArgs reuse;
    auto *r = app.add_subcommand("reuse", "Migrate one test from a source app to a target app");
    r->add_option("--source-app", reuse.source_app, "Source app model (JSON)")->required();
    r->add_option("--target-app", reuse.target_app, "Target app model (JSON)")->required();
    r->add_option("--test", reuse.test, "Augmented source test (JSON)")->required();
    r->add_option("--embeddings", reuse.embeddings, "Word vectors, word2vec text format");
    r->add_option("--config", reuse.config, "Run configuration (TOML)");
    r->add_option("--out", reuse.out, "Write the matched test here instead of stdout");
    r->add_option("--dump-cache", reuse.dump_cache, "Write the explored-path cache (JSON) here");
    r->add_flag("--no-timings", reuse.no_timings, "Leave phase timings out of the output");

    std::string suite;
    std::string eval_out;
    bool eval_no_timings = false;
    auto *e = app.add_subcommand("evaluate", "Run a benchmark suite and report precision/recall");
    e->add_option("--suite", suite, "Suite file (TOML)")->required();
    e->add_option("--out", eval_out, "Write the JSON report here");
    e->add_flag("--no-timings", eval_no_timings, "Leave timings out of the report");

    std::string sim_app;
    std::string sim_test;
    std::string sim_embeddings;
    std::string sim_config;
    std::string sim_out;
    auto *s = app.add_subcommand("simulate", "Replay concrete events on an app model and print the trace");
    s->add_option("--app", sim_app, "App model (JSON)")->required();
    s->add_option("--test", sim_test, "Concrete events, or a reuse result (JSON)")->required();
    s->add_option("--embeddings", sim_embeddings, "Word vectors for widget_exists oracles");
    s->add_option("--config", sim_config, "Run configuration (TOML)");
    s->add_option("--out", sim_out, "Write the trace here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError &ex) {
        app.exit(ex);
        return kExitError;
    }

    try {
        if (r->parsed()) {
            return cmd_reuse(reuse);
        }
        if (e->parsed()) {
            return cmd_evaluate(suite, eval_out, eval_no_timings);
        }
        return cmd_simulate(sim_app, sim_test, sim_embeddings, sim_config, sim_out);
    } catch (const std::exception &ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitError;
    }
}
