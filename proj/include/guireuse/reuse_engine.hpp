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

#ifndef GUIREUSE_REUSE_ENGINE_HPP
#define GUIREUSE_REUSE_ENGINE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "guireuse/app_model.hpp"
#include "guireuse/explorer.hpp"
#include "guireuse/lexicon.hpp"
#include "guireuse/matcher.hpp"
#include "guireuse/simulator.hpp"

namespace guireuse {

/// One source event and what it became on the target.
struct MatchPair {
    std::size_t source_index = 0;
    EventKind kind = EventKind::gui;
    /// Nothing reachable matched; the pair carries no executable event.
    bool skip = false;
    ConcreteEvent concrete;
    std::optional<Widget> matched_widget;  // absent for skips and back
    std::string screen_id;
    double score = 0.0;
    std::vector<ConcreteEvent> leading_events;

    bool operator==(const MatchPair &) const = default;
};

enum class OracleStatus { pass, fail, not_run };
std::string_view to_string(OracleStatus status);

struct PhaseTimings {
    double generation_ms = 0.0;
    double deduplication_ms = 0.0;
    double adaptation_ms = 0.0;
};

struct MatchedTest {
    std::string test_id;
    std::string target_app;
    std::vector<MatchPair> pairs;
    OracleStatus oracle_status = OracleStatus::not_run;

    double total_similarity() const;
    /// 0.0 for an empty test.
    double average_similarity() const;
    /// Leading events and pair events in execution order.
    std::vector<ConcreteEvent> events() const;

    /// Equality of the matching itself; timings are not part of a test.
    bool operator==(const MatchedTest &) const = default;
};

nlohmann::json to_json(const MatchPair &pair);
nlohmann::json to_json(const MatchedTest &test, const std::optional<PhaseTimings> &timings);

/// Per-pair result of replaying a matched test.
enum class PairOutcome { ok, pass, fail, skipped, not_run, no_transition, error };
std::string_view to_string(PairOutcome outcome);

struct ReplayResult {
    std::vector<PairOutcome> outcomes;  // one per pair
    OracleStatus oracle_status = OracleStatus::not_run;
    bool error = false;

    /// Outcome of every oracle pair, keyed by source index.
    std::map<std::size_t, PairOutcome> oracle_outcomes(const MatchedTest &test) const;
};

struct IndexSets {
    std::vector<std::size_t> crossed;
    std::vector<std::size_t> weakest;

    bool operator==(const IndexSets &) const = default;
};

struct DedupStep {
    int rule = 1;
    std::vector<std::size_t> removed;  // pair positions in the test the rule was applied to
    bool accepted = false;
};

struct ReuseConfig {
    MatcherOptions matcher;
    ExplorerOptions explorer;
    double weakest_fraction = 0.2;
    /// Alternatives tried per index; k - 1 when unset.
    std::optional<std::size_t> retry_budget;
    double oracle_threshold = 0.8;
    bool adapt = true;
    bool deduplicate = true;
};

struct RunResult {
    MatchedTest initial;
    MatchedTest deduplicated;
    std::vector<DedupStep> dedup_log;
    IndexSets index_sets;
    MatchedTest final_test;
    PhaseTimings timings;
};

/// Generation, deduplication, and adaptation of one source test onto one target app.
/// WTG edges learned by feedback and the explored-path cache live as long as the engine.
class ReuseEngine {
public:
    ReuseEngine(const AppModel &target, std::shared_ptr<const EmbeddingTable> table, ReuseConfig config);

    MatchedTest generate(const TestCase &source);
    MatchedTest deduplicate(const MatchedTest &initial);
    MatchedTest deduplicate(const MatchedTest &initial, std::vector<DedupStep> &log);
    IndexSets select_rematch_indexes(const MatchedTest &test, const TestCase &source) const;
    MatchedTest adapt(const MatchedTest &test, const TestCase &source);
    RunResult run(const TestCase &source);

    /// Replays the test from a fresh session. Never throws on unknown widgets; those
    /// mark the result as an error.
    ReplayResult replay(const MatchedTest &test);

    /// Candidates for a source widget across the target, best first.
    std::vector<Candidate> candidates(const Widget &source) const;

    const Matcher &matcher() const { return matcher_; }
    const Explorer &explorer() const { return explorer_; }
    const OraclePolicy &oracle_policy() const { return policy_; }
    const Wtg &known_wtg() const { return known_; }
    const ReuseConfig &config() const { return config_; }

private:
    Session fresh_session() const;
    MatchPair match_event(Session &session, const Event &event, std::size_t index,
                          std::vector<Candidate> candidates);
    std::vector<MatchPair> generate_suffix(Session &session, const TestCase &source,
                                           const std::vector<std::size_t> &indexes);
    std::optional<MatchedTest> rematch(const MatchedTest &test, const TestCase &source, std::size_t index,
                                       const Candidate &alternative);
    bool same_function(const MatchedTest &a, const MatchedTest &b);
    void finish(MatchedTest &test);

    const AppModel *target_;
    Matcher matcher_;
    Explorer explorer_;
    ReuseConfig config_;
    OraclePolicy policy_;
    Wtg known_;
};

}  // namespace guireuse

#endif  // GUIREUSE_REUSE_ENGINE_HPP
