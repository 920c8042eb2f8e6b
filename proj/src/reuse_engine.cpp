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

#include "guireuse/reuse_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "guireuse/errors.hpp"

namespace guireuse {

using nlohmann::json;

std::string_view to_string(OracleStatus status)
{
    switch (status) {
    case OracleStatus::pass:
        return "pass";
    case OracleStatus::fail:
        return "fail";
    case OracleStatus::not_run:
        return "not_run";
    }
    return "?";
}

std::string_view to_string(PairOutcome outcome)
{
    switch (outcome) {
    case PairOutcome::ok:
        return "ok";
    case PairOutcome::pass:
        return "pass";
    case PairOutcome::fail:
        return "fail";
    case PairOutcome::skipped:
        return "skipped";
    case PairOutcome::not_run:
        return "not_run";
    case PairOutcome::no_transition:
        return "no_transition";
    case PairOutcome::error:
        return "error";
    }
    return "?";
}

double MatchedTest::total_similarity() const
{
    double total = 0.0;
    for (const auto &p : pairs) {
        total += p.score;
    }
    return total;
}

double MatchedTest::average_similarity() const
{
    return pairs.empty() ? 0.0 : total_similarity() / static_cast<double>(pairs.size());
}

std::vector<ConcreteEvent> MatchedTest::events() const
{
    std::vector<ConcreteEvent> out;
    for (const auto &p : pairs) {
        out.insert(out.end(), p.leading_events.begin(), p.leading_events.end());
        if (!p.skip) {
            out.push_back(p.concrete);
        }
    }
    return out;
}

json to_json(const MatchPair &pair)
{
    json j = to_json(pair.concrete);
    j["source_index"] = pair.source_index;
    j["kind"] = to_string(pair.kind);
    j["score"] = pair.score;
    if (pair.skip) {
        j["skip"] = true;
    } else if (!pair.screen_id.empty()) {
        j["screen_id"] = pair.screen_id;
    }
    json leading = json::array();
    for (const auto &e : pair.leading_events) {
        leading.push_back(to_json(e));
    }
    j["leading_events"] = leading;
    return j;
}

json to_json(const MatchedTest &test, const std::optional<PhaseTimings> &timings)
{
    json pairs = json::array();
    for (const auto &p : test.pairs) {
        pairs.push_back(to_json(p));
    }
    json summary = {{"total_similarity", test.total_similarity()},
                    {"average_similarity", test.average_similarity()},
                    {"oracle_status", to_string(test.oracle_status)}};
    if (timings) {
        summary["phase_timings_ms"] = {{"generation", timings->generation_ms},
                                       {"deduplication", timings->deduplication_ms},
                                       {"adaptation", timings->adaptation_ms}};
    }
    return json{{"test_id", test.test_id}, {"target_app", test.target_app}, {"pairs", pairs}, {"summary", summary}};
}

std::map<std::size_t, PairOutcome> ReplayResult::oracle_outcomes(const MatchedTest &test) const
{
    std::map<std::size_t, PairOutcome> out;
    for (std::size_t i = 0; i < test.pairs.size() && i < outcomes.size(); ++i) {
        if (test.pairs[i].kind == EventKind::oracle) {
            out[test.pairs[i].source_index] = outcomes[i];
        }
    }
    return out;
}

namespace {

bool same_concrete(const ConcreteEvent &a, const ConcreteEvent &b)
{
    return a.action == b.action && a.widget_id == b.widget_id && a.input_text == b.input_text;
}

bool same_candidate(const Candidate &a, const Candidate &b)
{
    return a.activity == b.activity && a.widget.widget_id == b.widget.widget_id;
}

double elapsed_ms(std::chrono::steady_clock::time_point since)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

ReuseEngine::ReuseEngine(const AppModel &target, std::shared_ptr<const EmbeddingTable> table, ReuseConfig config)
    : target_(&target),
      matcher_(std::move(table), config.matcher),
      explorer_(config.explorer),
      config_(std::move(config)),
      known_(target.wtg())
{
    if (!(config_.weakest_fraction >= 0.0 && config_.weakest_fraction <= 1.0)) {
        throw ConfigError("weakest fraction must lie in [0, 1]");
    }
    policy_.accept_threshold = config_.oracle_threshold;
    policy_.similarity = [this](const Widget &a, const Widget &b) { return matcher_.widget_similarity(a, b); };
}

Session ReuseEngine::fresh_session() const
{
    return Session::reset(*target_, known_);
}

std::vector<Candidate> ReuseEngine::candidates(const Widget &source) const
{
    return matcher_.rank_app_candidates(source, *target_);
}

MatchPair ReuseEngine::match_event(Session &session, const Event &event, std::size_t index,
                                   std::vector<Candidate> cands)
{
    MatchPair pair;
    pair.source_index = index;
    pair.kind = event.kind;
    pair.concrete.action = event.action;
    pair.concrete.input_text = event.input_text;
    pair.concrete.expected_text = event.expected_text;
    if (event.action == Action::widget_exists) {
        pair.concrete.expected_widget = event.widget;
    }

    if (event.action == Action::back) {
        Session fork = session;
        if (fork.execute(pair.concrete, policy_).status == OutcomeStatus::no_transition) {
            pair.skip = true;
            return pair;
        }
        session = std::move(fork);
        pair.screen_id = session.current_screen();
        pair.score = 1.0;
        return pair;
    }

    while (!cands.empty()) {
        auto found = explorer_.resolve_reachable(session, cands);
        if (!found) {
            break;
        }
        Session fork = session;
        for (const auto &ev : found->leading_events) {
            fork.execute(ev, policy_);
        }
        ConcreteEvent ev = pair.concrete;
        ev.widget_id = found->candidate.widget.widget_id;
        if (fork.execute(ev, policy_).status == OutcomeStatus::no_transition) {
            // The widget is there but does not respond to this action; try the next one.
            session.learn(fork.live_wtg().edges());
            cands.erase(std::remove_if(cands.begin(), cands.end(),
                                       [&](const Candidate &c) { return same_candidate(c, found->candidate); }),
                        cands.end());
            continue;
        }
        session = std::move(fork);
        pair.concrete = std::move(ev);
        pair.matched_widget = found->candidate.widget;
        pair.screen_id = found->candidate.screen_id;
        pair.score = matcher_.widget_similarity(*event.widget, found->candidate.widget);
        pair.leading_events = std::move(found->leading_events);
        return pair;
    }
    pair.skip = true;
    return pair;
}

std::vector<MatchPair> ReuseEngine::generate_suffix(Session &session, const TestCase &source,
                                                    const std::vector<std::size_t> &indexes)
{
    std::vector<MatchPair> out;
    for (std::size_t i : indexes) {
        const Event &e = source.events.at(i);
        std::vector<Candidate> cands;
        if (e.widget) {
            cands = candidates(*e.widget);
        }
        out.push_back(match_event(session, e, i, std::move(cands)));
    }
    return out;
}

void ReuseEngine::finish(MatchedTest &test)
{
    test.oracle_status = replay(test).oracle_status;
}

MatchedTest ReuseEngine::generate(const TestCase &source)
{
    MatchedTest test;
    test.test_id = source.test_id;
    test.target_app = target_->app_id();
    Session session = fresh_session();
    std::vector<std::size_t> indexes(source.events.size());
    for (std::size_t i = 0; i < indexes.size(); ++i) {
        indexes[i] = i;
    }
    test.pairs = generate_suffix(session, source, indexes);
    known_.merge(session.live_wtg());
    finish(test);
    return test;
}

ReplayResult ReuseEngine::replay(const MatchedTest &test)
{
    ReplayResult r;
    r.outcomes.assign(test.pairs.size(), PairOutcome::not_run);
    Session session = fresh_session();
    std::size_t i = 0;
    for (; i < test.pairs.size(); ++i) {
        const MatchPair &p = test.pairs[i];
        bool halted = false;
        try {
            for (const auto &ev : p.leading_events) {
                if (session.execute(ev, policy_).status == OutcomeStatus::no_transition) {
                    r.outcomes[i] = PairOutcome::no_transition;
                    halted = true;
                    break;
                }
            }
            if (!halted) {
                if (p.skip) {
                    r.outcomes[i] = PairOutcome::skipped;
                    continue;
                }
                switch (session.execute(p.concrete, policy_).status) {
                case OutcomeStatus::ok:
                    r.outcomes[i] = PairOutcome::ok;
                    break;
                case OutcomeStatus::oracle_pass:
                    r.outcomes[i] = PairOutcome::pass;
                    break;
                case OutcomeStatus::oracle_fail:
                    r.outcomes[i] = PairOutcome::fail;
                    break;
                case OutcomeStatus::no_transition:
                    r.outcomes[i] = PairOutcome::no_transition;
                    halted = true;
                    break;
                }
            }
        } catch (const UnknownWidgetError &) {
            r.outcomes[i] = PairOutcome::error;
            r.error = true;
            halted = true;
        }
        if (halted) {
            break;
        }
    }
    known_.merge(session.live_wtg());

    for (std::size_t k = test.pairs.size(); k-- > 0;) {
        if (test.pairs[k].kind != EventKind::oracle) {
            continue;
        }
        switch (r.outcomes[k]) {
        case PairOutcome::pass:
            r.oracle_status = OracleStatus::pass;
            break;
        case PairOutcome::fail:
        case PairOutcome::skipped:
            r.oracle_status = OracleStatus::fail;
            break;
        default:
            r.oracle_status = OracleStatus::not_run;
            break;
        }
        break;
    }
    return r;
}

bool ReuseEngine::same_function(const MatchedTest &a, const MatchedTest &b)
{
    const ReplayResult rb = replay(b);
    if (rb.error) {
        return false;
    }
    return replay(a).oracle_outcomes(a) == rb.oracle_outcomes(b);
}

MatchedTest ReuseEngine::deduplicate(const MatchedTest &initial)
{
    std::vector<DedupStep> log;
    return deduplicate(initial, log);
}

MatchedTest ReuseEngine::deduplicate(const MatchedTest &initial, std::vector<DedupStep> &log)
{
    MatchedTest current = initial;
    auto usable = [](const MatchPair &p) { return !p.skip && p.kind == EventKind::gui; };

    // Rule 1: a run of one repeated event at the start collapses to its last repetition.
    {
        const auto &pairs = current.pairs;
        std::size_t run = 0;
        if (!pairs.empty() && usable(pairs[0])) {
            run = 1;
            while (run < pairs.size() && usable(pairs[run]) && same_concrete(pairs[run].concrete, pairs[0].concrete)) {
                ++run;
            }
        }
        if (run >= 2) {
            MatchedTest candidate = current;
            MatchPair merged = pairs[run - 1];
            merged.leading_events = pairs[0].leading_events;
            candidate.pairs.erase(candidate.pairs.begin(), candidate.pairs.begin() + static_cast<std::ptrdiff_t>(run));
            candidate.pairs.insert(candidate.pairs.begin(), std::move(merged));
            DedupStep step{1, {}, false};
            for (std::size_t i = 0; i + 1 < run; ++i) {
                step.removed.push_back(i);
            }
            step.accepted = same_function(initial, candidate);
            if (step.accepted) {
                current = std::move(candidate);
            }
            log.push_back(step);
        }
    }

    // Rule 2: a test opening with <a, b> drops a later <b, a>.
    if (current.pairs.size() >= 4 && usable(current.pairs[0]) && usable(current.pairs[1])) {
        const ConcreteEvent a = current.pairs[0].concrete;
        const ConcreteEvent b = current.pairs[1].concrete;
        std::size_t j = 2;
        while (j + 1 < current.pairs.size()) {
            const MatchPair &p = current.pairs[j];
            const MatchPair &q = current.pairs[j + 1];
            if (!(usable(p) && usable(q) && same_concrete(p.concrete, b) && same_concrete(q.concrete, a))) {
                ++j;
                continue;
            }
            MatchedTest candidate = current;
            candidate.pairs.erase(candidate.pairs.begin() + static_cast<std::ptrdiff_t>(j),
                                  candidate.pairs.begin() + static_cast<std::ptrdiff_t>(j + 2));
            DedupStep step{2, {j, j + 1}, same_function(initial, candidate)};
            log.push_back(step);
            if (step.accepted) {
                current = std::move(candidate);
            } else {
                ++j;
            }
        }
    }

    finish(current);
    return current;
}

IndexSets ReuseEngine::select_rematch_indexes(const MatchedTest &test, const TestCase &source) const
{
    IndexSets sets;
    const auto &pairs = test.pairs;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const MatchPair &p = pairs[i];
        if (p.skip || !p.matched_widget) {
            continue;
        }
        for (std::size_t j = 0; j < source.events.size(); ++j) {
            const auto &w = source.events[j].widget;
            if (j == p.source_index || !w) {
                continue;
            }
            if (matcher_.widget_similarity(*w, *p.matched_widget) > p.score) {
                sets.crossed.push_back(i);
                break;
            }
        }
    }

    const double raw = config_.weakest_fraction * static_cast<double>(pairs.size());
    const std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw - 1e-9)));
    std::vector<std::size_t> gui;
    std::vector<std::size_t> oracle;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].skip) {
            sets.weakest.push_back(i);
        } else if (pairs[i].kind == EventKind::gui) {
            gui.push_back(i);
        } else {
            oracle.push_back(i);
        }
    }
    auto by_score = [&pairs](std::size_t a, std::size_t b) {
        return pairs[a].score != pairs[b].score ? pairs[a].score < pairs[b].score : a < b;
    };
    std::sort(gui.begin(), gui.end(), by_score);
    std::sort(oracle.begin(), oracle.end(), by_score);
    for (std::size_t k = 0; k < n && k < gui.size(); ++k) {
        sets.weakest.push_back(gui[k]);
    }
    for (std::size_t k = 0; gui.size() + k < n && k < oracle.size(); ++k) {
        sets.weakest.push_back(oracle[k]);
    }
    std::sort(sets.weakest.begin(), sets.weakest.end());
    return sets;
}

std::optional<MatchedTest> ReuseEngine::rematch(const MatchedTest &test, const TestCase &source, std::size_t index,
                                                const Candidate &alternative)
{
    Session session = fresh_session();
    for (std::size_t i = 0; i < index; ++i) {
        const MatchPair &p = test.pairs[i];
        try {
            for (const auto &ev : p.leading_events) {
                if (session.execute(ev, policy_).status == OutcomeStatus::no_transition) {
                    return std::nullopt;
                }
            }
            if (!p.skip && session.execute(p.concrete, policy_).status == OutcomeStatus::no_transition) {
                return std::nullopt;
            }
        } catch (const UnknownWidgetError &) {
            return std::nullopt;
        }
    }
    const std::size_t src = test.pairs[index].source_index;
    MatchPair forced = match_event(session, source.events[src], src, {alternative});
    if (forced.skip) {
        known_.merge(session.live_wtg());
        return std::nullopt;
    }
    std::vector<std::size_t> rest;
    for (std::size_t i = index + 1; i < test.pairs.size(); ++i) {
        rest.push_back(test.pairs[i].source_index);
    }
    MatchedTest variant = test;
    variant.pairs.resize(index);
    variant.pairs.push_back(std::move(forced));
    for (auto &p : generate_suffix(session, source, rest)) {
        variant.pairs.push_back(std::move(p));
    }
    known_.merge(session.live_wtg());
    finish(variant);
    return variant;
}

MatchedTest ReuseEngine::adapt(const MatchedTest &test, const TestCase &source)
{
    MatchedTest current = test;
    finish(current);
    const IndexSets sets = select_rematch_indexes(current, source);
    std::vector<std::size_t> order = sets.crossed;
    for (std::size_t i : sets.weakest) {
        if (std::find(order.begin(), order.end(), i) == order.end()) {
            order.push_back(i);
        }
    }
    const std::size_t budget = config_.retry_budget.value_or(config_.matcher.k - 1);

    for (std::size_t index : order) {
        if (index >= current.pairs.size()) {
            continue;
        }
        const MatchPair &pair = current.pairs[index];
        const Event &event = source.events.at(pair.source_index);
        if (!event.widget) {
            continue;
        }
        std::vector<Candidate> alternatives;
        for (const auto &c : candidates(*event.widget)) {
            const bool is_current = pair.matched_widget && c.widget.widget_id == pair.matched_widget->widget_id &&
                                    c.activity == target_->screen(pair.screen_id).activity;
            if (!is_current && alternatives.size() < budget) {
                alternatives.push_back(c);
            }
        }

        std::optional<MatchedTest> best;
        for (const auto &alt : alternatives) {
            auto variant = rematch(current, source, index, alt);
            if (!variant) {
                continue;
            }
            const double bar = best ? best->average_similarity() : current.average_similarity();
            const bool oracle_ok =
                variant->oracle_status == OracleStatus::pass || current.oracle_status != OracleStatus::pass;
            if (variant->average_similarity() > bar && oracle_ok) {
                best = std::move(variant);
            }
        }
        if (best) {
            current = std::move(*best);
            if (current.oracle_status == OracleStatus::pass) {
                break;
            }
        }
    }
    return current;
}

RunResult ReuseEngine::run(const TestCase &source)
{
    RunResult r;
    auto t0 = std::chrono::steady_clock::now();
    r.initial = generate(source);
    r.timings.generation_ms = elapsed_ms(t0);

    t0 = std::chrono::steady_clock::now();
    r.deduplicated = config_.deduplicate ? deduplicate(r.initial, r.dedup_log) : r.initial;
    r.timings.deduplication_ms = elapsed_ms(t0);

    t0 = std::chrono::steady_clock::now();
    r.index_sets = select_rematch_indexes(r.deduplicated, source);
    r.final_test = config_.adapt ? adapt(r.deduplicated, source) : r.deduplicated;
    r.timings.adaptation_ms = elapsed_ms(t0);
    return r;
}

}  // namespace guireuse
