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

#ifndef GUIREUSE_SIMULATOR_HPP
#define GUIREUSE_SIMULATOR_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "guireuse/app_model.hpp"

namespace guireuse {

/// An event bound to a concrete widget of the app under test.
struct ConcreteEvent {
    Action action = Action::click;
    std::string widget_id;  // empty for back
    std::optional<std::string> input_text;
    std::optional<std::string> expected_text;
    /// Semantic snapshot a widget_exists oracle looks for.
    std::optional<Widget> expected_widget;

    bool operator==(const ConcreteEvent &) const = default;
};

enum class OutcomeStatus { ok, no_transition, oracle_pass, oracle_fail };

std::string_view to_string(OutcomeStatus status);

struct TransitionOutcome {
    OutcomeStatus status = OutcomeStatus::ok;
    std::string new_screen;

    bool operator==(const TransitionOutcome &) const = default;
};

struct TraceEntry {
    ConcreteEvent event;
    std::string from_screen;
    TransitionOutcome outcome;
    /// True when this step added an edge to the live WTG.
    bool wtg_feedback = false;

    bool operator==(const TraceEntry &) const = default;
};

/// How oracle events are judged.
struct OraclePolicy {
    /// Widget similarity for widget_exists; exact attribute equality when unset.
    std::function<double(const Widget &, const Widget &)> similarity;
    double accept_threshold = 0.8;
};

/// A running app: current screen, executed steps, and the WTG grown by feedback.
/// Copying a session forks it.
class Session {
public:
    /// The app must outlive the session.
    static Session reset(const AppModel &app);
    /// Starts with live_wtg = app.wtg() plus every edge of known.
    static Session reset(const AppModel &app, const Wtg &known);

    const AppModel &app() const { return *app_; }
    const std::string &current_screen() const { return current_; }
    const Screen &screen() const { return app_->screen(current_); }
    const std::string &current_activity() const { return screen().activity; }
    const std::vector<TraceEntry> &trace() const { return trace_; }
    const Wtg &live_wtg() const { return live_wtg_; }

    /// Throws UnknownWidgetError when ev.widget_id is set but absent from the current screen.
    TransitionOutcome execute(const ConcreteEvent &ev, const OraclePolicy &policy = {});

    /// Adds edges observed elsewhere (e.g. by a probe) to live_wtg. Returns how many were new.
    std::size_t learn(const std::vector<WtgEdge> &edges);

    bool operator==(const Session &other) const;

private:
    explicit Session(const AppModel &app) : app_(&app), current_(app.initial_screen()), live_wtg_(app.wtg()) {}

    const AppModel *app_;
    std::string current_;
    std::vector<TraceEntry> trace_;
    Wtg live_wtg_;
};

struct ExecutionTrace {
    /// One outcome per attempted event; a no_transition step is the last entry.
    std::vector<TransitionOutcome> outcomes;
    std::optional<std::size_t> halted_at;
    /// Status of the last oracle event executed, if any.
    std::optional<OutcomeStatus> final_oracle;

    bool completed() const { return !halted_at.has_value(); }
};

/// Runs events in order and stops at the first no_transition. Unknown widgets raise
/// ExecutionError carrying the failing index.
ExecutionTrace execute_test(Session &session, const std::vector<ConcreteEvent> &events,
                            const OraclePolicy &policy = {});

nlohmann::json to_json(const ConcreteEvent &event);
ConcreteEvent concrete_event_from_json(const nlohmann::json &json, const std::string &path);
std::vector<ConcreteEvent> load_concrete_events(std::string_view document);

/// One JSON object per line.
std::string trace_to_jsonl(const std::vector<TraceEntry> &trace);
std::string outcomes_to_jsonl(const std::vector<ConcreteEvent> &events, const ExecutionTrace &trace);

}  // namespace guireuse

#endif  // GUIREUSE_SIMULATOR_HPP
