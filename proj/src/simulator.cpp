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

#include "guireuse/simulator.hpp"

#include "guireuse/errors.hpp"

namespace guireuse {

using nlohmann::json;

std::string_view to_string(OutcomeStatus status)
{
    switch (status) {
    case OutcomeStatus::ok:
        return "ok";
    case OutcomeStatus::no_transition:
        return "no_transition";
    case OutcomeStatus::oracle_pass:
        return "oracle_pass";
    case OutcomeStatus::oracle_fail:
        return "oracle_fail";
    }
    return "?";
}

Session Session::reset(const AppModel &app)
{
    return Session(app);
}

Session Session::reset(const AppModel &app, const Wtg &known)
{
    Session s(app);
    s.live_wtg_.merge(known);
    return s;
}

TransitionOutcome Session::execute(const ConcreteEvent &ev, const OraclePolicy &policy)
{
    const Screen &here = screen();
    if (!ev.widget_id.empty() && here.find_widget(ev.widget_id) == nullptr) {
        throw UnknownWidgetError(here.screen_id, ev.widget_id);
    }

    if (is_oracle_action(ev.action)) {
        bool pass = false;
        if (ev.action == Action::text_present) {
            const std::string expected = ev.expected_text.value_or("");
            for (const auto &w : here.widgets) {
                if (w.attribute("text") == expected) {
                    pass = true;
                    break;
                }
            }
        } else if (ev.expected_widget) {
            for (const auto &w : here.widgets) {
                const double score = policy.similarity ? policy.similarity(*ev.expected_widget, w)
                                                       : (w.attributes == ev.expected_widget->attributes ? 1.0 : 0.0);
                if (score >= policy.accept_threshold) {
                    pass = true;
                    break;
                }
            }
        }
        TransitionOutcome out{pass ? OutcomeStatus::oracle_pass : OutcomeStatus::oracle_fail, current_};
        trace_.push_back({ev, current_, out, false});
        return out;
    }

    auto next = app_->next_screen(current_, ev.widget_id, ev.action);
    if (!next) {
        return {OutcomeStatus::no_transition, current_};
    }
    const std::string from_activity = here.activity;
    WtgEdge edge{from_activity, {ev.widget_id, ev.action}, app_->screen(*next).activity};
    const bool added = live_wtg_.add_edge(std::move(edge));
    TransitionOutcome out{OutcomeStatus::ok, *next};
    trace_.push_back({ev, current_, out, added});
    current_ = *next;
    return out;
}

std::size_t Session::learn(const std::vector<WtgEdge> &edges)
{
    std::size_t added = 0;
    for (const auto &e : edges) {
        added += live_wtg_.add_edge(e) ? 1 : 0;
    }
    return added;
}

bool Session::operator==(const Session &other) const
{
    return app_ == other.app_ && current_ == other.current_ && trace_ == other.trace_ &&
           live_wtg_ == other.live_wtg_;
}

ExecutionTrace execute_test(Session &session, const std::vector<ConcreteEvent> &events, const OraclePolicy &policy)
{
    ExecutionTrace result;
    for (std::size_t i = 0; i < events.size(); ++i) {
        TransitionOutcome out;
        try {
            out = session.execute(events[i], policy);
        } catch (const UnknownWidgetError &e) {
            throw ExecutionError(i, e.what());
        }
        result.outcomes.push_back(out);
        if (out.status == OutcomeStatus::oracle_pass || out.status == OutcomeStatus::oracle_fail) {
            result.final_oracle = out.status;
        }
        if (out.status == OutcomeStatus::no_transition) {
            result.halted_at = i;
            break;
        }
    }
    return result;
}

json to_json(const ConcreteEvent &event)
{
    json j = {{"action", to_string(event.action)}};
    if (!event.widget_id.empty()) {
        j["widget_id"] = event.widget_id;
    }
    if (event.input_text) {
        j["input_text"] = *event.input_text;
    }
    if (event.expected_text) {
        j["expected_text"] = *event.expected_text;
    }
    if (event.expected_widget) {
        j["expected_widget"] = widget_to_json(*event.expected_widget);
    }
    return j;
}

ConcreteEvent concrete_event_from_json(const json &j, const std::string &path)
{
    std::vector<Violation> errs;
    ConcreteEvent ev;
    if (!j.is_object()) {
        throw ValidationError(std::vector<Violation>{{path, "expected an object"}});
    }
    auto str = [&](const char *key) -> std::optional<std::string> {
        auto it = j.find(key);
        if (it == j.end()) {
            return std::nullopt;
        }
        if (!it->is_string()) {
            errs.push_back({path + "." + key, "expected a string"});
            return std::nullopt;
        }
        return it->get<std::string>();
    };
    if (auto a = str("action")) {
        if (auto parsed = parse_action(*a)) {
            ev.action = *parsed;
        } else {
            errs.push_back({path + ".action", "unknown action '" + *a + "'"});
        }
    } else {
        errs.push_back({path + ".action", "missing required key"});
    }
    ev.widget_id = str("widget_id").value_or("");
    ev.input_text = str("input_text");
    ev.expected_text = str("expected_text");
    if (auto it = j.find("expected_widget"); it != j.end()) {
        try {
            ev.expected_widget = widget_from_json(*it, path + ".expected_widget");
        } catch (const ValidationError &e) {
            errs.insert(errs.end(), e.violations().begin(), e.violations().end());
        }
    }
    if (ev.action != Action::back && ev.widget_id.empty() && ev.action != Action::text_present) {
        errs.push_back({path + ".widget_id", "required"});
    }
    if (ev.action == Action::input && !ev.input_text) {
        errs.push_back({path + ".input_text", "required for input"});
    }
    if (ev.action == Action::text_present && !ev.expected_text) {
        errs.push_back({path + ".expected_text", "required for text_present"});
    }
    if (!errs.empty()) {
        throw ValidationError(std::move(errs));
    }
    return ev;
}

std::vector<ConcreteEvent> load_concrete_events(std::string_view document)
{
    json doc;
    try {
        doc = json::parse(document.begin(), document.end());
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    std::vector<ConcreteEvent> out;
    if (doc.is_object() && doc.contains("events") && doc["events"].is_array()) {
        for (std::size_t i = 0; i < doc["events"].size(); ++i) {
            out.push_back(concrete_event_from_json(doc["events"][i], "$.events[" + std::to_string(i) + "]"));
        }
        return out;
    }
    // A reuse result: leading events, then each pair's own event; skip markers carry no event.
    if (doc.is_object() && doc.contains("pairs") && doc["pairs"].is_array()) {
        for (std::size_t i = 0; i < doc["pairs"].size(); ++i) {
            const json &p = doc["pairs"][i];
            const std::string path = "$.pairs[" + std::to_string(i) + "]";
            if (auto it = p.find("leading_events"); it != p.end() && it->is_array()) {
                for (std::size_t k = 0; k < it->size(); ++k) {
                    out.push_back(concrete_event_from_json((*it)[k], path + ".leading_events[" + std::to_string(k) + "]"));
                }
            }
            if (p.value("skip", false)) {
                continue;
            }
            out.push_back(concrete_event_from_json(p, path));
        }
        return out;
    }
    throw ValidationError(std::vector<Violation>{{"$", "expected an object with an \"events\" or \"pairs\" array"}});
}

std::string trace_to_jsonl(const std::vector<TraceEntry> &trace)
{
    std::string out;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const TraceEntry &t = trace[i];
        json line = {{"index", i},
                     {"event", to_json(t.event)},
                     {"from_screen", t.from_screen},
                     {"status", to_string(t.outcome.status)},
                     {"new_screen", t.outcome.new_screen},
                     {"wtg_feedback", t.wtg_feedback}};
        out += line.dump() + "\n";
    }
    return out;
}

std::string outcomes_to_jsonl(const std::vector<ConcreteEvent> &events, const ExecutionTrace &trace)
{
    std::string out;
    for (std::size_t i = 0; i < trace.outcomes.size(); ++i) {
        json line = {{"index", i},
                     {"event", to_json(events[i])},
                     {"status", to_string(trace.outcomes[i].status)},
                     {"new_screen", trace.outcomes[i].new_screen}};
        out += line.dump() + "\n";
    }
    return out;
}

}  // namespace guireuse
