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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "guireuse/errors.hpp"
#include "guireuse/matcher.hpp"
#include "guireuse/simulator.hpp"

using namespace guireuse;
using fixtures::click;
using fixtures::input;

namespace {

std::vector<ConcreteEvent> add_task_flow()
{
    return {click("addToDoItemFAB"), click("userToDoEditText"), input("userToDoEditText", "Buy milk"),
            click("makeToDoFloatingActionButton"), fixtures::text_present("toDoListItemTextview", "Buy milk")};
}

}  // namespace

TEST(Session, ResetStartsAtInitialScreen)
{
    const AppModel m = fixtures::app("minimal");
    const Session s = Session::reset(m);
    EXPECT_EQ(s.current_activity(), "Main");
    EXPECT_TRUE(s.trace().empty());
    EXPECT_EQ(s.live_wtg(), m.wtg());
    EXPECT_EQ(Session::reset(m), s);
}

TEST(Session, ClickMovesToAddToDo)
{
    const AppModel m = fixtures::app("minimal");
    Session s = Session::reset(m);
    const auto out = s.execute(click("addToDoItemFAB"));
    EXPECT_EQ(out.status, OutcomeStatus::ok);
    EXPECT_EQ(m.screen(out.new_screen).activity, "AddToDo");
    EXPECT_EQ(s.current_screen(), out.new_screen);
    ASSERT_EQ(s.trace().size(), 1u);
    EXPECT_FALSE(s.trace()[0].wtg_feedback);
}

TEST(Session, MissingTransitionLeavesStateUnchanged)
{
    const AppModel m = fixtures::app("minimal");
    Session s = Session::reset(m);
    const Session before = s;
    const auto out = s.execute(fixtures::back());
    EXPECT_EQ(out.status, OutcomeStatus::no_transition);
    EXPECT_EQ(s, before);
}

TEST(Session, UnknownWidgetIsAnError)
{
    const AppModel m = fixtures::app("minimal");
    Session s = Session::reset(m);
    EXPECT_THROW(s.execute(click("userToDoEditText")), UnknownWidgetError);
    EXPECT_THROW(s.execute(click("nope")), UnknownWidgetError);
}

TEST(Session, TextPresentAfterAddTask)
{
    const AppModel m = fixtures::app("minimal");
    Session s = Session::reset(m);
    const auto events = add_task_flow();
    for (std::size_t i = 0; i + 1 < events.size(); ++i) {
        ASSERT_EQ(s.execute(events[i]).status, OutcomeStatus::ok);
    }
    EXPECT_EQ(s.execute(events.back()).status, OutcomeStatus::oracle_pass);
    EXPECT_EQ(s.execute(fixtures::text_present("toDoListItemTextview", "Buy bread")).status,
              OutcomeStatus::oracle_fail);
}

TEST(Session, WidgetExistsUsesSimilarityThreshold)
{
    const AppModel m = fixtures::app("tip_calculator");
    Session s = Session::reset(m);
    s.execute(click("btn_calculate"));
    const Widget wanted = *fixtures::test("tip_calc_total").events.back().widget;
    ConcreteEvent ev{Action::widget_exists, "tv_total", std::nullopt, std::nullopt, wanted};

    const Matcher matcher(fixtures::toy(), {});
    OraclePolicy policy;
    policy.similarity = [&matcher](const Widget &a, const Widget &b) { return matcher.widget_similarity(a, b); };
    EXPECT_EQ(s.execute(ev, policy).status, OutcomeStatus::oracle_pass);
    policy.accept_threshold = 0.95;
    EXPECT_EQ(s.execute(ev, policy).status, OutcomeStatus::oracle_fail);
    // Without a similarity function only an identical snapshot passes.
    EXPECT_EQ(s.execute(ev).status, OutcomeStatus::oracle_fail);
}

TEST(Session, FeedbackAddsObservedEdges)
{
    const AppModel m = fixtures::app("minimal");
    Session s = Session::reset(m);
    s.execute(click("settingsMenuItem"));
    const WtgEdge edge{"Main", {"settingsMenuItem", Action::click}, "Main"};
    EXPECT_FALSE(m.wtg().has_edge(edge));
    EXPECT_TRUE(s.live_wtg().has_edge(edge));
    EXPECT_TRUE(s.trace().back().wtg_feedback);
}

TEST(Session, FeedbackIsSoundAndMonotone)
{
    const AppModel m = fixtures::app("minimal");
    Session s = Session::reset(m);
    const std::vector<ConcreteEvent> events = {click("settingsMenuItem"), click("addToDoItemFAB"),
                                               click("toDoHasDateSwitchCompat"), click("toDoHasDateSwitchCompat"),
                                               click("userToDoEditText"), fixtures::back(), click("settingsMenuItem")};
    std::size_t edges = s.live_wtg().edges().size();
    for (const auto &ev : events) {
        s.execute(ev);
        EXPECT_GE(s.live_wtg().edges().size(), edges);
        edges = s.live_wtg().edges().size();
    }
    std::size_t fed = 0;
    for (const auto &t : s.trace()) {
        if (!t.wtg_feedback) {
            continue;
        }
        ++fed;
        EXPECT_TRUE(s.live_wtg().has_edge({m.screen(t.from_screen).activity,
                                           {t.event.widget_id, t.event.action},
                                           m.screen(t.outcome.new_screen).activity}));
    }
    EXPECT_EQ(fed, s.live_wtg().edges().size() - m.wtg().edges().size());
    for (const auto &e : m.wtg().edges()) {
        EXPECT_TRUE(s.live_wtg().has_edge(e));
    }
}

TEST(ExecuteTest, AddTaskFlowEndsWithOraclePass)
{
    const AppModel m = fixtures::app("minimal");
    Session s = Session::reset(m);
    const auto trace = execute_test(s, add_task_flow());
    ASSERT_EQ(trace.outcomes.size(), 5u);
    EXPECT_EQ(trace.outcomes.back().status, OutcomeStatus::oracle_pass);
    EXPECT_EQ(trace.final_oracle, OutcomeStatus::oracle_pass);
    EXPECT_TRUE(trace.completed());
}

TEST(ExecuteTest, EmptyListGivesEmptyTrace)
{
    const AppModel m = fixtures::app("minimal");
    Session s = Session::reset(m);
    const auto trace = execute_test(s, {});
    EXPECT_TRUE(trace.outcomes.empty());
    EXPECT_TRUE(trace.completed());
}

TEST(ExecuteTest, StopsAtNoTransition)
{
    const AppModel m = fixtures::app("minimal");
    Session s = Session::reset(m);
    const auto trace =
        execute_test(s, {click("addToDoItemFAB"), fixtures::back(), fixtures::back(), click("addToDoItemFAB")});
    EXPECT_EQ(trace.halted_at, 2u);
    ASSERT_EQ(trace.outcomes.size(), 3u);
    EXPECT_EQ(trace.outcomes[2].status, OutcomeStatus::no_transition);
    EXPECT_EQ(s.trace().size(), 2u);
}

TEST(ExecuteTest, UnknownWidgetCarriesIndex)
{
    const AppModel m = fixtures::app("minimal");
    Session s = Session::reset(m);
    try {
        execute_test(s, {click("addToDoItemFAB"), click("addToDoItemFAB")});
        FAIL() << "expected ExecutionError";
    } catch (const ExecutionError &e) {
        EXPECT_EQ(e.index(), 1u);
    }
}

TEST(ExecuteTest, Deterministic)
{
    const AppModel m = fixtures::app("minimal");
    Session a = Session::reset(m);
    Session b = Session::reset(m);
    const auto ta = execute_test(a, add_task_flow());
    const auto tb = execute_test(b, add_task_flow());
    EXPECT_EQ(ta.outcomes, tb.outcomes);
    EXPECT_EQ(a, b);
    EXPECT_EQ(trace_to_jsonl(a.trace()), trace_to_jsonl(b.trace()));
}

TEST(TraceExport, OneJsonObjectPerLine)
{
    const AppModel m = fixtures::app("minimal");
    Session s = Session::reset(m);
    const auto events = add_task_flow();
    const auto trace = execute_test(s, events);
    const std::string text = outcomes_to_jsonl(events, trace);
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j["index"], n);
        ++n;
    }
    EXPECT_EQ(n, 5u);
    EXPECT_NE(text.find("\"oracle_pass\""), std::string::npos);
}

TEST(ConcreteEvents, LoadEventsAndReuseResults)
{
    const auto events = load_concrete_events(R"({"events": [{"action": "click", "widget_id": "a"},
        {"action": "input", "widget_id": "a", "input_text": "x"}, {"action": "back"}]})");
    ASSERT_EQ(events.size(), 3u);
    EXPECT_EQ(events[1].input_text, "x");
    const auto flat = load_concrete_events(R"({"pairs": [
        {"action": "click", "widget_id": "b", "leading_events": [{"action": "back"}]},
        {"action": "click", "skip": true, "leading_events": []}]})");
    ASSERT_EQ(flat.size(), 2u);
    EXPECT_EQ(flat[0].action, Action::back);
    EXPECT_THROW(load_concrete_events(R"({"events": [{"action": "input", "widget_id": "a"}]})"), ValidationError);
}
