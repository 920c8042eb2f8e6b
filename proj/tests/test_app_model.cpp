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

using namespace guireuse;
using nlohmann::json;

namespace {

json minimal_json()
{
    return json::parse(read_text_file(fixtures::data("apps/minimal.json")));
}

json test_json()
{
    return json::parse(read_text_file(fixtures::data("tests/todolist_add_task.json")));
}

// Path of the first violation raised while loading doc.
std::vector<std::string> violation_paths(const json &doc, bool is_test = false)
{
    try {
        if (is_test) {
            load_test(doc.dump());
        } else {
            load_app_model(doc.dump());
        }
    } catch (const ValidationError &e) {
        std::vector<std::string> out;
        for (const auto &v : e.violations()) {
            out.push_back(v.path);
        }
        return out;
    }
    return {};
}

bool contains(const std::vector<std::string> &v, const std::string &s)
{
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST(AppModel, LoadsMinimalWithTwoActivities)
{
    const AppModel m = fixtures::app("minimal");
    EXPECT_EQ(m.app_id(), "minimal");
    EXPECT_EQ(m.wtg().nodes(), (std::set<std::string>{"Main", "AddToDo"}));
    EXPECT_EQ(m.screen(m.initial_screen()).activity, "Main");
    EXPECT_EQ(m.screens().size(), 4u);
}

TEST(AppModel, AllBundledAppsLoad)
{
    for (auto name : {"todolist", "todolist_boot", "minimal", "minimal_disconnected", "tip_calculator", "tip_calc",
                      "lightning", "focus"}) {
        EXPECT_NO_THROW(fixtures::app(name)) << name;
    }
}

TEST(AppModel, MissingInitialScreenIsRejected)
{
    json doc = minimal_json();
    doc["initial_screen"] = "nowhere";
    EXPECT_TRUE(contains(violation_paths(doc), "$.initial_screen"));
}

TEST(AppModel, UnknownAttributeNameIsRejectedWithPath)
{
    json doc = minimal_json();
    doc["screens"][0]["widgets"][1]["attributes"]["font-size"] = "12sp";
    EXPECT_TRUE(contains(violation_paths(doc), "$.screens[0].widgets[1].attributes.font-size"));
}

TEST(AppModel, BooleanAttributesMustBeLiteral)
{
    json doc = minimal_json();
    doc["screens"][0]["widgets"][1]["attributes"]["clickable"] = "yes";
    EXPECT_TRUE(contains(violation_paths(doc), "$.screens[0].widgets[1].attributes.clickable"));
}

TEST(AppModel, WidgetActivityMustMatchScreen)
{
    json doc = minimal_json();
    doc["screens"][0]["widgets"][0]["attributes"]["activity"] = "AddToDo";
    EXPECT_TRUE(contains(violation_paths(doc), "$.screens[0].widgets[0].attributes.activity"));
}

TEST(AppModel, EmptyPackageIsRejected)
{
    json doc = minimal_json();
    doc["screens"][0]["widgets"][0]["attributes"]["package"] = "";
    EXPECT_TRUE(contains(violation_paths(doc), "$.screens[0].widgets[0].attributes.package"));
}

TEST(AppModel, DuplicateWidgetIdIsRejected)
{
    json doc = minimal_json();
    doc["screens"][0]["widgets"].push_back(doc["screens"][0]["widgets"][0]);
    EXPECT_TRUE(contains(violation_paths(doc), "$.screens[0].widgets[3].widget_id"));
}

TEST(AppModel, EdgeEndpointsMustBeNodes)
{
    json doc = minimal_json();
    doc["wtg"]["edges"][0]["to_activity"] = "Ghost";
    EXPECT_TRUE(contains(violation_paths(doc), "$.wtg.edges[0].to_activity"));
}

TEST(AppModel, DuplicateEdgeIsRejected)
{
    json doc = minimal_json();
    doc["wtg"]["edges"].push_back(doc["wtg"]["edges"][0]);
    EXPECT_TRUE(contains(violation_paths(doc), "$.wtg.edges[3]"));
}

TEST(AppModel, TransitionMustReferenceWidgetOnScreen)
{
    json doc = minimal_json();
    doc["transitions"][0]["widget_id"] = "userToDoEditText";
    EXPECT_TRUE(contains(violation_paths(doc), "$.transitions[0].widget_id"));
}

TEST(AppModel, UnknownTopLevelKeyIsRejected)
{
    json doc = minimal_json();
    doc["version"] = 2;
    EXPECT_TRUE(contains(violation_paths(doc), "$.version"));
}

TEST(AppModel, MalformedJsonIsParseError)
{
    EXPECT_THROW(load_app_model("{\"app_id\": "), ParseError);
    EXPECT_THROW(load_test("[1, 2"), ParseError);
}

TEST(AppModel, EveryViolationIsReportedAtOnce)
{
    json doc = minimal_json();
    doc["screens"][0]["widgets"][0]["attributes"]["clickable"] = true;
    doc["screens"][2]["widgets"][0]["attributes"]["font-size"] = "12sp";
    EXPECT_GE(violation_paths(doc).size(), 2u);

    json semantic = minimal_json();
    semantic["initial_screen"] = "nowhere";
    semantic["screens"][1]["screen_id"] = semantic["screens"][0]["screen_id"];
    EXPECT_GE(violation_paths(semantic).size(), 2u);
}

TEST(AppModel, RoundTripsThroughSerialize)
{
    for (auto name : {"todolist", "minimal", "minimal_disconnected", "tip_calc", "focus"}) {
        const AppModel m = fixtures::app(name);
        EXPECT_EQ(load_app_model(serialize(m)), m) << name;
    }
}

TEST(AppModel, IncompleteWtgIsLegalAndGapsAreFlagged)
{
    const AppModel m = fixtures::app("minimal");
    bool settings_gap = false;
    for (const auto &t : m.wtg_gaps()) {
        settings_gap |= t.widget_id == "settingsMenuItem";
    }
    EXPECT_TRUE(settings_gap);
    // Transitions whose activity pair is in the WTG are not gaps.
    for (const auto &t : m.wtg_gaps()) {
        EXPECT_NE(t.widget_id, "addToDoItemFAB");
    }
}

TEST(AppModel, NextScreenFollowsTransitionMap)
{
    const AppModel m = fixtures::app("minimal");
    EXPECT_EQ(m.next_screen("main_empty", "addToDoItemFAB", Action::click), "addtodo_empty");
    EXPECT_EQ(m.next_screen("main_empty", "", Action::back), std::nullopt);
}

TEST(Wtg, FingerprintIgnoresInsertionOrder)
{
    Wtg a;
    Wtg b;
    const WtgEdge e1{"A", {"x", Action::click}, "B"};
    const WtgEdge e2{"B", {"", Action::back}, "A"};
    a.add_edge(e1);
    a.add_edge(e2);
    b.add_edge(e2);
    b.add_edge(e1);
    EXPECT_EQ(a.fingerprint(), b.fingerprint());
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a.add_edge(e1));
    EXPECT_EQ(a.edges().size(), 2u);
}

TEST(TestCaseLoad, AddTaskFixtureHasFiveEvents)
{
    const TestCase t = fixtures::test("todolist_add_task");
    ASSERT_EQ(t.events.size(), 5u);
    EXPECT_EQ(t.events.back().kind, EventKind::oracle);
    EXPECT_EQ(t.events[2].input_text, "Buy milk");
    EXPECT_EQ(t.events[0].widget->attribute("resource-id"), "fab_new_task");
}

TEST(TestCaseLoad, FinalGuiEventIsRejected)
{
    json doc = test_json();
    doc["events"].erase(doc["events"].size() - 1);
    EXPECT_TRUE(contains(violation_paths(doc, true), "$.events[3].kind"));
}

TEST(TestCaseLoad, EmptyEventsAreRejected)
{
    json doc = test_json();
    doc["events"] = json::array();
    EXPECT_TRUE(contains(violation_paths(doc, true), "$.events"));
}

TEST(TestCaseLoad, InputNeedsText)
{
    json doc = test_json();
    doc["events"][2].erase("input_text");
    EXPECT_TRUE(contains(violation_paths(doc, true), "$.events[2].input_text"));
}

TEST(TestCaseLoad, KindAndActionMustAgree)
{
    json doc = test_json();
    doc["events"][0]["action"] = "text_present";
    EXPECT_TRUE(contains(violation_paths(doc, true), "$.events[0].action"));
}

TEST(TestCaseLoad, OracleBeforeFirstGuiIsRejected)
{
    json doc = test_json();
    json oracle = doc["events"][4];
    doc["events"].insert(doc["events"].begin(), oracle);
    EXPECT_TRUE(contains(violation_paths(doc, true), "$.events[0].kind"));
}

TEST(TestCaseLoad, OracleOnlyTestIsAllowed)
{
    json doc = test_json();
    doc["events"] = json::array({test_json()["events"][4]});
    EXPECT_NO_THROW(load_test(doc.dump()));
}
