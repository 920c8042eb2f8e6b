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

#include <stdexcept>

#include "fixtures.hpp"
#include "guireuse/explorer.hpp"

using namespace guireuse;

namespace {

Candidate candidate_for(const AppModel &app, const std::string &screen_id, const std::string &widget_id)
{
    const Screen &s = app.screen(screen_id);
    return Candidate{*s.find_widget(widget_id), s.screen_id, s.activity, 1.0, 1};
}

}  // namespace

TEST(FindPaths, MainToAddToDoIsOneClick)
{
    const AppModel m = fixtures::app("minimal");
    const auto paths = find_paths(m.wtg(), "Main", "AddToDo", 4);
    ASSERT_EQ(paths.size(), 1u);
    ASSERT_EQ(paths[0].size(), 1u);
    EXPECT_EQ(paths[0][0].event.widget_id, "addToDoItemFAB");
    EXPECT_EQ(paths[0][0].event.action, Action::click);
}

TEST(FindPaths, SameActivityStartsWithEmptyPath)
{
    const AppModel m = fixtures::app("minimal");
    const auto paths = find_paths(m.wtg(), "AddToDo", "AddToDo", 4);
    ASSERT_FALSE(paths.empty());
    EXPECT_TRUE(paths[0].empty());
}

TEST(FindPaths, SelfLoopsFollowTheEmptyPath)
{
    const AppModel m = fixtures::app("tip_calc");
    const auto paths = find_paths(m.wtg(), ".TipCalcActivity", ".TipCalcActivity", 4);
    ASSERT_EQ(paths.size(), 1u + m.wtg().edges().size());
    EXPECT_TRUE(paths[0].empty());
    for (std::size_t i = 1; i < paths.size(); ++i) {
        EXPECT_EQ(paths[i].size(), 1u);
    }
}

TEST(FindPaths, DisconnectedActivitiesHaveNoPaths)
{
    const AppModel m = fixtures::app("minimal_disconnected");
    EXPECT_TRUE(find_paths(m.wtg(), "Main", "Archive", 4).empty());
}

TEST(FindPaths, UnknownActivityThrows)
{
    const AppModel m = fixtures::app("minimal");
    EXPECT_THROW(find_paths(m.wtg(), "Main", "Nowhere", 4), std::invalid_argument);
}

TEST(FindPaths, ShortestFirstAndBounded)
{
    const AppModel m = fixtures::app("todolist");
    const auto paths = find_paths(m.wtg(), ".view.SettingsActivity", ".view.AddTaskActivity", 4);
    ASSERT_FALSE(paths.empty());
    for (std::size_t i = 1; i < paths.size(); ++i) {
        EXPECT_LE(paths[i - 1].size(), paths[i].size());
    }
    EXPECT_EQ(paths[0].size(), 2u);
    EXPECT_TRUE(find_paths(m.wtg(), ".view.SettingsActivity", ".view.AddTaskActivity", 1).empty());
}

TEST(FindPaths, PathsAreSimple)
{
    const AppModel m = fixtures::app("todolist");
    for (const auto &path : find_paths(m.wtg(), ".view.AddTaskActivity", ".view.SettingsActivity", 4)) {
        std::set<std::string> seen{path.front().from_activity};
        for (const auto &e : path) {
            EXPECT_TRUE(seen.insert(e.to_activity).second);
        }
    }
}

TEST(ResolveReachable, CandidateOnCurrentActivityNeedsNoLeadingEvents)
{
    const AppModel m = fixtures::app("minimal");
    Session s = Session::reset(m);
    s.execute(fixtures::click("addToDoItemFAB"));
    Explorer explorer;
    const auto r = explorer.resolve_reachable(s, {candidate_for(m, "addtodo_empty", "userToDoEditText")});
    ASSERT_TRUE(r);
    EXPECT_EQ(r->candidate.widget.widget_id, "userToDoEditText");
    EXPECT_TRUE(r->leading_events.empty());
}

TEST(ResolveReachable, UnreachableCandidatesGiveNothing)
{
    const AppModel m = fixtures::app("minimal_disconnected");
    Session s = Session::reset(m);
    Explorer explorer;
    EXPECT_FALSE(explorer.resolve_reachable(s, {candidate_for(m, "archive", "toDoListItemTextview")}));
}

TEST(ResolveReachable, StaleWtgEdgeIsDiscardedByProbe)
{
    // The WTG claims save leads back to the main list, but on an empty form it does not.
    const AppModel m = fixtures::app("todolist");
    Session s = Session::reset(m);
    s.execute(fixtures::click("fab_new_task"));
    Explorer explorer;
    const auto r = explorer.resolve_reachable(s, {candidate_for(m, "main_empty", "fab_new_task")});
    ASSERT_TRUE(r);
    ASSERT_EQ(r->leading_events.size(), 1u);
    EXPECT_EQ(r->leading_events[0].widget_id, "fab_discard");
}

TEST(ResolveReachable, RankDominatesPathLength)
{
    const AppModel m = fixtures::app("minimal");
    Session s = Session::reset(m);
    Explorer explorer;
    const auto r = explorer.resolve_reachable(
        s, {candidate_for(m, "addtodo_empty", "userToDoEditText"), candidate_for(m, "main_empty", "settingsMenuItem")});
    ASSERT_TRUE(r);
    EXPECT_EQ(r->candidate.widget.widget_id, "userToDoEditText");
    EXPECT_EQ(r->leading_events.size(), 1u);
}

TEST(ResolveReachable, SecondCallHitsTheCache)
{
    const AppModel m = fixtures::app("minimal");
    Session s = Session::reset(m);
    Explorer explorer;
    const std::vector<Candidate> cands = {candidate_for(m, "addtodo_empty", "userToDoEditText")};
    const auto first = explorer.resolve_reachable(s, cands);
    const ExplorerStats after_first = explorer.stats();
    const auto second = explorer.resolve_reachable(s, cands);
    ASSERT_TRUE(first && second);
    EXPECT_EQ(first->leading_events, second->leading_events);
    EXPECT_EQ(first->candidate.screen_id, second->candidate.screen_id);
    EXPECT_EQ(explorer.stats().probes, after_first.probes);
    EXPECT_EQ(explorer.stats().find_paths_runs, after_first.find_paths_runs);
    EXPECT_GT(explorer.stats().probe_cache_hits, after_first.probe_cache_hits);
}

TEST(ResolveReachable, ProbesRollBack)
{
    const AppModel m = fixtures::app("todolist");
    Session s = Session::reset(m);
    s.execute(fixtures::click("fab_new_task"));
    const Session before = s;
    Explorer explorer;
    explorer.resolve_reachable(s, {candidate_for(m, "settings", "switch_theme")});
    EXPECT_EQ(s.current_screen(), before.current_screen());
    EXPECT_EQ(s.trace(), before.trace());
    for (const auto &e : before.live_wtg().edges()) {
        EXPECT_TRUE(s.live_wtg().has_edge(e));
    }
}

TEST(ResolveReachable, ReturnedPathLandsOnTheWidget)
{
    const AppModel m = fixtures::app("todolist");
    Session s = Session::reset(m);
    s.execute(fixtures::click("action_settings"));
    Explorer explorer;
    const auto r = explorer.resolve_reachable(s, {candidate_for(m, "add_task_empty", "et_new_task_name")});
    ASSERT_TRUE(r);
    Session replay = s;
    for (const auto &ev : r->leading_events) {
        ASSERT_EQ(replay.execute(ev).status, OutcomeStatus::ok);
    }
    EXPECT_NE(replay.screen().find_widget("et_new_task_name"), nullptr);
    EXPECT_EQ(replay.current_screen(), r->candidate.screen_id);
}

TEST(PathCache, VerifiedPathsReplayFromTheirStart)
{
    const AppModel m = fixtures::app("todolist");
    Session s = Session::reset(m);
    s.execute(fixtures::click("action_settings"));
    Explorer explorer;
    explorer.resolve_reachable(s, {candidate_for(m, "add_task_empty", "et_new_task_name")});
    ASSERT_FALSE(explorer.cache().all_verified().empty());
    for (const auto &[key, paths] : explorer.cache().all_verified()) {
        for (const auto &p : paths) {
            Session probe = Session::reset(m);
            // Walk to the recorded start screen first.
            if (p.start_screen == "settings") {
                probe.execute(fixtures::click("action_settings"));
            }
            ASSERT_EQ(probe.current_screen(), p.start_screen);
            for (const auto &ev : p.events) {
                probe.execute(ev);
            }
            EXPECT_EQ(probe.current_activity(), key.second);
        }
    }
    EXPECT_FALSE(explorer.cache().to_json().empty());
}

TEST(PathCache, DisabledCacheGivesSameAnswers)
{
    const AppModel m = fixtures::app("todolist");
    Explorer cached;
    Explorer uncached({4, false});
    for (auto [screen, widget] : std::vector<std::pair<std::string, std::string>>{
             {"add_task_empty", "et_new_task_name"}, {"settings", "switch_theme"}, {"main_empty", "fab_new_task"},
             {"add_task_empty", "et_new_task_name"}}) {
        Session a = Session::reset(m);
        Session b = Session::reset(m);
        const auto ra = cached.resolve_reachable(a, {candidate_for(m, screen, widget)});
        const auto rb = uncached.resolve_reachable(b, {candidate_for(m, screen, widget)});
        ASSERT_EQ(ra.has_value(), rb.has_value());
        if (ra) {
            EXPECT_EQ(ra->leading_events, rb->leading_events);
        }
        EXPECT_EQ(a.live_wtg(), b.live_wtg());
    }
    EXPECT_LT(cached.stats().probes, uncached.stats().probes);
}
