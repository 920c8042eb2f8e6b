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

#ifndef GUIREUSE_APP_MODEL_HPP
#define GUIREUSE_APP_MODEL_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "json.hpp"

namespace guireuse {

/// The ten widget attributes captured during test augmentation, in canonical order.
inline constexpr std::array<std::string_view, 10> kAttributeNames = {
    "class",   "resource-id", "text",         "content-desc", "clickable",
    "password", "parent_text", "sibling_text", "activity",     "package",
};

bool is_attribute_name(std::string_view name);

struct Widget {
    std::string widget_id;
    std::map<std::string, std::string> attributes;

    /// Empty when absent.
    std::string_view attribute(std::string_view name) const;

    bool operator==(const Widget &) const = default;
};

struct Screen {
    std::string screen_id;
    std::string activity;
    std::vector<Widget> widgets;

    const Widget *find_widget(std::string_view widget_id) const;

    bool operator==(const Screen &) const = default;
};

enum class Action { click, long_click, input, back, text_present, widget_exists };
enum class EventKind { gui, oracle };

std::string_view to_string(Action action);
std::string_view to_string(EventKind kind);
std::optional<Action> parse_action(std::string_view text);
std::optional<EventKind> parse_event_kind(std::string_view text);
bool is_gui_action(Action action);
bool is_oracle_action(Action action);

/// Names the event on a WTG edge. widget_id is empty for back.
struct EventDescriptor {
    std::string widget_id;
    Action action = Action::click;

    auto operator<=>(const EventDescriptor &) const = default;
};

struct WtgEdge {
    std::string from_activity;
    EventDescriptor event;
    std::string to_activity;

    auto operator<=>(const WtgEdge &) const = default;
};

/// Window transition graph: activities as nodes, event-labelled edges.
/// Edges keep insertion order; the edge set only grows.
class Wtg {
public:
    Wtg() = default;

    const std::set<std::string> &nodes() const { return nodes_; }
    const std::vector<WtgEdge> &edges() const { return edges_; }

    bool has_node(std::string_view activity) const;
    bool has_edge(const WtgEdge &edge) const;
    bool has_activity_pair(std::string_view from, std::string_view to) const;

    void add_node(std::string activity);
    /// Adds the edge (and its endpoints) unless already present. Returns true on insert.
    bool add_edge(WtgEdge edge);
    /// Adds every edge of other that is missing here.
    std::size_t merge(const Wtg &other);

    /// Order-independent digest of the edge set; equal edge sets give equal values.
    std::uint64_t fingerprint() const { return fingerprint_; }

    bool operator==(const Wtg &other) const;

private:
    std::set<std::string> nodes_;
    std::vector<WtgEdge> edges_;
    std::set<WtgEdge> index_;
    std::uint64_t fingerprint_ = 0;
};

struct Transition {
    std::string from_screen;
    std::string widget_id;  // empty for back
    Action action = Action::click;
    std::string to_screen;

    bool operator==(const Transition &) const = default;
};

/// Plain, unvalidated parts of an app model. AppModel::create validates them.
struct AppModelData {
    std::string app_id;
    std::vector<Screen> screens;
    std::string initial_screen;
    Wtg wtg;
    std::vector<Transition> transitions;
};

/// A validated, immutable application model: screens, WTG, and the
/// deterministic transition map the simulator runs on.
class AppModel {
public:
    /// Throws ValidationError listing every broken invariant.
    static AppModel create(AppModelData data);

    const std::string &app_id() const { return data_.app_id; }
    const std::vector<Screen> &screens() const { return data_.screens; }
    const std::string &initial_screen() const { return data_.initial_screen; }
    const Wtg &wtg() const { return data_.wtg; }
    const std::vector<Transition> &transitions() const { return data_.transitions; }
    const AppModelData &data() const { return data_; }

    /// Transitions whose activity pair is missing from the WTG.
    const std::vector<Transition> &wtg_gaps() const { return gaps_; }

    const Screen *find_screen(std::string_view screen_id) const;
    const Screen &screen(std::string_view screen_id) const;
    std::optional<std::string> next_screen(std::string_view screen_id, std::string_view widget_id,
                                           Action action) const;

    bool operator==(const AppModel &other) const;

private:
    AppModelData data_;
    std::map<std::string, std::size_t, std::less<>> screen_index_;
    std::map<std::tuple<std::string, std::string, Action>, std::string> transition_index_;
    std::vector<Transition> gaps_;
};

struct Event {
    EventKind kind = EventKind::gui;
    Action action = Action::click;
    std::optional<Widget> widget;  // absent for back
    std::optional<std::string> input_text;
    std::optional<std::string> expected_text;

    bool operator==(const Event &) const = default;
};

struct TestCase {
    std::string test_id;
    std::vector<Event> events;

    bool operator==(const TestCase &) const = default;
};

/// Throws ValidationError.
void validate_test(const TestCase &test);

AppModel load_app_model(std::string_view document);
AppModel load_app_model_file(const std::filesystem::path &path);
TestCase load_test(std::string_view document);
TestCase load_test_file(const std::filesystem::path &path);

nlohmann::json widget_to_json(const Widget &widget);
Widget widget_from_json(const nlohmann::json &json, const std::string &path);
nlohmann::json to_json(const AppModel &app);
nlohmann::json to_json(const TestCase &test);
std::string serialize(const AppModel &app);

std::string read_text_file(const std::filesystem::path &path);

}  // namespace guireuse

#endif  // GUIREUSE_APP_MODEL_HPP
