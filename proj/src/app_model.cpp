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

#include "guireuse/app_model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "guireuse/errors.hpp"

namespace guireuse {

using nlohmann::json;

bool is_attribute_name(std::string_view name)
{
    return std::find(kAttributeNames.begin(), kAttributeNames.end(), name) != kAttributeNames.end();
}

std::string_view Widget::attribute(std::string_view name) const
{
    auto it = attributes.find(std::string(name));
    return it == attributes.end() ? std::string_view{} : std::string_view{it->second};
}

const Widget *Screen::find_widget(std::string_view widget_id) const
{
    for (const auto &w : widgets) {
        if (w.widget_id == widget_id) {
            return &w;
        }
    }
    return nullptr;
}

namespace {

constexpr std::array<std::pair<Action, std::string_view>, 6> kActionNames = {{
    {Action::click, "click"},
    {Action::long_click, "long_click"},
    {Action::input, "input"},
    {Action::back, "back"},
    {Action::text_present, "text_present"},
    {Action::widget_exists, "widget_exists"},
}};

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t edge_hash(const WtgEdge &edge)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        h ^= 0x1f;
        h *= 0x100000001b3ULL;
    };
    feed(edge.from_activity);
    feed(edge.event.widget_id);
    feed(to_string(edge.event.action));
    feed(edge.to_activity);
    return mix64(h);
}

}  // namespace

std::string_view to_string(Action action)
{
    for (const auto &[a, name] : kActionNames) {
        if (a == action) {
            return name;
        }
    }
    return "?";
}

std::string_view to_string(EventKind kind)
{
    return kind == EventKind::gui ? "gui" : "oracle";
}

std::optional<Action> parse_action(std::string_view text)
{
    for (const auto &[a, name] : kActionNames) {
        if (name == text) {
            return a;
        }
    }
    return std::nullopt;
}

std::optional<EventKind> parse_event_kind(std::string_view text)
{
    if (text == "gui") {
        return EventKind::gui;
    }
    if (text == "oracle") {
        return EventKind::oracle;
    }
    return std::nullopt;
}

bool is_gui_action(Action action)
{
    return action == Action::click || action == Action::long_click || action == Action::input ||
           action == Action::back;
}

bool is_oracle_action(Action action)
{
    return action == Action::text_present || action == Action::widget_exists;
}

// ---------------------------------------------------------------------------
// Wtg
// ---------------------------------------------------------------------------

bool Wtg::has_node(std::string_view activity) const
{
    return nodes_.find(std::string(activity)) != nodes_.end();
}

bool Wtg::has_edge(const WtgEdge &edge) const
{
    return index_.count(edge) != 0;
}

bool Wtg::has_activity_pair(std::string_view from, std::string_view to) const
{
    return std::any_of(edges_.begin(), edges_.end(), [&](const WtgEdge &e) {
        return e.from_activity == from && e.to_activity == to;
    });
}

void Wtg::add_node(std::string activity)
{
    nodes_.insert(std::move(activity));
}

bool Wtg::add_edge(WtgEdge edge)
{
    if (index_.count(edge) != 0) {
        return false;
    }
    nodes_.insert(edge.from_activity);
    nodes_.insert(edge.to_activity);
    fingerprint_ += edge_hash(edge);
    index_.insert(edge);
    edges_.push_back(std::move(edge));
    return true;
}

std::size_t Wtg::merge(const Wtg &other)
{
    for (const auto &n : other.nodes_) {
        nodes_.insert(n);
    }
    std::size_t added = 0;
    for (const auto &e : other.edges_) {
        added += add_edge(e) ? 1 : 0;
    }
    return added;
}

bool Wtg::operator==(const Wtg &other) const
{
    return nodes_ == other.nodes_ && index_ == other.index_;
}

// ---------------------------------------------------------------------------
// AppModel
// ---------------------------------------------------------------------------

AppModel AppModel::create(AppModelData data)
{
    std::vector<Violation> errs;
    AppModel model;

    if (data.app_id.empty()) {
        errs.push_back({"$.app_id", "must be non-empty"});
    }

    for (std::size_t i = 0; i < data.screens.size(); ++i) {
        const Screen &s = data.screens[i];
        const std::string path = "$.screens[" + std::to_string(i) + "]";
        if (s.screen_id.empty()) {
            errs.push_back({path + ".screen_id", "must be non-empty"});
        }
        if (s.activity.empty()) {
            errs.push_back({path + ".activity", "must be non-empty"});
        } else if (!data.wtg.has_node(s.activity)) {
            errs.push_back({path + ".activity", "activity '" + s.activity + "' is not a WTG node"});
        }
        if (!model.screen_index_.emplace(s.screen_id, i).second) {
            errs.push_back({path + ".screen_id", "duplicate screen_id '" + s.screen_id + "'"});
        }
        std::set<std::string> ids;
        for (std::size_t j = 0; j < s.widgets.size(); ++j) {
            const Widget &w = s.widgets[j];
            const std::string wpath = path + ".widgets[" + std::to_string(j) + "]";
            if (w.widget_id.empty()) {
                errs.push_back({wpath + ".widget_id", "must be non-empty"});
            }
            if (!ids.insert(w.widget_id).second) {
                errs.push_back({wpath + ".widget_id", "duplicate widget_id '" + w.widget_id + "'"});
            }
            for (const auto &[name, value] : w.attributes) {
                const std::string apath = wpath + ".attributes." + name;
                if (!is_attribute_name(name)) {
                    errs.push_back({apath, "unknown attribute '" + name + "'"});
                    continue;
                }
                if ((name == "clickable" || name == "password") && value != "true" && value != "false") {
                    errs.push_back({apath, "must be \"true\" or \"false\""});
                }
                if ((name == "activity" || name == "package") && value.empty()) {
                    errs.push_back({apath, "must be non-empty when present"});
                }
                if (name == "activity" && !value.empty() && value != s.activity) {
                    errs.push_back({apath, "'" + value + "' differs from screen activity '" + s.activity + "'"});
                }
            }
        }
    }

    if (model.screen_index_.find(data.initial_screen) == model.screen_index_.end()) {
        errs.push_back({"$.initial_screen", "unknown screen '" + data.initial_screen + "'"});
    }

    {
        std::set<WtgEdge> seen;
        for (std::size_t i = 0; i < data.wtg.edges().size(); ++i) {
            const WtgEdge &e = data.wtg.edges()[i];
            const std::string path = "$.wtg.edges[" + std::to_string(i) + "]";
            if (!is_gui_action(e.event.action)) {
                errs.push_back({path + ".event.action", "WTG edges carry gui actions only"});
            }
            if ((e.event.action == Action::back) != e.event.widget_id.empty()) {
                errs.push_back({path + ".event.widget_id", "widget_id is required except for back"});
            }
        }
    }

    auto lookup = [&model, &data](const std::string &id) -> const Screen * {
        auto it = model.screen_index_.find(id);
        return it == model.screen_index_.end() ? nullptr : &data.screens[it->second];
    };

    for (std::size_t i = 0; i < data.transitions.size(); ++i) {
        const Transition &t = data.transitions[i];
        const std::string path = "$.transitions[" + std::to_string(i) + "]";
        const Screen *from = lookup(t.from_screen);
        const Screen *to = lookup(t.to_screen);
        if (from == nullptr) {
            errs.push_back({path + ".from_screen", "unknown screen '" + t.from_screen + "'"});
        }
        if (to == nullptr) {
            errs.push_back({path + ".to_screen", "unknown screen '" + t.to_screen + "'"});
        }
        if (!is_gui_action(t.action)) {
            errs.push_back({path + ".action", "transitions carry gui actions only"});
        }
        if (t.action == Action::back) {
            if (!t.widget_id.empty()) {
                errs.push_back({path + ".widget_id", "back transitions take no widget"});
            }
        } else if (t.widget_id.empty()) {
            errs.push_back({path + ".widget_id", "required"});
        } else if (from != nullptr && from->find_widget(t.widget_id) == nullptr) {
            errs.push_back({path + ".widget_id",
                            "widget '" + t.widget_id + "' is not on screen '" + t.from_screen + "'"});
        }
        auto key = std::make_tuple(t.from_screen, t.widget_id, t.action);
        auto [it, inserted] = model.transition_index_.emplace(key, t.to_screen);
        if (!inserted) {
            errs.push_back({path, "duplicate transition for (" + t.from_screen + ", " + t.widget_id + ", " +
                                      std::string(to_string(t.action)) + ")"});
        }
        if (from != nullptr && to != nullptr && !data.wtg.has_activity_pair(from->activity, to->activity)) {
            model.gaps_.push_back(t);
        }
    }

    if (!errs.empty()) {
        throw ValidationError(std::move(errs));
    }
    model.data_ = std::move(data);
    return model;
}

const Screen *AppModel::find_screen(std::string_view screen_id) const
{
    auto it = screen_index_.find(screen_id);
    return it == screen_index_.end() ? nullptr : &data_.screens[it->second];
}

const Screen &AppModel::screen(std::string_view screen_id) const
{
    const Screen *s = find_screen(screen_id);
    if (s == nullptr) {
        throw std::out_of_range("unknown screen '" + std::string(screen_id) + "'");
    }
    return *s;
}

std::optional<std::string> AppModel::next_screen(std::string_view screen_id, std::string_view widget_id,
                                                 Action action) const
{
    auto it = transition_index_.find(std::make_tuple(std::string(screen_id), std::string(widget_id), action));
    if (it == transition_index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool AppModel::operator==(const AppModel &other) const
{
    return data_.app_id == other.data_.app_id && data_.screens == other.data_.screens &&
           data_.initial_screen == other.data_.initial_screen && data_.wtg == other.data_.wtg &&
           data_.transitions == other.data_.transitions;
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

void validate_test(const TestCase &test)
{
    std::vector<Violation> errs;
    if (test.test_id.empty()) {
        errs.push_back({"$.test_id", "must be non-empty"});
    }
    if (test.events.empty()) {
        errs.push_back({"$.events", "must contain at least one event"});
    }
    std::optional<std::size_t> first_gui;
    for (std::size_t i = 0; i < test.events.size(); ++i) {
        if (test.events[i].kind == EventKind::gui) {
            first_gui = i;
            break;
        }
    }
    for (std::size_t i = 0; i < test.events.size(); ++i) {
        const Event &e = test.events[i];
        const std::string path = "$.events[" + std::to_string(i) + "]";
        const bool gui = e.kind == EventKind::gui;
        if (gui != is_gui_action(e.action)) {
            errs.push_back({path + ".action", "action '" + std::string(to_string(e.action)) +
                                                  "' does not belong to kind '" +
                                                  std::string(to_string(e.kind)) + "'"});
        }
        if (e.action == Action::back) {
            if (e.widget) {
                errs.push_back({path + ".widget", "back events carry no widget"});
            }
        } else if (!e.widget) {
            errs.push_back({path + ".widget", "required"});
        }
        if ((e.action == Action::input) != e.input_text.has_value()) {
            errs.push_back({path + ".input_text", "required iff action is input"});
        }
        if ((e.action == Action::text_present) != e.expected_text.has_value()) {
            errs.push_back({path + ".expected_text", "required iff action is text_present"});
        }
        if (!gui && first_gui && i < *first_gui) {
            errs.push_back({path + ".kind", "oracle event before the first gui event"});
        }
        if (e.widget) {
            for (const auto &[name, value] : e.widget->attributes) {
                if (!is_attribute_name(name)) {
                    errs.push_back({path + ".widget.attributes." + name, "unknown attribute '" + name + "'"});
                }
            }
        }
    }
    if (!test.events.empty() && test.events.back().kind != EventKind::oracle) {
        errs.push_back({"$.events[" + std::to_string(test.events.size() - 1) + "].kind",
                        "the final event must be an oracle"});
    }
    if (!errs.empty()) {
        throw ValidationError(std::move(errs));
    }
}

// ---------------------------------------------------------------------------
// JSON reading
// ---------------------------------------------------------------------------

namespace {

/// Collects violations while walking a JSON document.
class Reader {
public:
    std::vector<Violation> errs;

    void fail(const std::string &path, const std::string &message) { errs.push_back({path, message}); }

    bool object(const json &j, const std::string &path, std::initializer_list<std::string_view> required,
                std::initializer_list<std::string_view> optional = {})
    {
        if (!j.is_object()) {
            fail(path, "expected an object");
            return false;
        }
        for (auto key : required) {
            if (!j.contains(std::string(key))) {
                fail(path + "." + std::string(key), "missing required key");
            }
        }
        for (const auto &[key, value] : j.items()) {
            const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                               std::find(optional.begin(), optional.end(), key) != optional.end();
            if (!known) {
                fail(path + "." + key, "unknown key");
            }
        }
        return true;
    }

    std::string string(const json &obj, const char *key, const std::string &path)
    {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return {};
        }
        if (!it->is_string()) {
            fail(path + "." + key, "expected a string");
            return {};
        }
        return it->get<std::string>();
    }

    std::optional<std::string> optional_string(const json &obj, const char *key, const std::string &path)
    {
        if (!obj.contains(key)) {
            return std::nullopt;
        }
        return string(obj, key, path);
    }

    const json *array(const json &obj, const char *key, const std::string &path)
    {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return nullptr;
        }
        if (!it->is_array()) {
            fail(path + "." + key, "expected an array");
            return nullptr;
        }
        return &*it;
    }

    Action action(const json &obj, const std::string &path)
    {
        const std::string text = string(obj, "action", path);
        auto a = parse_action(text);
        if (!a) {
            if (obj.contains("action")) {
                fail(path + ".action", "unknown action '" + text + "'");
            }
            return Action::click;
        }
        return *a;
    }

    Widget widget(const json &j, const std::string &path)
    {
        Widget w;
        if (!object(j, path, {"widget_id", "attributes"})) {
            return w;
        }
        w.widget_id = string(j, "widget_id", path);
        auto it = j.find("attributes");
        if (it == j.end()) {
            return w;
        }
        if (!it->is_object()) {
            fail(path + ".attributes", "expected an object");
            return w;
        }
        for (const auto &[name, value] : it->items()) {
            if (!value.is_string()) {
                fail(path + ".attributes." + name, "expected a string");
                continue;
            }
            if (!is_attribute_name(name)) {
                fail(path + ".attributes." + name, "unknown attribute '" + name + "'");
                continue;
            }
            w.attributes[name] = value.get<std::string>();
        }
        return w;
    }
};

json parse_json(std::string_view document)
{
    try {
        return json::parse(document.begin(), document.end());
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

Widget widget_from_json(const json &j, const std::string &path)
{
    Reader r;
    Widget w = r.widget(j, path);
    if (!r.errs.empty()) {
        throw ValidationError(std::move(r.errs));
    }
    return w;
}

AppModel load_app_model(std::string_view document)
{
    const json doc = parse_json(document);
    Reader r;
    AppModelData data;
    if (!r.object(doc, "$", {"app_id", "screens", "initial_screen", "wtg", "transitions"})) {
        throw ValidationError(std::move(r.errs));
    }
    data.app_id = r.string(doc, "app_id", "$");
    data.initial_screen = r.string(doc, "initial_screen", "$");

    if (const json *screens = r.array(doc, "screens", "$")) {
        for (std::size_t i = 0; i < screens->size(); ++i) {
            const json &sj = (*screens)[i];
            const std::string path = "$.screens[" + std::to_string(i) + "]";
            Screen s;
            if (r.object(sj, path, {"screen_id", "activity", "widgets"})) {
                s.screen_id = r.string(sj, "screen_id", path);
                s.activity = r.string(sj, "activity", path);
                if (const json *widgets = r.array(sj, "widgets", path)) {
                    for (std::size_t j = 0; j < widgets->size(); ++j) {
                        s.widgets.push_back(r.widget((*widgets)[j], path + ".widgets[" + std::to_string(j) + "]"));
                    }
                }
            }
            data.screens.push_back(std::move(s));
        }
    }

    if (auto it = doc.find("wtg"); it != doc.end() && r.object(*it, "$.wtg", {"nodes", "edges"})) {
        std::set<std::string> nodes;
        if (const json *nj = r.array(*it, "nodes", "$.wtg")) {
            for (std::size_t i = 0; i < nj->size(); ++i) {
                if (!(*nj)[i].is_string()) {
                    r.fail("$.wtg.nodes[" + std::to_string(i) + "]", "expected a string");
                    continue;
                }
                nodes.insert((*nj)[i].get<std::string>());
                data.wtg.add_node((*nj)[i].get<std::string>());
            }
        }
        if (const json *ej = r.array(*it, "edges", "$.wtg")) {
            for (std::size_t i = 0; i < ej->size(); ++i) {
                const json &e = (*ej)[i];
                const std::string path = "$.wtg.edges[" + std::to_string(i) + "]";
                if (!r.object(e, path, {"from_activity", "event", "to_activity"})) {
                    continue;
                }
                WtgEdge edge;
                edge.from_activity = r.string(e, "from_activity", path);
                edge.to_activity = r.string(e, "to_activity", path);
                if (auto ev = e.find("event"); ev != e.end() && r.object(*ev, path + ".event", {"action"}, {"widget_id"})) {
                    edge.event.action = r.action(*ev, path + ".event");
                    edge.event.widget_id = r.string(*ev, "widget_id", path + ".event");
                }
                if (nodes.count(edge.from_activity) == 0) {
                    r.fail(path + ".from_activity", "'" + edge.from_activity + "' is not a node");
                }
                if (nodes.count(edge.to_activity) == 0) {
                    r.fail(path + ".to_activity", "'" + edge.to_activity + "' is not a node");
                }
                if (!data.wtg.add_edge(edge)) {
                    r.fail(path, "duplicate edge");
                }
            }
        }
    }

    if (const json *tj = r.array(doc, "transitions", "$")) {
        for (std::size_t i = 0; i < tj->size(); ++i) {
            const json &t = (*tj)[i];
            const std::string path = "$.transitions[" + std::to_string(i) + "]";
            if (!r.object(t, path, {"from_screen", "action", "to_screen"}, {"widget_id"})) {
                continue;
            }
            Transition tr;
            tr.from_screen = r.string(t, "from_screen", path);
            tr.widget_id = r.string(t, "widget_id", path);
            tr.action = r.action(t, path);
            tr.to_screen = r.string(t, "to_screen", path);
            data.transitions.push_back(std::move(tr));
        }
    }

    if (!r.errs.empty()) {
        throw ValidationError(std::move(r.errs));
    }
    return AppModel::create(std::move(data));
}

TestCase load_test(std::string_view document)
{
    const json doc = parse_json(document);
    Reader r;
    TestCase test;
    if (!r.object(doc, "$", {"test_id", "events"})) {
        throw ValidationError(std::move(r.errs));
    }
    test.test_id = r.string(doc, "test_id", "$");
    if (const json *events = r.array(doc, "events", "$")) {
        for (std::size_t i = 0; i < events->size(); ++i) {
            const json &ej = (*events)[i];
            const std::string path = "$.events[" + std::to_string(i) + "]";
            if (!r.object(ej, path, {"kind", "action"}, {"widget", "input_text", "expected_text"})) {
                continue;
            }
            Event e;
            const std::string kind = r.string(ej, "kind", path);
            if (auto k = parse_event_kind(kind)) {
                e.kind = *k;
            } else {
                r.fail(path + ".kind", "unknown kind '" + kind + "'");
            }
            e.action = r.action(ej, path);
            if (auto w = ej.find("widget"); w != ej.end()) {
                e.widget = r.widget(*w, path + ".widget");
            }
            e.input_text = r.optional_string(ej, "input_text", path);
            e.expected_text = r.optional_string(ej, "expected_text", path);
            test.events.push_back(std::move(e));
        }
    }
    if (!r.errs.empty()) {
        throw ValidationError(std::move(r.errs));
    }
    validate_test(test);
    return test;
}

std::string read_text_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

AppModel load_app_model_file(const std::filesystem::path &path)
{
    return load_app_model(read_text_file(path));
}

TestCase load_test_file(const std::filesystem::path &path)
{
    return load_test(read_text_file(path));
}

// ---------------------------------------------------------------------------
// JSON writing
// ---------------------------------------------------------------------------

json widget_to_json(const Widget &widget)
{
    json attrs = json::object();
    for (const auto &[k, v] : widget.attributes) {
        attrs[k] = v;
    }
    return json{{"widget_id", widget.widget_id}, {"attributes", attrs}};
}

json to_json(const AppModel &app)
{
    json screens = json::array();
    for (const auto &s : app.screens()) {
        json widgets = json::array();
        for (const auto &w : s.widgets) {
            widgets.push_back(widget_to_json(w));
        }
        screens.push_back({{"screen_id", s.screen_id}, {"activity", s.activity}, {"widgets", widgets}});
    }
    json edges = json::array();
    for (const auto &e : app.wtg().edges()) {
        json ev = {{"action", to_string(e.event.action)}};
        if (!e.event.widget_id.empty()) {
            ev["widget_id"] = e.event.widget_id;
        }
        edges.push_back({{"from_activity", e.from_activity}, {"event", ev}, {"to_activity", e.to_activity}});
    }
    json transitions = json::array();
    for (const auto &t : app.transitions()) {
        json tj = {{"from_screen", t.from_screen}, {"action", to_string(t.action)}, {"to_screen", t.to_screen}};
        if (!t.widget_id.empty()) {
            tj["widget_id"] = t.widget_id;
        }
        transitions.push_back(tj);
    }
    return json{{"app_id", app.app_id()},
                {"screens", screens},
                {"initial_screen", app.initial_screen()},
                {"wtg", {{"nodes", app.wtg().nodes()}, {"edges", edges}}},
                {"transitions", transitions}};
}

json to_json(const TestCase &test)
{
    json events = json::array();
    for (const auto &e : test.events) {
        json ej = {{"kind", to_string(e.kind)}, {"action", to_string(e.action)}};
        if (e.widget) {
            ej["widget"] = widget_to_json(*e.widget);
        }
        if (e.input_text) {
            ej["input_text"] = *e.input_text;
        }
        if (e.expected_text) {
            ej["expected_text"] = *e.expected_text;
        }
        events.push_back(ej);
    }
    return json{{"test_id", test.test_id}, {"events", events}};
}

std::string serialize(const AppModel &app)
{
    return to_json(app).dump(2);
}

}  // namespace guireuse
