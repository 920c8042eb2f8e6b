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

#include "guireuse/explorer.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "guireuse/errors.hpp"

namespace guireuse {

using nlohmann::json;

std::vector<WtgPath> find_paths(const Wtg &wtg, const std::string &from, const std::string &to,
                                std::size_t max_len)
{
    for (const auto *a : {&from, &to}) {
        if (!wtg.has_node(*a)) {
            throw std::invalid_argument("unknown activity '" + *a + "'");
        }
    }
    std::vector<WtgPath> out;
    if (from == to) {
        out.emplace_back();
        if (max_len >= 1) {
            for (const auto &e : wtg.edges()) {
                if (e.from_activity == from && e.to_activity == from) {
                    out.push_back({e});
                }
            }
        }
        return out;
    }

    WtgPath current;
    std::set<std::string> visited{from};
    std::function<void(const std::string &)> dfs = [&](const std::string &at) {
        if (current.size() == max_len) {
            return;
        }
        for (const auto &e : wtg.edges()) {
            if (e.from_activity != at || visited.count(e.to_activity) != 0) {
                continue;
            }
            current.push_back(e);
            if (e.to_activity == to) {
                out.push_back(current);
            } else {
                visited.insert(e.to_activity);
                dfs(e.to_activity);
                visited.erase(e.to_activity);
            }
            current.pop_back();
        }
    };
    dfs(from);
    std::stable_sort(out.begin(), out.end(),
                     [](const WtgPath &a, const WtgPath &b) { return a.size() < b.size(); });
    return out;
}

std::vector<ConcreteEvent> path_events(const WtgPath &path)
{
    std::vector<ConcreteEvent> out;
    for (const auto &e : path) {
        ConcreteEvent ev;
        ev.action = e.event.action;
        ev.widget_id = e.event.widget_id;
        if (ev.action == Action::input) {
            ev.input_text = "";
        }
        out.push_back(std::move(ev));
    }
    return out;
}

const std::vector<VerifiedPath> &PathCache::verified(const std::string &from, const std::string &to) const
{
    static const std::vector<VerifiedPath> none;
    auto it = verified_.find({from, to});
    return it == verified_.end() ? none : it->second;
}

void PathCache::add_verified(const std::string &from, const std::string &to, VerifiedPath path)
{
    auto &list = verified_[{from, to}];
    const bool known = std::any_of(list.begin(), list.end(), [&](const VerifiedPath &p) {
        return p.start_screen == path.start_screen && p.events == path.events;
    });
    if (!known) {
        list.push_back(std::move(path));
    }
}

json PathCache::to_json() const
{
    json out = json::array();
    for (const auto &[key, paths] : verified_) {
        json list = json::array();
        for (const auto &p : paths) {
            json events = json::array();
            for (const auto &e : p.events) {
                events.push_back(guireuse::to_json(e));
            }
            list.push_back({{"start_screen", p.start_screen}, {"events", events}, {"activity_trace", p.activity_trace}});
        }
        out.push_back({{"from_activity", key.first}, {"to_activity", key.second}, {"paths", list}});
    }
    return out;
}

Explorer::Explorer(ExplorerOptions options) : options_(options)
{
    if (options_.max_len == 0) {
        throw ConfigError("explorer max_len must be >= 1");
    }
}

const std::vector<WtgPath> &Explorer::paths(const Wtg &wtg, const std::string &from, const std::string &to)
{
    if (!options_.cache_enabled) {
        ++stats_.find_paths_runs;
        paths_scratch_ = find_paths(wtg, from, to, options_.max_len);
        return paths_scratch_;
    }
    PathCache::PathsKey key{from, to, options_.max_len, wtg.edges().size(), wtg.fingerprint()};
    auto it = cache_.paths_.find(key);
    if (it != cache_.paths_.end()) {
        ++stats_.find_paths_cache_hits;
        return it->second;
    }
    ++stats_.find_paths_runs;
    return cache_.paths_.emplace(key, find_paths(wtg, from, to, options_.max_len)).first->second;
}

const ProbeResult &Explorer::probe(const Session &session, const WtgPath &path)
{
    PathCache::ProbeKey key{session.current_screen(), path};
    if (options_.cache_enabled) {
        auto it = cache_.probes_.find(key);
        if (it != cache_.probes_.end()) {
            ++stats_.probe_cache_hits;
            return it->second;
        }
    }
    ++stats_.probes;

    ProbeResult result;
    Session fork = session;
    const std::size_t trace_before = fork.trace().size();
    result.activity_trace.push_back(fork.current_activity());
    result.reached = true;
    for (const auto &ev : path_events(path)) {
        const std::size_t step = result.activity_trace.size() - 1;
        if (!ev.widget_id.empty() && fork.screen().find_widget(ev.widget_id) == nullptr) {
            result.reached = false;
            break;
        }
        const TransitionOutcome out = fork.execute(ev);
        if (out.status != OutcomeStatus::ok) {
            result.reached = false;
            break;
        }
        result.activity_trace.push_back(fork.current_activity());
        if (fork.current_activity() != path[step].to_activity) {
            result.reached = false;
            break;
        }
    }
    for (std::size_t i = trace_before; i < fork.trace().size(); ++i) {
        const TraceEntry &t = fork.trace()[i];
        result.observed.push_back({session.app().screen(t.from_screen).activity,
                                   {t.event.widget_id, t.event.action},
                                   session.app().screen(t.outcome.new_screen).activity});
    }
    result.landing_screen = fork.current_screen();

    if (!options_.cache_enabled) {
        probe_scratch_ = std::move(result);
        return probe_scratch_;
    }
    return cache_.probes_.emplace(std::move(key), std::move(result)).first->second;
}

std::optional<Resolution> Explorer::resolve_reachable(Session &session, const std::vector<Candidate> &candidates)
{
    const std::string from = session.current_activity();
    for (const auto &cand : candidates) {
        if (!session.live_wtg().has_node(from) || !session.live_wtg().has_node(cand.activity)) {
            continue;
        }
        // Copy: probing feeds the WTG, which may invalidate a reference into the path memo.
        const std::vector<WtgPath> candidate_paths = paths(session.live_wtg(), from, cand.activity);
        for (const auto &path : candidate_paths) {
            const ProbeResult result = probe(session, path);
            session.learn(result.observed);
            if (!result.reached) {
                continue;
            }
            const Screen &landing = session.app().screen(result.landing_screen);
            const Widget *w = landing.find_widget(cand.widget.widget_id);
            if (w == nullptr) {
                continue;
            }
            cache_.add_verified(from, cand.activity,
                                {session.current_screen(), path_events(path), result.activity_trace});
            Resolution r{cand, path_events(path)};
            r.candidate.widget = *w;
            r.candidate.screen_id = landing.screen_id;
            return r;
        }
    }
    return std::nullopt;
}

}  // namespace guireuse
