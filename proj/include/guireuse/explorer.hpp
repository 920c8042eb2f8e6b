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

#ifndef GUIREUSE_EXPLORER_HPP
#define GUIREUSE_EXPLORER_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "guireuse/app_model.hpp"
#include "guireuse/matcher.hpp"
#include "guireuse/simulator.hpp"

namespace guireuse {

using WtgPath = std::vector<WtgEdge>;

/// All simple paths of at most max_len edges from one activity to another, shortest
/// first. When from == to: the empty path, then any self-loops. Throws
/// std::invalid_argument for activities that are not WTG nodes.
std::vector<WtgPath> find_paths(const Wtg &wtg, const std::string &from, const std::string &to,
                                std::size_t max_len);

/// The concrete events that walk a WTG path. Input edges type an empty string.
std::vector<ConcreteEvent> path_events(const WtgPath &path);

struct ExplorerOptions {
    std::size_t max_len = 4;
    bool cache_enabled = true;
};

struct ExplorerStats {
    std::size_t probes = 0;           // probe executions actually run
    std::size_t probe_cache_hits = 0;
    std::size_t find_paths_runs = 0;
    std::size_t find_paths_cache_hits = 0;
};

/// Result of replaying a path from a given screen in a throwaway session.
struct ProbeResult {
    bool reached = false;
    std::string landing_screen;
    std::vector<std::string> activity_trace;
    /// Edges the probe's transitions taught the WTG.
    std::vector<WtgEdge> observed;
};

struct VerifiedPath {
    std::string start_screen;
    std::vector<ConcreteEvent> events;
    std::vector<std::string> activity_trace;
};

/// Explored paths and probe outcomes of one run.
class PathCache {
public:
    const std::vector<VerifiedPath> &verified(const std::string &from, const std::string &to) const;
    void add_verified(const std::string &from, const std::string &to, VerifiedPath path);

    const std::map<std::pair<std::string, std::string>, std::vector<VerifiedPath>> &all_verified() const
    {
        return verified_;
    }

    nlohmann::json to_json() const;

private:
    friend class Explorer;

    using ProbeKey = std::pair<std::string, WtgPath>;
    using PathsKey = std::tuple<std::string, std::string, std::size_t, std::size_t, std::uint64_t>;

    std::map<std::pair<std::string, std::string>, std::vector<VerifiedPath>> verified_;
    std::map<ProbeKey, ProbeResult> probes_;
    std::map<PathsKey, std::vector<WtgPath>> paths_;
};

struct Resolution {
    Candidate candidate;  // widget and screen as found at the landing screen
    std::vector<ConcreteEvent> leading_events;
};

/// Finds the best-ranked candidate that a verified path can reach.
class Explorer {
public:
    explicit Explorer(ExplorerOptions options = {});

    /// Tries candidates in order; for each, probes WTG paths from the session's activity
    /// to the candidate's. The session is left as it was apart from WTG feedback.
    std::optional<Resolution> resolve_reachable(Session &session, const std::vector<Candidate> &candidates);

    const std::vector<WtgPath> &paths(const Wtg &wtg, const std::string &from, const std::string &to);
    const ProbeResult &probe(const Session &session, const WtgPath &path);

    const ExplorerOptions &options() const { return options_; }
    const ExplorerStats &stats() const { return stats_; }
    const PathCache &cache() const { return cache_; }

private:
    ExplorerOptions options_;
    ExplorerStats stats_;
    PathCache cache_;
    // Scratch slots used when caching is off.
    std::vector<WtgPath> paths_scratch_;
    ProbeResult probe_scratch_;
};

}  // namespace guireuse

#endif  // GUIREUSE_EXPLORER_HPP
