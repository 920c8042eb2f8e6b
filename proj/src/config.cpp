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

#include "guireuse/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "guireuse/errors.hpp"

namespace guireuse {

namespace {

void reject_unknown(const toml::table &table, const std::string &where, std::initializer_list<std::string_view> known)
{
    for (const auto &[key, value] : table) {
        if (std::find(known.begin(), known.end(), key.str()) == known.end()) {
            throw ConfigError("unknown key '" + (where.empty() ? "" : where + ".") + std::string(key.str()) + "'");
        }
    }
}

const toml::table *subtable(const toml::table &parent, std::string_view key, const std::string &where)
{
    const toml::node *node = parent.get(key);
    if (node == nullptr) {
        return nullptr;
    }
    if (!node->is_table()) {
        throw ConfigError("'" + where + "' must be a table");
    }
    return node->as_table();
}

double number(const toml::table &t, std::string_view key, const std::string &where, double fallback, double lo,
              double hi)
{
    const toml::node *node = t.get(key);
    if (node == nullptr) {
        return fallback;
    }
    std::optional<double> v = node->value<double>();
    if (!v || !node->is_number()) {
        throw ConfigError("'" + where + "' must be a number");
    }
    if (!std::isfinite(*v) || *v < lo || *v > hi) {
        throw ConfigError("'" + where + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return *v;
}

std::int64_t integer(const toml::table &t, std::string_view key, const std::string &where, std::int64_t fallback,
                     std::int64_t lo, std::int64_t hi)
{
    const toml::node *node = t.get(key);
    if (node == nullptr) {
        return fallback;
    }
    if (!node->is_integer()) {
        throw ConfigError("'" + where + "' must be an integer");
    }
    const std::int64_t v = *node->value<std::int64_t>();
    if (v < lo || v > hi) {
        throw ConfigError("'" + where + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
}

bool boolean(const toml::table &t, std::string_view key, const std::string &where, bool fallback)
{
    const toml::node *node = t.get(key);
    if (node == nullptr) {
        return fallback;
    }
    if (!node->is_boolean()) {
        throw ConfigError("'" + where + "' must be a boolean");
    }
    return *node->value<bool>();
}

std::vector<std::string> strings(const toml::node &node, const std::string &where)
{
    const toml::array *arr = node.as_array();
    if (arr == nullptr) {
        throw ConfigError("'" + where + "' must be an array of strings");
    }
    std::vector<std::string> out;
    for (const auto &item : *arr) {
        if (!item.is_string()) {
            throw ConfigError("'" + where + "' must be an array of strings");
        }
        out.push_back(*item.value<std::string>());
    }
    return out;
}

}  // namespace

RunConfig parse_run_config(std::string_view text, const std::filesystem::path &base_dir)
{
    toml::table root;
    try {
        root = toml::parse(text);
    } catch (const toml::parse_error &e) {
        std::ostringstream msg;
        msg << "malformed TOML at line " << e.source().begin.line << ": " << e.description();
        throw ParseError(msg.str());
    }
    reject_unknown(root, "", {"matcher", "lexicon", "explorer", "adaptation", "deduplication", "oracle", "run"});

    RunConfig cfg;
    ReuseConfig &r = cfg.reuse;

    if (const toml::table *m = subtable(root, "matcher", "matcher")) {
        reject_unknown(*m, "matcher", {"k", "threshold", "normalized", "weights"});
        r.matcher.k = static_cast<std::size_t>(integer(*m, "k", "matcher.k", 5, 1, 1000));
        r.matcher.threshold = number(*m, "threshold", "matcher.threshold", 0.4, -1.0, 2.0);
        r.matcher.normalized = boolean(*m, "normalized", "matcher.normalized", false);
        if (const toml::table *w = subtable(*m, "weights", "matcher.weights")) {
            for (const auto &[key, value] : *w) {
                const std::string name(key.str());
                if (!is_attribute_name(name)) {
                    throw ConfigError("unknown key 'matcher.weights." + name + "'");
                }
                r.matcher.weights.set(name, number(*w, name, "matcher.weights." + name, 1.0, 0.0, 1e6));
            }
            r.matcher.weights.validate();
        }
    }

    if (const toml::table *l = subtable(root, "lexicon", "lexicon")) {
        reject_unknown(*l, "lexicon", {"abbreviations", "compounds", "stopwords", "collapse_duplicates"});
        TokenizerOptions &tk = r.matcher.tokenizer;
        if (const toml::table *a = subtable(*l, "abbreviations", "lexicon.abbreviations")) {
            tk.abbreviations.expansions.clear();
            for (const auto &[key, value] : *a) {
                tk.abbreviations.expansions[std::string(key.str())] =
                    strings(value, "lexicon.abbreviations." + std::string(key.str()));
            }
            tk.abbreviations.validate();
        }
        if (const toml::node *c = l->get("compounds")) {
            auto list = strings(*c, "lexicon.compounds");
            tk.compounds = {list.begin(), list.end()};
        }
        if (const toml::node *s = l->get("stopwords")) {
            auto list = strings(*s, "lexicon.stopwords");
            tk.stopwords = {list.begin(), list.end()};
        }
        tk.collapse_duplicates = boolean(*l, "collapse_duplicates", "lexicon.collapse_duplicates", false);
    }

    if (const toml::table *e = subtable(root, "explorer", "explorer")) {
        reject_unknown(*e, "explorer", {"max_len", "cache"});
        r.explorer.max_len = static_cast<std::size_t>(integer(*e, "max_len", "explorer.max_len", 4, 1, 16));
        r.explorer.cache_enabled = boolean(*e, "cache", "explorer.cache", true);
    }

    if (const toml::table *a = subtable(root, "adaptation", "adaptation")) {
        reject_unknown(*a, "adaptation", {"enabled", "weakest_fraction", "retry_budget"});
        r.adapt = boolean(*a, "enabled", "adaptation.enabled", true);
        r.weakest_fraction = number(*a, "weakest_fraction", "adaptation.weakest_fraction", 0.2, 0.0, 1.0);
        if (a->contains("retry_budget")) {
            r.retry_budget = static_cast<std::size_t>(integer(*a, "retry_budget", "adaptation.retry_budget", 0, 0, 1000));
        }
    }

    if (const toml::table *d = subtable(root, "deduplication", "deduplication")) {
        reject_unknown(*d, "deduplication", {"enabled"});
        r.deduplicate = boolean(*d, "enabled", "deduplication.enabled", true);
    }

    if (const toml::table *o = subtable(root, "oracle", "oracle")) {
        reject_unknown(*o, "oracle", {"accept_threshold"});
        r.oracle_threshold = number(*o, "accept_threshold", "oracle.accept_threshold", 0.8, -1.0, 1.0);
    }

    if (const toml::table *run = subtable(root, "run", "run")) {
        reject_unknown(*run, "run", {"embeddings", "deterministic"});
        if (const toml::node *p = run->get("embeddings")) {
            if (!p->is_string()) {
                throw ConfigError("'run.embeddings' must be a string");
            }
            std::filesystem::path path(*p->value<std::string>());
            cfg.embeddings = path.is_relative() && !base_dir.empty() ? base_dir / path : path;
        }
        cfg.deterministic = boolean(*run, "deterministic", "run.deterministic", true);
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path &path)
{
    return parse_run_config(read_text_file(path), path.parent_path());
}

}  // namespace guireuse
