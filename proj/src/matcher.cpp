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

#include "guireuse/matcher.hpp"

#include <algorithm>
#include <cmath>

#include "guireuse/errors.hpp"

namespace guireuse {

AttributeWeights::AttributeWeights()
{
    for (auto name : kAttributeNames) {
        values_.emplace(std::string(name), 1.0);
    }
}

double AttributeWeights::get(std::string_view name) const
{
    auto it = values_.find(name);
    return it == values_.end() ? 0.0 : it->second;
}

void AttributeWeights::set(std::string_view name, double weight)
{
    if (!is_attribute_name(name)) {
        throw ConfigError("unknown attribute '" + std::string(name) + "'");
    }
    if (!std::isfinite(weight) || weight < 0.0) {
        throw ConfigError("weight for '" + std::string(name) + "' must be finite and >= 0");
    }
    values_.find(name)->second = weight;
}

AttributeWeights AttributeWeights::scaled(double factor) const
{
    AttributeWeights out = *this;
    for (auto &[name, w] : out.values_) {
        w *= factor;
    }
    return out;
}

void AttributeWeights::validate() const
{
    if (std::none_of(values_.begin(), values_.end(), [](const auto &kv) { return kv.second > 0.0; })) {
        throw ConfigError("at least one attribute weight must be positive");
    }
}

double widget_similarity(const Widget &source, const Widget &target, const AttributeWeights &weights,
                         const EmbeddingTable &table, const TokenizerOptions &tokenizer, bool normalized)
{
    double total = 0.0;
    double denom = 0.0;
    for (auto name : kAttributeNames) {
        const std::string_view s = source.attribute(name);
        if (s.empty()) {
            continue;
        }
        const std::string_view t = target.attribute(name);
        const TokenList a = tokenize(s, tokenizer);
        double term;
        if (a.empty()) {
            // Nothing survives tokenization (e.g. "42"): fall back to string equality.
            term = s == t ? 1.0 : 0.0;
        } else {
            term = attribute_similarity(a, tokenize(t, tokenizer), table);
        }
        const double w = weights.get(name);
        total += term * w;
        denom += normalized ? w : 1.0;
    }
    return denom > 0.0 ? total / denom : 0.0;
}

Matcher::Matcher(std::shared_ptr<const EmbeddingTable> table, MatcherOptions options)
    : table_(std::move(table)), options_(std::move(options))
{
    if (!table_) {
        throw ConfigError("matcher needs an embedding table");
    }
    if (options_.k == 0) {
        throw ConfigError("k must be >= 1");
    }
    options_.weights.validate();
}

double Matcher::widget_similarity(const Widget &source, const Widget &target) const
{
    return guireuse::widget_similarity(source, target, options_.weights, *table_, options_.tokenizer,
                                       options_.normalized);
}

namespace {

void sort_and_truncate(std::vector<Candidate> &out, std::size_t k)
{
    std::stable_sort(out.begin(), out.end(),
                     [](const Candidate &a, const Candidate &b) { return a.score > b.score; });
    if (out.size() > k) {
        out.resize(k);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].rank = i + 1;
    }
}

}  // namespace

std::vector<Candidate> Matcher::rank_candidates(const Widget &source, const Screen &screen) const
{
    return rank_candidates(source, screen, options_.k, options_.threshold);
}

std::vector<Candidate> Matcher::rank_candidates(const Widget &source, const Screen &screen, std::size_t k,
                                                double threshold) const
{
    std::vector<Candidate> out;
    for (const auto &w : screen.widgets) {
        const double score = widget_similarity(source, w);
        if (score >= threshold) {
            out.push_back({w, screen.screen_id, screen.activity, score, 0});
        }
    }
    sort_and_truncate(out, k);
    return out;
}

std::vector<Candidate> Matcher::rank_app_candidates(const Widget &source, const AppModel &app) const
{
    std::vector<Candidate> all;
    std::map<std::pair<std::string, std::string>, std::size_t> seen;
    for (const auto &screen : app.screens()) {
        for (const auto &w : screen.widgets) {
            const double score = widget_similarity(source, w);
            auto key = std::make_pair(screen.activity, w.widget_id);
            auto it = seen.find(key);
            if (it == seen.end()) {
                seen.emplace(key, all.size());
                all.push_back({w, screen.screen_id, screen.activity, score, 0});
            } else if (score > all[it->second].score) {
                all[it->second] = {w, screen.screen_id, screen.activity, score, 0};
            }
        }
    }
    std::vector<Candidate> out;
    for (auto &c : all) {
        if (c.score >= options_.threshold) {
            out.push_back(std::move(c));
        }
    }
    sort_and_truncate(out, options_.k);
    return out;
}

}  // namespace guireuse
